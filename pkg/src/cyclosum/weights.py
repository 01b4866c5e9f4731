"""Exact weight sets of vanishing root-of-unity sums, via bitset sumsets.

For a group G of m-th roots of unity inside F_q, the n-fold sumset n*G is
always a union of multiplicative cosets of G (plus possibly {0}), so each
layer is stored as a boolean mask over the d = (q-1)/m cosets together
with a zero flag.  The weight n belongs to the weight set exactly when
layer n contains zero, and consecutive layers differ by one vectorized
pass over at most q index pairs.

Layers are kept so that certificates (explicit vanishing sums) can be read
back off by greedy backtracking.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DoesNotDivide,
    EnumerationCapExceeded,
    InternalMismatch,
    NotAMember,
    NotPrime,
    PreconditionViolated,
)
from .gf import DEFAULT_SIZE_CAP, FieldTable, build_field
from .ntheory import is_prime, multiplicative_order, prime_factors

DEFAULT_ENUMERATION_CAP = 12


def strip_p_part(p: int, m: int) -> int:
    """Remove every factor of p from m."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise PreconditionViolated(f"m must be >= 1, got {m}")
    while m % p == 0:
        m //= p
    return m


class _LayerEngine:
    """Iterated sumsets n*G over a fixed field, one coset bitset per weight."""

    def __init__(self, table: FieldTable, m: int):
        if m < 2 or table.order % m != 0:
            raise DoesNotDivide(f"need m >= 2 dividing q-1, got m={m}, q={table.q}")
        self.table = table
        self.m = m
        self.d = table.order // m
        self.exponents = (np.arange(m, dtype=np.int64) * self.d)
        # coset whose elements are negatives of group members; adding the
        # matching root to such an element is the only way to reach zero
        self.zero_feed_coset = table.neg_one_exp % self.d
        self._masks: list[np.ndarray] = [np.zeros(self.d, dtype=bool)]
        self._zero: list[bool] = [True]

    def grow_to(self, n: int) -> None:
        table = self.table
        q1 = table.order
        while len(self._masks) <= n:
            cur = self._masks[-1]
            had_zero = self._zero[-1]
            cosets = np.flatnonzero(cur)
            nxt = np.zeros(self.d, dtype=bool)
            if cosets.size:
                delta = (self.exponents[None, :] - cosets[:, None]) % q1
                vals = (cosets[:, None] + table.zech[delta]) % self.d
                nxt[vals[delta != table.neg_one_exp]] = True
            if had_zero:
                nxt[0] = True
            self._masks.append(nxt)
            self._zero.append(bool(cur[self.zero_feed_coset]))
            i = len(self._masks) - 1
            j = i - table.p
            if j >= 0:
                if np.any(self._masks[j] & ~nxt) or (self._zero[j] and not self._zero[i]):
                    raise InternalMismatch(f"layer {i} does not contain layer {j}")

    def contains_zero(self, n: int) -> bool:
        self.grow_to(n)
        return self._zero[n]

    def mask(self, n: int) -> np.ndarray:
        self.grow_to(n)
        return self._masks[n]

    def element_in_layer(self, n: int, index: int) -> bool:
        self.grow_to(n)
        if index == self.table.zero_index:
            return self._zero[n]
        return bool(self._masks[n][index % self.d])

    def extract(self, n: int) -> list[int]:
        """Exponents e_i with sum of roots g**(d*e_i) equal to zero, n of them.

        Backtracks from layer n toward layer 0, preferring the least root
        exponent at each step.
        """
        self.grow_to(n)
        table = self.table
        exps: list[int] = []
        target = table.zero_index
        for level in range(n, 0, -1):
            for e in range(self.m):
                rest = table.sub_index(target, int(self.exponents[e]))
                if level == 1:
                    ok = rest == table.zero_index
                else:
                    ok = self.element_in_layer(level - 1, rest)
                if ok:
                    exps.append(e)
                    target = rest
                    break
            else:  # pragma: no cover - membership guaranteed by caller
                raise InternalMismatch("backtracking lost a stored layer")
        return exps


@dataclass(frozen=True)
class WeightSet:
    """Exact description of a weight set: explicit members below a bound
    plus a proven arithmetic tail.

    Every n < bound is classified explicitly in members_below; for
    n >= bound, n is a member iff period | n and n >= tail_start.
    """

    p: int
    m: int
    m_prime: int
    k: int
    period: int
    members_below: tuple[int, ...]
    tail_start: int
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.members_below))
        object.__setattr__(self, "_engine", None)

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if n < self.bound:
            return n in self._members
        return n % self.period == 0 and n >= self.tail_start

    def json_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "m_prime": self.m_prime,
            "k": self.k,
            "period": self.period,
            "members_below": list(self.members_below),
            "tail_start": self.tail_start,
            "bound_B": self.bound,
        }


@dataclass(frozen=True)
class Certificate:
    """A verified vanishing sum: n root exponents relative to the canonical
    primitive root of order m' (the p-free part of m)."""

    p: int
    m: int
    n: int
    exponents: tuple[int, ...]


def membership(ws: WeightSet, n: int) -> bool:
    """Exact membership of weight n, explicit below the bound, tail rule above."""
    return ws.contains(n)


def _p_multiple_weight_set(p: int, m: int) -> WeightSet:
    return WeightSet(
        p=p, m=m, m_prime=1, k=1, period=p,
        members_below=(0, p), tail_start=0, bound=p + 1,
    )


def _exploration_bound(p: int, m_prime: int) -> int:
    q_min = prime_factors(m_prime)[0]
    return (p - 1) * (q_min - 1) + p + 1


def _weight_set_on_engine(engine: _LayerEngine, p: int, m: int, m_prime: int) -> WeightSet:
    bound = _exploration_bound(p, m_prime)
    engine.grow_to(bound - 1)
    members = [0] + [n for n in range(1, bound) if engine.contains_zero(n)]
    member_set = set(members)
    period = 0
    for n in members[1:]:
        period = math.gcd(period, n)
    period = period or 1
    guaranteed_from = (p - 1) * (prime_factors(m_prime)[0] - 1)
    missing = [n for n in range(guaranteed_from, bound) if n not in member_set]
    if missing:
        raise InternalMismatch(f"weights {missing} missing from the guaranteed tail")
    non_members = [n for n in range(bound) if n % period == 0 and n not in member_set]
    tail_start = (max(non_members) + 1) if non_members else 0
    ws = WeightSet(
        p=p, m=m, m_prime=m_prime, k=engine.table.k, period=period,
        members_below=tuple(members), tail_start=tail_start, bound=bound,
    )
    object.__setattr__(ws, "_engine", engine)
    return ws


@lru_cache(maxsize=64)
def _engine_for(p, k, modulus_coeffs, m, size_cap) -> _LayerEngine:
    return _LayerEngine(build_field(p, k, modulus_coeffs, size_cap), m)


@lru_cache(maxsize=128)
def _compute_weight_set_cached(p, m, size_cap) -> WeightSet:
    m_prime = strip_p_part(p, m)
    if m_prime == 1:
        return _p_multiple_weight_set(p, m)
    k = multiplicative_order(p, m_prime)
    engine = _engine_for(p, k, None, m_prime, size_cap)
    return _weight_set_on_engine(engine, p, m, m_prime)


def compute_weight_set(p: int, m: int, size_cap: int = DEFAULT_SIZE_CAP) -> WeightSet:
    """Exact weight set of vanishing sums of m-th roots of unity in
    characteristic p, computed in the smallest splitting field."""
    return _compute_weight_set_cached(p, m, size_cap)


def field_weight_set(table: FieldTable, m: int, size_cap: int = DEFAULT_SIZE_CAP) -> WeightSet:
    """Weight set computed on a caller-supplied field containing the roots.

    Same set as compute_weight_set, but layers (hence certificates) live in
    the given field, which is what the diagonal-equation solver needs.
    """
    if m < 1 or table.order % m != 0:
        raise DoesNotDivide(f"{m} does not divide q-1 = {table.order}")
    if m == 1:
        return _p_multiple_weight_set(table.p, 1)
    return _field_weight_set_cached(
        table.p, table.k, table.modulus.coeffs, m, size_cap
    )


@lru_cache(maxsize=64)
def _field_weight_set_cached(p, k, modulus_coeffs, m, size_cap) -> WeightSet:
    engine = _engine_for(p, k, modulus_coeffs, m, size_cap)
    return _weight_set_on_engine(engine, p, m, m)


def _certificate_exponents(ws: WeightSet, n: int) -> tuple[int, ...]:
    if not ws.contains(n):
        raise NotAMember(f"{n} is not in the weight set of (p={ws.p}, m={ws.m})")
    if ws.m_prime == 1:
        return (0,) * n
    engine: _LayerEngine = ws._engine
    if engine is None:
        raise PreconditionViolated("this weight set carries no stored layers")
    padding = 0
    if n >= ws.bound:
        # peel copies of p * 1 = 0 until the stored layers cover the rest
        padding = ws.p * ((n - ws.bound) // ws.p + 1)
        n -= padding
    return tuple(sorted(engine.extract(n) + [0] * padding))


def _verify_vanishing(table: FieldTable, m: int, exponents) -> None:
    step = table.order // m
    acc = table.zero_index
    for e, count in Counter(exponents).items():
        count %= table.p
        root = (step * e) % max(table.order, 1)
        scalar = table.index_of_poly((count,))
        acc = table.add_index(acc, table.mul_index(root, scalar))
    if acc != table.zero_index:
        raise InternalMismatch("certificate does not re-evaluate to zero")


def certificate(p: int, m: int, n: int, size_cap: int = DEFAULT_SIZE_CAP) -> Certificate:
    """A verified vanishing sum of weight n, extracted from stored layers."""
    ws = compute_weight_set(p, m, size_cap)
    exps = _certificate_exponents(ws, n)
    if ws.m_prime > 1:
        _verify_vanishing(ws._engine.table, ws.m_prime, exps)
    return Certificate(p=p, m=m, n=n, exponents=exps)


# ---------------------------------------------------------------------------
# minimal vanishing sums

def _reach_masks(table: FieldTable, exponents: np.ndarray, wmax: int) -> list[np.ndarray]:
    """reach[w][i] iff element i is a sum of exactly w group members."""
    reach = [np.zeros(table.q, dtype=bool)]
    reach[0][table.zero_index] = True
    layer = np.zeros(table.q, dtype=bool)
    layer[table.zero_index] = True
    for _ in range(wmax):
        idx = np.flatnonzero(layer)
        nxt = np.zeros(table.q, dtype=bool)
        for e in exponents:
            nxt[table.add_many(idx, int(e))] = True
        reach.append(nxt)
        layer = nxt
    return reach


def _canonical_rotation(exps: tuple[int, ...], m: int) -> tuple[int, ...]:
    return min(tuple(sorted((e + c) % m for e in exps)) for c in range(m))


def minimal_vanishing_sums(
    p: int,
    m: int,
    wmax: int,
    size_cap: int = DEFAULT_SIZE_CAP,
    enum_cap: int = DEFAULT_ENUMERATION_CAP,
) -> list[tuple[int, ...]]:
    """All vanishing sums of weight <= wmax with no vanishing proper subsum,
    as canonical exponent multisets (least representative under rotation).
    """
    if wmax > enum_cap:
        raise EnumerationCapExceeded(f"wmax={wmax} above enumeration cap {enum_cap}")
    m_prime = strip_p_part(p, m)
    if m_prime == 1:
        return [(0,) * p] if wmax >= p else []
    k = multiplicative_order(p, m_prime)
    table = build_field(p, k, size_cap=size_cap)
    step = table.order // m_prime
    exps = np.arange(m_prime, dtype=np.int64) * step
    reach = _reach_masks(table, exps, wmax)
    cum = [reach[0].copy()]
    for w in range(1, wmax + 1):
        cum.append(cum[-1] | reach[w])

    zero = table.zero_index
    found: set[tuple[int, ...]] = set()

    def descend(start_e, prefix, total, all_sums, proper_sums):
        # all_sums: values of nonempty subset sums of the prefix
        # proper_sums: values over strict subsets (the empty one included)
        for e in range(start_e, m_prime):
            x = int(exps[e])
            if table.neg_index(x) in proper_sums:
                continue  # a strict subsum would vanish in any extension
            new_total = table.add_index(total, x)
            new_prefix = prefix + (e,)
            if new_total == zero:
                found.add(_canonical_rotation(new_prefix, m_prime))
                continue
            if len(new_prefix) == wmax:
                continue
            if not cum[wmax - len(new_prefix)][table.neg_index(new_total)]:
                continue
            shifted = {table.add_index(t, x) for t in all_sums}
            descend(
                e,
                new_prefix,
                new_total,
                all_sums | shifted | {x},
                all_sums | {zero} | {table.add_index(t, x) for t in proper_sums},
            )

    # every rotation class has a representative whose least exponent is 0
    if wmax >= 2:
        x0 = int(exps[0])
        descend(0, (0,), x0, {x0}, {zero})
    for result in found:
        _verify_vanishing(table, m_prime, result)
    return sorted(found)
