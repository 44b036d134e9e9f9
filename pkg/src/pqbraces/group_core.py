"""Arithmetic in the two groups of order pq.

Elements are pairs ``(n, m)`` with ``0 <= n < p`` and ``0 <= m < q``, standing
for ``sigma**n * tau**m``.  Kind ``"C"`` is the cyclic group Z_p x Z_q, kind
``"M"`` is the metacyclic group Z_p x|_g Z_q with ``tau sigma = sigma**g tau``,
which only exists when p = 1 (mod q).  Tables use the flat index ``n*q + m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import ParameterError, UsageError

KINDS = ("C", "M")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def multiplicative_order(x: int, n: int) -> int:
    """Order of ``x`` in the unit group mod ``n`` (0 if ``x`` is not a unit)."""
    x %= n
    if n == 1:
        return 1
    if math.gcd(x, n) != 1:
        return 0
    k, y = 1, x
    while y != 1 % n:
        y = (y * x) % n
        k += 1
    return k


def smallest_primitive_root(n: int) -> int:
    """Smallest generator of the unit group mod a prime ``n``."""
    for r in range(1, n):
        if multiplicative_order(r, n) == n - 1:
            return r
    raise ParameterError(f"no primitive root mod {n}")


@dataclass(frozen=True)
class Params:
    p: int
    q: int
    congruent: bool
    g: Optional[int] = None
    a0: Optional[int] = None

    @property
    def order(self) -> int:
        return self.p * self.q

    def kinds(self) -> tuple[str, ...]:
        return KINDS if self.congruent else ("C",)


def make_params(p: int, q: int, g: Optional[int] = None) -> Params:
    """Validate ``p > q`` primes and derive ``g`` and ``a0``.

    By default ``g`` is the smallest residue of multiplicative order ``q``
    mod ``p``; an explicit ``g`` may be supplied to build the alternate
    (isomorphic) presentation.
    """
    p, q = int(p), int(q)
    if not is_prime(p) or not is_prime(q):
        raise ParameterError(f"p and q must be prime, got p={p}, q={q}")
    if p <= q:
        raise ParameterError(f"need p > q, got p={p}, q={q}")
    congruent = p % q == 1
    if not congruent:
        if g is not None:
            raise ParameterError(f"p={p} is not 1 mod q={q}; no residue of order q exists")
        return Params(p, q, False)
    # q prime: x has order exactly q iff x^q = 1 and x != 1
    if g is None:
        g = next(x for x in range(2, p) if pow(x, q, p) == 1)
    elif g % p in (0, 1) or pow(g, q, p) != 1:
        raise ParameterError(f"g={g} does not have multiplicative order {q} mod {p}")
    g %= p
    a0 = pow(g - 1, -1, p)
    return Params(p, q, True, g, a0)


def check_kind(params: Params, kind: str) -> None:
    if kind not in KINDS:
        raise UsageError(f"unknown group kind {kind!r}")
    if kind == "M" and not params.congruent:
        raise UsageError(f"the metacyclic group needs p = 1 mod q (p={params.p}, q={params.q})")


@dataclass(frozen=True, order=True)
class GroupElem:
    kind: str
    n: int
    m: int

    def flat(self, q: int) -> int:
        return self.n * q + self.m


def elem(params: Params, kind: str, n: int, m: int) -> GroupElem:
    check_kind(params, kind)
    return GroupElem(kind, n % params.p, m % params.q)


def from_flat(params: Params, kind: str, idx: int) -> GroupElem:
    n, m = divmod(int(idx), params.q)
    return GroupElem(kind, n, m)


def _same_kind(x: GroupElem, y: GroupElem) -> str:
    if x.kind != y.kind:
        raise UsageError(f"cannot combine elements of kinds {x.kind} and {y.kind}")
    return x.kind


def group_op(params: Params, x: GroupElem, y: GroupElem) -> GroupElem:
    kind = _same_kind(x, y)
    p, q = params.p, params.q
    if kind == "C":
        return GroupElem(kind, (x.n + y.n) % p, (x.m + y.m) % q)
    check_kind(params, kind)
    return GroupElem(kind, (x.n + pow(params.g, x.m, p) * y.n) % p, (x.m + y.m) % q)


def group_inv(params: Params, x: GroupElem) -> GroupElem:
    p, q = params.p, params.q
    m = (-x.m) % q
    if x.kind == "C":
        return GroupElem("C", (-x.n) % p, m)
    # (n, m) + (s, -m) = 0  =>  s = -g^{-m} n = -g^{q-m} n
    return GroupElem("M", (-pow(params.g, m, p) * x.n) % p, m)


def geometric_sum(params: Params, r: int) -> int:
    """``1 + g + ... + g**(r-1)`` mod p, evaluated as ``a0 * (g**r - 1)``."""
    if not params.congruent:
        raise UsageError("geometric_sum needs p = 1 mod q")
    if r < 0:
        raise UsageError("r must be a natural number")
    p = params.p
    return params.a0 * (pow(params.g, r, p) - 1) % p


@lru_cache(maxsize=None)
def add_table(params: Params, kind: str) -> np.ndarray:
    """Cayley table of the group on flat indices (read-only)."""
    check_kind(params, kind)
    p, q = params.p, params.q
    n = np.arange(p).repeat(q)
    m = np.tile(np.arange(q), p)
    if kind == "C":
        scale = np.ones(q, dtype=np.int64)
    else:
        scale = np.array([pow(params.g, t, p) for t in range(q)], dtype=np.int64)
    new_n = (n[:, None] + scale[m][:, None] * n[None, :]) % p
    new_m = (m[:, None] + m[None, :]) % q
    table = (new_n * q + new_m).astype(np.int64)
    table.setflags(write=False)
    return table


def inverse_table(table: np.ndarray) -> np.ndarray:
    """Inverse of every element of a group given by its Cayley table."""
    e = identity_of(table)
    rows, cols = np.nonzero(table == e)
    inv = np.empty(table.shape[0], dtype=np.int64)
    inv[rows] = cols
    return inv


def identity_of(table: np.ndarray) -> int:
    n = table.shape[0]
    hits = np.nonzero((table == np.arange(n)[None, :]).all(axis=1))[0]
    if len(hits) != 1:
        raise UsageError("table has no unique left identity")
    return int(hits[0])
