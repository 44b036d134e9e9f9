"""Automorphisms of C and M, and the holomorph Hol(A) = A x| Aut(A).

An automorphism of C is a unit pair ``(u, v)`` acting by
``sigma -> sigma**u, tau -> tau**v``.  An automorphism of M is ``phi_{i,j}``
with ``sigma -> sigma**i`` and ``tau -> sigma**j tau``; these compose by
``phi_{i,j} phi_{k,l} = phi_{ik, il+j}``.

Besides the value-level API, :class:`Holomorph` indexes every element of
Hol(A) as ``flat(a) * n_aut + aut_index(f)`` so that the enumeration
kernels can work on plain integer tables.  Automorphisms are indexed in
lexicographic ``(i, j)`` order, so sorting holomorph indices sorts
elements lexicographically by (flat element, i-or-u, j-or-v).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import UsageError
from .group_core import (
    GroupElem,
    Params,
    add_table,
    check_kind,
    geometric_sum,
    group_inv,
    group_op,
    inverse_table,
    smallest_primitive_root,
)


@dataclass(frozen=True, order=True)
class Aut:
    """Automorphism of C (``i=u`` mod p, ``j=v`` mod q) or of M (``phi_{i,j}``)."""

    kind: str
    i: int
    j: int
    p: int
    q: int

    @property
    def u(self) -> int:
        return self.i

    @property
    def v(self) -> int:
        return self.j

    def __repr__(self) -> str:
        if self.kind == "C":
            return f"Aut_C(u={self.i}, v={self.j})"
        return f"phi({self.i},{self.j})"


@dataclass(frozen=True, order=True)
class HolElem:
    a: GroupElem
    f: Aut


def aut_c(params: Params, u: int, v: int) -> Aut:
    p, q = params.p, params.q
    u, v = u % p, v % q
    if math.gcd(u, p) != 1 or math.gcd(v, q) != 1:
        raise UsageError(f"({u}, {v}) is not a pair of units mod ({p}, {q})")
    return Aut("C", u, v, p, q)


def aut_m(params: Params, i: int, j: int) -> Aut:
    check_kind(params, "M")
    p = params.p
    i, j = i % p, j % p
    if i == 0:
        raise UsageError("phi_{i,j} needs i to be a unit mod p")
    return Aut("M", i, j, p, params.q)


def identity_aut(params: Params, kind: str) -> Aut:
    return aut_c(params, 1, 1) if kind == "C" else aut_m(params, 1, 0)


def _check(f: Aut, kind: str) -> None:
    if f.kind != kind:
        raise UsageError(f"automorphism of {f.kind} applied to {kind}")


def aut_apply(params: Params, f: Aut, x: GroupElem) -> GroupElem:
    _check(f, x.kind)
    p, q = params.p, params.q
    if f.kind == "C":
        return GroupElem("C", f.i * x.n % p, f.j * x.m % q)
    # sigma^n tau^m -> sigma^{in} (sigma^j tau)^m = sigma^{in + j(1+g+..+g^{m-1})} tau^m
    return GroupElem("M", (f.i * x.n + f.j * geometric_sum(params, x.m)) % p, x.m)


def aut_compose(f: Aut, h: Aut) -> Aut:
    """``f o h`` (apply ``h`` first)."""
    if f.kind != h.kind or (f.p, f.q) != (h.p, h.q):
        raise UsageError("cannot compose automorphisms of different groups")
    if f.kind == "C":
        return Aut("C", f.i * h.i % f.p, f.j * h.j % f.q, f.p, f.q)
    return Aut("M", f.i * h.i % f.p, (f.i * h.j + f.j) % f.p, f.p, f.q)


def aut_invert(f: Aut) -> Aut:
    if f.kind == "C":
        return Aut("C", pow(f.i, -1, f.p), pow(f.j, -1, f.q), f.p, f.q)
    ii = pow(f.i, -1, f.p)
    return Aut("M", ii, -ii * f.j % f.p, f.p, f.q)


def aut_power(f: Aut, k: int) -> Aut:
    out = Aut(f.kind, 1, 0 if f.kind == "M" else 1, f.p, f.q)
    base = f if k >= 0 else aut_invert(f)
    for _ in range(abs(k)):
        out = aut_compose(out, base)
    return out


def aut_order(f: Aut) -> int:
    ident = Aut(f.kind, 1, 0 if f.kind == "M" else 1, f.p, f.q)
    k, h = 1, f
    while h != ident:
        h = aut_compose(h, f)
        k += 1
    return k


def alpha_beta(params: Params, kind: str) -> tuple[Aut, Optional[Aut]]:
    """The generators alpha (order p) and beta (order q) of the order-pq
    subgroup of Aut(M); for C only alpha: sigma -> sigma**g."""
    if not params.congruent:
        raise UsageError("alpha and beta exist only when p = 1 mod q")
    if kind == "C":
        return aut_c(params, params.g, 1), None
    return aut_m(params, 1, 1), aut_m(params, params.g, 0)


def aut_c_generators(params: Params) -> tuple[Aut, Aut]:
    """``phi`` (sigma -> sigma**n) and ``psi`` (tau -> tau**m) generating Aut(C),
    with n, m the smallest primitive roots mod p and mod q."""
    n = smallest_primitive_root(params.p)
    m = smallest_primitive_root(params.q)
    return aut_c(params, n, 1), aut_c(params, 1, m)


def all_auts(params: Params, kind: str) -> list[Aut]:
    check_kind(params, kind)
    p, q = params.p, params.q
    if kind == "C":
        return [Aut("C", u, v, p, q) for u in range(1, p) for v in range(1, q)]
    return [Aut("M", i, j, p, q) for i in range(1, p) for j in range(p)]


def hol_mul(params: Params, x: HolElem, y: HolElem) -> HolElem:
    return HolElem(group_op(params, x.a, aut_apply(params, x.f, y.a)), aut_compose(x.f, y.f))


def hol_inv(params: Params, x: HolElem) -> HolElem:
    finv = aut_invert(x.f)
    return HolElem(aut_apply(params, finv, group_inv(params, x.a)), finv)


def hol_act(params: Params, h: HolElem, b: GroupElem) -> GroupElem:
    return group_op(params, h.a, aut_apply(params, h.f, b))


def hol_identity(params: Params, kind: str) -> HolElem:
    return HolElem(GroupElem(kind, 0, 0), identity_aut(params, kind))


class Holomorph:
    """Integer-indexed tables for Hol(A); build through :func:`holomorph`."""

    def __init__(self, params: Params, kind: str):
        check_kind(params, kind)
        self.params = params
        self.kind = kind
        p, q = params.p, params.q
        self.pq = p * q
        self.auts = all_auts(params, kind)
        self.n_aut = len(self.auts)
        self.aut_index = {f: k for k, f in enumerate(self.auts)}
        self.size = self.pq * self.n_aut
        self.add = add_table(params, kind)
        self.neg = inverse_table(self.add)

        ai = np.array([f.i for f in self.auts], dtype=np.int64)
        aj = np.array([f.j for f in self.auts], dtype=np.int64)
        n = np.arange(p).repeat(q)
        m = np.tile(np.arange(q), p)
        if kind == "C":
            self.apply = (ai[:, None] * n[None, :] % p) * q + aj[:, None] * m[None, :] % q
            comp_i = ai[:, None] * ai[None, :] % p
            comp_j = aj[:, None] * aj[None, :] % q
            self.compose = ((comp_i - 1) * (q - 1) + comp_j - 1).astype(np.int64)
        else:
            geo = np.array([geometric_sum(params, t) for t in range(q)], dtype=np.int64)
            self.apply = ((ai[:, None] * n[None, :] + aj[:, None] * geo[m][None, :]) % p) * q + m[None, :]
            comp_i = ai[:, None] * ai[None, :] % p
            comp_j = (ai[:, None] * aj[None, :] + aj[:, None]) % p
            self.compose = ((comp_i - 1) * p + comp_j).astype(np.int64)
        self.apply = self.apply.astype(np.int64)
        self.id_aut = self.aut_index[identity_aut(params, kind)]
        self.aut_inv = np.argmax(self.compose == self.id_aut, axis=1).astype(np.int64)
        self.identity = self.id_aut  # flat(0) * n_aut + id_aut

        # closed-form composition must agree with pointwise composition
        pointwise = np.take_along_axis(
            self.apply[:, None, :].repeat(self.n_aut, axis=1),
            self.apply[None, :, :].repeat(self.n_aut, axis=0),
            axis=2,
        )
        if not np.array_equal(self.apply[self.compose], pointwise):
            raise AssertionError(f"Aut({kind}) composition law disagrees with pointwise composition")
        for arr in (self.apply, self.compose, self.neg, self.aut_inv):
            arr.setflags(write=False)

    # index <-> value
    def index(self, h: HolElem) -> int:
        return h.a.flat(self.params.q) * self.n_aut + self.aut_index[h.f]

    def element(self, idx: int) -> HolElem:
        a, f = divmod(int(idx), self.n_aut)
        n, m = divmod(a, self.params.q)
        return HolElem(GroupElem(self.kind, n, m), self.auts[f])

    # vectorised group law on index arrays
    def mul(self, x, y):
        xa, xf = np.divmod(x, self.n_aut)
        ya, yf = np.divmod(y, self.n_aut)
        return self.add[xa, self.apply[xf, ya]] * self.n_aut + self.compose[xf, yf]

    def inv(self, x):
        xa, xf = np.divmod(x, self.n_aut)
        fi = self.aut_inv[xf]
        return self.apply[fi, self.neg[xa]] * self.n_aut + fi

    def act(self, h, b):
        ha, hf = np.divmod(h, self.n_aut)
        return self.add[ha, self.apply[hf, b]]

    def projections(self, h):
        """``(pi_1, pi_2)`` of index arrays: flat element and automorphism index."""
        return np.divmod(h, self.n_aut)

    def conjugator(self, f: int) -> np.ndarray:
        """Map ``h -> (0, f) h (0, f)^{-1}`` on every holomorph index."""
        h = np.arange(self.size)
        ha, hf = np.divmod(h, self.n_aut)
        new_f = self.compose[self.compose[f, hf], self.aut_inv[f]]
        return self.apply[f, ha] * self.n_aut + new_f


@lru_cache(maxsize=None)
def holomorph(params: Params, kind: str) -> Holomorph:
    return Holomorph(params, kind)
