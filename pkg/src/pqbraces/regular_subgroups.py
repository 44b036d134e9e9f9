"""Regular subgroups of Hol(C) and Hol(M).

Two independent routes produce them:

* closed-form families (the trivial subgroup ``A x {1}``, ``G_b`` in Hol(C),
  ``G_c``, ``G_{a,b}``, ``G_{c,d}`` in Hol(M)), each built by closing an
  explicit generator pair;
* :func:`enumerate_regular_bruteforce`, which knows nothing of the families
  and closes pairs of fixed-point-free elements of orders p and q.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from . import kernels
from .automorphisms import (
    Aut,
    HolElem,
    Holomorph,
    alpha_beta,
    aut_compose,
    aut_power,
    holomorph,
    identity_aut,
)
from .errors import BudgetExceeded, UsageError
from .group_core import GroupElem, Params, check_kind

ORACLE_BUDGET = 39


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of Hol(A), identified by its sorted holomorph indices."""

    params: Params
    kind: str
    indices: tuple
    gens: tuple = ()
    label: Optional[str] = None
    label_params: tuple = ()

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.kind == other.kind and self.params == other.params and self.indices == other.indices

    def __hash__(self):
        return hash((self.kind, self.indices))

    def __len__(self):
        return len(self.indices)

    def __contains__(self, h) -> bool:
        if isinstance(h, HolElem):
            h = self.hol.index(h)
        return int(h) in self._members

    def __repr__(self):
        tag = self.label or "subgroup"
        if self.label_params:
            tag += "(" + ", ".join(f"{k}={v}" for k, v in self.label_params) + ")"
        return f"<{tag} of Hol({self.kind}), order {len(self)}>"

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.indices)

    @property
    def hol(self) -> Holomorph:
        return holomorph(self.params, self.kind)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.indices, dtype=np.int64)

    @property
    def elements(self) -> list[HolElem]:
        return [self.hol.element(h) for h in self.indices]

    @cached_property
    def pi2_size(self) -> int:
        return int(np.unique(self.array % self.hol.n_aut).size)

    @cached_property
    def is_abelian(self) -> bool:
        x = self.array
        H = self.hol
        return bool(np.array_equal(H.mul(x[:, None], x[None, :]), H.mul(x[None, :], x[:, None])))

    @property
    def iso_type(self) -> str:
        """``"C"`` or ``"M"``; a group of order pq is cyclic iff abelian."""
        if len(self) != self.params.order:
            raise UsageError("iso_type is only defined for subgroups of order pq")
        return "C" if self.is_abelian else "M"

    @property
    def tag(self) -> dict:
        return {"family": self.label, **dict(self.label_params)}


def _from_indices(params, kind, idx, gens=(), label=None, label_params=()) -> Subgroup:
    return Subgroup(params, kind, tuple(int(i) for i in np.sort(idx)), tuple(gens), label, tuple(label_params))


def close_subgroup(params: Params, gens: Sequence[HolElem], label=None, label_params=(), backend=None) -> Subgroup:
    """Smallest subgroup of Hol(A) containing ``gens``."""
    if not gens:
        raise UsageError("need at least one generator")
    kinds = {h.a.kind for h in gens} | {h.f.kind for h in gens}
    if len(kinds) != 1:
        raise UsageError("generators mix elements of different holomorphs")
    kind = kinds.pop()
    H = holomorph(params, kind)
    idx = [H.index(h) for h in gens]
    elems, _ = kernels.closure(idx, H.add, H.apply, H.compose, H.n_aut, H.id_aut, backend=backend)
    return _from_indices(params, kind, elems, gens, label, label_params)


def is_regular(params: Params, S: Subgroup) -> bool:
    if len(S) != params.order:
        return False
    orbit = S.hol.act(S.array, 0)
    return np.unique(orbit).size == params.order


# ---------------------------------------------------------------- closed-form families

def _h(params, kind, n, m, f: Optional[Aut] = None) -> HolElem:
    return HolElem(GroupElem(kind, n % params.p, m % params.q), f or identity_aut(params, kind))


def trivial_subgroup(params: Params, kind: str) -> Subgroup:
    """``A x {1}``: left translations."""
    check_kind(params, kind)
    gens = [_h(params, kind, 1, 0), _h(params, kind, 0, 1)]
    return close_subgroup(params, gens, label="trivial")


def _need_congruent(params):
    if not params.congruent:
        raise UsageError("this family exists only when p = 1 mod q")


def family_cyclic_Gb(params: Params, b: int) -> Subgroup:
    """``G_b = <sigma, tau^b alpha>`` in Hol(C), 1 <= b <= q-1."""
    _need_congruent(params)
    if not 1 <= b <= params.q - 1:
        raise UsageError(f"b={b} out of range 1..{params.q - 1}")
    alpha, _ = alpha_beta(params, "C")
    gens = [_h(params, "C", 1, 0), _h(params, "C", 0, b, alpha)]
    return close_subgroup(params, gens, label="G_b", label_params=(("b", b),))


def family_meta_Gc(params: Params, c: int) -> Subgroup:
    """``G_c = <sigma^a0 alpha, sigma^c tau>`` in Hol(M), 0 <= c <= p-1."""
    _need_congruent(params)
    if not 0 <= c <= params.p - 1:
        raise UsageError(f"c={c} out of range 0..{params.p - 1}")
    alpha, _ = alpha_beta(params, "M")
    gens = [_h(params, "M", params.a0, 0, alpha), _h(params, "M", c, 1)]
    return close_subgroup(params, gens, label="G_c", label_params=(("c", c),))


def family_meta_Gab(params: Params, a: int, b: int) -> Subgroup:
    """``G_{a,b} = <sigma, tau^a alpha^b beta>`` in Hol(M)."""
    _need_congruent(params)
    if not (1 <= a <= params.q - 1 and 0 <= b <= params.p - 1):
        raise UsageError(f"(a, b)=({a}, {b}) out of range")
    alpha, beta = alpha_beta(params, "M")
    f = aut_compose(aut_power(alpha, b), beta)
    gens = [_h(params, "M", 1, 0), _h(params, "M", 0, a, f)]
    return close_subgroup(params, gens, label="G_ab", label_params=(("a", a), ("b", b)))


def family_meta_Gcd(params: Params, c: int, d: int) -> Subgroup:
    """``G_{c,d} = <sigma^a0 alpha, sigma^c tau^d beta>``; d in 1..q-1, c = 0 when d = q-1."""
    _need_congruent(params)
    p, q = params.p, params.q
    if not (1 <= d <= q - 1 and 0 <= c <= p - 1):
        raise UsageError(f"(c, d)=({c}, {d}) out of range")
    if d == q - 1 and c != 0:
        raise UsageError("G_{c,q-1} is only defined for c = 0")
    alpha, beta = alpha_beta(params, "M")
    gens = [_h(params, "M", params.a0, 0, alpha), _h(params, "M", c, d, beta)]
    return close_subgroup(params, gens, label="G_cd", label_params=(("c", c), ("d", d)))


def closed_form_subgroups(params: Params, kind: str) -> list[Subgroup]:
    """Every member of every closed-form family, trivial subgroup first."""
    check_kind(params, kind)
    out = [trivial_subgroup(params, kind)]
    if not params.congruent:
        return out
    p, q = params.p, params.q
    if kind == "C":
        out += [family_cyclic_Gb(params, b) for b in range(1, q)]
    else:
        out += [family_meta_Gc(params, c) for c in range(p)]
        out += [family_meta_Gab(params, a, b) for a in range(1, q) for b in range(p)]
        out += [family_meta_Gcd(params, c, d) for d in range(1, q - 1) for c in range(p)]
        out.append(family_meta_Gcd(params, 0, q - 1))
    return out


# ---------------------------------------------------------------- brute-force oracle

def enumerate_regular_bruteforce(params: Params, kind: str, budget: int = ORACLE_BUDGET,
                                 backend=None) -> list[Subgroup]:
    """All regular subgroups of Hol(A) by exhaustive search.

    A group of order pq is generated by any element of order p together with
    any element of order q, and every non-identity element of a regular
    subgroup moves every point.  So it suffices to close pairs ``(x, y)``
    with x of order p (one generator per cyclic subgroup), y of order q, both
    fixed-point-free.
    """
    check_kind(params, kind)
    if params.order > budget:
        raise BudgetExceeded(f"pq={params.order} exceeds the oracle budget pq <= {budget}")
    p, q, pq = params.p, params.q, params.order
    H = holomorph(params, kind)
    every = np.arange(H.size)
    orders = kernels.element_orders(H.add, H.apply, H.compose, H.n_aut, H.id_aut, backend=backend)
    moves = H.act(every[:, None], np.arange(pq)[None, :])
    fpf = ~(moves == np.arange(pq)[None, :]).any(axis=1)
    xs = np.nonzero((orders == p) & fpf)[0]
    ys = np.nonzero((orders == q) & fpf)[0]

    covered = np.zeros(H.size, dtype=bool)
    reps = []
    for x in xs:
        if covered[x]:
            continue
        reps.append(int(x))
        y = int(x)
        for _ in range(p):
            covered[y] = True
            y = int(H.mul(y, x))

    found: dict[tuple, Subgroup] = {}
    for x in reps:
        mine: list[frozenset] = []
        for y in ys:
            if any(int(y) in s for s in mine):
                continue
            elems, over = kernels.closure([x, int(y)], H.add, H.apply, H.compose, H.n_aut, H.id_aut,
                                          limit=pq, backend=backend)
            if over or elems.size != pq:
                continue
            S = _from_indices(params, kind, elems, (H.element(x), H.element(int(y))), label="bruteforce")
            if not is_regular(params, S):
                continue
            mine.append(frozenset(S.indices))
            found.setdefault(S.indices, S)
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------- conjugation and orbits

def conjugate_subgroup(params: Params, S: Subgroup, f: Aut) -> Subgroup:
    """``{(0, f) h (0, f)^{-1} : h in S}``."""
    if f.kind != S.kind:
        raise UsageError("automorphism and subgroup live in different holomorphs")
    H = S.hol
    conj = H.conjugator(H.aut_index[f])
    return _from_indices(params, S.kind, conj[S.array], label="conjugate")


@dataclass
class Orbit:
    representative: Subgroup
    members: list = field(default_factory=list)
    size: int = 0  # full orbit size, members are the inputs that fell into it


def compute_orbits(params: Params, subgroups: Iterable[Subgroup]) -> list[Orbit]:
    """Partition ``subgroups`` into Aut(A)-conjugation orbits."""
    subgroups = list(subgroups)
    if not subgroups:
        return []
    kinds = {S.kind for S in subgroups}
    if len(kinds) != 1:
        raise UsageError("orbits need subgroups of a single holomorph")
    kind = kinds.pop()
    H = holomorph(params, kind)
    conj = np.stack([H.conjugator(f) for f in range(H.n_aut)])
    by_key = {S.indices: S for S in subgroups}
    assigned: set = set()
    orbits = []
    for S in subgroups:
        if S.indices in assigned:
            continue
        images = np.sort(conj[:, S.array], axis=1)
        keys = {tuple(int(v) for v in row) for row in images}
        rep_key = min(keys)
        members = [by_key[k] for k in sorted(keys) if k in by_key]
        assigned.update(m.indices for m in members)
        rep = by_key.get(rep_key) or _from_indices(params, kind, rep_key, label="conjugate")
        orbits.append(Orbit(rep, members, len(keys)))
    orbits.sort(key=lambda o: o.representative.indices)
    return orbits


# ---------------------------------------------------------------- e' counts

@dataclass
class EPrimeTable:
    """Counts keyed by ``(iso type of G, additive group A, |pi_2(G)|)``."""

    params: Params
    kind: str
    counts: dict = field(default_factory=dict)

    def __getitem__(self, key) -> int:
        return self.counts.get(tuple(key), 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def nonzero(self) -> dict:
        return {k: v for k, v in self.counts.items() if v}

    def agrees_with(self, other: "EPrimeTable") -> bool:
        return self.nonzero() == other.nonzero()

    def rows(self) -> list[tuple]:
        return [(G, A, m, self.counts[(G, A, m)]) for (G, A, m) in sorted(self.counts, key=lambda k: (k[2], k[0]))]


def _formula_counts(params: Params, kind: str) -> dict:
    p, q = params.p, params.q
    if not params.congruent:
        return {("C", "C", 1): 1}
    if kind == "C":
        return {("C", "C", 1): 1, ("M", "C", 1): 0, ("C", "C", q): 0, ("M", "C", q): q - 1}
    return {
        ("M", "M", 1): 1, ("C", "M", 1): 0,
        ("C", "M", p): p, ("M", "M", p): 0,
        ("M", "M", q): p * (q - 2), ("C", "M", q): p,
        ("M", "M", p * q): p * (q - 2) + 1, ("C", "M", p * q): 0,
    }


def tabulate(params: Params, kind: str, subgroups: Iterable[Subgroup]) -> EPrimeTable:
    counts = Counter((S.iso_type, kind, S.pi2_size) for S in subgroups)
    table = EPrimeTable(params, kind, {k: 0 for k in _formula_counts(params, kind)})
    table.counts.update(counts)
    return table


def e_prime_counts(params: Params, kind: str, mode: str = "formula", budget: int = ORACLE_BUDGET,
                   backend=None) -> EPrimeTable:
    """e'(G, A, m) for additive group ``kind``.

    ``mode`` is ``"formula"`` (closed counting formulas, any size),
    ``"families"`` (tabulate the closed-form family members) or
    ``"oracle"`` (tabulate the brute-force enumeration).
    """
    check_kind(params, kind)
    if mode == "formula":
        return EPrimeTable(params, kind, _formula_counts(params, kind))
    if mode == "families":
        return tabulate(params, kind, closed_form_subgroups(params, kind))
    if mode == "oracle":
        return tabulate(params, kind, enumerate_regular_bruteforce(params, kind, budget, backend))
    raise UsageError(f"unknown mode {mode!r}")
