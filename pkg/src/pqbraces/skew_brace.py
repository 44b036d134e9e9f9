"""Skew braces of order pq.

A brace is stored by its additive kind (``"C"`` or ``"M"``) and a Cayley
table for ``o``.  Catalog braces keep the closed formula
``(n, m) o (s, t) = (g^(t*twist) n + g^(e*m) s, m + t)`` as metadata, and
materialise the table on first use; all exhaustive checks run on tables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from . import kernels
from .automorphisms import Aut, holomorph
from .errors import ConstructionError, UsageError
from .group_core import Params, add_table, check_kind, identity_of, inverse_table
from .regular_subgroups import Subgroup, is_regular

# exhaustive pq^3 sweeps are skipped above this carrier size
EXHAUSTIVE_LIMIT = 300


@dataclass(frozen=True)
class CircFormula:
    """``(n, m) o (s, t) = (g^(t*twist) * n + g^(exponent*m) * s, m + t)``."""

    twist: int
    exponent: int

    def describe(self) -> str:
        first = "g^t*n" if self.twist else "n"
        e = self.exponent
        second = "s" if e == 0 else ("g^m*s" if e == 1 else f"g^({e}*m)*s")
        return f"(n,m)o(s,t) = ({first} + {second}, m+t)"

    def evaluate(self, params: Params, n, m, s, t):
        p, q, g = params.p, params.q, params.g or 1
        powers = np.array([pow(g, k, p) for k in range(q)], dtype=np.int64)
        t = np.asarray(t)
        m = np.asarray(m)
        left = powers[(t * self.twist) % q] * n
        right = powers[(m * self.exponent) % q] * s
        return (left + right) % p, (m + t) % q


@dataclass(frozen=True, eq=False)
class SkewBrace:
    params: Params
    add_kind: str
    label: str
    label_params: tuple = ()
    formula: Optional[CircFormula] = None
    circ_table: Optional[np.ndarray] = field(default=None, repr=False)
    add_override: Optional[np.ndarray] = field(default=None, repr=False)
    source: Optional[Subgroup] = field(default=None, repr=False)

    def __post_init__(self):
        if self.formula is None and self.circ_table is None:
            raise ConstructionError("a brace needs either a formula or a table for o")

    @property
    def order(self) -> int:
        return self.params.order

    @property
    def standard_encoding(self) -> bool:
        return self.add_override is None

    @cached_property
    def add(self) -> np.ndarray:
        if self.add_override is not None:
            return self.add_override
        return add_table(self.params, self.add_kind)

    @cached_property
    def circ(self) -> np.ndarray:
        if self.circ_table is not None:
            return self.circ_table
        p, q = self.params.p, self.params.q
        idx = np.arange(p * q)
        n, m = np.divmod(idx, q)
        nn, mm = self.formula.evaluate(self.params, n[:, None], m[:, None], n[None, :], m[None, :])
        table = (nn * q + mm).astype(np.int64)
        table.setflags(write=False)
        return table

    @cached_property
    def neg(self) -> np.ndarray:
        return inverse_table(self.add)

    @cached_property
    def circ_inv(self) -> np.ndarray:
        return inverse_table(self.circ)

    def name(self) -> str:
        if not self.label_params:
            return self.label
        return self.label + "(" + ", ".join(f"{k}={v}" for k, v in self.label_params) + ")"

    def __repr__(self):
        return f"<SkewBrace {self.name()} over {self.add_kind}, p={self.params.p}, q={self.params.q}>"


# ---------------------------------------------------------------- construction

def brace_from_regular(params: Params, A_kind: str, S: Subgroup) -> SkewBrace:
    """``a o b = a + f(b)`` where ``(a, f)`` is the unique element of S over a."""
    check_kind(params, A_kind)
    if S.kind != A_kind:
        raise UsageError("subgroup lives in a different holomorph")
    if not is_regular(params, S):
        raise ConstructionError("pi_1 restricted to the subgroup is not a bijection (not regular)")
    H = S.hol
    a, f = H.projections(S.array)
    lam = np.empty(params.order, dtype=np.int64)
    lam[a] = f
    circ = H.add[np.arange(params.order)[:, None], H.apply[lam]]
    circ.setflags(write=False)
    tag = S.label or "subgroup"
    return SkewBrace(params, A_kind, "from-subgroup", (("family", tag),) + tuple(S.label_params),
                     circ_table=circ, source=S)


def catalog(params: Params) -> list[SkewBrace]:
    """One representative of every isomorphism class of skew brace of order pq."""
    if not params.congruent:
        return [SkewBrace(params, "C", "trivial-C", formula=CircFormula(0, 0))]
    q = params.q
    out = [
        SkewBrace(params, "C", "trivial-C", formula=CircFormula(0, 0)),
        SkewBrace(params, "C", "cyclic-nontrivial", formula=CircFormula(0, 1)),
        SkewBrace(params, "M", "trivial-M", formula=CircFormula(0, 1)),
        SkewBrace(params, "M", "kerq", formula=CircFormula(1, 1)),
    ]
    # gamma, mu run over 2..q; the exponent is taken mod q so q means g^0
    out += [SkewBrace(params, "M", "A_gamma", (("gamma", c),), formula=CircFormula(0, c % q)) for c in range(2, q + 1)]
    out += [SkewBrace(params, "M", "A_mu", (("mu", c),), formula=CircFormula(1, c % q)) for c in range(2, q + 1)]
    return out


def semidirect_biskew(params: Params, a_order: int, b_order: int, eta: int, rho: int) -> SkewBrace:
    """Brace with ``+`` = Z_a x|_eta Z_b and ``o`` = Z_a x|_rho Z_b.

    ``eta`` and ``rho`` are the units by which the generator of Z_b acts on
    Z_a.  Multiplications on a cyclic group commute, so the two images
    always commute.
    """
    if (a_order, b_order) != (params.p, params.q):
        raise UsageError("the carrier must be Z_p x Z_q for the given parameters")
    n, k = a_order, b_order
    tables = []
    for unit in (eta, rho):
        unit %= n
        if np.gcd(unit, n) != 1 or pow(unit, k, n) != 1:
            raise ConstructionError(f"{unit} does not define a homomorphism Z_{k} -> Aut(Z_{n})")
        tables.append(_semidirect_table(n, k, unit))
    plus, circ = tables
    if np.array_equal(plus, add_table(params, "C")):
        kind, override = "C", None
    elif params.congruent and np.array_equal(plus, add_table(params, "M")):
        kind, override = "M", None
    else:
        kind = "C" if np.array_equal(plus, plus.T) else "M"
        override = plus
    return SkewBrace(params, kind, "semidirect", (("eta", eta % n), ("rho", rho % n)),
                     circ_table=circ, add_override=override)


def _semidirect_table(n: int, k: int, unit: int) -> np.ndarray:
    idx = np.arange(n * k)
    x, s = np.divmod(idx, k)
    powers = np.array([pow(unit, e, n) for e in range(k)], dtype=np.int64)
    new_x = (x[:, None] + powers[s][:, None] * x[None, :]) % n
    new_s = (s[:, None] + s[None, :]) % k
    table = (new_x * k + new_s).astype(np.int64)
    table.setflags(write=False)
    return table


# ---------------------------------------------------------------- verification

@dataclass
class BraceReport:
    add_group: bool
    circ_group: bool
    brace_law: bool
    witness: Optional[tuple] = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.add_group and self.circ_group and self.brace_law


def _group_problem(table: np.ndarray, backend=None) -> Optional[str]:
    n = table.shape[0]
    if table.shape != (n, n) or table.min() < 0 or table.max() >= n:
        return "table is not a closed binary operation"
    try:
        e = identity_of(table)
    except UsageError:
        return "no identity"
    if not np.array_equal(table[:, e], np.arange(n)):
        return "identity is not two-sided"
    if not (table == e).any(axis=1).all():
        return "some element has no inverse"
    w = kernels.associativity_witness(table, backend=backend)
    if w is not None:
        return f"not associative at {w}"
    return None


def verify_skew_axioms(B: SkewBrace, backend=None) -> BraceReport:
    """Both group axioms plus the brace law on every triple."""
    add_issue = _group_problem(B.add, backend)
    circ_issue = _group_problem(B.circ, backend)
    report = BraceReport(add_issue is None, circ_issue is None, False)
    report.notes += [f"+: {add_issue}"] if add_issue else []
    report.notes += [f"o: {circ_issue}"] if circ_issue else []
    if add_issue:
        return report
    w = kernels.brace_law_witness(B.add, B.neg, B.circ, backend=backend)
    report.brace_law = w is None
    report.witness = w
    return report


def biskew_witness(B: SkewBrace, backend=None) -> Optional[tuple]:
    """First triple violating the brace law for ``(A, o, +)``, or ``None``."""
    return kernels.brace_law_witness(B.circ, B.circ_inv, B.add, backend=backend)


def is_biskew(B: SkewBrace, backend=None) -> bool:
    return biskew_witness(B, backend) is None


# ---------------------------------------------------------------- lambda map

@dataclass
class LambdaMap:
    table: np.ndarray          # table[a, b] = lambda_a(b)
    kernel: np.ndarray         # flat indices with lambda_a = id
    auts: Optional[list] = None  # lambda_a as Aut values (standard encodings only)

    @property
    def kernel_size(self) -> int:
        return int(self.kernel.size)


def lambda_of(B: SkewBrace) -> LambdaMap:
    """``lambda_a(b) = -a + a o b``, checked to be a homomorphism into Aut(A, +)."""
    n = B.order
    lam = B.add[B.neg[:, None], B.circ]
    if not (np.sort(lam, axis=1) == np.arange(n)).all():
        raise ConstructionError("some lambda_a is not a bijection; not a skew brace")
    # lambda_a(b + c) = lambda_a(b) + lambda_a(c)
    if not np.array_equal(lam[:, B.add], B.add[lam[:, :, None], lam[:, None, :]]):
        raise ConstructionError("some lambda_a is not additive; not a skew brace")
    # lambda_{a o b} = lambda_a lambda_b
    if not np.array_equal(lam[B.circ], lam[np.arange(n)[:, None, None], lam[None, :, :]]):
        raise ConstructionError("a -> lambda_a is not a homomorphism from (A, o)")
    kernel = np.nonzero((lam == np.arange(n)).all(axis=1))[0]
    auts = _as_auts(B, lam) if B.standard_encoding else None
    return LambdaMap(lam, kernel, auts)


def _as_auts(B: SkewBrace, lam: np.ndarray) -> list:
    P = B.params
    H = holomorph(P, B.add_kind)
    p, q = P.p, P.q
    out = []
    for a in range(B.order):
        sig_n, sig_m = divmod(int(lam[a, q]), q)   # image of sigma = (1, 0)
        tau_n, tau_m = divmod(int(lam[a, 1]), q)   # image of tau = (0, 1)
        if B.add_kind == "C":
            f = Aut("C", sig_n, tau_m, p, q)
        else:
            f = Aut("M", sig_n, tau_n, p, q)
        k = H.aut_index.get(f)
        if k is None or not np.array_equal(H.apply[k], lam[a]):
            raise ConstructionError(f"lambda_{a} does not match any automorphism of {B.add_kind}")
        out.append(f)
    return out


def kernel_size(B: SkewBrace) -> int:
    """``|ker lambda|``.  Formula braces are evaluated on the generators
    sigma, tau only, which avoids materialising tables for large p."""
    if B.formula is None or B.order <= EXHAUSTIVE_LIMIT:
        return lambda_of(B).kernel_size
    P = B.params
    n, m = np.divmod(np.arange(B.order), P.q)
    fixed = np.ones(B.order, dtype=bool)
    for s, t in ((1, 0), (0, 1)):
        cn, cm = B.formula.evaluate(P, n, m, s, t)
        # a + (s, t) in the additive group
        an, am = _add_formula(P, B.add_kind, n, m, s, t)
        fixed &= (cn == an) & (cm == am)
    return int(fixed.sum())


def _add_formula(P: Params, kind, n, m, s, t):
    if kind == "C":
        return (n + s) % P.p, (m + t) % P.q
    return CircFormula(0, 1).evaluate(P, n, m, s, t)


def mult_iso_type(B: SkewBrace) -> str:
    """Isomorphism type of ``(A, o)``: ``"C"`` iff abelian."""
    if B.formula is None or B.order <= EXHAUSTIVE_LIMIT:
        return "C" if np.array_equal(B.circ, B.circ.T) else "M"
    # sigma and tau generate (A, o) for every catalog formula
    P = B.params
    st = B.formula.evaluate(P, 1, 0, 0, 1)
    ts = B.formula.evaluate(P, 0, 1, 1, 0)
    return "C" if tuple(map(int, st)) == tuple(map(int, ts)) else "M"


# ---------------------------------------------------------------- isomorphism

def table_orders(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    e = identity_of(table)
    idx = np.arange(n)
    out = np.zeros(n, dtype=np.int64)
    y = idx.copy()
    for k in range(1, n + 1):
        out[(y == e) & (out == 0)] = k
        if out.all():
            break
        y = table[y, idx]
    return out


def _span(table: np.ndarray, gens: list, e: int) -> set:
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(table[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _spanning_tree(table: np.ndarray, gens: list, e: int):
    n = table.shape[0]
    parent = np.full(n, -1, dtype=np.int64)
    via = np.full(n, -1, dtype=np.int64)
    order = []
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for k, g in enumerate(gens):
                y = int(table[x, g])
                if y not in seen:
                    seen.add(y)
                    parent[y], via[y] = x, k
                    order.append(y)
                    nxt.append(y)
        frontier = nxt
    return np.array(order, dtype=np.int64), parent, via


@dataclass
class IsoResult:
    isomorphic: bool
    witness: Optional[np.ndarray] = None

    def __bool__(self):
        return self.isomorphic


def are_isomorphic(B1: SkewBrace, B2: SkewBrace, backend=None) -> IsoResult:
    """Search for a bijection that is a homomorphism for ``+`` and ``o`` at once.

    Generators of ``(B1, +)`` are sent to every candidate image pair of B2
    with matching additive and multiplicative orders; each assignment is
    extended along a spanning tree of ``(B1, +)`` and checked in full.
    """
    if B1.order != B2.order:
        return IsoResult(False)
    o1 = np.stack([table_orders(B1.add), table_orders(B1.circ)], axis=1)
    o2 = np.stack([table_orders(B2.add), table_orders(B2.circ)], axis=1)
    if sorted(map(tuple, o1)) != sorted(map(tuple, o2)):
        return IsoResult(False)
    e1, e2 = identity_of(B1.add), identity_of(B2.add)
    gens: list = []
    span = {e1}
    for x in np.argsort(-o1[:, 0], kind="stable"):
        if int(x) not in span:
            gens.append(int(x))
            span = _span(B1.add, gens, e1)
        if len(span) == B1.order:
            break
    order, parent, via = _spanning_tree(B1.add, gens, e1)
    candidates = [np.nonzero((o2 == o1[g]).all(axis=1))[0] for g in gens]
    for images in itertools.product(*candidates):
        phi, ok = kernels.extend_isomorphism(order, parent, via, np.array(images), e1, e2,
                                             B1.add, B1.circ, B2.add, B2.circ, backend=backend)
        if ok:
            return IsoResult(True, phi)
    return IsoResult(False)


# ---------------------------------------------------------------- export record

def descriptor(B: SkewBrace, include_tables: bool = False, check: Optional[bool] = None) -> dict:
    """Export record for one brace.

    ``biskew`` is ``None`` when the carrier is too large for the exhaustive
    sweep (or ``check=False``).
    """
    P = B.params
    check = B.order <= EXHAUSTIVE_LIMIT if check is None else check
    rec = {
        "p": P.p,
        "q": P.q,
        "g": P.g,
        "add_kind": B.add_kind,
        "label": B.label,
        "label_params": dict(B.label_params),
        "formula": B.formula.describe() if B.formula else None,
        "ker_lambda": kernel_size(B),
        "biskew": is_biskew(B) if check else None,
        "mult_iso_type": mult_iso_type(B),
    }
    if include_tables:
        rec["add_table"] = B.add.tolist()
        rec["circ_table"] = B.circ.tolist()
    return rec


def brace_from_descriptor(params: Params, rec: dict) -> SkewBrace:
    """Rebuild a brace from an exported record carrying tables."""
    if "circ_table" not in rec:
        raise ConstructionError("record has no o table")
    circ = np.array(rec["circ_table"], dtype=np.int64)
    circ.setflags(write=False)
    add = np.array(rec["add_table"], dtype=np.int64) if "add_table" in rec else None
    override = None
    if add is not None and not np.array_equal(add, add_table(params, rec["add_kind"])):
        override = add
    return SkewBrace(params, rec["add_kind"], rec["label"], tuple(rec.get("label_params", {}).items()),
                     circ_table=circ, add_override=override)
