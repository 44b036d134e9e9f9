import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pqbraces.automorphisms import alpha_beta, aut_compose, aut_power, holomorph
from pqbraces.errors import ConstructionError, UsageError
from pqbraces.group_core import add_table, make_params
from pqbraces.regular_subgroups import (
    close_subgroup,
    closed_form_subgroups,
    compute_orbits,
    family_cyclic_Gb,
    family_meta_Gc,
    trivial_subgroup,
)
from pqbraces.automorphisms import HolElem, identity_aut
from pqbraces.group_core import GroupElem
from pqbraces.skew_brace import (
    EXHAUSTIVE_LIMIT,
    CircFormula,
    SkewBrace,
    are_isomorphic,
    biskew_witness,
    brace_from_descriptor,
    brace_from_regular,
    catalog,
    descriptor,
    is_biskew,
    kernel_size,
    lambda_of,
    mult_iso_type,
    semidirect_biskew,
    verify_skew_axioms,
)


def by_label(braces):
    return {B.name(): B for B in braces}


def reference_formula(P, label, c=None):
    """The o-operation written out literally, entry by entry."""
    p, q, g = P.p, P.q, P.g

    def op(n, m, s, t):
        if label in ("trivial-C",):
            return (n + s) % p, (m + t) % q
        if label in ("cyclic-nontrivial", "trivial-M"):
            return (n + g ** m * s) % p, (m + t) % q
        if label == "kerq":
            return (g ** t * n + g ** m * s) % p, (m + t) % q
        if label == "A_gamma":
            return (n + (g ** c) ** m * s) % p, (m + t) % q
        if label == "A_mu":
            return (g ** t * n + (g ** c) ** m * s) % p, (m + t) % q
        raise KeyError(label)

    table = np.zeros((p * q, p * q), dtype=np.int64)
    for (n, m), (s, t) in itertools.product(itertools.product(range(p), range(q)), repeat=2):
        nn, mm = op(n, m, s, t)
        table[n * q + m, s * q + t] = nn * q + mm
    return table


@pytest.mark.parametrize("pq", [(7, 3), (7, 2), (11, 5), (13, 3)])
def test_catalog_tables_match_written_formulas(pq):
    P = make_params(*pq)
    for B in catalog(P):
        c = dict(B.label_params).get("gamma", dict(B.label_params).get("mu"))
        assert np.array_equal(B.circ, reference_formula(P, B.label, c)), B.name()


def test_catalog_counts():
    assert len(catalog(make_params(5, 3))) == 1
    assert len(catalog(make_params(7, 3))) == 8
    assert len(catalog(make_params(11, 5))) == 12


def test_gamma_q_is_abelian(p73):
    B = by_label(catalog(p73))["A_gamma(gamma=3)"]
    assert np.array_equal(B.circ, B.circ.T)


def test_brace_from_regular_examples(p73):
    P = p73
    T = brace_from_regular(P, "C", trivial_subgroup(P, "C"))
    assert np.array_equal(T.circ, T.add)
    B = brace_from_regular(P, "C", family_cyclic_Gb(P, 1))
    assert verify_skew_axioms(B).ok and lambda_of(B).kernel_size == 7
    K = brace_from_regular(P, "M", family_meta_Gc(P, 0))
    assert lambda_of(K).kernel_size == 3
    with pytest.raises(ConstructionError):
        brace_from_regular(P, "C", close_subgroup(P, [HolElem(GroupElem("C", 0, 0), identity_aut(P, "C"))]))
    with pytest.raises(UsageError):
        brace_from_regular(P, "M", family_cyclic_Gb(P, 1))


def test_brace_from_regular_invariants(small):
    P = small
    for kind in P.kinds():
        for S in closed_form_subgroups(P, kind):
            B = brace_from_regular(P, kind, S)
            assert verify_skew_axioms(B).ok
            lam = lambda_of(B)
            assert lam.kernel_size * S.pi2_size == P.order
            # lambda_a = pi_2 of the element of S over a
            H = S.hol
            a, f = H.projections(S.array)
            assert [H.aut_index[lam.auts[int(x)]] for x in a] == f.tolist()
            # (A, o) is isomorphic to S: the map a -> (a, f_a) is a homomorphism
            lift = np.empty(P.order, dtype=np.int64)
            lift[a] = S.array
            assert np.array_equal(lift[B.circ], H.mul(lift[:, None], lift[None, :]))


def test_verify_negative_control(p73):
    B = catalog(p73)[5]
    circ = B.circ.copy()
    circ[4, [2, 3]] = circ[4, [3, 2]]
    bad = SkewBrace(p73, B.add_kind, "corrupt", circ_table=circ)
    rep = verify_skew_axioms(bad)
    assert not rep.ok
    # a broken o-table may already fail the group axioms; the law itself must fail too
    assert rep.witness is not None
    a, b, c = rep.witness
    add, neg = B.add, B.neg
    assert circ[a, add[b, c]] != add[add[circ[a, b], neg[a]], circ[a, c]]


def test_verify_reports_group_failure(p73):
    circ = np.zeros((21, 21), dtype=np.int64)
    rep = verify_skew_axioms(SkewBrace(p73, "C", "junk", circ_table=circ))
    assert not rep.circ_group and not rep.ok


def test_lambda_examples(p73):
    braces = by_label(catalog(p73))
    triv = lambda_of(braces["trivial-M"])
    assert triv.kernel_size == 21 and np.array_equal(triv.table, np.tile(np.arange(21), (21, 1)))
    assert lambda_of(braces["kerq"]).kernel_size == 3
    for mu in (2, 3):
        assert lambda_of(braces[f"A_mu(mu={mu})"]).kernel_size == 1


def test_lambda_rejects_non_brace(p73):
    circ = np.array(add_table(p73, "M")).T.copy()  # o = opposite group: not a brace over C
    B = SkewBrace(p73, "C", "opposite", circ_table=circ)
    assert not verify_skew_axioms(B).ok
    with pytest.raises(ConstructionError):
        lambda_of(B)


@pytest.mark.parametrize("pq", [(7, 3), (7, 2), (11, 5), (13, 3)])
def test_kernel_sizes(pq):
    P = make_params(*pq)
    p, q = pq
    want = {"trivial-C": p * q, "trivial-M": p * q, "cyclic-nontrivial": p, "kerq": q, "A_gamma": p, "A_mu": 1}
    for B in catalog(P):
        assert lambda_of(B).kernel_size == want[B.label]


def test_lambda_values_in_alpha_beta_subgroup(small_congruent):
    P = small_congruent
    alpha, beta = alpha_beta(P, "M")
    sub = {aut_compose(aut_power(alpha, i), aut_power(beta, j)) for i in range(P.p) for j in range(P.q)}
    assert len(sub) == P.order
    for B in catalog(P):
        if B.add_kind == "M":
            assert set(lambda_of(B).auts) <= sub


def test_formula_shortcuts_match_tables(monkeypatch):
    P = make_params(11, 5)
    exact = [(lambda_of(B).kernel_size, "C" if np.array_equal(B.circ, B.circ.T) else "M") for B in catalog(P)]
    import pqbraces.skew_brace as sb

    monkeypatch.setattr(sb, "EXHAUSTIVE_LIMIT", 10)
    fresh = catalog(P)
    assert [(kernel_size(B), mult_iso_type(B)) for B in fresh] == exact
    assert descriptor(fresh[0])["biskew"] is None


def test_large_catalog_without_tables():
    P = make_params(9973, 3)
    assert P.order > EXHAUSTIVE_LIMIT
    recs = [descriptor(B) for B in catalog(P)]
    assert [r["ker_lambda"] for r in recs] == [P.order, 9973, P.order, 3, 9973, 9973, 1, 1]


def test_biskew_examples(small_congruent):
    for B in catalog(small_congruent):
        if B.label in ("trivial-C", "trivial-M", "cyclic-nontrivial", "A_gamma"):
            assert is_biskew(B), B.name()


def test_biskew_flag_is_swapped_law():
    for pq in [(7, 3), (11, 5)]:
        for B in catalog(make_params(*pq)):
            swapped = SkewBrace(B.params, B.add_kind, "swap", circ_table=B.add, add_override=B.circ)
            assert is_biskew(B) == (verify_skew_axioms(swapped).brace_law)
            if not is_biskew(B):
                x, y, z = biskew_witness(B)
                add, circ, ci = B.add, B.circ, B.circ_inv
                # x + (y o z) != (x + y) o x' o (x + z)
                assert add[x, circ[y, z]] != circ[circ[add[x, y], ci[x]], add[x, z]]


def test_semidirect_examples(p73):
    P = p73
    T = semidirect_biskew(P, 7, 3, 1, 1)
    assert np.array_equal(T.circ, T.add) and T.add_kind == "C"
    B = semidirect_biskew(P, 7, 3, 1, P.g)
    assert np.array_equal(B.circ, by_label(catalog(P))["cyclic-nontrivial"].circ)
    assert is_biskew(B) and lambda_of(B).kernel_size == 7
    M = semidirect_biskew(P, 7, 3, P.g, P.g)
    assert M.add_kind == "M" and np.array_equal(M.circ, M.add)
    with pytest.raises(ConstructionError):
        semidirect_biskew(P, 7, 3, 3, 1)  # 3 has order 6 mod 7
    with pytest.raises(UsageError):
        semidirect_biskew(P, 5, 3, 1, 1)


@pytest.mark.parametrize("eta,rho", [(1, 2), (2, 1), (2, 4), (4, 2), (4, 4), (1, 4)])
def test_semidirect_lambda_formula(p73, eta, rho):
    B = semidirect_biskew(p73, 7, 3, eta, rho)
    assert verify_skew_axioms(B).ok and is_biskew(B)
    lam = lambda_of(B)
    for x, s, y, t in itertools.product(range(7), range(3), range(7), range(3)):
        # lambda_{(x,s)}(y,t) = (eta_{-s}(rho_s(y)), t)
        want = (pow(eta, -s % 3, 7) * pow(rho, s, 7) * y % 7) * 3 + t
        assert lam.table[x * 3 + s, y * 3 + t] == want
    assert set(range(0, 21, 3)) <= set(lam.kernel.tolist())


def test_isomorphism_examples(p73):
    braces = catalog(p73)
    for B in braces:
        res = are_isomorphic(B, B)
        assert res and res.witness is not None
    for B1, B2 in itertools.combinations(braces, 2):
        assert not are_isomorphic(B1, B2)


def test_isomorphism_witness_is_valid(p73):
    P = p73
    S, T = family_meta_Gc(P, 0), family_meta_Gc(P, 3)
    B1, B2 = brace_from_regular(P, "M", S), brace_from_regular(P, "M", T)
    res = are_isomorphic(B1, B2)
    assert res
    phi = res.witness
    assert sorted(phi.tolist()) == list(range(21))
    assert np.array_equal(phi[B1.add], B2.add[phi[:, None], phi[None, :]])
    assert np.array_equal(phi[B1.circ], B2.circ[phi[:, None], phi[None, :]])


def test_isomorphism_backends_agree(backend):
    P = make_params(7, 2)
    braces = catalog(P)
    got = [[bool(are_isomorphic(a, b, backend=backend)) for b in braces] for a in braces]
    assert got == np.eye(len(braces), dtype=bool).tolist()


def test_different_add_kind_never_isomorphic(p73):
    braces = by_label(catalog(p73))
    assert not are_isomorphic(braces["trivial-C"], braces["trivial-M"])


def test_orbit_isomorphism_correspondence(small_congruent):
    P = small_congruent
    for kind in "CM":
        orbits = compute_orbits(P, closed_form_subgroups(P, kind))
        reps = [brace_from_regular(P, kind, o.representative) for o in orbits]
        for o, R in zip(orbits, reps):
            for S in o.members[:3]:
                assert are_isomorphic(R, brace_from_regular(P, kind, S))
        for R1, R2 in itertools.combinations(reps, 2):
            assert not are_isomorphic(R1, R2)


def test_catalog_matches_orbit_representatives(small_congruent):
    P = small_congruent
    reps = []
    for kind in "CM":
        reps += [brace_from_regular(P, kind, o.representative)
                 for o in compute_orbits(P, closed_form_subgroups(P, kind))]
    for B in catalog(P):
        matches = [R for R in reps if R.add_kind == B.add_kind and are_isomorphic(B, R)]
        assert len(matches) == 1, B.name()


def test_descriptor_round_trip(p73):
    for B in catalog(p73):
        rec = descriptor(B, include_tables=True)
        B2 = brace_from_descriptor(p73, rec)
        assert np.array_equal(B2.circ, B.circ) and np.array_equal(B2.add, B.add)
        assert rec["add_kind"] == B.add_kind


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(7, 3), (11, 5), (13, 3)]), st.integers(0, 11), st.data())
def test_brace_law_on_random_triples(pq, k, data):
    P = make_params(*pq)
    braces = catalog(P)
    B = braces[k % len(braces)]
    a, b, c = (data.draw(st.integers(0, P.order - 1)) for _ in range(3))
    add, neg, circ = B.add, B.neg, B.circ
    assert circ[a, add[b, c]] == add[add[circ[a, b], neg[a]], circ[a, c]]
    lam = lambda_of(B).table
    assert lam[circ[a, b], c] == lam[a, lam[b, c]]
