import itertools

import numpy as np
import pytest

from pqbraces.errors import ConstructionError
from pqbraces.group_core import make_params
from pqbraces.skew_brace import SkewBrace, catalog, lambda_of
from pqbraces.ybe import YbeSolution, export_record, flip, solution_from_brace, verify_solution


def by_label(P):
    return {B.name(): B for B in catalog(P)}


def braid_by_composition(sol):
    """Compose the two sides of the braid relation as maps on X^3, entry by entry."""
    n = sol.size
    r = sol.r

    def r12(t):
        a, b = r(t[0], t[1])
        return (a, b, t[2])

    def r23(t):
        b, c = r(t[1], t[2])
        return (t[0], b, c)

    for t in itertools.product(range(n), repeat=3):
        if r23(r12(r23(t))) != r12(r23(r12(t))):
            return False
    return True


def test_flip_is_a_solution():
    for n in (1, 4, 9):
        rep = verify_solution(flip(n))
        assert rep.braid and rep.nondegenerate and rep.involutive


def test_trivial_over_C_is_flip(p73):
    sol = solution_from_brace(by_label(p73)["trivial-C"])
    f = flip(21)
    assert np.array_equal(sol.sigma, f.sigma) and np.array_equal(sol.tau, f.tau)


def test_trivial_over_M_is_twisted_flip(p73):
    B = by_label(p73)["trivial-M"]
    sol = solution_from_brace(B)
    add, neg = B.add, B.neg
    for x in range(21):
        for y in range(21):
            assert sol.r(x, y) == (y, add[add[neg[y], x], y])


def test_cyclic_nontrivial_involutive(p73):
    sol = solution_from_brace(by_label(p73)["cyclic-nontrivial"])
    rep = verify_solution(sol)
    assert sol.size == 21 and rep.involutive and rep.nondegenerate and rep.braid


def test_braid_kernel_matches_composition():
    P = make_params(5, 2)
    for B in catalog(P):
        sol = solution_from_brace(B)
        assert braid_by_composition(sol)
    # a non-solution: sigma_x(y) = y + 1, tau_y(x) = x
    n = 6
    sig = np.tile((np.arange(n) + 1) % n, (n, 1))
    sig[0] = np.arange(n)
    tau = np.tile(np.arange(n), (n, 1)).T.copy()
    bad = YbeSolution(sig, tau)
    assert verify_solution(bad).braid == braid_by_composition(bad)


@pytest.mark.parametrize("pq", [(7, 3), (7, 2), (11, 5)])
def test_catalog_solutions(pq, backend):
    P = make_params(*pq)
    for B in catalog(P):
        rep = verify_solution(solution_from_brace(B, backend=backend), backend=backend)
        assert rep.braid and rep.nondegenerate
        assert rep.involutive == (B.add_kind == "C")


def test_rejects_non_brace(p73):
    circ = np.array(catalog(p73)[2].add).T.copy()
    with pytest.raises(ConstructionError):
        solution_from_brace(SkewBrace(p73, "C", "opposite", circ_table=circ))


def test_degenerate_detected():
    n = 3
    sig = np.zeros((n, n), dtype=np.int64)
    rep = verify_solution(YbeSolution(sig, sig.copy()))
    assert not rep.nondegenerate


def test_export_record(p73):
    sol = solution_from_brace(catalog(p73)[1])
    rec = export_record(sol)
    assert rec["size"] == 21 and len(rec["sigma"]) == 441 and len(rec["tau"]) == 441
    assert rec["braid"] and rec["involutive"]
    assert np.array_equal(np.array(rec["sigma"]).reshape(21, 21), sol.sigma)
