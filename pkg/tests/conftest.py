import pytest

from pqbraces import kernels, make_params

# every (p, q) with p > q prime and pq <= 21
SMALL = [(3, 2), (5, 2), (7, 2), (5, 3), (7, 3)]
SMALL_CONGRUENT = [pq for pq in SMALL if pq[0] % pq[1] == 1]


@pytest.fixture(params=kernels.BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def p73():
    return make_params(7, 3)


@pytest.fixture(params=SMALL, ids=lambda t: f"p{t[0]}q{t[1]}")
def small(request):
    return make_params(*request.param)


@pytest.fixture(params=SMALL_CONGRUENT, ids=lambda t: f"p{t[0]}q{t[1]}")
def small_congruent(request):
    return make_params(*request.param)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
