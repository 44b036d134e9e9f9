"""Set-theoretic Yang-Baxter solutions attached to skew braces.

For a skew brace the map

    r(a, b) = (lambda_a(b), lambda_a(b)' o a o b)

(``'`` the inverse in ``(A, o)``) is a non-degenerate solution.  Tables are
stored as ``sigma[x, y] = sigma_x(y)`` and ``tau[y, x] = tau_y(x)`` on flat
carrier indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import ConstructionError
from .skew_brace import SkewBrace, lambda_of


@dataclass(frozen=True, eq=False)
class YbeSolution:
    sigma: np.ndarray
    tau: np.ndarray

    @property
    def size(self) -> int:
        return self.sigma.shape[0]

    def r(self, x: int, y: int) -> tuple[int, int]:
        return int(self.sigma[x, y]), int(self.tau[y, x])

    def square(self) -> tuple[np.ndarray, np.ndarray]:
        """Both coordinates of ``r(r(x, y))`` as ``[x, y]`` arrays."""
        n = self.size
        x = np.arange(n)[:, None]
        y = np.arange(n)[None, :]
        u = self.sigma[x, y]
        v = self.tau[y, x]
        return self.sigma[u, v], self.tau[v, u]


def flip(n: int) -> YbeSolution:
    """``r(x, y) = (y, x)``."""
    idx = np.arange(n)
    table = np.broadcast_to(idx, (n, n)).copy()
    return YbeSolution(table, table.copy())


def solution_from_brace(B: SkewBrace, check: bool = True, backend=None) -> YbeSolution:
    lam = lambda_of(B).table
    n = B.order
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    first = lam                                   # [a, b]
    second = B.circ[B.circ[B.circ_inv[first], a], b]  # [a, b] -> tau_b(a)
    sol = YbeSolution(np.ascontiguousarray(first), np.ascontiguousarray(second.T))
    if check:
        # sigma_a(b) o tau_b(a) = a o b must hold for a brace solution
        if not np.array_equal(B.circ[first, second], B.circ):
            raise ConstructionError("tau disagrees with the relation sigma_a(b) o tau_b(a) = a o b")
        w = kernels.braid_witness(sol.sigma, sol.tau, backend=backend)
        if w is not None:
            raise ConstructionError(f"braid relation fails at {w}")
    return sol


@dataclass
class SolutionReport:
    braid: bool
    nondegenerate: bool
    involutive: bool
    witness: Optional[tuple] = None

    def as_dict(self) -> dict:
        return {"braid": self.braid, "nondegenerate": self.nondegenerate, "involutive": self.involutive}


def _rows_are_perms(t: np.ndarray) -> bool:
    return bool((np.sort(t, axis=1) == np.arange(t.shape[1])).all())


def verify_solution(sol: YbeSolution, backend=None) -> SolutionReport:
    w = kernels.braid_witness(sol.sigma, sol.tau, backend=backend)
    nondeg = _rows_are_perms(sol.sigma) and _rows_are_perms(sol.tau)
    u, v = sol.square()
    n = sol.size
    involutive = bool(np.array_equal(u, np.broadcast_to(np.arange(n)[:, None], (n, n)))
                      and np.array_equal(v, np.broadcast_to(np.arange(n)[None, :], (n, n))))
    return SolutionReport(w is None, nondeg, involutive, w)


def export_record(sol: YbeSolution, report: Optional[SolutionReport] = None) -> dict:
    report = report or verify_solution(sol)
    return {
        "size": sol.size,
        "sigma": sol.sigma.ravel().tolist(),
        "tau": sol.tau.ravel().tolist(),
        **report.as_dict(),
    }
