"""Hot loops over Cayley tables and holomorph index tables.

Every kernel has two implementations with identical results:

* an explicit-loop version compiled with ``numba.njit`` (used by default),
* a vectorised pure-numpy version.

Set ``PQBRACES_DISABLE_NUMBA=1`` (or run without numba installed) to select
the numpy path globally; individual calls can also pass ``backend=``.
Witness-returning kernels report the lexicographically first failing
triple on both paths.
"""
from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

_DISABLED = os.environ.get("PQBRACES_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")
DEFAULT_BACKEND = "numba" if HAVE_NUMBA and not _DISABLED else "numpy"
BACKENDS = ("numba", "numpy") if HAVE_NUMBA else ("numpy",)


def _jit(fn):
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


def _pick(backend):
    backend = backend or DEFAULT_BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return backend


def _as_triple(w):
    return None if w[0] < 0 else (int(w[0]), int(w[1]), int(w[2]))


# ---------------------------------------------------------------- associativity

@_jit
def _assoc_loop(op):
    n = op.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    for a in range(n):
        for b in range(n):
            ab = op[a, b]
            for c in range(n):
                if op[ab, c] != op[a, op[b, c]]:
                    out[0] = a
                    out[1] = b
                    out[2] = c
                    return out
    return out


def _assoc_np(op):
    for a in range(op.shape[0]):
        bad = op[op[a]][:, :] != op[a][op]
        if bad.any():
            b, c = np.argwhere(bad)[0]
            return np.array([a, b, c])
    return np.full(3, -1)


def associativity_witness(op: np.ndarray, backend=None):
    """First ``(a, b, c)`` with ``(ab)c != a(bc)``, or ``None``."""
    op = np.ascontiguousarray(op, dtype=np.int64)
    w = _assoc_loop(op) if _pick(backend) == "numba" else _assoc_np(op)
    return _as_triple(w)


# ---------------------------------------------------------------- brace law

@_jit
def _brace_loop(add, neg, circ):
    n = add.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    for a in range(n):
        na = neg[a]
        for b in range(n):
            left = add[circ[a, b], na]
            for c in range(n):
                if circ[a, add[b, c]] != add[left, circ[a, c]]:
                    out[0] = a
                    out[1] = b
                    out[2] = c
                    return out
    return out


def _brace_np(add, neg, circ):
    for a in range(add.shape[0]):
        row = circ[a]
        lhs = row[add]
        rhs = add[add[row, neg[a]][:, None], row[None, :]]
        bad = lhs != rhs
        if bad.any():
            b, c = np.argwhere(bad)[0]
            return np.array([a, b, c])
    return np.full(3, -1)


def brace_law_witness(add: np.ndarray, neg: np.ndarray, circ: np.ndarray, backend=None):
    """First ``(a, b, c)`` violating ``a o (b + c) = a o b - a + a o c``, or ``None``."""
    add = np.ascontiguousarray(add, dtype=np.int64)
    neg = np.ascontiguousarray(neg, dtype=np.int64)
    circ = np.ascontiguousarray(circ, dtype=np.int64)
    w = _brace_loop(add, neg, circ) if _pick(backend) == "numba" else _brace_np(add, neg, circ)
    return _as_triple(w)


# ---------------------------------------------------------------- braid relation

@_jit
def _braid_loop(sig, tau):
    # sig[x, y] = sigma_x(y), tau[y, x] = tau_y(x)
    n = sig.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    for x in range(n):
        for y in range(n):
            a1 = sig[x, y]
            b1 = tau[y, x]
            for z in range(n):
                # (id x r)(r x id)(id x r)
                y1 = sig[y, z]
                z1 = tau[z, y]
                x2 = sig[x, y1]
                y2 = tau[y1, x]
                l1 = x2
                l2 = sig[y2, z1]
                l3 = tau[z1, y2]
                # (r x id)(id x r)(r x id)
                b2 = sig[b1, z]
                c2 = tau[z, b1]
                r1 = sig[a1, b2]
                r2 = tau[b2, a1]
                if l1 != r1 or l2 != r2 or l3 != c2:
                    out[0] = x
                    out[1] = y
                    out[2] = z
                    return out
    return out


def _braid_np(sig, tau):
    n = sig.shape[0]
    y = np.arange(n)[:, None]
    z = np.arange(n)[None, :]
    for x in range(n):
        y1 = sig[y, z]
        z1 = tau[z, y]
        l1 = sig[x, y1]
        y2 = tau[y1, x]
        l2 = sig[y2, z1]
        l3 = tau[z1, y2]
        a1 = sig[x, y]
        b1 = tau[y, x]
        b2 = sig[b1, z]
        c2 = tau[z, b1]
        r1 = sig[a1, b2]
        r2 = tau[b2, a1]
        bad = (l1 != r1) | (l2 != r2) | (l3 != c2)
        if bad.any():
            yy, zz = np.argwhere(bad)[0]
            return np.array([x, yy, zz])
    return np.full(3, -1)


def braid_witness(sig: np.ndarray, tau: np.ndarray, backend=None):
    """First ``(x, y, z)`` where the braid relation fails, or ``None``."""
    sig = np.ascontiguousarray(sig, dtype=np.int64)
    tau = np.ascontiguousarray(tau, dtype=np.int64)
    w = _braid_loop(sig, tau) if _pick(backend) == "numba" else _braid_np(sig, tau)
    return _as_triple(w)


# ---------------------------------------------------------------- holomorph closure

@_jit
def _closure_loop(gens, add, apply_, compose, n_aut, id_aut, limit):
    total = add.shape[0] * n_aut
    seen = np.zeros(total, dtype=np.bool_)
    queue = np.empty(limit + 1, dtype=np.int64)
    queue[0] = id_aut
    seen[id_aut] = True
    count = 1
    head = 0
    while head < count:
        x = queue[head]
        head += 1
        xa = x // n_aut
        xf = x % n_aut
        for k in range(gens.shape[0]):
            g = gens[k]
            y = add[xa, apply_[xf, g // n_aut]] * n_aut + compose[xf, g % n_aut]
            if not seen[y]:
                seen[y] = True
                queue[count] = y
                count += 1
                if count > limit:
                    return np.sort(queue[:count]), True
    return np.sort(queue[:count]), False


def _closure_np(gens, add, apply_, compose, n_aut, id_aut, limit):
    total = add.shape[0] * n_aut
    seen = np.zeros(total, dtype=bool)
    seen[id_aut] = True
    count = 1
    frontier = np.array([id_aut], dtype=np.int64)
    ga, gf = np.divmod(gens, n_aut)
    while frontier.size:
        fa, ff = np.divmod(frontier, n_aut)
        prod = add[fa[:, None], apply_[ff[:, None], ga[None, :]]] * n_aut + compose[ff[:, None], gf[None, :]]
        new = np.unique(prod[~seen[prod]])
        seen[new] = True
        count += new.size
        if count > limit:
            return np.nonzero(seen)[0], True
        frontier = new
    return np.nonzero(seen)[0], False


def closure(gens, add, apply_, compose, n_aut: int, id_aut: int, limit=None, backend=None):
    """Sorted holomorph indices of the subgroup generated by ``gens``.

    Returns ``(elements, overflow)``; with ``overflow`` set the search stopped
    after exceeding ``limit`` elements and ``elements`` is partial.
    """
    total = add.shape[0] * n_aut
    limit = total if limit is None else min(int(limit), total)
    gens = np.ascontiguousarray(np.asarray(gens, dtype=np.int64).ravel())
    args = (gens, np.ascontiguousarray(add, dtype=np.int64), np.ascontiguousarray(apply_, dtype=np.int64),
            np.ascontiguousarray(compose, dtype=np.int64), int(n_aut), int(id_aut), limit)
    if _pick(backend) == "numba":
        elems, over = _closure_loop(*args)
    else:
        elems, over = _closure_np(*args)
    return elems, bool(over)


# ---------------------------------------------------------------- element orders

@_jit
def _orders_loop(add, apply_, compose, n_aut, id_aut, cap):
    total = add.shape[0] * n_aut
    out = np.zeros(total, dtype=np.int64)
    for h in range(total):
        ha = h // n_aut
        hf = h % n_aut
        y = h
        k = 1
        while y != id_aut and k <= cap:
            y = add[y // n_aut, apply_[y % n_aut, ha]] * n_aut + compose[y % n_aut, hf]
            k += 1
        out[h] = k if k <= cap else 0
    return out


def _orders_np(add, apply_, compose, n_aut, id_aut, cap):
    total = add.shape[0] * n_aut
    h = np.arange(total)
    ha, hf = np.divmod(h, n_aut)
    out = np.zeros(total, dtype=np.int64)
    y = h.copy()
    for k in range(1, cap + 1):
        hit = (y == id_aut) & (out == 0)
        out[hit] = k
        if (out > 0).all():
            break
        ya, yf = np.divmod(y, n_aut)
        y = add[ya, apply_[yf, ha]] * n_aut + compose[yf, hf]
    return out


def element_orders(add, apply_, compose, n_aut: int, id_aut: int, cap=None, backend=None):
    """Order of every holomorph element (0 where it exceeds ``cap``)."""
    total = add.shape[0] * n_aut
    cap = total if cap is None else int(cap)
    args = (np.ascontiguousarray(add, dtype=np.int64), np.ascontiguousarray(apply_, dtype=np.int64),
            np.ascontiguousarray(compose, dtype=np.int64), int(n_aut), int(id_aut), cap)
    return _orders_loop(*args) if _pick(backend) == "numba" else _orders_np(*args)


# ---------------------------------------------------------------- isomorphism extension

@_jit
def _extend_loop(order, parent, via, images, e1, e2, add1, circ1, add2, circ2):
    n = add1.shape[0]
    phi = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=np.bool_)
    phi[e1] = e2
    used[e2] = True
    for k in range(order.shape[0]):
        e = order[k]
        y = add2[phi[parent[e]], images[via[e]]]
        if used[y]:
            return phi, False
        used[y] = True
        phi[e] = y
    for x in range(n):
        px = phi[x]
        for y in range(n):
            if phi[add1[x, y]] != add2[px, phi[y]]:
                return phi, False
            if phi[circ1[x, y]] != circ2[px, phi[y]]:
                return phi, False
    return phi, True


def _extend_np(order, parent, via, images, e1, e2, add1, circ1, add2, circ2):
    n = add1.shape[0]
    phi = np.full(n, -1, dtype=np.int64)
    phi[e1] = e2
    for e in order:
        phi[e] = add2[phi[parent[e]], images[via[e]]]
    if np.unique(phi).size != n:
        return phi, False
    ok = np.array_equal(phi[add1], add2[phi[:, None], phi[None, :]]) and np.array_equal(
        phi[circ1], circ2[phi[:, None], phi[None, :]]
    )
    return phi, ok


def extend_isomorphism(order, parent, via, images, e1, e2, add1, circ1, add2, circ2, backend=None):
    """Extend generator images along a spanning tree of ``(B1, +)`` and test the
    result for being a bijection respecting both operations."""
    args = [np.ascontiguousarray(a, dtype=np.int64) for a in (order, parent, via, images)]
    args += [int(e1), int(e2)]
    args += [np.ascontiguousarray(a, dtype=np.int64) for a in (add1, circ1, add2, circ2)]
    if _pick(backend) == "numba":
        phi, ok = _extend_loop(*args)
    else:
        phi, ok = _extend_np(*args)
    return phi, bool(ok)
