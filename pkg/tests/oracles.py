"""Independent reference computations used by the test-suite.

Nothing here imports the simplex code. LPs are solved by brute-force
vertex enumeration; 2-D frontiers are classified by direct dominance
checks on normalised points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

FEAS = 1e-9


@dataclass
class OracleResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: float | None = None
    x: np.ndarray | None = None


def _vertices(H: np.ndarray, h: np.ndarray, rel: list[str], d: int, fixed: int = 0) -> np.ndarray:
    """All points where ``d`` linearly independent rows of ``H z = h`` hold with equality
    and every row satisfies its relation. Rows ``[0, fixed)`` are always active."""
    K = H.shape[0]
    free_rows = range(fixed, K)
    need = d - fixed
    if need < 0 or need > K - fixed:
        return np.zeros((0, d))
    combos = np.array([tuple(range(fixed)) + c for c in itertools.combinations(free_rows, need)], dtype=int)
    if combos.size == 0:
        return np.zeros((0, d))
    M = H[combos]
    rhs = h[combos]
    det = np.linalg.det(M)
    ok = np.abs(det) > 1e-9
    if not ok.any():
        return np.zeros((0, d))
    Z = np.linalg.solve(M[ok], rhs[ok][..., None])[..., 0]
    lhs = Z @ H.T
    scale = 1.0 + np.abs(h)
    good = np.ones(Z.shape[0], dtype=bool)
    for i, r in enumerate(rel):
        if r == "<=":
            good &= lhs[:, i] <= h[i] + FEAS * scale[i]
        elif r == ">=":
            good &= lhs[:, i] >= h[i] - FEAS * scale[i]
        else:
            good &= np.abs(lhs[:, i] - h[i]) <= FEAS * scale[i]
    return Z[good]


def lp_oracle(c, A, relations, b, sense="minimize", free=None) -> OracleResult:
    """Solve a small LP by enumerating basic feasible solutions.

    Free variables are split so the feasible set is pointed: it is empty,
    or it has a vertex. Unboundedness is decided by enumerating the
    extreme rays of the recession cone (vertices of the cone cut by
    ``sum(d) = 1``).
    """
    c = np.asarray(c, float)
    A = np.asarray(A, float).reshape(-1, c.size)
    b = np.asarray(b, float)
    n = c.size
    free = np.zeros(n, bool) if free is None else np.asarray(free, bool)
    rel = [getattr(r, "value", r) for r in relations]
    # z = [x, w] with x_j = z_j - w_j for free j
    fidx = np.flatnonzero(free)
    G = np.hstack([A, -A[:, fidx]])
    cz = np.concatenate([c, -c[fidx]])
    if sense in ("maximize", "max") or getattr(sense, "value", None) == "maximize":
        cz = -cz
    d = G.shape[1]
    H = np.vstack([G, np.eye(d)])
    h = np.concatenate([b, np.zeros(d)])
    rels = rel + [">="] * d

    V = _vertices(H, h, rels, d)
    if V.shape[0] == 0:
        return OracleResult("infeasible")

    # recession directions: G dz rel 0, dz >= 0, sum dz = 1
    Hc = np.vstack([np.ones((1, d)), G, np.eye(d)])
    hc = np.concatenate([[1.0], np.zeros(G.shape[0] + d)])
    R = _vertices(Hc, hc, ["="] + rels, d, fixed=1)
    if R.shape[0] and np.min(R @ cz) < -1e-9:
        return OracleResult("unbounded")

    vals = V @ cz
    k = int(np.argmin(vals))
    z = V[k]
    x = z[:n].copy()
    x[fidx] -= z[n:]
    value = float(c @ x)
    return OracleResult("optimal", value, x)


# DEA programs written out independently of the library's builders.

def envelopment_oracle(X, Y, o, bcc=False) -> OracleResult:
    X = np.asarray(X, float)
    Y = np.asarray(Y, float)
    m, n = X.shape
    s = Y.shape[0]
    c = np.r_[1.0, np.zeros(n)]
    rows, rels, rhs = [], [], []
    for i in range(m):
        rows.append(np.r_[X[i, o], -X[i]])
        rels.append(">=")
        rhs.append(0.0)
    for r in range(s):
        rows.append(np.r_[0.0, Y[r]])
        rels.append(">=")
        rhs.append(Y[r, o])
    if bcc:
        rows.append(np.r_[0.0, np.ones(n)])
        rels.append("=")
        rhs.append(1.0)
    free = np.r_[True, np.zeros(n, bool)]
    return lp_oracle(c, np.array(rows), rels, rhs, "minimize", free)


def max_slack_oracle(X, Y, o, theta, bcc=False) -> OracleResult:
    X = np.asarray(X, float)
    Y = np.asarray(Y, float)
    m, n = X.shape
    s = Y.shape[0]
    # variables: lambda (n), s_minus (m), s_plus (s)
    c = np.r_[np.zeros(n), np.ones(m + s)]
    rows, rels, rhs = [], [], []
    for i in range(m):
        e = np.zeros(m)
        e[i] = 1.0
        rows.append(np.r_[X[i], e, np.zeros(s)])
        rels.append("=")
        rhs.append(theta * X[i, o])
    for r in range(s):
        e = np.zeros(s)
        e[r] = -1.0
        rows.append(np.r_[Y[r], np.zeros(m), e])
        rels.append("=")
        rhs.append(Y[r, o])
    if bcc:
        rows.append(np.r_[np.ones(n), np.zeros(m + s)])
        rels.append("=")
        rhs.append(1.0)
    return lp_oracle(c, np.array(rows), rels, rhs, "maximize")


def multiplier_oracle(X, Y, o, bcc=False) -> OracleResult:
    X = np.asarray(X, float)
    Y = np.asarray(Y, float)
    m, n = X.shape
    s = Y.shape[0]
    extra = 1 if bcc else 0
    c = np.r_[np.zeros(m), Y[:, o], -np.ones(extra)]
    rows = [np.r_[X[:, o], np.zeros(s + extra)]]
    rels = ["="]
    rhs = [1.0]
    for j in range(n):
        rows.append(np.r_[-X[:, j], Y[:, j], -np.ones(extra)])
        rels.append("<=")
        rhs.append(0.0)
    free = np.r_[np.zeros(m + s, bool), np.ones(extra, bool)]
    return lp_oracle(c, np.array(rows), rels, rhs, "maximize", free)


def u0_range_oracle(X, Y, o) -> tuple[float, float]:
    """Min and max of u0 over all optimal solutions of the BCC multiplier
    program for a DMU with BCC score 1."""
    X = np.asarray(X, float)
    Y = np.asarray(Y, float)
    m, n = X.shape
    s = Y.shape[0]
    rows = [np.r_[X[:, o], np.zeros(s), 0.0], np.r_[np.zeros(m), Y[:, o], -1.0]]
    rels = ["=", "="]
    rhs = [1.0, 1.0]
    for j in range(n):
        rows.append(np.r_[-X[:, j], Y[:, j], -1.0])
        rels.append("<=")
        rhs.append(0.0)
    c = np.r_[np.zeros(m + s), 1.0]
    free = np.r_[np.zeros(m + s, bool), True]
    lo = lp_oracle(c, np.array(rows), rels, rhs, "minimize", free)
    hi = lp_oracle(c, np.array(rows), rels, rhs, "maximize", free)
    lo_v = -np.inf if lo.status == "unbounded" else lo.value
    hi_v = np.inf if hi.status == "unbounded" else hi.value
    return lo_v, hi_v


def rts_oracle(X, Y, o) -> str:
    """Returns to scale from the range of optimal u0 (BCC-efficient DMU assumed)."""
    lo, hi = u0_range_oracle(X, Y, o)
    if lo > 1e-9:
        return "DRS"
    if hi < -1e-9:
        return "IRS"
    return "CRS"


# 2-D frontier by dominance over convex combinations of normalised points.

def _segment_dominates(p, q, target, strict, eps=1e-9):
    """Is some point on segment [p, q] >= target (strictly in every coordinate
    if ``strict``, else componentwise >= and not equal to target)?"""
    p = np.asarray(p, float)
    q = np.asarray(q, float)
    t = np.asarray(target, float)
    # f_k(a) = p_k + a (q_k - p_k) - t_k, for a in [0, 1]
    base = p - t
    slope = q - p
    if strict:
        cands = [0.0, 1.0]
        if abs(slope[0] - slope[1]) > 1e-15:
            a = (base[1] - base[0]) / (slope[0] - slope[1])
            if 0.0 <= a <= 1.0:
                cands.append(a)
        return max(min(base + a * slope) for a in cands) > eps
    lo, hi = 0.0, 1.0
    for k in range(2):
        if abs(slope[k]) <= 1e-15:
            if base[k] < -eps:
                return False
        elif slope[k] > 0:
            lo = max(lo, -base[k] / slope[k])
        else:
            hi = min(hi, -base[k] / slope[k])
    if lo > hi + 1e-12:
        return False
    for a in (lo, hi, 0.5 * (lo + hi)):
        a = min(max(a, 0.0), 1.0)
        point = base + a * slope
        if np.all(point >= -eps) and np.max(point) > eps:
            return True
    return False


def dominance_frontier(points: np.ndarray, maximize: bool) -> list[str]:
    """Classify each row of ``points`` as efficient / weak / enveloped."""
    P = np.asarray(points, float)
    if not maximize:
        P = -P
    out = []
    n = P.shape[0]
    for o in range(n):
        pairs = list(itertools.combinations_with_replacement(range(n), 2))
        if any(_segment_dominates(P[i], P[j], P[o], strict=True) for i, j in pairs):
            out.append("enveloped")
        elif any(_segment_dominates(P[i], P[j], P[o], strict=False) for i, j in pairs):
            out.append("weakly_efficient")
        else:
            out.append("efficient")
    return out
