"""LP-backed queries on projection-form polyhedra.

Membership is decided by minimizing the max-norm deviation between the
requested point and the image of a feasible preimage point, so the
tolerance is an honest distance bound rather than an artifact of the
solver's internal feasibility cutoff.
"""

import numpy as np

from . import lp
from .errors import EmptySetError
from .reps import INF

TOL_FEAS = 1e-7
TOL_SUP = 1e-6


def _lp_over(p, c):
    """An LpProblem minimizing c.x over p's preimage."""
    return lp.LpProblem(c=c, B=p.B, a=p.a, b=p.b, l=p.l, u=p.u)


def feasible_point(p):
    """Some point of p, or None when p is empty."""
    s = lp.solve_lp(_lp_over(p, np.zeros(p.n)))
    if s.status == lp.INFEASIBLE:
        return None
    return p.M @ s.x


def is_empty(p):
    return feasible_point(p) is None


def contains_point(p, y, tol=TOL_FEAS):
    """Whether y lies in p, up to max-norm distance tol.

    Solved as min t st -t <= Mx - y <= t over p's preimage system.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if y.shape[0] != p.q:
        return False
    n, q, m = p.n, p.q, p.m
    # variables (x, t)
    c = np.zeros(n + 1)
    c[n] = 1.0
    ones = np.ones((q, 1))
    top = np.hstack([p.M, -ones])    # Mx - t <= y
    bot = np.hstack([p.M, ones])     # Mx + t >= y
    B = np.vstack([top, bot])
    a = np.concatenate([np.full(q, -INF), y])
    b = np.concatenate([y, np.full(q, INF)])
    if m:
        B = np.vstack([B, np.hstack([p.B, np.zeros((m, 1))])])
        a = np.concatenate([a, p.row_lower()])
        b = np.concatenate([b, p.row_upper()])
    l = np.append(p.var_lower(), 0.0)
    u = np.append(p.var_upper(), INF)
    s = lp.solve_lp(lp.LpProblem(c=c, B=B, a=a, b=b, l=l, u=u))
    if s.status != lp.OPTIMAL:
        return False
    return s.objective <= tol


def support_function(p, w):
    """sup {w.y : y in p}; +inf when unbounded in direction w.

    Raises EmptySetError on an empty operand.
    """
    w = np.atleast_1d(np.asarray(w, dtype=float))
    s = lp.solve_lp(_lp_over(p, -(p.M.T @ w)))
    if s.status == lp.INFEASIBLE:
        raise EmptySetError("support function of the empty set")
    if s.status == lp.UNBOUNDED:
        return INF
    return -s.objective


def maximizer(p, w):
    """A point of p attaining the support value in direction w, or None
    when the direction is unbounded."""
    w = np.atleast_1d(np.asarray(w, dtype=float))
    s = lp.solve_lp(_lp_over(p, -(p.M.T @ w)))
    if s.status == lp.INFEASIBLE:
        raise EmptySetError("support function of the empty set")
    if s.status == lp.UNBOUNDED:
        return None
    return p.M @ s.x


def image_range(p, i):
    """(min, max) of coordinate i over p; sides may be infinite.

    Raises EmptySetError on an empty operand.
    """
    c = p.M[i]
    smin = lp.solve_lp(_lp_over(p, c))
    if smin.status == lp.INFEASIBLE:
        raise EmptySetError("coordinate range of the empty set")
    lo = -INF if smin.status == lp.UNBOUNDED else smin.objective
    smax = lp.solve_lp(_lp_over(p, -c))
    hi = INF if smax.status == lp.UNBOUNDED else -smax.objective
    return lo, hi
