"""Calculus of polyhedra in projection form.

Sum, intersection, product and recession cone are pure data
rearrangements: no LP is solved and emptiness propagates lazily.  The
polar family (polar, polar_cone, cl_cone, cl_conv_union, normal_cone)
requires nonempty operands and checks that eagerly, since the polar of
an empty set is all of space and would otherwise appear silently.
"""

import numpy as np

from .errors import DimensionMismatchError, EmptySetError, PointNotInSetError
from .queries import contains_point, feasible_point, is_empty
from .reps import INF, PRep, translate

__all__ = [
    "minkowski_sum", "intersection", "cartesian_product", "recession_cone",
    "polar", "polar_cone", "cl_cone", "cl_conv_union", "normal_cone",
]


def _check_same_dim(ps):
    q = ps[0].q
    for p in ps[1:]:
        if p.q != q:
            raise DimensionMismatchError(
                "operands live in R^%d and R^%d" % (q, p.q)
            )
    return q


def _blockdiag_rows(ps):
    """Stack the row systems of several PReps block-diagonally."""
    ms = [p.m for p in ps]
    ns = [p.n for p in ps]
    total_m, total_n = sum(ms), sum(ns)
    B = np.zeros((total_m, total_n))
    r = c = 0
    for p in ps:
        if p.m:
            B[r:r + p.m, c:c + p.n] = p.B
        r += p.m
        c += p.n
    a = np.concatenate([p.row_lower() for p in ps]) if total_m else None
    b = np.concatenate([p.row_upper() for p in ps]) if total_m else None
    l = np.concatenate([p.var_lower() for p in ps])
    u = np.concatenate([p.var_upper() for p in ps])
    return (B if total_m else None), a, b, l, u


def minkowski_sum(*ps):
    """p1 + p2 + ...: images add, preimages stack independently."""
    if len(ps) == 1:
        return ps[0]
    _check_same_dim(ps)
    M = np.hstack([p.M for p in ps])
    B, a, b, l, u = _blockdiag_rows(ps)
    return PRep(M, B, a, b, l, u)


def intersection(*ps):
    """p1 cap p2 cap ...: stacked preimages coupled by equal images."""
    if len(ps) == 1:
        return ps[0]
    q = _check_same_dim(ps)
    B, a, b, l, u = _blockdiag_rows(ps)
    ns = [p.n for p in ps]
    total_n = sum(ns)
    coupling = []
    offset = ns[0]
    for p in ps[1:]:
        row = np.zeros((q, total_n))
        row[:, : ns[0]] = ps[0].M
        row[:, offset:offset + p.n] = -p.M
        coupling.append(row)
        offset += p.n
    C = np.vstack(coupling)
    zeros = np.zeros(C.shape[0])
    B = C if B is None else np.vstack([B, C])
    a = zeros if a is None else np.concatenate([a, zeros])
    b = zeros if b is None else np.concatenate([b, zeros])
    M = np.zeros((q, total_n))
    M[:, : ns[0]] = ps[0].M
    return PRep(M, B, a, b, l, u)


def cartesian_product(p1, p2):
    """p1 x p2 in R^(q1+q2)."""
    M = np.zeros((p1.q + p2.q, p1.n + p2.n))
    M[: p1.q, : p1.n] = p1.M
    M[p1.q:, p1.n:] = p2.M
    B, a, b, l, u = _blockdiag_rows([p1, p2])
    return PRep(M, B, a, b, l, u)


def _zero_scale(v):
    """0 * bound with the convention 0 * (+-inf) = +-inf."""
    return np.where(np.isfinite(v), 0.0, v)


def recession_cone(p):
    """The recession cone, by zero-scaling every finite bound in place."""
    a = None if p.a is None else _zero_scale(p.a)
    b = None if p.b is None else _zero_scale(p.b)
    l = None if p.l is None else _zero_scale(p.l)
    u = None if p.u is None else _zero_scale(p.u)
    return PRep(p.M, p.B, a, b, l, u)


def _polar_rows(p):
    """The shared constraint matrix of the polar constructions.

    Columns: one multiplier per finite row upper bound, per finite row
    lower bound, per finite variable upper bound, per finite variable
    lower bound (in that order), then the q image coordinates.  Rows:
    n stationarity rows plus one normalization row whose right side
    distinguishes polar (<= 1) from polar cone (<= 0).
    """
    n, q, m = p.n, p.q, p.m
    a, b = p.row_lower(), p.row_upper()
    l, u = p.var_lower(), p.var_upper()
    Bt = p.B.T if p.B is not None else np.zeros((n, 0))
    eye = np.eye(n)
    top = np.hstack([Bt, -Bt, eye, -eye, -p.M.T])
    bottom = np.concatenate([b, -a, u, -l, np.zeros(q)])
    big = np.vstack([top, bottom])
    keep = np.isfinite(bottom)
    keep[2 * m + 2 * n:] = True  # image columns always survive
    big = big[:, keep]
    k = int(keep[: 2 * m + 2 * n].sum())
    return big, k


def polar(p):
    """The polar set {w : w.y <= 1 for all y in p}."""
    if is_empty(p):
        raise EmptySetError("polar of the empty set")
    n, q = p.n, p.q
    big, k = _polar_rows(p)
    M = np.hstack([np.zeros((q, k)), np.eye(q)])
    a = np.concatenate([np.zeros(n), [-INF]])
    b = np.concatenate([np.zeros(n), [1.0]])
    l = np.concatenate([np.zeros(k), np.full(q, -INF)])
    return PRep(M, big, a, b, l, None)


def polar_cone(p):
    """The polar cone {w : w.y <= 0 for all y in p}."""
    if is_empty(p):
        raise EmptySetError("polar cone of the empty set")
    n, q = p.n, p.q
    big, k = _polar_rows(p)
    M = np.hstack([np.zeros((q, k)), np.eye(q)])
    a = np.concatenate([np.zeros(n), [-INF]])
    b = np.zeros(n + 1)
    l = np.concatenate([np.zeros(k), np.full(q, -INF)])
    return PRep(M, big, a, b, l, None)


def cl_cone(p):
    """Closure of the cone generated by p (polar cone applied twice)."""
    return polar_cone(polar_cone(p))


def cl_conv_union(p1, p2):
    """Closed convex hull of the union.

    Translates both operands so the first contains the origin, then
    dualizes: the hull is the polar of the intersection of polars.
    """
    _check_same_dim([p1, p2])
    anchor = feasible_point(p1)
    if anchor is None or is_empty(p2):
        raise EmptySetError("hull of a union with an empty operand")
    t1 = translate(p1, -anchor)
    t2 = translate(p2, -anchor)
    hull = polar(intersection(polar(t1), polar(t2)))
    return translate(hull, anchor)


def normal_cone(p, x):
    """Normal cone of p at the member point x."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if not contains_point(p, x):
        raise PointNotInSetError("anchor point is not in the set")
    return polar_cone(translate(p, -x))
