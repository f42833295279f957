"""Calculus of polyhedral convex functions via their epigraphs.

A function f on R^n is carried as a PolyhedralFunction wrapping a PRep
in R^(n+1) whose last image coordinate is the function value.  Every
operation below rearranges epigraph data and hands evaluation to a
single LP, so the results are exact up to LP tolerances and no
vertex or facet enumeration is ever needed.

Properness caveats: operands are assumed proper (never -inf, finite
somewhere).  Evaluation reports +inf outside the domain and raises
NotProperError when it detects an epigraph unbounded below.
"""

import numpy as np

from . import lp
from .errors import (
    DimensionMismatchError, EmptyDomainError, EmptyInputError,
    NotAGaugeBodyError, NotProperError, PointNotInDomainError,
)
from .queries import contains_point, is_empty, support_function
from .reps import (
    INF, PolyhedralFunction, PRep, affine_image, cartesian_product_dims,
    single_point, translate,
)
from .setcalc import (
    cartesian_product, cl_cone, cl_conv_union, intersection, minkowski_sum,
    normal_cone, polar_cone,
)

__all__ = [
    "fn_eval", "fn_max", "fn_sum", "fn_lenv", "fn_infconv",
    "fn_conjugate", "fn_subdiff", "fn_translate", "gauge_from_polytope",
]


def _check_arity(fns):
    n = fns[0].arity
    for f in fns[1:]:
        if f.arity != n:
            raise DimensionMismatchError(
                "functions take %d and %d arguments" % (n, f.arity)
            )
    return n


def fn_eval(fn, x):
    """f(x), +inf outside the domain.

    Minimizes the value coordinate over the epigraph slice above x;
    an unbounded slice means the function is improper there and raises
    NotProperError.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape[0] != fn.arity:
        raise DimensionMismatchError(
            "argument has %d coordinates, function takes %d"
            % (x.shape[0], fn.arity)
        )
    epi = fn.epi
    n = fn.arity
    # variables z (preimage); rows pin the first n image coords to x
    # and the objective is the last image coordinate
    top = epi.M[:n]
    B = top if epi.B is None else np.vstack([epi.B, top])
    a = np.concatenate([epi.row_lower(), x])
    b = np.concatenate([epi.row_upper(), x])
    s = lp.solve_lp(lp.LpProblem(c=epi.M[n], B=B, a=a, b=b,
                                 l=epi.l, u=epi.u))
    if s.status == lp.INFEASIBLE:
        return INF
    if s.status == lp.UNBOUNDED:
        raise NotProperError("value unbounded below at the query point")
    return s.objective


def fn_max(*fns):
    """Pointwise maximum: epigraphs intersect."""
    if not fns:
        raise EmptyInputError("maximum of no functions")
    n = _check_arity(fns)
    return PolyhedralFunction(intersection(*[f.epi for f in fns]), n)


def fn_lenv(*fns):
    """Closed convex hull of the pointwise minimum: epigraph hulls."""
    if not fns:
        raise EmptyInputError("lower envelope of no functions")
    n = _check_arity(fns)
    epi = fns[0].epi
    for f in fns[1:]:
        epi = cl_conv_union(epi, f.epi)
    return PolyhedralFunction(epi, n)


def fn_infconv(*fns):
    """Infimal convolution: epigraphs add."""
    if not fns:
        raise EmptyInputError("infimal convolution of no functions")
    n = _check_arity(fns)
    return PolyhedralFunction(minkowski_sum(*[f.epi for f in fns]), n)


def fn_sum(*fns):
    """Pointwise sum.

    Stacks the epigraphs side by side, couples every copy of the
    argument coordinates to the first, then maps to (shared argument,
    total value).
    """
    if not fns:
        raise EmptyInputError("sum of no functions")
    n = _check_arity(fns)
    if len(fns) == 1:
        return fns[0]
    prod = fns[0].epi
    for f in fns[1:]:
        prod = cartesian_product(prod, f.epi)
    k = len(fns)
    # image layout of prod: blocks of (x_i, r_i), one per operand
    starts = [i * (n + 1) for i in range(k)]
    couple = []
    for i in range(1, k):
        C = np.zeros((n, k * (n + 1)))
        C[:, starts[0]:starts[0] + n] = np.eye(n)
        C[:, starts[i]:starts[i] + n] = -np.eye(n)
        couple.append(C)
    C = np.vstack(couple)
    rowsB = C @ prod.M
    zeros = np.zeros(rowsB.shape[0])
    B = rowsB if prod.B is None else np.vstack([prod.B, rowsB])
    a = zeros if prod.a is None else np.concatenate([prod.a, zeros])
    b = zeros if prod.b is None else np.concatenate([prod.b, zeros])
    coupled = PRep(prod.M, B, a, b, prod.l, prod.u)
    sel = np.zeros((n + 1, k * (n + 1)))
    sel[:n, starts[0]:starts[0] + n] = np.eye(n)
    for s in starts:
        sel[n, s + n] = 1.0
    return PolyhedralFunction(affine_image(coupled, sel), n)


def fn_conjugate(fn):
    """The convex conjugate f*(w) = sup_x (w.x - f(x)).

    Built without enumeration: (w, s) lies in epi f* exactly when the
    support of the epigraph in direction (w, -1) is at most s, and
    that set is the polar cone of epi f x {-1} sliced at -1 in the
    next-to-last slot.
    """
    n = fn.arity
    if is_empty(fn.epi):
        raise EmptyDomainError("conjugate of a function with empty domain")
    lifted = cartesian_product(fn.epi, single_point([-1.0]))
    cone = polar_cone(lifted)       # coords (w, t, s) in R^(n+2)
    d = n + 2
    lo = np.full(d, -INF)
    hi = np.full(d, INF)
    lo[n] = hi[n] = -1.0
    slab = PRep(np.eye(d), None, None, None, lo, hi)
    sliced = intersection(cone, slab)
    sel = np.zeros((n + 1, d))
    sel[:n, :n] = np.eye(n)
    sel[n, n + 1] = 1.0
    return PolyhedralFunction(affine_image(sliced, sel), n)


def fn_subdiff(fn, x):
    """The subdifferential of f at x, as a set in R^n.

    Subgradients w are the directions with (w, -1) normal to the
    epigraph at (x, f(x)).  Raises PointNotInDomainError when f(x) is
    +inf.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    val = fn_eval(fn, x)
    if val == INF:
        raise PointNotInDomainError("no subgradients outside the domain")
    ep = np.append(x, val)
    ncone = normal_cone(fn.epi, ep)     # coords (w, t) in R^(n+1)
    d = fn.arity + 1
    lo = np.full(d, -INF)
    hi = np.full(d, INF)
    lo[d - 1] = hi[d - 1] = -1.0
    slab = PRep(np.eye(d), None, None, None, lo, hi)
    sliced = intersection(ncone, slab)
    sel = np.hstack([np.eye(fn.arity), np.zeros((fn.arity, 1))])
    return affine_image(sliced, sel)


def fn_translate(fn, shift):
    """x -> f(x - shift), by translating the epigraph."""
    shift = np.atleast_1d(np.asarray(shift, dtype=float))
    if shift.shape[0] != fn.arity:
        raise DimensionMismatchError(
            "shift has %d coordinates, function takes %d"
            % (shift.shape[0], fn.arity)
        )
    moved = translate(fn.epi, np.append(shift, 0.0))
    return PolyhedralFunction(moved, fn.arity)


def gauge_from_polytope(g):
    """The gauge (Minkowski functional) of a polytope containing 0.

    The epigraph is the closed cone over g x {1}.  Raises
    NotAGaugeBodyError when 0 is not inside g or g is unbounded, since
    the cone construction needs both.
    """
    if not contains_point(g, np.zeros(g.q)):
        raise NotAGaugeBodyError("gauge body must contain the origin")
    for i in range(g.q):
        e = np.zeros(g.q)
        e[i] = 1.0
        if support_function(g, e) == INF or support_function(g, -e) == INF:
            raise NotAGaugeBodyError("gauge body must be bounded")
    lifted = cartesian_product(g, single_point([1.0]))
    return PolyhedralFunction(cl_cone(lifted), g.q)
