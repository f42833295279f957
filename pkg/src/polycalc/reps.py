"""Representation types for convex polyhedra.

A polyhedron in R^q is stored in one of three interconvertible forms:

* projection form (PRep): the image {M x : a <= B x <= b, l <= x <= u}
  of a row-and-box constrained preimage under a linear map M.
* halfspace form (HRep): two-sided row constraints a <= B y <= b plus
  variable bounds l <= y <= u, no map.
* generator form (VRep): conv(points) + cone(directions) + span(lines).

Bounds use IEEE infinities (lower bounds may be -inf, upper bounds
+inf).  Absent components are stored as None and serialize as null;
an absent B means no row constraints, absent l/u mean free variables.
Instances are frozen and treated as immutable values: operations
return new objects and never write into an operand's arrays.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInputError

INF = float("inf")


def _as_matrix(x):
    if x is None:
        return None
    m = np.array(x, dtype=float)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else m.reshape(0, 0)
    return m


def _as_vector(x):
    if x is None:
        return None
    return np.atleast_1d(np.array(x, dtype=float))


@dataclass(frozen=True)
class PRep:
    """Projection representation (M, B, a, b, l, u).

    The set is {M x : a <= B x <= b, l <= x <= u} with x ranging over
    R^n, M of shape (q, n) and B of shape (m, n).  Any of B, a, b, l, u
    may be None: absent rows mean no row constraints, absent bound
    vectors mean the corresponding side is infinite.
    """

    M: np.ndarray
    B: np.ndarray = None
    a: np.ndarray = None
    b: np.ndarray = None
    l: np.ndarray = None
    u: np.ndarray = None

    def __post_init__(self):
        object.__setattr__(self, "M", _as_matrix(self.M))
        object.__setattr__(self, "B", _as_matrix(self.B))
        for name in ("a", "b", "l", "u"):
            object.__setattr__(self, name, _as_vector(getattr(self, name)))

    @property
    def q(self):
        return self.M.shape[0]

    @property
    def n(self):
        return self.M.shape[1]

    @property
    def m(self):
        return 0 if self.B is None else self.B.shape[0]

    def row_lower(self):
        return np.full(self.m, -INF) if self.a is None else self.a

    def row_upper(self):
        return np.full(self.m, INF) if self.b is None else self.b

    def var_lower(self):
        return np.full(self.n, -INF) if self.l is None else self.l

    def var_upper(self):
        return np.full(self.n, INF) if self.u is None else self.u


@dataclass(frozen=True)
class HRep:
    """Halfspace representation a <= B y <= b, l <= y <= u."""

    B: np.ndarray = None
    a: np.ndarray = None
    b: np.ndarray = None
    l: np.ndarray = None
    u: np.ndarray = None
    dim: int = None

    def __post_init__(self):
        object.__setattr__(self, "B", _as_matrix(self.B))
        for name in ("a", "b", "l", "u"):
            object.__setattr__(self, name, _as_vector(getattr(self, name)))
        if self.dim is None:
            if self.B is not None:
                object.__setattr__(self, "dim", self.B.shape[1])
            elif self.l is not None:
                object.__setattr__(self, "dim", self.l.shape[0])
            elif self.u is not None:
                object.__setattr__(self, "dim", self.u.shape[0])
            else:
                raise ValueError("HRep needs B, l, u or an explicit dim")

    @property
    def m(self):
        return 0 if self.B is None else self.B.shape[0]

    def row_lower(self):
        return np.full(self.m, -INF) if self.a is None else self.a

    def row_upper(self):
        return np.full(self.m, INF) if self.b is None else self.b

    def var_lower(self):
        return np.full(self.dim, -INF) if self.l is None else self.l

    def var_upper(self):
        return np.full(self.dim, INF) if self.u is None else self.u


@dataclass(frozen=True)
class VRep:
    """Generator representation: points V, directions D, line vectors L.

    Vectors are stored as rows.  An empty polyhedron has no points; a
    VRep with points but no directions or lines is a polytope.
    """

    V: np.ndarray = None
    D: np.ndarray = None
    L: np.ndarray = None
    dim: int = None

    def __post_init__(self):
        for name in ("V", "D", "L"):
            object.__setattr__(self, name, _as_matrix(getattr(self, name)))
        d = self.dim
        for mat in (self.V, self.D, self.L):
            if mat is not None and mat.shape[1] > 0:
                d = mat.shape[1] if d is None else d
        if d is None:
            raise ValueError("VRep needs at least one generator or an explicit dim")
        object.__setattr__(self, "dim", int(d))
        for name in ("V", "D", "L"):
            mat = getattr(self, name)
            if mat is None or mat.size == 0:
                object.__setattr__(self, name, np.zeros((0, self.dim)))

    @property
    def npoints(self):
        return self.V.shape[0]

    @property
    def ndirs(self):
        return self.D.shape[0]

    @property
    def nlines(self):
        return self.L.shape[0]

    def is_empty(self):
        return self.npoints == 0


@dataclass(frozen=True)
class PolyhedralFunction:
    """A polyhedral convex function given by its epigraph.

    ``epi`` is a PRep in R^(n+1) whose last image coordinate is the
    function value; ``arity`` is n.
    """

    epi: PRep
    arity: int = None

    def __post_init__(self):
        if self.arity is None:
            object.__setattr__(self, "arity", self.epi.q - 1)


def validate(rep):
    """Return a list of human-readable invariant violations (empty if ok)."""
    out = []
    if isinstance(rep, PRep):
        _validate_system(out, rep.B, rep.a, rep.b, rep.l, rep.u, rep.n)
        if rep.M.ndim != 2:
            out.append("M must be a matrix")
        if np.isnan(rep.M).any():
            out.append("M contains NaN")
        if rep.B is not None and rep.B.shape[1] != rep.n:
            out.append(
                "B has %d columns, expected %d" % (rep.B.shape[1], rep.n)
            )
    elif isinstance(rep, HRep):
        _validate_system(out, rep.B, rep.a, rep.b, rep.l, rep.u, rep.dim)
    elif isinstance(rep, VRep):
        for name in ("V", "D", "L"):
            mat = getattr(rep, name)
            if mat.shape[1] != rep.dim:
                out.append("%s width %d != dim %d" % (name, mat.shape[1], rep.dim))
            if np.isnan(mat).any() or np.isinf(mat).any():
                out.append("%s contains NaN or inf" % name)
        for name in ("D", "L"):
            mat = getattr(rep, name)
            for i in range(mat.shape[0]):
                if not np.any(mat[i]):
                    out.append("zero vector at %s index %d" % (name, i))
        if rep.npoints == 0 and rep.ndirs + rep.nlines > 0:
            out.append("directions or lines without any point")
    elif isinstance(rep, PolyhedralFunction):
        if rep.epi.q != rep.arity + 1:
            out.append(
                "epigraph lives in R^%d, expected R^%d"
                % (rep.epi.q, rep.arity + 1)
            )
        out.extend("epi: " + v for v in validate(rep.epi))
    else:
        out.append("unknown representation type %r" % type(rep).__name__)
    return out


def _validate_system(out, B, a, b, l, u, n):
    m = 0 if B is None else B.shape[0]
    if B is not None:
        if np.isnan(B).any() or np.isinf(B).any():
            out.append("B contains NaN or inf")
    for name, vec, length in (("a", a, m), ("b", b, m), ("l", l, n), ("u", u, n)):
        if vec is None:
            continue
        if vec.shape[0] != length:
            out.append("%s has length %d, expected %d" % (name, vec.shape[0], length))
        if np.isnan(vec).any():
            out.append("%s contains NaN" % name)
    for name, vec in (("a", a), ("l", l)):
        if vec is not None and np.any(vec == INF):
            out.append("+inf entry in lower bound %s" % name)
    for name, vec in (("b", b), ("u", u)):
        if vec is not None and np.any(vec == -INF):
            out.append("-inf entry in upper bound %s" % name)


def hrep_to_prep(h):
    """Lift an HRep to a PRep with identity map."""
    return PRep(np.eye(h.dim), h.B, h.a, h.b, h.l, h.u)


def vrep_to_prep(v):
    """Convert generators to a PRep: columns are the generators, one
    convexity row ties the point weights to 1, direction weights are
    nonnegative and line weights free."""
    if v.npoints == 0:
        raise EmptyInputError("cannot build a projection form without points")
    r, s, t = v.npoints, v.ndirs, v.nlines
    M = np.concatenate([v.V, v.D, v.L], axis=0).T
    B = np.concatenate([np.ones(r), np.zeros(s + t)]).reshape(1, -1)
    a = np.array([1.0])
    b = np.array([1.0])
    l = np.concatenate([np.zeros(r + s), np.full(t, -INF)])
    return PRep(M, B, a, b, l, None)


def to_prep(rep):
    """Coerce any set representation to a PRep."""
    if isinstance(rep, PRep):
        return rep
    if isinstance(rep, HRep):
        return hrep_to_prep(rep)
    if isinstance(rep, VRep):
        return vrep_to_prep(rep)
    raise TypeError("not a set representation: %r" % type(rep).__name__)


def affine_image(p, C, d=None):
    """The set {C y + d : y in p}, by rewriting the map in place.

    A fresh preimage coordinate pinned to 1 carries the offset, so the
    operand's arrays are reused untouched.
    """
    C = np.atleast_2d(np.asarray(C, dtype=float))
    if C.shape[1] != p.q:
        raise ValueError("map width %d != set dimension %d" % (C.shape[1], p.q))
    d = np.zeros(C.shape[0]) if d is None else np.asarray(d, dtype=float)
    M = np.hstack([C @ p.M, d.reshape(-1, 1)])
    B = None if p.B is None else np.hstack([p.B, np.zeros((p.m, 1))])
    l = np.append(p.var_lower(), 1.0)
    u = np.append(p.var_upper(), 1.0)
    return PRep(M, B, p.a, p.b, l, u)


def translate(p, c):
    """The set p + c."""
    c = np.asarray(c, dtype=float)
    return affine_image(p, np.eye(p.q), c)


def scale(p, t):
    """The set t * p for a scalar t."""
    return affine_image(p, float(t) * np.eye(p.q))


def unit_ball_1(q):
    """Unit 1-norm ball as a PRep: image of the simplex of +-e_i weights."""
    M = np.hstack([np.eye(q), -np.eye(q)])
    B = np.ones((1, 2 * q))
    return PRep(M, B, [1.0], [1.0], np.zeros(2 * q), None)


def unit_ball_inf(q):
    """Unit max-norm ball as a PRep: identity map over the [-1,1] box."""
    return PRep(np.eye(q), None, None, None, -np.ones(q), np.ones(q))


def box_set(lo, hi):
    """Axis-aligned box as a PRep."""
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    return PRep(np.eye(lo.shape[0]), None, None, None, lo, hi)


def single_point(y):
    """The singleton {y} as a PRep."""
    return vrep_to_prep(VRep(V=np.atleast_2d(np.asarray(y, dtype=float))))
