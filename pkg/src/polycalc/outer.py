"""Incremental outer approximation of a polyhedron by halfspaces.

The store keeps halfspaces of the form w.y >= gamma together with the
current vertex set of their intersection and, per vertex, the bitmask
of halfspaces it is tight on.  Insertion is double description in one
step: vertices strictly inside stay, vertices strictly outside go, and
every crossing edge between the two groups contributes one new vertex.
An edge is certified by the rank of the common tight normals, with a
cheap path for the nondegenerate case (two simple vertices sharing
exactly dim-1 tight rows).

Instances are immutable; ``insert_halfspace`` returns a fresh store
sharing no mutable state, and kept vertices are carried over
bitwise-unchanged, which downstream bookkeeping relies on.

Halfspaces inserted as ``artificial`` (the initial bounding box) are
flagged so callers can tell genuine geometry from box truncation.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import DimensionTooLargeError, RankDegeneracyError
from .reps import HRep, VRep

TOL_DD = 1e-8
MERGE_TOL = 1e-7
MAX_DIM = 12


@dataclass(frozen=True)
class OuterApprox:
    dim: int
    normals: np.ndarray       # (h, dim), unit length
    offsets: np.ndarray       # (h,)
    artificial: np.ndarray    # (h,) bool
    vertices: np.ndarray      # (v, dim)
    incidence: tuple          # per vertex, bitmask over halfspace indices

    @property
    def nhalfspaces(self):
        return self.normals.shape[0]

    @property
    def nvertices(self):
        return self.vertices.shape[0]

    def is_empty(self):
        return self.nvertices == 0

    def values(self, w, gamma):
        return self.vertices @ w - gamma


def from_box(lo, hi):
    """Initial store: the box [lo, hi], all rows flagged artificial."""
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    q = lo.shape[0]
    if q > MAX_DIM:
        raise DimensionTooLargeError(
            "explicit vertex bookkeeping refused for dimension %d" % q
        )
    if np.any(lo > hi) or not np.all(np.isfinite(lo) & np.isfinite(hi)):
        raise ValueError("box must be finite with lo <= hi")
    normals = np.zeros((2 * q, q))
    offsets = np.empty(2 * q)
    for i in range(q):
        normals[2 * i, i] = 1.0
        offsets[2 * i] = lo[i]
        normals[2 * i + 1, i] = -1.0
        offsets[2 * i + 1] = -hi[i]
    corners = []
    masks = []
    choices = [sorted({lo[i], hi[i]}) for i in range(q)]
    for combo in product(*choices):
        v = np.array(combo)
        mask = 0
        for i in range(q):
            if v[i] == lo[i]:
                mask |= 1 << (2 * i)
            if v[i] == hi[i]:
                mask |= 1 << (2 * i + 1)
        corners.append(v)
        masks.append(mask)
    return OuterApprox(
        dim=q,
        normals=normals,
        offsets=offsets,
        artificial=np.ones(2 * q, dtype=bool),
        vertices=np.array(corners),
        incidence=tuple(masks),
    )


def insert_halfspace(oa, w, gamma, artificial=False):
    """Cut the store with w.y >= gamma; returns the new store."""
    w = np.asarray(w, dtype=float)
    norm = np.linalg.norm(w)
    if norm <= 1e-12:
        raise ValueError("degenerate cut normal")
    w = w / norm
    gamma = float(gamma) / norm
    q = oa.dim
    hs_new = oa.nhalfspaces
    normals = np.vstack([oa.normals, w])
    offsets = np.append(oa.offsets, gamma)
    artificial_mask = np.append(oa.artificial, artificial)

    if oa.is_empty():
        return OuterApprox(q, normals, offsets, artificial_mask,
                           oa.vertices, oa.incidence)

    vals = oa.values(w, gamma)
    dropmask = vals < -TOL_DD
    tightmask = ~dropmask & (vals <= TOL_DD)
    if not np.any(dropmask):
        inc = [
            m | (1 << hs_new) if tightmask[i] else m
            for i, m in enumerate(oa.incidence)
        ]
        return OuterApprox(q, normals, offsets, artificial_mask,
                           oa.vertices, tuple(inc))

    keep_idx = np.flatnonzero(~dropmask)
    drop_idx = np.flatnonzero(dropmask)
    if keep_idx.size == 0:
        return OuterApprox(q, normals, offsets, artificial_mask,
                           np.zeros((0, q)), ())

    new_pts = []
    new_incs = []
    for i in keep_idx:
        if vals[i] <= TOL_DD:
            continue    # cut passes through this vertex, no crossing
        inc_i = oa.incidence[i]
        simple_i = _popcount(inc_i) == q
        for j in drop_idx:
            common = inc_i & oa.incidence[j]
            ncommon = _popcount(common)
            if ncommon < q - 1:
                continue
            if not _edge_certified(oa, common, simple_i,
                                   oa.incidence[j], q):
                continue
            t = vals[i] / (vals[i] - vals[j])
            pt = oa.vertices[i] + t * (oa.vertices[j] - oa.vertices[i])
            tight = np.abs(normals @ pt - offsets) <= TOL_DD * (
                1.0 + np.abs(offsets)
            )
            mask = 1 << hs_new
            for h in np.flatnonzero(tight):
                mask |= 1 << int(h)
            new_pts.append(pt)
            new_incs.append(mask)

    kept_vertices = oa.vertices[keep_idx]
    kept_incs = [
        oa.incidence[i] | (1 << hs_new) if vals[i] <= TOL_DD
        else oa.incidence[i]
        for i in keep_idx
    ]
    uniq_pts, uniq_incs = _merge_new(kept_vertices, new_pts, new_incs)
    if uniq_pts:
        vertices = np.vstack([kept_vertices, np.array(uniq_pts)])
        incidence = tuple(kept_incs + uniq_incs)
    else:
        vertices = kept_vertices
        incidence = tuple(kept_incs)
    return OuterApprox(q, normals, offsets, artificial_mask,
                       vertices, incidence)


def _popcount(x):
    return int(x).bit_count()


def _edge_certified(oa, common, simple_i, inc_j, q):
    if _popcount(common) == q - 1 and simple_i and _popcount(inc_j) == q:
        # common rows are a subset of a simple vertex's q independent
        # tight normals, hence independent themselves
        return True
    rows = []
    h = 0
    mask = common
    while mask:
        if mask & 1:
            rows.append(h)
        mask >>= 1
        h += 1
    sub = oa.normals[rows]
    rank = int(np.linalg.matrix_rank(sub, tol=1e-8))
    if rank >= q - 1:
        return True
    # certification failed; make sure the failure is decisive, not a
    # tolerance coin flip
    if int(np.linalg.matrix_rank(sub, tol=1e-11)) >= q - 1:
        raise RankDegeneracyError(
            "crossing-edge rank is ambiguous at tolerance"
        )
    return False


def _merge_new(kept, new_pts, new_incs):
    uniq_pts, uniq_incs = [], []
    for pt, inc in zip(new_pts, new_incs):
        if kept.size and np.min(
            np.max(np.abs(kept - pt), axis=1)
        ) <= MERGE_TOL:
            continue
        merged = False
        for k, existing in enumerate(uniq_pts):
            if np.max(np.abs(existing - pt)) <= MERGE_TOL:
                uniq_incs[k] |= inc
                merged = True
                break
        if not merged:
            uniq_pts.append(pt)
            uniq_incs.append(inc)
    return uniq_pts, uniq_incs


def extract(oa):
    """Current (VRep, HRep) of the store.

    The HRep keeps every genuine halfspace plus the artificial rows
    still tight at some vertex; rows appear in insertion order.
    """
    tight_any = 0
    for m in oa.incidence:
        tight_any |= m
    rows = [
        h for h in range(oa.nhalfspaces)
        if not oa.artificial[h] or (tight_any >> h) & 1
    ]
    B = oa.normals[rows]
    a = oa.offsets[rows]
    vrep = VRep(V=oa.vertices.copy(), dim=oa.dim)
    hrep = HRep(B=B, a=a, b=None, dim=oa.dim)
    return vrep, hrep
