"""Projection engine: generator and halfspace form of a projection-form
polyhedron.

The image A = {Mx : x feasible} in R^q is recovered through a lifted
problem in R^(q+1): stack the map with its negated column-sum row and
consider the set of componentwise upper bounds of the stacked image.
That lifted set has two properties the engine relies on:

* the hyperplane {(y, r) : r = -sum(y)} supports it, and the face cut
  out by the hyperplane is exactly the lifted copy of A, so vertices
  of A are vertices of the lifted set and never of a generic section;
* a separation LP at any candidate point is always bounded, because
  the stacked map's rows sum to zero.

The engine cuts a bounding box down by separation until every vertex
of the outer approximation is within eps of the lifted set, then reads
A's vertices off the supporting slice.  Unbounded images are handled
by clamping infinite coordinate ranges at a large radius; recession
directions are recovered separately from the homogeneous system, box
truncation artifacts are audited against them, and an audit failure
doubles the radius (a genuine far vertex beyond the radius is thereby
eventually enclosed, and persistent failure reports truncation rather
than returning silently wrong geometry).
"""

import time
from dataclasses import dataclass

import numpy as np

from . import lp
from .errors import (
    CutLpError, EmptySetError, IncompleteProjectionError, IterationCapError,
    LowDimensionalWarning, ProjectionTimeoutError,
)
from .outer import from_box, insert_halfspace
from .queries import feasible_point, image_range
from .reps import INF, HRep, PRep, VRep, hrep_to_prep
from .setcalc import recession_cone

import warnings

EPS_DEFAULT = 1e-7
BOX_LIMIT_DEFAULT = 1e6
MAX_CUTS_DEFAULT = 100000
MAX_BOX_RETRIES = 3


@dataclass(frozen=True)
class ProjectionResult:
    vrep: VRep
    hrep: HRep
    eps: float
    truncation_warning: bool = False
    retries: int = 0
    ncuts: int = 0


def build_molp(p):
    """The lifted objective stack: p's map over its negated column sum.

    Rows sum to zero by construction, which keeps every separation LP
    bounded below.
    """
    if feasible_point(p) is None:
        raise EmptySetError("projection of the empty set")
    return np.vstack([p.M, -p.M.sum(axis=0)])


def _separation(mprime, p, v):
    """min t st  mprime x - t <= v  plus p's system; returns (t*, cut).

    The cut normal is the normalized vector of multipliers of the
    upper-bounded lifted rows.
    """
    qq = mprime.shape[0]
    n = p.n
    B = np.hstack([mprime, -np.ones((qq, 1))])
    a = np.full(qq, -INF)
    b = np.asarray(v, dtype=float)
    if p.m:
        B = np.vstack([B, np.hstack([p.B, np.zeros((p.m, 1))])])
        a = np.concatenate([a, p.row_lower()])
        b = np.concatenate([b, p.row_upper()])
    c = np.zeros(n + 1)
    c[n] = 1.0
    l = np.append(p.var_lower(), -INF)
    u = np.append(p.var_upper(), INF)
    sol = lp.solve_lp(lp.LpProblem(c=c, B=B, a=a, b=b, l=l, u=u))
    if sol.status != lp.OPTIMAL:
        raise CutLpError("separation solve ended %s" % sol.status)
    mu = np.maximum(-sol.row_duals[:qq], 0.0)
    total = mu.sum()
    if total <= 1e-9:
        raise CutLpError("separation produced a vanishing cut normal")
    return float(sol.objective), mu / total


def _benson(mprime, p, lo, hi, eps, deadline, max_cuts):
    """Cut the box down until every vertex verifies within eps."""
    oa = from_box(lo, hi)
    verified = set()
    ncuts = 0
    while True:
        if deadline is not None and time.monotonic() > deadline:
            raise ProjectionTimeoutError("projection exceeded its deadline")
        target = -1
        for idx in range(oa.nvertices):
            if oa.vertices[idx].tobytes() not in verified:
                target = idx
                break
        if target < 0:
            return oa, ncuts
        v = oa.vertices[target]
        tstar, mu = _separation(mprime, p, v)
        if tstar <= eps:
            verified.add(v.tobytes())
            continue
        ncuts += 1
        if ncuts > max_cuts:
            raise IterationCapError("separation cut budget exhausted")
        oa = insert_halfspace(oa, mu, float(mu @ v) + tstar)
        if oa.is_empty():
            raise CutLpError("outer approximation emptied by a cut")


def _preimage_bounded(p):
    return (np.all(np.isfinite(p.var_lower()))
            and np.all(np.isfinite(p.var_upper())))


def recession_generators(p, eps=EPS_DEFAULT):
    """Generators of the image's recession cone, unit length, deduped,
    redundant generators removed.

    Works on the homogeneous system with its preimage box clamped to
    [-1, 1]: the clamped cone generates the full cone, and its bounded
    image is projected by the ordinary engine.
    """
    if _preimage_bounded(p):
        return np.zeros((0, p.q))
    rc = recession_cone(p)
    l = np.clip(rc.var_lower(), -1.0, None)
    u = np.clip(rc.var_upper(), None, 1.0)
    clamped = PRep(rc.M, rc.B, rc.a, rc.b, l, u)
    res = project(clamped, eps=eps, _assume_bounded=True)
    pts = res.vrep.V
    dirs = []
    for v in pts:
        nrm = np.linalg.norm(v)
        if np.max(np.abs(v)) <= 1e-6:
            continue
        d = v / nrm
        if not any(np.max(np.abs(d - e)) <= 1e-7 for e in dirs):
            dirs.append(d)
    if not dirs:
        return np.zeros((0, p.q))
    return _prune_directions(np.array(dirs))


def _prune_directions(dirs):
    alive = list(range(dirs.shape[0]))
    i = 0
    while i < len(alive):
        rest = [j for j in alive if j != alive[i]]
        if rest and _in_cone(dirs[alive[i]], dirs[rest]):
            alive.pop(i)
        else:
            i += 1
    return dirs[alive]


def _in_cone(d, gens, tol=1e-7):
    """Whether d lies in the cone of gens, within max-norm tol."""
    g = gens.shape[0]
    q = d.shape[0]
    c = np.zeros(g + 1)
    c[g] = 1.0
    ones = np.ones((q, 1))
    B = np.vstack([
        np.hstack([gens.T, -ones]),
        np.hstack([gens.T, ones]),
    ])
    a = np.concatenate([np.full(q, -INF), d])
    b = np.concatenate([d, np.full(q, INF)])
    l = np.zeros(g + 1)
    sol = lp.solve_lp(lp.LpProblem(c=c, B=B, a=a, b=b, l=l))
    return sol.status == lp.OPTIMAL and sol.objective <= tol


def _in_hull_plus_cone(target, points, dirs, tol):
    """Whether target is in conv(points) + cone(dirs), within tol."""
    k = points.shape[0]
    if k == 0:
        return False
    g = dirs.shape[0]
    q = target.shape[0]
    nv = k + g + 1
    c = np.zeros(nv)
    c[nv - 1] = 1.0
    gen = np.hstack([points.T, dirs.T]) if g else points.T
    ones = np.ones((q, 1))
    B = np.vstack([
        np.hstack([gen, -ones]),
        np.hstack([gen, ones]),
    ])
    conv_row = np.zeros((1, nv))
    conv_row[0, :k] = 1.0
    B = np.vstack([B, conv_row])
    a = np.concatenate([np.full(q, -INF), target, [1.0]])
    b = np.concatenate([target, np.full(q, INF), [1.0]])
    l = np.zeros(nv)
    sol = lp.solve_lp(lp.LpProblem(c=c, B=B, a=a, b=b, l=l))
    return sol.status == lp.OPTIMAL and sol.objective <= tol


def _image_box(p, radius):
    """Padded coordinate box of the image; infinite sides clamp to the
    radius and are reported."""
    q = p.q
    lo = np.empty(q)
    hi = np.empty(q)
    clamped = False
    for i in range(q):
        lo_i, hi_i = image_range(p, i)
        fin_lo = lo_i > -INF
        fin_hi = hi_i < INF
        if fin_lo and fin_hi:
            pad = 1.0 + 0.025 * (hi_i - lo_i)
        else:
            pad = 1.0
        lo[i] = lo_i - pad if fin_lo else -radius
        hi[i] = hi_i + pad if fin_hi else radius
        clamped |= not (fin_lo and fin_hi)
    return lo, hi, clamped


def _slice_points(oa, q):
    """On-slice vertices (y parts) with their box-tightness flags."""
    V = oa.vertices
    res = V[:, :q].sum(axis=1) + V[:, q]
    # geometry error in crossing points grows like 1e-9 * magnitude,
    # far below the 1.0-scale pad separating off-slice box corners
    scale = 1.0 + np.abs(V).sum(axis=1)
    on = np.abs(res) <= np.maximum(1e-6, 1e-9 * scale)
    art_mask = 0
    for h in np.flatnonzero(oa.artificial):
        art_mask |= 1 << int(h)
    pts = []
    flags = []
    for idx in np.flatnonzero(on):
        y = V[idx, :q]
        tight = bool(oa.incidence[idx] & art_mask)
        merged = False
        for k, existing in enumerate(pts):
            if np.max(np.abs(existing - y)) <= 1e-7:
                flags[k] = flags[k] or tight
                merged = True
                break
        if not merged:
            pts.append(y.copy())
            flags.append(tight)
    if not pts:
        return np.zeros((0, q)), np.zeros(0, dtype=bool)
    return np.array(pts), np.array(flags)


def _audit_ok(pts, flags, dirs):
    """Every box-tight point must decompose over the others plus the
    recession cone; otherwise the box clipped genuine geometry."""
    for idx in np.flatnonzero(flags):
        others = np.delete(pts, idx, axis=0)
        tol = max(1e-6, 1e-9 * (1.0 + np.max(np.abs(pts[idx]))))
        if not _in_hull_plus_cone(pts[idx], others, dirs, tol):
            return False
    return True


def _prune_points(pts, flags, dirs):
    """Greedily drop box-tight points that the rest still generate."""
    alive = np.ones(pts.shape[0], dtype=bool)
    for idx in np.flatnonzero(flags):
        alive[idx] = False
        others = pts[alive]
        tol = max(1e-6, 1e-9 * (1.0 + np.max(np.abs(pts[idx]))))
        if not _in_hull_plus_cone(pts[idx], others, dirs, tol):
            alive[idx] = True
    return pts[alive], flags[alive]


def _extract_hrep(oa, q, ref_pts):
    """Substitute the slice into the genuine cuts and prune."""
    rows = []
    for h in range(oa.nhalfspaces):
        if oa.artificial[h]:
            continue
        w = oa.normals[h]
        sub = w[:q] - w[q]
        nrm = np.linalg.norm(sub)
        if nrm <= 1e-9:
            continue
        rows.append((sub / nrm, oa.offsets[h] / nrm))
    rows = _dedup_rows(rows)
    rows = _prune_redundant_rows(rows)
    if not rows:
        return HRep(dim=q)
    B = np.array([r[0] for r in rows])
    a = np.array([r[1] for r in rows])
    return HRep(B=B, a=a, b=None, dim=q)


def _dedup_rows(rows):
    out = []
    for w, g in rows:
        dup = False
        for w2, g2 in out:
            if np.max(np.abs(w - w2)) <= 1e-9 and abs(g - g2) <= 1e-9 * (
                1.0 + abs(g2)
            ):
                dup = True
                break
        if not dup:
            out.append((w, g))
    return out


def _prune_redundant_rows(rows):
    """Drop rows implied by the others (w.y >= g orientation)."""
    alive = list(rows)
    i = 0
    while i < len(alive):
        w, g = alive[i]
        rest = alive[:i] + alive[i + 1:]
        if rest and _row_implied(w, g, rest):
            alive.pop(i)
        else:
            i += 1
    return alive


def _row_implied(w, g, rest):
    B = np.array([r[0] for r in rest])
    a = np.array([r[1] for r in rest])
    sol = lp.solve_lp(lp.LpProblem(c=w, B=B, a=a, b=None))
    if sol.status != lp.OPTIMAL:
        return False
    return sol.objective >= g - 1e-7 * (1.0 + abs(g))


def project(p, eps=None, box_limit=BOX_LIMIT_DEFAULT, deadline=None,
            max_cuts=MAX_CUTS_DEFAULT, _assume_bounded=False):
    """Vertex and halfspace form of the image of a PRep.

    Deterministic: identical input bytes and eps give identical output
    bytes.  Raises IncompleteProjectionError (with the partial result
    attached) when box enlargement keeps failing the truncation audit,
    ProjectionTimeoutError past the deadline, IterationCapError past
    the cut budget.
    """
    eps = EPS_DEFAULT if eps is None else float(eps)
    q = p.q
    if feasible_point(p) is None:
        return ProjectionResult(
            vrep=VRep(dim=q),
            hrep=HRep(B=np.zeros((1, q)), a=[1.0], b=None, dim=q),
            eps=eps,
        )
    if _assume_bounded:
        dirs = np.zeros((0, q))
    else:
        dirs = recession_generators(p, eps)
    mprime = np.vstack([p.M, -p.M.sum(axis=0)])
    radius = float(box_limit)
    pts = flags = oa = None
    ncuts = 0
    for attempt in range(MAX_BOX_RETRIES + 1):
        lo, hi, clamped = _image_box(p, radius)
        lo_full = np.append(lo, -hi.sum() - 1.0)
        hi_full = np.append(hi, -lo.sum() + 1.0)
        oa, ncuts = _benson(mprime, p, lo_full, hi_full, eps, deadline,
                            max_cuts)
        pts, flags = _slice_points(oa, q)
        if pts.shape[0] == 0:
            raise CutLpError("no vertices recovered on the image slice")
        if clamped and not _audit_ok(pts, flags, dirs):
            radius *= 2.0
            continue
        if clamped:
            pts, flags = _prune_points(pts, flags, dirs)
        vrep = VRep(V=pts, D=dirs if dirs.size else None, dim=q)
        hrep = _extract_hrep(oa, q, pts)
        return ProjectionResult(vrep=vrep, hrep=hrep, eps=eps,
                                truncation_warning=False, retries=attempt,
                                ncuts=ncuts)
    pts, flags = _prune_points(pts, flags, dirs)
    partial = ProjectionResult(
        vrep=VRep(V=pts, D=dirs if dirs.size else None, dim=q),
        hrep=_extract_hrep(oa, q, pts),
        eps=eps,
        truncation_warning=True,
        retries=MAX_BOX_RETRIES,
        ncuts=ncuts,
    )
    raise IncompleteProjectionError(
        "box enlargement kept clipping geometry; partial result attached",
        result=partial,
    )


def vertex_enum(p, eps=None, **kw):
    """Generator form of the image (vertices, plus directions when
    unbounded)."""
    return project(p, eps=eps, **kw).vrep


def facet_enum(p, eps=None, **kw):
    """Halfspace form of the image with redundancy removed, via the
    polar body of the generator form.

    A lower-dimensional image produces two-sided rows describing its
    affine hull (and a LowDimensionalWarning); the remaining rows are
    orthogonalized against the hull equations.
    """
    res = project(p, eps=eps, **kw)
    V = res.vrep
    if V.is_empty():
        raise EmptySetError("facets of the empty set")
    q = V.dim
    pts, dirs = V.V, V.D
    center = pts.mean(axis=0)
    B = pts - center
    b = np.ones(B.shape[0])
    if dirs.size:
        B = np.vstack([B, dirs])
        b = np.concatenate([b, np.zeros(dirs.shape[0])])
    polar_body = hrep_to_prep(HRep(B=B, a=None, b=b, dim=q))
    pres = project(polar_body, eps=res.eps, **kw)
    W, DW = pres.vrep.V, pres.vrep.D

    eqs = []        # (normal, offset) two-sided
    ineqs = []      # (normal, offset) meaning normal.x <= offset
    used = np.zeros(DW.shape[0], dtype=bool)
    for i in range(DW.shape[0]):
        if used[i]:
            continue
        d = DW[i]
        mate = -1
        for j in range(i + 1, DW.shape[0]):
            if not used[j] and np.max(np.abs(DW[j] + d)) <= 1e-6:
                mate = j
                break
        if mate >= 0:
            used[i] = used[mate] = True
            eqs.append((d, float(d @ center)))
        else:
            used[i] = True
            ineqs.append((d, float(d @ center)))
    for w in W:
        if np.linalg.norm(w) <= 1e-9:
            continue
        ineqs.append((w, 1.0 + float(w @ center)))

    if eqs:
        warnings.warn(
            "image is not full-dimensional; hull equations attached",
            LowDimensionalWarning,
        )
        E = np.array([e[0] for e in eqs])
        Q, _ = np.linalg.qr(E.T)
        ineqs = _orthogonalize(ineqs, Q.T, center)
    ineqs = _dedup_facets(ineqs)
    ineqs = _prune_facets(ineqs, eqs)
    rows = eqs + ineqs
    B = np.array([r[0] for r in rows])
    off = np.array([r[1] for r in rows])
    a = np.concatenate([off[: len(eqs)], np.full(len(ineqs), -INF)])
    return HRep(B=B, a=a, b=off, dim=q)


def _orthogonalize(ineqs, Qrows, center):
    out = []
    for w, off in ineqs:
        wt = w - Qrows.T @ (Qrows @ w)
        nrm = np.linalg.norm(wt)
        if nrm <= 1e-9:
            continue
        new_off = off - float(w @ center) + float(wt @ center)
        out.append((wt / nrm, new_off / nrm))
    return out


def _dedup_facets(ineqs):
    out = []
    for w, off in ineqs:
        nrm = np.linalg.norm(w)
        w, off = w / nrm, off / nrm
        if not any(
            np.max(np.abs(w - w2)) <= 1e-7 and abs(off - off2) <= 1e-7 * (
                1.0 + abs(off2)
            )
            for w2, off2 in out
        ):
            out.append((w, off))
    return out


def _prune_facets(ineqs, eqs):
    """Redundancy removal for upper rows, honoring hull equations."""
    alive = list(ineqs)
    i = 0
    while i < len(alive):
        w, off = alive[i]
        rest = alive[:i] + alive[i + 1:]
        if rest and _facet_implied(w, off, rest, eqs):
            alive.pop(i)
        else:
            i += 1
    return alive


def _facet_implied(w, off, rest, eqs):
    B = np.array([r[0] for r in rest + eqs])
    hi = np.array([r[1] for r in rest + eqs])
    lo = np.concatenate([
        np.full(len(rest), -INF),
        np.array([r[1] for r in eqs]),
    ]) if eqs else None
    sol = lp.solve_lp(lp.LpProblem(c=-w, B=B, a=lo, b=hi))
    if sol.status != lp.OPTIMAL:
        return False
    return -sol.objective <= off + 1e-7 * (1.0 + abs(off))
