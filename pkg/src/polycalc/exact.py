"""Exact rational oracles.

Three independent cross-checking routes, all in exact arithmetic:

* Fourier-Motzkin elimination of the preimage variables of a
  projection form, yielding an inequality description of the image;
* brute-force vertex enumeration by solving every q-subset of active
  hyperplanes;
* a standard-form tableau simplex (Bland's rule, two-phase with
  artificial variables).

Floats lift exactly through Fraction(float), so no rounding enters at
the boundary.  Rows are kept as primitive integer vectors, which keeps
the elimination fast and canonical for deduplication.  Everything here
favors clarity over speed and is intended for desk-sized instances;
the size guards raise OracleTooLargeError rather than grind.
"""

from fractions import Fraction
from itertools import combinations
from math import comb, gcd, isinf

import numpy as np

from . import lp as _lp
from .errors import OracleTooLargeError
from .reps import INF, HRep

MAX_ROWS = 10 ** 5
PRUNE_ABOVE = 300
MAX_BASES = 10 ** 6


class ExactSystem:
    """Inequalities coeffs.y <= rhs with integer entries.

    ``infeasible`` is set when elimination produced a contradictory
    constant row, in which case ``rows`` is meaningless.
    """

    def __init__(self, nvars, rows=(), infeasible=False):
        self.nvars = nvars
        self.rows = list(rows)
        self.infeasible = infeasible

    def to_hrep(self):
        if self.infeasible:
            # one contradictory row
            return HRep(B=np.zeros((1, self.nvars)), a=[1.0], b=None,
                        dim=self.nvars)
        if not self.rows:
            return HRep(dim=self.nvars)
        B = np.array([[float(c) for c in coeffs] for coeffs, _ in self.rows])
        b = np.array([float(r) for _, r in self.rows])
        return HRep(B=B, a=None, b=b, dim=self.nvars)


def _int_row(coeffs, rhs):
    """Scale a Fraction row to a primitive integer row, or None if it
    reduced to the trivially true 0 <= nonnegative."""
    lcm = 1
    for f in coeffs:
        lcm = lcm * f.denominator // gcd(lcm, f.denominator)
    lcm = lcm * rhs.denominator // gcd(lcm, rhs.denominator)
    ints = [int(f * lcm) for f in coeffs]
    r = int(rhs * lcm)
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return None if r >= 0 else "infeasible"
    g = gcd(g, abs(r))
    if g > 1:
        ints = [v // g for v in ints]
        r //= g
    return tuple(ints), r


def _dedup(rows):
    """Keep the tightest rhs per normal; detect contradictions.

    Rows optionally carry an ancestor bitmask as a third entry; ties
    keep the mask with fewer ancestors.
    """
    best = {}
    for row in rows:
        coeffs, rhs = row[0], row[1]
        mask = row[2] if len(row) > 2 else 0
        if all(c == 0 for c in coeffs):
            if rhs < 0:
                return None
            continue
        old = best.get(coeffs)
        if old is None or rhs < old[0] or (
            rhs == old[0] and mask.bit_count() < old[1].bit_count()
        ):
            best[coeffs] = (rhs, mask)
    return [(c, r, m) for c, (r, m) in best.items()]


def _eliminate(rows, k, budget=None):
    """Project out variable k from integer rows by pairing signs.

    ``budget`` is the ancestry cap after this elimination (number of
    variables eliminated so far plus two): a combination drawing on
    more original rows than that is redundant by Imbert's criterion
    and is dropped at generation time, which keeps the row count from
    exploding without changing the described set.
    """
    pos, neg, zero = [], [], []
    for row in rows:
        c = row[0][k]
        if c > 0:
            pos.append(row)
        elif c < 0:
            neg.append(row)
        else:
            zero.append(row)
    out = list(zero)
    for cp_row in pos:
        cp = cp_row[0][k]
        for cn_row in neg:
            mask = cp_row[2] | cn_row[2]
            if budget is not None and mask.bit_count() > budget:
                continue
            cn = -cn_row[0][k]
            coeffs = tuple(
                cn * a + cp * b for a, b in zip(cp_row[0], cn_row[0])
            )
            rhs = cn * cp_row[1] + cp * cn_row[1]
            canon = _int_row(
                [Fraction(c) for c in coeffs], Fraction(rhs)
            )
            if canon == "infeasible":
                return None
            if canon is not None:
                out.append((canon[0], canon[1], mask))
    return _dedup(out)


def _prep_rows(p):
    """Integer rows over z = (x, y) encoding y = Mx plus p's system."""
    n, q, m = p.n, p.q, p.m
    width = n + q
    raw = []

    def add(coeffs, rhs):
        canon = _int_row(list(coeffs), Fraction(rhs))
        if canon == "infeasible":
            raise AssertionError("contradictory finite input row")
        if canon is not None:
            raw.append(canon)

    for j in range(q):
        base = [Fraction(0)] * width
        for i in range(n):
            base[i] = -Fraction(float(p.M[j, i]))
        base[n + j] = Fraction(1)
        add(base, Fraction(0))
        add([-c for c in base], Fraction(0))
    a, b = p.row_lower(), p.row_upper()
    for i in range(m):
        coeffs = [Fraction(float(p.B[i, jj])) for jj in range(n)]
        coeffs += [Fraction(0)] * q
        if not isinf(b[i]):
            add(coeffs, Fraction(float(b[i])))
        if not isinf(a[i]):
            add([-c for c in coeffs], -Fraction(float(a[i])))
    l, u = p.var_lower(), p.var_upper()
    for j in range(n):
        coeffs = [Fraction(0)] * width
        coeffs[j] = Fraction(1)
        if not isinf(u[j]):
            add(coeffs, Fraction(float(u[j])))
        if not isinf(l[j]):
            add([-c for c in coeffs], -Fraction(float(l[j])))
    return raw


def fm_project(p, order=None, max_rows=MAX_ROWS):
    """Eliminate the preimage variables of a PRep exactly.

    ``order`` optionally pins the elimination order (a permutation of
    range(n)); the default greedily picks the variable minimizing the
    product of positive and negative occurrence counts.
    """
    n, q = p.n, p.q
    deduped = _dedup(_prep_rows(p))
    if deduped is None:
        return ExactSystem(q, infeasible=True)
    # settle feasibility up front on the small original system rather
    # than discovering a contradiction late in the elimination
    status, _, zfeas, _ = _solve_rows_max(
        [(c, r) for c, r, _ in deduped], n + q, [Fraction(0)] * (n + q)
    )
    if status == "infeasible":
        return ExactSystem(q, infeasible=True)
    # reference point for redundancy pruning: inherited by every row
    # the elimination derives, strictly so for a nondegenerate system
    y0, _ = _interior_point(deduped, n + q)
    if y0 is None:
        y0 = zfeas
    rows = [(c, r, 1 << i) for i, (c, r, _) in enumerate(deduped)]
    remaining = list(order) if order is not None else list(range(n))
    if sorted(remaining) != list(range(n)):
        raise ValueError("order must be a permutation of range(n)")
    since_prune = 0
    while remaining:
        if len(rows) > PRUNE_ABOVE:
            rows = _clarkson_prune(rows, n + q, y0)
            # the ancestry argument only covers eliminations run from
            # the system the histories refer to, so pruning rebases
            # the masks and the elimination count
            rows = [(c, r, 1 << i) for i, (c, r, _) in enumerate(rows)]
            since_prune = 0
        if order is not None:
            k = remaining.pop(0)
        else:
            def cost(v):
                p_cnt = sum(1 for r in rows if r[0][v] > 0)
                n_cnt = sum(1 for r in rows if r[0][v] < 0)
                return (p_cnt * n_cnt, v)
            k = min(remaining, key=cost)
            remaining.remove(k)
        rows = _eliminate(rows, k, budget=since_prune + 2)
        since_prune += 1
        if rows is None:
            return ExactSystem(q, infeasible=True)
        if len(rows) > max_rows:
            raise OracleTooLargeError(
                "%d rows after eliminating variable %d" % (len(rows), k)
            )
    rows = _clarkson_prune(rows, n + q, y0)
    final = []
    for coeffs, rhs, _ in rows:
        assert all(c == 0 for c in coeffs[:n])
        final.append((coeffs[n:], rhs))
    return ExactSystem(q, final)


def _lp_prune(rows, width):
    """Drop rows implied by the rest.

    A float LP locates a candidate dual certificate quickly; the drop
    happens only after the certificate (a nonnegative rational
    combination of other rows reproducing the candidate row with a
    smaller or equal right side) verifies in exact arithmetic.  Rows
    without a verified certificate are kept, so pruning never changes
    the described set.
    """
    core = []
    for row in rows:
        if not _certified_redundant(row, core, width):
            core.append(row)
    # rows admitted early may be implied by later arrivals
    i = 0
    while i < len(core):
        others = core[:i] + core[i + 1:]
        if _certified_redundant(core[i], others, width):
            core.pop(i)
        else:
            i += 1
    return core


def _support_over(row, others):
    """Float LP maximizing the row's normal over the other rows' set."""
    c = np.array([float(x) for x in row[0]], dtype=float)
    B = np.array([[float(v) for v in o[0]] for o in others])
    b = np.array([float(o[1]) for o in others])
    return _lp.solve_lp(_lp.LpProblem(c=-c, B=B, a=None, b=b))


def _exact_multipliers(active, coeffs, width):
    """Nonnegative rational multipliers reproducing coeffs from the
    active rows, by Gaussian elimination; None when the particular
    solution does not exist or has a negative component."""
    k = len(active)
    aug = [[Fraction(active[j][0][i]) for j in range(k)]
           + [Fraction(coeffs[i])] for i in range(width)]
    piv_cols = []
    r = 0
    for col in range(k):
        pr = None
        for i in range(r, width):
            if aug[i][col] != 0:
                pr = i
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(width):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(col)
        r += 1
        if r == width:
            break
    for i in range(r, width):
        if aug[i][k] != 0:
            return None
    lam = [Fraction(0)] * k
    for i, col in enumerate(piv_cols):
        lam[col] = aug[i][k]
    if any(v < 0 for v in lam):
        return None
    return lam


def _verified_certificate(sol, others, coeffs, rhs, width):
    """Exact check of a dual certificate proposed by a float LP.

    The float duals only identify which rows carry the combination;
    the multipliers themselves are recomputed exactly, since basis
    determinants of large integer rows overflow any float.  The drop
    is sound only when the nonnegative combination reproduces the
    candidate with a right side at most the candidate's.
    """
    # negative duals pair with the b side in the solver's convention
    idx = [k for k, d in enumerate(sol.row_duals) if -d > 1e-11]
    if not idx:
        return False
    active = [others[k] for k in idx]
    lam = _exact_multipliers(active, coeffs, width)
    if lam is None:
        return False
    comb_rhs = sum(f * a[1] for f, a in zip(lam, active))
    return comb_rhs <= rhs


def _certified_redundant(row, others, width):
    coeffs, rhs = row[0], row[1]
    if not others:
        return False
    sol = _support_over(row, others)
    if sol.status != "optimal":
        return False
    if -sol.objective > float(rhs) + 1e-6 * (1.0 + abs(float(rhs))):
        return False
    return _verified_certificate(sol, others, coeffs, rhs, width)


def _interior_point(rows3, width):
    """A point strictly inside every row that admits slack.

    Solved exactly: max t subject to c.y + |c|_1 t <= r over the rows
    and t <= 1.  Rows whose mirror image is also present pin an
    affine subspace and get no slack term, so the point lands in the
    relative interior.  Any nonnegative combination of rows inherits
    positive slack from its slack-capable parents, so the point stays
    strictly inside every non-degenerate row the elimination later
    derives.  Returns (point, strict); strict=False means some row
    without a mirror still cannot be slack (a hidden degeneracy).
    """
    have = {(tuple(c), r) for c, r, _ in rows3}
    aug = []
    for c, r, _ in rows3:
        mirrored = (tuple(-v for v in c), -r) in have
        l1 = 0 if mirrored else sum(abs(v) for v in c)
        aug.append(([Fraction(v) for v in c] + [Fraction(l1)], Fraction(r)))
    aug.append(([Fraction(0)] * width + [Fraction(1)], Fraction(1)))
    obj = [Fraction(0)] * width + [Fraction(1)]
    status, t, y, _ = _solve_rows_max(aug, width + 1, obj)
    if status != "optimal" or y is None:
        return None, False
    return y[:width], t > 0


def _ray_hit(rows, rows_f, rhs_f, y0, y0_f, d):
    """First row boundary crossed from y0 along d, as (index, t) exact.

    Rows tangent at y0 itself (crossing parameter exactly zero) are
    ignored, since adding them makes no progress.  The minimum crossing
    is located with vectorized float arithmetic and settled exactly
    among the near-minimal candidates, falling back to a full exact
    scan when float noise empties the window; ties resolve to the
    smallest index.  Returns (None, None) when no row blocks the ray.
    """
    def exact_best(indices):
        best = None
        best_t = None
        for idx in indices:
            c, r = rows[idx][0], rows[idx][1]
            cd = sum(ci * di for ci, di in zip(c, d))
            if cd <= 0:
                continue
            t = (r - sum(ci * yi for ci, yi in zip(c, y0))) / cd
            if t <= 0:
                continue
            if best_t is None or t < best_t or (t == best_t and idx < best):
                best_t, best = t, int(idx)
        return best, best_t

    d_f = np.array([float(v) for v in d])
    cd_f = rows_f @ d_f
    num_f = rhs_f - rows_f @ y0_f
    pos = cd_f > 1e-12
    if pos.any():
        t_f = np.full(len(rows), np.inf)
        t_f[pos] = num_f[pos] / cd_f[pos]
        t_min = t_f.min()
        if np.isfinite(t_min):
            window = np.nonzero(
                t_f <= t_min + 1e-6 * (1.0 + abs(t_min))
            )[0]
            best, best_t = exact_best(window)
            if best is not None:
                return best, best_t
    return exact_best(range(len(rows)))


def _clarkson_prune(rows, width, y0):
    """Output-sensitive redundancy removal.

    Each candidate row is tested with a float LP against the growing
    core of rows already known essential.  A candidate the core fails
    to cover triggers an exact ray shot from the reference point toward
    the violating optimum; the first boundary crossed is essential and
    joins the core, and the candidate is retried.  Rows are dropped
    only on an exactly verified dual certificate, so float error can
    only cause extra keeps, never a changed set.
    """
    nr = len(rows)
    rows_f = np.array([[float(v) for v in c] for c, _, _ in rows])
    rhs_f = np.array([float(r) for _, r, _ in rows])
    y0_f = np.array([float(v) for v in y0])
    in_core = [False] * nr
    core = []
    core_idx = []

    def add_core(j):
        in_core[j] = True
        core.append(rows[j])
        core_idx.append(j)

    for i in range(nr):
        if in_core[i]:
            continue
        coeffs, rhs = rows[i][0], rows[i][1]
        if all(v == 0 for v in coeffs):
            continue
        for _ in range(nr + 2):
            if not core:
                hit, _t = _ray_hit(rows, rows_f, rhs_f, y0, y0_f,
                                   [Fraction(v) for v in coeffs])
                if hit is None or in_core[hit]:
                    add_core(i)
                    break
                add_core(hit)
                if hit == i:
                    break
                continue
            sol = _support_over(rows[i], core)
            if sol.status == "unbounded":
                d = [Fraction(float(v)) for v in sol.ray]
                if sum(c * v for c, v in zip(coeffs, d)) <= 0:
                    add_core(i)
                    break
                hit, _t = _ray_hit(rows, rows_f, rhs_f, y0, y0_f, d)
                if hit is None or in_core[hit]:
                    add_core(i)
                    break
                add_core(hit)
                if hit == i:
                    break
                continue
            if sol.status != "optimal":
                add_core(i)
                break
            if -sol.objective <= float(rhs) + 1e-6 * (1.0 + abs(float(rhs))):
                if _verified_certificate(sol, core, coeffs, rhs, width):
                    break
                add_core(i)
                break
            ytgt = [Fraction(float(v)) for v in sol.x]
            d = [t - y for t, y in zip(ytgt, y0)]
            if all(v == 0 for v in d):
                add_core(i)
                break
            hit, t_hit = _ray_hit(rows, rows_f, rhs_f, y0, y0_f, d)
            if hit is None or in_core[hit] or t_hit >= 1:
                # no boundary strictly cuts the violating optimum, so
                # shooting cannot make progress; keep the candidate
                add_core(i)
                break
            add_core(hit)
            if hit == i:
                break
        else:
            add_core(i)
    kept = [rows[j] for j in sorted(core_idx)]
    # shooting in degenerate or grazing configurations can admit rows
    # tight at lower faces; a certificate sweep restores minimality
    return _lp_prune(kept, width)


def system_support(sys, w):
    """Exact support value of an ExactSystem in direction w.

    Returns (status, Fraction or None): 'optimal' with the value,
    'unbounded', or 'infeasible'.
    """
    w = [Fraction(float(c)) for c in w]
    status, value, _, _ = _solve_rows_max(sys.rows, sys.nvars, w)
    return status, value


def _solve_rows_max(rows, width, objective):
    """max objective.y st integer rows coeffs.y <= rhs, y free."""
    # free variables split as y = u - v, slack per row
    nr = len(rows)
    ncols = 2 * width + nr
    A, rhs = [], []
    for i, (coeffs, r) in enumerate(rows):
        row = [Fraction(0)] * ncols
        for j, c in enumerate(coeffs):
            row[j] = Fraction(c)
            row[width + j] = Fraction(-c)
        row[2 * width + i] = Fraction(1)
        A.append(row)
        rhs.append(Fraction(r))
    c = [Fraction(0)] * ncols
    for j, val in enumerate(objective):
        f = Fraction(val)
        c[j] = -f       # minimize the negated objective
        c[width + j] = f
    status, obj, x, _ = _standard_simplex(c, A, rhs)
    if status != "optimal":
        return status, None, None, None
    y = [x[j] - x[width + j] for j in range(width)]
    return status, -obj, y, None


def _standard_simplex(c, A, b):
    """min c.v st A v = b, v >= 0, exact, Bland's rule, two phase.

    Returns (status, objective, v, ray).
    """
    m = len(A)
    n = len(c)
    # arrange b >= 0
    T = []
    rhs = []
    for i in range(m):
        if b[i] < 0:
            T.append([-x for x in A[i]])
            rhs.append(-b[i])
        else:
            T.append(list(A[i]))
            rhs.append(Fraction(b[i]))
    # phase 1: artificial basis
    for i in range(m):
        for k in range(m):
            T[i].append(Fraction(1) if k == i else Fraction(0))
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * n + [Fraction(1)] * m
    costrow = _reduce_costrow(cost, T, rhs, basis)
    status = _bland_loop(T, rhs, costrow, basis, cost)
    if status[0] != "optimal":
        raise AssertionError("phase 1 cannot be unbounded")
    if status[1] > 0:
        return "infeasible", None, None, None
    _drive_out_artificials(T, rhs, basis, n)
    rows_keep = [i for i, v in enumerate(basis) if v < n]
    if len(rows_keep) < len(basis):
        T = [T[i] for i in rows_keep]
        rhs = [rhs[i] for i in rows_keep]
        basis = [basis[i] for i in rows_keep]
    T = [row[:n] for row in T]
    # phase 2
    cost = list(c)
    costrow = _reduce_costrow(cost, T, rhs, basis)
    status = _bland_loop(T, rhs, costrow, basis, cost)
    if status[0] == "unbounded":
        j = status[1]
        ray = [Fraction(0)] * n
        ray[j] = Fraction(1)
        for i, v in enumerate(basis):
            ray[v] = -T[i][j]
        return "unbounded", None, None, ray
    v = [Fraction(0)] * n
    for i, var in enumerate(basis):
        v[var] = rhs[i]
    return "optimal", status[1], v, None


def _reduce_costrow(cost, T, rhs, basis):
    costrow = list(cost)
    for i, var in enumerate(basis):
        f = costrow[var]
        if f:
            for j in range(len(costrow)):
                costrow[j] -= f * T[i][j]
    return costrow


def _bland_loop(T, rhs, costrow, basis, cost):
    """Returns ('optimal', objective) or ('unbounded', entering col)."""
    m = len(T)
    ncols = len(costrow)
    while True:
        enter = -1
        for j in range(ncols):
            if costrow[j] < 0:
                enter = j
                break
        if enter < 0:
            obj = sum(cost[basis[i]] * rhs[i] for i in range(m))
            return ("optimal", obj)
        best_i = -1
        best_ratio = None
        for i in range(m):
            tij = T[i][enter]
            if tij > 0:
                ratio = rhs[i] / tij
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[best_i])):
                    best_ratio = ratio
                    best_i = i
        if best_i < 0:
            return ("unbounded", enter)
        _pivot(T, rhs, costrow, basis, best_i, enter)


def _pivot(T, rhs, costrow, basis, r, jcol):
    piv = T[r][jcol]
    T[r] = [x / piv for x in T[r]]
    rhs[r] = rhs[r] / piv
    for i in range(len(T)):
        if i != r and T[i][jcol]:
            f = T[i][jcol]
            T[i] = [x - f * y for x, y in zip(T[i], T[r])]
            rhs[i] -= f * rhs[r]
    f = costrow[jcol]
    if f:
        for j in range(len(costrow)):
            costrow[j] -= f * T[r][j]
    basis[r] = jcol


def _drive_out_artificials(T, rhs, basis, n):
    for i, var in enumerate(basis):
        if var >= n:
            for j in range(n):
                if T[i][j] != 0:
                    _pivot(T, rhs, [Fraction(0)] * len(T[i]), basis, i, j)
                    break


def basis_vertex_enum(sys, limit=MAX_BASES):
    """All vertices of an ExactSystem by brute force.

    Solves every q-subset of rows as equalities, keeps feasible
    solutions, dedups exactly; output sorted lexicographically.
    """
    q = sys.nvars
    if sys.infeasible:
        return []
    rows = sys.rows
    if len(rows) >= q and comb(len(rows), q) > limit:
        raise OracleTooLargeError(
            "C(%d, %d) candidate bases" % (len(rows), q)
        )
    found = set()
    for combo in combinations(range(len(rows)), q):
        mat = [[Fraction(c) for c in rows[i][0]] for i in combo]
        vec = [Fraction(rows[i][1]) for i in combo]
        pt = _solve_square(mat, vec)
        if pt is None:
            continue
        ok = True
        for coeffs, rhs in rows:
            s = sum(c * x for c, x in zip(coeffs, pt))
            if s > rhs:
                ok = False
                break
        if ok:
            found.add(tuple(pt))
    return sorted(found)


def _solve_square(mat, vec):
    """Exact Gaussian elimination; None when singular."""
    q = len(vec)
    M = [row[:] + [vec[i]] for i, row in enumerate(mat)]
    for col in range(q):
        piv = None
        for r in range(col, q):
            if M[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col]
        M[col] = [x / inv for x in M[col]]
        for r in range(q):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][q] for i in range(q)]


def hrep_to_system(h):
    """Lift a float HRep into an ExactSystem (every finite side one row)."""
    rows = []

    def add(coeffs, rhs):
        canon = _int_row([Fraction(float(x)) for x in coeffs],
                         Fraction(float(rhs)))
        if canon not in (None, "infeasible"):
            rows.append(canon)

    a, b = h.row_lower(), h.row_upper()
    for i in range(h.m):
        if not isinf(b[i]):
            add(h.B[i], b[i])
        if not isinf(a[i]):
            add(-h.B[i], -a[i])
    l, u = h.var_lower(), h.var_upper()
    for j in range(h.dim):
        e = np.zeros(h.dim)
        e[j] = 1.0
        if not isinf(u[j]):
            add(e, u[j])
        if not isinf(l[j]):
            add(-e, -l[j])
    return ExactSystem(h.dim, rows)


def exact_lp(p):
    """Solve an LpProblem exactly; cross-check route for lp.solve_lp.

    Returns an LpSolution with float fields (status, x, objective); no
    duals are reported on this route.
    """
    n, m = p.n, p.m
    # x = S v + t with v >= 0
    cols = []      # (var index, sign)
    t = [Fraction(0)] * n
    extra_rows = []    # (col index, upper bound) for doubly bounded vars
    for j in range(n):
        lj, uj = p.l[j], p.u[j]
        if not isinf(lj):
            t[j] = Fraction(float(lj))
            cols.append((j, 1))
            if not isinf(uj):
                extra_rows.append((len(cols) - 1,
                                   Fraction(float(uj)) - Fraction(float(lj))))
        elif not isinf(uj):
            t[j] = Fraction(float(uj))
            cols.append((j, -1))
        else:
            cols.append((j, 1))
            cols.append((j, -1))
    nv = len(cols)

    def expand(row):
        """Original-space row -> new-variable coefficients."""
        out = [Fraction(0)] * nv
        for k, (j, sgn) in enumerate(cols):
            if row[j]:
                out[k] = sgn * row[j]
        return out

    eq_rows, eq_rhs = [], []
    le_rows, le_rhs = [], []
    for i in range(m):
        coeffs = [Fraction(float(x)) for x in p.B[i]]
        shift = sum(c * tv for c, tv in zip(coeffs, t))
        ai, bi = p.a[i], p.b[i]
        if not isinf(ai) and not isinf(bi) and ai == bi:
            eq_rows.append(expand(coeffs))
            eq_rhs.append(Fraction(float(ai)) - shift)
            continue
        if not isinf(bi):
            le_rows.append(expand(coeffs))
            le_rhs.append(Fraction(float(bi)) - shift)
        if not isinf(ai):
            le_rows.append(expand([-c for c in coeffs]))
            le_rhs.append(shift - Fraction(float(ai)))
    for k, ub in extra_rows:
        row = [Fraction(0)] * nv
        row[k] = Fraction(1)
        le_rows.append(row)
        le_rhs.append(ub)

    nslack = len(le_rows)
    total = nv + nslack
    A, rhs = [], []
    for row, r in zip(eq_rows, eq_rhs):
        A.append(row + [Fraction(0)] * nslack)
        rhs.append(r)
    for i, (row, r) in enumerate(zip(le_rows, le_rhs)):
        slack = [Fraction(0)] * nslack
        slack[i] = Fraction(1)
        A.append(row + slack)
        rhs.append(r)
    cobj = [Fraction(float(x)) for x in p.c]
    const = sum(cv * tv for cv, tv in zip(cobj, t))
    c = [Fraction(0)] * total
    for k, (j, sgn) in enumerate(cols):
        c[k] = sgn * cobj[j]
    status, obj, v, ray = _standard_simplex(c, A, rhs)
    if status == "infeasible":
        return _lp.LpSolution(status=_lp.INFEASIBLE)
    if status == "unbounded":
        xray = [Fraction(0)] * n
        for k, (j, sgn) in enumerate(cols):
            xray[j] += sgn * ray[k]
        return _lp.LpSolution(
            status=_lp.UNBOUNDED,
            ray=np.array([float(x) for x in xray]),
            objective=-INF,
        )
    x = list(t)
    for k, (j, sgn) in enumerate(cols):
        x[j] += sgn * v[k]
    return _lp.LpSolution(
        status=_lp.OPTIMAL,
        x=np.array([float(xx) for xx in x]),
        objective=float(obj + const),
    )
