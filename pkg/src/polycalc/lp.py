"""Bounded-variable revised simplex over two-sided row constraints.

Solves  min c.x  subject to  a <= B x <= b,  l <= x <= u,  any bound
entry may be infinite.  Rows are handled through logical variables:
with s = B x the working system is A z = 0 for z = (x, s) and
A = [B  -I], every variable carrying box bounds.  Feasibility is
reached by a sum-of-infeasibilities phase 1 (no big-M); pricing is
Dantzig with a Bland fallback after a long degenerate stall.  The
basis inverse is kept explicitly and refactorized every
``REFRESH_EVERY`` pivots.

Sign conventions for the returned duals: ``row_duals[i]`` is the
multiplier of row i, equal to the reduced cost of its logical
variable; ``reduced_costs[j]`` belongs to structural j.  At an
optimum,

    objective == sum_i a_i*max(y_i,0) - b_i*max(-y_i,0)
               + sum_j l_j*max(rc_j,0) - u_j*max(-rc_j,0)

with infinite bounds never met by a nonzero multiplier.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import LpIterationError, LpNumericalError

logger = logging.getLogger(__name__)

INF = float("inf")

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

TOL_FEAS = 1e-9
TOL_OPT = 1e-9
TOL_PIV = 1e-10
REFRESH_EVERY = 50
BLAND_AFTER = 1000

_BASIC, _AT_LOWER, _AT_UPPER, _FREE, _FIXED = range(5)


@dataclass(frozen=True)
class LpProblem:
    """min c.x st a <= Bx <= b, l <= x <= u; None bounds are infinite."""

    c: np.ndarray
    B: np.ndarray = None
    a: np.ndarray = None
    b: np.ndarray = None
    l: np.ndarray = None
    u: np.ndarray = None

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.c, dtype=float))
        object.__setattr__(self, "c", c)
        n = c.shape[0]
        B = self.B
        if B is None:
            B = np.zeros((0, n))
        else:
            B = np.asarray(B, dtype=float)
            if B.ndim == 1:
                B = B.reshape(1, -1) if B.size else B.reshape(0, n)
        object.__setattr__(self, "B", B)
        m = B.shape[0]
        for name, length, fill in (
            ("a", m, -INF), ("b", m, INF), ("l", n, -INF), ("u", n, INF)
        ):
            v = getattr(self, name)
            v = np.full(length, fill) if v is None else np.asarray(v, dtype=float)
            object.__setattr__(self, name, np.atleast_1d(v))

    @property
    def n(self):
        return self.c.shape[0]

    @property
    def m(self):
        return self.B.shape[0]


@dataclass(frozen=True)
class LpSolution:
    status: str
    x: np.ndarray = None
    objective: float = None
    row_duals: np.ndarray = None
    reduced_costs: np.ndarray = None
    ray: np.ndarray = None
    iterations: int = 0


def solve_lp(p, debug=False, max_iter=None):
    """Solve an LpProblem; returns an LpSolution.

    Deterministic: identical input bytes give identical pivot sequences
    and identical output bytes.
    """
    return _Simplex(p, debug=debug, max_iter=max_iter).run()


class _Simplex:
    def __init__(self, p, debug=False, max_iter=None):
        self.p = p
        self.debug = debug
        n, m = p.n, p.m
        self.n, self.m = n, m
        self.N = n + m
        self.A = np.hstack([p.B, -np.eye(m)])
        self.lo = np.concatenate([p.l, p.a])
        self.hi = np.concatenate([p.u, p.b])
        self.cost = np.concatenate([p.c, np.zeros(m)])
        self.max_iter = max_iter or (50000 + 100 * self.N)
        self.iterations = 0

    def run(self):
        if np.any(self.lo > self.hi):
            return LpSolution(status=INFEASIBLE)
        self._init_state()
        res = self._loop(phase1=True)
        if res is not None:
            return res
        res = self._loop(phase1=False)
        return res

    def _init_state(self):
        n, m, N = self.n, self.m, self.N
        lo, hi = self.lo, self.hi
        status = np.empty(N, dtype=np.int8)
        z = np.zeros(N)
        for j in range(n):
            if lo[j] == hi[j]:
                status[j] = _FIXED
                z[j] = lo[j]
            elif lo[j] > -INF:
                status[j] = _AT_LOWER
                z[j] = lo[j]
            elif hi[j] < INF:
                status[j] = _AT_UPPER
                z[j] = hi[j]
            else:
                status[j] = _FREE
                z[j] = 0.0
        status[n:] = _BASIC
        z[n:] = self.p.B @ z[:n]
        self.status = status
        self.z = z
        self.basis = np.arange(n, N)
        self.Binv = -np.eye(m)
        self.pivots_since_refresh = 0
        self.degenerate_run = 0
        self.bland = False

    def _refresh(self):
        try:
            self.Binv = np.linalg.inv(self.A[:, self.basis])
        except np.linalg.LinAlgError as e:
            raise LpNumericalError("singular basis at refactorization") from e
        znb = self.z.copy()
        znb[self.basis] = 0.0
        self.z[self.basis] = self.Binv @ (-(self.A @ znb))
        self.pivots_since_refresh = 0

    def _phase1_costs(self):
        zB = self.z[self.basis]
        d = np.zeros(self.m)
        d[zB < self.lo[self.basis] - TOL_FEAS] = -1.0
        d[zB > self.hi[self.basis] + TOL_FEAS] = 1.0
        return d

    def _loop(self, phase1):
        while True:
            self.iterations += 1
            if self.iterations > self.max_iter:
                raise LpIterationError(
                    "no convergence after %d pivots" % self.max_iter
                )
            if self.pivots_since_refresh >= REFRESH_EVERY:
                self._refresh()

            if phase1:
                dB = self._phase1_costs()
                if not np.any(dB):
                    return None  # feasible; hand over to phase 2
                y = dB @ self.Binv
                rc = -(y @ self.A)
            else:
                y = self.cost[self.basis] @ self.Binv
                rc = self.cost - y @ self.A

            elig_inc = ((self.status == _AT_LOWER) | (self.status == _FREE)) \
                & (rc < -TOL_OPT)
            elig_dec = ((self.status == _AT_UPPER) | (self.status == _FREE)) \
                & (rc > TOL_OPT)
            elig = elig_inc | elig_dec
            if not np.any(elig):
                if phase1:
                    return LpSolution(status=INFEASIBLE,
                                      iterations=self.iterations)
                return self._optimal_solution(y, rc)

            if self.bland:
                j = int(np.flatnonzero(elig)[0])
            else:
                scores = np.where(elig, np.abs(rc), -1.0)
                j = int(np.argmax(scores))
            sigma = 1.0 if elig_inc[j] else -1.0

            alpha = self.Binv @ self.A[:, j]
            t, delta, side = self._ratio_test(sigma, alpha, phase1)
            t_self = self.hi[j] - self.lo[j]  # inf when either side open

            r, t_piv = self._pick_leaving(t, delta)
            if t_self <= t_piv:
                step = t_self
                if step == INF:
                    if phase1:
                        raise LpNumericalError(
                            "phase-1 descent without a blocking bound")
                    return self._unbounded(j, sigma, alpha)
                self._apply_step(j, sigma, alpha, step)
                self.status[j] = _AT_UPPER if sigma > 0 else _AT_LOWER
                self.z[j] = self.hi[j] if sigma > 0 else self.lo[j]
            else:
                if t_piv == INF:
                    if phase1:
                        raise LpNumericalError(
                            "phase-1 descent without a blocking bound")
                    return self._unbounded(j, sigma, alpha)
                if abs(alpha[r]) < TOL_PIV:
                    if self.pivots_since_refresh > 0:
                        self._refresh()
                        continue
                    raise LpNumericalError("pivot element below tolerance")
                self._apply_step(j, sigma, alpha, t_piv)
                self._pivot(j, r, alpha, side[r])
                step = t_piv

            if step <= TOL_FEAS:
                self.degenerate_run += 1
                if self.degenerate_run > BLAND_AFTER:
                    self.bland = True
            else:
                self.degenerate_run = 0

            if self.debug and logger.isEnabledFor(logging.DEBUG):
                logger.debug(
                    "it=%d phase=%d enter=%d step=%.3g basis=%s",
                    self.iterations, 1 if phase1 else 2, j, step,
                    self.basis.tolist(),
                )

    def _ratio_test(self, sigma, alpha, phase1):
        basis = self.basis
        zB = self.z[basis]
        loB = self.lo[basis]
        hiB = self.hi[basis]
        delta = -sigma * alpha
        t = np.full(self.m, INF)
        side = np.zeros(self.m, dtype=np.int8)
        up = delta > TOL_PIV
        dn = delta < -TOL_PIV
        if phase1:
            below = zB < loB - TOL_FEAS
            above = zB > hiB + TOL_FEAS
            feas = ~(below | above)
            for mask, bound, s in (
                (below & up, loB, _AT_LOWER),
                (above & dn, hiB, _AT_UPPER),
                (feas & up & np.isfinite(hiB), hiB, _AT_UPPER),
                (feas & dn & np.isfinite(loB), loB, _AT_LOWER),
            ):
                t[mask] = (bound[mask] - zB[mask]) / delta[mask]
                side[mask] = s
        else:
            mask = up & np.isfinite(hiB)
            t[mask] = (hiB[mask] - zB[mask]) / delta[mask]
            side[mask] = _AT_UPPER
            mask = dn & np.isfinite(loB)
            t[mask] = (loB[mask] - zB[mask]) / delta[mask]
            side[mask] = _AT_LOWER
        np.maximum(t, 0.0, out=t)
        return t, delta, side

    def _pick_leaving(self, t, delta):
        if t.size == 0:
            return -1, INF
        t_min = t.min()
        if t_min == INF:
            return -1, INF
        near = t <= t_min + 1e-10 * (1.0 + t_min)
        cand = np.flatnonzero(near)
        if self.bland:
            r = cand[np.argmin(self.basis[cand])]
        else:
            r = cand[np.argmax(np.abs(delta[cand]))]
        return int(r), float(t[r])

    def _apply_step(self, j, sigma, alpha, step):
        if step > 0.0:
            self.z[self.basis] -= sigma * step * alpha
            self.z[j] += sigma * step

    def _pivot(self, j, r, alpha, leave_side):
        w = self.basis[r]
        if self.lo[w] == self.hi[w]:
            self.status[w] = _FIXED
            self.z[w] = self.lo[w]
        else:
            self.status[w] = leave_side
            self.z[w] = self.lo[w] if leave_side == _AT_LOWER else self.hi[w]
        self.basis[r] = j
        self.status[j] = _BASIC
        piv = alpha[r]
        self.Binv[r] /= piv
        rest = np.arange(self.m) != r
        self.Binv[rest] -= np.outer(alpha[rest], self.Binv[r])
        self.pivots_since_refresh += 1

    def _optimal_solution(self, y, rc):
        x = self.z[: self.n].copy()
        return LpSolution(
            status=OPTIMAL,
            x=x,
            objective=float(self.p.c @ x),
            row_duals=y.copy(),
            reduced_costs=rc[: self.n].copy(),
            iterations=self.iterations,
        )

    def _unbounded(self, j, sigma, alpha):
        dz = np.zeros(self.N)
        dz[j] = sigma
        dz[self.basis] = -sigma * alpha
        return LpSolution(
            status=UNBOUNDED,
            x=self.z[: self.n].copy(),
            objective=-INF,
            ray=dz[: self.n].copy(),
            iterations=self.iterations,
        )
