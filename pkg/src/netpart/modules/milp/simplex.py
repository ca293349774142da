from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.netpart.config import Config
from src.netpart.logger import logging
from src.netpart.modules.milp.model import MipModel, Sense, StandardForm


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    FAILED = "failed"


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    values: np.ndarray
    objective: float
    iterations: int = 0
    perturbed: bool = False

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def solve_lp(model: MipModel) -> LpSolution:
    """Solve the continuous relaxation of `model` (binaries relaxed to [0, 1])."""
    return solve_standard_form(model.to_standard_form())


def solve_standard_form(form: StandardForm, lb: np.ndarray | None = None,
                        ub: np.ndarray | None = None, perturbation: float | None = None) -> LpSolution:
    """Solve `form` within [lb, ub].

    A solve that fails its residual check is repeated once with bounds and
    right-hand sides shifted by `perturbation` (Config.lp_perturbation by
    default); the shift is removed before the final check.
    """
    lb = form.lb if lb is None else lb
    ub = form.ub if ub is None else ub
    n = form.A.shape[1]
    if np.any(lb > ub + Config.feasibility_tol):
        return LpSolution(LpStatus.INFEASIBLE, np.zeros(n), float("inf"))
    solution = _BoundedSimplex(form, lb, ub).run()
    if solution.status is not LpStatus.FAILED:
        return solution
    shift = Config.lp_perturbation if perturbation is None else perturbation
    logging.warning(f"simplex failed after {solution.iterations} iterations, retrying with perturbation {shift:g}")
    retry = _BoundedSimplex(form, lb, ub, perturbation=shift).run()
    return LpSolution(retry.status, retry.values, retry.objective,
                      solution.iterations + retry.iterations, perturbed=True)


class _BoundedSimplex:
    """Two-phase primal simplex on a dense tableau with bounded variables.

    Columns are [structural | slack per row | artificial per unmatched row].
    Nonbasic variables sit at one of their bounds. Pricing is Dantzig's rule
    until `bland_stall_threshold` consecutive degenerate pivots, then Bland's
    rule for the rest of the solve. The tableau is rebuilt from the original
    rows every `refresh_interval` pivots and before the optimal point is
    accepted.
    """

    def __init__(self, form: StandardForm, lb: np.ndarray, ub: np.ndarray, perturbation: float = 0.0):
        self.form = form
        A, b = form.A, form.b
        m, n = A.shape
        self.m, self.n = m, n
        self.true_lb = np.asarray(lb, dtype=float)
        self.true_ub = np.asarray(ub, dtype=float)
        self.perturbed = perturbation > 0.0

        if self.perturbed:
            rng = np.random.default_rng(0)
            lb = self.true_lb - perturbation * rng.uniform(0.1, 1.0, size=n)
            ub = self.true_ub + perturbation * rng.uniform(0.1, 1.0, size=n)
            direction = np.array([1.0 if s is Sense.LE else -1.0 if s is Sense.GE else rng.choice((-1.0, 1.0))
                                  for s in form.senses])
            b = b + perturbation * direction * rng.uniform(0.1, 1.0, size=m)

        x_struct = np.where(np.abs(lb) <= np.abs(ub), lb, ub).astype(float)
        residual = b - A @ x_struct if m else np.zeros(0)

        slack_lb = np.array([0.0 if s is not Sense.GE else -np.inf for s in form.senses])
        slack_ub = np.array([0.0 if s is not Sense.LE else np.inf for s in form.senses])

        basis = np.empty(m, dtype=int)
        art_rows, art_sign = [], []
        for i, sense in enumerate(form.senses):
            if sense is Sense.LE and residual[i] >= 0.0:
                basis[i] = n + i
            elif sense is Sense.GE and residual[i] <= 0.0:
                basis[i] = n + i
            else:
                basis[i] = -1
                art_rows.append(i)
                art_sign.append(1.0 if residual[i] >= 0.0 else -1.0)
        n_art = len(art_rows)
        width = n + m + n_art
        self.width = width
        self.art_start = n + m

        M = np.zeros((m, width + 1))
        M[:, :n] = A
        M[np.arange(m), n + np.arange(m)] = 1.0
        row_scale = np.ones(m)
        for k, (i, sign) in enumerate(zip(art_rows, art_sign)):
            M[i, n + m + k] = sign
            basis[i] = n + m + k
            row_scale[i] = sign
        M[:, width] = b
        self.original = M
        # B is diagonal with entries +-1, so B^-1 M is a row sign flip
        self.T = M * row_scale[:, None]
        self.basis = basis

        self.lb = np.concatenate([lb, slack_lb, np.zeros(n_art)]).astype(float)
        self.ub = np.concatenate([ub, slack_ub, np.full(n_art, np.inf)]).astype(float)
        self.x = np.zeros(width)
        self.x[:n] = x_struct
        self.is_basic = np.zeros(width, dtype=bool)
        self.is_basic[basis] = True
        self.at_upper = np.zeros(width, dtype=bool)
        self.at_upper[:n] = x_struct == ub
        self.at_upper[:n] &= ~(x_struct == lb)
        self.at_upper[n:n + m] = slack_lb == -np.inf
        self.at_upper[self.is_basic] = False

        self.tol = Config.feasibility_tol * 10 * max(
            1.0, float(np.abs(A).max()) if A.size else 1.0, float(np.abs(form.b).max()) if m else 1.0)
        self.iterations = 0
        self.max_iterations = Config.lp_iteration_factor * (m + n) + 1000
        self.bland = False
        self.stall = 0
        self._refresh_basic_values()

    # -- bookkeeping ---------------------------------------------------------

    def _refresh_basic_values(self) -> None:
        nonbasic = self.x.copy()
        nonbasic[self.basis] = 0.0
        self.x[self.basis] = self.T[:, -1] - self.T[:, :-1] @ nonbasic

    def _reinvert(self) -> bool:
        """Rebuild B^-1 M from the original rows; False when the basis is singular."""
        if self.m == 0:
            return True
        try:
            T = np.linalg.solve(self.original[:, self.basis], self.original)
        except np.linalg.LinAlgError:
            logging.warning("simplex basis is singular")
            return False
        if not np.all(np.isfinite(T)):
            logging.warning("simplex basis is numerically singular")
            return False
        T[:, self.basis] = np.eye(self.m)
        self.T = T
        self._refresh_basic_values()
        return True

    def _basic_within_bounds(self) -> bool:
        xb = self.x[self.basis]
        return bool(np.all(xb >= self.lb[self.basis] - self.tol) and np.all(xb <= self.ub[self.basis] + self.tol))

    def _reduced_costs(self, cost: np.ndarray) -> np.ndarray:
        d = cost - cost[self.basis] @ self.T[:, :-1] if self.m else cost.copy()
        d[self.basis] = 0.0
        return d

    def _pivot(self, r: int, j: int) -> None:
        T = self.T
        T[r] /= T[r, j]
        column = T[:, j].copy()
        column[r] = 0.0
        T -= np.outer(column, T[r])
        T[:, j] = 0.0
        T[r, j] = 1.0

    def _ratio_test(self, j: int, direction: float) -> tuple[int | None, float, np.ndarray]:
        """Leaving row, step length and basic direction for entering column j.

        Two passes: the largest step allowed with bounds relaxed by
        `harris_tol`, then the largest pivot among rows blocking within it.
        """
        piv_tol = Config.pivot_tol
        alpha = self.T[:, j]
        delta = -direction * alpha
        if self.m == 0:
            return None, np.inf, delta
        xb = self.x[self.basis]
        lbB, ubB = self.lb[self.basis], self.ub[self.basis]
        dec = (delta < -piv_tol) & np.isfinite(lbB)
        inc = (delta > piv_tol) & np.isfinite(ubB)
        exact = np.full(self.m, np.inf)
        exact[dec] = (xb[dec] - lbB[dec]) / -delta[dec]
        exact[inc] = (ubB[inc] - xb[inc]) / delta[inc]
        np.maximum(exact, 0.0, out=exact)
        if not np.isfinite(exact.min()):
            return None, np.inf, delta

        if self.bland:
            t = exact.min()
            ties = np.flatnonzero(exact <= t + 1e-12)
            r = int(ties[np.argmin(self.basis[ties])])
            return r, float(exact[r]), delta

        relaxed = np.full(self.m, np.inf)
        relaxed[dec] = (xb[dec] - lbB[dec] + Config.harris_tol) / -delta[dec]
        relaxed[inc] = (ubB[inc] - xb[inc] + Config.harris_tol) / delta[inc]
        np.maximum(relaxed, 0.0, out=relaxed)
        ties = np.flatnonzero(exact <= relaxed.min())
        r = int(ties[np.argmax(np.abs(alpha[ties]))])
        return r, float(exact[r]), delta

    # -- main loop -----------------------------------------------------------

    def _eligible(self, d: np.ndarray, movable: np.ndarray) -> np.ndarray:
        opt_tol = Config.optimality_tol
        return np.flatnonzero(movable & ~self.is_basic & (
            (~self.at_upper & (d < -opt_tol)) | (self.at_upper & (d > opt_tol))))

    def _iterate(self, cost: np.ndarray) -> LpStatus | None:
        """Run simplex iterations for `cost`; None means optimal for this phase."""
        d = self._reduced_costs(cost)
        movable = (self.ub - self.lb) > Config.feasibility_tol
        since_refresh = 0
        while True:
            if self.iterations >= self.max_iterations:
                logging.warning(f"simplex iteration cap {self.max_iterations} reached")
                return LpStatus.FAILED
            if since_refresh >= Config.refresh_interval:
                if not self._reinvert():
                    return LpStatus.FAILED
                d = self._reduced_costs(cost)
                since_refresh = 0

            eligible = self._eligible(d, movable)
            if eligible.size == 0:
                if since_refresh == 0:
                    return None
                if not self._reinvert():
                    return LpStatus.FAILED
                d = self._reduced_costs(cost)
                since_refresh = 0
                eligible = self._eligible(d, movable)
                if eligible.size == 0:
                    return None
            j = int(eligible[0]) if self.bland else int(eligible[np.argmax(np.abs(d[eligible]))])
            direction = -1.0 if self.at_upper[j] else 1.0

            r, t_row, delta = self._ratio_test(j, direction)
            t_flip = self.ub[j] - self.lb[j]
            if not np.isfinite(t_row) and not np.isfinite(t_flip):
                return LpStatus.UNBOUNDED
            self.iterations += 1
            since_refresh += 1

            if r is None or t_flip <= t_row:
                self.x[j] = self.ub[j] if direction > 0 else self.lb[j]
                self.at_upper[j] = direction > 0
                self.x[self.basis] += delta * t_flip
                self.stall = 0
                continue

            leaving = int(self.basis[r])
            to_upper = bool(delta[r] > 0)
            self.x[self.basis] += delta * t_row
            self.x[j] += direction * t_row
            self.x[leaving] = self.ub[leaving] if to_upper else self.lb[leaving]
            self.at_upper[leaving] = to_upper
            self.at_upper[j] = False
            self.is_basic[leaving] = False
            self.is_basic[j] = True
            self.basis[r] = j
            self._pivot(r, j)
            d = d - d[j] * self.T[r, :-1]
            d[j] = 0.0

            if t_row <= 1e-12:
                self.stall += 1
                if not self.bland and self.stall >= Config.bland_stall_threshold:
                    logging.debug("simplex stalled, switching to Bland's rule")
                    self.bland = True
            else:
                self.stall = 0

    def _remove_perturbation(self) -> bool:
        """Restore the true bounds and rhs on the final basis; False if it is no longer primal feasible."""
        n = self.n
        self.original[:, -1] = self.form.b
        self.lb[:n], self.ub[:n] = self.true_lb, self.true_ub
        nonbasic = ~self.is_basic[:n]
        self.x[:n][nonbasic] = np.where(self.at_upper[:n], self.true_ub, self.true_lb)[nonbasic]
        self.perturbed = False
        return self._reinvert() and self._basic_within_bounds()

    def run(self) -> LpSolution:
        n, m = self.n, self.m
        form = self.form
        scale = max(1.0, float(np.abs(form.b).max()) if m else 1.0)

        if self.width > self.art_start:
            phase1 = np.zeros(self.width)
            phase1[self.art_start:] = 1.0
            status = self._iterate(phase1)
            if status is not None:
                return self._finish(LpStatus.FAILED if status is LpStatus.UNBOUNDED else status)
            if not self._reinvert():
                return self._finish(LpStatus.FAILED)
            if self.x[self.art_start:].sum() > Config.feasibility_tol * scale:
                return self._finish(LpStatus.INFEASIBLE)
            self.ub[self.art_start:] = 0.0
            self.x[self.art_start:][~self.is_basic[self.art_start:]] = 0.0

        phase2 = np.zeros(self.width)
        phase2[:n] = form.c
        status = self._iterate(phase2)
        if status is not None:
            return self._finish(status)

        if self.perturbed:
            shifted = self.x[:n].copy()
            if not self._remove_perturbation():
                logging.debug("perturbed basis is infeasible for the true bounds, keeping the shifted point")
                return self._finish(LpStatus.OPTIMAL, shifted)
            status = self._iterate(phase2)
            if status is not None:
                return self._finish(status)

        # resume on a freshly factored basis when drift moved the point
        if not self._reinvert():
            return self._finish(LpStatus.FAILED)
        if not self._basic_within_bounds():
            logging.warning("simplex basis drifted out of bounds")
            return self._finish(LpStatus.FAILED)
        status = self._iterate(phase2)
        return self._finish(LpStatus.OPTIMAL if status is None else status)

    def _finish(self, status: LpStatus, values: np.ndarray | None = None) -> LpSolution:
        n = self.n
        if values is None:
            self._refresh_basic_values()
            values = self.x[:n]
        x = values.copy()
        if status is not LpStatus.OPTIMAL:
            return LpSolution(status, x, float("inf") if status is LpStatus.INFEASIBLE else float("nan"),
                              self.iterations)
        form, tol = self.form, self.tol
        lb, ub = self.true_lb, self.true_ub
        if np.any(x < lb - tol) or np.any(x > ub + tol):
            logging.error("simplex returned a point outside variable bounds")
            return LpSolution(LpStatus.FAILED, x, float("nan"), self.iterations)
        x = np.clip(x, lb, ub)
        if self.m:
            gap = form.A @ x - form.b
            for i, sense in enumerate(form.senses):
                if (sense is Sense.LE and gap[i] > tol) or (sense is Sense.GE and gap[i] < -tol) \
                        or (sense is Sense.EQ and abs(gap[i]) > tol):
                    logging.error(f"simplex solution violates row {i} by {gap[i]:.3e}")
                    return LpSolution(LpStatus.FAILED, x, float("nan"), self.iterations)
        return LpSolution(LpStatus.OPTIMAL, x, float(form.c @ x + form.offset), self.iterations)
