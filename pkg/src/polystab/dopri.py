"""Adaptive Dormand-Prince 5(4) stepper for small non-stiff systems.

States are plain sequences of floats; the systems integrated here have two
components, where list arithmetic is faster than array dispatch.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

__all__ = ["StepSizeUnderflow", "DormandPrince45"]

C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
# fifth- minus fourth-order weights
E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0
ORDER = 5


class StepSizeUnderflow(RuntimeError):
    """The step size fell below the resolution of the independent variable."""

    def __init__(self, msg: str, t: float, y: Sequence[float]):
        super().__init__(msg)
        self.t = t
        self.y = tuple(y)


Fun = Callable[[float, Sequence[float]], Sequence[float]]


class DormandPrince45:
    """One-step-at-a-time integrator towards ``t_bound`` (either direction).

    Parameters
    ----------
    fun : callable
        Right-hand side ``fun(t, y) -> dy/dt``.
    t0, y0 : initial point.
    t_bound : float
        Final value of the independent variable; the last step lands on it exactly.
    rtol, atol : float
        Mixed error tolerance per component.
    max_step : float
        Upper bound on ``|h|``.
    retry_on : tuple of exception types
        Raised from ``fun`` during a trial step, these make the stepper retry
        with a quarter of the step instead of propagating. Anything else
        aborts the trial and leaves the state untouched.
    """

    def __init__(
        self,
        fun: Fun,
        t0: float,
        y0: Sequence[float],
        t_bound: float,
        rtol: float,
        atol: float,
        max_step: float = math.inf,
        first_step: float | None = None,
        retry_on: tuple = (),
    ):
        self.fun = fun
        self.t = float(t0)
        self.y = [float(x) for x in y0]
        self.t_bound = float(t_bound)
        self.rtol = rtol
        self.atol = atol
        self.max_step = max_step
        self.retry_on = retry_on
        self.direction = 1.0 if t_bound >= t0 else -1.0
        self.f = list(fun(self.t, self.y))
        self.n_accepted = 0
        self.n_rejected = 0
        if first_step is None:
            self.h_abs = self._initial_step()
        else:
            self.h_abs = abs(first_step)

    @property
    def finished(self) -> bool:
        return self.t == self.t_bound

    def _norm(self, v: Sequence[float]) -> float:
        return math.sqrt(sum(x * x for x in v) / len(v))

    def _initial_step(self) -> float:
        y, f = self.y, self.f
        scale = [self.atol + abs(x) * self.rtol for x in y]
        d0 = self._norm([a / s for a, s in zip(y, scale)])
        d1 = self._norm([a / s for a, s in zip(f, scale)])
        h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
        h0 = min(h0, abs(self.t_bound - self.t))
        y1 = [a + self.direction * h0 * b for a, b in zip(y, f)]
        try:
            f1 = self.fun(self.t + self.direction * h0, y1)
        except self.retry_on:
            return h0 * 1e-3
        d2 = self._norm([(a - b) / s for a, b, s in zip(f1, f, scale)]) / h0
        if d1 <= 1e-15 and d2 <= 1e-15:
            h1 = max(1e-6, h0 * 1e-3)
        else:
            h1 = (0.01 / max(d1, d2)) ** (1.0 / ORDER)
        return min(100 * h0, h1, self.max_step)

    def _attempt(self, h: float):
        t, y, fun = self.t, self.y, self.fun
        k = [self.f]
        for i in range(1, 7):
            yi = [y[m] + h * sum(a * kk[m] for a, kk in zip(A[i], k)) for m in range(len(y))]
            k.append(list(fun(t + C[i] * h, yi)))
        # stage 7 sits at the new point (FSAL)
        y_new = yi
        err = [h * sum(e * kk[m] for e, kk in zip(E, k)) for m in range(len(y))]
        scale = [self.atol + self.rtol * max(abs(a), abs(b)) for a, b in zip(y, y_new)]
        err_norm = self._norm([e / s for e, s in zip(err, scale)])
        return y_new, k[6], err_norm

    def step(self) -> None:
        """Advance by one accepted step."""
        if self.finished:
            raise RuntimeError("integration already reached t_bound")
        rejected = False
        while True:
            min_step = 10.0 * math.ulp(max(abs(self.t), 1e-300))
            h_abs = min(self.h_abs, self.max_step)
            if h_abs < min_step:
                raise StepSizeUnderflow(f"step size underflow at t = {self.t}", self.t, self.y)
            t_new = self.t + self.direction * h_abs
            if self.direction * (t_new - self.t_bound) >= 0:
                t_new = self.t_bound
            h = t_new - self.t
            h_abs = abs(h)
            try:
                y_new, f_new, err = self._attempt(h)
            except self.retry_on:
                self.h_abs = 0.25 * h_abs
                self.n_rejected += 1
                rejected = True
                continue
            if err <= 1.0:
                factor = MAX_FACTOR if err == 0 else min(MAX_FACTOR, SAFETY * err ** (-1.0 / ORDER))
                if rejected:
                    factor = min(1.0, factor)
                self.h_abs = h_abs * factor
                self.t = t_new
                self.y = y_new
                self.f = f_new
                self.n_accepted += 1
                return
            self.h_abs = h_abs * max(MIN_FACTOR, SAFETY * err ** (-1.0 / ORDER))
            self.n_rejected += 1
            rejected = True
