"""Numerical verification of candidate solutions on grids.

The residual of u_xy + alpha u_x + beta u_y + gamma u_x u_y is evaluated
with second-order dual numbers, so there is no finite-difference error in
the check itself: any residual is a genuine property of the evaluator.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .determining import ThomasParams
from .hyperdual import HyperDual, exp_, log_


class VerificationError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    xmin: float = -2.0
    xmax: float = 2.0
    nx: int = 50
    ymin: float = -2.0
    ymax: float = 2.0
    ny: int = 50

    def points(self):
        for i in range(self.nx):
            x = self.xmin + (self.xmax - self.xmin) * i / (self.nx - 1)
            for j in range(self.ny):
                y = self.ymin + (self.ymax - self.ymin) * j / (self.ny - 1)
                yield x, y


def residual(u, x: float, y: float, p: ThomasParams) -> float:
    """PDE residual of the evaluator u at one point, via dual numbers."""
    alpha, beta, gamma = p.floats()
    val = u(HyperDual.x_at(x), HyperDual.y_at(y))
    if not isinstance(val, HyperDual):
        val = HyperDual(float(val))
    return val.dxy + alpha * val.dx + beta * val.dy + gamma * val.dx * val.dy


@dataclass(frozen=True)
class GridReport:
    max_residual: float
    worst_point: tuple
    evaluated: int
    skipped: int

    def __str__(self):
        return "max |residual| = %.3e at (%.4f, %.4f) over %d points (%d outside domain)" % (
            self.max_residual,
            self.worst_point[0],
            self.worst_point[1],
            self.evaluated,
            self.skipped,
        )


def residual_grid(family, p: ThomasParams = None, grid: GridSpec = None) -> GridReport:
    """Max |residual| of a family over the domain-filtered grid."""
    if p is None:
        p = family.params
    if grid is None:
        grid = GridSpec()
    in_domain = getattr(family, "domain", None) or (lambda x, y: True)
    worst = -1.0
    worst_pt = (math.nan, math.nan)
    evaluated = skipped = 0
    for x, y in grid.points():
        if not in_domain(x, y):
            skipped += 1
            continue
        r = abs(residual(family, x, y, p))
        evaluated += 1
        if r > worst:
            worst, worst_pt = r, (x, y)
    worst = max(worst, 0.0)
    if evaluated == 0:
        raise VerificationError("domain excludes every grid point")
    return GridReport(worst, worst_pt, evaluated, skipped)


def oracle_solution(p: ThomasParams, modes):
    """u = (1/gamma) log(sum_i c_i exp(lambda_i x + mu_i y)) with each
    exponent pair on the dispersion locus lambda*mu + alpha*lambda +
    beta*mu = 0 and every c_i > 0.  Exact for any finite positive mix."""
    alpha, beta, gamma = p.floats()
    checked = []
    for lam, c in modes:
        lam = float(lam)
        c = float(c)
        if c <= 0:
            raise VerificationError("mode weights must be positive")
        if lam + beta == 0:
            raise VerificationError("lambda = -beta is off the dispersion locus")
        mu = -alpha * lam / (lam + beta)
        checked.append((lam, mu, c))

    def u(x, y):
        total = 0.0
        for lam, mu, c in checked:
            total = total + c * exp_(lam * x + mu * y)
        return log_(total) / gamma

    u.modes = tuple(checked)
    return u


def oracle_solutions(p: ThomasParams, count: int = 3, rng: random.Random = None):
    """Independent exact solutions from the exponential-mix construction."""
    if rng is None:
        rng = random.Random(20260815)
    alpha, beta, gamma = p.floats()
    out = []
    for k in range(count):
        n_modes = 1 + k % 3
        modes = []
        seen = set()
        while len(modes) < n_modes:
            lam = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
            if float(lam) + beta == 0 or lam in seen:
                continue
            seen.add(lam)
            modes.append((float(lam), rng.uniform(0.2, 3.0)))
        out.append(oracle_solution(p, modes))
    return out
