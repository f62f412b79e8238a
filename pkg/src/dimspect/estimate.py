"""Dimension estimation from restricted-cover costs.

Per scale delta the critical exponent s* is the root of
optimal-cover-cost(s) = threshold; the cost is strictly decreasing in s
(all diameters < 1) so bisection finds it.  Per theta the finite-scale
drift of s* is modelled as A + B/log(1/delta) and regressed out across
the delta sequence; the lower/upper estimates are the min/max of the
drift-corrected values over the two smallest admissible deltas, a finite
surrogate for the "some delta" vs "all small delta" quantifiers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .core import (
    DimensionSpectrum,
    PointCloud,
    ScaleRange,
    ScaleRangeTooDeepError,
    SpectrumSample,
    ValidationError,
    check_theta,
)
from .covers import _IntervalDP, geometric_menu, guarded_ceil, optimal_cover_dyadic

BISECTION_TOL = 1e-3
TRUNCATION_SAFETY = 4


@dataclass(frozen=True)
class CriticalExponent:
    """Root of cost(s) = threshold at one (delta, theta) cell."""

    delta: float
    theta: float
    s_star: float
    cost_at_s_star: float


def _cost_function(points: PointCloud, rng: ScaleRange, scale_menu_size: int):
    if points.dimension_n == 1 and rng.theta > 0.0:
        dp = _IntervalDP(
            points.coords(0), geometric_menu(rng.lo, rng.hi, scale_menu_size)
        )
        return dp.cost
    return lambda s: optimal_cover_dyadic(points, rng, s).cost


def critical_exponent(
    points: PointCloud,
    delta: float,
    theta: float,
    threshold: float = 1.0,
    scale_menu_size: int = 16,
) -> CriticalExponent:
    """Bisect for the exponent where the optimal restricted-cover cost crosses threshold.

    cost(0) counts the fewest admissible sets, so it is >= 1; if that is
    already <= threshold the root is pinned at 0.  If even s = n leaves the
    cost above threshold the result clamps to n (scale far too coarse for
    the data).  Bisection stops at |ds| <= 1e-3.
    """
    if threshold <= 0.0:
        raise ValidationError(f"threshold must be positive, got {threshold}")
    rng = ScaleRange(delta, check_theta(theta))
    cost = _cost_function(points, rng, scale_menu_size)
    n = float(points.dimension_n)
    if cost(0.0) <= threshold * (1.0 + 1e-12):
        return CriticalExponent(delta, theta, 0.0, cost(0.0))
    if cost(n) > threshold:
        return CriticalExponent(delta, theta, n, cost(n))
    lo, hi = 0.0, n
    while hi - lo > BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if cost(mid) > threshold:
            lo = mid
        else:
            hi = mid
    s_star = 0.5 * (lo + hi)
    return CriticalExponent(delta, theta, s_star, cost(s_star))


def _drift_corrected(cells: list[CriticalExponent]) -> dict[float, float]:
    """Remove the A + B/log(1/delta) finite-scale drift shared by one theta row.

    Returns delta -> corrected value; with a single scale the raw value is
    returned unchanged.
    """
    if len(cells) == 1:
        return {cells[0].delta: cells[0].s_star}
    us = [1.0 / math.log(1.0 / c.delta) for c in cells]
    ss = [c.s_star for c in cells]
    u_mean = math.fsum(us) / len(us)
    s_mean = math.fsum(ss) / len(ss)
    var = math.fsum((u - u_mean) ** 2 for u in us)
    if var <= 0.0:
        return {c.delta: c.s_star for c in cells}
    slope = math.fsum(
        (u - u_mean) * (s - s_mean) for u, s in zip(us, ss)
    ) / var
    return {c.delta: c.s_star - slope * u for c, u in zip(cells, us)}


def estimate_spectrum(
    points: PointCloud,
    grid,
    delta_sequence,
    threshold: float = 1.0,
    scale_menu_size: int = 16,
    max_workers: int = 1,
) -> DimensionSpectrum:
    """Estimated spectrum of a point cloud over a theta grid.

    Per theta > 0, deltas whose band would dip below MIN_SCALE are skipped;
    at least one admissible delta is required.  The theta = 0 entry uses
    unrestricted dyadic covers (floored at MAX_DEPTH) and raw exponents:
    its finite-resolution bias does not follow the drift model.
    """
    thetas = sorted(check_theta(t) for t in grid)
    if len(set(thetas)) != len(thetas):
        raise ValidationError("theta grid contains duplicates")
    deltas = [float(d) for d in delta_sequence]
    if len(deltas) < 3:
        raise ValidationError("need at least 3 deltas")
    if any(not 0.0 < d < 1.0 for d in deltas):
        raise ValidationError("deltas must lie in (0, 1)")
    if any(a <= b for a, b in zip(deltas, deltas[1:])):
        raise ValidationError("delta sequence must be strictly decreasing")

    cells = []
    for theta in thetas:
        for delta in deltas:
            try:
                ScaleRange(delta, theta)
            except ScaleRangeTooDeepError:
                continue
            cells.append((theta, delta))
    solved: dict[tuple[float, float], CriticalExponent] = {}

    def solve(cell: tuple[float, float]) -> CriticalExponent:
        theta, delta = cell
        return critical_exponent(points, delta, theta, threshold, scale_menu_size)

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            for cell, result in zip(cells, pool.map(solve, cells)):
                solved[cell] = result
    else:
        for cell in cells:
            solved[cell] = solve(cell)

    n = float(points.dimension_n)
    samples = []
    for theta in thetas:
        row = [solved[(theta, d)] for d in deltas if (theta, d) in solved]
        if not row:
            raise ScaleRangeTooDeepError(
                f"no admissible delta at theta={theta}: "
                f"delta**(1/theta) falls below MIN_SCALE for every delta"
            )
        if theta == 0.0:
            values = {c.delta: c.s_star for c in row}
        else:
            values = _drift_corrected(row)
        smallest_two = sorted(values)[: min(2, len(values))]
        picked = [values[d] for d in smallest_two]
        lower = max(0.0, min(min(picked), n))
        upper = max(0.0, min(max(picked), n))
        samples.append(SpectrumSample(theta, lower, max(lower, upper), "estimated"))
    return DimensionSpectrum(ambient_n=points.dimension_n, samples=tuple(samples))


def coupled_truncation(p: float, delta: float) -> int:
    """How many sequence points to materialize so truncation outruns scale delta.

    Smallest N with point gap p/N**(p+1) below delta, times a safety
    factor: N = 4 * ceil((p/delta)**(1/(p+1))).  Finite truncations have
    dimension 0 in the delta -> 0 limit, so the truncation must grow as
    delta shrinks.
    """
    if not p > 0.0:
        raise ValidationError(f"decay exponent p must be positive, got {p}")
    if delta >= 1.0:
        return TRUNCATION_SAFETY
    return TRUNCATION_SAFETY * guarded_ceil((p / delta) ** (1.0 / (p + 1.0)))


def fp_points(p: float, delta: float, theta_min: float = 1.0) -> PointCloud:
    """Truncation of {0} u {1/k**p} coupled to the working scale delta.

    A run restricted to theta sees covering scales down to
    delta**(1/theta), where the relevant structure sits at sequence index
    ~ delta**(-1/(p+theta)); the truncation rule (tuned to theta = 1) is
    therefore applied at the equivalent top scale
    delta**((p+1)/(p+theta_min)).  Leave theta_min = 1 for box-counting
    style runs.
    """
    check_theta(theta_min)
    if theta_min <= 0.0:
        raise ValidationError("theta_min must be positive (theta=0 needs no coupling)")
    effective = delta ** ((p + 1.0) / (p + theta_min)) if delta < 1.0 else delta
    count = coupled_truncation(p, effective)
    pts = [(0.0,)] + [(k ** (-p),) for k in range(1, count + 1)]
    return PointCloud.from_points(pts, dimension_n=1)


def flog_points(delta: float) -> PointCloud:
    """Truncation of {0} u {1/log k : k >= 2} with gaps below delta at the cut."""
    if not 0.0 < delta < 1.0:
        raise ValidationError(f"delta must lie in (0, 1), got {delta}")
    k = 2
    while 1.0 / math.log(k) - 1.0 / math.log(k + 1) >= delta:
        k += 1
    count = TRUNCATION_SAFETY * k
    pts = [(0.0,)] + [(1.0 / math.log(j),) for j in range(2, count + 1)]
    return PointCloud.from_points(pts, dimension_n=1)
