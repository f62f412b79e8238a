"""Restricted-cover optimization: minimal-cost covers with diameters in a band.

Two optimizers: an exact dynamic program over interval covers drawn from a
geometric diameter menu (1-D), and an exact recursion over dyadic-cube
covers anchored at the bounding box (any ambient dimension).  Both return
the full cover, not just its cost, so admissibility and coverage can be
checked directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    MAX_DEPTH,
    MIN_SCALE,
    DepthLimitError,
    PointCloud,
    ScaleRange,
    ValidationError,
    check_theta,
)


def guarded_ceil(x: float) -> int:
    """Ceiling with a tolerance for values sitting just above an integer."""
    nearest = round(x)
    if abs(x - nearest) < 1e-9 * max(1.0, abs(x)):
        return max(int(nearest), 1)
    return max(int(math.ceil(x)), 1)


def cover_cost(diameters, s: float) -> float:
    """Canonical cost sum(d**s): exactly-rounded, order-independent."""
    return math.fsum(d**s for d in diameters)


@dataclass(frozen=True)
class CoverSet:
    """One covering set: an interval in R or an axis-aligned cube in R^n."""

    kind: str
    center: tuple[float, ...]
    side: float
    diameter: float

    def __post_init__(self) -> None:
        if self.kind not in ("interval", "cube"):
            raise ValidationError(f"unknown cover-set kind {self.kind!r}")
        if self.diameter <= 0.0:
            raise ValidationError("cover sets need positive diameter")
        n = len(self.center)
        expected = self.side * math.sqrt(n)
        if abs(self.diameter - expected) > 1e-9 * expected:
            raise ValidationError(
                f"diameter {self.diameter} inconsistent with side {self.side} in R^{n}"
            )

    def contains(self, point, tol: float = 1e-12) -> bool:
        half = self.side / 2.0 + tol
        return all(abs(c - x) <= half for c, x in zip(self.center, point))


@dataclass(frozen=True)
class RestrictedCover:
    """A finite cover with every diameter inside the admissible band.

    effective_lo / effective_hi record the band actually enforced; the
    dyadic optimizer may snap a band narrower than one dyadic step down to
    the single admissible level just below hi.
    """

    sets: tuple[CoverSet, ...]
    range: ScaleRange
    s: float
    cost: float
    effective_lo: float
    effective_hi: float

    @classmethod
    def build(
        cls,
        sets,
        rng: ScaleRange,
        s: float,
        effective_lo: float | None = None,
        effective_hi: float | None = None,
    ) -> "RestrictedCover":
        sets = tuple(sets)
        lo = rng.lo if effective_lo is None else effective_lo
        hi = rng.hi if effective_hi is None else effective_hi
        return cls(
            sets=sets,
            range=rng,
            s=s,
            cost=cover_cost((c.diameter for c in sets), s),
            effective_lo=lo,
            effective_hi=hi,
        )

    def __post_init__(self) -> None:
        if not self.sets:
            raise ValidationError("a cover needs at least one set")
        for c in self.sets:
            if c.diameter < self.effective_lo * (1.0 - 1e-12) or c.diameter > self.effective_hi * (1.0 + 1e-12):
                raise ValidationError(
                    f"set diameter {c.diameter} outside admissible band "
                    f"[{self.effective_lo}, {self.effective_hi}]"
                )
        expected = cover_cost((c.diameter for c in self.sets), self.s)
        if abs(self.cost - expected) > 1e-10 * max(1.0, expected):
            raise ValidationError(f"cost {self.cost} != sum of diameters**s {expected}")

    def diameters(self) -> tuple[float, ...]:
        return tuple(c.diameter for c in self.sets)

    def covers(self, points: PointCloud, tol: float = 1e-12) -> bool:
        return all(
            any(c.contains(p, tol) for c in self.sets) for p in points.points
        )


def geometric_menu(lo: float, hi: float, size: int) -> tuple[float, ...]:
    """size log-uniform diameters spanning [lo, hi], endpoints included."""
    if size < 2:
        raise ValidationError("scale menu needs at least 2 entries")
    if not 0.0 < lo <= hi:
        raise ValidationError(f"need 0 < lo <= hi, got [{lo}, {hi}]")
    if hi / lo < 1.0 + 1e-12:
        return (hi,)
    ratio = (hi / lo) ** (1.0 / (size - 1))
    menu = [lo * ratio**i for i in range(size)]
    menu[0], menu[-1] = lo, hi
    return tuple(sorted(set(menu)))


class _IntervalDP:
    """Left-to-right DP over sorted points with a fixed diameter menu.

    State i = first uncovered point; transition places one interval of
    each menu diameter starting at point i.  An optimal interval cover can
    be shifted so each interval starts at the leftmost point it covers, so
    this explores a superset of canonical optimal covers.  The jump table
    is s-independent, so repeated cost evaluations (bisection on s) reuse
    it.
    """

    def __init__(self, xs: tuple[float, ...], menu: tuple[float, ...]):
        self.xs = xs
        self.menu = menu
        arr = np.asarray(xs)
        self.jump = [
            np.searchsorted(arr, arr + d, side="right").tolist() for d in menu
        ]

    def solve(self, s: float) -> tuple[float, list[int]]:
        """Return (optimal cost, chosen menu index per DP state).

        Ties broken toward fewer sets, then toward larger diameters.
        """
        n = len(self.xs)
        powers = [d**s for d in self.menu]
        cost = [0.0] * (n + 1)
        count = [0] * (n + 1)
        choice = [-1] * (n + 1)
        for i in range(n - 1, -1, -1):
            best = None
            for j in range(len(self.menu) - 1, -1, -1):
                nxt = self.jump[j][i]
                cand = (cost[nxt] + powers[j], count[nxt] + 1, -self.menu[j])
                if best is None or cand < best:
                    best = cand
                    choice[i] = j
            cost[i], count[i] = best[0], best[1]
        return cost[0], choice

    def cost(self, s: float) -> float:
        return self.solve(s)[0]


def optimal_cover_1d(
    points: PointCloud, rng: ScaleRange, s: float, scale_menu_size: int = 16
) -> RestrictedCover:
    """Minimal-cost interval cover with diameters from a geometric menu.

    Exact over the menu; relative to the continuum optimum over interval
    covers the cost is within a factor (hi/lo)**(s/(menu-1)).
    """
    if points.dimension_n != 1:
        raise ValidationError("optimal_cover_1d needs a 1-D point cloud")
    if not 0.0 <= s <= 1.0:  # s = 0 minimizes the set count
        raise ValidationError(f"s must lie in [0, 1], got {s}")
    if rng.theta == 0.0:
        raise ValidationError("theta=0 has no finite menu; use optimal_cover_dyadic")
    xs = points.coords(0)
    menu = geometric_menu(rng.lo, rng.hi, scale_menu_size)
    dp = _IntervalDP(xs, menu)
    _, choice = dp.solve(s)
    sets = []
    i = 0
    while i < len(xs):
        d = menu[choice[i]]
        sets.append(
            CoverSet(kind="interval", center=(xs[i] + d / 2.0,), side=d, diameter=d)
        )
        i = dp.jump[choice[i]][i]
    return RestrictedCover.build(sets, rng, s)


def _dyadic_depth_range(
    rng: ScaleRange, scale: float, n: int
) -> tuple[int, int]:
    """Admissible dyadic levels [j_top, j_bot] for diameters scale*sqrt(n)*2**-j."""
    root_diam = scale * math.sqrt(n)
    lo, hi = rng.lo, rng.hi

    j_top = 0
    if root_diam > hi:
        j_top = max(0, int(math.ceil(math.log2(root_diam / hi) - 1e-9)))
    while root_diam * 2.0**-j_top > hi * (1.0 + 1e-12):
        j_top += 1
    if j_top > MAX_DEPTH:
        raise DepthLimitError(
            f"covering at diameter <= {hi} needs dyadic level {j_top} > {MAX_DEPTH}"
        )

    floor_lo = max(lo, MIN_SCALE)
    j_bot = int(math.floor(math.log2(root_diam / floor_lo) + 1e-9))
    j_bot = min(j_bot, MAX_DEPTH)
    # A band narrower than one dyadic step contains no dyadic diameter:
    # snap to the single level just below hi.
    j_bot = max(j_bot, j_top)
    return j_top, j_bot


def optimal_cover_dyadic(
    points: PointCloud, rng: ScaleRange, s: float
) -> RestrictedCover:
    """Minimal-cost cover by dyadic cubes anchored at the bounding box.

    Exact over the dyadic family: cost(cube) = min(diam**s, sum over
    occupied children), evaluated bottom-up over levels whose diameters
    lie in the band.  theta=0 means unrestricted: levels run down to
    MAX_DEPTH / MIN_SCALE, whichever binds first.
    """
    n = points.dimension_n
    if not 0.0 <= s <= n:  # s = 0 minimizes the set count
        raise ValidationError(f"s must lie in [0, {n}], got {s}")
    mins, maxs = points.bbox
    scale = max(hi - lo for lo, hi in zip(mins, maxs))
    if scale <= 0.0:
        scale = 1.0
    j_top, j_bot = _dyadic_depth_range(rng, scale, n)

    def diam(level: int) -> float:
        return scale * math.sqrt(n) * 2.0**-level

    # Integer cell coordinates at the deepest level; ancestors via shifts
    # so the hierarchy is exact.
    top = 2**j_bot
    scaled = (np.asarray(points.points) - np.asarray(mins)) / scale
    grid_idx = np.minimum((scaled * top).astype(np.int64), top - 1)
    cells_bot = [tuple(map(int, row)) for row in grid_idx]

    def solve(level: int, ids: list[int]) -> tuple[float, int, list[tuple[int, tuple[int, ...]]]]:
        cell = tuple(c >> (j_bot - level) for c in cells_bot[ids[0]])
        take = (diam(level) ** s, 1, [(level, cell)])
        if level == j_bot:
            return take
        groups: dict[tuple[int, ...], list[int]] = {}
        shift = j_bot - level - 1
        for i in ids:
            groups.setdefault(tuple(c >> shift for c in cells_bot[i]), []).append(i)
        split_cost, split_count, split_sets = 0.0, 0, []
        for key in sorted(groups):
            c_cost, c_count, c_sets = solve(level + 1, groups[key])
            split_cost += c_cost
            split_count += c_count
            split_sets.extend(c_sets)
        # ties go to the single larger cube
        if (take[0], take[1]) <= (split_cost, split_count):
            return take
        return split_cost, split_count, split_sets

    groups_top: dict[tuple[int, ...], list[int]] = {}
    shift = j_bot - j_top
    for i in range(len(points.points)):
        groups_top.setdefault(
            tuple(c >> shift for c in cells_bot[i]), []
        ).append(i)
    chosen: list[tuple[int, tuple[int, ...]]] = []
    for key in sorted(groups_top):
        chosen.extend(solve(j_top, groups_top[key])[2])

    sets = []
    for level, cell in chosen:
        side = scale * 2.0**-level
        center = tuple(lo + (c + 0.5) * side for c, lo in zip(cell, mins))
        sets.append(
            CoverSet(
                kind="interval" if n == 1 else "cube",
                center=center,
                side=side,
                diameter=diam(level),
            )
        )
    return RestrictedCover.build(
        sets, rng, s, effective_lo=min(rng.lo, diam(j_bot)), effective_hi=rng.hi
    )


def refine_cover(
    cover: RestrictedCover, phi: float, new_delta: float, s: float | None = None
) -> RestrictedCover:
    """Refit a cover to the narrower band of a larger restriction parameter.

    Sets already inside [new_delta**(1/phi), new_delta] are kept; larger
    sets are tiled by coordinate cubes of diameter new_delta, at most
    4**n * n**(n/2) * |U|**n * new_delta**(-n) pieces per set.
    """
    check_theta(phi)
    if phi <= cover.range.theta:
        raise ValidationError(
            f"need phi > cover theta, got phi={phi}, theta={cover.range.theta}"
        )
    new_rng = ScaleRange(new_delta, phi)
    if new_rng.lo > cover.effective_lo * (1.0 + 1e-9):
        raise ValidationError(
            "new band's lower end exceeds the old one; refinement only shrinks "
            "the upper end (derive new_delta from the same underlying delta)"
        )
    n = len(cover.sets[0].center)
    new_hi = new_rng.hi
    side = new_hi / math.sqrt(n)
    out = []
    for c in cover.sets:
        if c.diameter <= new_hi * (1.0 + 1e-12):
            out.append(c)
            continue
        pieces_per_axis = guarded_ceil(c.side / side)
        starts = [x - c.side / 2.0 for x in c.center]

        def emit(axis: int, center: list[float]) -> None:
            if axis == n:
                out.append(
                    CoverSet(
                        kind="interval" if n == 1 else "cube",
                        center=tuple(center),
                        side=side,
                        diameter=new_hi,
                    )
                )
                return
            for i in range(pieces_per_axis):
                emit(axis + 1, center + [starts[axis] + (i + 0.5) * side])

        emit(0, [])
    return RestrictedCover.build(
        out,
        new_rng,
        cover.s if s is None else s,
        effective_lo=min(new_rng.lo, cover.effective_lo),
    )


def fp_witness_cover(
    p: float, delta: float, theta: float, s: float
) -> RestrictedCover:
    """Explicit near-optimal cover of {0} u {1/k**p} with diameters in [delta, delta**theta].

    M = ceil(delta**(-(s + theta(1-s))/(p+1))) intervals of length delta
    centred on the M largest points, plus intervals of length delta**theta
    tiling [0, M**-p].  Its cost stays bounded iff s >= theta/(p+theta).
    """
    if not p > 0.0:
        raise ValidationError(f"decay exponent p must be positive, got {p}")
    if not 0.0 < s < 1.0:
        raise ValidationError(f"s must lie in (0, 1), got {s}")
    check_theta(theta)
    if theta == 0.0:
        raise ValidationError("witness cover needs theta > 0")
    rng = ScaleRange(delta**theta, theta)  # band [delta, delta**theta]
    m_count = guarded_ceil(delta ** (-(s + theta * (1.0 - s)) / (p + 1.0)))
    sets = [
        CoverSet(
            kind="interval", center=(k ** (-p),), side=delta, diameter=delta
        )
        for k in range(1, m_count + 1)
    ]
    tail_len = m_count ** (-p)
    big = delta**theta
    for j in range(guarded_ceil(tail_len / big)):
        sets.append(
            CoverSet(
                kind="interval", center=((j + 0.5) * big,), side=big, diameter=big
            )
        )
    return RestrictedCover.build(sets, rng, s)
