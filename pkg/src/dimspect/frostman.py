"""Constructive measure machinery for certifying dimension lower bounds.

build_frostman_measure runs the dyadic cap cascade: start with mass
2**(-m s) per occupied level-m cube, then walk up the levels scaling any
cube above its cap 2**(-level s) back down to it, and finally normalize.
The result is a finite-atom probability measure whose ball masses are
bounded by c * r**s across the admissible radius band, with c measured
empirically.  check_mdp verifies such bounds by sampling; a pass
certifies dimension >= s at sampling confidence.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .core import (
    AtomicMeasure,
    PointCloud,
    RangeTooNarrowError,
    ScaleRange,
    ValidationError,
    check_theta,
)
from .covers import guarded_ceil

# Band ratios below this certify too narrow a range of scales to mean much.
WEAK_BAND_RATIO = 10.0


@dataclass(frozen=True)
class DyadicCascade:
    """Final per-level cube masses of the cap cascade, before normalization.

    Levels run from stop_level (coarsest, diameter <= delta) down to
    base_level (finest, side just below delta**(1/theta)); the cap at
    level j is 2**(-j s).
    """

    s: float
    base_level: int
    stop_level: int
    norm: float
    level_masses: dict

    def cap(self, level: int) -> float:
        return 2.0 ** (-level * self.s)

    def levels(self) -> range:
        return range(self.stop_level, self.base_level + 1)


@dataclass(frozen=True)
class FrostmanResult:
    """A certified measure: mu(B(x, r)) <= constant * r**s on the sampled band."""

    measure: AtomicMeasure
    constant: float
    worst_ratio: float
    cascade: DyadicCascade
    range: ScaleRange


def _ball_mass(atoms, x, r: float) -> float:
    r2 = r * r
    return math.fsum(
        m for p, m in atoms if math.fsum((a - b) ** 2 for a, b in zip(p, x)) <= r2
    )


def _rescale(points: PointCloud):
    mins, maxs = points.bbox
    if all(0.0 <= lo and hi <= 1.0 for lo, hi in zip(mins, maxs)):
        return (0.0,) * points.dimension_n, 1.0
    scale = max(hi - lo for lo, hi in zip(mins, maxs))
    return mins, scale if scale > 0.0 else 1.0


def build_frostman_measure(
    points: PointCloud,
    s: float,
    delta: float,
    theta: float,
    ball_samples: int = 200,
    seed: int = 0,
) -> FrostmanResult:
    """Cap-cascade measure on a point cloud for the band [delta**(1/theta), delta].

    The base dyadic level m is the unique one with
    2**(-m-1) < delta**(1/theta) <= 2**-m; the cascade stops at level m-l
    where l is the largest integer with 2**-(m-l) * sqrt(n) <= delta.  Each
    occupied base cube contributes one atom at its lexicographically least
    point.  The reported constant is twice the worst sampled ratio
    mu(B(x,r)) / r**s (radius form), a safety factor over the probes.
    """
    if not s > 0.0:
        raise ValidationError(f"exponent s must be positive, got {s}")
    check_theta(theta)
    if theta == 0.0:
        raise ValidationError("the cascade needs theta > 0 (theta = 0 is classical)")
    rng = ScaleRange(delta, theta)
    lo = rng.lo
    n = points.dimension_n

    m = int(math.floor(-math.log2(lo)))
    while 2.0**-m < lo:
        m -= 1
    while 2.0 ** -(m + 1) >= lo:
        m += 1
    sqrt_n = math.sqrt(n)
    stop = int(math.ceil(math.log2(sqrt_n / delta)))
    while 2.0**-stop * sqrt_n > delta:
        stop += 1
    while stop > 0 and 2.0 ** -(stop - 1) * sqrt_n <= delta:
        stop -= 1
    stop = max(stop, 0)
    if stop > m:
        raise RangeTooNarrowError(
            f"no dyadic level fits: base level {m} (from delta**(1/theta)) is "
            f"coarser than stop level {stop} (from delta)"
        )

    origin, scale = _rescale(points)
    top = 2**m
    cells: dict[tuple[int, ...], int] = {}
    reps: list[tuple[float, ...]] = []
    cell_idx: list[tuple[int, ...]] = []
    for p in points.points:  # lexicographic order: first point per cube is least
        idx = tuple(
            min(int((c - o) / scale * top), top - 1) for c, o in zip(p, origin)
        )
        if idx not in cells:
            cells[idx] = len(reps)
            reps.append(p)
            cell_idx.append(idx)
    masses = [2.0 ** (-m * s)] * len(reps)

    for level in range(m - 1, stop - 1, -1):
        shift = m - level
        groups: dict[tuple[int, ...], list[int]] = {}
        for i, idx in enumerate(cell_idx):
            groups.setdefault(tuple(c >> shift for c in idx), []).append(i)
        cap = 2.0 ** (-level * s)
        for members in groups.values():
            total = math.fsum(masses[i] for i in members)
            if total > cap:
                factor = cap / total
                for i in members:
                    masses[i] *= factor

    level_masses: dict[int, dict[tuple[int, ...], float]] = {}
    for level in range(stop, m + 1):
        shift = m - level
        agg: dict[tuple[int, ...], float] = {}
        for i, idx in enumerate(cell_idx):
            key = tuple(c >> shift for c in idx)
            agg[key] = agg.get(key, 0.0) + masses[i]
        level_masses[level] = agg

    norm = math.fsum(masses)
    measure = AtomicMeasure.from_atoms(
        (reps[i], masses[i] / norm) for i in range(len(reps))
    )
    cascade = DyadicCascade(
        s=s, base_level=m, stop_level=stop, norm=norm, level_masses=level_masses
    )

    rnd = random.Random(seed)
    atoms = measure.atoms
    worst = 0.0
    # band-edge probes at every atom, thinned on large clouds
    stride = max(1, len(atoms) // 200)
    probes = [(p, r) for p, _ in atoms[::stride] for r in (lo, delta)]
    log_lo, log_hi = math.log(lo), math.log(delta)
    for _ in range(ball_samples):
        x = atoms[rnd.randrange(len(atoms))][0]
        r = math.exp(rnd.uniform(log_lo, log_hi))
        probes.append((x, r))
    for x, r in probes:
        worst = max(worst, _ball_mass(atoms, x, r) / r**s)
    return FrostmanResult(
        measure=measure,
        constant=2.0 * worst,
        worst_ratio=worst,
        cascade=cascade,
        range=rng,
    )


@dataclass(frozen=True)
class MdpEntry:
    """Verification outcome for one (delta, measure) pair."""

    delta: float
    total_mass: float
    worst_ratio: float
    violations: int
    weak: bool
    ok: bool


@dataclass(frozen=True)
class MdpReport:
    """Sampled verification of mu(U) <= c |U|**s over admissible diameters."""

    s: float
    theta: float
    a: float
    c: float
    ball_samples: int
    entries: tuple[MdpEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def worst_ratio(self) -> float:
        return max(e.worst_ratio for e in self.entries)

    def to_json_dict(self) -> dict:
        return {
            "pass": self.ok,
            "s": self.s,
            "theta": self.theta,
            "a": self.a,
            "c": self.c,
            "ball_samples": self.ball_samples,
            "worst_ratio": self.worst_ratio,
            "entries": [
                {
                    "delta": e.delta,
                    "total_mass": e.total_mass,
                    "worst_ratio": e.worst_ratio,
                    "violations": e.violations,
                    "weak_band": e.weak,
                    "pass": e.ok,
                }
                for e in self.entries
            ],
        }


def check_mdp(
    measures,
    s: float,
    theta: float,
    a: float,
    c: float,
    ball_samples: int = 200,
    seed: int = 0,
) -> MdpReport:
    """Sample closed balls checking mu(B) <= c * (2r)**s with 2r in [delta, delta**theta].

    Each entry must also carry total mass >= a.  Ball centers are drawn
    from the atoms (off-support centers only lower the mass), radii
    log-uniform over the admissible band.  A band narrower than one decade
    is flagged weak: it certifies little.
    """
    if a <= 0.0 or c <= 0.0:
        raise ValidationError("mass floor a and constant c must be positive")
    check_theta(theta)
    measures = list(measures)
    if not measures:
        raise ValidationError("empty measure list")
    entries = []
    for index, (delta, measure) in enumerate(measures):
        if not 0.0 < delta < 1.0:
            raise ValidationError(f"delta must lie in (0, 1), got {delta}")
        diam_lo, diam_hi = delta, delta**theta
        rnd = random.Random(seed * 1000003 + index)
        atoms = measure.atoms
        worst = 0.0
        violations = 0
        for _ in range(ball_samples):
            x = atoms[rnd.randrange(len(atoms))][0]
            u = (
                diam_lo
                if diam_hi <= diam_lo
                else math.exp(rnd.uniform(math.log(diam_lo), math.log(diam_hi)))
            )
            ratio = _ball_mass(atoms, x, u / 2.0) / (c * u**s)
            worst = max(worst, ratio)
            if ratio > 1.0 + 1e-9:
                violations += 1
        total = measure.total
        entries.append(
            MdpEntry(
                delta=delta,
                total_mass=total,
                worst_ratio=worst,
                violations=violations,
                weak=diam_hi / diam_lo < WEAK_BAND_RATIO,
                ok=total >= a - 1e-12 and violations == 0,
            )
        )
    return MdpReport(
        s=s, theta=theta, a=a, c=c, ball_samples=ball_samples, entries=tuple(entries)
    )


def fp_witness_measure(p: float, delta: float, theta: float) -> AtomicMeasure:
    """Point masses delta**s at 1/k**p for k <= M, at the critical s = theta/(p+theta).

    M = ceil(delta**(-(s + theta(1-s))/(p+1))) makes the total mass at
    least 1 while every admissible set carries at most (1 + 1/p)|U|**s.
    """
    if not p > 0.0:
        raise ValidationError(f"decay exponent p must be positive, got {p}")
    check_theta(theta)
    if theta == 0.0:
        raise ValidationError("witness measure needs theta > 0")
    if not 0.0 < delta < 1.0:
        raise ValidationError(f"delta must lie in (0, 1), got {delta}")
    s = theta / (p + theta)
    m_count = guarded_ceil(delta ** (-(s + theta * (1.0 - s)) / (p + 1.0)))
    mass = delta**s
    return AtomicMeasure.from_atoms(
        ((k ** (-p),), mass) for k in range(1, m_count + 1)
    )


def separated_witness_measure(points: PointCloud, delta: float) -> AtomicMeasure:
    """Uniform probability measure on a greedy delta-separated subset.

    First-fit over lexicographic order: keep a point iff it is at distance
    >= delta from everything kept so far.  The atom count is the
    separation number driving box-counting style lower bounds.
    """
    if not delta > 0.0:
        raise ValidationError(f"delta must be positive, got {delta}")
    kept: list[tuple[float, ...]] = []
    threshold = (delta * (1.0 - 1e-9)) ** 2
    for p in points.points:
        if all(
            math.fsum((a - b) ** 2 for a, b in zip(p, q)) >= threshold for q in kept
        ):
            kept.append(p)
    mass = 1.0 / len(kept)
    return AtomicMeasure.from_atoms((p, mass) for p in kept)
