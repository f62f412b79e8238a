"""Shared domain types: scale ranges, point clouds, spectra, atomic measures.

Every other module produces or consumes these.  All types are immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Diameters below MIN_SCALE are refused rather than silently degraded:
# double-precision cost sums over smaller diameters are meaningless.
MIN_SCALE = 1e-12
# Deepest dyadic subdivision level; 2**-40 approaches double-precision
# granularity relative to the unit box.
MAX_DEPTH = 40
# Monotonicity slack for spectra: formulas are exact, estimators carry
# sampling noise.
TOL_MONO_EXACT = 1e-9
TOL_MONO_ESTIMATED = 0.02

# Relative slack for the MIN_SCALE refusal so that boundary cases such as
# 0.001**4 vs 1e-12 do not flip on rounding.
_MIN_SCALE_SLACK = 1e-9


class DimspectError(Exception):
    """Base class for all library errors."""


class ValidationError(DimspectError, ValueError):
    """Inputs violate a documented contract (domain, shape, parse)."""


class GridMismatchError(ValidationError):
    """Two spectra were combined over different theta grids."""


class ScaleRangeTooDeepError(DimspectError):
    """delta**(1/theta) fell below MIN_SCALE; refuse instead of degrading."""


class RangeTooNarrowError(DimspectError):
    """The scale band is too narrow for the requested construction."""


class DepthLimitError(DimspectError):
    """A dyadic recursion would need levels deeper than MAX_DEPTH."""


class InvariantError(DimspectError):
    """An internal invariant failed; indicates a bug or inconsistent bounds."""


class EmptyIntersectionError(InvariantError):
    """Intersecting two spectra produced lower > upper."""


def check_theta(theta: float) -> float:
    """Validate a covering-restriction parameter in [0, 1]."""
    theta = float(theta)
    if math.isnan(theta) or not 0.0 <= theta <= 1.0:
        raise ValidationError(f"theta must lie in [0, 1], got {theta!r}")
    return theta


@dataclass(frozen=True)
class ScaleRange:
    """Admissible diameter band [delta**(1/theta), delta] at scale delta.

    theta = 1 pins all diameters to delta; theta = 0 means unrestricted
    covers and is represented by a lower bound of 0.
    """

    delta: float
    theta: float

    def __post_init__(self) -> None:
        check_theta(self.theta)
        if not 0.0 < self.delta < 1.0:
            raise ValidationError(f"delta must lie in (0, 1), got {self.delta!r}")
        if self.theta > 0.0:
            lo = self.delta ** (1.0 / self.theta)
            if lo < MIN_SCALE * (1.0 - _MIN_SCALE_SLACK):
                raise ScaleRangeTooDeepError(
                    f"delta**(1/theta) = {lo:.3e} is below MIN_SCALE = {MIN_SCALE:.0e} "
                    f"(delta={self.delta}, theta={self.theta})"
                )

    @property
    def lo(self) -> float:
        return 0.0 if self.theta == 0.0 else self.delta ** (1.0 / self.theta)

    @property
    def hi(self) -> float:
        return self.delta


def scale_bounds(rng: ScaleRange) -> tuple[float, float]:
    """Return the admissible diameter band (lo, hi) of a ScaleRange."""
    return rng.lo, rng.hi


@dataclass(frozen=True)
class PointCloud:
    """Finite set of points in R^n (n in {1,2,3}) with its bounding box.

    Points are deduplicated by exact coordinate equality and sorted
    lexicographically on ingestion, so identical inputs yield identical
    clouds regardless of input order.
    """

    dimension_n: int
    points: tuple[tuple[float, ...], ...]
    bbox: tuple[tuple[float, ...], tuple[float, ...]]

    @classmethod
    def from_points(
        cls,
        points,
        dimension_n: int | None = None,
        bbox: tuple[tuple[float, ...], tuple[float, ...]] | None = None,
    ) -> "PointCloud":
        pts = [tuple(float(c) for c in p) for p in points]
        if not pts:
            raise ValidationError("a PointCloud needs at least one point")
        n = dimension_n if dimension_n is not None else len(pts[0])
        if n not in (1, 2, 3):
            raise ValidationError(f"ambient dimension must be 1, 2 or 3, got {n}")
        for p in pts:
            if len(p) != n:
                raise ValidationError(f"point {p} does not have {n} coordinates")
            if any(math.isnan(c) or math.isinf(c) for c in p):
                raise ValidationError(f"point {p} has non-finite coordinates")
        pts = sorted(set(pts))
        mins = tuple(min(p[i] for p in pts) for i in range(n))
        maxs = tuple(max(p[i] for p in pts) for i in range(n))
        if bbox is None:
            bbox = (mins, maxs)
        else:
            blo = tuple(float(c) for c in bbox[0])
            bhi = tuple(float(c) for c in bbox[1])
            if any(m < l or M > h for m, l, M, h in zip(mins, blo, maxs, bhi)):
                raise ValidationError("supplied bbox does not contain all points")
            bbox = (blo, bhi)
        return cls(dimension_n=n, points=tuple(pts), bbox=bbox)

    def __len__(self) -> int:
        return len(self.points)

    def coords(self, axis: int = 0) -> tuple[float, ...]:
        return tuple(p[axis] for p in self.points)


@dataclass(frozen=True)
class SpectrumSample:
    """One (theta, lower, upper) sample with a tag naming how it was produced."""

    theta: float
    lower: float
    upper: float
    method: str


def _is_estimated(method: str) -> bool:
    return method.startswith("estimated")


@dataclass(frozen=True)
class DimensionSpectrum:
    """Sampled map theta -> (lower value, upper value, method tag).

    Invariants checked on construction: thetas strictly increasing, every
    sample satisfies 0 <= lower <= upper <= ambient_n, and each column is
    monotone non-decreasing in theta up to TOL_MONO_EXACT (closed forms)
    or TOL_MONO_ESTIMATED (estimator output).  An estimated sample at
    theta = 0 is exempt from the monotonicity check: it comes from the
    unrestricted-cover fallback whose finite-resolution bias is one-sided.
    """

    ambient_n: int
    samples: tuple[SpectrumSample, ...]

    def __post_init__(self) -> None:
        if not self.samples:
            raise ValidationError("a spectrum needs at least one sample")
        if self.ambient_n < 1:
            raise ValidationError("ambient dimension must be positive")
        prev_theta = -1.0
        for s in self.samples:
            check_theta(s.theta)
            if s.theta <= prev_theta:
                raise ValidationError("sample thetas must be strictly increasing")
            prev_theta = s.theta
            if not (-1e-12 <= s.lower <= s.upper + 1e-12):
                raise InvariantError(
                    f"lower {s.lower} > upper {s.upper} at theta={s.theta}"
                )
            if s.upper > self.ambient_n + 1e-9:
                raise InvariantError(
                    f"upper {s.upper} exceeds ambient dimension {self.ambient_n}"
                )
        for values in (self.lowers(), self.uppers()):
            running = -math.inf
            for s, v in zip(self.samples, values):
                if s.theta == 0.0 and _is_estimated(s.method):
                    continue
                tol = TOL_MONO_ESTIMATED if _is_estimated(s.method) else TOL_MONO_EXACT
                if v < running - tol:
                    raise InvariantError(
                        f"spectrum not monotone at theta={s.theta}: "
                        f"{v} < running max {running} - {tol}"
                    )
                running = max(running, v)

    def thetas(self) -> tuple[float, ...]:
        return tuple(s.theta for s in self.samples)

    def lowers(self) -> tuple[float, ...]:
        return tuple(s.lower for s in self.samples)

    def uppers(self) -> tuple[float, ...]:
        return tuple(s.upper for s in self.samples)

    def to_json_dict(self) -> dict:
        return {
            "ambient_n": self.ambient_n,
            "samples": [
                {"theta": s.theta, "lower": s.lower, "upper": s.upper, "method": s.method}
                for s in self.samples
            ],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "DimensionSpectrum":
        try:
            samples = tuple(
                SpectrumSample(
                    theta=float(s["theta"]),
                    lower=float(s["lower"]),
                    upper=float(s["upper"]),
                    method=str(s["method"]),
                )
                for s in obj["samples"]
            )
            return cls(ambient_n=int(obj["ambient_n"]), samples=samples)
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed spectrum JSON: {exc}") from exc


def _combine_method(ma: str, mb: str) -> str:
    return ma if ma == mb else f"{ma}|{mb}"


def spectrum_merge(
    a: DimensionSpectrum, b: DimensionSpectrum, mode: str
) -> DimensionSpectrum:
    """Pointwise combination of two spectra over the same theta grid.

    mode 'max' keeps the larger bounds (finite stability of the upper
    dimension under unions), 'min' the smaller, 'intersect' keeps
    (max of lowers, min of uppers) and raises if that inverts.
    """
    if mode not in ("max", "min", "intersect"):
        raise ValidationError(f"unknown merge mode {mode!r}")
    if a.ambient_n != b.ambient_n:
        raise GridMismatchError("spectra live in different ambient dimensions")
    if a.thetas() != b.thetas():
        raise GridMismatchError("spectra sampled on different theta grids")
    merged = []
    for sa, sb in zip(a.samples, b.samples):
        if mode == "max":
            lower, upper = max(sa.lower, sb.lower), max(sa.upper, sb.upper)
        elif mode == "min":
            lower, upper = min(sa.lower, sb.lower), min(sa.upper, sb.upper)
        else:
            lower, upper = max(sa.lower, sb.lower), min(sa.upper, sb.upper)
            if lower > upper + 1e-12:
                raise EmptyIntersectionError(
                    f"empty intersection at theta={sa.theta}: "
                    f"lower {lower} > upper {upper}"
                )
            upper = max(upper, lower)
        merged.append(
            SpectrumSample(sa.theta, lower, upper, _combine_method(sa.method, sb.method))
        )
    return DimensionSpectrum(ambient_n=a.ambient_n, samples=tuple(merged))


def default_theta_grid(count: int = 101) -> tuple[float, ...]:
    """Uniform theta grid on [0, 1] inclusive (default 101 samples)."""
    if count < 2:
        raise ValidationError("grid needs at least 2 samples")
    return tuple(i / (count - 1) for i in range(count))


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite list of (point, mass) pairs; total is the sum of masses."""

    atoms: tuple[tuple[tuple[float, ...], float], ...]
    total: float

    @classmethod
    def from_atoms(cls, atoms) -> "AtomicMeasure":
        cleaned = []
        for point, mass in atoms:
            mass = float(mass)
            if mass <= 0.0:
                raise ValidationError(f"atom masses must be positive, got {mass}")
            cleaned.append((tuple(float(c) for c in point), mass))
        if not cleaned:
            raise ValidationError("a measure needs at least one atom")
        total = math.fsum(m for _, m in cleaned)
        return cls(atoms=tuple(cleaned), total=total)

    def __post_init__(self) -> None:
        s = math.fsum(m for _, m in self.atoms)
        if abs(s - self.total) > 1e-12 * max(1.0, abs(s)):
            raise InvariantError(f"total {self.total} != sum of masses {s}")

    def normalized(self) -> "AtomicMeasure":
        return AtomicMeasure.from_atoms(
            (p, m / self.total) for p, m in self.atoms
        )

    def to_json_dict(self) -> dict:
        return {"atoms": [{"x": list(p), "mass": m} for p, m in self.atoms]}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "AtomicMeasure":
        try:
            return cls.from_atoms((a["x"], a["mass"]) for a in obj["atoms"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed measure JSON: {exc}") from exc
