import math

import pytest

from dimspect import (
    AtomicMeasure,
    DimensionSpectrum,
    EmptyIntersectionError,
    GridMismatchError,
    InvariantError,
    PointCloud,
    ScaleRange,
    ScaleRangeTooDeepError,
    SpectrumSample,
    ValidationError,
    default_theta_grid,
    scale_bounds,
    spectrum_merge,
)


class TestScaleBounds:
    def test_theta_one_forces_equal_diameters(self):
        assert scale_bounds(ScaleRange(0.01, 1.0)) == (0.01, 0.01)

    def test_half_theta_squares_delta(self):
        lo, hi = scale_bounds(ScaleRange(0.01, 0.5))
        assert hi == 0.01
        assert lo == pytest.approx(1e-4, rel=1e-12)

    def test_quarter_theta(self):
        lo, hi = scale_bounds(ScaleRange(0.1, 0.25))
        assert hi == 0.1
        assert lo == pytest.approx(1e-4, rel=1e-12)

    def test_theta_zero_is_unrestricted(self):
        assert scale_bounds(ScaleRange(0.01, 0.0)) == (0.0, 0.01)

    def test_lo_monotone_in_theta(self):
        thetas = [0.1, 0.2, 0.4, 0.6, 0.8, 1.0]
        los = [ScaleRange(0.3, t).lo for t in thetas]
        assert all(a <= b for a, b in zip(los, los[1:]))

    def test_too_deep_refused(self):
        with pytest.raises(ScaleRangeTooDeepError):
            ScaleRange(1e-4, 0.25)  # 1e-16 < MIN_SCALE

    def test_boundary_at_min_scale_allowed(self):
        # 0.001**4 lands a hair above 1e-12 in doubles; must not be refused
        rng = ScaleRange(1e-3, 0.25)
        assert rng.lo == pytest.approx(1e-12, rel=1e-9)

    def test_bad_domains(self):
        with pytest.raises(ValidationError):
            ScaleRange(1.5, 0.5)
        with pytest.raises(ValidationError):
            ScaleRange(0.5, 1.5)


class TestPointCloud:
    def test_dedupe_and_sort(self):
        pc = PointCloud.from_points([(0.5,), (0.1,), (0.5,)])
        assert pc.points == ((0.1,), (0.5,))

    def test_bbox_computed(self):
        pc = PointCloud.from_points([(0.2, 0.7), (0.9, 0.1)])
        assert pc.bbox == ((0.2, 0.1), (0.9, 0.7))

    def test_supplied_bbox_must_contain(self):
        with pytest.raises(ValidationError):
            PointCloud.from_points([(2.0,)], bbox=((0.0,), (1.0,)))

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            PointCloud.from_points([])

    def test_bad_dimension(self):
        with pytest.raises(ValidationError):
            PointCloud.from_points([(1.0, 2.0, 3.0, 4.0)])


def _spectrum(values, ambient=1, method="exact"):
    k = len(values)
    thetas = [i / (k - 1) for i in range(k)]
    return DimensionSpectrum(
        ambient_n=ambient,
        samples=tuple(
            SpectrumSample(t, v, v, method) for t, v in zip(thetas, values)
        ),
    )


class TestDimensionSpectrum:
    def test_crossing_rejected(self):
        with pytest.raises(InvariantError):
            DimensionSpectrum(
                ambient_n=1, samples=(SpectrumSample(0.5, 0.9, 0.2, "exact"),)
            )

    def test_above_ambient_rejected(self):
        with pytest.raises(InvariantError):
            DimensionSpectrum(
                ambient_n=1, samples=(SpectrumSample(0.5, 0.9, 1.2, "exact"),)
            )

    def test_exact_monotonicity_enforced(self):
        with pytest.raises(InvariantError):
            _spectrum([0.0, 0.5, 0.4])

    def test_estimated_tolerance(self):
        # a 0.01 sag is within the estimator's monotonicity slack
        _spectrum([0.0, 0.5, 0.49], method="estimated")
        with pytest.raises(InvariantError):
            _spectrum([0.0, 0.5, 0.4], method="estimated")

    def test_estimated_theta0_exempt(self):
        # the unrestricted theta=0 estimate may sit above its neighbours
        _spectrum([0.3, 0.2, 0.25, 0.3], method="estimated")

    def test_json_roundtrip(self):
        spec = _spectrum([0.0, 0.25, 0.5])
        again = DimensionSpectrum.from_json_dict(spec.to_json_dict())
        assert again == spec


class TestSpectrumMerge:
    def test_max_realizes_union_formula(self):
        # sequence p=1 against a constant 1/3: max{theta/(1+theta), 1/3}
        grid = default_theta_grid(21)
        seq = _spectrum([t / (1 + t) for t in grid])
        const = _spectrum([1 / 3] * len(grid))
        merged = spectrum_merge(seq, const, "max")
        for sample, t in zip(merged.samples, grid):
            assert sample.lower == pytest.approx(max(t / (1 + t), 1 / 3), abs=0)
        assert merged.samples[5].lower == pytest.approx(1 / 3)  # theta=0.25

    def test_idempotent(self):
        s = _spectrum([0.0, 0.3, 0.5])
        assert spectrum_merge(s, s, "max") == s

    def test_intersect_keeps_tighter_bounds(self):
        grid = [0.0, 0.5, 1.0]
        low = DimensionSpectrum(
            ambient_n=1,
            samples=tuple(SpectrumSample(t, 0.2, 1.0, "exact") for t in grid),
        )
        high = DimensionSpectrum(
            ambient_n=1,
            samples=tuple(SpectrumSample(t, 0.0, 0.9, "exact") for t in grid),
        )
        merged = spectrum_merge(low, high, "intersect")
        assert all(s.lower == 0.2 and s.upper == 0.9 for s in merged.samples)

    def test_intersect_crossing_raises(self):
        a = DimensionSpectrum(
            ambient_n=1, samples=(SpectrumSample(0.5, 0.8, 1.0, "exact"),)
        )
        b = DimensionSpectrum(
            ambient_n=1, samples=(SpectrumSample(0.5, 0.0, 0.3, "exact"),)
        )
        with pytest.raises(EmptyIntersectionError):
            spectrum_merge(a, b, "intersect")

    def test_grid_mismatch(self):
        with pytest.raises(GridMismatchError):
            spectrum_merge(_spectrum([0.0, 0.5]), _spectrum([0.0, 0.4, 0.5]), "max")


class TestAtomicMeasure:
    def test_total_is_sum(self):
        mu = AtomicMeasure.from_atoms([((0.1,), 0.25), ((0.2,), 0.75)])
        assert mu.total == pytest.approx(1.0, abs=0)

    def test_inconsistent_total_rejected(self):
        with pytest.raises(InvariantError):
            AtomicMeasure(atoms=(((0.1,), 0.5),), total=1.0)

    def test_nonpositive_mass_rejected(self):
        with pytest.raises(ValidationError):
            AtomicMeasure.from_atoms([((0.1,), 0.0)])

    def test_json_roundtrip(self):
        mu = AtomicMeasure.from_atoms([((0.1, 0.2), 0.4), ((0.3, 0.9), 0.6)])
        assert AtomicMeasure.from_json_dict(mu.to_json_dict()) == mu

    def test_normalized(self):
        mu = AtomicMeasure.from_atoms([((0.0,), 3.0), ((1.0,), 1.0)])
        assert mu.normalized().total == pytest.approx(1.0)


def test_default_grid_is_101_uniform():
    grid = default_theta_grid()
    assert len(grid) == 101
    assert grid[0] == 0.0 and grid[-1] == 1.0
    steps = {round(b - a, 15) for a, b in zip(grid, grid[1:])}
    assert all(abs(s - 0.01) < 1e-12 for s in steps)
