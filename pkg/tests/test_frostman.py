import math

import pytest

from dimspect import (
    AtomicMeasure,
    PointCloud,
    RangeTooNarrowError,
    ValidationError,
    build_frostman_measure,
    check_mdp,
    fp_points,
    fp_witness_measure,
    separated_witness_measure,
)


def witness_delta(p: float, theta: float, atoms: int = 50) -> float:
    """delta making the witness atom count an exact integer (no ceiling slack)."""
    s = theta / (p + theta)
    return atoms ** (-(p + 1.0) / (s + theta * (1.0 - s)))


class TestBuilder:
    def test_single_point_unit_atom(self):
        pc = PointCloud.from_points([(0.3,)])
        res = build_frostman_measure(pc, s=0.5, delta=0.05, theta=0.5)
        assert len(res.measure.atoms) == 1
        assert res.measure.total == pytest.approx(1.0, abs=1e-12)

    def test_probability_measure(self):
        pts = fp_points(1.0, 0.01)
        res = build_frostman_measure(pts, s=0.3, delta=0.01, theta=0.5, seed=0)
        assert res.measure.total == pytest.approx(1.0, abs=1e-9)

    def test_cascade_caps_hold_exhaustively(self):
        pts = fp_points(1.0, 0.01)
        cascade = build_frostman_measure(pts, s=0.3, delta=0.01, theta=0.5).cascade
        for level in cascade.levels():
            cap = cascade.cap(level)
            for mass in cascade.level_masses[level].values():
                assert mass <= cap * (1 + 1e-12)

    def test_some_ancestor_attains_cap(self):
        pts = fp_points(1.0, 0.01)
        cascade = build_frostman_measure(pts, s=0.3, delta=0.01, theta=0.5).cascade
        base = cascade.base_level
        for idx in cascade.level_masses[base]:
            attained = False
            for level in cascade.levels():
                ancestor = tuple(c >> (base - level) for c in idx)
                mass = cascade.level_masses[level][ancestor]
                if abs(mass - cascade.cap(level)) <= 1e-12 * cascade.cap(level):
                    attained = True
                    break
            assert attained, f"no capped ancestor above cube {idx}"

    def test_uniform_midpoints_small_constant(self):
        m = 6
        pc = PointCloud.from_points([((k + 0.5) / 2**m,) for k in range(2**m)])
        res = build_frostman_measure(pc, s=1.0, delta=0.25, theta=0.5, seed=0)
        assert res.constant <= 4.0 * 2.0**1.0

    def test_ball_bound_on_random_queries(self):
        import random

        pts = fp_points(1.0, 0.01)
        res = build_frostman_measure(pts, s=0.3, delta=0.01, theta=0.5, seed=0)
        rnd = random.Random(99)  # fresh queries, not the builder's probes
        atoms = res.measure.atoms
        lo, hi = res.range.lo, res.range.hi
        for _ in range(200):
            x = atoms[rnd.randrange(len(atoms))][0][0] + rnd.uniform(-1e-3, 1e-3)
            r = math.exp(rnd.uniform(math.log(lo), math.log(hi)))
            mass = math.fsum(m for (px,), m in atoms if abs(px - x) <= r)
            assert mass <= res.constant * r**0.3 * (1 + 1e-9)

    def test_range_too_narrow(self):
        pts = fp_points(1.0, 0.01)
        with pytest.raises(RangeTooNarrowError):
            build_frostman_measure(pts, s=0.3, delta=0.01, theta=1.0)

    def test_rejects_theta_zero_and_bad_s(self):
        pts = fp_points(1.0, 0.01)
        with pytest.raises(ValidationError):
            build_frostman_measure(pts, s=0.3, delta=0.01, theta=0.0)
        with pytest.raises(ValidationError):
            build_frostman_measure(pts, s=0.0, delta=0.01, theta=0.5)

    def test_deterministic(self):
        pts = fp_points(1.0, 0.01)
        a = build_frostman_measure(pts, s=0.3, delta=0.01, theta=0.5, seed=0)
        b = build_frostman_measure(pts, s=0.3, delta=0.01, theta=0.5, seed=0)
        assert a.measure == b.measure and a.constant == b.constant


class TestCheckMdp:
    def test_builder_composition_passes(self):
        pts = fp_points(1.0, 0.01)
        res = build_frostman_measure(pts, s=0.3, delta=0.01, theta=0.5, seed=0)
        report = check_mdp(
            [(res.range.lo, res.measure)],
            s=0.3,
            theta=0.5,
            a=1.0 - 1e-9,
            c=res.constant,
            ball_samples=200,
            seed=0,
        )
        assert report.ok
        assert report.entries[0].violations == 0
        assert not report.entries[0].weak

    def test_constructed_violation(self):
        # a unit atom violates mu(U) <= |U| as soon as |U| < 1
        mu = AtomicMeasure.from_atoms([((0.5,), 1.0)])
        report = check_mdp([(1e-6, mu)], s=1.0, theta=0.5, a=1.0, c=1.0, seed=0)
        entry = report.entries[0]
        assert not report.ok
        assert entry.violations > 0
        # worst ratio approaches 1/|U| at the small end of the band
        assert entry.worst_ratio > 1.0 / (1e-6**0.5)

    def test_weak_band_flagged(self):
        mu = AtomicMeasure.from_atoms([((0.5,), 1.0)])
        report = check_mdp([(0.25, mu)], s=0.5, theta=0.95, a=1.0, c=10.0, seed=0)
        assert report.entries[0].weak  # 0.25**0.95 / 0.25 < 10

    def test_low_mass_fails(self):
        mu = AtomicMeasure.from_atoms([((0.5,), 0.5)])
        report = check_mdp([(1e-3, mu)], s=0.5, theta=0.5, a=1.0, c=100.0, seed=0)
        assert not report.entries[0].ok

    def test_empty_list_rejected(self):
        with pytest.raises(ValidationError):
            check_mdp([], s=0.5, theta=0.5, a=1.0, c=1.0)

    def test_json_shape(self):
        mu = AtomicMeasure.from_atoms([((0.5,), 1.0)])
        doc = check_mdp([(1e-3, mu)], s=0.5, theta=0.5, a=1.0, c=100.0).to_json_dict()
        assert set(doc) >= {"pass", "worst_ratio", "entries", "c"}


class TestFpWitnessMeasure:
    def test_total_mass_at_least_one_grid(self):
        for p in (0.5, 1.0, 2.0):
            for theta in (0.25, 0.5, 0.75):
                for delta in (1e-2, 1e-3, 1e-4):
                    mu = fp_witness_measure(p, delta, theta)
                    assert mu.total >= 1.0 - 1e-9

    def test_degenerate_single_atom(self):
        mu = fp_witness_measure(1.0, 1.0 - 1e-10, 0.5)
        assert len(mu.atoms) == 1

    def test_equal_masses(self):
        mu = fp_witness_measure(1.0, 1e-3, 0.5)
        masses = {m for _, m in mu.atoms}
        assert len(masses) == 1

    def test_proof_constant_certifies(self):
        for p in (1.0, 2.0):
            theta = 0.5
            delta = witness_delta(p, theta)
            mu = fp_witness_measure(p, delta, theta)
            report = check_mdp(
                [(delta, mu)],
                s=theta / (p + theta),
                theta=theta,
                a=1.0 - 1e-9,
                c=1.0 + 1.0 / p,
                ball_samples=200,
                seed=0,
            )
            assert report.ok


class TestSeparatedWitness:
    def test_close_pair_collapses(self):
        pc = PointCloud.from_points([(0.5,), (0.5 + 0.005,)])
        mu = separated_witness_measure(pc, 0.01)
        assert len(mu.atoms) == 1
        assert mu.total == pytest.approx(1.0)

    def test_spaced_grid_kept(self):
        pc = PointCloud.from_points([(0.03 * k,) for k in range(30)])
        mu = separated_witness_measure(pc, 0.01)
        assert len(mu.atoms) == 30

    def test_sequence_count_tracks_box_dimension(self):
        delta = 1e-3
        pts = fp_points(1.0, delta)
        mu = separated_witness_measure(pts, delta)
        expected = delta**-0.5
        assert expected / 4 <= len(mu.atoms) <= expected * 4

    def test_pairwise_separation(self):
        pts = fp_points(1.0, 1e-2)
        mu = separated_witness_measure(pts, 1e-2)
        xs = sorted(p[0] for p, _ in mu.atoms)
        assert all(b - a >= 1e-2 * (1 - 1e-9) for a, b in zip(xs, xs[1:]))
