"""Random-walk decimation: hitting times, branching, return probabilities."""

import numpy as np
from hypothesis import given, settings, strategies as st

from fracspec import walk


def test_hitting_pgf_closed_facts():
    q = walk.sg_hitting_pgf()
    assert abs(q.value(1.0) - 1.0) < 1e-14
    assert abs(q.deriv(1.0) - 5.0) < 1e-12          # mean crossing time
    coeffs = q.series(6)
    # z^2 / (4 - 3z) = z^2/4 * sum (3z/4)^k
    want = [0.0, 0.0, 0.25, 0.1875, 0.140625, 0.10546875]
    assert np.allclose(coeffs, want, atol=1e-14)


def test_pgf_conjugate_is_a_polynomial():
    rep = walk.pgf_conjugation_check(walk.sg_hitting_pgf())
    assert rep.is_polynomial
    assert tuple(rep.conjugate_coeffs) == (0.0, -3.0, 4.0)
    assert abs(rep.value_at_1 - 1.0) < 1e-14
    assert abs(rep.deriv_at_1 - 5.0) < 1e-12


def test_simulated_hitting_times_match_pgf():
    cfg = walk.WalkConfig(level=1, samples=40_000, seed=walk.DEFAULT_SEED)
    stats = walk.simulate_hitting_times(cfg)
    assert abs(stats.mean - 5.0) < 3.0 * stats.std_err
    p2, se2 = stats.atom_probability(2)
    assert abs(p2 - 0.25) < 3.0 * se2
    p3, se3 = stats.atom_probability(3)
    assert abs(p3 - 0.1875) < 3.0 * se3      # z^3 coefficient of the PGF
    assert min(stats.histogram) == 2         # no crossing in fewer steps


def test_hitting_times_level_invariant_mean():
    # one decimation step has the same law at every level
    a = walk.simulate_hitting_times(walk.WalkConfig(level=2, samples=20_000,
                                                    seed=3))
    assert abs(a.mean - 5.0) < 4.0 * a.std_err


def test_simulation_is_seed_deterministic():
    cfg = walk.WalkConfig(level=1, samples=5_000, seed=99)
    a = walk.simulate_hitting_times(cfg).to_dict()
    b = walk.simulate_hitting_times(cfg).to_dict()
    assert a == b


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_simulation_histogram_is_a_distribution(seed):
    stats = walk.simulate_hitting_times(
        walk.WalkConfig(level=1, samples=2_000, seed=seed))
    assert sum(stats.histogram.values()) == stats.n_samples
    assert min(stats.histogram) >= 2


def test_branching_generations_grow_at_mean_rate():
    res = walk.branching_simulate(walk.sg_hitting_pgf(), generations=5,
                                  samples=4_000, seed=walk.DEFAULT_SEED)
    assert abs(res.offspring_mean - 5.0) < 1e-12
    means = np.asarray(res.to_dict()["mean_normalized"])
    ses = np.asarray(res.to_dict()["se_normalized"])
    # Z_n / 5^n is a martingale with mean 1
    assert np.all(np.abs(means - 1.0) < 5.0 * ses + 1e-9)


def test_return_probabilities_scaling_band():
    rep = walk.return_probabilities(2, 300)
    assert rep.row_sum_defect < 1e-12
    assert abs(rep.d_s - 2.0 * np.log(3.0) / np.log(5.0)) < 1e-12
    scaled = rep.scaled[50:]
    assert 0.3 < scaled.min() and scaled.max() < 3.0


def test_iterated_hitting_distribution_mean_scales():
    q = walk.sg_hitting_pgf()
    dist = walk.hitting_distribution_by_iteration(q, levels=2, n_terms=400)
    n = np.arange(len(dist))
    assert abs(dist.sum() - 1.0) < 1e-9
    assert abs(float((n * dist).sum()) - 25.0) < 1e-6      # mean composes
