"""Eigenvalue rosters: root enumeration, multiplicities, counting, renewal."""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from fracspec import decimation
from fracspec.errors import BranchError, DomainError

PI2 = math.pi * math.pi


def test_gasket_system_structure(sg_dirichlet, sg_neumann):
    assert sg_dirichlet.lam == 5.0
    assert sg_dirichlet.seeds == (-2.0, -3.0, -5.0)
    for w in sg_dirichlet.seeds:
        assert sg_dirichlet.zero_order(w) == 1
    assert sg_neumann.seeds == sg_dirichlet.seeds


def test_flat_system_critical_seed_is_double(cheb):
    # p(x) = x(x+4) has critical value -4, so that family has double roots
    assert cheb.zero_order(-4.0) == 2
    assert cheb.zero_order(-2.0) == 1


def test_multiplicity_series_closed_values(sg_dirichlet, sg_neumann):
    def series(system, w, m_max=5):
        return decimation.multiplicity_coeffs(system.gf_for(w), m_max)

    assert series(sg_dirichlet, -2.0) == [0, 1, 0, 0, 0, 0]
    assert series(sg_dirichlet, -3.0) == [0, 0, 0, 3, 12, 39]
    assert series(sg_dirichlet, -5.0) == [0, 2, 3, 6, 15, 42]
    assert series(sg_neumann, -2.0) == [0, 0, 0, 0, 0, 0]
    assert series(sg_neumann, -3.0) == [0, 2, 3, 6, 15, 42]
    assert series(sg_neumann, -5.0) == [0, 1, 4, 13, 40, 121]


def test_generating_function_sums_at_one_half_exact(sg_dirichlet, sg_neumann):
    half = Fraction(1, 2)
    total_d = sum(sg_dirichlet.gf_for(w).value(half)
                  for w in sg_dirichlet.seeds)
    total_n = sum(sg_neumann.gf_for(w).value(half)
                  for w in sg_neumann.seeds)
    assert total_d == Fraction(0)        # exact rational cancellation
    assert total_n == Fraction(-1)       # no cancellation on this side


def test_flat_family_roots_are_odd_square_lattice(cheb):
    roots = decimation.enumerate_roots(cheb, -4.0, cutoff=400.0)
    want = [PI2, 9.0 * PI2, 25.0 * PI2]
    assert np.allclose(roots.values, want, rtol=1e-9)
    roots2 = decimation.enumerate_roots(cheb, -2.0, cutoff=100.0)
    want2 = [PI2 / 4.0, 9.0 * PI2 / 4.0, 25.0 * PI2 / 4.0]
    assert np.allclose(roots2.values, want2, rtol=1e-9)


def test_root_search_matches_exhaustive_words(sg_dirichlet):
    """Pruned tree search equals brute force over every branch word."""
    cutoff = 3000.0
    roots = decimation.enumerate_roots(sg_dirichlet, -3.0, cutoff)
    brute = []
    for m in range(1, 7):
        for word in itertools.product(range(2), repeat=m):
            try:
                val = decimation.preimage_eigenvalue(sg_dirichlet, -3.0, word)
            except (BranchError, DomainError):
                continue
            if val <= cutoff:
                brute.append(val)
    brute = np.unique(np.round(np.sort(brute), 6))
    got = np.round(np.sort(roots.values), 6)
    assert np.array_equal(got, np.unique(brute))


def test_spectrum_head_frozen(sg_dirichlet):
    eigs = decimation.enumerate_spectrum(sg_dirichlet, cutoff=200.0)
    rows = [(r.value, r.multiplicity) for r in eigs.records]
    want = [(11.210665926232268, 1), (37.2572183027964, 2),
            (114.90968036897658, 2), (160.11239754750787, 1),
            (186.28609151398203, 3)]
    assert len(rows) == len(want)
    for (v, m), (v0, m0) in zip(rows, want):
        assert m == m0 and abs(v - v0) < 1e-8 * v0
    assert eigs.total == 9


def test_counting_function_consistency(sg_dirichlet):
    eigs = decimation.enumerate_spectrum(sg_dirichlet, cutoff=500.0)
    assert decimation.counting_function(sg_dirichlet, 500.0) == eigs.total
    assert decimation.counting_function(sg_dirichlet, 11.0) == 0
    assert decimation.counting_function(sg_dirichlet, 11.3) == 1


def test_counting_curve_columns(sg_dirichlet):
    xs = np.geomspace(10.0, 1e4, 31)
    curve = decimation.counting_curve(sg_dirichlet, xs)
    assert curve.shape == (31, 3)
    ds = decimation.spectral_dimension_sg()
    n_direct = decimation.counting_function(sg_dirichlet, float(xs[-1]))
    assert curve[-1, 1] == n_direct
    assert abs(curve[-1, 2] - n_direct * xs[-1] ** (-ds / 2.0)) < 1e-12


def test_spectral_dimension_constants():
    table = decimation.einstein_relation()
    assert table["exact"] is True
    assert abs(table["d_s"] - 2.0 * math.log(3.0) / math.log(5.0)) < 1e-15
    assert abs(table["d_w"] - math.log(5.0) / math.log(2.0)) < 1e-15
    assert abs(table["d_s"] * table["d_w"] - 2.0 * table["d_f"]) < 1e-12


def test_renewal_dimension_lattice_cases():
    g = 5.0 ** -0.5
    res = decimation.renewal_spectral_dim([g, g, g])
    assert abs(res.d_s - 2.0 * math.log(3.0) / math.log(5.0)) < 1e-9
    assert res.lattice and abs(res.span - math.log(5.0)) < 1e-12

    res2 = decimation.renewal_spectral_dim([0.5, 0.25])
    assert res2.lattice
    assert abs(res2.span - 2.0 * math.log(2.0)) < 1e-12


def test_renewal_dimension_nonlattice_case():
    res = decimation.renewal_spectral_dim([0.5, 1.0 / 3.0])
    assert not res.lattice
    # 2^-d + 3^-d = 1
    assert abs(res.d_s - 0.7878849110) < 1e-9


def test_renewal_dimension_rejects_bad_input():
    with pytest.raises(DomainError):
        decimation.renewal_spectral_dim([0.5, 1.2])
    with pytest.raises(DomainError):
        decimation.renewal_spectral_dim([])


def test_renewal_iteration_dichotomy():
    def bump(t):
        return math.exp(-t) if t >= 0 else 0.0

    lat = decimation.renewal_iterate([0.5, 0.25], bump, horizon=60.0)
    assert lat.lattice and lat.profile is not None
    assert np.ptp(lat.profile) > 1e-4          # periodic limit oscillates

    non = decimation.renewal_iterate([0.5, 1.0 / 3.0], bump, horizon=200.0)
    assert not non.lattice and non.limit_constant is not None
    # the non-lattice solution flattens; slowly, because log3/log2 is close
    # to 19/12, so compare same-width windows far apart instead of a level
    width = 300
    early = np.ptp(non.f[1500:1500 + width])
    late = np.ptp(non.f[-width:])
    assert late < 0.4 * early
    # while the lattice profile keeps a comparable swing period after period
    span_cells = len(lat.profile)
    last = lat.f[-span_cells:]
    prev = lat.f[-2 * span_cells:-span_cells]
    assert np.max(np.abs(last - prev)) < 0.05 * np.ptp(last)
