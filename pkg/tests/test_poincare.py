"""Poincare functions: series solver, growth, spiral limits, Julia checks."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracspec import poincare
from fracspec.errors import DomainError, MultiplierError
from fracspec.poincare import PolynomialMap

SPIRAL_L_SG = 1.0783636526338294        # frozen regression value, z0 = 10


def test_flat_map_solution_matches_hyperbolic_closed_form(cheb):
    # for p(x) = x(x+4) the normalized solution is 2(cosh sqrt x - 1)
    f = cheb.phi
    for x in (0.3, 0.7, 1.3, 2.9, 0.05):
        exact = 2.0 * (math.cosh(math.sqrt(x)) - 1.0)
        assert abs(f(x) - exact) < 1e-12 * max(1.0, exact)


def test_solution_satisfies_functional_equation(sg_dirichlet):
    f = sg_dirichlet.phi
    p = sg_dirichlet.pmap
    for x in (0.11, 0.37, 0.52):
        lhs = f(5.0 * x)
        rhs = p(f(x))
        assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs))


def test_multiplier_guard():
    with pytest.raises(MultiplierError):
        PolynomialMap((0.5, 1.0))


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=3.0, max_value=9.0))
def test_random_quadratic_solution_and_decay(a):
    pmap = PolynomialMap((a, 1.0))
    f = poincare.solve_series(pmap)
    x = 0.3
    assert abs(f(a * x) - pmap(f(x))) < 1e-9
    coeffs = np.abs(np.asarray(f.coeffs, dtype=complex))
    assert coeffs[-1] < 1e-10 * max(1.0, coeffs.max())


def test_growth_profile_is_log_periodic(sg_dirichlet, cheb):
    prof = poincare.growth_profile(sg_dirichlet.phi, samples=121)
    assert prof.periodicity_defect < 1e-6
    profc = poincare.growth_profile(cheb.phi, samples=121)
    assert profc.periodicity_defect < 1e-6


def test_growth_profile_band_brackets_spiral_limit(sg_dirichlet):
    prof = poincare.growth_profile(sg_dirichlet.phi, samples=121)
    lo, hi = float(np.min(prof.qhat)), float(np.max(prof.qhat))
    assert lo <= SPIRAL_L_SG <= hi + 1e-6
    assert hi - lo < 1e-4                 # the zero-angle ray is nearly flat


def test_spiral_limit_regression(sg_dirichlet):
    rep = poincare.spiral_limit(sg_dirichlet.pmap, 10.0,
                                complex(sg_dirichlet.phi(10.0)))
    assert rep.converged
    assert rep.bracket_ok and rep.coarse_ok
    assert abs(rep.L - SPIRAL_L_SG) < 1e-9


def test_spiral_limit_flat_case_is_one(cheb):
    rep = poincare.spiral_limit(cheb.pmap, 10.0, complex(cheb.phi(10.0)))
    assert rep.converged
    assert abs(rep.L - 1.0) < 1e-8


def test_quadratic_reality_table():
    # P(z) = a z (z - omega); threshold 2 for omega > 0, 4 for omega < 0
    assert poincare.julia_real_quadratic(1.0, 4.0) is True
    assert poincare.julia_real_quadratic(1.0, 1.5) is False
    assert poincare.julia_real_quadratic(1.0, -4.0) is True
    assert poincare.julia_real_quadratic(1.0, -3.9) is False
    assert poincare.julia_real_quadratic(-1.0, -4.0) is True    # sign symmetry
    with pytest.raises(DomainError):
        poincare.julia_real_quadratic(1.0, 0.0)


def test_julia_sampling_gasket_map(sg_dirichlet):
    rep = poincare.julia_sample_and_multipliers(sg_dirichlet.pmap,
                                                depth=30, samples=300,
                                                seed=0x5EED)
    assert rep.is_real
    # the sampled hull endpoint sits at the repelling fixed point 0, where
    # the exact derivative is 5, strictly above the degree bound 4
    assert abs(sg_dirichlet.pmap.deriv(0.0)) == 5.0
    top = [m for m in rep.multipliers if m.kind == "max J"][0]
    assert abs(top.point) < 1e-3
    assert abs(top.abs_deriv - 5.0) < 1e-2
    assert top.bound == 4.0 and top.satisfied and not top.equality
    assert not rep.chebyshev_equality


def test_julia_sampling_flat_map_hits_equality(cheb):
    rep = poincare.julia_sample_and_multipliers(cheb.pmap, depth=30,
                                                samples=300, seed=0x5EED)
    assert rep.is_real
    assert rep.chebyshev_equality


def test_julia_sampling_is_seed_deterministic(sg_dirichlet):
    a = poincare.julia_sample_and_multipliers(sg_dirichlet.pmap, depth=20,
                                              samples=100, seed=11)
    b = poincare.julia_sample_and_multipliers(sg_dirichlet.pmap, depth=20,
                                              samples=100, seed=11)
    assert a.to_dict() == b.to_dict()
