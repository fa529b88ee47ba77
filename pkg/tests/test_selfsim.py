"""Iterated function systems: dimensions and vertex generation."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracspec import selfsim
from fracspec.errors import DomainError

# d solving (1/2)^d + (1/4)^d = 1; with x = 2^{-d}, x + x^2 = 1, so
# x is the reciprocal golden ratio and d = log((1+sqrt 5)/2) / log 2.
GOLDEN_DIM = math.log((1.0 + math.sqrt(5.0)) / 2.0) / math.log(2.0)


def test_equal_ratio_dimension_closed_form():
    d = selfsim.hausdorff_dim([0.5, 0.5, 0.5])
    assert abs(d - math.log(3.0) / math.log(2.0)) < 1e-12


def test_mixed_ratio_dimension_golden():
    d = selfsim.hausdorff_dim([0.5, 0.25])
    assert abs(d - GOLDEN_DIM) < 1e-12


def test_dimension_rejects_bad_ratios():
    with pytest.raises(DomainError):
        selfsim.hausdorff_dim([0.5, 1.0])
    with pytest.raises(DomainError):
        selfsim.hausdorff_dim([])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(min_value=0.05, max_value=0.8), min_size=2,
                max_size=5))
def test_dimension_solves_moment_equation(ratios):
    d = selfsim.hausdorff_dim(ratios)
    assert abs(sum(r**d for r in ratios) - 1.0) < 1e-9


def test_sierpinski_system_shape():
    sys_ = selfsim.sierpinski_system()
    assert sys_.m == 3
    assert abs(sys_.diameter() - 1.0) < 1e-12
    for i, p in enumerate(sys_.fixed_points, start=1):
        q = sys_.apply(i, np.asarray(p, dtype=float))
        assert np.allclose(q, p, atol=1e-14)


def test_vertex_counts_follow_refinement_rule():
    sys_ = selfsim.sierpinski_system()
    v0 = np.asarray(sys_.fixed_points, dtype=float)
    for n in range(5):
        pts = selfsim.generate_Vn(sys_, sys_.fixed_points, n)
        assert len(pts) == (3 ** (n + 1) + 3) // 2


def test_vertex_sets_are_nested():
    sys_ = selfsim.sierpinski_system()
    coarse = selfsim.generate_Vn(sys_, sys_.fixed_points, 2)
    fine = selfsim.generate_Vn(sys_, sys_.fixed_points, 3)
    for p in coarse:
        dists = np.linalg.norm(fine - p, axis=1)
        assert dists.min() < 1e-12
