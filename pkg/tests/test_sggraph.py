"""Graph Laplacians, dense spectra, and energy-form restriction."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracspec import sggraph
from fracspec.errors import ContractError, DomainError


def test_graph_counts():
    for n in range(6):
        g = sggraph.build_graph(n)
        assert g.n_vertices == (3 ** (n + 1) + 3) // 2
        assert len(g.edges) == 3 ** (n + 1)
        assert len(g.boundary) == 3


def test_level_one_dirichlet_spectrum_exact():
    g = sggraph.build_graph(1)
    lap = sggraph.graph_laplacian(g, "dirichlet")
    res = sggraph.eigensolve_dense(lap)
    assert np.allclose(np.sort(res.values), [-1.25, -1.25, -0.5], atol=1e-12)
    mults = sorted(m for _, m in res.clusters)
    assert mults == [1, 2]


def test_dirichlet_eigenvalue_count():
    for n in range(1, 5):
        g = sggraph.build_graph(n)
        res = sggraph.eigensolve_dense(sggraph.graph_laplacian(g, "dirichlet"))
        assert len(res.values) == (3 ** (n + 1) - 3) // 2


def test_neumann_has_constant_kernel():
    g = sggraph.build_graph(2)
    res = sggraph.eigensolve_dense(sggraph.graph_laplacian(g, "neumann"))
    assert len(res.values) == g.n_vertices
    assert abs(res.values[-1]) < 1e-10          # ascending, top is 0
    assert all(v < -1e-10 for v in res.values[:-1])


def test_symmetric_and_walk_forms_are_isospectral():
    # nontrivial for neumann: the matrices differ, the spectra must not
    g = sggraph.build_graph(2)
    sym = sggraph.graph_laplacian(g, "neumann", form="symmetric")
    wal = sggraph.graph_laplacian(g, "neumann", form="walk")
    with pytest.raises(ContractError):
        sggraph.eigensolve_dense(wal)       # row-stochastic form is not symmetric
    a = sggraph.eigensolve_dense(sym).values
    b = np.sort(np.linalg.eigvals(wal).real)
    assert np.allclose(a, b, atol=1e-9)


def test_level_one_restriction_is_three_fifths():
    g = sggraph.build_graph(1)
    got = sggraph.restrict_form(sggraph.sg_level1_form(), g.boundary).Q
    want = sggraph.triangle_form(0.6).Q
    assert np.max(np.abs(got - want)) < 1e-12


def _random_form(conductances):
    """Complete graph on 5 vertices with the given positive conductances."""
    pairs = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    edges = [(i, j, c) for (i, j), c in zip(pairs, conductances)]
    return sggraph.FiniteForm.from_conductances(5, edges)


conductance_lists = st.lists(st.floats(min_value=0.1, max_value=10.0),
                             min_size=10, max_size=10)


@settings(max_examples=30, deadline=None)
@given(conductance_lists)
def test_restriction_is_transitive(cs):
    form = _random_form(cs)
    direct = sggraph.restrict_form(form, (0, 1, 2)).Q
    two_step = sggraph.restrict_form(
        sggraph.restrict_form(form, (0, 1, 2, 3)), (0, 1, 2)).Q
    assert np.max(np.abs(direct - two_step)) < 1e-9


@settings(max_examples=30, deadline=None)
@given(conductance_lists)
def test_restriction_keeps_markov_structure(cs):
    q = sggraph.restrict_form(_random_form(cs), (0, 1, 2)).Q
    assert np.max(np.abs(q - q.T)) < 1e-10
    assert np.max(np.abs(q.sum(axis=1))) < 1e-9      # kills constants
    off = q[~np.eye(3, dtype=bool)]
    assert np.all(off <= 1e-10)                      # conductances >= 0


def test_restriction_rejects_bad_subset():
    form = sggraph.triangle_form()
    with pytest.raises(DomainError):
        sggraph.restrict_form(form, (0, 7))


def test_decimation_oracle_low_levels():
    # coarse levels: higher branches are still ~5% from the limit ratio 5
    rep = sggraph.verify_decimation_oracle((3, 4), bc="dirichlet", k=6)
    ratios = rep.ratios[3]
    assert np.all(np.abs(ratios - 5.0) < 0.3)
    assert np.all(np.abs(ratios[:2] - 5.0) < 0.1)    # ground branches tighter
