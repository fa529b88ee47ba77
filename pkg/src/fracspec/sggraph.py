"""Sierpinski-lattice graphs, walk Laplacians, finite energy forms.

The dense eigensolver on these graphs is the ground truth that the
backward-iteration spectrum is checked against.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np
import scipy.linalg

from .errors import CapacityError, ContractError, DegenerateNetworkError, DomainError
from .selfsim import sierpinski_system

# --- graphs ---


@dataclass(frozen=True)
class LatticeGraph:
    """Level-n Sierpinski graph with deterministic (lexicographic) vertex order."""

    level: int
    vertices: np.ndarray          # (n, 2) coordinates
    edges: tuple[tuple[int, int], ...]
    boundary: tuple[int, int, int]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_vertices, dtype=int)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n_vertices, self.n_vertices))
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1.0
        return a

    def interior(self) -> np.ndarray:
        mask = np.ones(self.n_vertices, dtype=bool)
        mask[list(self.boundary)] = False
        return np.flatnonzero(mask)


def build_graph(level: int) -> LatticeGraph:
    """Level-n graph: 3^n scaled triangles glued at shared corners.

    Vertex count (3^(n+1)+3)/2, edge count 3^(n+1); boundary vertices have
    degree 2 and interior vertices degree 4.
    """
    if not 0 <= level <= 8:
        raise CapacityError(f"level {level} outside 0..8")
    system = sierpinski_system()
    base = np.asarray(system.fixed_points, dtype=float)
    tol = 1e-12 * system.diameter()

    cells = [base]
    for _ in range(level):
        cells = [system.apply(i, c) for i in range(1, 4) for c in cells]
    pts = np.vstack(cells)
    keys = np.round(pts / tol).astype(np.int64)
    uniq, inverse = np.unique(keys, axis=0, return_inverse=True)

    # lexicographic order on the deduplicated coordinates
    coords = uniq * tol
    order = np.lexsort((coords[:, 1], coords[:, 0]))
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    vertices = coords[order]
    idx = rank[inverse].reshape(-1, 3)  # one row of 3 vertex ids per cell

    edges = set()
    for a, b, c in idx:
        edges.add((min(a, b), max(a, b)))
        edges.add((min(b, c), max(b, c)))
        edges.add((min(a, c), max(a, c)))

    bkeys = np.round(base / tol).astype(np.int64)
    boundary = []
    for bk in bkeys:
        pos = np.flatnonzero((uniq == bk).all(axis=1))
        boundary.append(int(rank[pos[0]]))
    g = LatticeGraph(level=level, vertices=vertices, edges=tuple(sorted(edges)),
                     boundary=tuple(boundary))
    assert g.n_vertices == (3 ** (level + 1) + 3) // 2
    assert len(g.edges) == 3 ** (level + 1)
    return g


def graph_laplacian(g: LatticeGraph, bc: str, form: str = "symmetric") -> np.ndarray:
    """Walk Laplacian P - I with p(x,y) = 1/deg(x), as a dense matrix.

    bc="dirichlet" deletes boundary rows and columns; bc="neumann" keeps the
    full matrix. form="walk" returns P - I itself (its rows sum to zero);
    form="symmetric" returns the similar matrix D^1/2 (P - I) D^-1/2, which
    has the same spectrum and is exactly symmetric. For Dirichlet boundary
    conditions all retained degrees equal 4, so the two forms coincide.
    """
    if bc not in ("dirichlet", "neumann"):
        raise DomainError(f"unknown boundary condition {bc!r}")
    if form not in ("symmetric", "walk"):
        raise DomainError(f"unknown form {form!r}")
    a = g.adjacency()
    deg = g.degrees().astype(float)
    if form == "walk":
        m = a / deg[:, None] - np.eye(g.n_vertices)
    else:
        s = 1.0 / np.sqrt(deg)
        m = s[:, None] * a * s[None, :] - np.eye(g.n_vertices)
    if bc == "dirichlet":
        keep = g.interior()
        m = m[np.ix_(keep, keep)]
    return m


@dataclass(frozen=True)
class EigenResult:
    values: np.ndarray                      # sorted ascending
    clusters: tuple[tuple[float, int], ...]  # (representative value, multiplicity)


def eigensolve_dense(op: np.ndarray, cluster_tol: float = 1e-8) -> EigenResult:
    """All eigenvalues of a symmetric matrix, with multiplicity clustering.

    Input must be symmetric to 1e-12 relative; clustering merges eigenvalues
    within cluster_tol relative to max(1, |value|).
    """
    op = np.asarray(op, dtype=float)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ContractError("matrix must be square")
    scale = max(1.0, float(np.max(np.abs(op))))
    if float(np.max(np.abs(op - op.T))) > 1e-12 * scale:
        raise ContractError("matrix is not symmetric")
    if op.shape[0] > 1200:
        raise CapacityError("dense eigensolve limited to dimension 1200")
    vals = np.sort(scipy.linalg.eigvalsh(op))
    clusters = []
    i = 0
    while i < len(vals):
        j = i
        while j + 1 < len(vals) and abs(vals[j + 1] - vals[i]) <= cluster_tol * max(1.0, abs(vals[i])):
            j += 1
        clusters.append((float(np.mean(vals[i:j + 1])), j - i + 1))
        i = j + 1
    return EigenResult(values=vals, clusters=tuple(clusters))


# --- finite energy forms ---


@dataclass(frozen=True)
class FiniteForm:
    """Quadratic energy E(u, u) = u^T Q u on a finite vertex set.

    Q is the symmetric (graph-Laplacian style) coefficient matrix; for a
    conductance network Q = diag(row sums of C) - C.
    """

    Q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.Q, dtype=float)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ContractError("coefficient matrix must be square")
        if float(np.max(np.abs(q - q.T))) > 1e-12 * max(1.0, float(np.max(np.abs(q)))):
            raise ContractError("coefficient matrix must be symmetric")
        object.__setattr__(self, "Q", q)

    @property
    def size(self) -> int:
        return self.Q.shape[0]

    def energy(self, u) -> float:
        u = np.asarray(u, dtype=float)
        return float(u @ self.Q @ u)

    @staticmethod
    def from_conductances(n: int, edges) -> "FiniteForm":
        """Network form from (i, j, conductance) triples."""
        q = np.zeros((n, n))
        for i, j, c in edges:
            if c <= 0:
                raise DomainError("conductances must be positive")
            q[i, i] += c
            q[j, j] += c
            q[i, j] -= c
            q[j, i] -= c
        return FiniteForm(q)


def triangle_form(conductance: float = 1.0) -> FiniteForm:
    """Unit triangle network on 3 vertices."""
    return FiniteForm.from_conductances(
        3, [(0, 1, conductance), (1, 2, conductance), (0, 2, conductance)])


def sg_level1_form(conductance: float = 1.0) -> FiniteForm:
    """Level-1 network: 6 vertices, unit conductances on the 9 edges.

    Vertex order matches build_graph(1): corners of the big triangle are the
    graph's boundary indices.
    """
    g = build_graph(1)
    return FiniteForm.from_conductances(
        g.n_vertices, [(i, j, conductance) for i, j in g.edges])


def restrict_form(form: FiniteForm, subset) -> FiniteForm:
    """Trace of the form on a vertex subset, by the Schur complement.

    The result satisfies E_U(u, u) = min { E(v, v) : v restricted to U = u },
    the electrical-network reduction.
    """
    subset = sorted(set(int(i) for i in subset))
    n = form.size
    if not subset or any(i < 0 or i >= n for i in subset):
        raise DomainError("subset must be nonempty with valid indices")
    comp = [i for i in range(n) if i not in subset]
    if not comp:
        return FiniteForm(form.Q.copy())
    quu = form.Q[np.ix_(subset, subset)]
    qui = form.Q[np.ix_(subset, comp)]
    qii = form.Q[np.ix_(comp, comp)]
    # interior block of a connected conductance form is strictly positive definite
    try:
        c = scipy.linalg.cho_factor(qii)
    except np.linalg.LinAlgError as e:
        raise DegenerateNetworkError(f"singular interior block: {e}") from e
    s = quu - qui @ scipy.linalg.cho_solve(c, qui.T)
    return FiniteForm((s + s.T) / 2.0)


# --- decimation oracle ---


@dataclass(frozen=True)
class DecimationReport:
    levels: tuple[int, ...]
    bc: str
    branch_values: dict          # level -> first-k positive eigenvalues nu (ascending)
    ratios: dict                 # (level n) -> nu_k(n) / nu_k(n+1) array
    limit_estimates: dict        # level -> 5^n nu_k(n)
    fitted_constant: float | None
    continuum: np.ndarray | None
    rel_errors: np.ndarray | None
    conclusive: bool
    note: str

    def to_dict(self) -> dict:
        return {
            "levels": list(self.levels),
            "bc": self.bc,
            "branch_values": {str(k): v.tolist() for k, v in self.branch_values.items()},
            "ratios": {str(k): v.tolist() for k, v in self.ratios.items()},
            "limit_estimates": {str(k): v.tolist() for k, v in self.limit_estimates.items()},
            "fitted_constant": self.fitted_constant,
            "continuum": None if self.continuum is None else self.continuum.tolist(),
            "rel_errors": None if self.rel_errors is None else self.rel_errors.tolist(),
            "conclusive": self.conclusive,
            "note": self.note,
        }


def verify_decimation_oracle(levels, bc: str = "dirichlet", system=None,
                             k: int = 10) -> DecimationReport:
    """Compare dense graph spectra across levels with the enumerated spectrum.

    For the first k eigenvalue branches (rank order; multiplicities of the low
    branches are level-stable) the report lists the ratios nu_k(n)/nu_k(n+1),
    the rescaled limits 5^n nu_k(n), and, after fitting one positive constant
    on the ground branch, the relative mismatch against the continuum values.
    """
    levels = sorted(set(int(n) for n in levels))
    spectra = {}
    for n in levels:
        g = build_graph(n)
        lap = graph_laplacian(g, bc)
        vals = eigensolve_dense(lap).values
        nu = np.sort(-vals)          # positive, ascending: nu = -eigenvalue
        nu = nu[nu > 1e-12] if bc == "neumann" else nu
        spectra[n] = nu[:k]
    ratios = {}
    for n in levels:
        if n + 1 in spectra:
            kk = min(len(spectra[n]), len(spectra[n + 1]))
            ratios[n] = spectra[n][:kk] / spectra[n + 1][:kk]
    limits = {n: 5.0**n * spectra[n] for n in levels}

    if len(levels) < 2:
        return DecimationReport(tuple(levels), bc, spectra, ratios, limits,
                                None, None, None, False, "need at least two levels")

    from . import decimation

    top = levels[-1]
    sys_ = system if system is not None else decimation.sg_system(bc)
    target = limits[top]
    # enumerate enough of the continuum spectrum to cover k branches
    eigs = decimation.enumerate_spectrum(sys_, cutoff=None, count=k + 5)
    mu = eigs.expand()[:k]
    kk = min(len(mu), len(target))
    c = float(mu[0] / target[0])
    rel = np.abs(c * target[:kk] - mu[:kk]) / mu[:kk]
    return DecimationReport(tuple(levels), bc, spectra, ratios, limits, c,
                            mu[:kk], rel, True, "")
