"""Random walks on Sierpinski lattices and the hitting-time branching process.

All Monte Carlo draws come from a counter-based generator (Philox) keyed by
the run seed, so results are reproducible bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetError, CapacityError, DomainError, SupercriticalityError
from .sggraph import build_graph, graph_laplacian

DEFAULT_SEED = 0x5EED


# --- probability generating functions ---


@dataclass(frozen=True)
class Pgf:
    """Rational probability generating function num(z)/den(z), ascending coeffs."""

    num: tuple[float, ...]
    den: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "num", tuple(float(c) for c in self.num))
        object.__setattr__(self, "den", tuple(float(c) for c in self.den))
        if abs(self.value(1.0) - 1.0) > 1e-12:
            raise DomainError("q(1) must equal 1")

    def value(self, z: float) -> float:
        n = sum(c * z**k for k, c in enumerate(self.num))
        d = sum(c * z**k for k, c in enumerate(self.den))
        if d == 0.0:
            raise DomainError(f"denominator vanishes at z = {z}")
        return n / d

    def deriv(self, z: float) -> float:
        n = sum(c * z**k for k, c in enumerate(self.num))
        d = sum(c * z**k for k, c in enumerate(self.den))
        dn = sum(k * c * z ** (k - 1) for k, c in enumerate(self.num) if k)
        dd = sum(k * c * z ** (k - 1) for k, c in enumerate(self.den) if k)
        return (dn * d - n * dd) / d**2

    def series(self, n_terms: int) -> np.ndarray:
        """Power-series coefficients by the division recurrence."""
        if self.den[0] == 0.0:
            raise DomainError("denominator must not vanish at 0")
        c = np.zeros(n_terms)
        num = list(self.num) + [0.0] * n_terms
        for j in range(n_terms):
            acc = num[j]
            for k in range(1, min(j, len(self.den) - 1) + 1):
                acc -= self.den[k] * c[j - k]
            c[j] = acc / self.den[0]
        return c


def sg_hitting_pgf() -> Pgf:
    """Generating function z^2/(4 - 3z) of the corner-to-corner hitting time."""
    return Pgf(num=(0.0, 0.0, 1.0), den=(4.0, -3.0))


# --- walk configuration ---


@dataclass(frozen=True)
class WalkConfig:
    level: int = 1
    start: int | None = None       # coarse vertex index; None = first corner
    step_budget: int = 1_000_000
    samples: int = 100_000
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.samples < 1:
            raise DomainError("sample count must be >= 1")
        if self.level < 0 or self.level > 6:
            raise CapacityError("walk level limited to 0..6")


@dataclass(frozen=True)
class HittingStats:
    times: np.ndarray
    mean: float
    var: float
    std_err: float
    histogram: dict
    n_samples: int

    def atom_probability(self, t: int) -> tuple[float, float]:
        """Empirical P(T = t) and its standard error."""
        p = float(np.mean(self.times == t))
        se = float(np.sqrt(p * (1 - p) / len(self.times)))
        return p, se

    def to_dict(self) -> dict:
        return {
            "mean": self.mean, "var": self.var, "std_err": self.std_err,
            "n_samples": self.n_samples,
            "histogram": {str(k): int(v) for k, v in sorted(self.histogram.items())},
        }


def _neighbor_table(g):
    """CSR-style neighbor arrays for vectorized stepping."""
    nbrs = [[] for _ in range(g.n_vertices)]
    for i, j in g.edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    deg = np.array([len(x) for x in nbrs])
    offs = np.concatenate([[0], np.cumsum(deg)])
    flat = np.array([j for lst in nbrs for j in sorted(lst)])
    return flat, offs, deg


def simulate_hitting_times(cfg: WalkConfig) -> HittingStats:
    """Time for the fine walk on G_(level+1) to reach a new coarse vertex.

    The walk starts at a vertex of V_level embedded in G_(level+1) and stops
    on first arrival at any other V_level vertex. On G_0 itself (level -1 is
    not modeled) every step hits another corner, so T = 1; that case is the
    level=0 configuration with the fine graph G_1 replaced by G_0 when
    level == 0 and start on V_0: here level k uses fine graph G_(k+1).
    """
    fine = build_graph(cfg.level + 1)
    coarse = build_graph(cfg.level)
    tol = 1e-9
    # indices of coarse vertices inside the fine graph (grids share coordinates)
    cidx = []
    for p in coarse.vertices:
        d = np.linalg.norm(fine.vertices - p, axis=1)
        cidx.append(int(np.argmin(d)))
        assert d[cidx[-1]] < tol
    cidx = np.array(cidx)
    start = cidx[cfg.start if cfg.start is not None else coarse.boundary[0]]
    is_target = np.zeros(fine.n_vertices, dtype=bool)
    is_target[cidx] = True
    is_target[start] = False

    flat, offs, deg = _neighbor_table(fine)
    rng = np.random.Generator(np.random.Philox(key=cfg.seed))
    pos = np.full(cfg.samples, start, dtype=np.int64)
    times = np.zeros(cfg.samples, dtype=np.int64)
    active = np.ones(cfg.samples, dtype=bool)
    t = 0
    while active.any():
        if t >= cfg.step_budget:
            done = times[~active]
            raise BudgetError(
                f"step budget {cfg.step_budget} exhausted with "
                f"{int(active.sum())} walks unfinished",
                partial={"n_absorbed": int((~active).sum()),
                         "mean": float(done.mean()) if len(done) else float("nan")})
        t += 1
        idx = np.flatnonzero(active)
        u = rng.random(len(idx))
        p = pos[idx]
        step = flat[offs[p] + (u * deg[p]).astype(np.int64)]
        pos[idx] = step
        hit = is_target[step]
        times[idx[hit]] = t
        active[idx[hit]] = False
    mean = float(times.mean())
    var = float(times.var(ddof=1))
    se = float(np.sqrt(var / cfg.samples))
    uniq, counts = np.unique(times, return_counts=True)
    hist = {int(k): int(v) for k, v in zip(uniq, counts)}
    return HittingStats(times=times, mean=mean, var=var, std_err=se,
                        histogram=hist, n_samples=cfg.samples)


def hitting_distribution_by_iteration(q: Pgf, levels: int, n_terms: int) -> np.ndarray:
    """Distribution of the level-(levels) hitting time via PGF composition.

    The time to cross one level has PGF q; crossing k levels composes q with
    itself k times. Coefficients are extracted by series expansion.
    """
    coeffs = q.series(n_terms)
    out = coeffs.copy()
    for _ in range(levels - 1):
        # compose: out(z) <- out evaluated at series q, truncated
        acc = np.zeros(n_terms)
        power = np.zeros(n_terms)
        power[0] = 1.0
        for k, c in enumerate(out):
            if k:
                power = np.convolve(power, coeffs)[:n_terms]
            if c:
                acc += c * power
        out = acc
    return out


# --- branching process ---


@dataclass(frozen=True)
class BranchingResult:
    generations: int
    sizes: np.ndarray        # (samples, generations+1)
    normalized: np.ndarray   # mean^-n Z_n
    offspring_mean: float

    def to_dict(self) -> dict:
        return {
            "generations": self.generations,
            "offspring_mean": self.offspring_mean,
            "mean_sizes": self.sizes.mean(axis=0).tolist(),
            "mean_normalized": self.normalized.mean(axis=0).tolist(),
            "se_normalized": (self.normalized.std(axis=0, ddof=1)
                              / np.sqrt(self.sizes.shape[0])).tolist(),
        }


def branching_simulate(q: Pgf, generations: int, samples: int,
                       seed: int = DEFAULT_SEED, mass_tol: float = 1e-12,
                       max_support: int = 2000) -> BranchingResult:
    """Galton-Watson generation sizes with offspring law q, Z_0 = 1.

    The offspring support is truncated where the cumulative mass reaches
    1 - mass_tol (remainder lumped onto the last atom, bias < mass_tol per
    draw); a generation is advanced by one multinomial split per sample, which
    is distributionally exact and independent of the population size.
    """
    mean = q.deriv(1.0)
    if mean <= 1.0:
        raise SupercriticalityError(f"offspring mean {mean:g} <= 1")
    pmf = q.series(max_support)
    if np.any(pmf < -1e-12):
        raise DomainError("offspring expansion has a negative coefficient")
    pmf = np.clip(pmf, 0.0, None)
    csum = np.cumsum(pmf)
    cut = int(np.searchsorted(csum, 1.0 - mass_tol)) + 1
    pmf = pmf[:cut]
    pmf[-1] += max(0.0, 1.0 - pmf.sum())
    ks = np.arange(cut)

    rng = np.random.Generator(np.random.Philox(key=seed))
    sizes = np.zeros((samples, generations + 1), dtype=np.int64)
    sizes[:, 0] = 1
    for s in range(samples):
        z = 1
        for g in range(1, generations + 1):
            if z == 0:
                break
            counts = rng.multinomial(z, pmf)
            z = int(counts @ ks)
            sizes[s, g] = z
    norm = sizes / mean ** np.arange(generations + 1)
    return BranchingResult(generations=generations, sizes=sizes,
                           normalized=norm, offspring_mean=float(mean))


# --- exact return probabilities ---


@dataclass(frozen=True)
class ReturnReport:
    n: np.ndarray
    p_return: np.ndarray
    scaled: np.ndarray       # n^(d_S/2) p_n(x,x)
    d_s: float
    row_sum_defect: float

    def to_dict(self) -> dict:
        return {
            "n": self.n.tolist(), "p_return": self.p_return.tolist(),
            "scaled": self.scaled.tolist(), "d_s": self.d_s,
            "row_sum_defect": self.row_sum_defect,
        }


def return_probabilities(level: int, max_steps: int) -> ReturnReport:
    """Exact p_n(x, x) for a corner x of the level-n graph, by convolution.

    Dynamic programming on the walk matrix (no sampling); also reports
    n^(d_S/2) p_n(x,x) with d_S = 2 log 3 / log 5, whose fluctuation band is
    the object of interest.
    """
    if level > 6:
        raise CapacityError("return probabilities limited to level <= 6")
    g = build_graph(level)
    p = graph_laplacian(g, "neumann", form="walk") + np.eye(g.n_vertices)
    x = g.boundary[0]
    row = np.zeros(g.n_vertices)
    row[x] = 1.0
    ds = 2.0 * np.log(3.0) / np.log(5.0)
    pr = np.zeros(max_steps + 1)
    pr[0] = 1.0
    defect = 0.0
    for n in range(1, max_steps + 1):
        row = row @ p
        defect = max(defect, abs(float(row.sum()) - 1.0))
        pr[n] = row[x]
    ns = np.arange(max_steps + 1)
    with np.errstate(divide="ignore"):
        scaled = np.where(ns > 0, ns.astype(float) ** (ds / 2) * pr, np.nan)
    return ReturnReport(n=ns, p_return=pr, scaled=scaled, d_s=ds,
                        row_sum_defect=defect)


# --- conjugation check ---


@dataclass(frozen=True)
class ConjugationReport:
    value_at_1: float
    deriv_at_1: float
    conjugate_coeffs: tuple[float, ...] | None
    is_polynomial: bool

    def to_dict(self) -> dict:
        return {
            "value_at_1": self.value_at_1,
            "deriv_at_1": self.deriv_at_1,
            "conjugate_coeffs": (None if self.conjugate_coeffs is None
                                 else list(self.conjugate_coeffs)),
            "is_polynomial": self.is_polynomial,
        }


def pgf_conjugation_check(q: Pgf) -> ConjugationReport:
    """Check q(1) = 1, compute q'(1), and expand 1/q(1/z).

    For a hitting-time PGF of a decimation walk, 1/q(1/z) is the decimation
    polynomial itself; if the division leaves a remainder the conjugate is
    reported as non-polynomial (not an error).
    """
    v1 = q.value(1.0)
    d1 = q.deriv(1.0)
    # 1/q(1/z) = z^(deg num - deg den) * rev_den(z) / rev_num(z), where rev_*
    # reverses the coefficient list. Polynomial iff the division is exact.
    num = np.trim_zeros(np.array(q.num, dtype=float), "b")
    den = np.trim_zeros(np.array(q.den, dtype=float), "b")
    shift = len(num) - len(den)
    if shift < 0:
        return ConjugationReport(value_at_1=float(v1), deriv_at_1=float(d1),
                                 conjugate_coeffs=None, is_polynomial=False)
    # In descending order rev_num's coefficients are num as stored; strip the
    # leading zeros np.polydiv cannot tolerate, then divide.
    lead_desc = np.concatenate([np.trim_zeros(den, "f"), np.zeros(shift)])
    quot, rem = np.polydiv(lead_desc, np.trim_zeros(num, "f"))
    poly_ok = bool(np.allclose(rem, 0.0, atol=1e-10)) if len(rem) else True
    coeffs = tuple(float(c) for c in quot[::-1]) if poly_ok else None
    return ConjugationReport(value_at_1=float(v1), deriv_at_1=float(d1),
                             conjugate_coeffs=coeffs, is_polynomial=poly_ok)
