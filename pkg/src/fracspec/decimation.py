"""Eigenvalue enumeration by backward iteration of the decimation polynomial.

A spectral system couples a polynomial map p (with multiplier λ = p'(0) > 1)
to a finite seed set A and, per seed w, a rational generating function R_w
whose coefficients β_m(w) are eigenvalue multiplicities. Every Laplacian
eigenvalue has the form λ^m · μ where μ is a limit of rescaled backward
iterates of w; branch words index the preimage choices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import mpmath
import numpy as np
from scipy.optimize import brentq

from .errors import (BranchError, CapacityError, ConfigError, DomainError,
                     SystemDefinitionError)
from .poincare import PolynomialMap, julia_sample_and_multipliers, solve_series

DEFAULT_SEED = 0x5EED


# --- rational generating functions ---


@dataclass(frozen=True)
class RationalGF:
    """num(z)/den(z) with exact rational coefficients, ascending order."""

    num: tuple[Fraction, ...]
    den: tuple[Fraction, ...] = (Fraction(1),)

    def __post_init__(self):
        object.__setattr__(self, "num", tuple(Fraction(c) for c in self.num))
        object.__setattr__(self, "den", tuple(Fraction(c) for c in self.den))
        if not self.den or self.den[0] == 0:
            raise SystemDefinitionError("denominator must be nonzero at z = 0")

    def value(self, z):
        n = sum(c * z**k for k, c in enumerate(self.num))
        d = sum(c * z**k for k, c in enumerate(self.den))
        return n / d

    def series(self, m_max: int) -> list[Fraction]:
        """Taylor coefficients beta_0..beta_M by the division recurrence."""
        num = list(self.num) + [Fraction(0)] * (m_max + 1)
        out = []
        for m in range(m_max + 1):
            acc = num[m]
            for k in range(1, min(m, len(self.den) - 1) + 1):
                acc -= self.den[k] * out[m - k]
            out.append(acc / self.den[0])
        return out


def multiplicity_coeffs(gf: RationalGF, m_max: int) -> list[int]:
    """Exact integer multiplicities beta_0..beta_M of a seed's series."""
    out = []
    for m, c in enumerate(gf.series(m_max)):
        if c.denominator != 1:
            raise SystemDefinitionError(
                f"multiplicity coefficient beta_{m} = {c} is not an integer")
        out.append(int(c))
    return out


# --- spectral systems ---


@dataclass(frozen=True)
class SpectralSystem:
    """Polynomial map + seed set + multiplicity generating functions."""

    pmap: PolynomialMap
    seeds: tuple[float, ...]
    gfs: tuple[RationalGF, ...]      # aligned with seeds
    bc: str = "none"
    check_julia: bool = True

    def __post_init__(self):
        if not self.seeds:
            raise SystemDefinitionError("seed set must be nonempty")
        if len(self.gfs) != len(self.seeds):
            raise SystemDefinitionError("one generating function per seed")
        object.__setattr__(self, "seeds", tuple(float(w) for w in self.seeds))
        if any(w >= 0 for w in self.seeds):
            raise SystemDefinitionError("seeds must be negative reals")
        lam = self.pmap.multiplier
        if abs(lam.imag) > 0 or lam.real <= 1:
            raise SystemDefinitionError("multiplier must be real and > 1")
        if self.check_julia:
            rep = julia_sample_and_multipliers(self.pmap, depth=30,
                                               samples=200, seed=7)
            if not rep.is_real:
                raise SystemDefinitionError("Julia sample is not real")
            if float(np.max(rep.samples.real)) > 1e-9 * max(1.0, rep.scale):
                raise SystemDefinitionError("Julia sample is not nonpositive")

    @property
    def lam(self) -> float:
        return self.pmap.multiplier.real

    @cached_property
    def phi(self):
        """Poincare function of the map, shared by residual checks."""
        return solve_series(self.pmap)

    def gf_for(self, w: float) -> RationalGF:
        for seed, gf in zip(self.seeds, self.gfs):
            if seed == w:
                return gf
        raise DomainError(f"{w} is not a seed of this system")

    @cached_property
    def _repelling_floor(self) -> float:
        """Lower bound for |y| after any non-attracting preimage step.

        For a quadratic the two preimages straddle the critical point, so the
        farther-from-zero one is at least |critical point| in magnitude; for
        higher degree the bound is sampled over a shallow backward tree and
        relaxed by a safety factor.
        """
        if self.pmap.degree == 2:
            a1, a2 = self.pmap.coeffs
            return abs(a1.real) / (2 * abs(a2.real))
        best = math.inf
        frontier = list(self.seeds)
        for _ in range(5):
            nxt = []
            for y in frontier:
                roots = self.pmap.preimages(y)
                att = min(range(len(roots)), key=lambda i: abs(roots[i]))
                for i, r in enumerate(roots):
                    if i != att:
                        best = min(best, abs(r))
                    nxt.append(r.real)
            frontier = nxt
        return 0.5 * best

    def zero_order(self, w: float) -> int:
        """Multiplicity of each root of Phi(-mu) = w: 2 when w is a critical
        value of a quadratic map (every backward orbit passes the critical
        point), else 1 for simple decimation systems."""
        return _zero_order(self.pmap, float(w))


@lru_cache(maxsize=256)
def _zero_order(pmap: PolynomialMap, w: float) -> int:
    roots = np.roots([complex(c).real for c in pmap.coeffs[::-1]] + [-w])
    roots = np.sort_complex(roots)
    order = 1
    for i in range(len(roots) - 1):
        if abs(roots[i + 1] - roots[i]) < 1e-6 * max(1.0, abs(roots[i])):
            order += 1
    return order


def sg_system(bc: str = "dirichlet") -> SpectralSystem:
    """Gasket system: p(x) = x(x+5), seeds {-2, -3, -5}.

    Generating functions in z (one coefficient per generation m):
      Dirichlet: R_-2 = z, R_-3 = 3z^3/((1-z)(1-3z)),
                 R_-5 = z(2-5z)/((1-z)(1-3z)).
      Neumann:   R_-2 = 0, R_-3 = z(2-5z)/((1-z)(1-3z)),
                 R_-5 = z/((1-z)(1-3z)).
    """
    pmap = PolynomialMap((5.0, 1.0))
    den = (Fraction(1), Fraction(-4), Fraction(3))     # (1-z)(1-3z)
    ratio_a = RationalGF((Fraction(0), Fraction(0), Fraction(0), Fraction(3)), den)
    ratio_b = RationalGF((Fraction(0), Fraction(2), Fraction(-5)), den)
    ratio_c = RationalGF((Fraction(0), Fraction(1)), den)
    if bc == "dirichlet":
        gfs = (RationalGF((Fraction(0), Fraction(1))), ratio_a, ratio_b)
    elif bc == "neumann":
        gfs = (RationalGF((Fraction(0),)), ratio_b, ratio_c)
    else:
        raise DomainError(f"unknown boundary condition: {bc!r}")
    return SpectralSystem(pmap=pmap, seeds=(-2.0, -3.0, -5.0), gfs=gfs, bc=bc)


def chebyshev_system(seeds=(-4.0, -2.0)) -> SpectralSystem:
    """Flat test system p(x) = x(x+4) with closed-form spectrum families."""
    one = RationalGF((Fraction(1),))
    return SpectralSystem(pmap=PolynomialMap((4.0, 1.0)),
                          seeds=tuple(float(w) for w in seeds),
                          gfs=tuple(one for _ in seeds), bc="none")


# --- backward iteration ---


def _real_preimages(pmap: PolynomialMap, y: float) -> list[float]:
    roots = pmap.preimages(y)
    out = []
    for r in roots:
        if abs(r.imag) > 1e-9 * max(1.0, abs(r)):
            raise BranchError(f"complex preimage {r:.6g} of {y:.6g}")
        out.append(r.real)
    return out


def _attracting_index(roots: list[float]) -> int:
    return min(range(len(roots)), key=lambda i: (abs(roots[i]), i))


def _attracting_tail(pmap: PolynomialMap, y: float, rel_tol: float = 1e-13,
                     max_iter: int = 300) -> float:
    """lim λ^n (−y_n) along the preimage branch converging to 0."""
    lam = pmap.multiplier.real
    lam_pow = 1.0
    prev = None
    for n in range(max_iter):
        t = lam_pow * (-y)
        if prev is not None and abs(t - prev) <= rel_tol * max(abs(t), 1e-300):
            return t
        prev = t
        roots = _real_preimages(pmap, y)
        y = roots[_attracting_index(roots)]
        lam_pow *= lam
    raise BranchError(f"attracting tail failed to converge from {y:.6g}")


def preimage_eigenvalue(system: SpectralSystem, w: float, word=()) -> float:
    """μ for seed w and a finite branch word, attracting tail afterwards.

    Word letters index the ascending list of real preimages at each backward
    step. The raw limit is polished by Newton iteration on Φ(−μ) = w.
    """
    if w >= 0:
        raise DomainError("seed must be negative")
    d = system.pmap.degree
    y = float(w)
    for step, b in enumerate(word):
        if not 0 <= int(b) < d:
            raise BranchError(f"letter {b} at position {step} outside 0..{d - 1}")
        y = _real_preimages(system.pmap, y)[int(b)]
    mu = system.lam ** len(word) * _attracting_tail(system.pmap, y)
    phi = system.phi
    q = system.zero_order(w)     # ×q Newton step converges on q-fold roots
    best, best_res = mu, abs(phi(-mu) - w)
    for _ in range(4):
        dphi = phi.derivative(-mu)
        if dphi == 0:
            break
        step = q * (phi(-mu) - w) / dphi
        if abs(step) > 0.05 * max(1.0, abs(mu)):
            break
        mu = float((mu + step).real) if isinstance(mu + step, complex) else mu + step
        res = abs(phi(-mu) - w)
        if res < best_res:
            best, best_res = mu, res
    if best_res > 1e-8 * max(1.0, abs(w)):
        raise BranchError(
            f"residual {best_res:.3g} too large for word {tuple(word)}")
    return float(best)


# --- root lists and spectra ---


@dataclass(frozen=True)
class RootRecord:
    value: float
    order: int                       # merged structural copies
    words: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RootList:
    """Distinct solutions of Φ(−μ) = w below a cutoff, ascending."""

    w: float
    cutoff: float
    records: tuple[RootRecord, ...]
    anomalies: tuple[tuple[float, int], ...]   # (value, merged count) != expected order

    @property
    def values(self) -> np.ndarray:
        return np.array([r.value for r in self.records])


def enumerate_roots(system: SpectralSystem, w: float, cutoff: float,
                    node_budget: int = 200_000) -> RootList:
    """All branch-word limits μ ≤ cutoff for one seed.

    Pruning: a canonical word (one ending in a non-attracting letter) of
    length L has μ ≥ λ^L · floor, because the limit dominates λ^L |y_L| and
    the last letter keeps |y_L| above the repelling floor. Subtrees whose
    minimum exceeds the cutoff are skipped; everything else is explored, so
    the list is complete below the cutoff.
    """
    if cutoff <= 0:
        return RootList(w=w, cutoff=cutoff, records=(), anomalies=())
    lam = system.lam
    floor = system._repelling_floor
    d = system.pmap.degree
    found: list[tuple[float, tuple[int, ...]]] = []
    mu0 = preimage_eigenvalue(system, w, ())
    if mu0 <= cutoff:
        found.append((mu0, ()))
    budget = [node_budget]
    max_len = max(0, math.floor(math.log(cutoff / floor) / math.log(lam)))

    def walk(y: float, word: tuple[int, ...]):
        length = len(word) + 1
        if length > max_len or lam ** length * floor > cutoff:
            return
        budget[0] -= 1
        if budget[0] < 0:
            raise CapacityError(
                f"branch enumeration exceeded {node_budget} nodes")
        roots = _real_preimages(system.pmap, y)
        att = _attracting_index(roots)
        for b, r in enumerate(roots):
            child = word + (b,)
            if b != att:
                mu = preimage_eigenvalue(system, w, child)
                if mu <= cutoff:
                    found.append((mu, child))
            walk(r, child)

    walk(float(w), ())
    found.sort(key=lambda t: (t[0], t[1]))
    expected = system.zero_order(w)
    records, anomalies = [], []
    i = 0
    while i < len(found):
        j = i + 1
        while (j < len(found)
               and found[j][0] - found[i][0] <= 1e-10 * max(1.0, abs(found[i][0]))):
            j += 1
        group = found[i:j]
        value = sum(v for v, _ in group) / len(group)
        records.append(RootRecord(value=value, order=len(group),
                                  words=tuple(wd for _, wd in group)))
        if len(group) != expected:
            anomalies.append((value, len(group)))
        i = j
    return RootList(w=w, cutoff=cutoff, records=tuple(records),
                    anomalies=tuple(anomalies))


@dataclass(frozen=True)
class SpectrumRecord:
    value: float
    multiplicity: int
    m: int
    w: float
    word: tuple[int, ...]


@dataclass(frozen=True)
class EigenvalueList:
    records: tuple[SpectrumRecord, ...]    # ascending by value
    cutoff: float
    collisions: tuple[tuple[float, int], ...]

    @property
    def total(self) -> int:
        return sum(r.multiplicity for r in self.records)

    def expand(self) -> np.ndarray:
        """Values repeated according to multiplicity."""
        return np.repeat([r.value for r in self.records],
                         [r.multiplicity for r in self.records])

    def counting(self, x: float) -> int:
        return sum(r.multiplicity for r in self.records if r.value <= x)

    def to_rows(self) -> list[tuple]:
        return [(r.value, r.multiplicity, r.m, r.w,
                 ".".join(str(b) for b in r.word)) for r in self.records]


def enumerate_spectrum(system: SpectralSystem, cutoff: float | None = None,
                       count: int | None = None,
                       node_budget: int = 500_000) -> EigenvalueList:
    """All eigenvalues λ^m μ(w, word) ≤ cutoff with multiplicities β_m(w).

    With count instead of cutoff, the cutoff grows geometrically until the
    list carries at least that much total multiplicity.
    """
    if cutoff is None:
        if count is None:
            raise DomainError("need a cutoff or a target count")
        x = 10.0 * system.lam
        for _ in range(40):
            eigs = enumerate_spectrum(system, cutoff=x, node_budget=node_budget)
            if eigs.total >= count:
                return eigs
            x *= system.lam
        raise CapacityError(f"count {count} not reached below cutoff {x:.3g}")
    if cutoff <= 0:
        raise DomainError("cutoff must be positive")
    lam = system.lam
    entries: list[SpectrumRecord] = []
    for w, gf in zip(system.seeds, system.gfs):
        roots = enumerate_roots(system, w, cutoff, node_budget=node_budget)
        if not roots.records:
            continue
        mu_min = roots.records[0].value
        m_max = max(0, math.floor(math.log(cutoff / mu_min) / math.log(lam)))
        betas = multiplicity_coeffs(gf, m_max)
        for m, beta in enumerate(betas):
            if beta < 0:
                raise SystemDefinitionError(
                    f"negative multiplicity beta_{m}({w}) = {beta}")
            if beta == 0:
                continue
            scale = lam ** m
            for rec in roots.records:
                val = scale * rec.value
                if val <= cutoff:
                    entries.append(SpectrumRecord(
                        value=val, multiplicity=beta, m=m, w=w,
                        word=rec.words[0]))
    entries.sort(key=lambda r: (r.value, r.m, r.w))
    merged: list[SpectrumRecord] = []
    collisions: list[tuple[float, int]] = []
    i = 0
    while i < len(entries):
        j = i + 1
        while (j < len(entries) and entries[j].value - entries[i].value
               <= 1e-10 * max(1.0, entries[i].value)):
            j += 1
        group = entries[i:j]
        if len(group) == 1:
            merged.append(group[0])
        else:
            value = sum(g.value for g in group) / len(group)
            mult = sum(g.multiplicity for g in group)
            merged.append(SpectrumRecord(value=value, multiplicity=mult,
                                         m=group[0].m, w=group[0].w,
                                         word=group[0].word))
            collisions.append((value, len(group)))
        i = j
    return EigenvalueList(records=tuple(merged), cutoff=float(cutoff),
                          collisions=tuple(collisions))


def counting_function(system: SpectralSystem, x: float) -> int:
    """Exact eigenvalue count N(x), multiplicities included."""
    if x <= 0:
        raise DomainError("x must be positive")
    return enumerate_spectrum(system, cutoff=x).total


def counting_curve(system: SpectralSystem, xs) -> np.ndarray:
    """N at many points from a single enumeration; returns (x, N, x^{-d_S/2}N)."""
    xs = np.asarray(sorted(float(x) for x in xs))
    if xs[0] <= 0:
        raise DomainError("x values must be positive")
    eigs = enumerate_spectrum(system, cutoff=float(xs[-1]))
    values = eigs.expand()
    counts = np.searchsorted(values, xs, side="right").astype(float)
    ds = spectral_dimension_sg()
    return np.column_stack([xs, counts, counts / xs ** (ds / 2)])


def spectral_dimension_sg() -> float:
    return 2.0 * math.log(3.0) / math.log(5.0)


# --- dimensions and the renewal theorem ---


@dataclass(frozen=True)
class LogRatio:
    """mult · log(p)/log(q) with exact integer symbols, for identity checks."""

    mult: Fraction
    p: int
    q: int

    def times(self, other: "LogRatio") -> "LogRatio":
        if self.q == other.p:
            return LogRatio(self.mult * other.mult, self.p, other.q)
        if other.q == self.p:
            return LogRatio(self.mult * other.mult, other.p, self.q)
        raise DomainError("no common log symbol to cancel")

    @property
    def value(self) -> float:
        return float(self.mult) * math.log(self.p) / math.log(self.q)


def einstein_relation() -> dict:
    """d_S · d_w = 2 d_f for the gasket, checked by exact symbol cancellation."""
    d_s = LogRatio(Fraction(2), 3, 5)
    d_w = LogRatio(Fraction(1), 5, 2)
    d_f = LogRatio(Fraction(1), 3, 2)
    prod = d_s.times(d_w)
    exact = (prod.mult == 2 * d_f.mult and prod.p == d_f.p and prod.q == d_f.q)
    return {"d_s": d_s.value, "d_w": d_w.value, "d_f": d_f.value,
            "product": prod.value, "exact": exact}


@dataclass(frozen=True)
class RenewalDim:
    d_s: float
    lattice: bool
    span: float | None            # generator of the group of shifts log(1/γ²)
    note: str = ""


def renewal_spectral_dim(gammas, denom_bound: int = 10**6) -> RenewalDim:
    """Solve Σ γ_i^d = 1 and classify the shift group lattice/non-lattice.

    Classification tests whether all log γ_i / log γ_1 are rational with
    denominators below the bound, using 50-digit logarithms; beyond the bound
    the system is reported non-lattice with a note.
    """
    gammas = [float(g) for g in gammas]
    if not gammas:
        raise DomainError("need at least one ratio")
    if any(not 0.0 < g < 1.0 for g in gammas):
        raise DomainError("ratios must lie strictly between 0 and 1")
    if len(gammas) == 1:
        d_s = 0.0
    else:
        def residual(d):
            return sum(g**d for g in gammas) - 1.0
        hi = 1.0
        while residual(hi) > 0:
            hi *= 2.0
        d_s = float(brentq(residual, 0.0, hi, xtol=1e-14, rtol=8.9e-16))
        assert abs(residual(d_s)) < 1e-12
    with mpmath.workdps(50):
        logs = [mpmath.log(g) for g in gammas]
        fracs = []
        lattice = True
        note = ""
        for lg in logs:
            r = lg / logs[0]
            f = Fraction(int(mpmath.floor(r * 10**40)), 10**40)
            f = f.limit_denominator(denom_bound)
            if abs(r - mpmath.mpf(f.numerator) / f.denominator) > mpmath.mpf(10) ** -30:
                lattice = False
                note = (f"log-ratio {float(r):.12g} has no rational "
                        f"approximation below denominator {denom_bound}")
                break
            fracs.append(f)
    span = None
    if lattice:
        den = math.lcm(*(f.denominator for f in fracs))
        ints = [f.numerator * (den // f.denominator) for f in fracs]
        g = math.gcd(*ints)
        # shifts are log(1/γ_i²) = 2|log γ_i|; group generator below
        span = 2.0 * abs(math.log(gammas[0])) * g / den
    return RenewalDim(d_s=d_s, lattice=lattice, span=span, note=note)


@dataclass(frozen=True)
class RenewalResult:
    t: np.ndarray
    f: np.ndarray
    d_s: float
    lattice: bool
    span: float | None
    profile_t: np.ndarray | None     # one period of the lattice limit
    profile: np.ndarray | None
    limit_constant: float | None
    shift_defect: float

    def to_dict(self) -> dict:
        return {
            "d_s": self.d_s, "lattice": self.lattice, "span": self.span,
            "limit_constant": self.limit_constant,
            "shift_defect": self.shift_defect,
            "profile": None if self.profile is None else self.profile.tolist(),
        }


def renewal_iterate(gammas, u, horizon: float, step: float = 0.01,
                    t0: float = 0.0, periods_to_average: int = 4) -> RenewalResult:
    """Iterate f(t) = Σ p_j f(t − α_j) + u(t) on a uniform t-grid.

    p_j = γ_j^{d_S} (so Σ p_j = 1) and α_j = log(1/γ_j²). In the lattice case
    the step is snapped so one span is an integer number of cells and the
    periodic limit is extracted by averaging trailing periods; otherwise the
    trailing mean is reported as the constant limit.
    """
    dim = renewal_spectral_dim(gammas)
    if horizon <= t0:
        raise DomainError("horizon must exceed the start time")
    alphas = [math.log(1.0 / g**2) for g in gammas]
    ps = [g**dim.d_s for g in gammas]
    if dim.lattice and dim.span:
        cells = max(1, round(dim.span / step))
        step = dim.span / cells
    n = int(math.ceil((horizon - t0) / step)) + 1
    t = t0 + step * np.arange(n)
    if callable(u):
        u_arr = np.array([float(u(tk)) for tk in t])
    else:
        u_arr = np.asarray(u, dtype=float)
        if len(u_arr) != n:
            raise ConfigError([f"sampled inhomogeneity needs {n} values, "
                               f"got {len(u_arr)}"])
    shifts = [max(1, round(a / step)) for a in alphas]
    shift_defect = max(abs(k * step - a) for k, a in zip(shifts, alphas))
    bound = 1e6 * max(1.0, float(np.max(np.abs(u_arr))))
    f = np.zeros(n)
    for k in range(n):
        acc = u_arr[k]
        for p, sh in zip(ps, shifts):
            if k - sh >= 0:
                acc += p * f[k - sh]
        f[k] = acc
        if abs(acc) > bound:
            raise ConfigError(
                [f"renewal iterate diverged at t = {t[k]:.4g} (|f| > {bound:.3g})"])
    profile_t = profile = limit_const = None
    if dim.lattice and dim.span:
        cells = round(dim.span / step)
        periods = min(periods_to_average, (n - 1) // cells)
        if periods < 1:
            raise ConfigError(["horizon shorter than one span "
                               f"{dim.span:.4g}; no profile to extract"])
        need = cells * periods
        tail = f[n - need:n - need + cells * periods].reshape(periods, cells)
        profile = tail.mean(axis=0)
        profile_t = t[n - cells:] - t[n - cells]
    else:
        m = max(1, n // 10)
        limit_const = float(np.mean(f[-m:]))
    return RenewalResult(t=t, f=f, d_s=dim.d_s, lattice=dim.lattice,
                         span=dim.span, profile_t=profile_t, profile=profile,
                         limit_constant=limit_const, shift_defect=shift_defect)


# --- harmonic-measure comparison report (measurement, not assertion) ---


def harmonic_count_report(system: SpectralSystem, w: float, x: float,
                          depths=(4, 6, 8), samples: int = 4000,
                          seed: int = DEFAULT_SEED) -> dict:
    """Compare d^{-n} N_w(λ^n x) with the sampled backward-orbit fraction.

    A uniformly random branch word of length n lands at y with λ^n·tail(y)
    equal to the limit of the corresponding finite word, so the fraction of
    samples below λ^n x estimates the same quantity the exact count measures.
    The report records both; no limit is asserted.
    """
    rng = np.random.Generator(np.random.Philox(key=seed))
    d = system.pmap.degree
    lam = system.lam
    n_max = max(depths)
    # a length-n word and its canonical core share the same limit, so the
    # exact side counts canonical words of length <= n below lambda^n x
    roots = enumerate_roots(system, w, cutoff=lam**n_max * float(x) * (1 + 1e-9),
                            node_budget=400_000)
    rows = []
    for n in depths:
        n_exact = sum(1 for r in roots.records if r.value <= lam**n * x
                      for wd in r.words if len(wd) <= n)
        hits = 0
        for _ in range(samples):
            y = float(w)
            for b in rng.integers(0, d, size=n):
                y = _real_preimages(system.pmap, y)[int(b)]
            if _attracting_tail(system.pmap, y) <= x:
                hits += 1
        rows.append({"depth": int(n),
                     "scaled_exact": n_exact / d**n,
                     "sampled_fraction": hits / samples})
    return {"w": w, "x": x, "rows": rows}
