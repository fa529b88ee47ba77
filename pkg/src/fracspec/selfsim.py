"""Iterated function systems: dimensions, addresses, vertex sets, measures.

All maps are planar similitudes F_i(x) = b_i + alpha_i * R(theta_i) (x - b_i)
with fixed point b_i, ratio alpha_i in (0,1) and optional rotation theta_i.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError

# --- types ---


@dataclass(frozen=True)
class IfsSystem:
    """A finite family of contracting similitudes of the plane."""

    fixed_points: tuple[tuple[float, float], ...]
    ratios: tuple[float, ...]
    rotations: tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.fixed_points) == 0:
            raise DomainError("need at least one map")
        if len(self.fixed_points) != len(self.ratios):
            raise DomainError("fixed_points and ratios length mismatch")
        for a in self.ratios:
            if not 0.0 < a < 1.0:
                raise DomainError(f"contraction ratio {a} outside (0,1)")
        if self.rotations and len(self.rotations) != len(self.ratios):
            raise DomainError("rotations length mismatch")

    @property
    def m(self) -> int:
        return len(self.ratios)

    def diameter(self) -> float:
        """Scale used for all spatial tolerances (max fixed-point distance)."""
        pts = np.asarray(self.fixed_points, dtype=float)
        if len(pts) == 1:
            return 1.0
        d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
        return float(d.max())

    def apply(self, i: int, x: np.ndarray) -> np.ndarray:
        """Apply map i (1-based) to a point or an (n,2) array of points."""
        if not 1 <= i <= self.m:
            raise DomainError(f"map index {i} outside 1..{self.m}")
        b = np.asarray(self.fixed_points[i - 1], dtype=float)
        a = self.ratios[i - 1]
        y = np.asarray(x, dtype=float) - b
        if self.rotations:
            t = self.rotations[i - 1]
            rot = np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])
            y = y @ rot.T
        return b + a * y


@dataclass(frozen=True)
class Address:
    """Symbolic address: finite word, optionally followed by a constant tail.

    Letters are 1-based map indices. repeat=None means a plain finite word.
    """

    prefix: tuple[int, ...]
    repeat: int | None = None

    def __post_init__(self):
        for c in self.prefix:
            if c < 1:
                raise DomainError(f"letter {c} out of range")
        if self.repeat is not None and self.repeat < 1:
            raise DomainError(f"letter {self.repeat} out of range")


def sierpinski_system() -> IfsSystem:
    """The three half-scale maps fixing (0,0), (1,0), (1/2, sqrt3/2)."""
    return IfsSystem(
        fixed_points=((0.0, 0.0), (1.0, 0.0), (0.5, np.sqrt(3.0) / 2.0)),
        ratios=(0.5, 0.5, 0.5),
    )


# --- operations ---


def hausdorff_dim(ratios) -> float:
    """Solve sum alpha_i^s = 1 for the similarity dimension s >= 0.

    The left side is strictly decreasing in s, so the root is unique;
    residual is below 1e-12.
    """
    r = [float(a) for a in ratios]
    if not r:
        raise DomainError("empty ratio list")
    for a in r:
        if not 0.0 < a < 1.0:
            raise DomainError(f"ratio {a} outside (0,1)")

    def f(s: float) -> float:
        return sum(a**s for a in r) - 1.0

    if len(r) == 1:
        return 0.0
    hi = 1.0
    while f(hi) > 0.0:
        hi *= 2.0
    s = brentq(f, 0.0, hi, xtol=1e-15, rtol=8.9e-16)
    assert abs(f(s)) < 1e-12
    return float(s)


def address_to_point(system: IfsSystem, address: Address,
                     x0: tuple[float, float] | None = None) -> np.ndarray:
    """Point named by an address: lim F_{e1} o ... o F_{en}(x0).

    Eventually-constant tails are resolved exactly (the tail contributes the
    fixed point of the repeated map); a plain finite word is truncated at its
    end, with error at most diam * (max alpha)^len.
    """
    for c in address.prefix:
        if c > system.m:
            raise DomainError(f"letter {c} out of range 1..{system.m}")
    if address.repeat is not None:
        if address.repeat > system.m:
            raise DomainError(f"letter {address.repeat} out of range 1..{system.m}")
        pt = np.asarray(system.fixed_points[address.repeat - 1], dtype=float)
    elif x0 is not None:
        pt = np.asarray(x0, dtype=float)
    else:
        pt = np.asarray(system.fixed_points[0], dtype=float)
    for c in reversed(address.prefix):
        pt = system.apply(c, pt)
    return pt


def cylinder_measure(system: IfsSystem, prefix) -> float:
    """Natural self-similar measure of the cylinder set named by prefix.

    Equals (alpha_{i1} ... alpha_{ik})^rho with rho the similarity dimension,
    so cylinders of a fixed depth always sum to 1.
    """
    rho = hausdorff_dim(system.ratios)
    prod = 1.0
    for c in prefix:
        if not 1 <= c <= system.m:
            raise DomainError(f"letter {c} out of range 1..{system.m}")
        prod *= system.ratios[c - 1]
    return prod**rho


def _dedup(points: np.ndarray, tol: float) -> np.ndarray:
    """Deduplicate rows at absolute tolerance tol, preserving sorted order."""
    keys = np.round(points / tol).astype(np.int64)
    _, idx = np.unique(keys, axis=0, return_index=True)
    out = points[np.sort(idx)]
    order = np.lexsort((out[:, 1], out[:, 0]))
    return out[order]


def generate_Vn(system: IfsSystem, boundary, n: int) -> np.ndarray:
    """Vertex sets V_0 = boundary, V_{k+1} = union_i F_i(V_k), deduplicated.

    Dedup tolerance is 1e-12 times the system diameter; the returned array is
    sorted lexicographically so output is deterministic.
    """
    v = np.asarray(boundary, dtype=float).reshape(-1, 2)
    if len(v) == 0:
        raise DomainError("boundary set must be nonempty")
    if n < 0:
        raise DomainError("n must be >= 0")
    tol = 1e-12 * system.diameter()
    v = _dedup(v, tol)
    for _ in range(n):
        v = _dedup(np.vstack([system.apply(i, v) for i in range(1, system.m + 1)]), tol)
    return v
