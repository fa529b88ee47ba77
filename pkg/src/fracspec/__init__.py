"""Spectra of Laplacians on finitely ramified self-similar sets.

Eigenvalues come from backward iteration of a decimation polynomial; the
associated entire function (the solution of f(lambda z) = p(f(z))) drives
the analytic continuation of the spectral zeta function, heat traces, and
Casimir energies. Discrete graph Laplacians and Monte Carlo walks serve as
independent cross-checks.
"""

__version__ = "0.1.0"

from .errors import FracspecError  # noqa: F401
