"""Exception hierarchy shared by all modules.

CLI exit-code mapping: AccuracyError -> 1, everything else here -> 2.
"""


class FracspecError(Exception):
    """Base class for all library errors."""


class DomainError(FracspecError):
    """Input outside the mathematical domain of an operation."""


class CapacityError(FracspecError):
    """Request exceeds a documented size or budget guard."""


class ContractError(FracspecError):
    """Input violates a structural contract (e.g. matrix not symmetric)."""


class DegenerateNetworkError(FracspecError):
    """Interior block of a conductance form is singular."""


class MultiplierError(DomainError):
    """Polynomial multiplier has modulus <= 1; no normalized entire solution."""


class SupercriticalityError(DomainError):
    """Offspring mean <= 1; branching process is not supercritical."""


class BudgetError(FracspecError):
    """Step budget exhausted mid-run. Carries partial statistics."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class BranchError(FracspecError):
    """Backward-iteration branch word leaves the basin of convergence."""


class PoleError(DomainError):
    """Evaluation point coincides with a pole of a prefactor."""

    def __init__(self, message: str, s=None):
        super().__init__(message)
        self.s = s


class AccuracyError(FracspecError):
    """Requested tolerance not met. Carries the bound actually achieved."""

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class SystemDefinitionError(FracspecError):
    """Spectral-system data is inconsistent (e.g. nonintegral multiplicity)."""


class ConfigError(FracspecError):
    """Configuration rejected. Carries the full list of problems found."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)
