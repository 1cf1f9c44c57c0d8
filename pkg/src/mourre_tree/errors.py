"""Exception types shared across the package."""


class ContractError(ValueError):
    """An operation was called outside its stated preconditions."""


class TruncationDomainError(ContractError):
    """A vector or vertex touches the truncation boundary where an identity fails."""


class ConvergenceError(RuntimeError):
    """The eigensolver hit its iteration cap."""
