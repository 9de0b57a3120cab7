"""Shared exception hierarchy.

Everything the library raises on bad input or failed numerics derives from
``TscalcError`` so callers (the HTTP service, the CLI) can map library
failures to one error channel. It subclasses ``ValueError`` because most
failures are, at heart, invalid values.
"""


class TscalcError(ValueError):
    """Base class for all tscalc errors."""


class ScaleError(TscalcError):
    """Invalid time-scale construction or a point that is not a member."""


class ParseError(TscalcError):
    """Expression text could not be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EvalDomainError(TscalcError):
    """Evaluation left the real domain (log of nonpositive, 0-division, ...).

    ``subexpr`` carries the offending subexpression once known; the raw
    arithmetic helpers raise without it and the tree evaluator fills it in.
    """

    def __init__(self, message: str, subexpr: str | None = None):
        super().__init__(message)
        self.reason = message
        self.subexpr = subexpr

    def __str__(self) -> str:
        if self.subexpr is not None:
            return f"{self.reason} in '{self.subexpr}'"
        return self.reason


class QuadratureError(TscalcError):
    """Adaptive quadrature ran out of depth or evaluation budget."""


class DerivativeError(TscalcError):
    """A dynamic derivative does not exist at the point or did not converge."""


class InvalidParameterError(TscalcError):
    """A numeric parameter is outside its legal range (alpha, p, tolerances...)."""
