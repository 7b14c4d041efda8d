"""Exception hierarchy shared by all qhopf modules."""


class QHopfError(Exception):
    """Base class for all errors raised by this package."""


class OrderMismatchError(QHopfError):
    """Two truncated scalars with different truncation orders were combined."""


class NotAUnitError(QHopfError):
    """Inversion was requested for a series whose constant term vanishes."""


class ArityError(QHopfError):
    """Tensor operands have incompatible arities or leg positions."""


class ContextMismatchError(QHopfError):
    """Operands belong to different algebra presentations."""


class DivergenceError(QHopfError):
    """Normal-form rewriting exceeded its step budget."""


class TermBudgetError(QHopfError):
    """A sparse element grew past the configured term-count budget."""


class ParseError(QHopfError):
    """Element text does not conform to the expression grammar."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class PresetInvalidError(QHopfError):
    """A built preset failed its construction-time axiom validation."""


class GateRequiredError(QHopfError):
    """An operation requiring a passing gate certificate was called without one."""


class HypothesisRangeError(QHopfError):
    """Binomial-identity parameters fall outside the claimed hypothesis range."""


class ConfigError(QHopfError):
    """Bad command-line or presentation-file configuration."""
