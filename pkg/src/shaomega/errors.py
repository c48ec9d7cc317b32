"""Exception hierarchy shared by all engine modules."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(EngineError):
    """Input data violates a structural invariant."""


class NonAssociativeTable(ValidationError):
    """A multiplication table fails associativity."""


class BadIdentity(ValidationError):
    """Declared identity is not a two-sided identity or inverses fail."""


class ElementOutOfRange(ValidationError):
    """An element index does not belong to the group."""


class NotNormal(ValidationError):
    """Quotient requested by a non-normal subgroup."""


class NotCyclic(ValidationError):
    """Cyclic-group fast path invoked on a non-cyclic group."""


class ContextMismatch(ValidationError):
    """Cohomology classes combined across incompatible (group, module) contexts."""


class UnsupportedShape(ValidationError):
    """Closed-form oracle asked for a shape it does not cover."""


class HypothesisViolated(EngineError):
    """A theorem checker was invoked outside the hypotheses it needs."""


class ComplexityLimitExceeded(EngineError):
    """Instance exceeds the configured computation budget.

    Carries enough context for the CLI to report which instance blew the
    budget and what limit would be needed.
    """

    def __init__(self, message, required=None, limit=None):
        super().__init__(message)
        self.required = required
        self.limit = limit


class InternalInconsistency(EngineError):
    """Two routes to the same value disagreed; indicates a bug, aborts the run."""


class ReciprocityViolation(InternalInconsistency):
    """Local invariants of a quaternion class do not sum to zero."""


class ZeroArgument(ValidationError):
    """A Hilbert-symbol argument was zero."""


class UnsupportedMagnitude(EngineError):
    """Integer too large for the exact factorization cap."""


class ParseError(EngineError):
    """Scenario text could not be parsed; carries a line number."""

    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class CorruptCacheEntry(EngineError):
    """Cache entry failed its integrity check (auto-invalidated by the caller)."""
