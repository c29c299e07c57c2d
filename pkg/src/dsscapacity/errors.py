"""Exception hierarchy.

``InvalidInput`` covers everything a user can get wrong; ``InternalCheckFailure``
means a mathematical invariant broke, which is always a bug.
"""

from fractions import Fraction
from typing import Sequence


class DssError(Exception):
    """Base class for all dsscapacity errors."""


class InvalidInput(DssError, ValueError):
    """Raised for inputs that violate a documented precondition."""


class InternalCheckFailure(DssError, RuntimeError):
    """Raised when a result breaks an invariant that holds for every valid input."""


class ConfigFormatError(InvalidInput):
    """Malformed config file (JSON syntax, schema, or numeric literal)."""


class DimensionMismatch(InvalidInput):
    """A per-node list or table row has the wrong length."""

    def __init__(self, what: str, expected: int, actual: int):
        self.what = what
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what} has {actual} entries, expected {expected}")


class ParamViolation(InvalidInput):
    """(n, k, d, ℓ) outside their admissible ranges."""


class NegativeValue(InvalidInput):
    """A storage or bandwidth value is negative."""

    def __init__(self, what: str, value: Fraction):
        self.what = what
        self.value = value
        super().__init__(f"{what} must be non-negative, got {value}")


class IncompleteTable(InvalidInput):
    """A full bandwidth table is missing (j, S) keys or has foreign ones."""

    def __init__(self, missing: Sequence[object], unexpected: Sequence[object]):
        self.missing = list(missing)
        self.unexpected = list(unexpected)
        parts: list[str] = []
        if self.missing:
            parts.append(f"missing keys {self.missing[:5]}")
        if self.unexpected:
            parts.append(f"unexpected keys {self.unexpected[:5]}")
        super().__init__("Incomplete bandwidth table: " + "; ".join(parts))


class IndexOutOfRange(InvalidInput):
    """A node index outside 1..n."""

    def __init__(self, index: int, n: int):
        self.index = index
        self.n = n
        super().__init__(f"Node index {index} outside 1..{n}")


class NonPositiveScalar(InvalidInput):
    """Scaling factor is zero or negative."""


class ModelUnsupported(InvalidInput):
    """The operation is only defined for some bandwidth models."""

    def __init__(self, operation: str, model: str):
        self.operation = operation
        self.model = model
        super().__init__(
            f"{operation} supports only helper-only and homogeneous bandwidth "
            f"models, got {model}"
        )


class SearchTooLarge(InvalidInput):
    """An enumeration would exceed its configured size guard."""

    def __init__(self, operation: str, size: int, limit: int, unit: str = "n"):
        self.operation = operation
        self.size = size
        self.limit = limit
        self.unit = unit
        super().__init__(
            f"{operation} refuses {unit}={size} (limit {limit}); raise the limit "
            "explicitly to run the full enumeration"
        )


class DuplicateIndices(InvalidInput):
    """A failure tuple repeats a node index."""


class NotAPermutation(InvalidInput):
    """A relabeling is not a bijection on 1..n."""


class ParamMismatch(InvalidInput):
    """Systems combined together do not share (n, k, d)."""


class TooManyPermutations(InvalidInput):
    """Explicit permutation lift requested for too many nodes."""


class CausalityViolation(InvalidInput):
    """A repair schedule references instances that are not live or is malformed."""

    def __init__(self, step: int, reason: str):
        self.step = step
        self.reason = reason
        super().__init__(f"Invalid repair schedule at step {step}: {reason}")


class NonIntegerUnits(InvalidInput):
    """Simulation requires integer storage and bandwidth units."""


class InvalidField(InvalidInput):
    """Field modulus is not a prime."""


class BadHelpers(InvalidInput):
    """Helper set of a simulated repair is malformed."""


class BadUserSet(InvalidInput):
    """Reconstruction was asked for with a malformed user set."""


class SandwichViolation(InternalCheckFailure):
    """A bounds report breaks one of its ordering invariants."""

    def __init__(self, violated: Sequence[str]):
        self.violated = list(violated)
        super().__init__(
            "Bounds report violates invariant(s): " + ", ".join(self.violated)
        )


class LiftNotHomogeneous(InternalCheckFailure):
    """The explicit permutation lift did not come out homogeneous."""


class OracleMismatch(InternalCheckFailure):
    """An independent oracle disagrees with a closed-form result."""

    def __init__(self, what: str, expected: Fraction, actual: Fraction):
        self.what = what
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}: closed form gives {expected}, oracle gives {actual}")


class BandwidthExceedsStorage(UserWarning):
    """A helper is asked to send more than it stores (allowed, but suspicious)."""
