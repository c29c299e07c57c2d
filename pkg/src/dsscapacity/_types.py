"""Type definitions and protocols for dsscapacity.

Node indices are 1-based everywhere a value crosses the public API, matching
the config file format.
"""

from fractions import Fraction
from typing import Protocol, Tuple, Union, runtime_checkable

# Exact real-valued quantity (storage, bandwidth, capacity)
Rational = Fraction

# Anything accepted where a Rational is expected: 3, Fraction(10, 3), "10/3"
RationalLike = Union[int, Fraction, str]

NodeIndex = int

# Helper set, always stored sorted ascending
HelperSet = Tuple[NodeIndex, ...]

# Canonical key of a full repair-bandwidth table: (failed node j, helpers S)
TableKey = Tuple[NodeIndex, HelperSet]


@runtime_checkable
class SupportsBandwidth(Protocol):
    """Protocol for repair-bandwidth models.

    All three granularities (homogeneous, helper-only, full table) answer the
    same question: how much does helper ``i`` send when ``j`` is repaired from
    helper set ``helpers``.
    """

    def beta(self, i: NodeIndex, j: NodeIndex, helpers: HelperSet) -> Fraction:
        """Return β_{ijS}."""
        ...

    def scaled(self, c: Fraction) -> "SupportsBandwidth":
        """Return the same model with every value multiplied by ``c``."""
        ...

