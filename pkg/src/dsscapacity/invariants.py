"""Named inequality checks over result records.

Each factory returns a predicate whose ``__name__`` spells out the invariant,
so a failing report can say exactly which relation broke. Fields are looked up
by dotted path (``"exact.value"``); a check whose operand is absent (``None``)
holds vacuously, which lets one invariant list serve reports with optional
sections.
"""

from fractions import Fraction
from functools import wraps
from typing import Any, Callable, List, Optional, Sequence

Check = Callable[[Any], bool]


def _lookup(record: Any, path: str) -> Optional[Fraction]:
    value: Any = record
    for part in path.split("."):
        value = getattr(value, part, None)
        if value is None:
            return None
    return value


def field_le(left: str, right: str) -> Check:
    """left ≤ right"""

    def check(record: Any) -> bool:
        a, b = _lookup(record, left), _lookup(record, right)
        return a is None or b is None or a <= b

    check.__name__ = f"{left} <= {right}"
    return check


def field_equals(left: str, right: str) -> Check:
    """left == right"""

    def check(record: Any) -> bool:
        a, b = _lookup(record, left), _lookup(record, right)
        return a is None or b is None or a == b

    check.__name__ = f"{left} == {right}"
    return check


def field_nonnegative(field: str) -> Check:
    def check(record: Any) -> bool:
        value = _lookup(record, field)
        return value is None or value >= 0

    check.__name__ = f"{field} >= 0"
    return check


def all_conditions(*conditions: Check) -> Check:
    """All conditions must hold"""

    def check(record: Any) -> bool:
        return all(cond(record) for cond in conditions)

    check.__name__ = " and ".join(cond.__name__ for cond in conditions)
    return check


def custom_condition(name: str) -> Callable[[Check], Check]:
    """Name an arbitrary predicate"""

    def decorator(func: Check) -> Check:
        @wraps(func)
        def wrapper(record: Any) -> bool:
            return func(record)

        wrapper.__name__ = name
        return wrapper

    return decorator


def failed_checks(record: Any, checks: Sequence[Check]) -> List[str]:
    """Names of the checks ``record`` violates."""
    return [check.__name__ for check in checks if not check(record)]
