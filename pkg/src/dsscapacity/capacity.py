"""Capacity of heterogeneous storage systems: closed forms, bounds, exact value.

The exact capacity is a minimum over every ordered failure sequence
(f_1, …, f_k) of Σ min(α_{f_i}, β_{S_i}), where S_i ranges over helper sets of
size d+1−i disjoint from {f_1, …, f_i}. No efficient algorithm is known, so
``exact_capacity`` enumerates and refuses large n unless told otherwise.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Any, Collection, List, Optional, Sequence, Tuple

from ._types import HelperSet, NodeIndex, RationalLike
from .errors import (
    ModelUnsupported,
    NegativeValue,
    ParamViolation,
    SandwichViolation,
    SearchTooLarge,
)
from .invariants import (
    Check,
    all_conditions,
    custom_condition,
    failed_checks,
    field_equals,
    field_le,
    field_nonnegative,
)
from .model import (
    DssConfig,
    Full,
    HelperOnly,
    Homogeneous,
    sorted_beta_multiset,
    symmetrize,
    system_averages,
)
from .rational import as_rational

logger = logging.getLogger(__name__)

# Exact-capacity enumeration is n!/(n−k)! tuples; refuse above this n by default.
DEFAULT_MAX_N = 10


@dataclass(frozen=True)
class CapacityWitness:
    """A minimizing failure sequence for the exact capacity.

    Attributes:
        failures: k distinct node indices (f_1, …, f_k), in failure order
        helper_sets: S_i with |S_i| = d+1−i and S_i ∩ {f_1..f_i} = ∅
        terms: min(α_{f_i}, β_{S_i}) per position
        value: sum of terms
    """

    failures: Tuple[NodeIndex, ...]
    helper_sets: Tuple[HelperSet, ...]
    terms: Tuple[Fraction, ...]
    value: Fraction


@dataclass(frozen=True)
class BoundsReport:
    """Every bound available for a config, plus the exact value if computed."""

    avg_upper: Fraction
    c_min: Fraction
    c_max: Fraction
    cprime_min: Optional[Fraction] = None
    cprime_max: Optional[Fraction] = None
    exact: Optional[CapacityWitness] = None
    special_case: Optional[Fraction] = None


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def homogeneous_capacity(
    alpha: RationalLike, gamma: RationalLike, k: int, d: int
) -> Fraction:
    """Σ_{i=1..k} min(α, (d−i+1)·γ/d) for a homogeneous, symmetric system."""
    a, g = as_rational(alpha), as_rational(gamma)
    if not 1 <= k <= d:
        raise ParamViolation(f"Need 1 ≤ k ≤ d, got k={k}, d={d}")
    if a < 0:
        raise NegativeValue("alpha", a)
    if g < 0:
        raise NegativeValue("gamma", g)
    return sum((min(a, (d - i + 1) * g / d) for i in range(1, k + 1)), Fraction(0))


def average_upper_bound(config: DssConfig) -> Fraction:
    """Capacity of the homogeneous system with the same average resources."""
    alpha_bar, gamma_bar = system_averages(config)
    return homogeneous_capacity(alpha_bar, gamma_bar, config.k, config.d)


def _prefix_sums(values: Sequence[Fraction]) -> List[Fraction]:
    return list(accumulate(values, initial=Fraction(0)))


def _h(k: int, d: int, l: int) -> int:
    # (2d−k−l+1) + (k−l) is odd, so the product is even.
    return (2 * d - k - l + 1) * (k - l) // 2


def general_bounds(config: DssConfig) -> Tuple[Fraction, Fraction]:
    """(C_min, C_max) from sorted α and the sorted β_{ijS} multiset.

    Valid for every bandwidth model.
    """
    k, d = config.k, config.d
    alpha_sums = _prefix_sums(sorted(config.alpha))
    betas = sorted_beta_multiset(config)
    low_sums = _prefix_sums(betas)
    high_sums = _prefix_sums(betas[::-1])

    c_min = min(alpha_sums[l] + low_sums[_h(k, d, l)] for l in range(k + 1))
    c_max = min(alpha_sums[l] + high_sums[_h(k, d, l)] for l in range(k + 1))
    return c_min, c_max


def helper_betas(config: DssConfig, operation: str) -> Tuple[Fraction, ...]:
    """Per-helper β_i for helper-only and homogeneous models."""
    bandwidth = config.bandwidth
    if isinstance(bandwidth, HelperOnly):
        return bandwidth.betas
    if isinstance(bandwidth, Homogeneous):
        return (bandwidth.gamma / config.d,) * config.n
    raise ModelUnsupported(operation, bandwidth.kind)


def _first_form_bounds(
    alphas: Sequence[Fraction], betas: Sequence[Fraction], k: int, d: int
) -> Tuple[Fraction, Fraction]:
    zero = Fraction(0)
    cprime_min = sum(
        (min(alphas[i - 1], sum(betas[: d - i + 1], zero)) for i in range(1, k + 1)),
        zero,
    )
    cprime_max = sum(
        (min(alphas[i - 1], sum(betas[i : d + 1], zero)) for i in range(1, k + 1)),
        zero,
    )
    return cprime_min, cprime_max


def second_form_helper_only_bounds(config: DssConfig) -> Tuple[Fraction, Fraction]:
    """The min-over-l forms of (C'_min, C'_max).

    They coincide with the sum forms because, with α ascending and the β
    partial sums descending in i, the positions where α wins form a prefix.
    """
    k, d = config.k, config.d
    alphas = sorted(config.alpha)
    betas = sorted(helper_betas(config, "second_form_helper_only_bounds"))
    alpha_sums = _prefix_sums(alphas)
    zero = Fraction(0)

    cprime_min = min(
        alpha_sums[l]
        + sum((sum(betas[: d - l - j], zero) for j in range(k - l)), zero)
        for l in range(k + 1)
    )
    cprime_max = min(
        alpha_sums[l]
        + sum((sum(betas[l + j : d + 1], zero) for j in range(1, k - l + 1)), zero)
        for l in range(k + 1)
    )
    return cprime_min, cprime_max


def helper_only_bounds(config: DssConfig) -> Tuple[Fraction, Fraction]:
    """(C'_min, C'_max) when the download depends only on the helper.

    Computed from the sum forms; the min-over-l forms are evaluated as a
    cross-check.
    """
    alphas = sorted(config.alpha)
    betas = sorted(helper_betas(config, "helper_only_bounds"))
    bounds = _first_form_bounds(alphas, betas, config.k, config.d)

    second = second_form_helper_only_bounds(config)
    if second != bounds:
        raise SandwichViolation(
            [
                f"cprime sum form {tuple(map(str, bounds))} == "
                f"min-over-l form {tuple(map(str, second))}"
            ]
        )
    return bounds


# ---------------------------------------------------------------------------
# Exact capacity
# ---------------------------------------------------------------------------


def minimizing_helper_set(
    betas: Sequence[Fraction], excluded: Collection[NodeIndex], size: int
) -> HelperSet:
    """The ``size`` cheapest helpers outside ``excluded``.

    Ties go to the smaller index, which makes the result the lexicographically
    smallest among all minimizing sets.
    """
    order = sorted(range(1, len(betas) + 1), key=lambda i: (betas[i - 1], i))
    chosen = [i for i in order if i not in excluded][:size]
    return tuple(sorted(chosen))


def evaluate_failure_sequence(
    config: DssConfig, failures: Sequence[NodeIndex]
) -> CapacityWitness:
    """Σ min(α_{f_i}, min β_{S_i}) for one fixed failure sequence."""
    betas = helper_betas(config, "evaluate_failure_sequence")
    excluded: set[NodeIndex] = set()
    sets: List[HelperSet] = []
    terms: List[Fraction] = []
    for position, f in enumerate(failures, start=1):
        excluded.add(f)
        helpers = minimizing_helper_set(betas, excluded, config.d + 1 - position)
        sets.append(helpers)
        terms.append(
            min(config.alpha[f - 1], sum((betas[i - 1] for i in helpers), Fraction(0)))
        )
    return CapacityWitness(
        tuple(failures), tuple(sets), tuple(terms), sum(terms, Fraction(0))
    )


def exact_capacity(
    config: DssConfig, limit: Optional[int] = None
) -> Tuple[Fraction, CapacityWitness]:
    """Exact capacity of a helper-only (or homogeneous) system.

    Args:
        config: system with a HelperOnly or Homogeneous bandwidth model
        limit: largest n enumerated (default ``DEFAULT_MAX_N``)

    Returns:
        (value, witness) where the witness is the lexicographically smallest
        minimizing failure sequence.

    Raises:
        ModelUnsupported: full-table bandwidth model
        SearchTooLarge: n above the limit
    """
    betas = helper_betas(config, "exact_capacity")
    limit = DEFAULT_MAX_N if limit is None else limit
    n, k, d = config.n, config.k, config.d
    if n > limit:
        raise SearchTooLarge("exact_capacity", n, limit)

    alpha = config.alpha
    order = sorted(range(1, n + 1), key=lambda i: (betas[i - 1], i))
    best: Optional[Tuple[Fraction, Tuple[NodeIndex, ...]]] = None
    visited = 0

    # Depth-first over prefixes in lexicographic order. A prefix whose partial
    # sum already reaches the best total cannot improve it strictly.
    def descend(prefix: List[NodeIndex], excluded: set[NodeIndex], partial: Fraction) -> None:
        nonlocal best, visited
        position = len(prefix)
        if position == k:
            visited += 1
            if best is None or partial < best[0]:
                best = (partial, tuple(prefix))
            return
        for f in range(1, n + 1):
            if f in excluded:
                continue
            excluded.add(f)
            size = d - position
            cheapest = [i for i in order if i not in excluded][:size]
            term = min(alpha[f - 1], sum((betas[i - 1] for i in cheapest), Fraction(0)))
            total = partial + term
            if best is None or total < best[0]:
                prefix.append(f)
                descend(prefix, excluded, total)
                prefix.pop()
            excluded.discard(f)

    descend([], set(), Fraction(0))
    assert best is not None
    witness = evaluate_failure_sequence(config, best[1])
    logger.debug(
        "exact_capacity(%r): %d complete sequences, minimum %s at %s",
        config,
        visited,
        witness.value,
        witness.failures,
    )
    return witness.value, witness


def special_case_capacity(config: DssConfig) -> Optional[Fraction]:
    """Capacity in closed form where the helper-only bounds coincide.

    Covers uniform helper bandwidth (homogeneous systems included), and
    systems whose largest α does not exceed the smallest β. Returns ``None``
    for every other system, and for full-table models.
    """
    if isinstance(config.bandwidth, Full):
        return None
    betas = helper_betas(config, "special_case_capacity")
    alphas = sorted(config.alpha)
    k, d = config.k, config.d
    if len(set(betas)) == 1:
        beta = betas[0]
        return sum(
            (min(alphas[i - 1], (d - i + 1) * beta) for i in range(1, k + 1)),
            Fraction(0),
        )
    if alphas[-1] <= min(betas):
        return sum(alphas[:k], Fraction(0))
    return None


def symmetric_repair_gain(config: DssConfig) -> Fraction:
    """Average bound of the symmetrized system minus that of ``config``.

    Symmetrizing keeps every repair's total download, so γ̄ and hence the
    bound are unchanged: the result is always zero.
    """
    return average_upper_bound(symmetrize(config)) - average_upper_bound(config)


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------


@custom_condition("exact.value == sum(exact.terms)")
def _witness_adds_up(report: Any) -> bool:
    exact = report.exact
    return exact is None or exact.value == sum(exact.terms, Fraction(0))


REPORT_INVARIANTS: List[Check] = [
    all_conditions(field_nonnegative("c_min"), field_nonnegative("avg_upper")),
    field_le("c_min", "c_max"),
    field_le("c_min", "exact.value"),
    field_le("exact.value", "c_max"),
    field_le("exact.value", "avg_upper"),
    field_le("cprime_min", "cprime_max"),
    field_le("cprime_min", "exact.value"),
    field_le("exact.value", "cprime_max"),
    field_equals("special_case", "cprime_min"),
    field_equals("special_case", "cprime_max"),
    field_equals("special_case", "exact.value"),
    _witness_adds_up,
]


def bounds_report(
    config: DssConfig, compute_exact: bool = False, limit: Optional[int] = None
) -> BoundsReport:
    """Assemble every applicable bound and check that they sandwich correctly.

    Raises:
        SandwichViolation: the assembled numbers contradict each other
    """
    c_min, c_max = general_bounds(config)
    cprime_min = cprime_max = None
    exact = None
    special = None
    if not isinstance(config.bandwidth, Full):
        cprime_min, cprime_max = helper_only_bounds(config)
        special = special_case_capacity(config)
        if compute_exact:
            _, exact = exact_capacity(config, limit)

    report = BoundsReport(
        avg_upper=average_upper_bound(config),
        c_min=c_min,
        c_max=c_max,
        cprime_min=cprime_min,
        cprime_max=cprime_max,
        exact=exact,
        special_case=special,
    )
    violated = failed_checks(report, REPORT_INVARIANTS)
    if violated:
        raise SandwichViolation(violated)
    logger.info(
        "Bounds for %r: avg %s, general [%s, %s], helper-only [%s, %s], exact %s",
        config,
        report.avg_upper,
        c_min,
        c_max,
        cprime_min,
        cprime_max,
        exact.value if exact else None,
    )
    return report
