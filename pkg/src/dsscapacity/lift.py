"""Permutation lift: glue all n! relabeled copies of a system into one.

The combined system is homogeneous with symmetric repair, with per-node
storage n!·ᾱ and per-helper download n!·γ̄/d. A scheme storing C on the
original stores n!·C on the combined system, so the lift's capacity divided
by n! bounds C from above. The explicit mode builds the combined system
copy by copy to check that algebra numerically.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

from ._types import NodeIndex, TableKey
from .capacity import average_upper_bound, exact_capacity, homogeneous_capacity
from .errors import (
    InvalidInput,
    LiftNotHomogeneous,
    NotAPermutation,
    OracleMismatch,
    ParamMismatch,
    SandwichViolation,
    TooManyPermutations,
)
from .invariants import failed_checks, field_le
from .model import (
    DssConfig,
    Full,
    HelperOnly,
    Homogeneous,
    expand_to_full,
    helper_sets,
    system_averages,
)

logger = logging.getLogger(__name__)

# Explicit lifts materialize n! copies; 6! = 720 keeps that trivial.
EXPLICIT_MAX_N = 6

LiftMode = Literal["formula", "explicit"]


@dataclass(frozen=True)
class LiftReport:
    """Parameters of the lifted homogeneous system.

    Attributes:
        alpha_b: per-node storage, n!·ᾱ
        beta_b: per-helper repair download, n!·γ̄/d
        capacity_b: homogeneous capacity of the lifted system
        implied_bound: capacity_b / n!, the bound it certifies on the original
    """

    alpha_b: Fraction
    beta_b: Fraction
    capacity_b: Fraction
    implied_bound: Fraction


@dataclass(frozen=True)
class LiftCertificate:
    """Numeric check that n!·C ≤ C_b for a system with known capacity C."""

    exact: Fraction
    copies: int
    scaled_exact: Fraction
    capacity_b: Fraction
    implied_bound: Fraction

    @property
    def lift_margin(self) -> Fraction:
        """C_b − n!·C"""
        return self.capacity_b - self.scaled_exact

    @property
    def bound_margin(self) -> Fraction:
        """implied bound − C"""
        return self.implied_bound - self.exact


def _check_permutation(sigma: Sequence[int], n: int) -> Tuple[NodeIndex, ...]:
    mapping = tuple(sigma)
    if sorted(mapping) != list(range(1, n + 1)):
        raise NotAPermutation(f"{list(mapping)} is not a permutation of 1..{n}")
    return mapping


def permute_config(config: DssConfig, sigma: Sequence[int]) -> DssConfig:
    """Relabel nodes: node i of the result is node σ(i) of ``config``.

    ``sigma`` lists σ(1), …, σ(n). The bandwidth model keeps its granularity.
    """
    n, d = config.n, config.d
    s = _check_permutation(sigma, n)
    alpha = tuple(config.alpha[s[i] - 1] for i in range(n))

    bandwidth = config.bandwidth
    if isinstance(bandwidth, Homogeneous):
        return DssConfig(config.params, alpha, bandwidth)
    if isinstance(bandwidth, HelperOnly):
        betas = tuple(bandwidth.betas[s[i] - 1] for i in range(n))
        return DssConfig(config.params, alpha, HelperOnly(betas))

    table: Dict[TableKey, Tuple[Fraction, ...]] = {}
    for j in range(1, n + 1):
        for helpers in helper_sets(n, d, j):
            image = tuple(sorted(s[i - 1] for i in helpers))
            table[(j, helpers)] = tuple(
                bandwidth.beta(s[i - 1], s[j - 1], image) for i in helpers
            )
    return DssConfig(config.params, alpha, Full(table))


def combine_configs(configs: Iterable[DssConfig]) -> DssConfig:
    """Component-wise sum of systems sharing (n, k, d), as a full table."""
    iterator = iter(configs)
    first = next(iterator, None)
    if first is None:
        raise ParamMismatch("combine_configs needs at least one config")

    params = first.params
    alpha: List[Fraction] = list(first.alpha)
    base = expand_to_full(first).bandwidth
    assert isinstance(base, Full)
    rows: Dict[TableKey, List[Fraction]] = {key: list(row) for key, row in base.table.items()}

    for other in iterator:
        if other.params != params:
            raise ParamMismatch(
                f"Cannot combine (n, k, d) = ({other.n}, {other.k}, {other.d}) "
                f"with ({params.n}, {params.k}, {params.d})"
            )
        alpha = [a + b for a, b in zip(alpha, other.alpha)]
        for i, j, helpers in _table_positions(other):
            rows[(j, helpers)][helpers.index(i)] += other.bandwidth.beta(i, j, helpers)

    return DssConfig(
        params, tuple(alpha), Full({key: tuple(row) for key, row in rows.items()})
    )


def _table_positions(config: DssConfig) -> Iterable[Tuple[NodeIndex, NodeIndex, Tuple[NodeIndex, ...]]]:
    for j in config.params.nodes:
        for helpers in helper_sets(config.n, config.d, j):
            for i in helpers:
                yield i, j, helpers


def _formula_lift(config: DssConfig) -> Tuple[Fraction, Fraction]:
    copies = factorial(config.n)
    alpha_bar, gamma_bar = system_averages(config)
    return copies * alpha_bar, copies * gamma_bar / config.d


def _explicit_lift(config: DssConfig) -> Tuple[Fraction, Fraction]:
    n = config.n
    if n > EXPLICIT_MAX_N:
        raise TooManyPermutations(
            f"Explicit lift materializes {n}! copies; limit is n = {EXPLICIT_MAX_N}"
        )
    combined = combine_configs(
        permute_config(config, sigma) for sigma in permutations(range(1, n + 1))
    )
    table = combined.bandwidth
    assert isinstance(table, Full)
    alphas = set(combined.alpha)
    betas = {v for row in table.table.values() for v in row}
    if len(alphas) != 1 or len(betas) != 1:
        raise LiftNotHomogeneous(
            f"Lift of {config!r} has {len(alphas)} distinct storage values and "
            f"{len(betas)} distinct bandwidth values"
        )
    return alphas.pop(), betas.pop()


def permutation_lift(config: DssConfig, mode: LiftMode = "formula") -> LiftReport:
    """Parameters and capacity of the lifted system.

    Args:
        config: any valid system
        mode: "formula" computes the lift from averages; "explicit" sums all
            n! permuted copies (n ≤ 6) and also checks it against the formula

    Raises:
        TooManyPermutations: explicit mode with n > 6
        LiftNotHomogeneous, OracleMismatch: the two computations disagree
    """
    if mode == "formula":
        alpha_b, beta_b = _formula_lift(config)
    elif mode == "explicit":
        alpha_b, beta_b = _explicit_lift(config)
        formula_alpha, formula_beta = _formula_lift(config)
        if alpha_b != formula_alpha:
            raise OracleMismatch("explicit lift alpha_b", formula_alpha, alpha_b)
        if beta_b != formula_beta:
            raise OracleMismatch("explicit lift beta_b", formula_beta, beta_b)
    else:
        raise InvalidInput(f"Unknown lift mode {mode!r}")

    copies = factorial(config.n)
    capacity_b = homogeneous_capacity(alpha_b, config.d * beta_b, config.k, config.d)
    report = LiftReport(alpha_b, beta_b, capacity_b, capacity_b / copies)

    avg = average_upper_bound(config)
    if report.implied_bound != avg:
        raise OracleMismatch("lift implied bound", avg, report.implied_bound)
    logger.debug("permutation_lift(%r, %s) = %s", config, mode, report)
    return report


_CERTIFICATE_CHECKS = [
    field_le("scaled_exact", "capacity_b"),
    field_le("exact", "implied_bound"),
]


def lift_bound_check(config: DssConfig, limit: Optional[int] = None) -> LiftCertificate:
    """Certify n!·C ≤ C_b (equivalently C ≤ implied bound) numerically.

    Raises whatever ``exact_capacity`` raises for unsupported or large systems.
    """
    exact, _ = exact_capacity(config, limit)
    report = permutation_lift(config)
    copies = factorial(config.n)
    certificate = LiftCertificate(
        exact=exact,
        copies=copies,
        scaled_exact=copies * exact,
        capacity_b=report.capacity_b,
        implied_bound=report.implied_bound,
    )
    violated = failed_checks(certificate, _CERTIFICATE_CHECKS)
    if violated:
        raise SandwichViolation(violated)
    logger.info(
        "Lift certified for %r: %d·%s = %s ≤ %s",
        config,
        copies,
        exact,
        certificate.scaled_exact,
        report.capacity_b,
    )
    return certificate
