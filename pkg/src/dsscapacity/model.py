"""System data model: parameters, repair-bandwidth models and configs.

Configs are immutable. Node indices are 1-based and stable: nothing here
reorders nodes, bound formulas that need sorted resources sort private copies.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import (
    ClassVar,
    Dict,
    Iterable,
    Iterator,
    List,
    Sequence,
    Tuple,
    Union,
)

from ._types import HelperSet, NodeIndex, RationalLike, SupportsBandwidth, TableKey
from .errors import (
    BandwidthExceedsStorage,
    ConfigFormatError,
    DimensionMismatch,
    IncompleteTable,
    IndexOutOfRange,
    NegativeValue,
    NonPositiveScalar,
    ParamViolation,
)
from .rational import as_rational, common_denominator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SystemParams:
    """(n, k, d) with 1 ≤ k ≤ d ≤ n − 1."""

    n: int
    k: int
    d: int

    def __post_init__(self) -> None:
        for name in ("n", "k", "d"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ParamViolation(
                    f"{name} must be a positive integer, got {value!r}"
                )
        if not self.k <= self.d <= self.n - 1:
            raise ParamViolation(
                f"Need 1 ≤ k ≤ d ≤ n−1, got (n, k, d) = "
                f"({self.n}, {self.k}, {self.d})"
            )

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    @property
    def helper_set_count(self) -> int:
        """binom(n−1, d): helper sets available to each failed node."""
        return comb(self.n - 1, self.d)

    @property
    def table_size(self) -> int:
        """m = n·d·binom(n−1, d) scalar entries of a full table."""
        return self.n * self.d * self.helper_set_count


def helper_sets(n: int, d: int, j: NodeIndex) -> List[HelperSet]:
    """All d-subsets of 1..n not containing j, in lexicographic order."""
    others = [i for i in range(1, n + 1) if i != j]
    return list(combinations(others, d))


# ---------------------------------------------------------------------------
# Repair-bandwidth models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Homogeneous:
    """Symmetric repair: every helper sends γ/d."""

    gamma: Fraction
    kind: ClassVar[str] = "homogeneous"

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", as_rational(self.gamma))

    def beta(self, i: NodeIndex, j: NodeIndex, helpers: HelperSet) -> Fraction:
        return self.gamma / len(helpers)

    def scaled(self, c: Fraction) -> Homogeneous:
        return Homogeneous(self.gamma * c)


@dataclass(frozen=True)
class HelperOnly:
    """β_{ijS} = β_i: the download depends only on the helper."""

    betas: Tuple[Fraction, ...]
    kind: ClassVar[str] = "helper_only"

    def __post_init__(self) -> None:
        object.__setattr__(self, "betas", tuple(as_rational(b) for b in self.betas))

    def beta(self, i: NodeIndex, j: NodeIndex, helpers: HelperSet) -> Fraction:
        return self.betas[i - 1]

    def scaled(self, c: Fraction) -> HelperOnly:
        return HelperOnly(tuple(b * c for b in self.betas))


@dataclass(frozen=True)
class Full:
    """Explicit β_{ijS} table keyed by (j, S) with S sorted ascending.

    Values of a row are aligned with the sorted helper tuple. Rows given with
    an unsorted S are reordered on construction.
    """

    table: Dict[TableKey, Tuple[Fraction, ...]]
    kind: ClassVar[str] = "full"

    def __post_init__(self) -> None:
        canonical: Dict[TableKey, Tuple[Fraction, ...]] = {}
        for (j, raw_helpers), raw_values in dict(self.table).items():
            helpers = tuple(int(i) for i in raw_helpers)
            values = tuple(as_rational(v) for v in raw_values)
            if len(values) != len(helpers):
                raise DimensionMismatch(
                    f"bandwidth row (j={j}, S={list(helpers)})",
                    len(helpers),
                    len(values),
                )
            order = sorted(range(len(helpers)), key=lambda t: helpers[t])
            key: TableKey = (int(j), tuple(helpers[t] for t in order))
            if key in canonical:
                raise ConfigFormatError(f"Duplicate bandwidth row for key {key}")
            canonical[key] = tuple(values[t] for t in order)
        object.__setattr__(self, "table", canonical)

    def beta(self, i: NodeIndex, j: NodeIndex, helpers: HelperSet) -> Fraction:
        key = (j, tuple(sorted(helpers)))
        return self.table[key][key[1].index(i)]

    def scaled(self, c: Fraction) -> Full:
        return Full(
            {key: tuple(v * c for v in row) for key, row in self.table.items()}
        )


RepairBandwidthModel = Union[Homogeneous, HelperOnly, Full]


# ---------------------------------------------------------------------------
# Config
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DssConfig:
    """A heterogeneous storage system: (n, k, d), per-node α, bandwidth model.

    Construction checks every structural invariant; an instance that exists is
    valid.
    """

    params: SystemParams
    alpha: Tuple[Fraction, ...]
    bandwidth: RepairBandwidthModel

    def __post_init__(self) -> None:
        alpha = tuple(as_rational(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)

        n, d = self.params.n, self.params.d
        if len(alpha) != n:
            raise DimensionMismatch("alpha", n, len(alpha))
        _check_nonnegative("alpha", alpha)

        bandwidth = self.bandwidth
        if isinstance(bandwidth, Homogeneous):
            _check_nonnegative("gamma", [bandwidth.gamma])
        elif isinstance(bandwidth, HelperOnly):
            if len(bandwidth.betas) != n:
                raise DimensionMismatch("beta", n, len(bandwidth.betas))
            _check_nonnegative("beta", bandwidth.betas)
        else:
            expected = {
                (j, helpers) for j in range(1, n + 1) for helpers in helper_sets(n, d, j)
            }
            present = set(bandwidth.table)
            if present != expected:
                raise IncompleteTable(
                    sorted(expected - present), sorted(present - expected)
                )
            for key, row in bandwidth.table.items():
                _check_nonnegative(f"beta{key}", row)

    # Convenience constructors -------------------------------------------------

    @classmethod
    def helper_only(
        cls,
        n: int,
        k: int,
        d: int,
        alpha: Sequence[RationalLike],
        beta: Sequence[RationalLike],
    ) -> DssConfig:
        return cls(
            SystemParams(n, k, d),
            tuple(as_rational(a) for a in alpha),
            HelperOnly(tuple(as_rational(b) for b in beta)),
        )

    @classmethod
    def homogeneous(
        cls,
        n: int,
        k: int,
        d: int,
        alpha: Union[RationalLike, Sequence[RationalLike]],
        gamma: RationalLike,
    ) -> DssConfig:
        if isinstance(alpha, (int, str, Fraction)):
            alphas = (as_rational(alpha),) * n
        else:
            alphas = tuple(as_rational(a) for a in alpha)
        return cls(SystemParams(n, k, d), alphas, Homogeneous(as_rational(gamma)))

    # Shortcuts ----------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def model_kind(self) -> str:
        return self.bandwidth.kind

    def beta(self, i: NodeIndex, j: NodeIndex, helpers: Iterable[NodeIndex]) -> Fraction:
        """β_{ijS} for helper ``i`` repairing ``j`` with helper set ``helpers``."""
        return self.bandwidth.beta(i, j, tuple(sorted(helpers)))

    def __repr__(self) -> str:
        return (
            f"DssConfig(n={self.n}, k={self.k}, d={self.d}, "
            f"alpha={[str(a) for a in self.alpha]}, model={self.model_kind})"
        )


def _check_nonnegative(what: str, values: Iterable[Fraction]) -> None:
    for value in values:
        if value < 0:
            raise NegativeValue(what, value)


def _check_index(config: DssConfig, j: NodeIndex) -> None:
    if not 1 <= j <= config.n:
        raise IndexOutOfRange(j, config.n)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def repair_rows(
    bandwidth: SupportsBandwidth, n: int, d: int
) -> Iterator[Tuple[TableKey, Tuple[Fraction, ...]]]:
    """Yield ((j, S), row) for every repair, the row aligned with sorted S."""
    for j in range(1, n + 1):
        for helpers in helper_sets(n, d, j):
            yield (j, helpers), tuple(bandwidth.beta(i, j, helpers) for i in helpers)


def table_entries(
    config: DssConfig,
) -> Iterator[Tuple[NodeIndex, NodeIndex, HelperSet, Fraction]]:
    """Yield (i, j, S, β_{ijS}) for every entry of the expanded table."""
    for (j, helpers), row in repair_rows(config.bandwidth, config.n, config.d):
        for i, value in zip(helpers, row):
            yield i, j, helpers, value


def storage_warnings(config: DssConfig) -> List[str]:
    """Describe every helper asked to send more than it stores."""
    worst: Dict[NodeIndex, Fraction] = {}
    bandwidth = config.bandwidth
    if isinstance(bandwidth, HelperOnly):
        worst = {i: b for i, b in enumerate(bandwidth.betas, start=1)}
    elif isinstance(bandwidth, Homogeneous):
        worst = {i: bandwidth.gamma / config.d for i in config.params.nodes}
    else:
        for i, _, _, value in table_entries(config):
            worst[i] = max(worst.get(i, value), value)

    messages: List[str] = []
    for i, value in sorted(worst.items()):
        if value > config.alpha[i - 1]:
            messages.append(
                f"helper node {i} sends up to {value} per repair but stores "
                f"only {config.alpha[i - 1]}"
            )
    return messages


def validate(config: DssConfig) -> DssConfig:
    """Return ``config`` after warning about β values above helper storage.

    Structural checks (DimensionMismatch, ParamViolation, NegativeValue,
    IncompleteTable) already ran when the config was constructed.
    """
    for message in storage_warnings(config):
        logger.warning(message)
        warnings.warn(message, BandwidthExceedsStorage, stacklevel=2)
    return config


def node_avg_repair_bw(config: DssConfig, j: NodeIndex) -> Fraction:
    """Average total repair download γ_j of node ``j`` over its helper sets."""
    _check_index(config, j)
    bandwidth = config.bandwidth
    n, d = config.n, config.d

    if isinstance(bandwidth, Homogeneous):
        return bandwidth.gamma
    if isinstance(bandwidth, HelperOnly):
        # Each β_i (i ≠ j) appears in binom(n−2, d−1) of the binom(n−1, d) sets.
        others = sum((b for i, b in enumerate(bandwidth.betas, 1) if i != j), Fraction(0))
        return others * comb(n - 2, d - 1) / comb(n - 1, d)

    total = sum(
        (sum(bandwidth.table[(j, helpers)], Fraction(0)) for helpers in helper_sets(n, d, j)),
        Fraction(0),
    )
    return total / comb(n - 1, d)


def system_averages(config: DssConfig) -> Tuple[Fraction, Fraction]:
    """(ᾱ, γ̄): average node storage and average total repair bandwidth."""
    n = config.n
    alpha_bar = sum(config.alpha, Fraction(0)) / n
    gamma_bar = (
        sum((node_avg_repair_bw(config, j) for j in config.params.nodes), Fraction(0))
        / n
    )
    return alpha_bar, gamma_bar


def sorted_beta_multiset(config: DssConfig) -> List[Fraction]:
    """All m = n·d·binom(n−1, d) table values, ascending, duplicates kept."""
    return sorted(value for *_, value in table_entries(config))


def expand_to_full(config: DssConfig) -> DssConfig:
    """Same system with an explicit β_{ijS} table; identity on Full configs."""
    if isinstance(config.bandwidth, Full):
        return config
    table = dict(repair_rows(config.bandwidth, config.n, config.d))
    return DssConfig(config.params, config.alpha, Full(table))


def scale_config(config: DssConfig, c: RationalLike) -> DssConfig:
    """Multiply every α and β by ``c`` > 0."""
    factor = as_rational(c)
    if factor <= 0:
        raise NonPositiveScalar(f"Scaling factor must be positive, got {factor}")
    return DssConfig(
        config.params,
        tuple(a * factor for a in config.alpha),
        config.bandwidth.scaled(factor),
    )


def bandwidth_values(config: DssConfig) -> List[Fraction]:
    """Distinct-source β values (per helper, per entry, or γ/d)."""
    bandwidth = config.bandwidth
    if isinstance(bandwidth, Homogeneous):
        return [bandwidth.gamma / config.d]
    if isinstance(bandwidth, HelperOnly):
        return list(bandwidth.betas)
    return [v for row in bandwidth.table.values() for v in row]


def integer_scale_factor(config: DssConfig) -> int:
    """Smallest positive integer making every α and β integral."""
    return common_denominator([*config.alpha, *bandwidth_values(config)])


def is_integral(config: DssConfig) -> bool:
    return integer_scale_factor(config) == 1


def integer_scaled(config: DssConfig) -> Tuple[DssConfig, int]:
    """Scale by the LCM of all denominators; returns (scaled config, factor)."""
    factor = integer_scale_factor(config)
    if factor == 1:
        return config, 1
    logger.debug("Scaling %r by %d to integer units", config, factor)
    return scale_config(config, factor), factor


def symmetrize(config: DssConfig) -> DssConfig:
    """Replace every repair's split by the symmetric one, keeping its total."""
    if isinstance(config.bandwidth, Homogeneous):
        return config
    full = expand_to_full(config)
    assert isinstance(full.bandwidth, Full)
    table = {
        key: (sum(row, Fraction(0)) / len(row),) * len(row)
        for key, row in full.bandwidth.table.items()
    }
    return DssConfig(config.params, config.alpha, Full(table))

