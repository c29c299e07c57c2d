"""Secrecy-capacity upper bounds with ℓ eavesdropped nodes.

Only bounds are computed: the secrecy capacity itself is unknown even for
homogeneous systems.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from ._types import RationalLike
from .errors import NegativeValue, ParamViolation
from .model import DssConfig, system_averages
from .rational import as_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SecrecyParams:
    """Number of compromised nodes, 0 ≤ ell ≤ k."""

    ell: int
    k: int

    def __post_init__(self) -> None:
        if isinstance(self.ell, bool) or not isinstance(self.ell, int):
            raise ParamViolation(f"ell must be an integer, got {self.ell!r}")
        if not 0 <= self.ell <= self.k:
            raise ParamViolation(f"Need 0 ≤ ell ≤ k = {self.k}, got ell = {self.ell}")


def homogeneous_secrecy_bound(
    alpha: RationalLike, gamma: RationalLike, k: int, d: int, ell: int
) -> Fraction:
    """Σ_{i=ℓ+1..k} min(α, (d−i+1)·γ/d); zero when ℓ = k."""
    SecrecyParams(ell, k)
    if not 1 <= k <= d:
        raise ParamViolation(f"Need 1 ≤ k ≤ d, got k={k}, d={d}")
    a, g = as_rational(alpha), as_rational(gamma)
    if a < 0:
        raise NegativeValue("alpha", a)
    if g < 0:
        raise NegativeValue("gamma", g)
    return sum(
        (min(a, (d - i + 1) * g / d) for i in range(ell + 1, k + 1)), Fraction(0)
    )


def secrecy_upper_bound(config: DssConfig, ell: int) -> Fraction:
    """Secrecy bound of the homogeneous system with the same average resources."""
    alpha_bar, gamma_bar = system_averages(config)
    bound = homogeneous_secrecy_bound(alpha_bar, gamma_bar, config.k, config.d, ell)
    logger.debug("secrecy_upper_bound(%r, ell=%d) = %s", config, ell, bound)
    return bound


def secrecy_bound_profile(config: DssConfig) -> List[Fraction]:
    """Bounds for ℓ = 0..k, non-increasing."""
    alpha_bar, gamma_bar = system_averages(config)
    return [
        homogeneous_secrecy_bound(alpha_bar, gamma_bar, config.k, config.d, ell)
        for ell in range(config.k + 1)
    ]
