"""Hypothesis strategies for random storage systems."""

from fractions import Fraction
from typing import Dict, Tuple

from hypothesis import strategies as st

from dsscapacity import DssConfig, Full, SystemParams, helper_sets

values = st.integers(min_value=0, max_value=8).map(Fraction)
rationals = st.builds(
    Fraction, st.integers(min_value=0, max_value=24), st.sampled_from([1, 2, 3, 4, 6])
)


@st.composite
def system_params(draw: st.DrawFn, max_n: int = 5) -> SystemParams:
    n = draw(st.integers(min_value=2, max_value=max_n))
    d = draw(st.integers(min_value=1, max_value=n - 1))
    k = draw(st.integers(min_value=1, max_value=d))
    return SystemParams(n, k, d)


@st.composite
def helper_only_configs(
    draw: st.DrawFn, max_n: int = 5, numbers: st.SearchStrategy[Fraction] = values
) -> DssConfig:
    p = draw(system_params(max_n))
    alpha = draw(st.lists(numbers, min_size=p.n, max_size=p.n))
    beta = draw(st.lists(numbers, min_size=p.n, max_size=p.n))
    return DssConfig.helper_only(p.n, p.k, p.d, alpha, beta)


@st.composite
def homogeneous_configs(draw: st.DrawFn, max_n: int = 5) -> DssConfig:
    p = draw(system_params(max_n))
    return DssConfig.homogeneous(p.n, p.k, p.d, draw(values), draw(values))


@st.composite
def full_configs(draw: st.DrawFn, max_n: int = 4) -> DssConfig:
    p = draw(system_params(max_n))
    alpha = draw(st.lists(values, min_size=p.n, max_size=p.n))
    table: Dict[Tuple[int, Tuple[int, ...]], Tuple[Fraction, ...]] = {}
    for j in p.nodes:
        for helpers in helper_sets(p.n, p.d, j):
            table[(j, helpers)] = tuple(
                draw(st.lists(values, min_size=p.d, max_size=p.d))
            )
    return DssConfig(p, tuple(alpha), Full(table))


def any_configs(max_n: int = 4) -> st.SearchStrategy[DssConfig]:
    return st.one_of(
        helper_only_configs(max_n), homogeneous_configs(max_n), full_configs(max_n)
    )


@st.composite
def equal_total_configs(draw: st.DrawFn, max_n: int = 4) -> Tuple[DssConfig, Fraction]:
    """Full tables whose every repair downloads the same total γ, split at random."""
    p = draw(system_params(max_n))
    alpha = draw(st.lists(values, min_size=p.n, max_size=p.n))
    gamma = draw(values)
    table: Dict[Tuple[int, Tuple[int, ...]], Tuple[Fraction, ...]] = {}
    for j in p.nodes:
        for helpers in helper_sets(p.n, p.d, j):
            weights = draw(st.lists(st.integers(0, 4), min_size=p.d, max_size=p.d))
            if sum(weights) == 0:
                weights = [1] * p.d
            table[(j, helpers)] = tuple(gamma * w / sum(weights) for w in weights)
    return DssConfig(p, tuple(alpha), Full(table)), gamma
