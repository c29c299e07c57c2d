import warnings
from fractions import Fraction

import pytest
from hypothesis import given

from dsscapacity import (
    BandwidthExceedsStorage,
    DimensionMismatch,
    DssConfig,
    Full,
    HelperOnly,
    Homogeneous,
    IncompleteTable,
    IndexOutOfRange,
    NegativeValue,
    NonPositiveScalar,
    ParamViolation,
    SupportsBandwidth,
    SystemParams,
    expand_to_full,
    helper_sets,
    integer_scaled,
    node_avg_repair_bw,
    scale_config,
    sorted_beta_multiset,
    symmetrize,
    system_averages,
    validate,
)
from dsscapacity.model import is_integral, repair_rows, storage_warnings

from .strategies import any_configs, helper_only_configs, rationals


def zero_full() -> DssConfig:
    table = {(j, s): (0, 0) for j in (1, 2, 3) for s in helper_sets(3, 2, j)}
    return DssConfig(SystemParams(3, 2, 2), (0, 0, 0), Full(table))  # type: ignore[arg-type]


class TestConstruction:
    def test_example1_is_valid(self, example1: DssConfig):
        assert validate(example1) is example1
        assert example1.alpha == (1, 2, 2)
        assert example1.model_kind == "helper_only"

    @pytest.mark.parametrize("n,k,d", [(3, 3, 2), (3, 2, 3), (1, 1, 1), (3, 0, 2)])
    def test_param_violation(self, n: int, k: int, d: int):
        with pytest.raises(ParamViolation):
            SystemParams(n, k, d)

    def test_alpha_length(self):
        with pytest.raises(DimensionMismatch) as info:
            DssConfig.helper_only(3, 2, 2, [1, 2], [1, 2, 2])
        assert info.value.expected == 3
        assert info.value.actual == 2

    def test_beta_length(self):
        with pytest.raises(DimensionMismatch):
            DssConfig.helper_only(3, 2, 2, [1, 2, 2], [1, 2])

    def test_negative_values(self):
        with pytest.raises(NegativeValue):
            DssConfig.helper_only(3, 2, 2, [1, -2, 2], [1, 2, 2])
        with pytest.raises(NegativeValue):
            DssConfig.homogeneous(3, 2, 2, 1, "-1/2")

    def test_incomplete_table(self):
        table = {(1, (2, 3)): (1, 1), (2, (1, 3)): (1, 1)}
        with pytest.raises(IncompleteTable) as info:
            DssConfig(SystemParams(3, 2, 2), (1, 1, 1), Full(table))  # type: ignore[arg-type]
        assert info.value.missing == [(3, (1, 2))]

    def test_full_rows_are_canonicalized(self):
        table = {(1, (3, 2)): (5, 4), (2, (1, 3)): (1, 1), (3, (1, 2)): (1, 1)}
        config = DssConfig(SystemParams(3, 2, 2), (1, 1, 1), Full(table))  # type: ignore[arg-type]
        assert config.beta(2, 1, (2, 3)) == 4
        assert config.beta(3, 1, (3, 2)) == 5

    def test_models_satisfy_protocol(self):
        assert isinstance(Homogeneous(Fraction(1)), SupportsBandwidth)
        assert isinstance(HelperOnly((Fraction(1),)), SupportsBandwidth)

    def test_rows_from_any_bandwidth_source(self):
        class HelperIndex:
            """Helper i always sends i."""

            def beta(self, i: int, j: int, helpers: tuple[int, ...]) -> Fraction:
                return Fraction(i)

            def scaled(self, c: Fraction) -> "HelperIndex":
                return self

        source = HelperIndex()
        assert isinstance(source, SupportsBandwidth)
        assert dict(repair_rows(source, 3, 2)) == {
            (1, (2, 3)): (2, 3),
            (2, (1, 3)): (1, 3),
            (3, (1, 2)): (1, 2),
        }

    def test_expansion_matches_rows(self, example2: DssConfig):
        full = expand_to_full(example2).bandwidth
        assert isinstance(full, Full)
        assert full.table == dict(repair_rows(example2.bandwidth, 3, 2))

    def test_rationals_are_reduced(self):
        config = DssConfig.homogeneous(3, 2, 2, "4/6", "10/4")
        assert config.alpha[0] == Fraction(2, 3)
        assert str(config.bandwidth.beta(1, 2, (1, 3))) == "5/4"


class TestValidate:
    def test_warns_when_helper_sends_more_than_it_stores(self):
        config = DssConfig.helper_only(3, 2, 2, [1, 1, 1], [2, 1, 1])
        with pytest.warns(BandwidthExceedsStorage, match="helper node 1"):
            validate(config)

    def test_no_warning_for_examples(self, example1: DssConfig, example2: DssConfig):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            validate(example1)
            validate(example2)
        assert storage_warnings(example1) == []


class TestAverages:
    def test_node_avg_repair_bw(self, example1: DssConfig, example2: DssConfig):
        assert node_avg_repair_bw(example1, 1) == 4
        assert [node_avg_repair_bw(example2, j) for j in (1, 2, 3)] == [9, 8, 7]

    def test_homogeneous_constant(self, homogeneous: DssConfig):
        assert all(node_avg_repair_bw(homogeneous, j) == 20 for j in (1, 2, 3))

    def test_zero_full(self):
        assert node_avg_repair_bw(zero_full(), 2) == 0
        assert system_averages(zero_full()) == (0, 0)

    def test_index_out_of_range(self, example1: DssConfig):
        with pytest.raises(IndexOutOfRange):
            node_avg_repair_bw(example1, 4)
        with pytest.raises(IndexOutOfRange):
            node_avg_repair_bw(example1, 0)

    def test_system_averages(self, example1: DssConfig, example2: DssConfig):
        assert system_averages(example1) == (Fraction(5, 3), Fraction(10, 3))
        assert system_averages(example2) == (6, 8)

    def test_helper_only_average_over_larger_system(self):
        # n=4, d=2: each other helper is in 2 of the 3 helper sets of node 1
        config = DssConfig.helper_only(4, 2, 2, [1, 1, 1, 1], [0, 3, 6, 9])
        assert node_avg_repair_bw(config, 1) == Fraction(2, 3) * 18


class TestExpansion:
    def test_sorted_beta_multiset(self, example1: DssConfig, example2: DssConfig):
        assert sorted_beta_multiset(example1) == [1, 1, 2, 2, 2, 2]
        assert sorted_beta_multiset(example2) == [3, 3, 4, 4, 5, 5]

    def test_homogeneous_expansion(self, homogeneous: DssConfig):
        assert sorted_beta_multiset(homogeneous) == [10] * 6
        full = expand_to_full(homogeneous).bandwidth
        assert isinstance(full, Full)
        assert set(full.table.values()) == {(10, 10)}

    def test_helper_only_expansion(self, example1: DssConfig):
        full = expand_to_full(example1)
        for j in (1, 2, 3):
            for s in helper_sets(3, 2, j):
                for i in s:
                    assert full.beta(i, j, s) == example1.alpha[i - 1]

    @given(any_configs())
    def test_expand_is_idempotent(self, config: DssConfig):
        once = expand_to_full(config)
        assert expand_to_full(once) == once
        assert system_averages(once) == system_averages(config)
        assert sorted_beta_multiset(once) == sorted_beta_multiset(config)

    def test_helper_sets_are_lexicographic(self):
        assert helper_sets(4, 2, 2) == [(1, 3), (1, 4), (3, 4)]
        assert SystemParams(4, 2, 2).table_size == 4 * 2 * 3


class TestScaling:
    def test_identity(self, example1: DssConfig):
        assert scale_config(example1, 1) == example1

    def test_fractional_alpha(self):
        config = DssConfig.homogeneous(2, 1, 1, ["5/3", "5/3"], 1)
        assert scale_config(config, 3).alpha == (5, 5)

    @pytest.mark.parametrize("c", [0, -1, "-1/2"])
    def test_non_positive(self, example1: DssConfig, c: object):
        with pytest.raises(NonPositiveScalar):
            scale_config(example1, c)  # type: ignore[arg-type]

    def test_integer_scaled(self, thirds: DssConfig, example1: DssConfig):
        assert not is_integral(thirds)
        scaled, factor = integer_scaled(thirds)
        assert factor == 3
        assert scaled == example1
        assert integer_scaled(example1) == (example1, 1)

    @given(helper_only_configs(numbers=rationals))
    def test_scaled_averages_are_linear(self, config: DssConfig):
        alpha_bar, gamma_bar = system_averages(config)
        scaled, factor = integer_scaled(config)
        assert is_integral(scaled)
        assert system_averages(scaled) == (factor * alpha_bar, factor * gamma_bar)


class TestSymmetrize:
    def test_splits_each_repair_evenly(self):
        table = {(1, (2, 3)): (1, 3), (2, (1, 3)): (2, 2), (3, (1, 2)): (0, 4)}
        config = DssConfig(SystemParams(3, 2, 2), (2, 2, 2), Full(table))  # type: ignore[arg-type]
        sym = symmetrize(config).bandwidth
        assert isinstance(sym, Full)
        assert sym.table[(1, (2, 3))] == (2, 2)
        assert sym.table[(3, (1, 2))] == (2, 2)

    def test_homogeneous_unchanged(self, homogeneous: DssConfig):
        assert symmetrize(homogeneous) is homogeneous

    @given(any_configs())
    def test_keeps_repair_totals(self, config: DssConfig):
        sym = symmetrize(config)
        for j in config.params.nodes:
            assert node_avg_repair_bw(sym, j) == node_avg_repair_bw(config, j)
