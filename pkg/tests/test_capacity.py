from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsscapacity import (
    DssConfig,
    HelperOnly,
    Homogeneous,
    ModelUnsupported,
    NegativeValue,
    ParamViolation,
    SandwichViolation,
    SearchTooLarge,
    average_upper_bound,
    bounds_report,
    evaluate_failure_sequence,
    exact_capacity,
    expand_to_full,
    general_bounds,
    helper_only_bounds,
    homogeneous_capacity,
    permute_config,
    scale_config,
    second_form_helper_only_bounds,
    special_case_capacity,
    symmetric_repair_gain,
    symmetrize,
)
from dsscapacity.capacity import REPORT_INVARIANTS, BoundsReport, minimizing_helper_set
from dsscapacity.invariants import failed_checks

from .strategies import (
    equal_total_configs,
    helper_only_configs,
    homogeneous_configs,
    rationals,
)


def brute_force_capacity(config: DssConfig) -> Fraction:
    """Minimum over every failure sequence and every admissible helper set."""
    assert isinstance(config.bandwidth, HelperOnly)
    betas = config.bandwidth.betas
    n, k, d = config.n, config.k, config.d
    best = None
    for failures in permutations(range(1, n + 1), k):
        total = Fraction(0)
        for i, f in enumerate(failures, start=1):
            outside = [v for v in range(1, n + 1) if v not in failures[:i]]
            total += min(
                min(config.alpha[f - 1], sum((betas[s - 1] for s in S), Fraction(0)))
                for S in combinations(outside, d + 1 - i)
            )
        best = total if best is None else min(best, total)
    assert best is not None
    return best


class TestHomogeneous:
    @pytest.mark.parametrize(
        "alpha,gamma,k,d,expected",
        [
            (10, 20, 2, 2, 20),
            (0, 7, 2, 3, 0),
            ("5/3", "10/3", 2, 2, Fraction(10, 3)),
            (10, 20, 1, 2, 10),
        ],
    )
    def test_closed_form(self, alpha: object, gamma: object, k: int, d: int, expected: object):
        assert homogeneous_capacity(alpha, gamma, k, d) == expected  # type: ignore[arg-type]

    def test_rejects_bad_input(self):
        with pytest.raises(ParamViolation):
            homogeneous_capacity(1, 1, 3, 2)
        with pytest.raises(NegativeValue):
            homogeneous_capacity(-1, 1, 1, 2)


class TestAverageBound:
    def test_examples(self, example1: DssConfig, example2: DssConfig):
        assert average_upper_bound(example1) == Fraction(10, 3)
        assert average_upper_bound(example2) == 10

    @given(homogeneous_configs())
    def test_homogeneous_is_tight(self, config: DssConfig):
        assert isinstance(config.bandwidth, Homogeneous)
        assert average_upper_bound(config) == homogeneous_capacity(
            config.alpha[0], config.bandwidth.gamma, config.k, config.d
        )


class TestGeneralBounds:
    def test_examples(self, example1: DssConfig, example2: DssConfig):
        assert general_bounds(example1) == (2, 3)
        assert general_bounds(example2) == (8, 10)

    def test_homogeneous_collapses(self, homogeneous: DssConfig):
        c_min, c_max = general_bounds(homogeneous)
        assert c_min == c_max == 20

    def test_zero(self):
        zero = DssConfig.homogeneous(3, 2, 2, 0, 0)
        assert general_bounds(zero) == (0, 0)

    def test_full_model_supported(self, example2: DssConfig):
        assert general_bounds(expand_to_full(example2)) == (8, 10)


class TestHelperOnlyBounds:
    def test_examples(self, example1: DssConfig, example2: DssConfig):
        assert helper_only_bounds(example1) == (2, 3)
        # Evaluating the sum forms gives (8, 10) here; both sandwich the capacity 9.
        assert helper_only_bounds(example2) == (8, 10)

    def test_uniform_beta(self):
        config = DssConfig.helper_only(4, 2, 3, [1, 5, 2, 9], [2, 2, 2, 2])
        # sorted α = (1, 2, ...): min(1, 3·2) + min(2, 2·2)
        assert helper_only_bounds(config) == (3, 3)

    def test_full_model_rejected(self, example1: DssConfig):
        with pytest.raises(ModelUnsupported):
            helper_only_bounds(expand_to_full(example1))

    @given(helper_only_configs(numbers=rationals))
    def test_second_forms_agree(self, config: DssConfig):
        assert second_form_helper_only_bounds(config) == helper_only_bounds(config)


class TestExactCapacity:
    def test_example1(self, example1: DssConfig):
        value, witness = exact_capacity(example1)
        assert value == 3
        assert witness.failures == (1, 2)
        assert witness.helper_sets == ((2, 3), (3,))
        assert witness.terms == (1, 2)

    def test_example2_lexicographic_witness(self, example2: DssConfig):
        value, witness = exact_capacity(example2)
        assert value == 9
        assert witness.failures == (1, 3)
        assert witness.terms == (5, 4)
        assert evaluate_failure_sequence(example2, (2, 3)).value == 9

    def test_homogeneous(self, homogeneous: DssConfig):
        assert exact_capacity(homogeneous)[0] == 20

    def test_scaling(self, example1: DssConfig):
        assert exact_capacity(scale_config(example1, 2))[0] == 6

    def test_full_model_rejected(self, example1: DssConfig):
        with pytest.raises(ModelUnsupported):
            exact_capacity(expand_to_full(example1))

    def test_search_guard(self):
        config = DssConfig.helper_only(11, 1, 1, [1] * 11, list(range(11)))
        with pytest.raises(SearchTooLarge) as info:
            exact_capacity(config)
        assert info.value.limit == 10
        value, witness = exact_capacity(config, limit=11)
        # node 1 sends nothing, so node 2 repaired from it stores nothing
        assert value == 0
        assert witness.failures == (2,)

    def test_minimizing_helper_set_ties(self):
        betas = [Fraction(v) for v in (2, 1, 1, 1)]
        assert minimizing_helper_set(betas, {3}, 2) == (2, 4)

    @given(helper_only_configs(max_n=4, numbers=rationals))
    def test_matches_brute_force(self, config: DssConfig):
        value, witness = exact_capacity(config)
        assert value == brute_force_capacity(config)
        assert witness.value == sum(witness.terms, Fraction(0))
        for f, S, term in zip(witness.failures, witness.helper_sets, witness.terms):
            assert term <= config.alpha[f - 1]
            assert f not in S
        for i, S in enumerate(witness.helper_sets, start=1):
            assert len(S) == config.d + 1 - i
            assert not set(S) & set(witness.failures[:i])

    @given(helper_only_configs(), st.integers(min_value=1, max_value=5))
    def test_linear_in_scale(self, config: DssConfig, c: int):
        assert exact_capacity(scale_config(config, c))[0] == c * exact_capacity(config)[0]


class TestSpecialCases:
    def test_uniform_beta(self):
        config = DssConfig.helper_only(3, 2, 2, [1, 2, 3], [2, 2, 2])
        assert special_case_capacity(config) == 3 == exact_capacity(config)[0]

    def test_storage_below_bandwidth(self):
        config = DssConfig.helper_only(3, 2, 2, [1, 1, 2], [2, 3, 4])
        assert special_case_capacity(config) == 2 == exact_capacity(config)[0]

    def test_homogeneous(self, homogeneous: DssConfig):
        assert special_case_capacity(homogeneous) == 20

    def test_not_applicable(self, example1: DssConfig):
        assert special_case_capacity(example1) is None
        assert special_case_capacity(expand_to_full(example1)) is None

    @given(helper_only_configs())
    def test_symmetric_repair_gain_is_zero(self, config: DssConfig):
        assert symmetric_repair_gain(config) == 0


class TestBoundsReport:
    def test_example1(self, example1: DssConfig):
        report = bounds_report(example1, compute_exact=True)
        assert report.avg_upper == Fraction(10, 3)
        assert (report.c_min, report.c_max) == (2, 3)
        assert (report.cprime_min, report.cprime_max) == (2, 3)
        assert report.exact is not None and report.exact.value == 3

    def test_example2(self, example2: DssConfig):
        report = bounds_report(example2, compute_exact=True)
        assert report.avg_upper == 10
        assert (report.cprime_min, report.cprime_max) == (8, 10)
        assert report.exact is not None and report.exact.value == 9

    def test_without_exact(self, example1: DssConfig):
        assert bounds_report(example1).exact is None

    def test_full_model(self, example1: DssConfig):
        report = bounds_report(expand_to_full(example1), compute_exact=True)
        assert report.cprime_min is None
        assert report.exact is None
        assert report.avg_upper == Fraction(10, 3)

    def test_invariants_name_the_broken_relation(self):
        broken = BoundsReport(avg_upper=Fraction(1), c_min=Fraction(3), c_max=Fraction(2))
        assert failed_checks(broken, REPORT_INVARIANTS) == ["c_min <= c_max"]
        with pytest.raises(SandwichViolation, match="c_min <= c_max"):
            raise SandwichViolation(failed_checks(broken, REPORT_INVARIANTS))

    @given(helper_only_configs(numbers=rationals))
    def test_sandwich_holds(self, config: DssConfig):
        report = bounds_report(config, compute_exact=True)
        assert report.exact is not None
        assert report.c_min <= report.exact.value <= min(report.c_max, report.avg_upper)

    @pytest.mark.slow
    @settings(max_examples=1000)
    @given(helper_only_configs(max_n=5, numbers=rationals))
    def test_sandwich_acceptance(self, config: DssConfig):
        report = bounds_report(config, compute_exact=True)
        assert report.exact is not None
        exact = report.exact.value
        assert report.c_min <= exact <= report.c_max
        assert report.cprime_min is not None and report.cprime_max is not None
        assert report.cprime_min <= exact <= report.cprime_max
        assert exact <= report.avg_upper

    @pytest.mark.slow
    @given(helper_only_configs(max_n=7))
    def test_sandwich_holds_on_larger_systems(self, config: DssConfig):
        bounds_report(config, compute_exact=True)


class TestStructuralProperties:
    @given(helper_only_configs(numbers=rationals), st.data())
    def test_relabelling_nodes_changes_nothing(self, config: DssConfig, data: st.DataObject):
        sigma = tuple(data.draw(st.permutations(range(1, config.n + 1))))
        before = bounds_report(config, compute_exact=True)
        after = bounds_report(permute_config(config, sigma), compute_exact=True)
        assert after.avg_upper == before.avg_upper
        assert (after.c_min, after.c_max) == (before.c_min, before.c_max)
        assert (after.cprime_min, after.cprime_max) == (before.cprime_min, before.cprime_max)
        assert after.exact is not None and before.exact is not None
        assert after.exact.value == before.exact.value

    @given(helper_only_configs(), st.data())
    def test_more_resources_never_lower_capacity(self, config: DssConfig, data: st.DataObject):
        assert isinstance(config.bandwidth, HelperOnly)
        node = data.draw(st.integers(0, config.n - 1))
        extra = data.draw(st.integers(1, 3))
        alpha, beta = list(config.alpha), list(config.bandwidth.betas)
        if data.draw(st.booleans()):
            alpha[node] += extra
        else:
            beta[node] += extra
        richer = DssConfig.helper_only(config.n, config.k, config.d, alpha, beta)
        assert exact_capacity(richer)[0] >= exact_capacity(config)[0]

    @settings(max_examples=100)
    @given(homogeneous_configs())
    def test_homogeneous_reduction(self, config: DssConfig):
        assert isinstance(config.bandwidth, Homogeneous)
        closed = homogeneous_capacity(
            config.alpha[0], config.bandwidth.gamma, config.k, config.d
        )
        report = bounds_report(config, compute_exact=True)
        assert report.exact is not None
        assert report.exact.value == closed
        assert report.c_min == report.c_max == closed
        assert report.cprime_min == report.cprime_max == closed
        assert report.avg_upper == closed

    @given(equal_total_configs())
    def test_split_of_equal_totals_does_not_matter(self, pair: tuple[DssConfig, Fraction]):
        config, gamma = pair
        flat = DssConfig.homogeneous(config.n, config.k, config.d, list(config.alpha), gamma)
        assert average_upper_bound(config) == average_upper_bound(flat)
        assert average_upper_bound(symmetrize(config)) == average_upper_bound(config)
        assert symmetric_repair_gain(config) == 0
