#!/usr/bin/env python3
"""Walk through the two three-node systems from the README."""

from dsscapacity import (
    DssConfig,
    bounds_report,
    exact_capacity,
    lift_bound_check,
    oracle_capacity,
    permutation_lift,
    secrecy_bound_profile,
    system_averages,
)


def show(name: str, config: DssConfig) -> None:
    print(f"=== {name}: {config!r} ===\n")

    alpha_bar, gamma_bar = system_averages(config)
    print(f"Average storage {alpha_bar}, average repair bandwidth {gamma_bar}")

    report = bounds_report(config, compute_exact=True)
    print(f"Average-resource bound: {report.avg_upper}")
    print(f"General bounds:         [{report.c_min}, {report.c_max}]")
    print(f"Helper-only bounds:     [{report.cprime_min}, {report.cprime_max}]")

    value, witness = exact_capacity(config)
    print(f"Exact capacity:         {value}")
    for f, helpers, term in zip(witness.failures, witness.helper_sets, witness.terms):
        print(f"  node {f} fails, fresh helpers {list(helpers)}, contributes {term}")
    print(f"Min-cut oracle agrees:  {oracle_capacity(config) == value}")

    lift = permutation_lift(config)
    certificate = lift_bound_check(config)
    print(
        f"\nLift: alpha_b={lift.alpha_b}, beta_b={lift.beta_b}, C_b={lift.capacity_b}; "
        f"{certificate.copies}*{certificate.exact} = {certificate.scaled_exact} "
        f"<= {certificate.capacity_b}"
    )

    profile = ", ".join(str(b) for b in secrecy_bound_profile(config))
    print(f"Secrecy bounds for ell = 0..{config.k}: {profile}\n")


def main():
    show("Example 1", DssConfig.helper_only(3, 2, 2, [1, 2, 2], [1, 2, 2]))
    show("Example 2", DssConfig.helper_only(3, 2, 2, [5, 6, 7], [3, 4, 5]))


if __name__ == "__main__":
    main()
