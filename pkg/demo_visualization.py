#!/usr/bin/env python3
"""Render the information flow graph of the minimizing failure chain."""

from dsscapacity import (
    DssConfig,
    build_flow_graph,
    chain_schedule,
    exact_capacity,
    max_flow_min_cut,
)


def main():
    config = DssConfig.helper_only(3, 2, 2, [5, 6, 7], [3, 4, 5])
    value, witness = exact_capacity(config)
    schedule = chain_schedule(config, witness.failures, witness.helper_sets)
    graph = build_flow_graph(config, schedule)

    print("=== Schedule ===")
    for line in schedule.describe(config.n):
        print(f"  {line}")
    print(f"\nMin cut {max_flow_min_cut(graph)} (capacity {value})")

    print("\n=== Mermaid Visualization ===")
    print(graph.visualize("mermaid"))

    print("\n=== Generating PNG ===")
    try:
        path = graph.visualize("png", "witness_chain")
        print(f"Wrote {path}")
    except ImportError as e:
        print(f"Skipping image: {e}")
    except RuntimeError as e:
        print(f"Could not render image: {e}")


if __name__ == "__main__":
    main()
