"""Information flow graphs for failure/repair schedules, and min-cut oracles.

Every node instance becomes a pair ``<label>.in -> <label>.out`` carrying its
storage α. The source feeds the initial instances, each repair feeds the new
instance from its helpers' out-vertices, and a data collector (the sink)
drains the k instances it contacts. The smallest source-sink cut over all
schedules is the system capacity; the oracles here compute it by brute force
so the closed form can be checked against it.

Capacities are scaled by the LCM of all denominators so that max-flow runs on
integers.
"""

import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb
from typing import (
    Dict,
    Iterator,
    List,
    Literal,
    Optional,
    Sequence,
    Tuple,
)

import networkx as nx
import numpy as np

from ._types import HelperSet, NodeIndex
from .capacity import helper_betas, minimizing_helper_set
from .errors import (
    CausalityViolation,
    DuplicateIndices,
    IndexOutOfRange,
    InvalidInput,
    SearchTooLarge,
)
from .model import DssConfig, integer_scale_factor

logger = logging.getLogger(__name__)

SOURCE = "source"
SINK = "sink"

CHAINS_MAX_N = 8
EXHAUSTIVE_MAX_N = 5
# Upper limit on (schedule, user set) pairs the exhaustive oracle will cut.
EXHAUSTIVE_MAX_CUTS = 100_000


@dataclass(frozen=True)
class NodeInstance:
    """One incarnation of a node; generation 0 is the original."""

    index: NodeIndex
    generation: int = 0

    @property
    def label(self) -> str:
        return f"{self.index}" + "'" * self.generation


@dataclass(frozen=True)
class RepairEvent:
    """Node ``failed`` is replaced using the live instances of ``helpers``.

    Each node index has exactly one live instance at any time, so helpers are
    named by node index.
    """

    failed: NodeIndex
    helpers: HelperSet

    def __post_init__(self) -> None:
        object.__setattr__(self, "helpers", tuple(sorted(self.helpers)))


@dataclass(frozen=True)
class RepairSchedule:
    """Ordered repairs followed by a data collector contacting ``user_set``."""

    events: Tuple[RepairEvent, ...]
    user_set: Tuple[NodeIndex, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "user_set", tuple(sorted(self.user_set)))

    def check(self, n: int, k: int, d: int) -> None:
        """Raise CausalityViolation unless every step is well formed."""
        for step, event in enumerate(self.events):
            if not 1 <= event.failed <= n:
                raise CausalityViolation(step, f"failed node {event.failed} not in 1..{n}")
            if len(set(event.helpers)) != len(event.helpers):
                raise CausalityViolation(step, f"repeated helper in {list(event.helpers)}")
            if len(event.helpers) != d:
                raise CausalityViolation(
                    step, f"{len(event.helpers)} helpers given, repair needs d={d}"
                )
            if event.failed in event.helpers:
                raise CausalityViolation(step, f"node {event.failed} cannot help its own repair")
            for i in event.helpers:
                if not 1 <= i <= n:
                    raise CausalityViolation(step, f"helper {i} not in 1..{n}")
        users = self.user_set
        step = len(self.events)
        if len(set(users)) != len(users) or len(users) != k:
            raise CausalityViolation(step, f"user set {list(users)} must name k={k} distinct nodes")
        for i in users:
            if not 1 <= i <= n:
                raise CausalityViolation(step, f"user contacts node {i} not in 1..{n}")

    def replay(
        self, n: int
    ) -> Iterator[Tuple[RepairEvent, NodeInstance, Tuple[NodeInstance, ...]]]:
        """Yield (event, new instance, helper instances) in order."""
        live = {i: NodeInstance(i) for i in range(1, n + 1)}
        for event in self.events:
            helpers = tuple(live[i] for i in event.helpers)
            replaced = live[event.failed]
            new = NodeInstance(event.failed, replaced.generation + 1)
            live[event.failed] = new
            yield event, new, helpers

    def final_instances(self, n: int) -> Dict[NodeIndex, NodeInstance]:
        live = {i: NodeInstance(i) for i in range(1, n + 1)}
        for _, new, _ in self.replay(n):
            live[new.index] = new
        return live

    def describe(self, n: int) -> List[str]:
        lines = [
            f"repair {new.label} from {{{', '.join(h.label for h in helpers)}}}"
            for _, new, helpers in self.replay(n)
        ]
        live = self.final_instances(n)
        lines.append(
            f"user contacts {{{', '.join(live[i].label for i in self.user_set)}}}"
        )
        return lines


class FlowGraph:
    """Directed acyclic flow network with integer capacities."""

    def __init__(self, scale: int = 1):
        self.scale = scale
        self.vertices: List[str] = []
        self.edges: Dict[Tuple[str, str], int] = {}
        self.infinite: Optional[int] = None

    def add_vertex(self, name: str) -> "FlowGraph":
        if name not in self.vertices:
            self.vertices.append(name)
        return self

    def add_edge(self, source: str, target: str, capacity: int) -> "FlowGraph":
        """Add edge source → target (parallel edges accumulate)."""
        for name in (source, target):
            if name not in self.vertices:
                raise ValueError(f"Vertex '{name}' not found in graph")
        if capacity < 0:
            raise ValueError(f"Negative capacity {capacity} on {source} -> {target}")
        key = (source, target)
        self.edges[key] = self.edges.get(key, 0) + capacity
        return self

    def add_storage(self, instance: NodeInstance, capacity: int) -> "FlowGraph":
        """Add the in/out vertex pair of ``instance`` and its storage edge."""
        self.add_vertex(f"{instance.label}.in").add_vertex(f"{instance.label}.out")
        return self.add_edge(f"{instance.label}.in", f"{instance.label}.out", capacity)

    def to_networkx(self) -> "nx.DiGraph[str]":
        graph: "nx.DiGraph[str]" = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        for (source, target), capacity in self.edges.items():
            graph.add_edge(source, target, capacity=capacity)
        return graph

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.to_networkx())

    def visualize(
        self,
        format: Literal["edgelist", "mermaid", "png", "svg", "pdf"] = "edgelist",
        filename: Optional[str] = None,
        view: bool = False,
    ) -> str:
        """Render the graph.

        Args:
            format: "edgelist" for "src dst capacity" lines, "mermaid" for a
                Mermaid diagram, "png"/"svg"/"pdf" for an image via graphviz
            filename: output file for image formats
            view: open the generated image

        Returns:
            The text for text formats, the written path for image formats.
            Capacities are shown in scaled integer units.
        """
        if format == "edgelist":
            return self._generate_edgelist()
        if format == "mermaid":
            return self._generate_mermaid()
        return self._generate_image(format, filename, view)

    def _capacity_label(self, capacity: int) -> str:
        return "inf" if capacity == self.infinite else str(capacity)

    def _generate_edgelist(self) -> str:
        return "\n".join(
            f"{source} {target} {capacity}"
            for (source, target), capacity in self.edges.items()
        )

    def _generate_mermaid(self) -> str:
        def node_id(name: str) -> str:
            return name.replace("'", "p").replace(".", "_")

        lines = ["graph LR"]
        for name in self.vertices:
            lines.append(f'    {node_id(name)}["{name}"]')
        for (source, target), capacity in self.edges.items():
            lines.append(
                f"    {node_id(source)} -->|{self._capacity_label(capacity)}| "
                f"{node_id(target)}"
            )
        return "\n".join(lines)

    def _generate_image(
        self,
        format: Literal["png", "svg", "pdf"],
        filename: Optional[str] = None,
        view: bool = False,
    ) -> str:
        """Generate image using graphviz"""
        try:
            import graphviz  # type: ignore
        except ImportError:
            raise ImportError(
                "graphviz is required for image generation. Install with: "
                "pip install graphviz (and ensure graphviz system package is installed)"
            )

        dot = graphviz.Digraph(comment="Information flow graph")  # type: ignore
        dot.attr(rankdir="LR")  # type: ignore
        dot.attr("node", shape="box", style="rounded,filled", fillcolor="lightblue")  # type: ignore
        for name in self.vertices:
            if name in (SOURCE, SINK):
                dot.node(name, name, shape="ellipse", fillcolor="lightgreen")  # type: ignore
            else:
                dot.node(name, name)  # type: ignore
        for (source, target), capacity in self.edges.items():
            style = "dashed" if capacity == self.infinite else "solid"
            dot.edge(source, target, label=self._capacity_label(capacity), style=style)  # type: ignore

        if filename is None:
            filename = f"flowgraph.{format}"
        elif not filename.endswith(f".{format}"):
            filename = f"{filename}.{format}"
        base_filename = filename.rsplit(".", 1)[0]

        try:
            output_path: str = dot.render(base_filename, format=format, cleanup=True)  # type: ignore
        except Exception as e:
            raise RuntimeError(f"Failed to generate {format} image: {str(e)}")

        if view:
            try:
                import webbrowser

                webbrowser.open(f"file://{os.path.abspath(output_path)}")
            except Exception:
                logger.warning("Could not open %s automatically", output_path)
        return output_path


# ---------------------------------------------------------------------------
# Schedules
# ---------------------------------------------------------------------------


def chain_schedule(
    config: DssConfig,
    failures: Sequence[NodeIndex],
    helper_sets: Optional[Sequence[Sequence[NodeIndex]]] = None,
) -> RepairSchedule:
    """The failure chain behind the exact-capacity formula.

    Node f_i is repaired from all previously repaired f_1..f_{i-1} plus
    d−i+1 original nodes outside {f_1..f_i}; the user then contacts the k
    repaired instances.

    Args:
        config: helper-only or homogeneous system
        failures: k distinct node indices
        helper_sets: the fresh helpers of each step (explicit mode); by
            default the cheapest ones, ties broken by index

    Raises:
        DuplicateIndices: repeated entry in ``failures``
        CausalityViolation: explicit helper set of wrong size or overlapping
    """
    betas = helper_betas(config, "chain_schedule")
    n, k, d = config.n, config.k, config.d
    failures = tuple(failures)
    if len(set(failures)) != len(failures):
        raise DuplicateIndices(f"Failure sequence {list(failures)} repeats a node")
    if len(failures) != k:
        raise InvalidInput(f"Failure sequence needs k={k} entries, got {len(failures)}")
    for f in failures:
        if not 1 <= f <= n:
            raise IndexOutOfRange(f, n)
    if helper_sets is not None and len(helper_sets) != k:
        raise InvalidInput(f"Need {k} explicit helper sets, got {len(helper_sets)}")

    events: List[RepairEvent] = []
    for position, f in enumerate(failures, start=1):
        excluded = set(failures[:position])
        size = d + 1 - position
        if helper_sets is None:
            fresh = minimizing_helper_set(betas, excluded, size)
        else:
            fresh = tuple(sorted(helper_sets[position - 1]))
            if len(set(fresh)) != size or excluded & set(fresh):
                raise CausalityViolation(
                    position - 1,
                    f"fresh helpers {list(fresh)} must be {size} nodes outside "
                    f"{sorted(excluded)}",
                )
        events.append(RepairEvent(f, tuple(failures[: position - 1]) + fresh))
    return RepairSchedule(tuple(events), failures)


def random_repair_event(n: int, d: int, rng: np.random.Generator) -> RepairEvent:
    failed = int(rng.integers(1, n + 1))
    others = [i for i in range(1, n + 1) if i != failed]
    helpers = rng.choice(others, size=d, replace=False)
    return RepairEvent(failed, tuple(int(i) for i in helpers))


def random_schedule(
    config: DssConfig, depth: int, rng: np.random.Generator
) -> RepairSchedule:
    """``depth`` uniformly random repairs, then a random k-node user set."""
    n = config.n
    events = tuple(random_repair_event(n, config.d, rng) for _ in range(depth))
    users = rng.choice(np.arange(1, n + 1), size=config.k, replace=False)
    return RepairSchedule(events, tuple(int(i) for i in users))


# ---------------------------------------------------------------------------
# Graphs and cuts
# ---------------------------------------------------------------------------


def build_flow_graph(config: DssConfig, schedule: RepairSchedule) -> FlowGraph:
    """Realize ``schedule`` as a flow graph.

    Repaired instances keep the storage and (helper-only) bandwidth of the node
    index they replace; with a full table the helper download is looked up by
    the helpers' node indices. Edges from the source and into the sink get
    capacity 1 + (sum of all finite capacities), which no minimum cut can use.
    """
    n = config.n
    schedule.check(n, config.k, config.d)
    scale = integer_scale_factor(config)

    def units(value: Fraction) -> int:
        scaled = value * scale
        assert scaled.denominator == 1
        return scaled.numerator

    graph = FlowGraph(scale)
    graph.add_vertex(SOURCE)
    originals = [NodeInstance(i) for i in range(1, n + 1)]
    for instance in originals:
        graph.add_storage(instance, units(config.alpha[instance.index - 1]))

    for event, new, helpers in schedule.replay(n):
        graph.add_storage(new, units(config.alpha[new.index - 1]))
        for helper in helpers:
            graph.add_edge(
                f"{helper.label}.out",
                f"{new.label}.in",
                units(config.beta(helper.index, event.failed, event.helpers)),
            )

    infinite = 1 + sum(graph.edges.values())
    graph.infinite = infinite
    graph.add_vertex(SINK)
    for instance in originals:
        graph.add_edge(SOURCE, f"{instance.label}.in", infinite)
    live = schedule.final_instances(n)
    for i in schedule.user_set:
        graph.add_edge(f"{live[i].label}.out", SINK, infinite)
    return graph


def max_flow_min_cut(graph: FlowGraph) -> Fraction:
    """Minimum source-sink cut, in the config's original (unscaled) units."""
    value = nx.maximum_flow_value(graph.to_networkx(), SOURCE, SINK, capacity="capacity")
    return Fraction(int(value), graph.scale)


def schedule_cut(config: DssConfig, schedule: RepairSchedule) -> Fraction:
    return max_flow_min_cut(build_flow_graph(config, schedule))


OracleMode = Literal["chains", "exhaustive"]


def _chains_oracle(config: DssConfig, limit: int) -> Fraction:
    if config.n > limit:
        raise SearchTooLarge("oracle_capacity(chains)", config.n, limit)
    best: Optional[Fraction] = None
    for failures in permutations(range(1, config.n + 1), config.k):
        cut = schedule_cut(config, chain_schedule(config, failures))
        logger.debug("chain %s: cut %s", failures, cut)
        if best is None or cut < best:
            best = cut
    assert best is not None
    return best


def _all_events(n: int, d: int) -> List[RepairEvent]:
    return [
        RepairEvent(failed, helpers)
        for failed in range(1, n + 1)
        for helpers in combinations([i for i in range(1, n + 1) if i != failed], d)
    ]


def _exhaustive_oracle(config: DssConfig, limit: int) -> Fraction:
    n, k, d = config.n, config.k, config.d
    if n > limit:
        raise SearchTooLarge("oracle_capacity(exhaustive)", n, limit)
    events = _all_events(n, d)
    user_sets = list(combinations(range(1, n + 1), k))
    cuts = sum(len(events) ** depth for depth in range(k + 1)) * comb(n, k)
    if cuts > EXHAUSTIVE_MAX_CUTS:
        raise SearchTooLarge("oracle_capacity(exhaustive)", cuts, EXHAUSTIVE_MAX_CUTS, "cuts")

    best: Optional[Fraction] = None
    for depth in range(k + 1):
        for history in product(events, repeat=depth):
            for users in user_sets:
                cut = schedule_cut(config, RepairSchedule(history, users))
                if best is None or cut < best:
                    best = cut
    assert best is not None
    logger.debug("exhaustive oracle over %d cuts: %s", cuts, best)
    return best


def oracle_capacity(
    config: DssConfig, mode: OracleMode = "chains", limit: Optional[int] = None
) -> Fraction:
    """Capacity by brute-force min-cut search.

    "chains" minimizes over the cheapest failure chain of every k-sequence
    (n ≤ 8 by default); "exhaustive" minimizes over every schedule of at most
    k repairs with every helper choice and every user set (n ≤ 5).

    Raises:
        ModelUnsupported: full-table bandwidth model
        SearchTooLarge: n (or the number of cuts) above the guard
    """
    helper_betas(config, "oracle_capacity")
    if mode == "chains":
        return _chains_oracle(config, CHAINS_MAX_N if limit is None else limit)
    if mode == "exhaustive":
        return _exhaustive_oracle(config, EXHAUSTIVE_MAX_N if limit is None else limit)
    raise InvalidInput(f"Unknown oracle mode {mode!r}")
