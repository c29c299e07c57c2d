"""Random linear network coding over GF(p) for functional-repair experiments.

A file of M symbols is the row space of GF(p)^M. Node j stores α_j coded rows;
a repair downloads β random combinations from each helper and keeps α random
combinations of what arrived. The file is recoverable from a set of nodes iff
their stacked rows have rank M.

All randomness flows from numpy ``default_rng`` seeded by ``(seed, step)``,
so identical seeds replay identical states.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Type

import galois
import numpy as np
import numpy.typing as npt

from ._types import NodeIndex
from .capacity import exact_capacity
from .errors import (
    BadHelpers,
    BadUserSet,
    DimensionMismatch,
    InvalidField,
    InvalidInput,
    NonIntegerUnits,
    OracleMismatch,
)
from .flowgraph import RepairSchedule, chain_schedule, random_schedule, schedule_cut
from .model import DssConfig, is_integral

logger = logging.getLogger(__name__)

DEFAULT_PRIME = 65537

Matrix = npt.NDArray[np.int64]


@lru_cache(maxsize=None)
def _field_class(p: int) -> Type[galois.FieldArray]:
    return galois.GF(p)


@dataclass(frozen=True)
class FieldSpec:
    """Prime field GF(p)."""

    p: int = DEFAULT_PRIME

    def __post_init__(self) -> None:
        if isinstance(self.p, bool) or not isinstance(self.p, int) or self.p < 2:
            raise InvalidField(f"Field size must be an integer ≥ 2, got {self.p!r}")
        if not galois.is_prime(self.p):
            raise InvalidField(f"Field size {self.p} is not prime")

    @property
    def gf(self) -> Type[galois.FieldArray]:
        return _field_class(self.p)

    def random(self, rng: np.random.Generator, shape: Tuple[int, int]) -> Matrix:
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def combine(self, coefficients: Matrix, rows: Matrix) -> Matrix:
        """coefficients @ rows over GF(p)."""
        out_shape = (coefficients.shape[0], rows.shape[1])
        if 0 in coefficients.shape or 0 in rows.shape:
            return np.zeros(out_shape, dtype=np.int64)
        product = self.gf(coefficients) @ self.gf(rows)
        return product.view(np.ndarray).astype(np.int64)

    def rank(self, matrix: Matrix) -> int:
        if matrix.size == 0:
            return 0
        reduced = self.gf(matrix).row_reduce()
        return int(np.count_nonzero(np.any(reduced, axis=1)))


@dataclass(frozen=True)
class RepairSnapshot:
    """What one repair did"""

    step: int
    failed: str
    helpers: Tuple[str, ...]
    rows_received: int
    received_rank: int
    stored_rank: int


@dataclass(frozen=True)
class RlncState:
    """Coded contents of every live node instance.

    ``nodes[j]`` is the α_j × M matrix of node j's current instance, entries in
    [0, p). States are never mutated; ``repair_event`` returns a new one.
    """

    config: DssConfig
    field: FieldSpec
    file_dim: int
    nodes: Mapping[NodeIndex, Matrix]
    rng_seed: int
    generations: Mapping[NodeIndex, int] = field(default_factory=lambda: {})
    history: Tuple[RepairSnapshot, ...] = ()

    def label(self, j: NodeIndex) -> str:
        return f"{j}" + "'" * self.generations.get(j, 0)

    def describe_history(self) -> List[str]:
        lines = [f"=== Repairs over GF({self.field.p}), M={self.file_dim} ==="]
        for snap in self.history:
            lines.append(
                f"step {snap.step}: {snap.failed} <- {{{', '.join(snap.helpers)}}} "
                f"received {snap.rows_received} rows of rank {snap.received_rank}, "
                f"stores rank {snap.stored_rank}"
            )
        return lines


def _units(config: DssConfig, what: str) -> None:
    if not is_integral(config):
        raise NonIntegerUnits(
            f"{what} needs integer α and β; rescale with integer_scaled() first"
        )


def init_storage(
    config: DssConfig,
    file_dim: int,
    field: FieldSpec = FieldSpec(),
    seed: int = 0,
    rows: Optional[Mapping[NodeIndex, Sequence[Sequence[int]]]] = None,
) -> RlncState:
    """Store a file of ``file_dim`` symbols on every node of ``config``.

    Args:
        config: integral system (see ``integer_scaled``)
        file_dim: M, the file size in symbols
        field: coding field
        seed: master seed of every random draw
        rows: explicit generator rows per node instead of random ones; entries
            are reduced mod p

    Raises:
        NonIntegerUnits: some α or β is fractional
        DimensionMismatch: explicit rows of the wrong shape
    """
    _units(config, "init_storage")
    if file_dim < 0:
        raise InvalidInput(f"File size must be non-negative, got {file_dim}")
    if seed < 0:
        raise InvalidInput(f"Seed must be non-negative, got {seed}")

    rng = np.random.default_rng([seed, 0])
    nodes: Dict[NodeIndex, Matrix] = {}
    for j in config.params.nodes:
        height = int(config.alpha[j - 1])
        if rows is None:
            nodes[j] = field.random(rng, (height, file_dim))
            continue
        given = rows.get(j, [])
        if file_dim == 0:
            matrix = np.zeros((len(given), 0), dtype=np.int64)
        else:
            matrix = np.asarray(given, dtype=np.int64).reshape(-1, file_dim)
        if matrix.shape[0] != height:
            raise DimensionMismatch(f"rows of node {j}", height, matrix.shape[0])
        nodes[j] = np.mod(matrix, field.p)
    return RlncState(config, field, file_dim, nodes, seed, {j: 0 for j in nodes})


def repair_event(
    state: RlncState, failed: NodeIndex, helpers: Sequence[NodeIndex]
) -> RlncState:
    """Replace node ``failed`` using the live instances of ``helpers``.

    Helper i sends β_{i,failed,S} fresh random combinations of its rows; the
    newcomer stores α_failed random combinations of everything received.

    Raises:
        BadHelpers: wrong count, repeated or unknown helper, or failed ∈ helpers
    """
    config = state.config
    n, d = config.n, config.d
    chosen = tuple(sorted(helpers))
    if not 1 <= failed <= n:
        raise BadHelpers(f"Failed node {failed} not in 1..{n}")
    if len(chosen) != d or len(set(chosen)) != d:
        raise BadHelpers(f"Repair needs {d} distinct helpers, got {list(helpers)}")
    if failed in chosen:
        raise BadHelpers(f"Node {failed} cannot help repair itself")
    if any(not 1 <= i <= n for i in chosen):
        raise BadHelpers(f"Helpers {list(helpers)} must lie in 1..{n}")

    step = len(state.history)
    rng = np.random.default_rng([state.rng_seed, step + 1])
    p, M = state.field, state.file_dim

    received: List[Matrix] = []
    for i in chosen:
        beta = int(config.beta(i, failed, chosen))
        stored = state.nodes[i]
        received.append(p.combine(p.random(rng, (beta, stored.shape[0])), stored))
    incoming = np.vstack(received) if received else np.zeros((0, M), dtype=np.int64)

    height = int(config.alpha[failed - 1])
    new_rows = p.combine(p.random(rng, (height, incoming.shape[0])), incoming)

    nodes = dict(state.nodes)
    nodes[failed] = new_rows
    generations = dict(state.generations)
    generations[failed] = generations.get(failed, 0) + 1
    snapshot = RepairSnapshot(
        step=step,
        failed=f"{failed}" + "'" * generations[failed],
        helpers=tuple(state.label(i) for i in chosen),
        rows_received=incoming.shape[0],
        received_rank=p.rank(incoming),
        stored_rank=p.rank(new_rows),
    )
    logger.debug("repair step %d: %s", step, snapshot)
    return RlncState(
        config,
        state.field,
        M,
        nodes,
        state.rng_seed,
        generations,
        state.history + (snapshot,),
    )


def apply_schedule(state: RlncState, schedule: RepairSchedule) -> RlncState:
    """Run every repair of ``schedule`` in order."""
    for event in schedule.events:
        state = repair_event(state, event.failed, event.helpers)
    return state


def reconstruct_rank(state: RlncState, user_set: Sequence[NodeIndex]) -> int:
    """Rank of the stacked rows of the contacted live instances.

    Raises:
        BadUserSet: not k distinct nodes of 1..n
    """
    config = state.config
    users = tuple(sorted(user_set))
    if len(users) != config.k or len(set(users)) != config.k:
        raise BadUserSet(f"User must contact k={config.k} distinct nodes, got {list(user_set)}")
    if any(not 1 <= j <= config.n for j in users):
        raise BadUserSet(f"User set {list(user_set)} must lie in 1..{config.n}")
    stacked = np.vstack([state.nodes[j] for j in users])
    return state.field.rank(stacked)


# ---------------------------------------------------------------------------
# Experiments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TrialFailure:
    trial: int
    user_set: Tuple[NodeIndex, ...]
    rank: int
    repairs: Tuple[str, ...]


@dataclass(frozen=True)
class TrialReport:
    """Outcome of ``run_random_trials``; a trial succeeds when every k-subset decodes."""

    seed: int
    p: int
    file_dim: int
    rounds: int
    trials: int
    successes: int
    first_failure: Optional[TrialFailure] = None

    @property
    def success_fraction(self) -> float:
        return self.successes / self.trials if self.trials else 1.0


def _trial_seed(seed: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed, trial]).generate_state(1, np.uint64)[0])


def run_random_trials(
    config: DssConfig,
    file_dim: int,
    rounds: int,
    trials: int,
    seed: int = 0,
    field: FieldSpec = FieldSpec(),
) -> TrialReport:
    """Random repairs followed by a decode check from every k-subset.

    Trial t derives its own seed from ``(seed, t)``; trials are independent
    and run sequentially.
    """
    _units(config, "run_random_trials")
    if rounds < 0 or trials < 0 or seed < 0:
        raise InvalidInput(
            f"rounds, trials and seed must be non-negative, got {rounds}, {trials}, {seed}"
        )

    successes = 0
    first_failure: Optional[TrialFailure] = None
    user_sets = list(combinations(config.params.nodes, config.k))
    for trial in range(trials):
        trial_seed = _trial_seed(seed, trial)
        schedule = random_schedule(config, rounds, np.random.default_rng([trial_seed, 0]))
        state = apply_schedule(init_storage(config, file_dim, field, trial_seed), schedule)

        failed_user: Optional[Tuple[Tuple[NodeIndex, ...], int]] = None
        for users in user_sets:
            rank = reconstruct_rank(state, users)
            if rank < file_dim:
                failed_user = (users, rank)
                break
        if failed_user is None:
            successes += 1
        elif first_failure is None:
            first_failure = TrialFailure(
                trial, failed_user[0], failed_user[1], tuple(state.describe_history()[1:])
            )
            logger.info("trial %d: user %s decodes rank %d < %d", trial, *failed_user, file_dim)

    report = TrialReport(seed, field.p, file_dim, rounds, trials, successes, first_failure)
    logger.info(
        "%d/%d trials decoded M=%d over GF(%d)", successes, trials, file_dim, field.p
    )
    return report


@dataclass(frozen=True)
class AdversarialRecord:
    """Decode attempt through the minimizing repair chain.

    ``holds`` is True when the user's rank did not exceed the capacity.
    """

    file_dim: int
    capacity: int
    cut_value: int
    user_set: Tuple[NodeIndex, ...]
    repairs: Tuple[str, ...]
    rank: int
    holds: bool


def adversarial_witness_trial(
    config: DssConfig,
    file_dim: Optional[int] = None,
    field: FieldSpec = FieldSpec(),
    seed: int = 0,
) -> AdversarialRecord:
    """Replay the capacity witness chain and try to decode ``capacity + 1`` symbols.

    The user contacts the k repaired nodes of the minimizing failure chain,
    whose min-cut equals the capacity, so the rank can never exceed it.

    Raises:
        ModelUnsupported: full-table bandwidth model
        OracleMismatch: the chain's min-cut differs from the capacity
    """
    _units(config, "adversarial_witness_trial")
    capacity, witness = exact_capacity(config)
    schedule = chain_schedule(config, witness.failures, witness.helper_sets)
    cut = schedule_cut(config, schedule)
    if cut != capacity:
        raise OracleMismatch("witness chain min-cut", capacity, cut)

    M = int(capacity) + 1 if file_dim is None else file_dim
    state = apply_schedule(init_storage(config, M, field, seed), schedule)
    rank = reconstruct_rank(state, schedule.user_set)
    record = AdversarialRecord(
        file_dim=M,
        capacity=int(capacity),
        cut_value=int(cut),
        user_set=schedule.user_set,
        repairs=tuple(schedule.describe(config.n)),
        rank=rank,
        holds=rank <= capacity,
    )
    logger.info("adversarial chain %s: rank %d, capacity %s", witness.failures, rank, capacity)
    return record
