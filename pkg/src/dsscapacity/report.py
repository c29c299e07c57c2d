"""Command reports and their JSON / table renderings.

Results hold native values (``Fraction``, tuples, nested dicts). Rendering
converts them: JSON writes every rational as its exact "p/q" string with keys
sorted, tables write "p/q (≈x.xxx)".
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .capacity import BoundsReport, CapacityWitness
from .lift import LiftCertificate, LiftReport
from .model import DssConfig, integer_scale_factor, node_avg_repair_bw, system_averages
from .rational import format_rational, format_rational_approx
from .rlncsim import AdversarialRecord, TrialFailure, TrialReport

Payload = Dict[str, Any]


@dataclass
class Report:
    """Output of one CLI command."""

    command: str
    config_digest: str
    results: Payload
    warnings: List[str] = field(default_factory=lambda: [])

    def to_dict(self) -> Payload:
        return {
            "command": self.command,
            "config_digest": self.config_digest,
            "results": _jsonable(self.results),
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def to_table(self) -> str:
        rows = [("command", self.command), ("config_digest", self.config_digest[:16])]
        rows.extend(_flatten(self.results))
        width = max(len(label) for label, _ in rows)
        lines = [f"{label.ljust(width)}  {value}" for label, value in rows]
        lines.extend(f"warning: {message}" for message in self.warnings)
        return "\n".join(lines)

    def render(self, format: str) -> str:
        return self.to_json() if format == "json" else self.to_table()


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}  # type: ignore
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]  # type: ignore
    return value


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, Fraction):
        return format_rational_approx(value)
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.4f}"
    if isinstance(value, list):
        items: Sequence[Any] = value  # type: ignore
        return "[" + ", ".join(_cell(v) for v in items) + "]"
    if isinstance(value, tuple):
        members: Sequence[Any] = value  # type: ignore
        inner = ", ".join(_cell(v) for v in members)
        return f"({inner},)" if len(members) == 1 else f"({inner})"
    return str(value)


def _flatten(payload: Mapping[str, Any], prefix: str = "") -> List[Tuple[str, str]]:
    rows: List[Tuple[str, str]] = []
    for key, value in payload.items():
        label = f"{prefix}{key}"
        if isinstance(value, Mapping):
            rows.extend(_flatten(value, f"{label}."))  # type: ignore
        elif isinstance(value, list) and value and all(isinstance(v, str) for v in value):  # type: ignore
            rows.append((label, str(value[0])))  # type: ignore
            rows.extend(("", str(v)) for v in value[1:])  # type: ignore
        else:
            rows.append((label, _cell(value)))
    return rows


# ---------------------------------------------------------------------------
# Payload converters
# ---------------------------------------------------------------------------


def config_summary(config: DssConfig) -> Payload:
    alpha_bar, gamma_bar = system_averages(config)
    return {
        "n": config.n,
        "k": config.k,
        "d": config.d,
        "model": config.model_kind,
        "alpha": list(config.alpha),
        "node_gamma": [node_avg_repair_bw(config, j) for j in config.params.nodes],
        "alpha_bar": alpha_bar,
        "gamma_bar": gamma_bar,
        "integer_scale": integer_scale_factor(config),
    }


def witness_payload(witness: Optional[CapacityWitness]) -> Optional[Payload]:
    if witness is None:
        return None
    return {
        "failures": list(witness.failures),
        "helper_sets": [list(s) for s in witness.helper_sets],
        "terms": list(witness.terms),
        "value": witness.value,
    }


def bounds_payload(report: BoundsReport) -> Payload:
    helper_only = None
    if report.cprime_min is not None:
        helper_only = {"cprime_min": report.cprime_min, "cprime_max": report.cprime_max}
    return {
        "avg_upper": report.avg_upper,
        "general": {"c_min": report.c_min, "c_max": report.c_max},
        "helper_only": helper_only,
        "special_case": report.special_case,
        "exact": report.exact.value if report.exact else None,
        "witness": witness_payload(report.exact),
    }


def lift_payload(
    report: LiftReport, mode: str, certificate: Optional[LiftCertificate] = None
) -> Payload:
    payload: Payload = {
        "mode": mode,
        "alpha_b": report.alpha_b,
        "beta_b": report.beta_b,
        "capacity_b": report.capacity_b,
        "implied_bound": report.implied_bound,
    }
    if certificate is not None:
        payload["certificate"] = {
            "exact": certificate.exact,
            "copies": certificate.copies,
            "scaled_exact": certificate.scaled_exact,
            "lift_margin": certificate.lift_margin,
            "bound_margin": certificate.bound_margin,
        }
    return payload


def _failure_payload(failure: Optional[TrialFailure]) -> Optional[Payload]:
    if failure is None:
        return None
    return {
        "trial": failure.trial,
        "user_set": list(failure.user_set),
        "rank": failure.rank,
        "repairs": list(failure.repairs),
    }


def trial_payload(report: TrialReport) -> Payload:
    return {
        "seed": report.seed,
        "p": report.p,
        "file_dim": report.file_dim,
        "rounds": report.rounds,
        "trials": report.trials,
        "successes": report.successes,
        "success_fraction": Fraction(report.successes, report.trials)
        if report.trials
        else Fraction(1),
        "first_failure": _failure_payload(report.first_failure),
    }


def adversarial_payload(record: AdversarialRecord, seed: int, p: int) -> Payload:
    return {
        "seed": seed,
        "p": p,
        "file_dim": record.file_dim,
        "capacity": record.capacity,
        "cut_value": record.cut_value,
        "user_set": list(record.user_set),
        "repairs": list(record.repairs),
        "rank": record.rank,
        "holds": record.holds,
    }
