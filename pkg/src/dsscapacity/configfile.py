"""JSON config files.

Schema (UTF-8)::

    {"n": 3, "k": 2, "d": 2,
     "alpha": [1, 2, "5/2"],
     "bandwidth": {"type": "helper_only", "beta": [1, 2, 2]}}

``bandwidth.type`` is one of ``homogeneous`` (payload ``gamma``),
``helper_only`` (payload ``beta``) or ``full`` (payload ``entries``: a list of
``{"j": int, "S": [ints], "beta": [values aligned with S]}``). Numbers are JSON
integers or "p/q" strings; node indices are 1-based.
"""

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Tuple, Union, cast

from ._types import TableKey
from .errors import ConfigFormatError
from .model import (
    DssConfig,
    Full,
    HelperOnly,
    Homogeneous,
    RepairBandwidthModel,
    SystemParams,
    expand_to_full,
)
from .rational import as_rational, format_rational

BANDWIDTH_TYPES = ("homogeneous", "helper_only", "full")


def _require(data: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in data:
        raise ConfigFormatError(f"Missing field '{key}' in {where}")
    return data[key]


def _as_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigFormatError(f"'{what}' must be a JSON integer, got {value!r}")
    return value


def _as_list(value: Any, what: str) -> List[Any]:
    if not isinstance(value, list):
        raise ConfigFormatError(f"'{what}' must be an array, got {value!r}")
    return cast(List[Any], value)


def _bandwidth_from_dict(data: Any) -> RepairBandwidthModel:
    if not isinstance(data, dict):
        raise ConfigFormatError("'bandwidth' must be an object")
    section = cast(Dict[str, Any], data)
    kind = _require(section, "type", "bandwidth")
    if kind == "homogeneous":
        return Homogeneous(as_rational(_require(section, "gamma", "bandwidth")))
    if kind == "helper_only":
        betas = _as_list(_require(section, "beta", "bandwidth"), "beta")
        return HelperOnly(tuple(as_rational(b) for b in betas))
    if kind == "full":
        table: Dict[TableKey, Tuple[Fraction, ...]] = {}
        entries = _as_list(_require(section, "entries", "bandwidth"), "entries")
        for position, raw in enumerate(entries):
            if not isinstance(raw, dict):
                raise ConfigFormatError(f"bandwidth entry {position} must be an object")
            entry = cast(Dict[str, Any], raw)
            where = f"bandwidth entry {position}"
            j = _as_int(_require(entry, "j", where), "j")
            helpers = tuple(
                _as_int(i, "S") for i in _as_list(_require(entry, "S", where), "S")
            )
            values = tuple(
                as_rational(v) for v in _as_list(_require(entry, "beta", where), "beta")
            )
            key = (j, tuple(sorted(helpers)))
            if key in table:
                raise ConfigFormatError(f"Duplicate bandwidth entry for j={j}, S={key[1]}")
            table[(j, helpers)] = values
        return Full(table)
    raise ConfigFormatError(
        f"Unknown bandwidth type {kind!r}; expected one of {', '.join(BANDWIDTH_TYPES)}"
    )


def config_from_dict(data: Any) -> DssConfig:
    """Build a validated config from decoded JSON."""
    if not isinstance(data, dict):
        raise ConfigFormatError("Config must be a JSON object")
    doc = cast(Dict[str, Any], data)
    params = SystemParams(
        _as_int(_require(doc, "n", "config"), "n"),
        _as_int(_require(doc, "k", "config"), "k"),
        _as_int(_require(doc, "d", "config"), "d"),
    )
    alpha = tuple(as_rational(a) for a in _as_list(_require(doc, "alpha", "config"), "alpha"))
    return DssConfig(params, alpha, _bandwidth_from_dict(_require(doc, "bandwidth", "config")))


def loads_config(text: str) -> DssConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigFormatError(f"Invalid JSON: {e}") from e
    return config_from_dict(data)


def load_config(path: Union[str, Path]) -> DssConfig:
    """Read and validate a config file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigFormatError(f"Cannot read config file {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise ConfigFormatError(f"Config file {path} is not UTF-8: {e}") from e
    return loads_config(text)


def _number(value: Fraction) -> Union[int, str]:
    return value.numerator if value.denominator == 1 else format_rational(value)


def config_to_dict(config: DssConfig) -> Dict[str, Any]:
    """Inverse of ``config_from_dict``; integers stay JSON integers."""
    bandwidth = config.bandwidth
    section: Dict[str, Any]
    if isinstance(bandwidth, Homogeneous):
        section = {"type": "homogeneous", "gamma": _number(bandwidth.gamma)}
    elif isinstance(bandwidth, HelperOnly):
        section = {"type": "helper_only", "beta": [_number(b) for b in bandwidth.betas]}
    else:
        section = {
            "type": "full",
            "entries": [
                {"j": j, "S": list(helpers), "beta": [_number(v) for v in row]}
                for (j, helpers), row in sorted(bandwidth.table.items())
            ],
        }
    return {
        "n": config.n,
        "k": config.k,
        "d": config.d,
        "alpha": [_number(a) for a in config.alpha],
        "bandwidth": section,
    }


def dumps_config(config: DssConfig) -> str:
    return json.dumps(config_to_dict(config), indent=2, sort_keys=True)


def config_digest(config: DssConfig) -> str:
    """SHA-256 of the canonical expanded-table form.

    The three granularities of the same system hash identically.
    """
    canonical = json.dumps(
        config_to_dict(expand_to_full(config)), sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
