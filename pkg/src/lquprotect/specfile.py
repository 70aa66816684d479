"""Scenario files: JSON describing a state, two channels, filters and output."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .channels import KrausChannel, gad_qubit, gad_qutrit_v
from .errors import ConfigParse, LquProtectError
from .protocol import ProtocolConfig, n_reversal_params, n_weak_params
from .states import NAMED_STATES, DensityMatrix

TOP_KEYS = {"state", "channel_a", "channel_b", "filters", "sweep", "output"}
DEFAULT_AXIS = [0.0, 2.0, 101]
DEFAULT_BUDGET = 20000


@dataclass
class ResolvedSpec:
    config: ProtocolConfig
    optimize: dict | None
    sweep: dict
    output: dict
    echo: dict = field(default_factory=dict)


def _fail(key: str, msg: str):
    raise ConfigParse(f"{key}: {msg}")


def _check_keys(obj: Any, allowed: set[str], where: str, required: set[str] = frozenset()):
    if not isinstance(obj, dict):
        _fail(where, f"expected an object, got {type(obj).__name__}")
    unknown = set(obj) - allowed
    if unknown:
        _fail(where, f"unknown key(s) {sorted(unknown)}; allowed {sorted(allowed)}")
    missing = set(required) - set(obj)
    if missing:
        _fail(where, f"missing key(s) {sorted(missing)}")


def _resolve_path(raw: str, base: Path, key: str) -> Path:
    path = Path(raw)
    if not path.is_absolute():
        path = base / path
    if not path.is_file():
        _fail(key, f"file not found: {path}")
    return path


def _state(raw: Any, base: Path) -> tuple[DensityMatrix, Any]:
    if isinstance(raw, str):
        if raw in NAMED_STATES:
            return NAMED_STATES[raw](), raw
        path = _resolve_path(raw, base, "state")
        try:
            return DensityMatrix.from_json(path.read_text()), str(path)
        except (ValueError, KeyError) as exc:
            _fail("state", f"{path}: {exc}")
    if isinstance(raw, dict):
        _check_keys(raw, {"dim_a", "dim_b", "re", "im"}, "state", {"dim_a", "dim_b", "re"})
        try:
            rho = DensityMatrix.from_dict(raw)
        except (ValueError, LquProtectError) as exc:
            _fail("state", str(exc))
        return rho, rho.to_dict()
    _fail("state", "must be a named state, a file path, or an inline state object")


def _channel(raw: Any, base: Path, key: str) -> tuple[KrausChannel, dict]:
    if not isinstance(raw, dict) or "family" not in raw:
        _fail(key, "must be an object with a 'family' key")
    fam = raw["family"]
    try:
        if fam == "gad2":
            _check_keys(raw, {"family", "r", "p"}, key, {"r", "p"})
            return gad_qubit(raw["r"], raw["p"]), dict(raw)
        if fam == "gad3":
            _check_keys(raw, {"family", "r", "p1", "p2"}, key, {"r", "p1", "p2"})
            return gad_qutrit_v(raw["r"], raw["p1"], raw["p2"]), dict(raw)
        if fam == "kraus":
            _check_keys(raw, {"family", "path"}, key, {"path"})
            path = _resolve_path(raw["path"], base, f"{key}.path")
            return KrausChannel.from_json(path.read_text()), {"family": "kraus", "path": str(path)}
    except LquProtectError as exc:
        if isinstance(exc, ConfigParse):
            raise
        _fail(key, str(exc))
    except (TypeError, ValueError, KeyError) as exc:
        _fail(key, str(exc))
    _fail(f"{key}.family", f"unknown family {fam!r}; expected gad2, gad3 or kraus")


def _split(values: Any, sizes: tuple[int, int], key: str) -> tuple[tuple, tuple]:
    if not isinstance(values, list):
        _fail(key, "must be a list")
    if len(values) == 2 and all(isinstance(v, list) for v in values):
        a, b = values
    else:
        if len(values) != sum(sizes):
            _fail(key, f"expected {sum(sizes)} numbers, got {len(values)}")
        a, b = values[:sizes[0]], values[sizes[0]:]
    if len(a) != sizes[0] or len(b) != sizes[1]:
        _fail(key, f"expected {sizes[0]} values for A and {sizes[1]} for B")
    try:
        return tuple(float(x) for x in a), tuple(float(x) for x in b)
    except (TypeError, ValueError):
        _fail(key, "values must be numbers")


def _axis(raw: Any, key: str) -> list:
    if raw is None:
        return list(DEFAULT_AXIS)
    if not (isinstance(raw, list) and len(raw) == 3):
        _fail(key, "axis must be [lo, hi, num]")
    lo, hi, num = raw
    if not isinstance(num, int) or num < 1:
        _fail(key, "num must be a positive integer")
    return [float(lo), float(hi), num]


def load_spec(path: str | Path) -> ResolvedSpec:
    path = Path(path)
    if not path.is_file():
        raise ConfigParse(f"spec file not found: {path}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigParse(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return resolve_spec(data, path.parent)


def resolve_spec(data: Any, base: Path | str = ".") -> ResolvedSpec:
    base = Path(base)
    _check_keys(data, TOP_KEYS, "spec", {"state", "channel_a", "channel_b"})
    rho, state_echo = _state(data["state"], base)
    ch_a, a_echo = _channel(data["channel_a"], base, "channel_a")
    ch_b, b_echo = _channel(data["channel_b"], base, "channel_b")
    da, db = rho.dim_a, rho.dim_b
    if ch_a.dim != da or ch_b.dim != db:
        _fail("channel_a/channel_b", f"channel dims ({ch_a.dim}, {ch_b.dim}) do not match "
                                     f"state dims ({da}, {db})")

    filters = data.get("filters", {})
    optimize = None
    m = ((1.0,) * n_weak_params(da), (1.0,) * n_weak_params(db))
    n = ((1.0,) * n_reversal_params(da), (1.0,) * n_reversal_params(db))
    if filters == "optimize":
        filters = {"optimize": {}}
    _check_keys(filters, {"m", "n", "optimize"}, "filters")
    if "m" in filters:
        m = _split(filters["m"], (n_weak_params(da), n_weak_params(db)), "filters.m")
    if "n" in filters:
        n = _split(filters["n"], (n_reversal_params(da), n_reversal_params(db)), "filters.n")
    if "optimize" in filters:
        opt = filters["optimize"]
        _check_keys(opt, {"budget", "seed"}, "filters.optimize")
        optimize = {"budget": int(opt.get("budget", DEFAULT_BUDGET)), "seed": int(opt.get("seed", 0))}

    sweep = data.get("sweep", {})
    _check_keys(sweep, {"n1", "n2"}, "sweep")
    sweep = {"n1": _axis(sweep.get("n1"), "sweep.n1"), "n2": _axis(sweep.get("n2"), "sweep.n2")}

    output = data.get("output", {})
    _check_keys(output, {"path", "format"}, "output")
    output = {"path": output.get("path"), "format": output.get("format")}
    if output["format"] not in (None, "csv", "json"):
        _fail("output.format", f"expected csv or json, got {output['format']!r}")

    try:
        cfg = ProtocolConfig(rho, ch_a, ch_b, m[0], m[1], n[0], n[1])
    except LquProtectError as exc:
        _fail("filters", str(exc))
    echo = {
        "state": state_echo,
        "channel_a": a_echo,
        "channel_b": b_echo,
        "filters": {"m": [list(cfg.m_a), list(cfg.m_b)], "n": [list(cfg.n_a), list(cfg.n_b)]},
        "sweep": sweep,
        "output": output,
    }
    if optimize is not None:
        echo["filters"]["optimize"] = optimize
    return ResolvedSpec(cfg, optimize, sweep, output, echo)
