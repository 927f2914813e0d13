"""Configuration loading helpers."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple


DEFAULT_CONFIG: Dict[str, str] = {
    "group_budget": "1000000",
    "degree_cap": "",
    "pbw_degree": "4",
    "bidegree_bound": "",
    "cell_budget": "20000",
    "coinvariant_max_rank": "2",
    "dunkl_samples": "100",
    "pbw_samples": "100",
    "poisson_samples": "100",
    "idempotent_max_order": "400",
    "seed": "1729",
    "format": "json",
    "verbose": "false",
}

ENV_PREFIX = "WEYLCHECK_"
FORMATS = ("json", "text")


def _parse_config_file(path: Path) -> Dict[str, str]:
    data: Dict[str, str] = {}
    if not path.exists():
        return data
    for raw_line in path.read_text().splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        key, value = line.split("=", 1)
        data[key.strip()] = value.strip().strip("'\"")
    return data


def config_paths() -> tuple:
    config_dir = Path(os.environ.get("XDG_CONFIG_HOME", Path.home() / ".config")) / "weylcheck"
    return (config_dir / "config", Path.home() / ".weylcheckrc")


def load_config(environ: Optional[Mapping[str, str]] = None) -> Dict[str, str]:
    """Defaults, then the config files, then WEYLCHECK_<KEY> environment overrides."""
    environ = os.environ if environ is None else environ
    config = dict(DEFAULT_CONFIG)
    for path in config_paths():
        config.update(_parse_config_file(path))
    for key in DEFAULT_CONFIG:
        value = environ.get(ENV_PREFIX + key.upper())
        if value is not None:
            config[key] = value.strip()
    config["format"] = config.get("format", "json").lower()
    if config["format"] not in FORMATS:
        config["format"] = DEFAULT_CONFIG["format"]
    return config


def get_bool(cfg: dict, key: str, default: bool = False) -> bool:
    return str(cfg.get(key, str(default))).lower() in ("true", "1", "yes", "on")


def get_int(cfg: dict, key: str, default: int = 0) -> int:
    try:
        return int(cfg.get(key, default))
    except (TypeError, ValueError):
        return default


def get_optional_int(cfg: dict, key: str) -> Optional[int]:
    """Integer value, or None when the key is empty or malformed."""
    value = str(cfg.get(key, "")).strip()
    if not value:
        return None
    try:
        return int(value)
    except ValueError:
        return None


@dataclass
class RunConfig:
    """One command invocation: what to run, on which type, under which budgets."""

    command: str
    type_label: str
    rank: int
    what: Optional[str] = None
    group_budget: int = 1000000
    degree_cap: Optional[int] = None
    pbw_degree: int = 4
    bidegree_bound: Optional[Tuple[int, int]] = None
    cell_budget: int = 20000
    coinvariant_max_rank: int = 2
    dunkl_samples: int = 100
    pbw_samples: int = 100
    poisson_samples: int = 100
    idempotent_max_order: int = 400
    seed: int = 1729
    m: int = 1
    c: Optional[str] = None
    trunc: Optional[int] = None
    format: str = "json"
    out: Optional[str] = None
    allow_large: bool = False
    verbose: bool = False

    def __post_init__(self):
        positive = ("group_budget", "pbw_degree", "cell_budget", "dunkl_samples", "pbw_samples", "poisson_samples", "m")
        for name in positive:
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")

    @classmethod
    def from_config(cls, cfg: Dict[str, str], **overrides) -> "RunConfig":
        bound = get_optional_int(cfg, "bidegree_bound")
        values = {
            "group_budget": get_int(cfg, "group_budget", 1000000),
            "degree_cap": get_optional_int(cfg, "degree_cap"),
            "pbw_degree": get_int(cfg, "pbw_degree", 4),
            "bidegree_bound": (bound, bound) if bound is not None else None,
            "cell_budget": get_int(cfg, "cell_budget", 20000),
            "coinvariant_max_rank": get_int(cfg, "coinvariant_max_rank", 2),
            "dunkl_samples": get_int(cfg, "dunkl_samples", 100),
            "pbw_samples": get_int(cfg, "pbw_samples", 100),
            "poisson_samples": get_int(cfg, "poisson_samples", 100),
            "idempotent_max_order": get_int(cfg, "idempotent_max_order", 400),
            "seed": get_int(cfg, "seed", 1729),
            "format": cfg.get("format", "json"),
            "verbose": get_bool(cfg, "verbose"),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_dict(self) -> Dict[str, object]:
        """The inputs recorded in a report."""
        return {
            "command": self.command,
            "what": self.what,
            "type": self.type_label,
            "rank": self.rank,
            "budget": self.group_budget,
            "max_bidegree": list(self.bidegree_bound) if self.bidegree_bound else None,
            "degree_cap": self.degree_cap,
            "m": self.m,
            "c": self.c,
            "trunc": self.trunc,
            "format": self.format,
        }
