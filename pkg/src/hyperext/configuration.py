"""Define the configurable parameters for hyperext."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields
from typing import Any, Mapping, Optional

from dotenv import load_dotenv

load_dotenv()


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


@dataclass(kw_only=True)
class Configuration:
    """The configuration shared by the library commands and the CLI."""

    count_budget: int = field(
        default=_env_int("HYPEREXT_COUNT_BUDGET", 10_000_000),
        metadata={
            "description": "Largest number of finite-field points a single enumeration may visit. "
            "Counts beyond it fail with exit code 3."
        },
    )

    trials: int = field(
        default=_env_int("HYPEREXT_TRIALS", 5),
        metadata={"description": "Representatives drawn per stratum by the classification verifier."},
    )

    seed: int = field(
        default=_env_int("HYPEREXT_SEED", 0),
        metadata={"description": "Seed of every randomised verification step."},
    )

    prime_floor: int = field(
        default=_env_int("HYPEREXT_PRIME_FLOOR", 2),
        metadata={"description": "Smallest prime the good-prime search considers."},
    )

    nbc_orders: int = field(
        default=_env_int("HYPEREXT_NBC_ORDERS", 3),
        metadata={"description": "Random label orders tried by `verify nbc` besides the file order."},
    )

    log_level: str = field(
        default=os.getenv("HYPEREXT_LOG_LEVEL", "INFO"),
        metadata={"description": "Lowest structlog level written to standard error."},
    )

    @classmethod
    def from_mapping(cls, mapping: Optional[Mapping[str, Any]] = None) -> Configuration:
        """Create a Configuration from a mapping, ignoring unknown keys."""
        mapping = mapping or {}
        _fields = {f.name for f in fields(cls) if f.init}
        return cls(**{k: v for k, v in mapping.items() if k in _fields})

    @classmethod
    def load_from_project_json(cls, start: Optional[str] = None) -> Configuration:
        """Load the ``defaults`` object of the nearest ``hyperext.json``.

        The search walks from ``start`` (the package directory by default) up
        to the filesystem root; without a file the environment defaults apply.
        """
        current_dir = os.path.abspath(start or os.path.dirname(__file__))
        while True:
            config_path = os.path.join(current_dir, "hyperext.json")
            if os.path.exists(config_path):
                break
            parent = os.path.dirname(current_dir)
            if parent == current_dir:
                return cls()
            current_dir = parent

        with open(config_path) as f:
            config_data = json.load(f)
        return cls.from_mapping(config_data.get("defaults", {}))
