"""Define the run and report structures shared by the commands."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import structlog

log = structlog.get_logger()


class Command(str, Enum):
    INVARIANTS = "invariants"
    LATTICE = "lattice"
    NBC = "nbc"
    ADJOINT = "adjoint"
    CLASSIFY = "classify"
    CLASSIFY_RESTRICTIONS = "classify-restrictions"
    RESTRICT = "restrict"
    FF_COUNT = "ff-count"
    VERIFY = "verify"
    RENDER = "render"


class Check(str, Enum):
    CLASSIFICATION = "classification"
    MONOTONICITY = "monotonicity"
    CONVOLUTION = "convolution"
    NBC = "nbc"
    RESTRICTIONS = "restrictions"


@dataclass
class RunConfig:
    """Everything one CLI invocation needs, after flags and defaults are merged."""

    command: Command
    """The single verb this process executes."""

    input: Optional[Path] = None
    """Arrangement file to read; every verb but ``render`` of nothing needs one."""

    output: Optional[Path] = None
    """Where to write the artifact; standard output when unset."""

    trials: int = 5
    """Independent representatives drawn per stratum by the verifiers."""

    seed: int = 0
    """Seed of every randomised step, echoed into the reports."""

    prime: Optional[int] = None
    """Prime for ``ff-count`` and the spot check of ``verify convolution``."""

    order: Optional[tuple[int, ...]] = None
    """Total order of the labels for the broken circuit machinery."""

    check: Optional[Check] = None
    """Which property ``verify`` runs."""

    window: Optional[tuple[Any, Any, Any, Any]] = None
    """``(x0, y0, x1, y1)`` viewing box for ``render``; chosen from the vertices when unset."""

    normal: Optional[tuple[Any, ...]] = None
    offset: Any = 0
    fmt: str = "json"
    count_budget: int = 10_000_000
    prime_floor: int = 2
    nbc_orders: int = 3
    log_level: str = "INFO"

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if self.command is Command.VERIFY and self.check is None:
            raise ValueError("verify needs one of: " + ", ".join(c.value for c in Check))


@dataclass
class VerificationReport:
    """Outcome of one verification procedure."""

    name: str
    seed: Optional[int] = None
    checked: int = 0
    """Number of individual comparisons performed."""

    failures: list[str] = field(default_factory=list)
    """Human-readable description of every failed comparison."""

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, passed: bool, message: str) -> None:
        self.checked += 1
        if not passed:
            self.failures.append(message)
            log.warning("verification failure", check=self.name, detail=message)

    def absorb(self, violations: list[str]) -> None:
        """Count one comparison that failed once per entry of ``violations``."""
        self.checked += 1
        for message in violations:
            self.failures.append(message)
            log.warning("verification failure", check=self.name, detail=message)

    def merge(self, other: VerificationReport) -> VerificationReport:
        self.checked += other.checked
        self.failures.extend(f"{other.name}: {f}" for f in other.failures)
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.name,
            "seed": self.seed,
            "checked": self.checked,
            "ok": self.ok,
            "failures": list(self.failures),
        }
