"""Restriction of an arrangement to an arbitrary hyperplane.

The restriction ``A/H`` depends only on the stratum of ``(alpha, a)`` in
``L(Ã)``, and comparable strata give comparable Whitney numbers and region
counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np
import structlog

from hyperext.arrangement import (
    Arrangement,
    DegenerateHyperplaneError,
    Degeneracy,
    InvariantBundle,
    build_semilattice,
    invariants,
    restrict_hyperplane,
)
from hyperext.exactq import Flat, Hyperplane, Vector
from hyperext.extension import classify_extensions, sample_stratum
from hyperext.isomorphism import poset_isomorphic

log = structlog.get_logger()


def restrict_to(arrangement: Arrangement, hyperplane: Hyperplane) -> Arrangement:
    """``A/H`` in the canonical chart of ``H``, labels inherited.

    Members parallel to ``H`` or equal to it leave no trace; coinciding traces
    are kept as separate labels.

    Raises:
        DegenerateHyperplaneError: If ``H`` has zero normal.
    """
    if hyperplane.is_degenerate:
        raise DegenerateHyperplaneError("cannot restrict to a hyperplane with zero normal")
    if hyperplane.dim != arrangement.dim:
        raise ValueError(f"dimension mismatch: {hyperplane.dim} != {arrangement.dim}")
    flat = Flat.from_hyperplane(hyperplane.canonicalize())
    pairs = []
    for lab, h in zip(arrangement.labels, arrangement.hyperplanes):
        trace = restrict_hyperplane(h, flat)
        if trace is not None:
            pairs.append((lab, trace))
    return Arrangement(
        flat.dim,
        tuple(h for _, h in pairs),
        tuple(lab for lab, _ in pairs),
        arrangement.field,
        multi=True,
    )


def restrict_by(arrangement: Arrangement, point: Sequence[Any]) -> Optional[Arrangement]:
    """``A/H`` for the data ``(alpha, a) = point``; ``None`` if ``alpha`` is zero."""
    fld = arrangement.field
    alpha, a = fld.vector(point[:-1]), fld.coerce(point[-1])
    if not any(alpha):
        return None
    return restrict_to(arrangement, Hyperplane(alpha, a, fld))


@dataclass(frozen=True)
class RestrictionEntry:
    """``A/H`` for the representative ``H`` of one stratum of ``L(Ã)``."""

    index: int
    flat: Flat
    labels: tuple[int, ...]
    representative: Vector
    degeneracy: Degeneracy
    restricted: Optional[Arrangement]
    lattice_size: int
    invariants: InvariantBundle
    constant: bool
    """Whether a second representative gave an isomorphic lattice and equal bundle."""


@dataclass(frozen=True)
class RestrictionReport:
    entries: tuple[RestrictionEntry, ...]
    order: tuple[tuple[int, int], ...]
    seed: int

    @property
    def constancy_failures(self) -> list[int]:
        return [e.index for e in self.entries if not e.constant]


def _entry_bundle(arrangement: Arrangement, point: Vector) -> tuple[Optional[Arrangement], InvariantBundle]:
    restricted = restrict_by(arrangement, point)
    if restricted is None:
        return None, InvariantBundle.zero(arrangement.dim - 1)
    return restricted, invariants(restricted)


def classify_restrictions(arrangement: Arrangement, seed: int = 0) -> RestrictionReport:
    """One entry per stratum, each cross-checked with a seeded second representative."""
    rng = np.random.default_rng(seed)
    classification = classify_extensions(arrangement)
    induced = classification.adjoint.induced
    entries = []
    for stratum in classification.strata:
        restricted, bundle = _entry_bundle(arrangement, stratum.representative)
        constant = True
        size = 0
        if restricted is not None:
            lattice = build_semilattice(restricted)
            size = len(lattice)
            other, other_bundle = _entry_bundle(arrangement, sample_stratum(induced, stratum.flat, rng))
            constant = (
                other is not None
                and other_bundle == bundle
                and poset_isomorphic(lattice, build_semilattice(other))
            )
            if not constant:
                log.warning("restriction not constant on stratum", stratum=stratum.index)
        entries.append(
            RestrictionEntry(
                stratum.index,
                stratum.flat,
                stratum.labels,
                stratum.representative,
                stratum.degeneracy,
                restricted,
                size,
                bundle,
                constant,
            )
        )
    log.info("classified restrictions", strata=len(entries), seed=seed)
    return RestrictionReport(tuple(entries), classification.order, seed)


def verify_restriction_monotonicity(arrangement: Arrangement, seed: int = 0) -> list[str]:
    """``w+``, ``W`` and ``r`` of ``A/H`` grow along comparable strata."""
    report = classify_restrictions(arrangement, seed)
    violations = []
    for hi, lo in report.order:
        small, large = report.entries[lo].invariants, report.entries[hi].invariants
        for name, a, b in (
            *((f"w+[{i}]", x, y) for i, (x, y) in enumerate(zip(small.w_plus, large.w_plus))),
            *((f"W[{i}]", x, y) for i, (x, y) in enumerate(zip(small.W, large.W))),
            ("r", small.regions, large.regions),
        ):
            if a > b:
                violations.append(f"strata {lo} <= {hi}: {name} {a} > {b}")
    for index in report.constancy_failures:
        violations.append(f"stratum {index}: restriction differs between representatives")
    return violations
