"""One-element extensions ``A + H`` classified by the strata of ``L(Ã)``.

The extension ``A + H_{alpha,a}`` depends, up to lattice isomorphism and all
invariants, only on the flat of ``L(Ã)`` whose open stratum contains
``(alpha, a)``; comparable strata give componentwise comparable invariants.
This module builds the classification and verifies both statements.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Any, Callable, Optional, Sequence

import numpy as np
import structlog

from hyperext.adjoint import AdjointData, induced_adjoint
from hyperext.arrangement import (
    Arrangement,
    Degeneracy,
    InvariantBundle,
    build_semilattice,
    essentialize,
    invariants,
    locate,
)
from hyperext.exactq import Flat, Hyperplane, Vector, rref
from hyperext.isomorphism import poset_isomorphic, product_with_chain
from hyperext.nbc import rank_of_labels
from hyperext.state import VerificationReport

log = structlog.get_logger()

SAMPLE_ATTEMPTS = 64


def extend(arrangement: Arrangement, alpha: Sequence[Any], a: Any = 0, *, keep_duplicate: bool = False) -> Arrangement:
    """``A + H_{alpha,a}`` with set-union semantics.

    A zero ``alpha`` yields ``A`` flagged ``AMBIENT_MEMBER`` (``a = 0``) or
    ``EMPTY_HYPERPLANE`` (``a != 0``). An ``AMBIENT_MEMBER`` flag is never
    lowered: the whole space stays a member. A duplicate of a member yields ``A``
    unless ``keep_duplicate`` asks for the multi-arrangement with a new label.

    Raises:
        ValueError: If ``alpha`` does not have ``dim`` entries.
    """
    if len(alpha) != arrangement.dim:
        raise ValueError(f"dimension mismatch: {len(alpha)} != {arrangement.dim}")
    h = Hyperplane(arrangement.field.vector(alpha), arrangement.field.coerce(a), arrangement.field).canonicalize()
    if h.is_degenerate:
        if h.offset == 0 or arrangement.degeneracy is Degeneracy.AMBIENT_MEMBER:
            flag = Degeneracy.AMBIENT_MEMBER
        else:
            flag = Degeneracy.EMPTY_HYPERPLANE
        return dataclasses.replace(arrangement, degeneracy=flag)
    if h in arrangement.hyperplanes and not keep_duplicate:
        return arrangement
    label = max(arrangement.labels, default=0) + 1
    return Arrangement(
        arrangement.dim,
        (*arrangement.hyperplanes, h),
        (*arrangement.labels, label),
        arrangement.field,
        arrangement.degeneracy,
        arrangement.multi or h in arrangement.hyperplanes,
    )


def extend_by(arrangement: Arrangement, point: Sequence[Any]) -> Arrangement:
    """Extend by the hyperplane whose data ``(alpha, a)`` is ``point``."""
    return extend(arrangement, point[:-1], point[-1])


def stratum_of(arrangement: Arrangement, alpha: Sequence[Any], a: Any = 0) -> Flat:
    """Inclusion-minimal flat of ``L(Ã)`` containing ``(alpha, a)``."""
    adjoint = induced_adjoint(arrangement)
    return locate(adjoint.induced, (*alpha, a))


def _forbidden(arrangement: Arrangement, flat: Flat) -> list[Hyperplane]:
    return [h for h in arrangement.hyperplanes if not flat.lies_in(h)]


def sample_stratum(
    arrangement: Arrangement, flat: Flat, rng: Optional[np.random.Generator] = None
) -> Vector:
    """A point of ``M(A/X)``: on ``flat`` and on no hyperplane not containing it.

    Without ``rng`` the chart coordinates follow the moment curve
    ``(N, N^2, ..., N^k)`` for the smallest positive ``N`` that works; each
    forbidden hyperplane vanishes for at most ``k`` values of ``N``. With
    ``rng`` the coordinates are seeded integer draws from a growing range.

    Raises:
        ValueError: If a prime field is too small to avoid every hyperplane.
    """
    forbidden = _forbidden(arrangement, flat)
    k = flat.dim
    if k == 0:
        return flat.point
    fld = arrangement.field

    def works(coords: Sequence[int]) -> Optional[Vector]:
        x = flat.at(fld.vector(coords))
        return None if any(h.contains(x) for h in forbidden) else x

    if rng is None:
        limit = (fld.modulus or 0) + len(forbidden) * k + 1
        for n in range(1, limit + 1):
            x = works([n**e for e in range(1, k + 1)])
            if x is not None:
                return x
    else:
        bound = max(4, len(forbidden) * k + 1)
        for _ in range(SAMPLE_ATTEMPTS):
            x = works([int(v) for v in rng.integers(-bound, bound + 1, size=k)])
            if x is not None:
                return x
            bound *= 2
    raise ValueError(f"no point of {fld}^{arrangement.dim} avoids {len(forbidden)} hyperplanes on {flat}")


def representative_point(
    arrangement: Arrangement, flat: Flat, rng: Optional[np.random.Generator] = None
) -> Vector:
    """Integer ``(alpha, a)`` in the stratum of ``flat`` in ``L(Ã)``.

    ``Ã`` is central, so clearing denominators keeps the point in its stratum.
    The origin stratum returns the zero vector.
    """
    induced = induced_adjoint(arrangement).induced
    point = sample_stratum(induced, flat, rng)
    if arrangement.field.is_prime:
        return point
    scale = math.lcm(*(v.denominator for v in point)) if point else 1
    return tuple(v * scale for v in point)


def degeneracy_of(point: Sequence[Any]) -> Degeneracy:
    if any(point[:-1]):
        return Degeneracy.NONE
    return Degeneracy.AMBIENT_MEMBER if point[-1] == 0 else Degeneracy.EMPTY_HYPERPLANE


@dataclass(frozen=True)
class Stratum:
    """One element ``X`` of ``L(Ã)`` with a representative extension."""

    index: int
    flat: Flat
    labels: tuple[int, ...]
    """Labels of ``Ã`` containing the flat."""
    representative: Vector
    invariants: InvariantBundle
    degeneracy: Degeneracy
    class_id: int = -1

    @property
    def dim(self) -> int:
        return self.flat.dim

    @property
    def flagged_terms(self) -> tuple[tuple[int, int, int], ...]:
        """``(s-degree, t-degree, coefficient)`` of Whitney terms with ``s^2`` or higher."""
        grid = self.invariants.whitney.grid
        return tuple((i, j, c) for i, row in enumerate(grid) if i >= 2 for j, c in enumerate(row) if c)


@dataclass(frozen=True)
class ClassificationReport:
    """Every stratum of ``L(Ã)`` with its bundle and the order between strata.

    ``order`` holds index pairs ``(i, j)`` with ``strata[j].flat`` strictly
    inside ``strata[i].flat``.
    """

    strata: tuple[Stratum, ...]
    order: tuple[tuple[int, int], ...]
    monotonicity_violations: tuple[str, ...]
    adjoint: AdjointData

    @property
    def class_count(self) -> int:
        return len({s.class_id for s in self.strata})

    def classes(self) -> dict[int, list[Stratum]]:
        out: dict[int, list[Stratum]] = {}
        for stratum in self.strata:
            out.setdefault(stratum.class_id, []).append(stratum)
        return out


def _bundle_for(arrangement: Arrangement, point: Vector) -> InvariantBundle:
    return invariants(extend_by(arrangement, point))


def _monotone_pairs(flats: Sequence[Flat], bundles: Sequence[InvariantBundle], what: str) -> tuple[list[tuple[int, int]], list[str]]:
    order, violations = [], []
    for i, j in combinations(range(len(flats)), 2):
        for lo, hi in ((i, j), (j, i)):
            if flats[lo] != flats[hi] and flats[lo].is_subset_of(flats[hi]):
                order.append((hi, lo))
                for problem in bundles[lo].componentwise_violations(bundles[hi]):
                    violations.append(f"{what} {lo} <= {hi}: {problem}")
    return order, violations


def classify_extensions(arrangement: Arrangement) -> ClassificationReport:
    """One :class:`Stratum` per element of ``L(Ã)``, sorted by dimension.

    Equal invariant bundles share a ``class_id`` numbered by first appearance.

    Raises:
        NonEssentialError: If ``A`` is not essential.
    """
    adjoint = induced_adjoint(arrangement)
    lattice = build_semilattice(adjoint.induced)
    positions = sorted(range(len(lattice)), key=lambda i: (lattice.flats[i].dim, lattice.labels(i)))

    strata: list[Stratum] = []
    class_ids: dict[InvariantBundle, int] = {}
    for index, pos in enumerate(positions):
        flat = lattice.flats[pos]
        point = representative_point(arrangement, flat)
        bundle = _bundle_for(arrangement, point)
        class_id = class_ids.setdefault(bundle, len(class_ids))
        strata.append(Stratum(index, flat, lattice.labels(pos), point, bundle, degeneracy_of(point), class_id))

    order, violations = _monotone_pairs([s.flat for s in strata], [s.invariants for s in strata], "stratum")
    log.info(
        "classified extensions",
        strata=len(strata),
        classes=len(class_ids),
        violations=len(violations),
    )
    return ClassificationReport(tuple(strata), tuple(sorted(order)), tuple(violations), adjoint)


def _family_strata(family: Arrangement) -> list[Flat]:
    return list(build_semilattice(family).flats)


def _check_family(
    report: VerificationReport,
    arrangement: Arrangement,
    family: Arrangement,
    make: Callable[[Vector], Arrangement],
    trials: int,
    rng: np.random.Generator,
    what: str,
) -> None:
    """Same-stratum representatives of ``family`` give isomorphic extensions."""
    for flat in _family_strata(family):
        base_point = sample_stratum(family, flat)
        base = make(base_point)
        if base.degeneracy is not Degeneracy.NONE:
            continue
        base_bundle = invariants(base)
        base_lattice = build_semilattice(base)
        for _ in range(trials):
            point = sample_stratum(family, flat, rng)
            other = make(point)
            bundle = invariants(other)
            same = bundle == base_bundle and poset_isomorphic(build_semilattice(other), base_lattice)
            report.record(same, f"{what} stratum {flat}: {base_point} and {point} differ")


def _non_essential_checks(
    report: VerificationReport, arrangement: Arrangement, trials: int, rng: np.random.Generator
) -> None:
    """For ``alpha`` outside the span ``O`` of the normals, ``L(A+H) = L(A) x C_2``."""
    fld = arrangement.field
    d = arrangement.dim
    normals = [h.normal for h in arrangement.hyperplanes]
    rank = arrangement.rank
    product = product_with_chain(build_semilattice(arrangement))
    done = 0
    for _ in range(SAMPLE_ATTEMPTS * trials):
        if done == trials:
            break
        alpha = fld.vector(int(v) for v in rng.integers(-5, 6, size=d))
        if rref([*normals, alpha], None, fld, cols=d).rank == rank:
            continue
        a = int(rng.integers(-5, 6))
        lattice = build_semilattice(extend(arrangement, alpha, a))
        report.record(poset_isomorphic(lattice, product), f"L(A + H[{alpha}, {a}]) is not L(A) x C2")
        done += 1


def verify_classification(arrangement: Arrangement, trials: int = 5, seed: int = 0) -> VerificationReport:
    """Draw ``trials`` representatives per stratum and compare their extensions.

    Runs over the strata of ``Ã`` (all extensions), of ``σA`` for central
    ``A`` (central extensions, then offset ones with ``a != 0``) and of ``Ā``
    (central extensions). A non-essential ``A`` is checked against
    ``L(A) x C_2`` and then through its essentialisation.
    """
    rng = np.random.default_rng(seed)
    report = VerificationReport("classification", seed=seed)
    if not arrangement.is_essential:
        _non_essential_checks(report, arrangement, trials, rng)
        arrangement, _ = essentialize(arrangement)

    adjoint = induced_adjoint(arrangement)
    _check_family(report, arrangement, adjoint.induced, lambda p: extend_by(arrangement, p), trials, rng, "Ã")
    if arrangement.is_central:
        _check_family(report, arrangement, adjoint.sigma, lambda p: extend(arrangement, p, 0), trials, rng, "σA")
        _check_family(
            report,
            arrangement,
            adjoint.sigma,
            lambda p: extend(arrangement, p, int(rng.choice([-1, 1]) * rng.integers(1, 6))),
            trials,
            rng,
            "σA, a != 0",
        )
    _check_family(report, arrangement, adjoint.bar, lambda p: extend(arrangement, p, 0), trials, rng, "Ā")
    log.info("classification verified", checked=report.checked, failures=len(report.failures), seed=seed)
    return report


def _family_violations(family: Arrangement, make: Callable[[Vector], Arrangement], what: str) -> list[str]:
    flats = _family_strata(family)
    bundles = [invariants(make(sample_stratum(family, flat))) for flat in flats]
    return _monotone_pairs(flats, bundles, what)[1]


def offset_monotonicity_violations(arrangement: Arrangement, offset: Any = 1) -> list[str]:
    """Compare central and affine extensions along ``L(σA)`` of a central ``A``.

    For ``X ⊆ X'`` in ``L(σA)`` (equality included) and any representative
    ``alpha`` of ``X`` and ``alpha'`` of ``X'``, ``INV(A + H_alpha)`` is at most
    ``INV(A + H_{alpha', offset})``. ``offset`` must be nonzero.

    Raises:
        ValueError: If ``A`` is not central or ``offset`` is zero.
    """
    if not arrangement.is_central:
        raise ValueError("offset comparisons need a central arrangement")
    if arrangement.field.coerce(offset) == 0:
        raise ValueError("the offset must be nonzero")
    sigma = induced_adjoint(arrangement).sigma
    flats = _family_strata(sigma)
    points = [sample_stratum(sigma, flat) for flat in flats]
    central = [invariants(extend(arrangement, p, 0)) for p in points]
    shifted = [invariants(extend(arrangement, p, offset)) for p in points]
    violations = []
    for i, j in product(range(len(flats)), repeat=2):
        if flats[i].is_subset_of(flats[j]):
            for problem in central[i].componentwise_violations(shifted[j]):
                violations.append(f"σA {i} <= σA {j} with a != 0: {problem}")
    return violations


def verify_monotonicity(arrangement: Arrangement) -> list[str]:
    """Componentwise ``INV`` comparisons over every comparable stratum pair.

    Covers ``L(Ã)``, the central-extension family over ``L(Ā)`` and, for a
    central ``A``, the families ``H_alpha`` and ``H_{alpha,1}`` over ``L(σA)``
    together with the comparisons of :func:`offset_monotonicity_violations`.
    """
    violations = list(classify_extensions(arrangement).monotonicity_violations)
    adjoint = induced_adjoint(arrangement)
    if arrangement.is_central:
        violations += _family_violations(adjoint.sigma, lambda p: extend(arrangement, p, 0), "σA")
        violations += _family_violations(adjoint.sigma, lambda p: extend(arrangement, p, 1), "σA, a != 0")
        violations += offset_monotonicity_violations(arrangement)
    violations += _family_violations(adjoint.bar, lambda p: extend(arrangement, p, 0), "Ā")
    if violations:
        log.warning("monotonicity violated", count=len(violations))
    return violations


def rank_monotonicity_violations(arrangement: Arrangement) -> list[str]:
    """``rank(J + new) <= rank'(J + new)`` for comparable non-degenerate strata.

    The new hyperplane keeps its own label even when it duplicates a member.
    """
    report = classify_extensions(arrangement)
    labels = arrangement.labels
    subsets = [j for size in range(len(labels) + 1) for j in combinations(labels, size)]
    ranks: dict[int, list[int]] = {}
    for stratum in report.strata:
        if stratum.degeneracy is not Degeneracy.NONE:
            continue
        rep = stratum.representative
        extended = extend(arrangement, rep[:-1], rep[-1], keep_duplicate=True)
        new = extended.labels[-1]
        ranks[stratum.index] = [rank_of_labels(extended, (*j, new)) for j in subsets]

    violations = []
    for hi, lo in report.order:
        if lo not in ranks or hi not in ranks:
            continue
        for j, r_lo, r_hi in zip(subsets, ranks[lo], ranks[hi]):
            if r_lo > r_hi:
                violations.append(f"strata {lo} <= {hi}: rank of {j} + new is {r_lo} > {r_hi}")
    return violations
