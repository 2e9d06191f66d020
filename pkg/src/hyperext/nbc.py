"""Affine rank, affine circuits and no-broken-circuit sets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

import structlog

from hyperext.arrangement import Arrangement, Degeneracy, build_semilattice, restriction
from hyperext.exactq import Flat, MeetKind

log = structlog.get_logger()

LabelSet = tuple[int, ...]


class UnknownLabelError(KeyError):
    """A label that does not belong to the arrangement."""


def _check_labels(arrangement: Arrangement, labels: Iterable[int]) -> list[int]:
    labels = list(labels)
    unknown = [lab for lab in labels if lab not in arrangement.by_label]
    if unknown:
        raise UnknownLabelError(f"labels {unknown} are not in the arrangement")
    return labels


def _resolve_order(arrangement: Arrangement, order: Optional[Sequence[int]]) -> tuple[int, ...]:
    if order is None:
        return arrangement.labels
    order = tuple(lab for lab in order if lab in arrangement.by_label)
    if sorted(order) != sorted(arrangement.labels):
        raise ValueError(f"order {order} is not a permutation of the labels {arrangement.labels}")
    return order


def intersection(arrangement: Arrangement, labels: Iterable[int]) -> Optional[Flat]:
    """``∩ H_j`` over ``labels``; ``None`` when empty."""
    flat = Flat.ambient_space(arrangement.dim, arrangement.field)
    for lab in labels:
        meet = flat.meet(arrangement.hyperplane(lab))
        if meet.kind is MeetKind.EMPTY:
            return None
        flat = meet.flat
    return flat


def is_independent(arrangement: Arrangement, labels: Iterable[int]) -> bool:
    """Affine independence: nonempty intersection of codimension ``#labels``."""
    labels = list(labels)
    flat = intersection(arrangement, labels)
    return flat is not None and flat.codim == len(labels)


def rank_of_labels(arrangement: Arrangement, labels: Iterable[int]) -> int:
    """Size of a largest affinely independent subset of ``labels``.

    Raises:
        UnknownLabelError: If a label is not in the arrangement.
    """
    labels = _check_labels(arrangement, labels)
    flat = intersection(arrangement, labels)
    if flat is not None:
        return flat.codim

    hyperplanes = [arrangement.hyperplane(lab) for lab in labels]
    bound = min(arrangement.dim, len(labels))
    best = 0

    def grow(start: int, current: Flat, size: int) -> bool:
        nonlocal best
        best = max(best, size)
        if best == bound:
            return True
        if size + len(hyperplanes) - start <= best:
            return False
        for k in range(start, len(hyperplanes)):
            meet = current.meet(hyperplanes[k])
            if meet.kind is MeetKind.PROPER and grow(k + 1, meet.flat, size + 1):
                return True
        return False

    grow(0, Flat.ambient_space(arrangement.dim, arrangement.field), 0)
    return best


@dataclass(frozen=True)
class CircuitCatalog:
    """Affine circuits and the broken circuits they induce under ``order``."""

    order: tuple[int, ...]
    circuits: tuple[LabelSet, ...]
    broken_circuits: tuple[LabelSet, ...]


def affine_circuits(arrangement: Arrangement, order: Optional[Sequence[int]] = None) -> CircuitCatalog:
    """Enumerate the inclusion-minimal affinely dependent label sets.

    A circuit ``I`` has ``∩I`` nonempty and every ``I - {i}`` independent of
    rank ``#I - 1``. Sizes run up to ``dim + 1``; supersets of circuits already
    found are skipped.
    """
    order = _resolve_order(arrangement, order)
    position = {lab: k for k, lab in enumerate(order)}
    labels = sorted(arrangement.labels)
    circuits: list[frozenset[int]] = []
    for size in range(2, min(len(labels), arrangement.dim + 1) + 1):
        for candidate in combinations(labels, size):
            members = frozenset(candidate)
            if any(c <= members for c in circuits):
                continue
            flat = intersection(arrangement, candidate)
            if flat is None or flat.codim != size - 1:
                continue
            if all(is_independent(arrangement, members - {lab}) for lab in candidate):
                circuits.append(members)
    ordered = tuple(tuple(sorted(c)) for c in circuits)
    broken = tuple(tuple(sorted(c - {min(c, key=position.__getitem__)})) for c in circuits)
    return CircuitCatalog(order, ordered, broken)


def nbc_sets(arrangement: Arrangement, k: int, order: Optional[Sequence[int]] = None) -> list[LabelSet]:
    """Affinely independent ``k``-subsets that contain no broken circuit."""
    if not 0 <= k <= arrangement.dim:
        raise ValueError(f"k={k} outside 0..{arrangement.dim}")
    broken = [frozenset(b) for b in affine_circuits(arrangement, order).broken_circuits]
    labels = sorted(arrangement.labels)
    found: list[LabelSet] = []

    def grow(start: int, current: Flat, chosen: list[int]) -> None:
        if len(chosen) == k:
            found.append(tuple(chosen))
            return
        for pos in range(start, len(labels)):
            lab = labels[pos]
            meet = current.meet(arrangement.hyperplane(lab))
            if meet.kind is not MeetKind.PROPER:
                continue
            members = frozenset(chosen) | {lab}
            if any(b <= members for b in broken):
                continue
            grow(pos + 1, meet.flat, chosen + [lab])

    grow(0, Flat.ambient_space(arrangement.dim, arrangement.field), [])
    return found


def nbc_counts(arrangement: Arrangement, order: Optional[Sequence[int]] = None) -> tuple[int, ...]:
    """``(#NBC_0, ..., #NBC_d)``, which equals ``(w_0^+, ..., w_d^+)``."""
    if arrangement.degeneracy is Degeneracy.AMBIENT_MEMBER:
        return tuple(0 for _ in range(arrangement.dim + 1))
    return tuple(len(nbc_sets(arrangement, k, order)) for k in range(arrangement.dim + 1))


def cij_via_nbc(arrangement: Arrangement, order: Optional[Sequence[int]] = None) -> tuple[tuple[int, ...], ...]:
    """``c_ij = sum over i-dimensional flats X of #NBC_j(A/X)``.

    Restrictions inherit labels and the order of ``arrangement``.
    """
    d = arrangement.dim
    grid = [[0] * (i + 1) for i in range(d + 1)]
    if arrangement.degeneracy is Degeneracy.AMBIENT_MEMBER:
        return tuple(tuple(row) for row in grid)
    order = _resolve_order(arrangement, order)
    for flat in build_semilattice(arrangement).flats:
        restricted = restriction(arrangement, flat)
        sub_order = [lab for lab in order if lab in restricted.by_label]
        for j, count in enumerate(nbc_counts(restricted, sub_order)):
            grid[flat.dim][j] += count
    log.debug("c_ij via nbc", dim=d, hyperplanes=len(arrangement))
    return tuple(tuple(row) for row in grid)
