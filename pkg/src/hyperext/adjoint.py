"""Linearisation, vertices and lines, and the induced adjoint arrangement."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import structlog

from hyperext.arrangement import (
    Arrangement,
    NonEssentialError,
    SemiLattice,
    build_semilattice,
)
from hyperext.exactq import Hyperplane, Vector, canonical_direction

log = structlog.get_logger()


@dataclass(frozen=True)
class Provenance:
    """Where a hyperplane of the induced adjoint comes from."""

    kind: Literal["u", "v"]
    """``"v"`` for a vertex of ``A``, ``"u"`` for a line of ``L(A°)``."""
    source: Vector


def linear_classes(arrangement: Arrangement) -> dict[Hyperplane, tuple[int, ...]]:
    """Group the labels of ``arrangement`` by linear part ``H_alpha``."""
    classes: dict[Hyperplane, list[int]] = {}
    for lab, h in zip(arrangement.labels, arrangement.hyperplanes):
        linear = Hyperplane(h.normal, arrangement.field.zero(), arrangement.field).canonicalize()
        classes.setdefault(linear, []).append(lab)
    return {h: tuple(labs) for h, labs in classes.items()}


def linearize(arrangement: Arrangement) -> Arrangement:
    """``A° = {H_alpha}`` with parallel members merged.

    Each linear hyperplane keeps the first label of its class.
    """
    classes = linear_classes(arrangement)
    return Arrangement(
        arrangement.dim,
        tuple(classes),
        tuple(labs[0] for labs in classes.values()),
        arrangement.field,
    )


def _require_essential(arrangement: Arrangement) -> None:
    if not arrangement.is_essential:
        raise NonEssentialError(
            f"normals span a {arrangement.rank}-dimensional space in {arrangement.field}^{arrangement.dim}"
        )


def vertices_and_lines(arrangement: Arrangement) -> tuple[list[Vector], list[Vector]]:
    """The 0-flats of ``L(A)`` and the 1-flats of ``L(A°)``.

    Vertices come sorted ascending, line directions (canonical primitive
    vectors) sorted descending.

    Raises:
        NonEssentialError: If the normals do not span the space.
    """
    _require_essential(arrangement)
    vertices = sorted(f.point for f in build_semilattice(arrangement).flats if f.dim == 0)
    lines = sorted(
        (
            canonical_direction(f.directions[0], arrangement.field)
            for f in build_semilattice(linearize(arrangement)).flats
            if f.dim == 1
        ),
        reverse=True,
    )
    return vertices, lines


@dataclass(frozen=True)
class AdjointData:
    """The induced adjoint ``Ã`` in ``F^(d+1)`` and its companions.

    ``induced`` lists the line hyperplanes ``(u, 0)`` first, then the vertex
    hyperplanes ``(v, -1)``; ``part1`` and ``part0`` hold their labels.
    """

    linearization: Arrangement
    vertices: tuple[Vector, ...]
    lines: tuple[Vector, ...]
    sigma: Arrangement
    induced: Arrangement
    part0: tuple[int, ...]
    part1: tuple[int, ...]
    bar: Arrangement
    provenance: tuple[Provenance, ...]

    @property
    def induced0(self) -> Arrangement:
        return self.induced.sub(self.part0)

    @property
    def induced1(self) -> Arrangement:
        return self.induced.sub(self.part1)


def induced_adjoint(arrangement: Arrangement) -> AdjointData:
    """Build ``Ã``, ``σA°`` and ``Ā`` for an essential arrangement."""
    fld = arrangement.field
    d = arrangement.dim
    vertices, lines = vertices_and_lines(arrangement)
    zero, minus_one = fld.zero(), fld.coerce(-1)

    induced = [Hyperplane((*u, zero), zero, fld).canonicalize() for u in lines]
    induced += [Hyperplane((*v, minus_one), zero, fld).canonicalize() for v in vertices]
    provenance = [Provenance("u", u) for u in lines] + [Provenance("v", v) for v in vertices]
    n1 = len(lines)
    labels = tuple(range(1, len(induced) + 1))

    sigma = [Hyperplane(u, zero, fld).canonicalize() for u in lines]
    bar: dict[Hyperplane, None] = {}
    for v in vertices:
        if any(v):
            bar.setdefault(Hyperplane(v, zero, fld).canonicalize(), None)
    for h in sigma:
        bar.setdefault(h, None)

    data = AdjointData(
        linearization=linearize(arrangement),
        vertices=tuple(vertices),
        lines=tuple(lines),
        sigma=Arrangement(d, tuple(sigma), (), fld),
        induced=Arrangement(d + 1, tuple(induced), labels, fld),
        part0=labels[n1:],
        part1=labels[:n1],
        bar=Arrangement(d, tuple(bar), (), fld),
        provenance=tuple(provenance),
    )
    log.info("induced adjoint", vertices=len(vertices), lines=n1, field=str(fld))
    return data


def adjoint_lattice(arrangement: Arrangement) -> SemiLattice:
    """``L(Ã)``; a genuine lattice since ``Ã`` is central."""
    return build_semilattice(induced_adjoint(arrangement).induced)
