"""Arrangements, their intersection semi-lattices and classical invariants."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional, Sequence, Union

import structlog
from sympy import ZZ, Poly, symbols

from hyperext.exactq import (
    QQ,
    Flat,
    Hyperplane,
    MeetKind,
    ScalarField,
    Vector,
    dot,
    rank_of_normals,
    rref,
)

log = structlog.get_logger()

s, t = symbols("s t")


class DuplicateHyperplaneError(ValueError):
    """Two hyperplanes of a base arrangement define the same point set."""


class DegenerateHyperplaneError(ValueError):
    """A hyperplane with zero normal was offered to an arrangement."""


class NotAFlatError(ValueError):
    """The given subspace is not a member of the intersection semi-lattice."""


class MobiusOrderError(ValueError):
    """``mobius(L, X, Y)`` was asked for a pair with ``X`` not below ``Y``."""


class NonEssentialError(ValueError):
    """The operation needs an arrangement whose normals span the space."""


class Degeneracy(Enum):
    NONE = "none"
    AMBIENT_MEMBER = "ambient-member"
    EMPTY_HYPERPLANE = "empty-hyperplane"


@dataclass(frozen=True)
class Arrangement:
    """A finite labelled set of affine hyperplanes in ``F^dim``.

    The order of ``hyperplanes`` is the default total order used by the broken
    circuit machinery. ``multi`` arrangements arise as restrictions and may
    hold several labels for the same point set.
    """

    dim: int
    hyperplanes: tuple[Hyperplane, ...] = ()
    labels: tuple[int, ...] = ()
    field: ScalarField = QQ
    degeneracy: Degeneracy = Degeneracy.NONE
    multi: bool = False

    def __post_init__(self) -> None:
        if not self.labels and self.hyperplanes:
            object.__setattr__(self, "labels", tuple(range(1, len(self.hyperplanes) + 1)))
        if len(self.labels) != len(self.hyperplanes):
            raise ValueError(f"{len(self.labels)} labels for {len(self.hyperplanes)} hyperplanes")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"labels are not distinct: {self.labels}")
        seen: dict[Hyperplane, int] = {}
        for label, h in zip(self.labels, self.hyperplanes):
            if h.dim != self.dim:
                raise ValueError(f"dimension mismatch: hyperplane {label} lives in F^{h.dim}, not F^{self.dim}")
            if h.field != self.field:
                raise ValueError(f"hyperplane {label} is over {h.field}, arrangement over {self.field}")
            if h.is_degenerate:
                raise DegenerateHyperplaneError(f"hyperplane {label} has zero normal")
            if not self.multi and h in seen:
                raise DuplicateHyperplaneError(f"hyperplanes {seen[h]} and {label} coincide")
            seen.setdefault(h, label)

    @classmethod
    def of(
        cls,
        dim: int,
        hyperplanes: Iterable[Union[Hyperplane, tuple[Sequence, object]]] = (),
        labels: Optional[Sequence[int]] = None,
        fld: ScalarField = QQ,
        *,
        multi: bool = False,
    ) -> Arrangement:
        """Canonicalise ``hyperplanes`` (objects or ``(normal, offset)`` pairs)."""
        canon = []
        for h in hyperplanes:
            if not isinstance(h, Hyperplane):
                normal, offset = h
                h = Hyperplane.of(normal, offset, fld)
            canon.append(h.canonicalize())
        return cls(dim, tuple(canon), tuple(labels) if labels is not None else (), fld, multi=multi)

    @classmethod
    def empty(cls, dim: int, fld: ScalarField = QQ) -> Arrangement:
        return cls(dim, (), (), fld)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self) -> Iterator[Hyperplane]:
        return iter(self.hyperplanes)

    @cached_property
    def by_label(self) -> dict[int, Hyperplane]:
        return dict(zip(self.labels, self.hyperplanes))

    def hyperplane(self, label: int) -> Hyperplane:
        return self.by_label[label]

    def sub(self, labels: Iterable[int]) -> Arrangement:
        """The sub-arrangement on ``labels``, in this arrangement's order."""
        keep = set(labels)
        pairs = [(lab, h) for lab, h in zip(self.labels, self.hyperplanes) if lab in keep]
        return Arrangement(
            self.dim,
            tuple(h for _, h in pairs),
            tuple(lab for lab, _ in pairs),
            self.field,
            multi=self.multi,
        )

    @property
    def rank(self) -> int:
        return rank_of_normals(self.hyperplanes, self.field)

    @property
    def is_essential(self) -> bool:
        return self.rank == self.dim

    @property
    def is_central(self) -> bool:
        return all(h.is_linear for h in self.hyperplanes)

    def __str__(self) -> str:
        body = "; ".join(f"H{lab}: {h}" for lab, h in zip(self.labels, self.hyperplanes))
        return f"A in {self.field}^{self.dim} [{body}]"


@dataclass(frozen=True)
class SemiLattice:
    """The intersection semi-lattice ``L(A)`` ordered by reverse inclusion.

    Elements are sorted by codimension, then by their label sets; element ``0``
    is the ambient space. Label sets are held as bitmasks over the positions
    of ``arrangement.hyperplanes``.
    """

    arrangement: Arrangement
    flats: tuple[Flat, ...]
    masks: tuple[int, ...]
    _mobius_rows: dict[int, dict[int, int]] = field(default_factory=dict, compare=False, repr=False)
    _mobius_lock: threading.Lock = field(default_factory=threading.Lock, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.flats)

    @cached_property
    def index(self) -> dict[Flat, int]:
        return {f: i for i, f in enumerate(self.flats)}

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dim for f in self.flats)

    def labels(self, i: int) -> tuple[int, ...]:
        """The localisation labels ``A_X = {label : X in H_label}``."""
        mask = self.masks[i]
        return tuple(lab for pos, lab in enumerate(self.arrangement.labels) if mask >> pos & 1)

    def position(self, x: Union[int, Flat]) -> int:
        if isinstance(x, int):
            return x
        try:
            return self.index[x]
        except KeyError:
            raise NotAFlatError(f"{x} is not a member of L(A)") from None

    def leq(self, x: Union[int, Flat], y: Union[int, Flat]) -> bool:
        """``X <= Y`` in ``L(A)``, i.e. ``Y`` is contained in ``X``."""
        mx, my = self.masks[self.position(x)], self.masks[self.position(y)]
        return mx & my == mx

    def upset(self, i: int) -> list[int]:
        mask = self.masks[i]
        return [j for j in range(i, len(self.flats)) if self.masks[j] & mask == mask]

    def downset(self, i: int) -> list[int]:
        mask = self.masks[i]
        return [j for j in range(i + 1) if self.masks[j] & mask == self.masks[j]]

    def level(self, dim: int) -> list[int]:
        return [i for i, f in enumerate(self.flats) if f.dim == dim]

    def mobius_row(self, i: int) -> dict[int, int]:
        """``{j: mu(X_i, X_j)}`` over the up-set of ``X_i``.

        Rows are cached on first use; the cache is shared by every caller of
        the memoised :func:`build_semilattice`, so filling it takes a lock.
        """
        row = self._mobius_rows.get(i)
        if row is not None:
            return row
        with self._mobius_lock:
            row = self._mobius_rows.get(i)
            if row is None:
                above = self.upset(i)
                row = {i: 1}
                for k, y in enumerate(above[1:], start=1):
                    my = self.masks[y]
                    row[y] = -sum(row[z] for z in above[:k] if self.masks[z] & my == self.masks[z])
                self._mobius_rows[i] = row
        return row

    def edges(self) -> list[tuple[int, int]]:
        """Cover relations ``(i, j)`` with ``X_j`` covering ``X_i``."""
        out = []
        for i in range(len(self.flats)):
            for j in self.upset(i):
                if self.flats[j].codim == self.flats[i].codim + 1:
                    out.append((i, j))
        return out


@lru_cache(maxsize=1024)
def build_semilattice(arrangement: Arrangement) -> SemiLattice:
    """Saturate level by level: meet every flat with every hyperplane.

    Each new flat is deduplicated by its canonical RREF, so no subset of the
    hyperplanes is ever enumerated twice.
    """
    top = Flat.ambient_space(arrangement.dim, arrangement.field)
    found: dict[Flat, None] = {top: None}
    frontier = [top]
    while frontier:
        nxt: dict[Flat, None] = {}
        for flat in frontier:
            for h in arrangement.hyperplanes:
                meet = flat.meet(h)
                if meet.kind is MeetKind.PROPER and meet.flat not in found:
                    nxt[meet.flat] = None
        found.update(nxt)
        frontier = list(nxt)

    def mask_of(flat: Flat) -> int:
        return sum(1 << pos for pos, h in enumerate(arrangement.hyperplanes) if flat.lies_in(h))

    entries = [(flat, mask_of(flat)) for flat in found]
    entries.sort(key=lambda e: (e[0].codim, [p for p in range(len(arrangement)) if e[1] >> p & 1]))
    log.debug("semilattice built", flats=len(entries), hyperplanes=len(arrangement))
    return SemiLattice(arrangement, tuple(f for f, _ in entries), tuple(m for _, m in entries))


def mobius(lattice: SemiLattice, x: Union[int, Flat], y: Union[int, Flat]) -> int:
    """Return the Möbius value ``mu(X, Y)``.

    Raises:
        MobiusOrderError: If ``X`` is not below ``Y``.
    """
    i, j = lattice.position(x), lattice.position(y)
    if not lattice.leq(i, j):
        raise MobiusOrderError(f"element {i} is not below element {j}")
    return lattice.mobius_row(i)[j]


def polynomial(coefficients: Sequence[int]) -> Poly:
    """Univariate integer polynomial in ``t`` from ascending coefficients."""
    return Poly(list(reversed(list(coefficients))) or [0], t, domain=ZZ)


def _ascending(poly: Poly, degree: int) -> tuple[int, ...]:
    out = [0] * (degree + 1)
    for (k,), c in poly.terms():
        out[k] = int(c)
    return tuple(out)


def char_poly(arrangement: Arrangement) -> Poly:
    """``chi(A, t) = sum mu(V, X) t^dim(X)``; zero when ``V`` is a member."""
    if arrangement.degeneracy is Degeneracy.AMBIENT_MEMBER:
        return polynomial([0])
    lattice = build_semilattice(arrangement)
    coeffs = [0] * (arrangement.dim + 1)
    for j, mu in lattice.mobius_row(0).items():
        coeffs[lattice.flats[j].dim] += mu
    return polynomial(coeffs)


@dataclass(frozen=True)
class BiPoly:
    """Integer polynomial in ``s`` and ``t``; ``grid[i][j]`` holds ``s^i t^j``."""

    grid: tuple[tuple[int, ...], ...]

    @classmethod
    def zero(cls, dim: int) -> BiPoly:
        return cls(tuple(tuple(0 for _ in range(dim + 1)) for _ in range(dim + 1)))

    @property
    def dim(self) -> int:
        return len(self.grid) - 1

    def coefficient(self, i: int, j: int) -> int:
        if 0 <= i < len(self.grid) and 0 <= j < len(self.grid):
            return self.grid[i][j]
        return 0

    def specialize_s0(self) -> Poly:
        return polynomial(self.grid[0])

    def as_expr(self):
        return sum(
            (c * s**i * t**j for i, row in enumerate(self.grid) for j, c in enumerate(row) if c),
            ZZ.zero,
        )

    def as_poly(self) -> Poly:
        return Poly(self.as_expr(), s, t, domain=ZZ)

    def __str__(self) -> str:
        return str(self.as_expr())


def _grid(dim: int) -> list[list[int]]:
    return [[0] * (dim + 1) for _ in range(dim + 1)]


def whitney_poly(arrangement: Arrangement) -> BiPoly:
    """``w(A; s, t) = sum_{X <= Y} mu(X, Y) s^codim(X) t^dim(Y)``."""
    d = arrangement.dim
    if arrangement.degeneracy is Degeneracy.AMBIENT_MEMBER:
        return BiPoly.zero(d)
    lattice = build_semilattice(arrangement)
    grid = _grid(d)
    for i, x in enumerate(lattice.flats):
        for j, mu in lattice.mobius_row(i).items():
            grid[x.codim][lattice.flats[j].dim] += mu
    return BiPoly(tuple(tuple(row) for row in grid))


def whitney_poly_via_restrictions(arrangement: Arrangement) -> BiPoly:
    """``w(A; s, t) = sum_X s^codim(X) chi(A/X, t)``, one restriction per flat."""
    d = arrangement.dim
    if arrangement.degeneracy is Degeneracy.AMBIENT_MEMBER:
        return BiPoly.zero(d)
    grid = _grid(d)
    for flat in build_semilattice(arrangement).flats:
        chi = _ascending(char_poly(restriction(arrangement, flat)), flat.dim)
        for k, c in enumerate(chi):
            grid[flat.codim][k] += c
    return BiPoly(tuple(tuple(row) for row in grid))


@dataclass(frozen=True)
class InvariantBundle:
    """Every classical invariant of one arrangement.

    ``cij[i][j]`` (``0 <= j <= i <= dim``) is the unsigned coefficient of
    ``s^(dim-i) t^(i-j)`` in the Whitney polynomial; ``doubly[i][j]`` is the
    doubly indexed Whitney number ``sum mu(X, Y)`` over codim ``i`` below
    codim ``j``.
    """

    dim: int
    chi: tuple[int, ...]
    whitney: BiPoly
    cij: tuple[tuple[int, ...], ...]
    w_plus: tuple[int, ...]
    W: tuple[int, ...]
    faces: tuple[int, ...]
    regions: int
    doubly: tuple[tuple[int, ...], ...]

    @classmethod
    def zero(cls, dim: int) -> InvariantBundle:
        zeros = tuple(0 for _ in range(dim + 1))
        return cls(
            dim,
            zeros,
            BiPoly.zero(dim),
            tuple(tuple(0 for _ in range(i + 1)) for i in range(dim + 1)),
            zeros,
            zeros,
            zeros,
            0,
            tuple(tuple(0 for _ in range(dim + 1)) for _ in range(dim + 1)),
        )

    @property
    def chi_poly(self) -> Poly:
        return polynomial(self.chi)

    def comparable_fields(self) -> Iterator[tuple[str, int]]:
        """Yield ``(name, value)`` for every component of the partial order."""
        for i, row in enumerate(self.cij):
            for j, v in enumerate(row):
                yield f"c[{i}][{j}]", v
        for k, v in enumerate(self.w_plus):
            yield f"w+[{k}]", v
        for k, v in enumerate(self.W):
            yield f"W[{k}]", v
        for k, v in enumerate(self.faces):
            yield f"f[{k}]", v
        yield "r", self.regions

    def componentwise_violations(self, other: InvariantBundle) -> list[str]:
        """Components where ``self <= other`` fails."""
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} != {other.dim}")
        return [
            f"{name}: {a} > {b}"
            for (name, a), (_, b) in zip(self.comparable_fields(), other.comparable_fields())
            if a > b
        ]

    def __le__(self, other: InvariantBundle) -> bool:
        return not self.componentwise_violations(other)


def invariants(arrangement: Arrangement) -> InvariantBundle:
    """Compute the full :class:`InvariantBundle` of ``arrangement``."""
    d = arrangement.dim
    if arrangement.degeneracy is Degeneracy.AMBIENT_MEMBER:
        return InvariantBundle.zero(d)
    lattice = build_semilattice(arrangement)
    whitney = whitney_poly(arrangement)
    chi = whitney.grid[0]
    cij = tuple(
        tuple((-1) ** j * whitney.coefficient(d - i, i - j) for j in range(i + 1)) for i in range(d + 1)
    )
    W = [0] * (d + 1)
    for flat in lattice.flats:
        W[flat.codim] += 1
    doubly = _grid(d)
    for i, x in enumerate(lattice.flats):
        for j, mu in lattice.mobius_row(i).items():
            doubly[x.codim][lattice.flats[j].codim] += mu
    regions = (-1) ** d * sum(c * (-1) ** k for k, c in enumerate(chi))
    return InvariantBundle(
        dim=d,
        chi=tuple(chi),
        whitney=whitney,
        cij=cij,
        w_plus=cij[d],
        W=tuple(W),
        faces=tuple(sum(row) for row in cij),
        regions=regions,
        doubly=tuple(tuple(row) for row in doubly),
    )


def _labels_containing(arrangement: Arrangement, flat: Flat) -> list[int]:
    return [lab for lab, h in zip(arrangement.labels, arrangement.hyperplanes) if flat.lies_in(h)]


def _require_member(arrangement: Arrangement, flat: Flat) -> list[int]:
    if flat.ambient != arrangement.dim or flat.field != arrangement.field:
        raise NotAFlatError(f"{flat} does not live in {arrangement.field}^{arrangement.dim}")
    labels = _labels_containing(arrangement, flat)
    meet = Flat.ambient_space(arrangement.dim, arrangement.field)
    for lab in labels:
        meet = meet.meet(arrangement.hyperplane(lab)).flat or meet
    if meet != flat:
        raise NotAFlatError(f"{flat} is not an intersection of hyperplanes of A")
    return labels


def localization(arrangement: Arrangement, flat: Flat) -> Arrangement:
    """``A_X``: the hyperplanes containing ``X``, labels preserved."""
    return arrangement.sub(_require_member(arrangement, flat))


def restrict_hyperplane(h: Hyperplane, flat: Flat) -> Optional[Hyperplane]:
    """Trace of ``h`` on ``flat`` in the canonical chart of ``flat``.

    ``None`` when ``h`` misses the flat or contains it.
    """
    if flat.meet(h).kind is not MeetKind.PROPER:
        return None
    fld = flat.field
    normal = tuple(dot(h.normal, v, fld) for v in flat.directions)
    offset = fld.reduce(h.offset - dot(h.normal, flat.point, fld))
    return Hyperplane(normal, offset, fld).canonicalize()


def restriction(arrangement: Arrangement, flat: Flat) -> Arrangement:
    """``A/X`` as a multi-arrangement in ``dim(X)`` chart coordinates.

    Traces that coincide keep their own labels.
    """
    _require_member(arrangement, flat)
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


def locate(arrangement: Arrangement, point: Sequence) -> Flat:
    """Inclusion-minimal flat of ``L(A)`` containing ``point``."""
    fld = arrangement.field
    point = fld.vector(point)
    if len(point) != arrangement.dim:
        raise ValueError(f"dimension mismatch: {len(point)} != {arrangement.dim}")
    flat = Flat.ambient_space(arrangement.dim, fld)
    for h in arrangement.hyperplanes:
        if h.contains(point):
            flat = flat.meet(h).flat or flat
    return flat


@dataclass(frozen=True)
class EssentialChart:
    """Coordinates on ``F^d / O^perp`` used by :func:`essentialize`.

    ``system`` is the RREF of the normals; a point ``x`` maps to
    ``system . x`` and an essential point ``y`` lifts to ``y`` placed on the
    ``pivots``.
    """

    ambient_dim: int
    pivots: tuple[int, ...]
    system: tuple[Vector, ...]
    field: ScalarField = QQ

    @property
    def essential_dim(self) -> int:
        return len(self.pivots)

    def project(self, point: Sequence) -> Vector:
        point = self.field.vector(point)
        return tuple(dot(row, point, self.field) for row in self.system)

    def embed(self, point: Sequence) -> Vector:
        out = [self.field.zero()] * self.ambient_dim
        for col, v in zip(self.pivots, self.field.vector(point)):
            out[col] = v
        return tuple(out)


def essentialize(arrangement: Arrangement) -> tuple[Arrangement, EssentialChart]:
    """Quotient ``A`` by the complement of the span ``O`` of its normals.

    Each normal is read on the pivot columns of the RREF of all normals, which
    is injective on ``O``; hence ``L(A)`` and ``L(A_ess)`` are isomorphic and
    ``chi(A, t) = t^(d - dim O) chi(A_ess, t)``.
    """
    fld = arrangement.field
    if arrangement.hyperplanes:
        echelon = rref([h.normal for h in arrangement.hyperplanes], None, fld, cols=arrangement.dim)
        pivots, system = echelon.pivots, echelon.matrix.entries
    else:
        pivots, system = (), ()
    chart = EssentialChart(arrangement.dim, pivots, system, fld)
    reduced = Arrangement(
        len(pivots),
        tuple(
            Hyperplane(tuple(h.normal[c] for c in pivots), h.offset, fld).canonicalize()
            for h in arrangement.hyperplanes
        ),
        arrangement.labels,
        fld,
        arrangement.degeneracy,
        arrangement.multi,
    )
    return reduced, chart


def structural_violations(arrangement: Arrangement) -> list[str]:
    """Run the internal consistency identities of the invariant bundle."""
    d = arrangement.dim
    bundle = invariants(arrangement)
    problems = []
    if bundle.whitney.specialize_s0() != char_poly(arrangement):
        problems.append("chi differs from w(A; 0, t)")
    if whitney_poly_via_restrictions(arrangement) != bundle.whitney:
        problems.append("Whitney polynomial formulas disagree")
    if arrangement.degeneracy is Degeneracy.AMBIENT_MEMBER:
        return problems
    for i, row in enumerate(bundle.cij):
        if bundle.faces[i] != sum(row):
            problems.append(f"f[{i}] != sum_j c[{i}][j]")
        for j, c in enumerate(row):
            if c != (-1) ** j * bundle.doubly[d - i][d + j - i]:
                problems.append(f"c[{i}][{j}] != (-1)^{j} w[{d - i}][{d + j - i}]")
    if bundle.faces[d] != bundle.regions:
        problems.append("f[d] != r")
    if bundle.w_plus != tuple(abs(c) for c in reversed(bundle.chi)):
        problems.append("w+ differs from the unsigned coefficients of chi")
    if not arrangement.field.is_prime:
        euler = sum((-1) ** k * f for k, f in enumerate(bundle.faces))
        if euler != (-1) ** d:
            problems.append(f"Euler sum {euler} != (-1)^{d}")
    if problems:
        log.warning("structural check failed", arrangement=str(arrangement), problems=problems)
    return problems
