"""Exact scalars, canonical hyperplanes and canonical flats.

Every linear-algebra routine in this module is parameterised by a
:class:`ScalarField`. ``QQ`` computes with :class:`fractions.Fraction`,
``GF(p)`` with integers reduced modulo ``p``. Nothing here touches floating
point: membership of a point in a flat and the rank of a system are
discontinuous quantities.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, reduce
from typing import Any, Iterable, NamedTuple, Optional, Sequence, Union

Scalar = Union[Fraction, int]
Vector = tuple[Scalar, ...]


def to_rational(value: Any) -> Fraction:
    """Parse ``value`` into a reduced :class:`Fraction`.

    Accepts ints, fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats are refused so that no binary rounding can leak into the core.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational number: {value!r}") from e
    raise TypeError(f"unsupported scalar type {type(value).__name__}")


def format_rational(value: Scalar) -> str:
    """Serialise a scalar as ``"p"`` or ``"p/q"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class ScalarField:
    """The field the coordinates live in: the rationals or a prime field."""

    modulus: Optional[int] = None
    """``None`` for the rationals, otherwise the prime ``p`` of ``GF(p)``."""

    @property
    def is_prime(self) -> bool:
        return self.modulus is not None

    def coerce(self, value: Any) -> Scalar:
        q = to_rational(value)
        if self.modulus is None:
            return q
        if q.denominator % self.modulus == 0:
            raise ZeroDivisionError(f"{q} has no residue modulo {self.modulus}")
        return (q.numerator * pow(q.denominator, -1, self.modulus)) % self.modulus

    def vector(self, values: Iterable[Any]) -> Vector:
        return tuple(self.coerce(v) for v in values)

    def reduce(self, value: Scalar) -> Scalar:
        if self.modulus is None:
            return value
        return value % self.modulus

    def inverse(self, value: Scalar) -> Scalar:
        if self.modulus is None:
            return 1 / Fraction(value)
        return pow(int(value), -1, self.modulus)

    def zero(self) -> Scalar:
        return Fraction(0) if self.modulus is None else 0

    def one(self) -> Scalar:
        return Fraction(1) if self.modulus is None else 1

    def __str__(self) -> str:
        return "Q" if self.modulus is None else f"GF({self.modulus})"


QQ = ScalarField()


def GF(p: int) -> ScalarField:
    """Return the prime field with ``p`` elements."""
    if p < 2:
        raise ValueError(f"{p} is not a prime")
    return ScalarField(p)


def dot(u: Sequence[Scalar], v: Sequence[Scalar], fld: ScalarField = QQ) -> Scalar:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} != {len(v)}")
    return fld.reduce(sum((a * b for a, b in zip(u, v)), fld.zero()))


def primitive_integer_vector(values: Sequence[Any]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers with positive leading entry."""
    fractions = [to_rational(v) for v in values]
    if not any(fractions):
        return tuple(0 for _ in fractions)
    denominator = reduce(math.lcm, (f.denominator for f in fractions), 1)
    ints = [int(f * denominator) for f in fractions]
    g = reduce(math.gcd, (abs(i) for i in ints), 0)
    lead = next(i for i in ints if i != 0)
    sign = 1 if lead > 0 else -1
    return tuple(sign * i // g for i in ints)


def _leading_scale(values: Sequence[Scalar], fld: ScalarField) -> Scalar:
    """Factor that turns ``values`` into its canonical representative."""
    if fld.modulus is not None:
        lead = next(v for v in values if v != 0)
        return fld.inverse(lead)
    canonical = primitive_integer_vector(values)
    k = next(i for i, v in enumerate(values) if v != 0)
    return Fraction(canonical[k]) / Fraction(values[k])


def canonical_direction(values: Sequence[Any], fld: ScalarField = QQ) -> Vector:
    """Canonical spanning vector of the line ``F·values``.

    Over ``QQ`` this is the primitive integer vector with positive leading
    entry; over ``GF(p)`` the leading entry is scaled to ``1``.
    """
    vec = fld.vector(values)
    if not any(vec):
        raise ValueError("the zero vector spans no line")
    scale = _leading_scale(vec, fld)
    return tuple(fld.reduce(v * scale) for v in vec)


@dataclass(frozen=True)
class Matrix:
    """A rectangular matrix of exact scalars, stored row by row."""

    entries: tuple[Vector, ...]
    cols: int

    @classmethod
    def from_rows(
        cls, rows: Iterable[Sequence[Any]], cols: Optional[int] = None, fld: ScalarField = QQ
    ) -> Matrix:
        materialised = tuple(fld.vector(row) for row in rows)
        if cols is None:
            if not materialised:
                raise ValueError("column count is required for an empty matrix")
            cols = len(materialised[0])
        for i, row in enumerate(materialised):
            if len(row) != cols:
                raise ValueError(f"row {i} has {len(row)} entries, expected {cols}")
        return cls(materialised, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], rows: int) -> Matrix:
        return cls(tuple(tuple(col[i] for col in columns) for i in range(rows)), len(columns))

    @property
    def rows(self) -> int:
        return len(self.entries)

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    @property
    def columns(self) -> tuple[Vector, ...]:
        return tuple(self.column(j) for j in range(self.cols))

    def apply(self, vector: Sequence[Scalar], fld: ScalarField = QQ) -> Vector:
        return tuple(dot(row, vector, fld) for row in self.entries)


class RowEchelon(NamedTuple):
    """Reduced row echelon form of a linear system ``M x = rhs``."""

    matrix: Matrix
    rhs: Vector
    rank: int
    consistent: bool
    pivots: tuple[int, ...]


def rref(
    matrix: Union[Matrix, Sequence[Sequence[Any]]],
    rhs: Optional[Sequence[Any]] = None,
    fld: ScalarField = QQ,
    *,
    cols: Optional[int] = None,
) -> RowEchelon:
    """Gauss-Jordan elimination of ``matrix`` augmented by ``rhs``.

    Args:
        matrix: The coefficient matrix ``M`` (``r x d``).
        rhs: The right-hand side; defaults to zeros.
        fld: Scalar field the entries are read in.
        cols: Column count, required only for a matrix with no rows.

    Returns:
        ``RowEchelon`` holding the pivot rows ``R`` and their right-hand side
        ``c``. ``consistent`` is false iff a row ``0 = nonzero`` survives.

    Raises:
        ValueError: If ``rhs`` and ``matrix`` disagree on the number of rows.
    """
    if not isinstance(matrix, Matrix):
        matrix = Matrix.from_rows(matrix, cols, fld)
    if rhs is None:
        rhs = [0] * matrix.rows
    if len(rhs) != matrix.rows:
        raise ValueError(f"dimension mismatch: {matrix.rows} rows but {len(rhs)} right-hand sides")

    n = matrix.cols
    rows = [list(row) + [fld.coerce(b)] for row, b in zip(matrix.entries, rhs)]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = fld.inverse(rows[r][c])
        rows[r] = [fld.reduce(v * inv) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [fld.reduce(a - factor * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1

    consistent = all(row[n] == 0 for row in rows[r:])
    reduced = Matrix(tuple(tuple(row[:n]) for row in rows[:r]), n)
    return RowEchelon(reduced, tuple(row[n] for row in rows[:r]), r, consistent, tuple(pivots))


@dataclass(frozen=True)
class Hyperplane:
    """The affine hyperplane ``normal . x = offset``.

    A zero normal is admitted as a tagged degenerate value: with offset zero it
    is the whole space, otherwise the empty set. Arrangements never store one.
    """

    normal: Vector
    offset: Scalar
    field: ScalarField = QQ
    canonical: bool = dataclasses.field(default=False, compare=False)

    @classmethod
    def of(cls, normal: Sequence[Any], offset: Any = 0, fld: ScalarField = QQ) -> Hyperplane:
        """Build the canonical hyperplane ``normal . x = offset``."""
        return cls(fld.vector(normal), fld.coerce(offset), fld).canonicalize()

    @property
    def dim(self) -> int:
        return len(self.normal)

    @property
    def is_degenerate(self) -> bool:
        return not any(self.normal)

    @property
    def is_linear(self) -> bool:
        return self.offset == 0

    def canonicalize(self) -> Hyperplane:
        if self.canonical:
            return self
        fld = self.field
        if self.is_degenerate:
            offset = fld.zero() if self.offset == 0 else fld.one()
            return Hyperplane(self.normal, offset, fld, canonical=True)
        scale = _leading_scale(self.normal, fld)
        normal = tuple(fld.reduce(v * scale) for v in self.normal)
        if fld.modulus is None:
            normal = tuple(Fraction(int(v)) for v in normal)
        return Hyperplane(normal, fld.reduce(self.offset * scale), fld, canonical=True)

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        """Return ``normal . point - offset``."""
        return self.field.reduce(dot(self.normal, point, self.field) - self.offset)

    def contains(self, point: Sequence[Scalar]) -> bool:
        return self.evaluate(point) == 0

    def integer_data(self) -> tuple[tuple[int, ...], int]:
        """Clear denominators: a primitive integer vector ``(alpha, a)``."""
        if self.field.modulus is not None:
            return tuple(int(v) for v in self.normal), int(self.offset)
        *normal, offset = primitive_integer_vector((*self.normal, self.offset))
        return tuple(normal), offset

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.normal, start=1):
            if c == 0:
                continue
            coeff = format_rational(c)
            terms.append(f"x{i}" if coeff == "1" else f"{coeff}*x{i}")
        lhs = " + ".join(terms) or "0"
        return f"{lhs} = {format_rational(self.offset)}"


class MeetKind(Enum):
    EMPTY = "empty"
    UNCHANGED = "unchanged"
    PROPER = "proper"


class Meet(NamedTuple):
    """Outcome of intersecting a flat with one hyperplane."""

    kind: MeetKind
    flat: Optional[Flat]


@dataclass(frozen=True)
class Flat:
    """A nonempty affine subspace ``{x : R x = c}`` with ``(R, c)`` in RREF.

    The pair ``(R, c)`` is unique per subspace, so flats hash and compare by
    point set.
    """

    ambient: int
    system: Matrix
    rhs: Vector
    field: ScalarField = QQ

    @classmethod
    def ambient_space(cls, d: int, fld: ScalarField = QQ) -> Flat:
        return cls(d, Matrix((), d), (), fld)

    @classmethod
    def from_equations(
        cls, rows: Sequence[Sequence[Any]], rhs: Sequence[Any], d: int, fld: ScalarField = QQ
    ) -> Optional[Flat]:
        """Solve ``rows . x = rhs``; ``None`` when the system is inconsistent."""
        echelon = rref(Matrix.from_rows(rows, d, fld), rhs, fld)
        if not echelon.consistent:
            return None
        return cls(d, echelon.matrix, echelon.rhs, fld)

    @classmethod
    def from_hyperplane(cls, hyperplane: Hyperplane) -> Flat:
        if hyperplane.is_degenerate:
            raise ValueError("a degenerate hyperplane is not a flat")
        flat = cls.from_equations([hyperplane.normal], [hyperplane.offset], hyperplane.dim, hyperplane.field)
        assert flat is not None
        return flat

    @classmethod
    def from_point(cls, point: Sequence[Any], fld: ScalarField = QQ) -> Flat:
        d = len(point)
        identity = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
        flat = cls.from_equations(identity, list(point), d, fld)
        assert flat is not None
        return flat

    @property
    def dim(self) -> int:
        return self.ambient - self.system.rows

    @property
    def codim(self) -> int:
        return self.system.rows

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(row) if v != 0) for row in self.system.entries)

    @cached_property
    def free_columns(self) -> tuple[int, ...]:
        pivots = set(self.pivots)
        return tuple(j for j in range(self.ambient) if j not in pivots)

    @cached_property
    def point(self) -> Vector:
        """The particular solution with every free variable set to zero."""
        point = [self.field.zero()] * self.ambient
        for col, value in zip(self.pivots, self.rhs):
            point[col] = value
        return tuple(point)

    @cached_property
    def directions(self) -> tuple[Vector, ...]:
        """Spanning vectors of the direction space, one per free column."""
        fld = self.field
        out = []
        for free in self.free_columns:
            vec = [fld.zero()] * self.ambient
            vec[free] = fld.one()
            for col, row in zip(self.pivots, self.system.entries):
                vec[col] = fld.reduce(-row[free])
            out.append(tuple(vec))
        return tuple(out)

    @property
    def basis(self) -> Matrix:
        """``d x dim`` matrix whose columns are :attr:`directions`."""
        return Matrix.from_columns(self.directions, self.ambient)

    def contains(self, point: Sequence[Scalar]) -> bool:
        return self.system.apply(point, self.field) == self.rhs

    def lies_in(self, hyperplane: Hyperplane) -> bool:
        """True iff this flat is a subset of ``hyperplane``."""
        if hyperplane.evaluate(self.point) != 0:
            return False
        return all(dot(hyperplane.normal, v, self.field) == 0 for v in self.directions)

    def is_subset_of(self, other: Flat) -> bool:
        if not other.contains(self.point):
            return False
        zero = tuple(self.field.zero() for _ in range(other.codim))
        return all(other.system.apply(v, self.field) == zero for v in self.directions)

    def at(self, coordinates: Sequence[Scalar]) -> Vector:
        """The point ``point + basis . coordinates`` of the canonical chart."""
        if len(coordinates) != self.dim:
            raise ValueError(f"dimension mismatch: chart has {self.dim} coordinates")
        fld = self.field
        out = list(self.point)
        for t, direction in zip(coordinates, self.directions):
            for i, v in enumerate(direction):
                out[i] = fld.reduce(out[i] + t * v)
        return tuple(out)

    def meet(self, hyperplane: Hyperplane) -> Meet:
        """Intersect with one hyperplane, keeping the RREF canonical."""
        if hyperplane.dim != self.ambient:
            raise ValueError(f"dimension mismatch: {hyperplane.dim} != {self.ambient}")
        fld = self.field
        row = list(hyperplane.normal)
        value = hyperplane.offset
        for col, prow, c in zip(self.pivots, self.system.entries, self.rhs):
            factor = row[col]
            if factor != 0:
                row = [fld.reduce(a - factor * b) for a, b in zip(row, prow)]
                value = fld.reduce(value - factor * c)
        lead = next((j for j, v in enumerate(row) if v != 0), None)
        if lead is None:
            return Meet(MeetKind.UNCHANGED, self) if value == 0 else Meet(MeetKind.EMPTY, None)

        inv = fld.inverse(row[lead])
        row = [fld.reduce(v * inv) for v in row]
        value = fld.reduce(value * inv)
        rows: list[tuple[int, Vector, Scalar]] = []
        for col, prow, c in zip(self.pivots, self.system.entries, self.rhs):
            factor = prow[lead]
            if factor != 0:
                prow = tuple(fld.reduce(a - factor * b) for a, b in zip(prow, row))
                c = fld.reduce(c - factor * value)
            rows.append((col, tuple(prow), c))
        rows.append((lead, tuple(row), value))
        rows.sort(key=lambda item: item[0])
        system = Matrix(tuple(r for _, r, _ in rows), self.ambient)
        return Meet(MeetKind.PROPER, Flat(self.ambient, system, tuple(c for _, _, c in rows), fld))

    def __str__(self) -> str:
        if self.codim == 0:
            return f"F^{self.ambient}"
        eqs = [str(Hyperplane(row, c, self.field)) for row, c in zip(self.system.entries, self.rhs)]
        return "{" + ", ".join(eqs) + "}"


def intersect(flat: Flat, hyperplane: Hyperplane) -> Meet:
    """Intersect ``flat`` with ``hyperplane``.

    ``EMPTY`` when they are disjoint, ``UNCHANGED`` when the flat lies inside
    the hyperplane, otherwise ``PROPER`` with a flat of dimension one less.
    A degenerate hyperplane behaves as the whole space (offset zero) or the
    empty set (offset nonzero).
    """
    return flat.meet(hyperplane)


def rank_of_normals(hyperplanes: Iterable[Hyperplane], fld: Optional[ScalarField] = None) -> int:
    """Rank of the set of normal vectors of ``hyperplanes``."""
    hyperplanes = list(hyperplanes)
    if not hyperplanes:
        return 0
    fld = fld or hyperplanes[0].field
    return rref([h.normal for h in hyperplanes], None, fld, cols=hyperplanes[0].dim).rank


def parametrize(flat: Flat) -> tuple[Vector, Matrix]:
    """Return the canonical chart ``(point, basis)`` of ``flat``.

    ``{point + basis . t}`` is exactly the flat; the columns of ``basis`` follow
    the free variables of the RREF in increasing column order.
    """
    return flat.point, flat.basis
