from fractions import Fraction

import numpy as np
import pytest

from hyperext.exactq import (
    GF,
    QQ,
    Flat,
    Hyperplane,
    MeetKind,
    canonical_direction,
    dot,
    format_rational,
    intersect,
    parametrize,
    primitive_integer_vector,
    rank_of_normals,
    rref,
    to_rational,
)


def test_to_rational_parses_ints_and_strings() -> None:
    assert to_rational(3) == 3
    assert to_rational("3/6") == Fraction(1, 2)
    assert to_rational(" -7 ") == -7


@pytest.mark.parametrize("value", [1.5, True, None])
def test_to_rational_refuses_non_rational_types(value) -> None:
    with pytest.raises(TypeError):
        to_rational(value)


def test_to_rational_rejects_garbage() -> None:
    with pytest.raises(ValueError):
        to_rational("one half")
    with pytest.raises(ValueError):
        to_rational("1/0")


def test_format_rational() -> None:
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(4, 2)) == "2"


def test_prime_field_coercion() -> None:
    assert GF(7).coerce("1/2") == 4
    assert GF(7).coerce(-1) == 6
    with pytest.raises(ZeroDivisionError):
        GF(5).coerce("1/5")
    with pytest.raises(ValueError):
        GF(1)


def test_primitive_integer_vector() -> None:
    assert primitive_integer_vector(["1/2", "-1/3"]) == (3, -2)
    assert primitive_integer_vector([0, -4, 6]) == (0, 2, -3)
    assert primitive_integer_vector([0, 0]) == (0, 0)


def test_canonical_direction() -> None:
    assert canonical_direction((0, -2, 4)) == (0, 1, -2)
    assert canonical_direction((0, 2, 4), GF(5)) == (0, 1, 2)
    with pytest.raises(ValueError):
        canonical_direction((0, 0))


def test_rref_rank_and_pivots() -> None:
    echelon = rref([[2, 4], [1, 2]])
    assert echelon.rank == 1
    assert echelon.pivots == (0,)
    assert echelon.matrix.entries == ((1, 2),)
    assert echelon.consistent


def test_rref_detects_inconsistency() -> None:
    assert not rref([[1, 1], [2, 2]], [1, 3]).consistent
    assert rref([[1, 1], [2, 2]], [1, 2]).consistent


def test_rref_over_prime_field() -> None:
    # 2x + y = 0 and x + 3y = 0 are dependent modulo 5
    echelon = rref([[2, 1], [1, 3]], None, GF(5))
    assert echelon.rank == 1
    assert echelon.matrix.entries == ((1, 3),)


def test_rref_shape_errors() -> None:
    with pytest.raises(ValueError):
        rref([[1, 0]], [1, 2])
    with pytest.raises(ValueError):
        rref([[1, 0], [1]])
    assert rref([], cols=3).rank == 0


def test_hyperplane_canonical_form() -> None:
    assert Hyperplane.of((2, -4), 6) == Hyperplane.of((-1, 2), -3)
    h = Hyperplane.of((0, "1/2"), 1)
    assert h.normal == (0, 1)
    assert h.offset == 2
    assert Hyperplane.of((2, 4), 1, GF(5)).normal == (1, 2)
    assert Hyperplane.of((2, 4), 1, GF(5)).offset == 3


def test_hyperplane_integer_data_and_membership() -> None:
    h = Hyperplane.of(("1/2", "1/3"), "1/6")
    assert h.integer_data() == ((3, 2), 1)
    assert h.contains(QQ.vector(["1/3", 0]))
    assert not h.contains(QQ.vector([0, 0]))


def test_degenerate_hyperplanes() -> None:
    whole = Hyperplane.of((0, 0), 0)
    empty = Hyperplane.of((0, 0), 5)
    assert whole.is_degenerate and empty.is_degenerate
    assert empty.offset == 1
    plane = Flat.ambient_space(2)
    assert intersect(plane, whole).kind is MeetKind.UNCHANGED
    assert intersect(plane, empty).kind is MeetKind.EMPTY


def test_meet_kinds() -> None:
    line = Flat.ambient_space(2).meet(Hyperplane.of((1, 0), 1))
    assert line.kind is MeetKind.PROPER
    assert line.flat.dim == 1
    assert line.flat.meet(Hyperplane.of((1, 0), 0)).kind is MeetKind.EMPTY
    assert line.flat.meet(Hyperplane.of((2, 0), 2)).kind is MeetKind.UNCHANGED


def test_flats_are_canonical_regardless_of_meet_order() -> None:
    x, y = Hyperplane.of((1, 0), 0), Hyperplane.of((0, 1), 0)
    plane = Flat.ambient_space(2)
    first = plane.meet(x).flat.meet(y).flat
    second = plane.meet(y).flat.meet(x).flat
    assert first == second == Flat.from_point((0, 0))
    assert hash(first) == hash(second)


def test_flat_chart() -> None:
    flat = Flat.from_hyperplane(Hyperplane.of((1, 1), 2))
    assert flat.pivots == (0,)
    assert flat.free_columns == (1,)
    assert flat.point == (2, 0)
    assert flat.directions == ((-1, 1),)
    assert flat.at((3,)) == (-1, 3)
    point, basis = parametrize(flat)
    assert point == flat.point
    assert basis.columns == flat.directions
    with pytest.raises(ValueError):
        flat.at((1, 2))


def test_flat_inclusions() -> None:
    flat = Flat.from_hyperplane(Hyperplane.of((1, 1), 2))
    assert flat.lies_in(Hyperplane.of((2, 2), 4))
    assert not flat.lies_in(Hyperplane.of((1, 0), 1))
    assert Flat.from_point((1, 1)).is_subset_of(flat)
    assert not flat.is_subset_of(Flat.from_point((1, 1)))
    assert Flat.from_equations([[1, 1], [1, 1]], [0, 1], 2) is None


def test_meet_dimension_mismatch() -> None:
    with pytest.raises(ValueError):
        Flat.ambient_space(3).meet(Hyperplane.of((1, 0), 0))


def test_rank_of_normals() -> None:
    hyperplanes = [Hyperplane.of((1, 0), 0), Hyperplane.of((1, 0), 1), Hyperplane.of((0, 1), 0)]
    assert rank_of_normals(hyperplanes) == 2
    assert rank_of_normals(hyperplanes[:2]) == 1
    assert rank_of_normals([]) == 0


def test_canonical_form_is_idempotent_and_scale_free() -> None:
    rng = np.random.default_rng(3)
    for _ in range(200):
        normal = [int(v) for v in rng.integers(-4, 5, size=3)]
        offset = int(rng.integers(-4, 5))
        h = Hyperplane.of(normal, offset)
        assert h.canonicalize() is h
        assert Hyperplane(h.normal, h.offset).canonicalize() == h
        for scale in (Fraction(-3, 2), 5, -1):
            assert Hyperplane.of([scale * v for v in normal], scale * offset) == h


def test_intersect_drops_dimension_by_at_most_one() -> None:
    rng = np.random.default_rng(17)
    flat = Flat.ambient_space(3)
    for _ in range(1000):
        h = Hyperplane.of([int(v) for v in rng.integers(-1, 2, size=3)], int(rng.integers(-1, 2)))
        meet = intersect(flat, h)
        if meet.kind is MeetKind.EMPTY:
            assert meet.flat is None
            assert not h.contains(flat.point)
            assert all(dot(h.normal, v) == 0 for v in flat.directions)
            flat = Flat.ambient_space(3)
            continue
        assert flat.dim - meet.flat.dim == (1 if meet.kind is MeetKind.PROPER else 0)
        assert meet.flat.is_subset_of(flat)
        if not h.is_degenerate:
            assert meet.flat.lies_in(h)
        flat = meet.flat if meet.flat.dim > 0 else Flat.ambient_space(3)


def test_rref_solutions_satisfy_the_system() -> None:
    rng = np.random.default_rng(23)
    for _ in range(100):
        rows = [[int(v) for v in rng.integers(-3, 4, size=4)] for _ in range(int(rng.integers(1, 4)))]
        rhs = [int(v) for v in rng.integers(-3, 4, size=len(rows))]
        echelon = rref(rows, rhs)
        flat = Flat.from_equations(rows, rhs, 4)
        assert (flat is not None) == echelon.consistent
        if flat is None:
            continue
        assert flat.system == echelon.matrix
        assert flat.system.apply(flat.point) == flat.rhs
        for direction in flat.directions:
            assert flat.system.apply(direction) == (0,) * flat.codim
        coords = [Fraction(int(v), 3) for v in rng.integers(-5, 6, size=flat.dim)]
        point = flat.at(coords)
        assert all(sum(a * x for a, x in zip(row, point)) == b for row, b in zip(rows, rhs))
