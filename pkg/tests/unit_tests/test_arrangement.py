import dataclasses
from concurrent.futures import ThreadPoolExecutor

import pytest

from hyperext.arrangement import (
    Arrangement,
    Degeneracy,
    DegenerateHyperplaneError,
    DuplicateHyperplaneError,
    InvariantBundle,
    MobiusOrderError,
    NotAFlatError,
    SemiLattice,
    build_semilattice,
    char_poly,
    essentialize,
    invariants,
    locate,
    localization,
    mobius,
    polynomial,
    restriction,
    structural_violations,
    whitney_poly,
    whitney_poly_via_restrictions,
)
from hyperext.exactq import Flat, Hyperplane


def test_example_invariants(example) -> None:
    bundle = invariants(example)
    assert bundle.chi == (2, -3, 1)
    assert bundle.whitney.grid == ((2, -3, 1), (-4, 3, 0), (2, 0, 0))
    assert bundle.cij == ((2,), (3, 4), (1, 3, 2))
    assert bundle.faces == (2, 7, 6)
    assert bundle.regions == 6
    assert bundle.W == (1, 3, 2)
    assert bundle.w_plus == (1, 3, 2)


def test_example_lattice(example) -> None:
    lattice = build_semilattice(example)
    assert len(lattice) == 6
    assert lattice.dims == (2, 1, 1, 1, 0, 0)
    assert lattice.labels(0) == ()
    assert [lattice.labels(i) for i in lattice.level(0)] == [(1, 3), (2, 3)]
    assert len(lattice.edges()) == 7


def test_mobius_values(example) -> None:
    lattice = build_semilattice(example)
    origin = lattice.position(Flat.from_point((0, 0)))
    assert mobius(lattice, 0, 0) == 1
    assert mobius(lattice, 0, origin) == 1
    assert mobius(lattice, Flat.ambient_space(2), Flat.from_point((1, 0))) == 1
    with pytest.raises(MobiusOrderError):
        mobius(lattice, origin, 0)
    with pytest.raises(NotAFlatError):
        lattice.position(Flat.from_point((5, 5)))


def test_pencil_and_boolean(pencil, boolean3) -> None:
    assert invariants(pencil).chi == (2, -3, 1)
    assert len(build_semilattice(pencil)) == 5
    assert invariants(pencil).W == (1, 3, 1)
    assert char_poly(boolean3) == polynomial([-1, 3, -3, 1])
    assert invariants(boolean3).regions == 8
    assert invariants(boolean3).W == (1, 3, 3, 1)


def test_empty_arrangement() -> None:
    bundle = invariants(Arrangement.empty(2))
    assert bundle.chi == (0, 0, 1)
    assert bundle.regions == 1
    assert bundle.faces == (0, 0, 1)
    assert structural_violations(Arrangement.empty(2)) == []


def test_rejects_duplicates_and_zero_normals() -> None:
    with pytest.raises(DuplicateHyperplaneError):
        Arrangement.of(2, [((1, 0), 0), ((2, 0), 0)])
    with pytest.raises(DegenerateHyperplaneError):
        Arrangement.of(2, [((0, 0), 1)])
    with pytest.raises(ValueError):
        Arrangement.of(2, [((1, 0, 0), 0)])
    with pytest.raises(ValueError):
        Arrangement.of(2, [((1, 0), 0), ((0, 1), 0)], labels=[4, 4])


def test_ambient_member_is_zero(example) -> None:
    flagged = dataclasses.replace(example, degeneracy=Degeneracy.AMBIENT_MEMBER)
    assert char_poly(flagged).is_zero
    assert invariants(flagged) == InvariantBundle.zero(2)


def test_zero_bundle_is_below_everything(example) -> None:
    assert InvariantBundle.zero(2) <= invariants(example)
    assert not invariants(example) <= InvariantBundle.zero(2)
    with pytest.raises(ValueError):
        InvariantBundle.zero(1).componentwise_violations(invariants(example))


def test_whitney_formulas_agree(corpus_arrangement) -> None:
    assert whitney_poly(corpus_arrangement) == whitney_poly_via_restrictions(corpus_arrangement)


def test_structural_identities(corpus_arrangement) -> None:
    assert structural_violations(corpus_arrangement) == []


def test_prime_field_copy_has_the_same_invariants(example, example_mod5) -> None:
    rational, modular = invariants(example), invariants(example_mod5)
    assert modular.chi == rational.chi
    assert modular.cij == rational.cij


def test_restriction_and_localization(example) -> None:
    line = Flat.from_hyperplane(example.hyperplane(3))
    restricted = restriction(example, line)
    assert restricted.dim == 1
    assert restricted.labels == (1, 2)
    assert char_poly(restricted) == polynomial([-2, 1])
    assert localization(example, Flat.from_point((0, 0))).labels == (1, 3)
    with pytest.raises(NotAFlatError):
        restriction(example, Flat.from_hyperplane(Hyperplane.of((1, 1), 5)))


def test_restriction_keeps_coinciding_traces(pencil) -> None:
    restricted = restriction(pencil, Flat.from_point((0, 0)))
    assert restricted.dim == 0
    assert len(restricted) == 0
    line = restriction(pencil, Flat.from_hyperplane(pencil.hyperplane(1)))
    assert line.labels == (2, 3)
    assert line.multi
    assert len(build_semilattice(line)) == 2


def test_locate(example) -> None:
    assert locate(example, (0, 5)) == Flat.from_hyperplane(example.hyperplane(1))
    assert locate(example, (1, 0)) == Flat.from_point((1, 0))
    assert locate(example, (3, 3)) == Flat.ambient_space(2)
    with pytest.raises(ValueError):
        locate(example, (1, 2, 3))


def test_essentialize() -> None:
    stripes = Arrangement.of(2, [((1, 0), 0), ((1, 0), 1)])
    assert not stripes.is_essential
    essential, chart = essentialize(stripes)
    assert essential.dim == 1
    assert essential.is_essential
    assert chart.pivots == (0,)
    assert chart.essential_dim == 1
    assert chart.project((3, 7)) == (3,)
    assert chart.embed((3,)) == (3, 0)
    assert char_poly(stripes) == polynomial([0, 1]) * char_poly(essential)


def test_sub_keeps_order(example) -> None:
    sub = example.sub([3, 1])
    assert sub.labels == (1, 3)
    assert example.rank == 2
    assert not example.is_central
    assert Arrangement.of(2, [((1, 0), 0), ((0, 1), 0)]).is_central


def test_order_is_label_containment(corpus_arrangement) -> None:
    lattice = build_semilattice(corpus_arrangement)
    for i, x in enumerate(lattice.flats):
        for j, y in enumerate(lattice.flats):
            by_labels = set(lattice.labels(i)) <= set(lattice.labels(j))
            assert lattice.leq(i, j) == y.is_subset_of(x) == by_labels


def test_mobius_sums_vanish_on_every_interval(corpus_arrangement) -> None:
    lattice = build_semilattice(corpus_arrangement)
    for i in range(len(lattice)):
        row = lattice.mobius_row(i)
        assert sorted(row) == lattice.upset(i)
        for j in row:
            if j != i:
                assert sum(row[k] for k in row if lattice.leq(k, j)) == 0


def test_mobius_rows_under_concurrent_callers(boolean3) -> None:
    lattice = build_semilattice(boolean3)
    fresh = SemiLattice(lattice.arrangement, lattice.flats, lattice.masks)
    indices = list(range(len(lattice))) * 8
    with ThreadPoolExecutor(max_workers=8) as pool:
        rows = list(pool.map(lattice.mobius_row, indices))
    for i, row in zip(indices, rows):
        assert row == fresh.mobius_row(i)
        assert row is lattice.mobius_row(i)


def test_essentialize_a_padded_example() -> None:
    padded = Arrangement.of(3, [((1, 0, 0), 0), ((1, 0, 0), 1), ((0, 1, 0), 0)])
    assert not padded.is_essential
    essential, chart = essentialize(padded)
    assert essential.dim == 2
    assert chart.pivots == (0, 1)
    assert essential == Arrangement.of(2, [((1, 0), 0), ((1, 0), 1), ((0, 1), 0)])
    assert char_poly(essential) == polynomial([2, -3, 1])
    assert char_poly(padded) == polynomial([0, 2, -3, 1])
    assert len(build_semilattice(padded)) == len(build_semilattice(essential))
