import numpy as np
import pytest

from hyperext.arrangement import invariants
from hyperext.nbc import (
    UnknownLabelError,
    affine_circuits,
    cij_via_nbc,
    intersection,
    is_independent,
    nbc_counts,
    nbc_sets,
    rank_of_labels,
)


def test_pencil_circuits(pencil) -> None:
    catalog = affine_circuits(pencil)
    assert catalog.circuits == ((1, 2, 3),)
    assert catalog.broken_circuits == ((2, 3),)
    assert nbc_sets(pencil, 2) == [(1, 2), (1, 3)]
    assert nbc_counts(pencil) == (1, 3, 2)


def test_pencil_under_another_order(pencil) -> None:
    assert affine_circuits(pencil, (3, 1, 2)).broken_circuits == ((1, 2),)
    assert nbc_sets(pencil, 2, (3, 1, 2)) == [(1, 3), (2, 3)]
    assert nbc_counts(pencil, (3, 1, 2)) == (1, 3, 2)


def test_parallel_lines_form_no_circuit(example) -> None:
    assert affine_circuits(example).circuits == ()
    assert nbc_sets(example, 2) == [(1, 3), (2, 3)]
    assert nbc_counts(example) == invariants(example).w_plus


def test_independence_and_rank(example) -> None:
    assert intersection(example, [1, 2]) is None
    assert not is_independent(example, [1, 2])
    assert is_independent(example, [1, 3])
    assert is_independent(example, [])
    assert rank_of_labels(example, [1, 2]) == 1
    assert rank_of_labels(example, [1, 2, 3]) == 2
    assert rank_of_labels(example, []) == 0


def test_unknown_labels(example) -> None:
    with pytest.raises(UnknownLabelError):
        rank_of_labels(example, [1, 9])
    with pytest.raises(KeyError):
        rank_of_labels(example, [9])


def test_bad_arguments(pencil) -> None:
    with pytest.raises(ValueError):
        nbc_sets(pencil, 3)
    with pytest.raises(ValueError):
        affine_circuits(pencil, (1, 2))


def test_nbc_sets_are_independent(corpus_arrangement) -> None:
    for k in range(corpus_arrangement.dim + 1):
        for labels in nbc_sets(corpus_arrangement, k):
            assert is_independent(corpus_arrangement, labels)


def test_nbc_counts_match_whitney_numbers(corpus_arrangement) -> None:
    bundle = invariants(corpus_arrangement)
    rng = np.random.default_rng(3)
    orders = [corpus_arrangement.labels]
    orders += [tuple(int(v) for v in rng.permutation(corpus_arrangement.labels)) for _ in range(3)]
    for order in orders:
        assert nbc_counts(corpus_arrangement, order) == bundle.w_plus
        assert cij_via_nbc(corpus_arrangement, order) == bundle.cij
