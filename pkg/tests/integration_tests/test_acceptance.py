import pytest
from sympy import nextprime

from hyperext.arrangement import InvariantBundle, char_poly, invariants
from hyperext.extension import classify_extensions, verify_classification, verify_monotonicity
from hyperext.finitefield import (
    count_complement,
    ff_convolution_spot_check,
    good_prime,
    reduce_mod_p,
    spot_check_size,
    verify_convolution,
)
from hyperext.restriction import verify_restriction_monotonicity

# (s^1 row, s^0 row) of the Whitney polynomial per stratum, strata sorted by dimension then labels
EXAMPLE_CLASSES = [
    ((0, 0, 0), (0, 0, 0)),
    ((-4, 3, 0), (2, -3, 1)),
    ((-4, 3, 0), (2, -3, 1)),
    ((-4, 3, 0), (2, -3, 1)),
    ((-4, 3, 0), (2, -3, 1)),
    ((-8, 4, 0), (4, -4, 1)),
    ((-6, 4, 0), (3, -4, 1)),
    ((-7, 4, 0), (4, -4, 1)),
    ((-7, 4, 0), (4, -4, 1)),
    ((-10, 4, 0), (5, -4, 1)),
]


def test_example_whitney_classes(example) -> None:
    report = classify_extensions(example)
    rows = [(s.invariants.whitney.grid[1], s.invariants.whitney.grid[0]) for s in report.strata]
    assert rows == EXAMPLE_CLASSES
    assert [s.invariants.regions for s in report.strata] == [0, 6, 6, 6, 6, 9, 8, 9, 9, 10]
    assert [s.invariants.whitney.grid[2][0] for s in report.strata] == [0, 2, 2, 2, 2, 4, 3, 3, 3, 5]
    assert report.strata[0].invariants == InvariantBundle.zero(2)


def test_example_counts_at_three_good_primes(example) -> None:
    floor = 2
    for _ in range(3):
        p, _cert = good_prime(example, floor)
        assert count_complement(reduce_mod_p(example, p)) == char_poly(example).eval(p)
        floor = int(nextprime(p))
    assert count_complement(reduce_mod_p(example, 5)) == 12


def test_convolution_identity(corpus_arrangement) -> None:
    assert verify_convolution(corpus_arrangement).equal


def test_spot_check_at_a_good_prime(corpus_arrangement) -> None:
    p, _ = good_prime(corpus_arrangement)
    if spot_check_size(corpus_arrangement, p) > 10**7:
        pytest.skip(f"p={p} is too large to enumerate")
    spot = ff_convolution_spot_check(corpus_arrangement, p)
    assert spot.strata_sum is not None
    assert spot.equal


def test_example_classification_with_five_trials(example) -> None:
    report = verify_classification(example, trials=5, seed=2024)
    assert report.ok, report.failures


def test_corpus_classification_with_five_trials(corpus_arrangement) -> None:
    report = verify_classification(corpus_arrangement, trials=5, seed=2024)
    assert report.ok, report.failures
    assert report.checked > 0


def test_corpus_monotonicity(corpus_arrangement) -> None:
    assert verify_monotonicity(corpus_arrangement) == []
    assert verify_restriction_monotonicity(corpus_arrangement, seed=0) == []


def test_zero_bundle_only_at_the_origin(example) -> None:
    report = classify_extensions(example)
    zero = InvariantBundle.zero(2)
    assert [s.index for s in report.strata if s.invariants == zero] == [0]
    assert all(s.invariants.dim == 2 for s in report.strata)
    assert invariants(example) in [s.invariants for s in report.strata]
