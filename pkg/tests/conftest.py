import numpy as np
import pytest

from hyperext.arrangement import Arrangement
from hyperext.exactq import GF, Hyperplane
from hyperext.utils import configure_logging


def example_arrangement() -> Arrangement:
    """x1 = 0, x1 = 1 and x2 = 0 in the plane."""
    return Arrangement.of(2, [((1, 0), 0), ((1, 0), 1), ((0, 1), 0)])


def boolean_arrangement(dim: int) -> Arrangement:
    return Arrangement.of(dim, [(tuple(int(i == j) for j in range(dim)), 0) for i in range(dim)])


def pencil_arrangement() -> Arrangement:
    return Arrangement.of(2, [((1, 0), 0), ((0, 1), 0), ((1, -1), 0)])


def shifted_boolean_arrangement(dim: int) -> Arrangement:
    """x_i = i for every coordinate."""
    return Arrangement.of(dim, [(tuple(int(i == j) for j in range(dim)), i + 1) for i in range(dim)])


def degenerate_arrangement() -> Arrangement:
    """Four planes through the x3-axis cut by the parallel planes x3 = 0 and x3 = 1."""
    return Arrangement.of(
        3,
        [((1, 0, 0), 0), ((0, 1, 0), 0), ((1, 1, 0), 0), ((1, -1, 0), 0), ((0, 0, 1), 0), ((0, 0, 1), 1)],
    )


def random_arrangement(rng: np.random.Generator, dim: int, size: int) -> Arrangement:
    """Essential arrangement with small integer data drawn from ``rng``."""
    while True:
        hyperplanes: list[Hyperplane] = []
        for _ in range(200):
            if len(hyperplanes) == size:
                break
            normal = [int(v) for v in rng.integers(-2, 3, size=dim)]
            if not any(normal):
                continue
            h = Hyperplane.of(normal, int(rng.integers(-2, 3)))
            if h not in hyperplanes:
                hyperplanes.append(h)
        arrangement = Arrangement.of(dim, hyperplanes)
        if arrangement.is_essential:
            return arrangement


def _random_corpus(seed: int = 7) -> list[tuple[str, Arrangement]]:
    rng = np.random.default_rng(seed)
    corpus = [(f"random-2d-{k}", random_arrangement(rng, 2, 3 + k % 2)) for k in range(4)]
    corpus.append(("random-3d", random_arrangement(rng, 3, 4)))
    corpus += [(f"random-2d-m{m}", random_arrangement(rng, 2, m)) for m in (5, 6, 7)]
    corpus.append(("random-3d-m5", random_arrangement(rng, 3, 5)))
    return corpus


SMALL_CORPUS = [
    ("example", example_arrangement()),
    ("boolean-1", boolean_arrangement(1)),
    ("boolean-2", boolean_arrangement(2)),
    ("pencil", pencil_arrangement()),
    ("two-points", Arrangement.of(1, [((1,), 0), ((1,), 1)])),
    ("generic-triangle", Arrangement.of(2, [((1, 0), 0), ((0, 1), 0), ((1, 1), 1)])),
]

CORPUS = [
    *SMALL_CORPUS,
    ("boolean-3", boolean_arrangement(3)),
    ("shifted-boolean-2", shifted_boolean_arrangement(2)),
    ("shifted-boolean-3", shifted_boolean_arrangement(3)),
    ("braid-plus", Arrangement.of(3, [((1, -1, 0), 0), ((0, 1, -1), 0), ((1, 0, -1), 0), ((1, 0, 0), 0)])),
    ("pencil-4", Arrangement.of(2, [((1, 0), 0), ((0, 1), 0), ((1, 1), 0), ((1, -1), 0)])),
    ("generic-4-lines", Arrangement.of(2, [((1, 0), 0), ((0, 1), 0), ((1, 1), 1), ((1, -1), 2)])),
    ("grid", Arrangement.of(2, [((1, 0), 0), ((1, 0), 1), ((0, 1), 0), ((0, 1), 1)])),
    ("degenerate", degenerate_arrangement()),
    *_random_corpus(),
]


@pytest.fixture(autouse=True)
def _log_to_current_stderr() -> None:
    """Bind structlog to this test's stderr so logs never land on captured stdout or a closed stream."""
    configure_logging()


@pytest.fixture
def example() -> Arrangement:
    return example_arrangement()


@pytest.fixture
def example_mod5() -> Arrangement:
    return Arrangement.of(2, [((1, 0), 0), ((1, 0), 1), ((0, 1), 0)], fld=GF(5))


@pytest.fixture
def boolean2() -> Arrangement:
    return boolean_arrangement(2)


@pytest.fixture
def boolean3() -> Arrangement:
    return boolean_arrangement(3)


@pytest.fixture
def pencil() -> Arrangement:
    return pencil_arrangement()


@pytest.fixture(params=[a for _, a in CORPUS], ids=[name for name, _ in CORPUS])
def corpus_arrangement(request) -> Arrangement:
    return request.param


@pytest.fixture(params=[a for _, a in SMALL_CORPUS], ids=[name for name, _ in SMALL_CORPUS])
def small_arrangement(request) -> Arrangement:
    return request.param
