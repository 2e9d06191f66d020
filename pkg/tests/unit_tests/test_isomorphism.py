import networkx as nx

from hyperext.arrangement import Arrangement, build_semilattice
from hyperext.isomorphism import order_digraph, poset_isomorphic, product_with_chain


def test_isomorphic_to_itself_and_its_reduction(example, example_mod5) -> None:
    lattice = build_semilattice(example)
    assert poset_isomorphic(lattice, lattice)
    assert poset_isomorphic(lattice, build_semilattice(example_mod5))


def test_different_sizes(example, pencil) -> None:
    assert not poset_isomorphic(build_semilattice(example), build_semilattice(pencil))


def test_same_size_different_shape(boolean3) -> None:
    # four lines, three of them parallel: 8 elements like the Boolean lattice of rank 3
    comb = Arrangement.of(2, [((1, 0), 0), ((1, 0), 1), ((1, 0), 2), ((0, 1), 0)])
    assert len(build_semilattice(comb)) == len(build_semilattice(boolean3)) == 8
    assert not poset_isomorphic(build_semilattice(comb), build_semilattice(boolean3))


def test_product_with_chain(boolean2) -> None:
    point = Arrangement.of(1, [((1,), 0)])
    assert poset_isomorphic(product_with_chain(build_semilattice(point)), build_semilattice(boolean2))
    square = product_with_chain(build_semilattice(boolean2))
    assert square.number_of_nodes() == 8


def test_order_digraph_fingerprints(example) -> None:
    graph = order_digraph(build_semilattice(example))
    assert graph.nodes[0]["fp"] == (0, 1, 6)
    assert sorted(fp[0] for _, fp in graph.nodes(data="fp")) == [0, 1, 1, 1, 2, 2]


def test_plain_digraphs() -> None:
    chain = nx.DiGraph([(0, 1), (1, 2)])
    other = nx.DiGraph([("a", "b"), ("b", "c")])
    fork = nx.DiGraph([(0, 1), (0, 2)])
    assert poset_isomorphic(chain, other)
    assert not poset_isomorphic(chain, fork)
