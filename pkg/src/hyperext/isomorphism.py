"""Order isomorphism of finite posets given by their Hasse diagrams."""

from __future__ import annotations

from collections import Counter
from typing import Hashable, Union

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from hyperext.arrangement import SemiLattice

Poset = Union[SemiLattice, nx.DiGraph]


def _annotate(graph: nx.DiGraph) -> nx.DiGraph:
    """Attach the ``(height, #downset, #upset)`` fingerprint to every node."""
    height: dict[Hashable, int] = {}
    for node in nx.topological_sort(graph):
        height[node] = max((height[p] + 1 for p in graph.predecessors(node)), default=0)
    for node in graph:
        graph.nodes[node]["fp"] = (
            height[node],
            len(nx.ancestors(graph, node)) + 1,
            len(nx.descendants(graph, node)) + 1,
        )
    return graph


def order_digraph(lattice: SemiLattice) -> nx.DiGraph:
    """Hasse diagram of ``lattice``: an edge ``X -> Y`` for every cover ``X < Y``."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(lattice)))
    graph.add_edges_from(lattice.edges())
    return _annotate(graph)


def product_with_chain(poset: Poset) -> nx.DiGraph:
    """Hasse diagram of ``P x C_2`` where ``C_2`` is the two-element chain."""
    base = poset if isinstance(poset, nx.DiGraph) else order_digraph(poset)
    graph = nx.DiGraph()
    for level in (0, 1):
        graph.add_nodes_from((node, level) for node in base)
        graph.add_edges_from(((u, level), (v, level)) for u, v in base.edges)
    graph.add_edges_from(((node, 0), (node, 1)) for node in base)
    return _annotate(graph)


def _as_digraph(poset: Poset) -> nx.DiGraph:
    if not isinstance(poset, nx.DiGraph):
        return order_digraph(poset)
    if all("fp" in data for _, data in poset.nodes(data=True)):
        return poset
    return _annotate(poset.copy())


def poset_isomorphic(p: Poset, q: Poset) -> bool:
    """True iff an order isomorphism ``P -> Q`` exists.

    Fingerprint multisets are compared first; the backtracking search only
    pairs nodes with equal fingerprints.
    """
    gp, gq = _as_digraph(p), _as_digraph(q)
    if gp.number_of_nodes() != gq.number_of_nodes() or gp.number_of_edges() != gq.number_of_edges():
        return False
    if Counter(fp for _, fp in gp.nodes(data="fp")) != Counter(fp for _, fp in gq.nodes(data="fp")):
        return False
    matcher = DiGraphMatcher(gp, gq, node_match=lambda a, b: a["fp"] == b["fp"])
    return matcher.is_isomorphic()
