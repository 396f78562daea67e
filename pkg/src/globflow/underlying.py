"""Underlying-space signature of a decomposition script.

Forgetting direction, every fresh cell of a script contributes one
undirected segment between its attachment endpoints, so the underlying
space of a discrete-cell decomposition is a multigraph.  Connected
component count and first Betti number classify its homotopy type
completely.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._util import UnionFind
from .builder import DecompositionScript, build
from .core import StateId


@dataclass(frozen=True)
class UnderlyingGraph:
    """Undirected multigraph: one edge per fresh cell of each step."""

    vertices: frozenset[StateId]
    edges: tuple[tuple[StateId, StateId], ...]


@dataclass(frozen=True)
class HomotopySignature:
    components: int
    betti1: int


def underlying_graph(script: DecompositionScript) -> UnderlyingGraph:
    """The underlying multigraph of a script; the script is built first so
    invalid scripts fail the same way :func:`globflow.builder.build` does."""
    build(script)
    edges = []
    for raw in script.steps:
        lo, hi = sorted(raw.endpoints)
        for _ in set(raw.cells) - set(raw.boundary):
            edges.append((lo, hi))
    return UnderlyingGraph(frozenset(script.skeleton0), tuple(sorted(edges)))


def homotopy_signature(graph: UnderlyingGraph) -> HomotopySignature:
    """(component count, E - V + C): a complete homotopy invariant of a graph."""
    uf = UnionFind(graph.vertices)
    for a, b in graph.edges:
        uf.union(a, b)
    components = len(uf.classes())
    betti1 = len(graph.edges) - len(graph.vertices) + components
    return HomotopySignature(components, betti1)


def subdivide_edge(graph: UnderlyingGraph, index: int, midpoint: StateId) -> UnderlyingGraph:
    """Replace edge ``index`` by two edges through a fresh vertex."""
    if midpoint in graph.vertices:
        raise ValueError(f"midpoint {midpoint!r} is already a vertex")
    a, b = graph.edges[index]
    edges = list(graph.edges)
    del edges[index]
    edges.extend([tuple(sorted((a, midpoint))), tuple(sorted((midpoint, b)))])
    return UnderlyingGraph(graph.vertices | {midpoint}, tuple(sorted(edges)))


def to_dot(graph: UnderlyingGraph) -> str:
    """Byte-stable DOT rendering (sorted vertices and edges)."""
    lines = ["graph underlying {"]
    for v in sorted(graph.vertices):
        lines.append(f'  "{v}";')
    for a, b in graph.edges:
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
