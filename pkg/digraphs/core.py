"""
Finite simple digraphs and their elementary queries.

A digraph has vertices 0..n-1 and a set of arcs (tail, head). Loops and
repeated arcs are rejected; an opposite pair (u, v), (v, u) is allowed and
counts as a 2-cycle of the underlying multigraph.
"""
import logging
import math
from typing import Iterable, NamedTuple

import networkx as nx
import numpy as np
from django.core.exceptions import ValidationError

logger = logging.getLogger(__name__)


class Digraph:
    """Immutable digraph on dense integer vertex ids."""

    __slots__ = ('n', 'arcs', 'out_neighbors', 'in_neighbors')

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValidationError(f"Vertex count must be non-negative, got {n}.")
        arc_set = set()
        for tail, head in arcs:
            tail, head = int(tail), int(head)
            if not (0 <= tail < n and 0 <= head < n):
                raise ValidationError(f"Arc ({tail}, {head}) references a vertex outside 0..{n - 1}.")
            if tail == head:
                raise ValidationError(f"Loop ({tail}, {head}) is not allowed.")
            if (tail, head) in arc_set:
                raise ValidationError(f"Duplicate arc ({tail}, {head}).")
            arc_set.add((tail, head))

        out_lists = [[] for _ in range(n)]
        in_lists = [[] for _ in range(n)]
        for tail, head in sorted(arc_set):
            out_lists[tail].append(head)
            in_lists[head].append(tail)

        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'arcs', frozenset(arc_set))
        object.__setattr__(self, 'out_neighbors', tuple(tuple(h) for h in out_lists))
        object.__setattr__(self, 'in_neighbors', tuple(tuple(sorted(t)) for t in in_lists))

    def __setattr__(self, name, value):
        raise AttributeError("Digraph is immutable")

    @classmethod
    def from_adjacency_matrix(cls, matrix) -> 'Digraph':
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValidationError(f"Adjacency matrix must be square, got shape {matrix.shape}.")
        if np.any(np.diagonal(matrix)):
            raise ValidationError("Adjacency matrix has a nonzero diagonal entry (loop).")
        tails, heads = np.nonzero(matrix)
        return cls(matrix.shape[0], zip(tails.tolist(), heads.tolist()))

    def adjacency_matrix(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n), dtype=np.int8)
        for tail, head in self.arcs:
            matrix[tail, head] = 1
        return matrix

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def has_arc(self, tail: int, head: int) -> bool:
        return (tail, head) in self.arcs

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValidationError(f"Vertex {v} is outside 0..{self.n - 1}.")

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbours of v in the underlying simple graph, ascending."""
        return tuple(sorted(set(self.out_neighbors[v]) | set(self.in_neighbors[v])))

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.sorted_arcs())
        return graph

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.sorted_arcs()})"


class NeighborhoodPartition(NamedTuple):
    in_only: frozenset
    out_only: frozenset
    both: frozenset


def neighborhood_partition(d: Digraph, v: int) -> NeighborhoodPartition:
    d.check_vertex(v)
    heads = set(d.out_neighbors[v])
    tails = set(d.in_neighbors[v])
    return NeighborhoodPartition(
        in_only=frozenset(tails - heads),
        out_only=frozenset(heads - tails),
        both=frozenset(heads & tails),
    )


def _require_vertices(d: Digraph) -> None:
    if d.n < 1:
        raise ValidationError("Connectivity is undefined for the empty digraph.")


def is_strongly_connected(d: Digraph) -> bool:
    _require_vertices(d)
    return nx.is_strongly_connected(d.to_networkx())


def is_weakly_connected(d: Digraph) -> bool:
    _require_vertices(d)
    return nx.is_weakly_connected(d.to_networkx())


def strongly_connected_components(d: Digraph) -> list[frozenset]:
    components = (frozenset(c) for c in nx.strongly_connected_components(d.to_networkx()))
    return sorted(components, key=min)


def count_sources(d: Digraph) -> int:
    return sum(1 for v in range(d.n) if not d.in_neighbors[v])


def has_opposite_pair(d: Digraph) -> bool:
    return any((head, tail) in d.arcs for tail, head in d.arcs)


def underlying_girth(d: Digraph) -> int | float:
    """
    Shortest cycle of the underlying multigraph; ``math.inf`` when acyclic.
    An opposite arc pair is a cycle of length 2.
    """
    if has_opposite_pair(d):
        return 2
    girth = nx.girth(d.to_networkx().to_undirected())
    return girth if math.isinf(girth) else int(girth)


def induced_subdigraph(d: Digraph, vertices) -> Digraph:
    """Subdigraph induced on ``vertices``, relabelled 0.. in the given order."""
    vertices = list(vertices)
    for v in vertices:
        d.check_vertex(v)
    if len(set(vertices)) != len(vertices):
        raise ValidationError("Induced subdigraph vertices must be distinct.")
    position = {v: i for i, v in enumerate(vertices)}
    arcs = [
        (position[tail], position[head])
        for tail, head in d.arcs
        if tail in position and head in position
    ]
    return Digraph(len(vertices), arcs)


def relabel(d: Digraph, permutation) -> Digraph:
    permutation = [int(p) for p in permutation]
    if sorted(permutation) != list(range(d.n)):
        raise ValidationError(f"{permutation} is not a permutation of 0..{d.n - 1}.")
    return Digraph(d.n, ((permutation[t], permutation[h]) for t, h in d.arcs))
