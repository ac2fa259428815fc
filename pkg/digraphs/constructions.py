"""
Digraph families and the two cop-number monotone transformations.

Clique substitution replaces every vertex v by one port per neighbour w,
wired so that the ports of v form direction-typed cliques and the port of v
facing w is joined to the port of w facing v exactly as v was joined to w.
Arc substitution replaces every arc by a directed path.
"""
import itertools
import logging
from dataclasses import dataclass

import numpy as np
from django.core.exceptions import ValidationError
from django.db import models

from .core import Digraph, neighborhood_partition

logger = logging.getLogger(__name__)


class PortClass(models.TextChoices):
    MINUS = 'minus', 'Minus'
    PLUS = 'plus', 'Plus'
    PM = 'pm', 'Plus-minus'


def _port_class(d: Digraph, v: int, w: int) -> PortClass:
    if d.has_arc(v, w) and d.has_arc(w, v):
        return PortClass.PM
    if d.has_arc(w, v):
        return PortClass.MINUS
    return PortClass.PLUS


def _port_arc(source: PortClass, target: PortClass) -> bool:
    # every pair inside a vertex's port set is bidirected except plus -> minus
    return not (source == PortClass.PLUS and target == PortClass.MINUS)


@dataclass(frozen=True)
class PortMap:
    """Ports of a clique substitution, indexed by (original vertex, neighbour)."""

    ids: dict
    classes: dict
    owners: tuple

    def port(self, v: int, w: int) -> int:
        return self.ids[(v, w)]

    def port_class(self, v: int, w: int) -> PortClass:
        return self.classes[(v, w)]

    def project(self, port: int) -> int:
        """Original vertex whose clique contains ``port``."""
        return self.owners[port]

    def ports_of(self, v: int) -> list[int]:
        return sorted(pid for (owner, _), pid in self.ids.items() if owner == v)

    @property
    def size(self) -> int:
        return len(self.owners)


def _require_no_isolated(d: Digraph, vertices) -> None:
    for v in vertices:
        if d.degree(v) == 0:
            raise ValidationError(f"Clique substitution is undefined at isolated vertex {v}.")


def clique_substitution_ports(d: Digraph) -> tuple[Digraph, PortMap]:
    """D+ together with its port map."""
    _require_no_isolated(d, range(d.n))
    ids, classes, owners = {}, {}, []
    for v in range(d.n):
        for w in d.neighbors(v):
            ids[(v, w)] = len(owners)
            classes[(v, w)] = _port_class(d, v, w)
            owners.append(v)

    arcs = [(ids[(v, w)], ids[(w, v)]) for v, w in d.sorted_arcs()]
    for v in range(d.n):
        for w1, w2 in itertools.permutations(d.neighbors(v), 2):
            if _port_arc(classes[(v, w1)], classes[(v, w2)]):
                arcs.append((ids[(v, w1)], ids[(v, w2)]))

    port_map = PortMap(ids=ids, classes=classes, owners=tuple(owners))
    logger.debug("clique substitution: %d vertices -> %d ports", d.n, port_map.size)
    return Digraph(port_map.size, arcs), port_map


def clique_substitute_all(d: Digraph) -> Digraph:
    return clique_substitution_ports(d)[0]


def clique_substitute_vertex(d: Digraph, v: int) -> Digraph:
    """
    Substitute a clique at the single vertex ``v``.

    Other vertices keep their relative order (ids above ``v`` shift down by
    one); the new ports follow, one per neighbour of ``v`` in ascending order.
    """
    d.check_vertex(v)
    _require_no_isolated(d, [v])
    partition = neighborhood_partition(d, v)
    keep = {u: i for i, u in enumerate(u for u in range(d.n) if u != v)}
    neighbors = d.neighbors(v)
    port = {w: d.n - 1 + i for i, w in enumerate(neighbors)}
    kind = {}
    for w in neighbors:
        if w in partition.both:
            kind[w] = PortClass.PM
        elif w in partition.in_only:
            kind[w] = PortClass.MINUS
        else:
            kind[w] = PortClass.PLUS

    arcs = [(keep[t], keep[h]) for t, h in d.arcs if v not in (t, h)]
    for w in neighbors:
        if kind[w] in (PortClass.MINUS, PortClass.PM):
            arcs.append((keep[w], port[w]))
        if kind[w] in (PortClass.PLUS, PortClass.PM):
            arcs.append((port[w], keep[w]))
    for w1, w2 in itertools.permutations(neighbors, 2):
        if _port_arc(kind[w1], kind[w2]):
            arcs.append((port[w1], port[w2]))
    return Digraph(d.n - 1 + len(neighbors), arcs)


@dataclass(frozen=True)
class SubdivisionMap:
    """
    ``embedding[v]`` is the copy of original vertex v; ``projection[x]`` sends
    every vertex of the path replacing (u, v), except u's copy, to v.
    """

    embedding: tuple
    projection: tuple
    paths: dict

    def project(self, x: int) -> int:
        return self.projection[x]


def subdivision_map(d: Digraph, m: int) -> tuple[Digraph, SubdivisionMap]:
    if m < 1:
        raise ValidationError(f"Subdivision length must be at least 1, got {m}.")
    projection = list(range(d.n))
    arcs, paths = [], {}
    next_id = d.n
    for tail, head in d.sorted_arcs():
        interior = list(range(next_id, next_id + m - 1))
        next_id += m - 1
        path = [tail, *interior, head]
        arcs.extend(zip(path, path[1:]))
        projection.extend([head] * len(interior))
        paths[(tail, head)] = tuple(path)
    result = Digraph(next_id, arcs)
    return result, SubdivisionMap(
        embedding=tuple(range(d.n)),
        projection=tuple(projection),
        paths=paths,
    )


def subdivide_arcs(d: Digraph, m: int) -> Digraph:
    return subdivision_map(d, m)[0]


def gen_directed_path(k: int) -> Digraph:
    if k < 1:
        raise ValidationError(f"Path order must be at least 1, got {k}.")
    return Digraph(k, ((i, i + 1) for i in range(k - 1)))


def gen_directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise ValidationError(f"Cycle length must be at least 2, got {n}.")
    return Digraph(n, ((i, (i + 1) % n) for i in range(n)))


def gen_complete_bidirected(n: int) -> Digraph:
    if n < 1:
        raise ValidationError(f"Vertex count must be at least 1, got {n}.")
    return Digraph(n, itertools.permutations(range(n), 2))


def gen_in_star(leaves: int) -> Digraph:
    """Center 0 receiving one arc from each leaf 1..leaves."""
    if leaves < 1:
        raise ValidationError(f"Star needs at least one leaf, got {leaves}.")
    return Digraph(leaves + 1, ((leaf, 0) for leaf in range(1, leaves + 1)))


def gen_lemma3_stars() -> list[Digraph]:
    """The four orientations of the 3-star, center 0 and leaves 1, 2, 3."""
    return [
        Digraph(4, [(0, 1), (0, 2), (0, 3)]),
        Digraph(4, [(1, 0), (0, 2), (0, 3)]),
        Digraph(4, [(1, 0), (2, 0), (3, 0)]),
        Digraph(4, [(0, 1), (2, 0), (3, 0)]),
    ]


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, int(q ** 0.5) + 1))


def projective_points(q: int) -> np.ndarray:
    """Normalised representatives of the points of PG(2, q): first nonzero coordinate is 1."""
    points = [
        vector
        for vector in itertools.product(range(q), repeat=3)
        if any(vector) and next(x for x in vector if x) == 1
    ]
    return np.array(sorted(points, reverse=True), dtype=np.int64)


def gen_projective_plane_incidence_doubled(q: int) -> Digraph:
    """
    Point/line incidence graph of PG(2, q) with every edge doubled.

    Points are vertices 0..N-1 and lines N..2N-1 with N = q^2 + q + 1.
    Lines use the same normalised vectors as points (plane duality); point x
    lies on line l iff x . l = 0 mod q.
    """
    if not is_prime(q):
        raise ValidationError(f"Projective plane order must be prime, got {q}.")
    points = projective_points(q)
    size = len(points)
    incidence = (points @ points.T) % q == 0
    arcs = []
    for point, line in zip(*np.nonzero(incidence)):
        arcs.append((int(point), size + int(line)))
        arcs.append((size + int(line), int(point)))
    logger.debug("PG(2, %d): %d points, %d incidences", q, size, len(arcs) // 2)
    return Digraph(2 * size, arcs)


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"Arc probability must lie in [0, 1], got {p}.")


def gen_random_digraph(n: int, p: float, seed: int) -> Digraph:
    if n < 1:
        raise ValidationError(f"Vertex count must be at least 1, got {n}.")
    _check_probability(p)
    rng = np.random.default_rng(seed)
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    return Digraph.from_adjacency_matrix(mask)


def gen_random_oriented_tree(n: int, seed: int) -> Digraph:
    """Random recursive tree with each edge oriented by a fair coin."""
    if n < 1:
        raise ValidationError(f"Vertex count must be at least 1, got {n}.")
    rng = np.random.default_rng(seed)
    arcs = []
    for v in range(1, n):
        parent = int(rng.integers(v))
        arcs.append((parent, v) if rng.random() < 0.5 else (v, parent))
    return Digraph(n, arcs)


def gen_all_digraphs(n: int):
    """Every digraph on n labelled vertices, in arc-bitmask order."""
    if n < 1:
        raise ValidationError(f"Vertex count must be at least 1, got {n}.")
    pairs = list(itertools.permutations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield mask, Digraph(n, (pair for bit, pair in enumerate(pairs) if mask >> bit & 1))
