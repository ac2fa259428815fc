"""
Forbidden-substructure tests.

All searches walk ordered vertex tuples in lexicographic order and return
the first witness found, so results are deterministic.
"""
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

from django.core.exceptions import ValidationError
from django.db import models

from .constructions import gen_directed_path, gen_lemma3_stars
from .core import Digraph, is_weakly_connected, underlying_girth

logger = logging.getLogger(__name__)


class PatternKind(models.TextChoices):
    INDUCED_ISO = 'induced-iso', 'Induced isomorphic copy'
    PK_SUBGRAPH = 'pk-subgraph', 'Directed path subgraph'
    PK_STAR = 'pk-star', 'Upper-triangular path pattern'


@dataclass(frozen=True)
class PatternWitness:
    vertices: tuple
    kind: PatternKind


def _check_k(k: int) -> None:
    if k < 2:
        raise ValidationError(f"Path order k must be at least 2, got {k}.")


def find_induced(host: Digraph, pattern: Digraph) -> PatternWitness | None:
    """First ordered tuple of host vertices inducing a copy of ``pattern``."""
    if pattern.n > host.n:
        return None
    out_degree = [len(host.out_neighbors[v]) for v in range(host.n)]
    in_degree = [len(host.in_neighbors[v]) for v in range(host.n)]
    need_out = [len(pattern.out_neighbors[i]) for i in range(pattern.n)]
    need_in = [len(pattern.in_neighbors[i]) for i in range(pattern.n)]
    chosen: list[int] = []
    used = set()

    def compatible(x: int) -> bool:
        i = len(chosen)
        if out_degree[x] < need_out[i] or in_degree[x] < need_in[i]:
            return False
        for j, y in enumerate(chosen):
            if pattern.has_arc(j, i) != host.has_arc(y, x):
                return False
            if pattern.has_arc(i, j) != host.has_arc(x, y):
                return False
        return True

    def extend() -> bool:
        if len(chosen) == pattern.n:
            return True
        for x in range(host.n):
            if x in used or not compatible(x):
                continue
            chosen.append(x)
            used.add(x)
            if extend():
                return True
            used.discard(chosen.pop())
        return False

    if extend():
        return PatternWitness(tuple(chosen), PatternKind.INDUCED_ISO)
    return None


def find_pk_subgraph(host: Digraph, k: int) -> PatternWitness | None:
    """First directed path on k distinct vertices, chords allowed."""
    _check_k(k)
    if k > host.n:
        return None
    path: list[int] = []

    def extend() -> bool:
        if len(path) == k:
            return True
        candidates = host.out_neighbors[path[-1]] if path else range(host.n)
        for x in candidates:
            if x in path:
                continue
            path.append(x)
            if extend():
                return True
            path.pop()
        return False

    if extend():
        return PatternWitness(tuple(path), PatternKind.PK_SUBGRAPH)
    return None


def find_pk_star(host: Digraph, k: int) -> PatternWitness | None:
    """
    First tuple (v1..vk) whose forward arcs are exactly the consecutive ones.

    Arcs from a later to an earlier vertex are unconstrained. Hosts with fewer
    than k vertices are P_k*-free.
    """
    _check_k(k)
    if k > host.n:
        return None
    path: list[int] = []

    def allowed(x: int) -> bool:
        if x in path:
            return False
        return not any(host.has_arc(y, x) for y in path[:-1])

    def extend() -> bool:
        if len(path) == k:
            return True
        candidates = host.out_neighbors[path[-1]] if path else range(host.n)
        for x in candidates:
            if not allowed(x):
                continue
            path.append(x)
            if extend():
                return True
            path.pop()
        return False

    if extend():
        return PatternWitness(tuple(path), PatternKind.PK_STAR)
    return None


def validate_witness(host: Digraph, witness: PatternWitness, pattern: Digraph | None = None) -> bool:
    vertices = witness.vertices
    if len(set(vertices)) != len(vertices) or any(not 0 <= v < host.n for v in vertices):
        return False
    size = len(vertices)
    if witness.kind == PatternKind.INDUCED_ISO:
        if pattern is None or pattern.n != size:
            return False
        return all(
            pattern.has_arc(i, j) == host.has_arc(vertices[i], vertices[j])
            for i in range(size) for j in range(size) if i != j
        )
    if witness.kind == PatternKind.PK_SUBGRAPH:
        return all(host.has_arc(a, b) for a, b in zip(vertices, vertices[1:]))
    return all(
        host.has_arc(vertices[i], vertices[j]) == (j == i + 1)
        for i in range(size) for j in range(i + 1, size)
    )


class ChainVerdict(NamedTuple):
    pk_subgraph_free: bool
    pk_star_free: bool
    pk_induced_free: bool

    @property
    def holds(self) -> bool:
        """Subgraph-free implies P_k*-free implies induced-free."""
        first = not self.pk_subgraph_free or self.pk_star_free
        second = not self.pk_star_free or self.pk_induced_free
        return first and second


def containment_chain_check(d: Digraph, k: int) -> ChainVerdict:
    _check_k(k)
    verdict = ChainVerdict(
        pk_subgraph_free=find_pk_subgraph(d, k) is None,
        pk_star_free=find_pk_star(d, k) is None,
        pk_induced_free=find_induced(d, gen_directed_path(k)) is None,
    )
    if not verdict.holds:
        logger.error("containment chain broken for k=%d on %r: %s", k, d, verdict)
    return verdict


class ObstructionKind(models.TextChoices):
    TRIVIAL = 'trivial', 'Single vertex'
    CYCLE = 'cycle', 'Underlying cycle'
    STAR = 'star', 'Induced 3-star'
    PATH = 'path', 'Underlying path'


@dataclass(frozen=True)
class ObstructionReport:
    """
    Which unbounded family is H-free for a weakly connected pattern H.

    cycle: trees (and high-girth subdivisions) avoid H.
    star: clique substitutions avoid the induced 3-star ``star_index``.
    path: doubled projective planes avoid the induced arc H contains.
    """

    kind: ObstructionKind
    witness: PatternWitness | None = None
    girth: int | None = None
    star_index: int | None = None


def obstruction_family(h: Digraph) -> ObstructionReport:
    if h.n < 1 or not is_weakly_connected(h):
        raise ValidationError("Obstruction analysis needs a weakly connected pattern.")
    if h.n == 1:
        return ObstructionReport(ObstructionKind.TRIVIAL)
    girth = underlying_girth(h)
    if not math.isinf(girth):
        return ObstructionReport(ObstructionKind.CYCLE, girth=girth)
    if any(h.degree(v) >= 3 for v in range(h.n)):
        for index, star in enumerate(gen_lemma3_stars()):
            witness = find_induced(h, star)
            if witness is not None:
                return ObstructionReport(ObstructionKind.STAR, witness=witness, star_index=index)
    witness = find_induced(h, gen_directed_path(2))
    return ObstructionReport(ObstructionKind.PATH, witness=witness)
