"""
Positions and moves of the k-cop pursuit game.

Both players move along arc direction (tail to head) and may always stay.
Cop pieces are interchangeable, so a position stores them sorted.
"""
import itertools
from dataclasses import dataclass

from django.core.exceptions import ValidationError
from django.db import models

from digraphs.core import Digraph


class Side(models.TextChoices):
    COPS = 'cops', 'Cops'
    ROBBER = 'robber', 'Robber'

    @property
    def other(self) -> 'Side':
        return Side.ROBBER if self == Side.COPS else Side.COPS


@dataclass(frozen=True, order=True)
class GamePosition:
    cops: tuple
    robber: int
    to_move: Side

    @classmethod
    def create(cls, cops, robber: int, to_move: Side) -> 'GamePosition':
        return cls(tuple(sorted(int(c) for c in cops)), int(robber), Side(to_move))

    @property
    def captured(self) -> bool:
        return self.robber in self.cops

    def validate(self, d: Digraph) -> None:
        for v in (*self.cops, self.robber):
            d.check_vertex(v)
        if list(self.cops) != sorted(self.cops):
            raise ValidationError(f"Cop positions {self.cops} are not in canonical order.")


def moves_from(d: Digraph, v: int) -> tuple[int, ...]:
    """Staying put, then every out-neighbour."""
    return (v, *d.out_neighbors[v])


def cop_options(d: Digraph, cops) -> list[tuple]:
    """Canonical cop multisets reachable in one cop turn."""
    return sorted({
        tuple(sorted(choice))
        for choice in itertools.product(*(moves_from(d, c) for c in cops))
    })


def legal_moves(d: Digraph, pos: GamePosition) -> list[GamePosition]:
    pos.validate(d)
    if pos.to_move == Side.COPS:
        return [GamePosition(cops, pos.robber, Side.ROBBER) for cops in cop_options(d, pos.cops)]
    return [GamePosition(pos.cops, r, Side.COPS) for r in sorted(moves_from(d, pos.robber))]
