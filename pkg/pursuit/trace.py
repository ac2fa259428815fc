"""Replay of optimal play extracted from a solved game."""
import logging
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from digraphs.core import Digraph

from .exceptions import SolverInvariantError
from .game import GamePosition, Side, legal_moves
from .solver import COPS, SolveResult, solve

logger = logging.getLogger(__name__)


@dataclass
class GameTrace:
    placement_cops: tuple
    placement_robber: int
    snapshots: list = field(default_factory=list)
    captured: bool = False
    # (first index, repeated index) of the position the robber cycles through
    certificate: tuple | None = None

    @property
    def outcome(self) -> str:
        return 'capture' if self.captured else 'robber-win'

    @property
    def half_moves(self) -> int:
        return max(len(self.snapshots) - 1, 0)


def choose_placement(result: SolveResult) -> tuple[tuple, int]:
    """
    Cops take the placement with the most losing robber replies (first in
    lexicographic order on ties); the robber then escapes if it can, else
    maximises the capture distance.
    """
    cop_wins = result.win[:, :, COPS]
    config = int(np.argmax(cop_wins.sum(axis=1)))
    cops = result.space.configs[config]
    escapes = np.nonzero(~cop_wins[config])[0]
    if escapes.size:
        return cops, int(escapes[0])
    return cops, int(np.argmax(result.rank[config, :, COPS]))


def _robber_reply(result: SolveResult, pos: GamePosition) -> GamePosition:
    options = legal_moves(result.digraph, pos)
    if result.is_win(pos):
        # max() keeps the first maximum, options are sorted by robber vertex
        return max(options, key=result.rank_of)
    return next(option for option in options if not result.is_win(option))


def _cop_reply(result: SolveResult, pos: GamePosition) -> GamePosition:
    best = result.best_move_of(pos)
    if best is not None:
        return best
    return legal_moves(result.digraph, pos)[0]


def play_trace(
    d: Digraph,
    k: int,
    max_rounds: int | None = None,
    state_budget: int | None = None,
    result: SolveResult | None = None,
) -> GameTrace:
    max_rounds = settings.PURSUIT['MAX_ROUNDS'] if max_rounds is None else max_rounds
    if max_rounds < 1:
        raise ValidationError(f"max_rounds must be at least 1, got {max_rounds}.")
    if result is None:
        result = solve(d, k, state_budget)

    cops, robber = choose_placement(result)
    pos = GamePosition(cops, robber, Side.COPS)
    trace = GameTrace(placement_cops=cops, placement_robber=robber, snapshots=[pos])
    seen = {pos: 0}

    for _ in range(2 * max_rounds):
        if pos.captured:
            trace.captured = True
            return trace
        if pos.to_move == Side.COPS:
            pos = _cop_reply(result, pos)
        else:
            pos = _robber_reply(result, pos)
        trace.snapshots.append(pos)
        if pos in seen and not pos.captured:
            trace.certificate = (seen[pos], len(trace.snapshots) - 1)
            logger.debug("robber escapes on %r with k=%d, cycle %s", d, k, trace.certificate)
            return trace
        seen.setdefault(pos, len(trace.snapshots) - 1)

    if pos.captured:
        trace.captured = True
        return trace
    raise SolverInvariantError(
        f"No capture or repetition within {max_rounds} rounds (k={k}, start rank "
        f"{result.rank_of(trace.snapshots[0])})."
    )
