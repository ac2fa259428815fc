"""
Exact solver for the k-cop pursuit game.

Positions are indexed as ((config * n) + robber) * 2 + side, where config
is the index of the sorted cop multiset in lexicographic order. Cop wins are
computed by backward induction from the capture positions: a cop-to-move
position is won as soon as one successor is, a robber-to-move position once
its count of not-yet-won successors drops to zero. Processing positions in
FIFO order assigns each its optimal distance to capture in half-moves.
"""
import itertools
import logging
import math
import time
from collections import deque
from dataclasses import dataclass

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from digraphs.core import Digraph

from .exceptions import StateBudgetExceeded
from .game import GamePosition, Side, cop_options, moves_from

logger = logging.getLogger(__name__)

COPS, ROBBER = 0, 1
SIDE_INDEX = {Side.COPS: COPS, Side.ROBBER: ROBBER}


def state_count(n: int, k: int) -> int:
    return math.comb(n + k - 1, k) * n * 2


class StateSpace:
    """Cop multisets of size k on d, with their one-turn successors."""

    def __init__(self, d: Digraph, k: int):
        self.digraph = d
        self.k = k
        self.configs = list(itertools.combinations_with_replacement(range(d.n), k))
        self.config_index = {cops: i for i, cops in enumerate(self.configs)}
        self.cop_successors = [
            [self.config_index[succ] for succ in cop_options(d, cops)]
            for cops in self.configs
        ]

    def __len__(self):
        return len(self.configs) * self.digraph.n * 2

    def locate(self, pos: GamePosition) -> tuple[int, int, int]:
        return self.config_index[pos.cops], pos.robber, SIDE_INDEX[pos.to_move]

    def position(self, config: int, robber: int, side: int) -> GamePosition:
        to_move = Side.COPS if side == COPS else Side.ROBBER
        return GamePosition(self.configs[config], robber, to_move)


@dataclass
class SolveResult:
    """
    ``win[c, r, s]``: cops force capture from (configs[c], r, side s).
    ``rank``: optimal half-moves to capture, -1 where the robber escapes.
    ``best_move[c, r]``: successor config for cop-to-move wins with rank > 0.
    """

    space: StateSpace
    win: np.ndarray
    rank: np.ndarray
    best_move: np.ndarray

    @property
    def k(self) -> int:
        return self.space.k

    @property
    def digraph(self) -> Digraph:
        return self.space.digraph

    def is_win(self, pos: GamePosition) -> bool:
        return bool(self.win[self.space.locate(pos)])

    def rank_of(self, pos: GamePosition) -> int:
        return int(self.rank[self.space.locate(pos)])

    def best_move_of(self, pos: GamePosition) -> GamePosition | None:
        if pos.to_move != Side.COPS:
            return None
        config, robber, _ = self.space.locate(pos)
        succ = int(self.best_move[config, robber])
        if succ < 0:
            return None
        return self.space.position(succ, robber, ROBBER)

    def positions(self):
        for config in range(len(self.space.configs)):
            for robber in range(self.digraph.n):
                for side in (COPS, ROBBER):
                    yield self.space.position(config, robber, side)

    def is_fixed_point(self) -> bool:
        """One more application of the win operator changes nothing."""
        d = self.digraph
        for config, cops in enumerate(self.space.configs):
            for robber in range(d.n):
                if robber in cops:
                    if not (self.win[config, robber, COPS] and self.win[config, robber, ROBBER]):
                        return False
                    continue
                cop_step = any(self.win[s, robber, ROBBER] for s in self.space.cop_successors[config])
                robber_step = all(self.win[config, r, COPS] for r in moves_from(d, robber))
                if cop_step != self.win[config, robber, COPS] or robber_step != self.win[config, robber, ROBBER]:
                    return False
        return True


def solve(d: Digraph, k: int, state_budget: int | None = None) -> SolveResult:
    if k < 1:
        raise ValidationError(f"Cop count must be at least 1, got {k}.")
    if d.n < 1:
        raise ValidationError("The pursuit game needs at least one vertex.")
    budget = settings.PURSUIT['STATE_BUDGET'] if state_budget is None else state_budget
    states = state_count(d.n, k)
    if states > budget:
        raise StateBudgetExceeded(states, budget)

    started = time.perf_counter()
    n = d.n
    space = StateSpace(d, k)
    config_count = len(space.configs)
    cop_predecessors = [[] for _ in range(config_count)]
    for config, succs in enumerate(space.cop_successors):
        for succ in succs:
            cop_predecessors[succ].append(config)
    robber_predecessors = [(r, *d.in_neighbors[r]) for r in range(n)]

    win = bytearray(states)
    rank = [-1] * states
    escapes = [1 + len(d.out_neighbors[r]) for _ in range(config_count) for r in range(n)]
    frontier = deque()
    for config, cops in enumerate(space.configs):
        for robber in set(cops):
            base = (config * n + robber) * 2
            for index in (base + COPS, base + ROBBER):
                win[index] = 1
                rank[index] = 0
                frontier.append(index)

    while frontier:
        index = frontier.popleft()
        cell, side = divmod(index, 2)
        config, robber = divmod(cell, n)
        next_rank = rank[index] + 1
        if side == ROBBER:
            for pred in cop_predecessors[config]:
                pred_index = (pred * n + robber) * 2 + COPS
                if not win[pred_index]:
                    win[pred_index] = 1
                    rank[pred_index] = next_rank
                    frontier.append(pred_index)
        else:
            for pred_robber in robber_predecessors[robber]:
                pred_cell = config * n + pred_robber
                pred_index = pred_cell * 2 + ROBBER
                if win[pred_index]:
                    continue
                escapes[pred_cell] -= 1
                if escapes[pred_cell] == 0:
                    win[pred_index] = 1
                    rank[pred_index] = next_rank
                    frontier.append(pred_index)

    best = [-1] * (config_count * n)
    for config, succs in enumerate(space.cop_successors):
        for robber in range(n):
            target = rank[(config * n + robber) * 2 + COPS] - 1
            if target < 0:
                continue
            # successors are in lexicographic order, first hit is the tie-break
            for succ in succs:
                succ_index = (succ * n + robber) * 2 + ROBBER
                if win[succ_index] and rank[succ_index] == target:
                    best[config * n + robber] = succ
                    break

    shape = (config_count, n, 2)
    win_array = np.frombuffer(bytes(win), dtype=np.uint8).astype(bool).reshape(shape)
    rank_array = np.array(rank, dtype=np.int64).reshape(shape)
    best_array = np.array(best, dtype=np.int64).reshape(config_count, n)

    logger.debug(
        "solved n=%d k=%d: %d positions, %d cop wins in %.3fs",
        n, k, states, int(win_array.sum()), time.perf_counter() - started,
    )
    return SolveResult(space=space, win=win_array, rank=rank_array, best_move=best_array)


def cops_win_from_placement(result: SolveResult, cops) -> bool:
    cops = tuple(sorted(int(c) for c in cops))
    if len(cops) != result.k:
        raise ValidationError(f"Placement {cops} has {len(cops)} cops, solver was run with k={result.k}.")
    for c in cops:
        result.digraph.check_vertex(c)
    config = result.space.config_index[cops]
    return bool(result.win[config, :, COPS].all())


def winning_placements(result: SolveResult) -> list[tuple]:
    configs = np.nonzero(result.win[:, :, COPS].all(axis=1))[0]
    return [result.space.configs[c] for c in configs.tolist()]


@dataclass(frozen=True)
class CopNumber:
    """Smallest winning k up to ``k_max``; ``value`` is None when it exceeds ``k_max``."""

    value: int | None
    k_max: int
    placement: tuple | None = None

    @property
    def exceeds(self) -> bool:
        return self.value is None


def cop_number(d: Digraph, k_max: int, state_budget: int | None = None) -> CopNumber:
    if k_max < 1:
        raise ValidationError(f"k_max must be at least 1, got {k_max}.")
    for k in range(1, k_max + 1):
        placements = winning_placements(solve(d, k, state_budget))
        if placements:
            return CopNumber(value=k, k_max=k_max, placement=placements[0])
    return CopNumber(value=None, k_max=k_max)
