import itertools
import json
import tempfile
from functools import lru_cache
from io import StringIO
from pathlib import Path

from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from digraphs.constructions import (
    clique_substitute_all,
    gen_complete_bidirected,
    gen_directed_cycle,
    gen_in_star,
    gen_projective_plane_incidence_doubled,
    gen_random_digraph,
)
from digraphs.core import Digraph, count_sources
from digraphs.formats import write_arc_list

from .exceptions import SolverInvariantError, StateBudgetExceeded
from .game import GamePosition, Side, cop_options, legal_moves
from .solver import COPS, cop_number, cops_win_from_placement, solve, state_count, winning_placements
from .trace import play_trace


def minimax_ranks(d: Digraph, k: int) -> dict:
    """
    Capture distance of every cop-won position by plain game-tree search:
    depth-limited minimax with memoisation, deepened until no new position
    is won. Positions missing from the result are robber wins.
    """
    positions = [
        GamePosition(cops, robber, side)
        for cops in itertools.combinations_with_replacement(range(d.n), k)
        for robber in range(d.n)
        for side in (Side.COPS, Side.ROBBER)
    ]
    replies = {pos: legal_moves(d, pos) for pos in positions}

    @lru_cache(maxsize=None)
    def wins_within(pos, depth):
        if pos.captured:
            return True
        if depth == 0:
            return False
        outcomes = (wins_within(reply, depth - 1) for reply in replies[pos])
        return any(outcomes) if pos.to_move == Side.COPS else all(outcomes)

    ranks = {}
    depth = 0
    while True:
        won = [pos for pos in positions if pos not in ranks and wins_within(pos, depth)]
        if not won and depth > 0:
            return ranks
        for pos in won:
            ranks[pos] = depth
        depth += 1


@st.composite
def small_games(draw, n_max=5):
    n = draw(st.integers(1, n_max))
    p = draw(st.sampled_from([0.25, 0.4, 0.6]))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    k = draw(st.integers(1, 2))
    return gen_random_digraph(n, p, seed), k


class MoveTests(SimpleTestCase):
    def test_cop_moves_on_cycle(self):
        pos = GamePosition.create([0], 2, Side.COPS)
        moves = legal_moves(gen_directed_cycle(3), pos)
        self.assertEqual([m.cops for m in moves], [(0,), (1,)])
        self.assertTrue(all(m.to_move == Side.ROBBER for m in moves))

    def test_robber_moves_on_bidirected_pair(self):
        pos = GamePosition.create([1], 0, Side.ROBBER)
        self.assertEqual([m.robber for m in legal_moves(gen_complete_bidirected(2), pos)], [0, 1])

    def test_cop_multisets_are_canonical(self):
        self.assertEqual(cop_options(Digraph(2, [(0, 1)]), (0, 0)), [(0, 0), (0, 1), (1, 1)])

    def test_position_validation(self):
        with self.assertRaises(ValidationError):
            legal_moves(gen_directed_cycle(3), GamePosition((0,), 5, Side.COPS))
        with self.assertRaises(ValidationError):
            legal_moves(gen_directed_cycle(3), GamePosition((2, 0), 1, Side.COPS))


class SolverTests(SimpleTestCase):
    def test_single_vertex(self):
        result = solve(Digraph(1), 1)
        self.assertTrue(result.win.all())
        self.assertFalse(result.rank.any())

    def test_directed_four_cycle(self):
        c4 = gen_directed_cycle(4)
        self.assertEqual(winning_placements(solve(c4, 1)), [])
        one_cop = solve(c4, 1)
        for cop in range(4):
            self.assertFalse(cops_win_from_placement(one_cop, [cop]))
        self.assertTrue(winning_placements(solve(c4, 2)))

    def test_cops_win_from_placement(self):
        self.assertTrue(cops_win_from_placement(solve(gen_directed_cycle(3), 3), [0, 1, 2]))
        pair = solve(gen_complete_bidirected(2), 1)
        self.assertTrue(cops_win_from_placement(pair, [0]))
        with self.assertRaisesMessage(ValidationError, "k=1"):
            cops_win_from_placement(pair, [0, 1])

    def test_rejects_bad_arguments(self):
        with self.assertRaises(ValidationError):
            solve(gen_directed_cycle(3), 0)
        with self.assertRaises(ValidationError):
            cop_number(gen_directed_cycle(3), 0)

    def test_state_budget(self):
        self.assertEqual(state_count(4, 2), 80)
        with self.assertRaises(StateBudgetExceeded) as ctx:
            solve(gen_directed_cycle(4), 2, state_budget=79)
        self.assertEqual((ctx.exception.states, ctx.exception.budget), (80, 79))
        self.assertIn('--state-budget', str(ctx.exception))

    @override_settings(PURSUIT={'STATE_BUDGET': 10, 'MAX_ROUNDS': 100})
    def test_state_budget_from_settings(self):
        with self.assertRaises(StateBudgetExceeded):
            solve(gen_directed_cycle(4), 1)

    @given(small_games())
    @hypothesis_settings(max_examples=100, deadline=None, derandomize=True)
    def test_agrees_with_minimax(self, game):
        d, k = game
        result = solve(d, k)
        ranks = minimax_ranks(d, k)
        for pos in result.positions():
            self.assertEqual(result.is_win(pos), pos in ranks, pos)
            self.assertEqual(result.rank_of(pos), ranks.get(pos, -1), pos)

    @given(small_games())
    @hypothesis_settings(max_examples=50, deadline=None)
    def test_is_fixed_point(self, game):
        self.assertTrue(solve(*game).is_fixed_point())

    @given(small_games())
    @hypothesis_settings(max_examples=50, deadline=None)
    def test_best_moves_shorten_the_capture(self, game):
        d, k = game
        result = solve(d, k)
        for pos in result.positions():
            if pos.captured or not result.is_win(pos):
                continue
            if pos.to_move == Side.COPS:
                best = result.best_move_of(pos)
                self.assertIn(best, legal_moves(d, pos))
                self.assertTrue(result.is_win(best))
                self.assertLess(result.rank_of(best), result.rank_of(pos))
            else:
                self.assertTrue(all(result.is_win(reply) for reply in legal_moves(d, pos)))

    def test_captures_have_rank_zero(self):
        result = solve(gen_directed_cycle(4), 2)
        for pos in result.positions():
            if pos.captured:
                self.assertEqual(result.rank_of(pos), 0)

    @given(small_games(n_max=6))
    @hypothesis_settings(max_examples=40, deadline=None)
    def test_an_extra_cop_never_hurts(self, game):
        d, k = game
        more = solve(d, k + 1)
        for placement in winning_placements(solve(d, k)):
            self.assertTrue(cops_win_from_placement(more, (*placement, placement[0])), placement)


class CopNumberTests(SimpleTestCase):
    def test_directed_cycles(self):
        self.assertEqual(cop_number(gen_directed_cycle(2), 2).value, 1)
        for n in range(3, 9):
            with self.subTest(n=n):
                self.assertEqual(cop_number(gen_directed_cycle(n), n).value, 2)

    def test_complete_bidirected(self):
        for n in range(1, 6):
            self.assertEqual(cop_number(gen_complete_bidirected(n), n).value, 1)

    def test_exceeds(self):
        outcome = cop_number(gen_directed_cycle(5), 1)
        self.assertTrue(outcome.exceeds)
        self.assertIsNone(outcome.placement)

    def test_sources_bound(self):
        star = gen_in_star(3)
        self.assertGreaterEqual(cop_number(star, 4).value, count_sources(star))

    def test_fano_plane_needs_three_cops(self):
        fano = gen_projective_plane_incidence_doubled(2)
        self.assertEqual(winning_placements(solve(fano, 2)), [])
        outcome = cop_number(fano, 3)
        self.assertEqual(outcome.value, 3)
        self.assertTrue(cops_win_from_placement(solve(fano, 3), outcome.placement))

    def test_clique_substitution_of_triangle(self):
        c3 = gen_directed_cycle(3)
        self.assertEqual(cop_number(clique_substitute_all(c3), 6).value, cop_number(c3, 3).value)


class TraceTests(SimpleTestCase):
    def assertLegalTrace(self, d, trace):
        for before, after in zip(trace.snapshots, trace.snapshots[1:]):
            self.assertIn(after, legal_moves(d, before))

    def test_pair_is_caught_in_one_round(self):
        d = gen_complete_bidirected(2)
        trace = play_trace(d, 1)
        self.assertEqual(trace.outcome, 'capture')
        self.assertLessEqual(trace.half_moves, 2)
        self.assertTrue(trace.snapshots[-1].captured)

    def test_four_cycle_two_cops(self):
        d = gen_directed_cycle(4)
        trace = play_trace(d, 2)
        self.assertTrue(trace.captured)
        self.assertLegalTrace(d, trace)

    def test_four_cycle_one_cop(self):
        d = gen_directed_cycle(4)
        trace = play_trace(d, 1)
        self.assertEqual(trace.outcome, 'robber-win')
        first, repeat = trace.certificate
        self.assertLess(first, repeat)
        self.assertEqual(trace.snapshots[first], trace.snapshots[repeat])
        self.assertLegalTrace(d, trace)

    def test_capture_follows_solved_rank(self):
        d = gen_directed_cycle(5)
        result = solve(d, 2)
        trace = play_trace(d, 2, result=result)
        self.assertEqual(trace.half_moves, result.rank_of(trace.snapshots[0]))

    def test_round_limit(self):
        with self.assertRaises(ValidationError):
            play_trace(gen_directed_cycle(3), 1, max_rounds=0)
        # C_8 with 2 cops needs more than one round
        with self.assertRaises(SolverInvariantError):
            play_trace(gen_directed_cycle(8), 2, max_rounds=1)

    @given(small_games())
    @hypothesis_settings(max_examples=40, deadline=None)
    def test_traces_are_legal(self, game):
        d, k = game
        trace = play_trace(d, k)
        self.assertLegalTrace(d, trace)
        self.assertEqual(trace.captured, trace.certificate is None)


class CommandTests(SimpleTestCase):
    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.path = str(Path(tmp.name) / 'c4.txt')
        write_arc_list(gen_directed_cycle(4), self.path)

    def run_command(self, *args):
        out = StringIO()
        call_command(*args, stdout=out)
        return json.loads(out.getvalue())

    def test_solve(self):
        data = self.run_command('solve', '--in', self.path)
        self.assertEqual(data['cop_number'], 2)
        self.assertFalse(data['exceeds'])
        self.assertEqual(len(data['placement']), 2)
        data = self.run_command('solve', '--in', self.path, '--k-max', '1')
        self.assertEqual((data['cop_number'], data['exceeds']), (None, True))

    def test_solve_random_instance(self):
        data = self.run_command('solve', '--random-n', '4', '--p', '1.0')
        self.assertEqual(data['cop_number'], 1)

    def test_simulate(self):
        data = self.run_command('simulate', '--in', self.path, '--k', '1')
        self.assertEqual(data['outcome'], 'robber-win')
        self.assertIsNotNone(data['certificate'])
        data = self.run_command('simulate', '--in', self.path, '--k', '2')
        self.assertEqual(data['outcome'], 'capture')
        self.assertEqual(data['snapshots'][0]['to_move'], 'cops')

    def test_resource_and_input_errors(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('solve', '--in', self.path, '--state-budget', '5')
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('state budget', str(ctx.exception))
        with self.assertRaises(CommandError) as ctx:
            self.run_command('solve')
        self.assertEqual(ctx.exception.returncode, 2)
        with self.assertRaises(CommandError) as ctx:
            self.run_command('solve', '--in', self.path, '--k-max', '0')
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('k_max', str(ctx.exception))
