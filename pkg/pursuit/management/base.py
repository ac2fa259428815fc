from contextlib import contextmanager

from django.core.management.base import CommandError

from digraphs.constructions import gen_random_digraph
from digraphs.management.base import INPUT_ERROR, DigraphCommand
from pursuit.exceptions import PursuitError


class GameCommand(DigraphCommand):
    """Commands that play on a file instance or on a seeded random digraph."""

    def add_instance_arguments(self, parser):
        self.add_input_argument(parser, required=False)
        parser.add_argument('--random-n', type=int, help='Play on a random digraph of this order when --in is absent.')
        parser.add_argument('--p', type=float, default=0.5, help='Arc probability of the random digraph.')
        parser.add_argument('--seed', type=int, default=0, help='Seed of the random digraph.')
        parser.add_argument('--state-budget', type=int, help='Maximum number of game positions per solve.')

    def instance(self, options):
        if options['input']:
            return self.load(options['input'])
        if options['random_n'] is None:
            raise CommandError('Give an instance with --in or --random-n.', returncode=INPUT_ERROR)
        with self.input_errors():
            return gen_random_digraph(options['random_n'], options['p'], options['seed'])

    @contextmanager
    def game_errors(self):
        with self.input_errors():
            try:
                yield
            except PursuitError as exc:
                raise CommandError(str(exc), returncode=INPUT_ERROR)
