from pursuit.management.base import GameCommand
from pursuit.serializers import SolveSummarySerializer
from pursuit.solver import cop_number


class Command(GameCommand):
    help = 'Compute the cop number of a digraph and a winning cop placement.'

    def add_arguments(self, parser):
        self.add_instance_arguments(parser)
        parser.add_argument('--k-max', type=int, help='Largest cop count to try (default: vertex count).')

    def handle(self, *args, **options):
        d = self.instance(options)
        k_max = d.n if options['k_max'] is None else options['k_max']
        with self.game_errors():
            outcome = cop_number(d, k_max, state_budget=options['state_budget'])
        self.emit_json(SolveSummarySerializer(outcome).data)
