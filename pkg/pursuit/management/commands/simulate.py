from pursuit.management.base import GameCommand
from pursuit.serializers import GameTraceSerializer
from pursuit.trace import play_trace


class Command(GameCommand):
    help = 'Play the k-cop game under optimal strategies and print the trace as JSON.'

    def add_arguments(self, parser):
        self.add_instance_arguments(parser)
        parser.add_argument('--k', type=int, required=True, help='Number of cops.')
        parser.add_argument('--max-rounds', type=int, help='Round limit for the replay.')

    def handle(self, *args, **options):
        d = self.instance(options)
        with self.game_errors():
            trace = play_trace(
                d,
                options['k'],
                max_rounds=options['max_rounds'],
                state_budget=options['state_budget'],
            )
        self.emit_json(GameTraceSerializer(trace).data)
