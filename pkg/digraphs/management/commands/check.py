from django.core.management.base import CommandError
from django.core.management.commands.check import Command as SystemCheckCommand

from digraphs.management.base import INPUT_ERROR, DigraphCommand
from digraphs.patterns import (
    containment_chain_check,
    find_induced,
    find_pk_star,
    find_pk_subgraph,
    obstruction_family,
)
from digraphs.serializers import ChainVerdictSerializer, CheckResultSerializer, ObstructionSerializer

PATTERN_TESTS = ('induced', 'pk', 'pk_star', 'chain', 'obstruction')


def _vertices(witness):
    return list(witness.vertices) if witness is not None else None


class Command(DigraphCommand, SystemCheckCommand):
    help = (
        'Test a digraph given with --in for a forbidden pattern and print the verdict as JSON. '
        'Without --in, run the Django system checks.'
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_input_argument(parser, required=False)
        test = parser.add_mutually_exclusive_group()
        test.add_argument('--induced', metavar='PATTERN_FILE', help='Induced copy of the pattern digraph.')
        test.add_argument('--pk', type=int, metavar='K', help='Directed path on K vertices as a subgraph.')
        test.add_argument('--pk-star', type=int, metavar='K', help='Upper-triangular P_K pattern.')
        test.add_argument('--chain', type=int, metavar='K', help='All three path tests and their implication chain.')
        test.add_argument('--obstruction', action='store_true', help='Classify the input as a forbidden pattern H.')

    def handle(self, *args, **options):
        requested = [name for name in PATTERN_TESTS if options[name] not in (None, False)]
        if options['input'] is None:
            if requested:
                raise CommandError('--in is required for pattern tests.', returncode=INPUT_ERROR)
            return super().handle(*args, **options)
        if not requested:
            raise CommandError(
                'one of --induced, --pk, --pk-star, --chain, --obstruction is required with --in.',
                returncode=INPUT_ERROR,
            )
        d = self.load(options['input'])
        with self.input_errors():
            if options['induced']:
                pattern = self.load(options['induced'])
                witness = find_induced(d, pattern)
                data = {'test': 'induced', 'k': None, 'free': witness is None, 'witness': _vertices(witness)}
                self.emit_json(CheckResultSerializer(data).data)
            elif options['pk'] is not None:
                witness = find_pk_subgraph(d, options['pk'])
                data = {'test': 'pk', 'k': options['pk'], 'free': witness is None, 'witness': _vertices(witness)}
                self.emit_json(CheckResultSerializer(data).data)
            elif options['pk_star'] is not None:
                witness = find_pk_star(d, options['pk_star'])
                data = {'test': 'pk-star', 'k': options['pk_star'], 'free': witness is None, 'witness': _vertices(witness)}
                self.emit_json(CheckResultSerializer(data).data)
            elif options['chain'] is not None:
                verdict = containment_chain_check(d, options['chain'])
                data = {'test': 'chain', 'k': options['chain'], **verdict._asdict(), 'holds': verdict.holds}
                self.emit_json(ChainVerdictSerializer(data).data)
            else:
                report = obstruction_family(d)
                data = {
                    'test': 'obstruction',
                    'kind': report.kind,
                    'witness': _vertices(report.witness),
                    'girth': report.girth,
                    'star_index': report.star_index,
                }
                self.emit_json(ObstructionSerializer(data).data)
