from contextlib import contextmanager
from pathlib import Path

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError
from rest_framework.renderers import JSONRenderer

from digraphs.core import Digraph
from digraphs.formats import format_arc_list, read_arc_list, to_dot

INPUT_ERROR = 2
VIOLATION = 1


class DigraphCommand(BaseCommand):
    """Shared input/output handling for commands working on arc-list files."""

    def add_input_argument(self, parser, required=True):
        parser.add_argument('--in', dest='input', required=required, help='Arc-list instance file.')

    def add_output_arguments(self, parser):
        parser.add_argument('--out', help='Write the digraph here instead of stdout.')
        parser.add_argument('--dot', action='store_true', help='Emit DOT instead of the arc-list format.')

    def load(self, path) -> Digraph:
        with self.input_errors():
            return read_arc_list(path)

    @contextmanager
    def input_errors(self):
        try:
            yield
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages), returncode=INPUT_ERROR)

    def emit_digraph(self, d: Digraph, options, name='D'):
        text = to_dot(d, name=name) if options.get('dot') else format_arc_list(d)
        if options.get('out'):
            Path(options['out']).write_text(text, encoding='utf-8', newline='\n')
        else:
            self.stdout.write(text, ending='')

    def emit_json(self, data):
        self.stdout.write(JSONRenderer().render(data).decode('utf-8'))
