from digraphs.constructions import clique_substitute_all, clique_substitute_vertex, subdivide_arcs
from digraphs.management.base import DigraphCommand


class Command(DigraphCommand):
    help = 'Apply clique substitution or arc subdivision to a digraph.'

    def add_arguments(self, parser):
        parser.add_argument('operation', choices=['clique', 'subdivide'])
        self.add_input_argument(parser)
        parser.add_argument('--m', type=int, default=2, help='Path length replacing each arc (subdivide).')
        parser.add_argument('--vertex', type=int, help='Substitute at this vertex only (clique).')
        self.add_output_arguments(parser)

    def handle(self, *args, **options):
        d = self.load(options['input'])
        with self.input_errors():
            if options['operation'] == 'subdivide':
                result = subdivide_arcs(d, options['m'])
            elif options['vertex'] is not None:
                result = clique_substitute_vertex(d, options['vertex'])
            else:
                result = clique_substitute_all(d)
        self.emit_digraph(result, options, name=options['operation'])
