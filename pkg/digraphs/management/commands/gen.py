from digraphs.constructions import (
    gen_complete_bidirected,
    gen_directed_cycle,
    gen_directed_path,
    gen_in_star,
    gen_lemma3_stars,
    gen_projective_plane_incidence_doubled,
    gen_random_digraph,
    gen_random_oriented_tree,
)
from digraphs.management.base import DigraphCommand


class Command(DigraphCommand):
    help = 'Generate a digraph from one of the built-in families.'

    def add_arguments(self, parser):
        parser.add_argument(
            'family',
            choices=['path', 'cycle', 'stars', 'projective', 'random', 'tree', 'complete', 'in-star'],
        )
        parser.add_argument('--n', type=int, default=4, help='Order (path, cycle, random, tree, complete) or leaf count (in-star).')
        parser.add_argument('--q', type=int, default=2, help='Prime order of the projective plane.')
        parser.add_argument('--p', type=float, default=0.5, help='Arc probability for random digraphs.')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--index', type=int, default=0, choices=range(4), help='Which 3-star orientation (stars).')
        self.add_output_arguments(parser)

    def handle(self, *args, **options):
        n = options['n']
        builders = {
            'path': lambda: gen_directed_path(n),
            'cycle': lambda: gen_directed_cycle(n),
            'stars': lambda: gen_lemma3_stars()[options['index']],
            'projective': lambda: gen_projective_plane_incidence_doubled(options['q']),
            'random': lambda: gen_random_digraph(n, options['p'], options['seed']),
            'tree': lambda: gen_random_oriented_tree(n, options['seed']),
            'complete': lambda: gen_complete_bidirected(n),
            'in-star': lambda: gen_in_star(n),
        }
        with self.input_errors():
            d = builders[options['family']]()
        self.emit_digraph(d, options, name=options['family'].replace('-', '_'))
