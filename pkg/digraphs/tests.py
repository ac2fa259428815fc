import itertools
import json
import math
import tempfile
from io import StringIO
from pathlib import Path

import networkx as nx
import numpy as np
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st
from networkx.algorithms.isomorphism import DiGraphMatcher

from .constructions import (
    PortClass,
    clique_substitute_all,
    clique_substitute_vertex,
    clique_substitution_ports,
    gen_all_digraphs,
    gen_complete_bidirected,
    gen_directed_cycle,
    gen_directed_path,
    gen_in_star,
    gen_lemma3_stars,
    gen_projective_plane_incidence_doubled,
    gen_random_digraph,
    gen_random_oriented_tree,
    subdivide_arcs,
    subdivision_map,
)
from .core import (
    Digraph,
    count_sources,
    has_opposite_pair,
    induced_subdigraph,
    is_strongly_connected,
    is_weakly_connected,
    neighborhood_partition,
    relabel,
    strongly_connected_components,
    underlying_girth,
)
from .formats import format_arc_list, parse_arc_list, read_arc_list, to_dot, write_arc_list
from .patterns import (
    ObstructionKind,
    PatternKind,
    containment_chain_check,
    find_induced,
    find_pk_star,
    find_pk_subgraph,
    obstruction_family,
    validate_witness,
)

# v = 0, in-only 1 and 2, out-only 3 and 4, both ways 5
FIGURE_LEFT = Digraph(6, [(1, 0), (2, 0), (0, 3), (0, 4), (0, 5), (5, 0)])
BIDIRECTED_K2 = gen_complete_bidirected(2)
BIDIRECTED_K3 = gen_complete_bidirected(3)


@st.composite
def random_digraphs(draw, n_min=1, n_max=6):
    n = draw(st.integers(n_min, n_max))
    p = draw(st.sampled_from([0.2, 0.35, 0.5, 0.8]))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return gen_random_digraph(n, p, seed)


def isomorphic(a: Digraph, b: Digraph) -> bool:
    return nx.is_isomorphic(a.to_networkx(), b.to_networkx())


def has_pk_star_by_enumeration(host: Digraph, k: int) -> bool:
    for vertices in itertools.permutations(range(host.n), k):
        if all(
            host.has_arc(vertices[i], vertices[j]) == (j == i + 1)
            for i in range(k)
            for j in range(i + 1, k)
        ):
            return True
    return False


class DigraphTests(SimpleTestCase):
    def test_rejects_loops_duplicates_and_out_of_range(self):
        with self.assertRaisesMessage(ValidationError, "Loop (1, 1)"):
            Digraph(2, [(1, 1)])
        with self.assertRaisesMessage(ValidationError, "Duplicate arc (0, 1)"):
            Digraph(2, [(0, 1), (0, 1)])
        with self.assertRaisesMessage(ValidationError, "outside 0..1"):
            Digraph(2, [(0, 2)])

    def test_opposite_arcs_may_coexist(self):
        self.assertEqual(BIDIRECTED_K2.arc_count, 2)
        self.assertTrue(has_opposite_pair(BIDIRECTED_K2))

    def test_is_immutable(self):
        with self.assertRaises(AttributeError):
            BIDIRECTED_K2.n = 3

    def test_adjacency_matrix(self):
        d = gen_directed_cycle(3)
        np.testing.assert_array_equal(d.adjacency_matrix(), [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        self.assertEqual(Digraph.from_adjacency_matrix(d.adjacency_matrix()), d)
        with self.assertRaisesMessage(ValidationError, "diagonal"):
            Digraph.from_adjacency_matrix(np.eye(2))

    def test_neighborhood_partition(self):
        partition = neighborhood_partition(FIGURE_LEFT, 0)
        self.assertEqual(partition.in_only, {1, 2})
        self.assertEqual(partition.out_only, {3, 4})
        self.assertEqual(partition.both, {5})
        self.assertEqual(neighborhood_partition(Digraph(1), 0), (set(), set(), set()))
        self.assertEqual(neighborhood_partition(BIDIRECTED_K2, 0).both, {1})

    @given(random_digraphs())
    def test_neighborhood_partition_covers_the_neighbourhood(self, d):
        for v in range(d.n):
            in_only, out_only, both = neighborhood_partition(d, v)
            self.assertFalse(in_only & out_only or in_only & both or out_only & both)
            self.assertEqual(in_only | out_only | both, set(d.neighbors(v)))

    def test_connectivity(self):
        single_arc = Digraph(2, [(0, 1)])
        self.assertTrue(is_strongly_connected(gen_directed_cycle(3)))
        self.assertFalse(is_strongly_connected(single_arc))
        self.assertFalse(is_strongly_connected(FIGURE_LEFT))
        self.assertTrue(is_weakly_connected(single_arc))
        self.assertFalse(is_weakly_connected(Digraph(2)))
        self.assertTrue(is_weakly_connected(gen_directed_cycle(4)))
        with self.assertRaises(ValidationError):
            is_strongly_connected(Digraph(0))

    def test_strongly_connected_components(self):
        d = Digraph(4, [(0, 1), (1, 0), (1, 2), (3, 2)])
        self.assertEqual(strongly_connected_components(d), [{0, 1}, {2}, {3}])

    def test_count_sources(self):
        self.assertEqual(count_sources(gen_directed_cycle(3)), 0)
        self.assertEqual(count_sources(gen_in_star(3)), 3)
        self.assertEqual(count_sources(Digraph(2, [(0, 1)])), 1)

    def test_underlying_girth(self):
        self.assertEqual(underlying_girth(BIDIRECTED_K2), 2)
        self.assertEqual(underlying_girth(gen_directed_cycle(5)), 5)
        self.assertTrue(math.isinf(underlying_girth(Digraph(2, [(0, 1)]))))

    @given(random_digraphs(), st.permutations(range(6)))
    def test_underlying_girth_survives_relabelling(self, d, order):
        permutation = [v for v in order if v < d.n]
        self.assertEqual(underlying_girth(relabel(d, permutation)), underlying_girth(d))

    @given(random_digraphs())
    def test_strongly_connected_digraphs_are_weakly_connected_without_sources(self, d):
        if not is_strongly_connected(d):
            return
        self.assertTrue(is_weakly_connected(d))
        if d.n >= 2:
            self.assertEqual(count_sources(d), 0)

    def test_induced_subdigraph_and_relabel(self):
        d = gen_directed_cycle(4)
        self.assertEqual(induced_subdigraph(d, [2, 3, 0]), Digraph(3, [(0, 1), (1, 2)]))
        self.assertEqual(relabel(d, [1, 2, 3, 0]), d)
        with self.assertRaises(ValidationError):
            relabel(d, [0, 0, 1, 2])
        with self.assertRaises(ValidationError):
            induced_subdigraph(d, [1, 1])


class ArcListFormatTests(SimpleTestCase):
    def test_format_and_parse(self):
        d = gen_directed_cycle(3)
        text = format_arc_list(d)
        self.assertEqual(text, "3 3\n0 1\n1 2\n2 0\n")
        self.assertEqual(parse_arc_list(text), d)

    def test_parse_errors_name_source_and_line(self):
        with self.assertRaisesMessage(ValidationError, "g.txt: line 3: loop (1, 1)"):
            parse_arc_list("2 2\n0 1\n1 1\n", source='g.txt')
        with self.assertRaisesMessage(ValidationError, "line 2: expected two integers"):
            parse_arc_list("2 1\n0 x\n")
        with self.assertRaisesMessage(ValidationError, "announces 2 arcs, found 1"):
            parse_arc_list("2 2\n0 1\n")
        with self.assertRaisesMessage(ValidationError, "out of range"):
            parse_arc_list("2 1\n0 5\n")
        with self.assertRaisesMessage(ValidationError, "empty input"):
            parse_arc_list("")

    def test_read_errors_name_the_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            missing = Path(tmp) / 'missing.txt'
            with self.assertRaisesMessage(ValidationError, str(missing)):
                read_arc_list(missing)
            path = Path(tmp) / 'k2.txt'
            write_arc_list(BIDIRECTED_K2, path)
            self.assertEqual(read_arc_list(path), BIDIRECTED_K2)

    def test_undecodable_file_names_the_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'latin1.txt'
            path.write_bytes(b'2 1\n0 \xff1\n')
            with self.assertRaisesMessage(ValidationError, f"{path}: instance file is not UTF-8"):
                read_arc_list(path)

    def test_to_dot(self):
        dot = to_dot(Digraph(2, [(0, 1)]), name='P2')
        self.assertIn("digraph P2 {", dot)
        self.assertIn("0 -> 1;", dot)
        self.assertTrue(dot.rstrip().endswith("}"))


class CliqueSubstitutionTests(SimpleTestCase):
    def test_figure_example_at_one_vertex(self):
        # x-1=0 x-2=1 x+1=2 x+2=3 x+-1=4, ports y-1=5 y-2=6 y+1=7 y+2=8 y+-1=9
        result = clique_substitute_vertex(FIGURE_LEFT, 0)
        drawn = {
            (0, 5), (5, 7), (7, 2), (1, 6), (6, 8), (8, 3), (9, 6), (9, 4), (6, 5), (7, 8),
            (8, 7), (8, 9), (9, 8), (5, 9), (9, 5), (7, 9), (9, 7), (6, 9), (4, 9), (5, 6),
        }
        self.assertEqual(result.n, 10)
        self.assertTrue(drawn <= result.arcs)
        # every minus port sends an arc to every plus port
        self.assertEqual(result.arcs - drawn, {(5, 8), (6, 7)})

    def test_path_centre(self):
        result = clique_substitute_vertex(Digraph(3, [(0, 1), (1, 2)]), 1)
        self.assertTrue(isomorphic(result, gen_directed_path(4)))

    def test_bidirected_edge_stays_bidirected(self):
        self.assertTrue(isomorphic(clique_substitute_vertex(BIDIRECTED_K2, 0), BIDIRECTED_K2))

    def test_isolated_vertex_rejected(self):
        with self.assertRaisesMessage(ValidationError, "isolated vertex 2"):
            clique_substitute_all(Digraph(3, [(0, 1)]))

    def test_global_examples(self):
        self.assertTrue(isomorphic(clique_substitute_all(Digraph(2, [(0, 1)])), Digraph(2, [(0, 1)])))
        self.assertTrue(isomorphic(clique_substitute_all(BIDIRECTED_K2), BIDIRECTED_K2))
        c6 = clique_substitute_all(gen_directed_cycle(3))
        self.assertEqual((c6.n, c6.arc_count), (6, 6))
        self.assertTrue(isomorphic(c6, gen_directed_cycle(6)))

    def test_port_map(self):
        plus, ports = clique_substitution_ports(FIGURE_LEFT)
        self.assertEqual(plus.n, sum(FIGURE_LEFT.degree(v) for v in range(FIGURE_LEFT.n)))
        self.assertEqual(ports.port_class(0, 1), PortClass.MINUS)
        self.assertEqual(ports.port_class(0, 3), PortClass.PLUS)
        self.assertEqual(ports.port_class(0, 5), PortClass.PM)
        self.assertEqual([ports.project(p) for p in ports.ports_of(0)], [0] * 5)
        self.assertTrue(plus.has_arc(ports.port(1, 0), ports.port(0, 1)))

    @given(random_digraphs(n_min=2, n_max=5))
    @hypothesis_settings(max_examples=40, deadline=None)
    def test_sequential_substitution_matches_global(self, d):
        if any(d.degree(v) == 0 for v in range(d.n)):
            return
        sequential = d
        for _ in range(d.n):
            # originals keep the lowest ids until all are replaced
            sequential = clique_substitute_vertex(sequential, 0)
        self.assertTrue(isomorphic(sequential, clique_substitute_all(d)))

    @given(random_digraphs(n_min=2, n_max=6))
    @hypothesis_settings(max_examples=40, deadline=None)
    def test_preserves_strong_connectivity(self, d):
        if not is_strongly_connected(d):
            return
        self.assertTrue(is_strongly_connected(clique_substitute_all(d)))


class SubdivisionTests(SimpleTestCase):
    def test_single_arc(self):
        self.assertEqual(subdivide_arcs(Digraph(2, [(0, 1)]), 3), Digraph(4, [(0, 2), (2, 3), (3, 1)]))

    def test_identity_for_m_one(self):
        d = gen_directed_cycle(4)
        self.assertEqual(subdivide_arcs(d, 1), d)
        with self.assertRaises(ValidationError):
            subdivide_arcs(d, 0)

    def test_girth_grows(self):
        self.assertEqual(underlying_girth(subdivide_arcs(BIDIRECTED_K2, 3)), 6)
        self.assertEqual(underlying_girth(subdivide_arcs(gen_directed_cycle(3), 2)), 6)

    def test_projection(self):
        result, mapping = subdivision_map(Digraph(2, [(0, 1)]), 3)
        self.assertEqual(mapping.paths[(0, 1)], (0, 2, 3, 1))
        self.assertEqual(mapping.projection, (0, 1, 1, 1))
        self.assertEqual(mapping.embedding, (0, 1))
        self.assertEqual([mapping.project(x) for x in range(4)], [0, 1, 1, 1])
        self.assertEqual(result.n, 4)

    @given(random_digraphs(n_min=2), st.integers(1, 4))
    @hypothesis_settings(max_examples=60, deadline=None)
    def test_girth_scales_and_strong_connectivity_survives(self, d, m):
        subdivided = subdivide_arcs(d, m)
        girth = underlying_girth(d)
        if math.isinf(girth):
            self.assertTrue(math.isinf(underlying_girth(subdivided)))
        else:
            self.assertGreaterEqual(underlying_girth(subdivided), m * girth)
        if is_strongly_connected(d):
            self.assertTrue(is_strongly_connected(subdivided))


class FamilyTests(SimpleTestCase):
    def test_paths_and_cycles(self):
        self.assertEqual(gen_directed_path(1), Digraph(1))
        self.assertEqual(gen_directed_path(2), Digraph(2, [(0, 1)]))
        self.assertEqual(gen_directed_path(4).sorted_arcs(), [(0, 1), (1, 2), (2, 3)])
        self.assertEqual(gen_directed_cycle(2), BIDIRECTED_K2)
        c5 = gen_directed_cycle(5)
        self.assertTrue(is_strongly_connected(c5))
        self.assertEqual(underlying_girth(c5), 5)

    def test_stars(self):
        stars = gen_lemma3_stars()
        self.assertEqual(count_sources(stars[0]), 1)
        self.assertEqual(count_sources(stars[2]), 3)
        for star in stars:
            self.assertEqual((star.n, star.arc_count), (4, 3))
            self.assertFalse(has_opposite_pair(star))

    def test_fano_plane(self):
        fano = gen_projective_plane_incidence_doubled(2)
        self.assertEqual((fano.n, fano.arc_count), (14, 42))
        self.assertEqual(count_sources(fano), 0)
        self.assertTrue(is_strongly_connected(fano))
        simple = fano.to_networkx().to_undirected()
        self.assertTrue(nx.is_bipartite(simple))
        self.assertEqual({degree for _, degree in simple.degree()}, {3})
        self.assertEqual(nx.girth(simple), 6)

    def test_order_three_plane(self):
        plane = gen_projective_plane_incidence_doubled(3)
        self.assertEqual((plane.n, plane.arc_count), (26, 104))
        with self.assertRaisesMessage(ValidationError, "must be prime"):
            gen_projective_plane_incidence_doubled(4)

    def test_plane_incidence_graphs(self):
        for q in (2, 3, 5):
            with self.subTest(q=q):
                simple = gen_projective_plane_incidence_doubled(q).to_networkx().to_undirected()
                self.assertEqual(simple.number_of_nodes(), 2 * (q * q + q + 1))
                self.assertTrue(nx.is_bipartite(simple))
                self.assertEqual({degree for _, degree in simple.degree()}, {q + 1})
                self.assertEqual(nx.girth(simple), 6)

    def test_random_digraphs(self):
        self.assertEqual(gen_random_digraph(5, 0.0, 1).arc_count, 0)
        self.assertEqual(gen_random_digraph(5, 1.0, 1), gen_complete_bidirected(5))
        self.assertEqual(gen_random_digraph(5, 0.5, 7), gen_random_digraph(5, 0.5, 7))
        with self.assertRaises(ValidationError):
            gen_random_digraph(3, 1.5, 0)

    def test_oriented_tree(self):
        tree = gen_random_oriented_tree(8, 3)
        self.assertEqual(tree.arc_count, 7)
        self.assertTrue(is_weakly_connected(tree))
        self.assertTrue(math.isinf(underlying_girth(tree)))

    def test_all_digraphs(self):
        digraphs = [d for _, d in gen_all_digraphs(3)]
        self.assertEqual(len(digraphs), 64)
        self.assertEqual(len(set(digraphs)), 64)
        self.assertEqual(digraphs[0], Digraph(3))


class PatternTests(SimpleTestCase):
    def test_find_induced(self):
        p2 = gen_directed_path(2)
        witness = find_induced(gen_lemma3_stars()[0], p2)
        self.assertIsNotNone(witness)
        self.assertTrue(validate_witness(gen_lemma3_stars()[0], witness, p2))
        self.assertIsNone(find_induced(BIDIRECTED_K3, p2))
        plus = clique_substitute_all(gen_directed_cycle(3))
        for star in gen_lemma3_stars():
            self.assertIsNone(find_induced(plus, star))

    def test_find_pk_subgraph(self):
        self.assertEqual(find_pk_subgraph(gen_directed_cycle(3), 3).vertices, (0, 1, 2))
        self.assertIsNone(find_pk_subgraph(BIDIRECTED_K2, 3))
        self.assertIsNone(find_pk_subgraph(gen_directed_path(4), 5))
        with self.assertRaisesMessage(ValidationError, "at least 2"):
            find_pk_subgraph(BIDIRECTED_K2, 1)

    def test_find_pk_star(self):
        self.assertEqual(find_pk_star(gen_directed_cycle(3), 3).vertices, (0, 1, 2))
        self.assertIsNone(find_pk_star(BIDIRECTED_K3, 3))
        self.assertEqual(find_pk_star(gen_directed_path(5), 5).vertices, (0, 1, 2, 3, 4))
        self.assertIsNone(find_pk_star(BIDIRECTED_K2, 3))

    @given(random_digraphs(n_max=8), st.integers(2, 4))
    @hypothesis_settings(max_examples=80, deadline=None)
    def test_find_pk_star_agrees_with_enumeration(self, host, k):
        self.assertEqual(find_pk_star(host, k) is not None, has_pk_star_by_enumeration(host, k))

    def test_containment_chain_examples(self):
        self.assertEqual(tuple(containment_chain_check(gen_directed_cycle(3), 3)), (False, False, True))
        self.assertEqual(tuple(containment_chain_check(BIDIRECTED_K3, 3)), (False, True, True))
        self.assertEqual(tuple(containment_chain_check(gen_directed_path(3), 3)), (False, False, False))

    @given(random_digraphs(), st.integers(2, 5))
    @hypothesis_settings(max_examples=100, deadline=None)
    def test_containment_chain_holds(self, d, k):
        self.assertTrue(containment_chain_check(d, k).holds)

    @given(random_digraphs(), st.integers(2, 4))
    @hypothesis_settings(max_examples=60, deadline=None)
    def test_witnesses_are_valid(self, d, k):
        for finder in (find_pk_subgraph, find_pk_star):
            witness = finder(d, k)
            if witness is not None:
                self.assertEqual(len(witness.vertices), k)
                self.assertTrue(validate_witness(d, witness))

    @given(random_digraphs(n_max=6), random_digraphs(n_max=3))
    @hypothesis_settings(max_examples=60, deadline=None)
    def test_find_induced_agrees_with_networkx(self, host, pattern):
        witness = find_induced(host, pattern)
        expected = DiGraphMatcher(host.to_networkx(), pattern.to_networkx()).subgraph_is_isomorphic()
        self.assertEqual(witness is not None, expected)
        if witness is not None:
            self.assertEqual(witness.kind, PatternKind.INDUCED_ISO)
            self.assertTrue(validate_witness(host, witness, pattern))

    @given(random_digraphs(n_min=2), st.permutations(range(6)))
    @hypothesis_settings(max_examples=60, deadline=None)
    def test_verdicts_survive_relabelling(self, d, order):
        permutation = [v for v in order if v < d.n]
        other = relabel(d, permutation)
        for k in (2, 3):
            self.assertEqual(containment_chain_check(d, k), containment_chain_check(other, k))

    def test_validate_witness_rejects_bad_tuples(self):
        witness = find_pk_star(gen_directed_cycle(3), 3)
        self.assertFalse(validate_witness(BIDIRECTED_K3, witness))
        self.assertFalse(validate_witness(gen_directed_path(2), witness))


class ObstructionTests(SimpleTestCase):
    def test_families(self):
        self.assertEqual(obstruction_family(Digraph(1)).kind, ObstructionKind.TRIVIAL)
        cycle = obstruction_family(gen_directed_cycle(3))
        self.assertEqual((cycle.kind, cycle.girth), (ObstructionKind.CYCLE, 3))
        self.assertEqual(obstruction_family(BIDIRECTED_K2).girth, 2)
        star = obstruction_family(gen_lemma3_stars()[3])
        self.assertEqual((star.kind, star.star_index), (ObstructionKind.STAR, 3))
        path = obstruction_family(gen_directed_path(3))
        self.assertEqual(path.kind, ObstructionKind.PATH)
        self.assertEqual(path.witness.vertices, (0, 1))

    def test_needs_weakly_connected_pattern(self):
        with self.assertRaisesMessage(ValidationError, "weakly connected"):
            obstruction_family(Digraph(2))


class CommandTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def run_command(self, *args):
        out = StringIO()
        call_command(*args, stdout=out)
        return out.getvalue()

    def write(self, name, d):
        path = self.dir / name
        write_arc_list(d, path)
        return str(path)

    def test_gen(self):
        self.assertEqual(self.run_command('gen', 'cycle', '--n', '3'), "3 3\n0 1\n1 2\n2 0\n")
        self.assertIn("digraph projective {", self.run_command('gen', 'projective', '--q', '2', '--dot'))
        out = self.dir / 'fano.txt'
        self.run_command('gen', 'projective', '--out', str(out))
        self.assertEqual(read_arc_list(out).arc_count, 42)

    def test_gen_invalid_parameters(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('gen', 'projective', '--q', '6')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_transform(self):
        path = self.write('c3.txt', gen_directed_cycle(3))
        result = parse_arc_list(self.run_command('transform', 'clique', '--in', path))
        self.assertTrue(isomorphic(result, gen_directed_cycle(6)))
        result = parse_arc_list(self.run_command('transform', 'subdivide', '--in', path, '--m', '2'))
        self.assertEqual(result, subdivide_arcs(gen_directed_cycle(3), 2))

    def test_check(self):
        path = self.write('c3.txt', gen_directed_cycle(3))
        data = json.loads(self.run_command('check', '--in', path, '--pk-star', '3'))
        self.assertEqual(data, {'test': 'pk-star', 'k': 3, 'free': False, 'witness': [0, 1, 2]})
        data = json.loads(self.run_command('check', '--in', path, '--chain', '3'))
        self.assertTrue(data['holds'])
        pattern = self.write('p2.txt', gen_directed_path(2))
        data = json.loads(self.run_command('check', '--in', path, '--induced', pattern))
        self.assertFalse(data['free'])
        data = json.loads(self.run_command('check', '--in', path, '--obstruction'))
        self.assertEqual((data['kind'], data['girth']), ('cycle', 3))

    def test_corrupted_input_names_the_file(self):
        path = self.dir / 'broken.txt'
        path.write_text("3 2\n0 1\n", encoding='utf-8')
        with self.assertRaises(CommandError) as ctx:
            self.run_command('check', '--in', str(path), '--pk', '2')
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('broken.txt', str(ctx.exception))

    def test_check_without_input_runs_the_system_checks(self):
        out, err = StringIO(), StringIO()
        call_command('check', stdout=out, stderr=err)
        self.assertIn('System check identified', out.getvalue() + err.getvalue())

    def test_check_needs_input_and_a_pattern_test(self):
        path = self.write('c3.txt', gen_directed_cycle(3))
        with self.assertRaises(CommandError) as ctx:
            self.run_command('check', '--in', path)
        self.assertEqual(ctx.exception.returncode, 2)
        with self.assertRaises(CommandError) as ctx:
            self.run_command('check', '--pk', '2')
        self.assertEqual(ctx.exception.returncode, 2)
