import csv
import json
import tempfile
from dataclasses import replace
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings

from digraphs.constructions import gen_complete_bidirected, gen_directed_cycle
from digraphs.core import Digraph
from digraphs.formats import write_arc_list

from .models import SuiteRecord, SuiteRun
from .reports import CSV_COLUMNS, ExperimentReport, InstanceRecord, persist_report
from .suites import (
    FANO_SEED,
    SUITE_NAMES,
    SuiteConfig,
    replay_record,
    run_all,
    run_suites,
    suite_lemma1,
    suite_lemma2,
    suite_lemma3,
    suite_lemma4,
    suite_theorem1_families,
    suite_theorem3,
)

SMALL = SuiteConfig(trials=3, n_max=4, exhaustive_n_max=3, record_timings=False)


def with_instances(cfg, *digraphs):
    return replace(cfg, instances=tuple((f"instance{i}", d) for i, d in enumerate(digraphs)))


class SuiteConfigTests(SimpleTestCase):
    def test_validation(self):
        with self.assertRaisesMessage(ValidationError, "trials"):
            SuiteConfig(trials=0)
        with self.assertRaisesMessage(ValidationError, "n_max"):
            SuiteConfig(n_max=1)
        with self.assertRaises(ValidationError):
            SuiteConfig(p=2.0)
        with self.assertRaises(ValidationError):
            SuiteConfig(girths=(1,))
        self.assertFalse(SuiteConfig().record_timings)

    @override_settings(VERIFICATION={
        'TRIALS': 10, 'N_MAX': 5, 'P': 0.4, 'SEED': 3, 'K_VALUES': [3], 'SUBDIVISION_LENGTHS': [2],
        'GIRTHS': [3], 'EXHAUSTIVE_N_MAX': 3, 'RETRY_CAP': 50, 'RECORD_TIMINGS': False, 'OUT_DIR': '/tmp',
    })
    def test_from_settings_and_presets(self):
        cfg = SuiteConfig.from_settings(trials=4)
        self.assertEqual((cfg.trials, cfg.n_max, cfg.seed, cfg.k_values), (4, 5, 3, (3,)))
        theorem3 = cfg.for_suite('theorem3')
        self.assertEqual((theorem3.trials, theorem3.n_max), (4, 7))
        self.assertEqual(cfg.for_suite('lemma1'), cfg)
        # explicit configs are used as given
        self.assertEqual(SMALL.for_suite('theorem3'), SMALL)


class SuiteTests(SimpleTestCase):
    def assertClean(self, report, suite):
        self.assertEqual(report.suite, suite)
        self.assertTrue(report.passed, [r for r in report.records if r.violation])
        self.assertEqual(report.violating_seeds, [])
        self.assertEqual(report.errors, [])

    def test_lemma1(self):
        report = suite_lemma1(with_instances(SMALL, gen_directed_cycle(3), gen_complete_bidirected(2)))
        self.assertClean(report, 'lemma1')
        by_seed = {record.seed: record for record in report.records}
        self.assertEqual((by_seed[-2].c_before, by_seed[-2].c_after), (2, 2))
        self.assertEqual((by_seed[-3].c_before, by_seed[-3].c_after), (1, 1))
        self.assertEqual(by_seed[-3].verdicts['copy_wins'], 1)
        for record in report.records:
            self.assertIn(record.verdicts['copy_wins'], (0, 1))
        self.assertEqual(len(report.records), SMALL.trials + 2)

    def test_lemma2(self):
        report = suite_lemma2(with_instances(SMALL, gen_directed_cycle(3)))
        self.assertClean(report, 'lemma2')
        cycle = [r for r in report.records if r.seed == -2]
        self.assertEqual([r.transform for r in cycle], ['subdivide-m2', 'subdivide-m3'])
        self.assertEqual(cycle[0].c_after, 2)
        self.assertTrue(all(r.verdicts['copy_wins'] in (0, 1) for r in report.records))

    def test_lemma3(self):
        report = suite_lemma3(with_instances(SMALL, gen_directed_cycle(3), gen_complete_bidirected(3)))
        self.assertClean(report, 'lemma3')
        self.assertEqual(report.records[0].verdicts['sc_after'], 1)

    def test_lemma4(self):
        report = suite_lemma4(with_instances(SMALL, gen_complete_bidirected(2)), l=3)
        self.assertClean(report, 'lemma4')
        pair = next(r for r in report.records if r.seed == -2)
        self.assertEqual((pair.transform, pair.verdicts['girth']), ('subdivide-l3', 6))
        self.assertEqual(pair.verdicts['paths_ok'], 1)
        with self.assertRaises(ValidationError):
            suite_lemma4(SMALL, l=1)

    def test_theorem1(self):
        report = suite_theorem1_families(SMALL)
        self.assertClean(report, 'theorem1')
        fano = report.records[0]
        self.assertEqual((fano.seed, fano.n, fano.arcs, fano.c_before), (FANO_SEED, 14, 42, 3))
        self.assertEqual(fano.verdicts, {'p2_induced_free': 1})
        transforms = {r.transform for r in report.records}
        self.assertEqual(transforms, {'projective-q2', 'random', 'oriented-tree'})
        for record in report.records:
            self.assertGreaterEqual(record.c_before, record.verdicts.get('sources', 0))
            if record.seed != FANO_SEED:
                self.assertGreaterEqual(record.verdicts['sccs'], record.verdicts['sources'])
                self.assertLessEqual(record.verdicts['scc_cops'], record.n)

    def test_theorem1_small_budget_is_an_error_not_a_violation(self):
        cfg = SuiteConfig(trials=1, n_max=2, state_budget=500, record_timings=False)
        with self.assertLogs('verification.suites', 'WARNING') as logs:
            report = suite_theorem1_families(cfg)
        self.assertTrue(any('--state-budget' in line for line in logs.output))
        fano = next(r for r in report.records if r.seed == FANO_SEED)
        self.assertIn('--state-budget', fano.error)
        self.assertFalse(fano.violation)
        self.assertTrue(report.passed)

    def test_theorem3(self):
        report = suite_theorem3(with_instances(SMALL, gen_complete_bidirected(3), gen_directed_cycle(4)))
        self.assertClean(report, 'theorem3')
        # 1 + 4 + 64 digraphs on up to three vertices, once per k
        exhaustive = [r for r in report.records if r.transform.startswith('exhaustive')]
        self.assertEqual(len(exhaustive), 69 * len(SMALL.k_values))
        k3 = next(r for r in report.records if r.seed == -2 and r.transform == 'file-k3')
        self.assertEqual((k3.c_before, k3.verdicts['star_free']), (1, 1))
        c4 = next(r for r in report.records if r.seed == -3 and r.transform == 'file-k3')
        self.assertEqual(c4.verdicts['star_free'], 0)
        self.assertIsNone(c4.c_before)
        self.assertIn('witness', c4.verdicts)

    def test_theorem3_k_values(self):
        with self.assertRaisesMessage(ValidationError, "{3, 4, 5}"):
            suite_theorem3(SuiteConfig(k_values=(2,)))

    def test_sampling_cap_is_reported(self):
        cfg = SuiteConfig(trials=2, n_max=3, p=0.0, retry_cap=5, record_timings=False)
        report = suite_lemma3(cfg)
        self.assertEqual(len(report.errors), 2)
        self.assertIn('5 draws', report.errors[0].error)
        self.assertTrue(report.passed)

    def test_filter_rejections_of_file_instances(self):
        report = suite_lemma3(with_instances(SuiteConfig(trials=1, n_max=3), Digraph(2, [(0, 1)])))
        rejected = next(r for r in report.records if r.seed == -2)
        self.assertIn('is_strongly_connected', rejected.error)

    def test_records_are_sorted_by_seed(self):
        report = suite_lemma2(SMALL)
        keys = [record.sort_key for record in report.records]
        self.assertEqual(keys, sorted(keys))


class ReplayTests(SimpleTestCase):
    def test_random_records_replay_exactly(self):
        for run in (suite_lemma1, suite_lemma4, suite_theorem1_families):
            report = run(SMALL)
            for record in report.records:
                if record.seed < 0:
                    continue
                with self.subTest(suite=report.suite, seed=record.seed, transform=record.transform):
                    replayed = replay_record(report.suite, record.seed, SMALL, record.transform)
                    self.assertEqual(replayed, [record])

    def test_exhaustive_and_fano_replay(self):
        report = suite_theorem3(SMALL)
        record = next(r for r in report.records if r.transform == 'exhaustive-n3-k4' and r.seed == 17)
        self.assertEqual(replay_record('theorem3', 17, SMALL, 'exhaustive-n3-k4'), [record])
        fano = replay_record('theorem1', FANO_SEED, SMALL)
        self.assertEqual(fano[0].c_before, 3)

    def test_unknown_suite_and_file_seeds(self):
        with self.assertRaises(ValidationError):
            replay_record('lemma9', 0, SMALL)
        with self.assertRaises(ValidationError):
            replay_record('lemma1', -4, SMALL)


class CsvOutputTests(SimpleTestCase):
    def test_run_all_writes_one_csv_per_suite_and_a_summary(self):
        cfg = SuiteConfig(trials=1, n_max=3, exhaustive_n_max=2, record_timings=False)
        with tempfile.TemporaryDirectory() as tmp:
            reports = run_all(cfg, out_dir=tmp)
            self.assertEqual([r.suite for r in reports], list(SUITE_NAMES))
            self.assertTrue(all(r.passed for r in reports))
            for name in SUITE_NAMES:
                with open(Path(tmp) / f'{name}.csv', newline='') as handle:
                    rows = list(csv.reader(handle))
                self.assertEqual(tuple(rows[0]), CSV_COLUMNS)
                self.assertTrue(all(row[0] == name for row in rows[1:]))
            with open(Path(tmp) / 'summary.csv', newline='') as handle:
                summary = list(csv.DictReader(handle))
            self.assertEqual([row['suite'] for row in summary], list(SUITE_NAMES))
            self.assertEqual({row['violations'] for row in summary}, {'0'})

    def test_output_is_deterministic(self):
        contents = []
        for _ in range(2):
            with tempfile.TemporaryDirectory() as tmp:
                run_suites(['lemma1', 'theorem3'], SMALL, out_dir=tmp)
                contents.append({p.name: p.read_bytes() for p in sorted(Path(tmp).iterdir())})
        self.assertEqual(contents[0], contents[1])

    def test_verdicts_column(self):
        record = InstanceRecord(suite='lemma4', seed=1, verdicts={'sc_after': 1, 'girth': 4})
        self.assertEqual(record.verdict_text(), 'girth=4;sc_after=1')
        self.assertEqual(record.csv_row()[5:7], ['', ''])


def violating_report():
    return ExperimentReport(suite='lemma1', config={'trials': 2}, records=[
        InstanceRecord(suite='lemma1', seed=4, n=3, arcs=3, transform='clique', c_before=2, c_after=1, violation=True),
        InstanceRecord(suite='lemma1', seed=1, n=2, arcs=2, transform='clique', c_before=1, c_after=1),
    ])


class PersistenceTests(TestCase):
    def test_persist_report_refreshes_the_summary(self):
        run = persist_report(violating_report())
        self.assertEqual((run.instances_run, run.violation_count), (2, 1))
        self.assertEqual(run.violating_seeds, [4])
        self.assertFalse(run.passed)
        run.records.get(seed=4).delete()
        run.refresh_from_db()
        self.assertTrue(run.passed)
        self.assertEqual(run.instances_run, 1)

    def test_persist_report_refreshes_the_summary_once(self):
        report = ExperimentReport(suite='lemma3', config={}, records=[
            InstanceRecord(suite='lemma3', seed=seed, n=3, arcs=3, transform='clique') for seed in range(50)
        ])
        original = SuiteRun.refresh_summary
        with mock.patch.object(SuiteRun, 'refresh_summary', autospec=True, side_effect=original) as refresh:
            run = persist_report(report)
        self.assertEqual(refresh.call_count, 1)
        self.assertEqual((run.instances_run, run.records.count()), (50, 50))
        self.assertTrue(run.passed)

    def test_api(self):
        run = persist_report(violating_report())
        persist_report(ExperimentReport(suite='lemma4', config={}, records=[]))

        response = self.client.get('/api/reports/')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json()['count'], 2)

        response = self.client.get('/api/reports/', {'suite': 'lemma1'})
        self.assertEqual([item['id'] for item in response.json()['results']], [run.pk])

        detail = self.client.get(f'/api/reports/{run.pk}/').json()
        self.assertEqual(detail['violating_seeds'], [4])
        self.assertEqual([v['seed'] for v in detail['violations']], [4])

        records = self.client.get(f'/api/reports/{run.pk}/records/').json()
        self.assertEqual([r['seed'] for r in records['results']], [1, 4])
        records = self.client.get(f'/api/reports/{run.pk}/records/', {'violations': 'true'}).json()
        self.assertEqual(records['count'], 1)

        self.assertEqual(self.client.get('/api/reports/9999/records/').status_code, 404)


class VerifyCommandTests(TestCase):
    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.dir = Path(tmp.name)

    def run_command(self, *args):
        out = StringIO()
        call_command('verify', *args, '--out-dir', str(self.dir), '--no-timings', stdout=out)
        return out.getvalue()

    def test_single_suite(self):
        output = self.run_command('--suite', 'lemma4', '--trials', '2', '--n-max', '3')
        self.assertIn('lemma4: 6 records, 0 violations, 0 errors', output)
        self.assertTrue((self.dir / 'lemma4.csv').exists())
        self.assertTrue((self.dir / 'summary.csv').exists())
        self.assertFalse(SuiteRun.objects.exists())

    def test_persist(self):
        self.run_command('--suite', 'lemma3', '--trials', '2', '--n-max', '3', '--persist')
        run = SuiteRun.objects.get()
        self.assertEqual(run.suite, 'lemma3')
        self.assertEqual(SuiteRecord.objects.filter(run=run).count(), 2)
        self.assertTrue(run.passed)

    def test_instance_files(self):
        path = self.dir / 'k3.txt'
        write_arc_list(gen_complete_bidirected(3), path)
        output = self.run_command('--suite', 'lemma1', '--trials', '1', '--n-max', '3', '--instance', str(path))
        self.assertIn('lemma1: 2 records', output)

    def test_corrupted_instance_file(self):
        path = self.dir / 'corrupt.txt'
        path.write_text('2 1\n0 0\n', encoding='utf-8')
        with self.assertRaises(CommandError) as ctx:
            self.run_command('--instance', str(path))
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('corrupt.txt', str(ctx.exception))

    def test_undecodable_instance_file(self):
        path = self.dir / 'binary.txt'
        path.write_bytes(b'2 1\n0 \xff1\n')
        with self.assertRaises(CommandError) as ctx:
            self.run_command('--instance', str(path))
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn('binary.txt', str(ctx.exception))

    def test_timings_flag(self):
        self.run_command('--suite', 'lemma4', '--trials', '1', '--n-max', '3')
        with (self.dir / 'lemma4.csv').open(newline='') as handle:
            self.assertEqual({row['micros'] for row in csv.DictReader(handle)}, {'0'})
        out = StringIO()
        call_command(
            'verify', '--suite', 'lemma4', '--trials', '1', '--n-max', '3',
            '--out-dir', str(self.dir), '--timings', stdout=out,
        )
        self.assertIn('lemma4: 3 records', out.getvalue())

    def test_invalid_configuration(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('--trials', '0')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_violation_exit_status(self):
        with mock.patch('verification.management.commands.verify.run_suites', return_value=[violating_report()]):
            with self.assertRaises(CommandError) as ctx:
                self.run_command('--suite', 'lemma1')
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('lemma1', str(ctx.exception))

    def test_resource_errors_exit_status(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('--suite', 'theorem1', '--trials', '1', '--n-max', '2', '--state-budget', '500')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_replay(self):
        out = StringIO()
        call_command('verify', '--suite', 'lemma1', '--replay', '3', '--trials', '1', stdout=out)
        records = json.loads(out.getvalue())
        self.assertEqual([r['seed'] for r in records], [3])
        self.assertEqual(records[0]['transform'], 'clique')
        with self.assertRaises(CommandError):
            call_command('verify', '--replay', '3', stdout=StringIO())
