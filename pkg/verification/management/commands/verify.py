from django.core.management.base import CommandError

from digraphs.management.base import INPUT_ERROR, VIOLATION, DigraphCommand
from verification.reports import persist_report
from verification.serializers import InstanceRecordSerializer
from verification.suites import SUITE_NAMES, SuiteConfig, replay_record, run_suites


def _timings(options):
    if options['timings']:
        return True
    return False if options['no_timings'] else None


class Command(DigraphCommand):
    help = 'Run the verification suites and write one CSV per suite plus summary.csv.'

    def add_arguments(self, parser):
        parser.add_argument('--suite', choices=[*SUITE_NAMES, 'all'], default='all')
        parser.add_argument('--trials', type=int, help='Random instances per suite.')
        parser.add_argument('--n-max', type=int, help='Largest random instance order.')
        parser.add_argument('--p', type=float, help='Arc probability of random instances.')
        parser.add_argument('--seed', type=int, help='First seed; suites use seed .. seed + trials - 1.')
        parser.add_argument('--state-budget', type=int, help='Maximum number of game positions per solve.')
        parser.add_argument('--out-dir', help='Directory for the CSV files (default: VERIFICATION["OUT_DIR"]).')
        parser.add_argument(
            '--instance', action='append', default=[], metavar='FILE',
            help='Extra arc-list instance checked by every suite; may be repeated.',
        )
        parser.add_argument('--persist', action='store_true', help='Also store the reports in the database.')
        timings = parser.add_mutually_exclusive_group()
        timings.add_argument('--timings', action='store_true', help='Write wall-clock microseconds in the micros column.')
        timings.add_argument('--no-timings', action='store_true', help='Write 0 in the micros column.')
        parser.add_argument('--replay', type=int, metavar='SEED', help='Recompute the records of one seed and print them.')
        parser.add_argument('--transform', help='With --replay: only records of this transform.')

    def handle(self, *args, **options):
        instances = tuple((path, self.load(path)) for path in options['instance'])
        with self.input_errors():
            cfg = SuiteConfig.from_settings(
                trials=options['trials'],
                n_max=options['n_max'],
                p=options['p'],
                seed=options['seed'],
                state_budget=options['state_budget'],
                record_timings=_timings(options),
                instances=instances or None,
            )

        if options['replay'] is not None:
            if options['suite'] == 'all':
                raise CommandError('--replay needs a single --suite.', returncode=INPUT_ERROR)
            with self.input_errors():
                records = replay_record(options['suite'], options['replay'], cfg, options['transform'])
            self.emit_json(InstanceRecordSerializer(records, many=True).data)
            return

        names = SUITE_NAMES if options['suite'] == 'all' else (options['suite'],)
        with self.input_errors():
            reports = run_suites(names, cfg, options['out_dir'])

        for report in reports:
            if options['persist']:
                persist_report(report)
            line = (
                f"{report.suite}: {report.instances_run} records, "
                f"{report.violation_count} violations, {len(report.errors)} errors"
            )
            self.stdout.write(self.style.SUCCESS(line) if report.passed else self.style.ERROR(line))

        violating = [report.suite for report in reports if not report.passed]
        if violating:
            raise CommandError(f"Violations found in: {', '.join(violating)}.", returncode=VIOLATION)
        if any(report.errors for report in reports):
            raise CommandError(
                'Some instances could not be checked, see the error records '
                '(raise --state-budget or COPS_STATE_BUDGET for resource errors).',
                returncode=INPUT_ERROR,
            )
