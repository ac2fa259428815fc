"""In-memory experiment reports and their CSV form."""
import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path

from django.db import transaction

logger = logging.getLogger(__name__)

CSV_COLUMNS = ('suite', 'seed', 'n', 'arcs', 'transform', 'c_before', 'c_after', 'verdicts', 'micros')
SUMMARY_COLUMNS = ('suite', 'instances', 'violations', 'errors', 'violating_seeds')


@dataclass
class InstanceRecord:
    suite: str
    seed: int
    n: int = 0
    arcs: int = 0
    transform: str = ''
    c_before: int | None = None
    c_after: int | None = None
    verdicts: dict = field(default_factory=dict)
    micros: int = 0
    violation: bool = False
    error: str = ''

    @property
    def sort_key(self):
        return self.seed, self.transform

    def verdict_text(self) -> str:
        return ';'.join(f"{key}={value}" for key, value in sorted(self.verdicts.items()))

    def csv_row(self) -> list:
        def blank(value):
            return '' if value is None else value
        return [
            self.suite, self.seed, self.n, self.arcs, self.transform,
            blank(self.c_before), blank(self.c_after), self.verdict_text(), self.micros,
        ]


@dataclass
class ExperimentReport:
    suite: str
    config: dict
    records: list = field(default_factory=list)

    def __post_init__(self):
        self.records.sort(key=lambda record: record.sort_key)

    @property
    def instances_run(self) -> int:
        return len(self.records)

    @property
    def violating_seeds(self) -> list[int]:
        return sorted({record.seed for record in self.records if record.violation})

    @property
    def violation_count(self) -> int:
        return sum(1 for record in self.records if record.violation)

    @property
    def errors(self) -> list[InstanceRecord]:
        return [record for record in self.records if record.error]

    @property
    def passed(self) -> bool:
        return self.violation_count == 0


def write_csv(report: ExperimentReport, out_dir) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{report.suite}.csv"
    with path.open('w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(CSV_COLUMNS)
        for record in report.records:
            writer.writerow(record.csv_row())
    return path


def write_summary(reports, out_dir) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / 'summary.csv'
    with path.open('w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(SUMMARY_COLUMNS)
        for report in reports:
            writer.writerow([
                report.suite,
                report.instances_run,
                report.violation_count,
                len(report.errors),
                ' '.join(str(seed) for seed in report.violating_seeds),
            ])
    return path


@transaction.atomic
def persist_report(report: ExperimentReport):
    from .models import SuiteRecord, SuiteRun

    run = SuiteRun.objects.create(suite=report.suite, config=report.config)
    # bulk_create sends no post_save
    SuiteRecord.objects.bulk_create([
        SuiteRecord(
            run=run,
            seed=record.seed,
            n=record.n,
            arcs=record.arcs,
            transform=record.transform,
            c_before=record.c_before,
            c_after=record.c_after,
            verdicts=record.verdicts,
            micros=record.micros,
            violation=record.violation,
            error=record.error,
        )
        for record in report.records
    ], batch_size=1000)
    run.refresh_summary()
    logger.info("stored %s run #%d with %d records", report.suite, run.pk, run.instances_run)
    return run
