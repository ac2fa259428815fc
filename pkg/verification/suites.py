"""
Verification suites: each one turns a structural claim about the pursuit
game into an executable assertion over seeded random and exhaustive
instances.

A random instance is drawn from ``default_rng([suite key, seed])``, so any
record can be reproduced from its (suite, seed) pair. Digraphs read from
files are keyed by negative seeds in command-line order starting at -2; the
doubled Fano plane record of the theorem1 suite uses seed -1.
"""
import logging
import math
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from digraphs.constructions import (
    clique_substitute_all,
    clique_substitution_ports,
    gen_all_digraphs,
    gen_directed_path,
    gen_lemma3_stars,
    gen_projective_plane_incidence_doubled,
    gen_random_digraph,
    gen_random_oriented_tree,
    subdivision_map,
)
from digraphs.core import (
    Digraph,
    count_sources,
    induced_subdigraph,
    is_strongly_connected,
    is_weakly_connected,
    strongly_connected_components,
    underlying_girth,
)
from digraphs.patterns import containment_chain_check, find_induced, find_pk_star
from pursuit.exceptions import PursuitError
from pursuit.solver import cop_number, cops_win_from_placement, solve

from .reports import ExperimentReport, InstanceRecord, write_csv, write_summary

logger = logging.getLogger(__name__)

SUITE_NAMES = ('lemma1', 'lemma2', 'lemma3', 'lemma4', 'theorem1', 'theorem3')
SUITE_KEYS = {name: index for index, name in enumerate(SUITE_NAMES)}
FANO_SEED = -1
THEOREM3_K_VALUES = {3, 4, 5}

# Instance sizes each suite is sized for when run from settings.
SUITE_PRESETS = {
    'lemma2': {'n_max': 5},
    'lemma3': {'trials': 100},
    'lemma4': {'trials': 100},
    'theorem3': {'trials': 300, 'n_max': 7},
}


class SamplingError(Exception):
    """The rejection sampler ran out of draws for one instance."""


@dataclass(frozen=True)
class SuiteConfig:
    trials: int = 200
    n_max: int = 6
    p: float = 0.35
    k_values: tuple = (3, 4)
    state_budget: int | None = None
    seed: int = 0
    lengths: tuple = (2, 3)
    girths: tuple = (2, 3, 4)
    exhaustive_n_max: int = 4
    retry_cap: int = 1000
    record_timings: bool = False
    instances: tuple = ()
    use_presets: bool = False
    pinned: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.trials < 1:
            raise ValidationError(f"trials must be at least 1, got {self.trials}.")
        if self.n_max < 2:
            raise ValidationError(f"n_max must be at least 2, got {self.n_max}.")
        if not 0.0 <= self.p <= 1.0:
            raise ValidationError(f"Arc probability must lie in [0, 1], got {self.p}.")
        if self.seed < 0:
            raise ValidationError(f"Seed must be non-negative, got {self.seed}.")
        if self.retry_cap < 1:
            raise ValidationError(f"Retry cap must be at least 1, got {self.retry_cap}.")
        if self.state_budget is not None and self.state_budget < 1:
            raise ValidationError(f"State budget must be positive, got {self.state_budget}.")
        if any(m < 1 for m in self.lengths):
            raise ValidationError(f"Subdivision lengths must be at least 1, got {list(self.lengths)}.")
        if any(l < 2 for l in self.girths):
            raise ValidationError(f"Target girths must be at least 2, got {list(self.girths)}.")

    @classmethod
    def from_settings(cls, **overrides):
        """
        Defaults from ``settings.VERIFICATION``; keyword overrides set to None
        are ignored. Fields given explicitly are pinned and survive the
        per-suite presets.
        """
        conf = settings.VERIFICATION
        values = {
            'trials': conf['TRIALS'],
            'n_max': conf['N_MAX'],
            'p': conf['P'],
            'k_values': tuple(conf['K_VALUES']),
            'state_budget': None,
            'seed': conf['SEED'],
            'lengths': tuple(conf['SUBDIVISION_LENGTHS']),
            'girths': tuple(conf['GIRTHS']),
            'exhaustive_n_max': conf['EXHAUSTIVE_N_MAX'],
            'retry_cap': conf['RETRY_CAP'],
            'record_timings': conf['RECORD_TIMINGS'],
        }
        given = {key: value for key, value in overrides.items() if value is not None}
        values.update(given)
        return cls(**values, use_presets=True, pinned=frozenset(given))

    def for_suite(self, name: str) -> 'SuiteConfig':
        if not self.use_presets:
            return self
        preset = {key: value for key, value in SUITE_PRESETS.get(name, {}).items() if key not in self.pinned}
        return replace(self, **preset)

    def seeds(self) -> range:
        return range(self.seed, self.seed + self.trials)

    def to_dict(self) -> dict:
        return {
            'trials': self.trials,
            'n_max': self.n_max,
            'p': self.p,
            'k_values': list(self.k_values),
            'state_budget': self.state_budget,
            'seed': self.seed,
            'lengths': list(self.lengths),
            'girths': list(self.girths),
            'exhaustive_n_max': self.exhaustive_n_max,
            'retry_cap': self.retry_cap,
            'instances': [label for label, _ in self.instances],
        }


def instance_rng(suite: str, seed: int) -> np.random.Generator:
    return np.random.default_rng([SUITE_KEYS[suite], seed])


def draw_instance(rng: np.random.Generator, cfg: SuiteConfig, accept=None, n_min: int = 2) -> Digraph:
    """Rejection-sample a G(n, p) digraph passing ``accept``, n drawn once per instance."""
    n = int(rng.integers(n_min, cfg.n_max + 1))
    for _ in range(cfg.retry_cap):
        d = gen_random_digraph(n, cfg.p, int(rng.integers(2 ** 32)))
        if accept is None or accept(d):
            return d
    raise SamplingError(
        f"No digraph on {n} vertices passed {accept.__name__} in {cfg.retry_cap} draws (p={cfg.p})."
    )


class _Stopwatch:
    def __init__(self, cfg: SuiteConfig):
        self.enabled = cfg.record_timings
        self.started = time.perf_counter()

    @property
    def micros(self) -> int:
        if not self.enabled:
            return 0
        return int((time.perf_counter() - self.started) * 1_000_000)


def _cops(d: Digraph, cfg: SuiteConfig, k_max: int | None = None) -> int | None:
    return _cop_outcome(d, cfg, k_max).value


def _cop_outcome(d: Digraph, cfg: SuiteConfig, k_max: int | None = None):
    # k_max = n never exceeds: n cops can sit on every vertex
    return cop_number(d, d.n if k_max is None else k_max, cfg.state_budget)


def _copied_placement_wins(d: Digraph, cfg: SuiteConfig, placement, project) -> int:
    """Whether cops win on d from the image of a winning placement of the transformed digraph."""
    copied = [project(x) for x in placement]
    return int(cops_win_from_placement(solve(d, len(copied), cfg.state_budget), copied))


def _record(suite: str, seed: int, d: Digraph, transform: str, **fields) -> InstanceRecord:
    return InstanceRecord(suite=suite, seed=seed, n=d.n, arcs=d.arc_count, transform=transform, **fields)


# Per-instance checks: (d, seed, cfg, source) -> list of records.
# copy_wins is informational and never part of the violation.

def _check_lemma1(d, seed, cfg, source):
    watch = _Stopwatch(cfg)
    before = _cops(d, cfg)
    plus, ports = clique_substitution_ports(d)
    outcome = _cop_outcome(plus, cfg)
    after = outcome.value
    return [_record(
        'lemma1', seed, d, 'clique',
        c_before=before, c_after=after,
        verdicts={
            'plus_n': plus.n,
            'copy_wins': _copied_placement_wins(d, cfg, outcome.placement, ports.project),
        },
        micros=watch.micros, violation=after < before,
    )]


def _check_lemma2(d, seed, cfg, source):
    records = []
    before = _cops(d, cfg)
    for m in cfg.lengths:
        watch = _Stopwatch(cfg)
        subdivided, mapping = subdivision_map(d, m)
        outcome = _cop_outcome(subdivided, cfg)
        after = outcome.value
        records.append(_record(
            'lemma2', seed, d, f'subdivide-m{m}',
            c_before=before, c_after=after,
            verdicts={
                'sub_n': subdivided.n,
                'copy_wins': _copied_placement_wins(d, cfg, outcome.placement, mapping.project),
            },
            micros=watch.micros, violation=after < before,
        ))
    return records


def _check_lemma3(d, seed, cfg, source):
    watch = _Stopwatch(cfg)
    plus = clique_substitute_all(d)
    verdicts = {'sc_after': int(is_strongly_connected(plus))}
    for index, star in enumerate(gen_lemma3_stars()):
        verdicts[f'star{index}'] = int(find_induced(plus, star) is not None)
    violation = not verdicts['sc_after'] or any(verdicts[f'star{i}'] for i in range(4))
    return [_record('lemma3', seed, d, 'clique', verdicts=verdicts, micros=watch.micros, violation=violation)]


def _check_lemma4(d, seed, cfg, source):
    records = []
    for l in cfg.girths:
        watch = _Stopwatch(cfg)
        subdivided, mapping = subdivision_map(d, l)
        girth = underlying_girth(subdivided)
        strong = is_strongly_connected(subdivided)
        paths_ok = all(
            len(path) == l + 1 and (path[0], path[-1]) == (mapping.embedding[u], mapping.embedding[v])
            for (u, v), path in mapping.paths.items()
        )
        records.append(_record(
            'lemma4', seed, d, f'subdivide-l{l}',
            verdicts={
                'girth': 'inf' if math.isinf(girth) else girth,
                'sc_after': int(strong),
                'paths_ok': int(paths_ok),
            },
            micros=watch.micros, violation=girth < l or not strong or not paths_ok,
        ))
    return records


def _source_bound_record(d, seed, cfg, transform):
    watch = _Stopwatch(cfg)
    sources = count_sources(d)
    c = _cops(d, cfg)
    components = strongly_connected_components(d)
    component_cops = max(_cops(induced_subdigraph(d, sorted(part)), cfg) for part in components)
    return _record(
        'theorem1', seed, d, transform,
        c_before=c,
        verdicts={'sources': sources, 'sccs': len(components), 'scc_cops': component_cops},
        micros=watch.micros, violation=c < sources,
    )


def _check_theorem1(d, seed, cfg, source):
    return [_source_bound_record(d, seed, cfg, source)]


def _fano_record(cfg: SuiteConfig) -> InstanceRecord:
    watch = _Stopwatch(cfg)
    fano = gen_projective_plane_incidence_doubled(2)
    p2_free = find_induced(fano, gen_directed_path(2)) is None
    c = cop_number(fano, 3, cfg.state_budget).value
    return _record(
        'theorem1', FANO_SEED, fano, 'projective-q2',
        c_before=c, verdicts={'p2_induced_free': int(p2_free)},
        micros=watch.micros, violation=not p2_free or c != 3,
    )


def _check_theorem3(d, seed, cfg, source):
    records = []
    strong = is_strongly_connected(d)
    for k in cfg.k_values:
        watch = _Stopwatch(cfg)
        chain = containment_chain_check(d, k)
        verdicts = {
            'sc': int(strong),
            'subgraph_free': int(chain.pk_subgraph_free),
            'star_free': int(chain.pk_star_free),
            'induced_free': int(chain.pk_induced_free),
        }
        c = None
        violation = not chain.holds
        if chain.pk_star_free:
            if strong:
                c = _cops(d, cfg, k_max=k - 2)
                violation = violation or c is None
        else:
            verdicts['witness'] = '-'.join(map(str, find_pk_star(d, k).vertices))
        records.append(_record(
            'theorem3', seed, d, f'{source}-k{k}',
            c_before=c, verdicts=verdicts, micros=watch.micros, violation=violation,
        ))
    return records


@dataclass(frozen=True)
class _Suite:
    name: str
    accept: Callable | None
    check: Callable
    n_min: int = 2
    companions: Callable | None = None


def _oriented_tree_companion(rng, d):
    return [('oriented-tree', gen_random_oriented_tree(d.n, int(rng.integers(2 ** 32))))]


SUITES = {
    'lemma1': _Suite('lemma1', is_weakly_connected, _check_lemma1),
    'lemma2': _Suite('lemma2', is_weakly_connected, _check_lemma2),
    'lemma3': _Suite('lemma3', is_strongly_connected, _check_lemma3),
    'lemma4': _Suite('lemma4', is_strongly_connected, _check_lemma4),
    'theorem1': _Suite('theorem1', None, _check_theorem1, n_min=1, companions=_oriented_tree_companion),
    'theorem3': _Suite('theorem3', is_strongly_connected, _check_theorem3),
}


def _guarded(suite: str, seed: int, produce) -> list[InstanceRecord]:
    """Resource, sampling and per-instance input failures become error records."""
    try:
        return produce()
    except (PursuitError, SamplingError, ValidationError) as exc:
        message = '; '.join(exc.messages) if isinstance(exc, ValidationError) else str(exc)
        logger.warning("%s seed %d: %s", suite, seed, message)
        return [InstanceRecord(suite=suite, seed=seed, error=message)]


def _random_records(suite: _Suite, seed: int, cfg: SuiteConfig) -> list[InstanceRecord]:
    def produce():
        rng = instance_rng(suite.name, seed)
        d = draw_instance(rng, cfg, suite.accept, suite.n_min)
        records = suite.check(d, seed, cfg, 'random')
        if suite.companions is not None:
            for label, other in suite.companions(rng, d):
                records.extend(suite.check(other, seed, cfg, label))
        return records
    return _guarded(suite.name, seed, produce)


def _file_records(suite: _Suite, cfg: SuiteConfig) -> list[InstanceRecord]:
    records = []
    for index, (label, d) in enumerate(cfg.instances):
        seed = -(index + 2)
        if suite.accept is not None and not suite.accept(d):
            records.append(InstanceRecord(
                suite=suite.name, seed=seed, n=d.n, arcs=d.arc_count, transform='file',
                error=f"{label} does not pass {suite.accept.__name__}",
            ))
            continue
        records.extend(_guarded(suite.name, seed, lambda d=d, seed=seed: suite.check(d, seed, cfg, 'file')))
    return records


def _exhaustive_records(cfg: SuiteConfig, n: int, masks=None) -> list[InstanceRecord]:
    records = []
    for mask, d in gen_all_digraphs(n):
        if masks is not None and mask not in masks:
            continue
        records.extend(_guarded(
            'theorem3', mask, lambda d=d, mask=mask: _check_theorem3(d, mask, cfg, f'exhaustive-n{n}'),
        ))
    return records


def _finish(name: str, cfg: SuiteConfig, records: list) -> ExperimentReport:
    report = ExperimentReport(suite=name, config=cfg.to_dict(), records=records)
    for record in report.records:
        if record.violation:
            logger.warning(
                "%s violation at seed %d (%s): %s", name, record.seed, record.transform, record.verdict_text()
            )
    logger.info(
        "%s: %d records, %d violations, %d errors",
        name, report.instances_run, report.violation_count, len(report.errors),
    )
    return report


def _run(name: str, cfg: SuiteConfig, extra=()) -> ExperimentReport:
    suite = SUITES[name]
    records = list(extra)
    for seed in cfg.seeds():
        records.extend(_random_records(suite, seed, cfg))
    records.extend(_file_records(suite, cfg))
    return _finish(name, cfg, records)


def suite_lemma1(cfg: SuiteConfig) -> ExperimentReport:
    """Clique substitution never lowers the cop number."""
    return _run('lemma1', cfg.for_suite('lemma1'))


def suite_lemma2(cfg: SuiteConfig) -> ExperimentReport:
    """Replacing every arc by a directed path of m arcs never lowers the cop number."""
    return _run('lemma2', cfg.for_suite('lemma2'))


def suite_lemma3(cfg: SuiteConfig) -> ExperimentReport:
    """Clique substitution keeps strong connectivity and avoids all four 3-stars."""
    return _run('lemma3', cfg.for_suite('lemma3'))


def suite_lemma4(cfg: SuiteConfig, l: int | None = None) -> ExperimentReport:
    """Subdividing by l reaches underlying girth at least l and keeps strong connectivity."""
    cfg = cfg.for_suite('lemma4')
    if l is not None:
        cfg = replace(cfg, girths=(l,))
    return _run('lemma4', cfg)


def suite_theorem1_families(cfg: SuiteConfig) -> ExperimentReport:
    """
    The source count bounds the cop number from below (random digraphs and
    oriented trees), and the doubled Fano plane is P_2-induced-free with cop
    number 3.
    """
    cfg = cfg.for_suite('theorem1')
    fano = _guarded('theorem1', FANO_SEED, lambda: [_fano_record(cfg)])
    return _run('theorem1', cfg, extra=fano)


def _check_theorem3_k_values(cfg: SuiteConfig) -> None:
    if not cfg.k_values or not set(cfg.k_values) <= THEOREM3_K_VALUES:
        raise ValidationError(f"k values must be drawn from {{3, 4, 5}}, got {list(cfg.k_values)}.")


def suite_theorem3(cfg: SuiteConfig) -> ExperimentReport:
    """Every strongly connected P_k*-free digraph is won by k - 2 cops."""
    cfg = cfg.for_suite('theorem3')
    _check_theorem3_k_values(cfg)
    exhaustive = []
    for n in range(1, min(cfg.exhaustive_n_max, cfg.n_max) + 1):
        exhaustive.extend(_exhaustive_records(cfg, n))
    return _run('theorem3', cfg, extra=exhaustive)


SUITE_RUNNERS = {
    'lemma1': suite_lemma1,
    'lemma2': suite_lemma2,
    'lemma3': suite_lemma3,
    'lemma4': suite_lemma4,
    'theorem1': suite_theorem1_families,
    'theorem3': suite_theorem3,
}


def run_suites(names, cfg: SuiteConfig, out_dir=None) -> list[ExperimentReport]:
    out_dir = Path(out_dir or settings.VERIFICATION['OUT_DIR'])
    reports = []
    for name in names:
        if name not in SUITE_RUNNERS:
            raise ValidationError(f"Unknown suite {name!r}, expected one of {', '.join(SUITE_NAMES)}.")
        report = SUITE_RUNNERS[name](cfg)
        write_csv(report, out_dir)
        reports.append(report)
    write_summary(reports, out_dir)
    logger.info("wrote %d suite reports to %s", len(reports), out_dir)
    return reports


def run_all(cfg: SuiteConfig, out_dir=None) -> list[ExperimentReport]:
    return run_suites(SUITE_NAMES, cfg, out_dir)


def replay_record(suite: str, seed: int, cfg: SuiteConfig, transform: str | None = None) -> list[InstanceRecord]:
    """
    Recompute the records a suite produced for one seed. ``transform``
    narrows the result and selects the exhaustive enumeration for theorem3
    (``exhaustive-n<N>-k<K>``, seed = arc bitmask).
    """
    if suite not in SUITES:
        raise ValidationError(f"Unknown suite {suite!r}, expected one of {', '.join(SUITE_NAMES)}.")
    cfg = cfg.for_suite(suite)
    if suite == 'lemma4' and transform and transform.startswith('subdivide-l'):
        cfg = replace(cfg, girths=(int(transform.removeprefix('subdivide-l')),))
    if suite == 'theorem3':
        _check_theorem3_k_values(cfg)

    if suite == 'theorem1' and seed == FANO_SEED:
        records = _guarded(suite, seed, lambda: [_fano_record(cfg)])
    elif suite == 'theorem3' and transform and transform.startswith('exhaustive-n'):
        n = int(transform.removeprefix('exhaustive-n').split('-')[0])
        records = _exhaustive_records(cfg, n, masks={seed})
    elif seed >= 0:
        records = _random_records(SUITES[suite], seed, cfg)
    else:
        raise ValidationError(f"Seed {seed} of suite {suite} belongs to a file instance and cannot be replayed.")

    if transform is not None:
        records = [record for record in records if record.transform == transform or record.error]
    return records
