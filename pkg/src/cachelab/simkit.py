"""Trace-driven simulation runner, comparison harness, and report emission."""

import csv
import io
import json
from dataclasses import dataclass, fields

from .policies import CacheConfig, make_cache
from .preevict import PreEvictConfig, PreEvictingCache
from .prefetch import (
    ON_EVERY_ACCESS,
    DemandHit,
    DemandMiss,
    Evicted,
    MarkovPredictor,
    PredictorConfig,
    PrefetchConfig,
    PrefetchLog,
    coverage,
    decide_prefetch,
)
from .trace import Trace


class DuplicateLabel(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    cache: CacheConfig
    pre: PreEvictConfig = None
    prefetch: PrefetchConfig = None
    predictor: PredictorConfig = None
    label: str = ""


@dataclass
class SimReport:
    label: str
    accesses: int
    demand_hits: int
    demand_misses: int
    compulsory_misses: int
    evictions: int
    timer_evictions: int
    halfway_evictions: int
    prefetch_issued: int
    prefetch_useful: int
    prefetch_useless: int
    prefetch_harmful: int
    prefetch_coverage: float
    hit_ratio: float
    distinct_keys: int


REPORT_FIELDS = [f.name for f in fields(SimReport)]
FLOAT_FIELDS = ("prefetch_coverage", "hit_ratio")


def run_sim(trace: Trace, config: RunConfig) -> SimReport:
    """One pass over the trace under one configuration.

    Per event: timer-tick evictions, predictor observation, hit/miss resolution
    (halfway filter then base policy on a miss), then prefetch decide/insert.
    Prefetch outcomes resolve as their events occur, a demand miss ahead of the
    same access's evictions, so a victim re-request beats the eviction of the
    entry that displaced it. Deterministic for identical inputs.
    """
    cache = make_cache(config.cache)
    wrapper = None
    if config.pre is not None and config.pre.enabled:
        wrapper = PreEvictingCache(cache, config.pre)
    front = wrapper if wrapper is not None else cache

    prefetching = config.prefetch is not None
    if prefetching:
        pcfg = config.prefetch
        predictor_cfg = config.predictor if config.predictor is not None else PredictorConfig()
        predictor = MarkovPredictor(predictor_cfg.order, predictor_cfg.alpha,
                                    predictor_cfg.min_support)
        log = PrefetchLog()
        prefetch_always = pcfg.trigger == ON_EVERY_ACCESS

    hits = 0
    misses = 0
    compulsory = 0
    evictions = 0
    seen = set()
    access = front.access

    for seq, event in enumerate(trace.events):
        key = event.key
        if prefetching:
            predictor.observe(key)
        outcome = access(key, seq)
        if outcome.hit:
            hits += 1
        else:
            misses += 1
            if key not in seen:
                compulsory += 1
            if prefetching:
                log.resolve(DemandMiss(key))
        seen.add(key)
        if outcome.evicted:
            evictions += len(outcome.evicted)
            if prefetching:
                for victim in outcome.evicted:
                    log.resolve(Evicted(victim))
        if prefetching:
            if outcome.hit:
                log.resolve(DemandHit(key))
            if prefetch_always or not outcome.hit:
                predictions = predictor.predict_next(top_k=pcfg.top_k)
                for pk in decide_prefetch(predictions, pcfg, cache):
                    victims = front.insert(pk, seq, prefetched=True,
                                           prefetch_id=log.stats.issued)
                    log.issue(pk, seq, victims[0] if victims else None)
                    evictions += len(victims)
                    for victim in victims:
                        log.resolve(Evicted(victim))

    if prefetching:
        log.finalize()
        stats = log.stats
        pf_issued, pf_useful = stats.issued, stats.useful
        pf_useless, pf_harmful = stats.useless, stats.harmful
        pf_coverage = coverage(stats)
    else:
        pf_issued = pf_useful = pf_useless = pf_harmful = 0
        pf_coverage = 0.0

    accesses = hits + misses
    return SimReport(
        label=config.label,
        accesses=accesses,
        demand_hits=hits,
        demand_misses=misses,
        compulsory_misses=compulsory,
        evictions=evictions,
        timer_evictions=wrapper.timer_evictions if wrapper is not None else 0,
        halfway_evictions=wrapper.halfway_evictions if wrapper is not None else 0,
        prefetch_issued=pf_issued,
        prefetch_useful=pf_useful,
        prefetch_useless=pf_useless,
        prefetch_harmful=pf_harmful,
        prefetch_coverage=pf_coverage,
        hit_ratio=hits / accesses if accesses else 0.0,
        distinct_keys=len(seen),
    )


def compare(trace: Trace, configs) -> list:
    """Independent run_sim per config over the same trace, reports in config order."""
    labels = set()
    for config in configs:
        if config.label in labels:
            raise DuplicateLabel(f"duplicate label {config.label!r}")
        labels.add(config.label)
    return [run_sim(trace, config) for config in configs]


def _cell(name, value):
    if name in FLOAT_FIELDS:
        return f"{value:.4f}"
    return str(value)


def emit_report(reports, format: str = "table") -> str:
    if format == "json":
        payload = [{name: getattr(r, name) for name in REPORT_FIELDS} for r in reports]
        return json.dumps(payload, indent=2) + "\n"
    if format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(REPORT_FIELDS)
        for r in reports:
            writer.writerow([_cell(name, getattr(r, name)) for name in REPORT_FIELDS])
        return out.getvalue()
    if format == "table":
        rows = [REPORT_FIELDS]
        for r in reports:
            rows.append([_cell(name, getattr(r, name)) for name in REPORT_FIELDS])
        widths = [max(len(row[i]) for row in rows) for i in range(len(REPORT_FIELDS))]
        lines = []
        for row in rows:
            lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip())
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {format!r}")


def parse_report_csv(text: str) -> list:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != REPORT_FIELDS:
        raise ValueError(f"unexpected csv header {header!r}")
    reports = []
    for row in reader:
        values = {}
        for name, cell in zip(REPORT_FIELDS, row):
            if name == "label":
                values[name] = cell
            elif name in FLOAT_FIELDS:
                values[name] = float(cell)
            else:
                values[name] = int(cell)
        reports.append(SimReport(**values))
    return reports
