"""Markov next-key prediction, prefetch decisions, and outcome bookkeeping."""

from dataclasses import dataclass
from typing import NamedTuple

from .trace import InvalidParam

ON_MISS = "on_miss"
ON_EVERY_ACCESS = "on_every_access"

PENDING = "pending"
USEFUL = "useful"
USELESS = "useless"
HARMFUL = "harmful"


class MarkovPredictor:
    """Order-1 or order-2 successor counts over trace keys with pseudocount
    smoothing. Purely a function of the observed key sequence."""

    def __init__(self, order=1, alpha=1.0, min_support=2):
        if order not in (1, 2):
            raise InvalidParam(f"order must be 1 or 2, got {order}")
        if alpha < 0:
            raise InvalidParam(f"alpha must be >= 0, got {alpha}")
        if min_support < 0:
            raise InvalidParam(f"min_support must be >= 0, got {min_support}")
        self.order = order
        self.alpha = alpha
        self.min_support = min_support
        self.counts = {}   # context tuple -> {successor: count}
        self.totals = {}   # context tuple -> observations from that context
        self.context = ()  # rolling window of the last `order` keys

    def observe(self, key):
        ctx = self.context
        if len(ctx) == self.order:
            successors = self.counts.get(ctx)
            if successors is None:
                successors = self.counts[ctx] = {}
                self.totals[ctx] = 0
            successors[key] = successors.get(key, 0) + 1
            self.totals[ctx] += 1
            if self.order == 1:
                self.context = (key,)
            else:
                self.context = (ctx[1], key)
        else:
            self.context = ctx + (key,)

    def predict_next(self, context=None, top_k=1):
        """Ranked (key, probability) pairs for the context's seen successors,
        descending probability, ties by ascending key. Empty below min_support."""
        ctx = self.context if context is None else tuple(context)
        total = self.totals.get(ctx, 0)
        if total == 0 or total < self.min_support:
            return []
        successors = self.counts[ctx]
        denom = total + self.alpha * len(successors)
        # the shared denominator makes count order and probability order identical
        if top_k == 1:
            key, count = min(successors.items(), key=lambda kv: (-kv[1], kv[0]))
            return [(key, (count + self.alpha) / denom)]
        ranked = sorted(successors.items(), key=lambda kv: (-kv[1], kv[0]))
        return [(key, (count + self.alpha) / denom) for key, count in ranked[:top_k]]


def observe(pred: MarkovPredictor, key):
    pred.observe(key)


def predict_next(pred: MarkovPredictor, context, top_k):
    return pred.predict_next(context, top_k)


@dataclass(frozen=True)
class PrefetchConfig:
    top_k: int = 1
    p_min: float = 0.1
    trigger: str = ON_EVERY_ACCESS

    def __post_init__(self):
        if self.top_k < 1:
            raise InvalidParam(f"top_k must be >= 1, got {self.top_k}")
        if not 0.0 <= self.p_min <= 1.0:
            raise InvalidParam(f"p_min must be in [0, 1], got {self.p_min}")
        if self.trigger not in (ON_MISS, ON_EVERY_ACCESS):
            raise InvalidParam(f"unknown trigger {self.trigger!r}")


@dataclass(frozen=True)
class PredictorConfig:
    order: int = 1
    alpha: float = 1.0
    min_support: int = 2


def decide_prefetch(predictions, config: PrefetchConfig, resident) -> list:
    """Up to top_k predicted keys at or above p_min that are not resident, in rank order."""
    chosen = []
    for key, prob in predictions:
        if prob >= config.p_min and key not in resident:
            chosen.append(key)
            if len(chosen) == config.top_k:
                break
    return chosen


class DemandHit(NamedTuple):
    key: int


class DemandMiss(NamedTuple):
    key: int


class Evicted(NamedTuple):
    key: int


class PrefetchRecord:
    __slots__ = ("prefetch_id", "key", "issued_at", "victim", "outcome")

    def __init__(self, prefetch_id, key, issued_at, victim=None):
        self.prefetch_id = prefetch_id
        self.key = key
        self.issued_at = issued_at
        self.victim = victim
        self.outcome = PENDING


@dataclass
class PrefetchStats:
    issued: int = 0
    useful: int = 0
    useless: int = 0
    harmful: int = 0
    prefetch_hits: int = 0
    demand_misses: int = 0


def coverage(stats: PrefetchStats) -> float:
    """100 * prefetch hits / (prefetch hits + demand misses); 0.0 when both are zero."""
    denom = stats.prefetch_hits + stats.demand_misses
    if denom == 0:
        return 0.0
    return 100.0 * stats.prefetch_hits / denom


class PrefetchLog:
    """Issued prefetch records and their pending-state indexes. Each record
    resolves exactly once; harmful wins when a victim miss and an eviction
    arise from the same access."""

    def __init__(self):
        self.records = []
        self.stats = PrefetchStats()
        self._pending_by_key = {}
        self._pending_by_victim = {}

    def issue(self, key, seq, victim=None) -> PrefetchRecord:
        record = PrefetchRecord(len(self.records), key, seq, victim)
        self.records.append(record)
        self.stats.issued += 1
        self._pending_by_key[key] = record
        if victim is not None:
            self._pending_by_victim.setdefault(victim, []).append(record)
        return record

    def _settle(self, record, outcome):
        record.outcome = outcome
        if self._pending_by_key.get(record.key) is record:
            del self._pending_by_key[record.key]

    def resolve(self, event):
        if isinstance(event, DemandMiss):
            self.stats.demand_misses += 1
            for record in self._pending_by_victim.pop(event.key, []):
                if record.outcome == PENDING:
                    self._settle(record, HARMFUL)
                    self.stats.harmful += 1
        elif isinstance(event, DemandHit):
            record = self._pending_by_key.get(event.key)
            if record is not None:
                self._settle(record, USEFUL)
                self.stats.useful += 1
                self.stats.prefetch_hits += 1
        elif isinstance(event, Evicted):
            record = self._pending_by_key.get(event.key)
            if record is not None:
                self._settle(record, USELESS)
                self.stats.useless += 1
        else:
            raise TypeError(f"unknown event {event!r}")

    def finalize(self):
        """End of trace: anything still pending resolves useless."""
        for record in self.records:
            if record.outcome == PENDING:
                self._settle(record, USELESS)
                self.stats.useless += 1
        self._pending_by_key.clear()
        self._pending_by_victim.clear()


def resolve_outcomes(log: PrefetchLog, event):
    log.resolve(event)
