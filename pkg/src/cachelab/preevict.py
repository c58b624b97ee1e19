"""Pre-eviction wrappers: halfway address-range clearing and per-entry expiry timers."""

from dataclasses import dataclass

from .policies import AccessOutcome
from .trace import InvalidParam


@dataclass(frozen=True)
class PreEvictConfig:
    halfway_enabled: bool = False
    address_space_size: int = 0
    timer_enabled: bool = False
    timer_init: int = 2048

    def __post_init__(self):
        if self.timer_init < 1:
            raise InvalidParam(f"timer_init must be >= 1, got {self.timer_init}")
        if self.halfway_enabled and self.address_space_size < 2:
            raise InvalidParam("address_space_size must be >= 2 with halfway enabled")

    @property
    def enabled(self):
        return self.halfway_enabled or self.timer_enabled


def halfway_filter(state, requested_key, config: PreEvictConfig) -> set:
    """Keys to evict on a demand miss: when the request lands at or above halfway,
    every resident below halfway goes. Pure; the caller performs the evictions."""
    halfway = config.address_space_size // 2
    if requested_key < halfway:
        return set()
    return {key for key in state.entries if key < halfway}


def tick_timers(state, config: PreEvictConfig) -> set:
    """Decrement every resident timer by one; return the keys that expired.
    The caller evicts them before serving the access."""
    expired = set()
    for key, meta in state.entries.items():
        meta.timer -= 1
        if meta.timer <= 0:
            expired.add(key)
    return expired


class PreEvictingCache:
    """Per access: expire timers, serve the hit, else halfway-filter then the base
    policy's insertion. With both axes disabled this is an identity wrapper."""

    def __init__(self, base, config: PreEvictConfig):
        self.base = base
        self.pre = config
        self.capacity = base.capacity
        self.timer_evictions = 0
        self.halfway_evictions = 0

    def __contains__(self, key):
        return key in self.base

    def __len__(self):
        return len(self.base)

    @property
    def entries(self):
        return self.base.entries

    def resident_keys(self):
        return self.base.resident_keys()

    def access(self, key, seq) -> AccessOutcome:
        pre = self.pre
        removed = []
        if pre.timer_enabled:
            for expired in sorted(tick_timers(self.base, pre)):
                self.base.evict_key(expired)
                removed.append(expired)
            self.timer_evictions += len(removed)
        if pre.halfway_enabled and key not in self.base:
            cleared = sorted(halfway_filter(self.base, key, pre))
            for low in cleared:
                self.base.evict_key(low)
            self.halfway_evictions += len(cleared)
            removed.extend(cleared)
        outcome = self.base.access(key, seq)
        if pre.timer_enabled:
            self.base.entries[key].timer = pre.timer_init
        if not removed:
            return outcome
        removed.extend(outcome.evicted)
        return AccessOutcome(outcome.hit, tuple(removed), outcome.was_prefetched_hit)

    def insert(self, key, seq, prefetched=False, prefetch_id=None) -> tuple:
        evicted = self.base.insert(key, seq, prefetched, prefetch_id)
        if self.pre.timer_enabled:
            self.base.entries[key].timer = self.pre.timer_init
        return evicted

    def evict_key(self, key):
        self.base.evict_key(key)


def wrap(base_config, pre: PreEvictConfig) -> PreEvictingCache:
    from .policies import make_cache

    return PreEvictingCache(make_cache(base_config), pre)
