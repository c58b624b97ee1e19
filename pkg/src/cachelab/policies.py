"""Single-level fully-associative cache model with FIFO/LIFO/LRU/MRU and ARC."""

from collections import OrderedDict
from dataclasses import dataclass
from typing import NamedTuple

from .trace import InvalidParam

FIFO = "fifo"
LIFO = "lifo"
LRU = "lru"
MRU = "mru"
ARC = "arc"
POLICIES = (FIFO, LIFO, LRU, MRU, ARC)

UNIT = "unit"
RATIO = "ratio"


@dataclass(frozen=True)
class CacheConfig:
    capacity: int
    policy: str = LRU
    arc_adaptation: str = UNIT

    def __post_init__(self):
        if self.capacity < 1:
            raise InvalidParam(f"capacity must be >= 1, got {self.capacity}")
        if self.policy not in POLICIES:
            raise InvalidParam(f"unknown policy {self.policy!r}")
        if self.arc_adaptation not in (UNIT, RATIO):
            raise InvalidParam(f"unknown arc_adaptation {self.arc_adaptation!r}")


class EntryMeta:
    __slots__ = ("key", "inserted_at", "last_used_at", "use_count", "timer",
                 "prefetched", "prefetch_id")

    def __init__(self, key, seq, prefetched=False, prefetch_id=None):
        self.key = key
        self.inserted_at = seq
        self.last_used_at = seq
        self.use_count = 0 if prefetched else 1
        self.timer = 0
        self.prefetched = prefetched
        self.prefetch_id = prefetch_id


class AccessOutcome(NamedTuple):
    hit: bool
    evicted: tuple = ()
    was_prefetched_hit: bool = False


class CacheState:
    """Resident entries plus recency and insertion books for the classical policies."""

    def __init__(self, config: CacheConfig):
        if config.policy == ARC:
            raise InvalidParam("use ArcState for the arc policy")
        self.config = config
        self.capacity = config.capacity
        self.entries = {}               # key -> EntryMeta
        self.recency = OrderedDict()    # least -> most recently used
        self.insertion = OrderedDict()  # oldest -> newest insertion
        self.clock = 0
        self._victim = _VICTIM_FN[config.policy]

    def __contains__(self, key):
        return key in self.entries

    def __len__(self):
        return len(self.entries)

    def resident_keys(self):
        return list(self.entries)

    def access(self, key, seq) -> AccessOutcome:
        self.clock = seq + 1
        meta = self.entries.get(key)
        if meta is not None:
            meta.last_used_at = seq
            meta.use_count += 1
            self.recency.move_to_end(key)
            was_prefetched = meta.prefetched
            meta.prefetched = False
            return AccessOutcome(True, (), was_prefetched)
        return AccessOutcome(False, self.insert(key, seq))

    def insert(self, key, seq, prefetched=False, prefetch_id=None) -> tuple:
        """Insertion path shared by demand misses and prefetches; returns evicted keys."""
        evicted = ()
        if len(self.entries) >= self.capacity:
            victim = self._victim(self)
            self.evict_key(victim)
            evicted = (victim,)
        self.entries[key] = EntryMeta(key, seq, prefetched, prefetch_id)
        self.recency[key] = None
        self.insertion[key] = None
        return evicted

    def evict_key(self, key):
        del self.entries[key]
        del self.recency[key]
        del self.insertion[key]


def victim_fifo(state: CacheState):
    return next(iter(state.insertion))


def victim_lifo(state: CacheState):
    return next(reversed(state.insertion))


def victim_lru(state: CacheState):
    return next(iter(state.recency))


def victim_mru(state: CacheState):
    return next(reversed(state.recency))


_VICTIM_FN = {FIFO: victim_fifo, LIFO: victim_lifo, LRU: victim_lru, MRU: victim_mru}


def access(state, key, seq) -> AccessOutcome:
    return state.access(key, seq)


def snapshot_lru_order(state: CacheState) -> list:
    """Resident keys, least recently used first. Does not mutate the state."""
    return list(state.recency)


class ArcState:
    """Two resident LRU lists (t1 recency, t2 frequency), two ghost lists, and the
    adaptive t1 target size p."""

    def __init__(self, config: CacheConfig):
        self.config = config
        self.capacity = config.capacity
        self.unit_adaptation = config.arc_adaptation == UNIT
        self.entries = {}           # resident key -> EntryMeta
        self.t1 = OrderedDict()     # seen once recently, LRU -> MRU
        self.t2 = OrderedDict()     # seen at least twice, LRU -> MRU
        self.b1 = OrderedDict()     # ghosts of t1
        self.b2 = OrderedDict()     # ghosts of t2
        self.p = 0
        self.clock = 0

    def __contains__(self, key):
        return key in self.entries

    def __len__(self):
        return len(self.entries)

    def resident_keys(self):
        return list(self.entries)

    def access(self, key, seq) -> AccessOutcome:
        self.clock = seq + 1
        meta = self.entries.get(key)
        if meta is not None:
            if key in self.t1:
                del self.t1[key]
                self.t2[key] = None
            else:
                self.t2.move_to_end(key)
            meta.last_used_at = seq
            meta.use_count += 1
            was_prefetched = meta.prefetched
            meta.prefetched = False
            return AccessOutcome(True, (), was_prefetched)
        return AccessOutcome(False, self.insert(key, seq))

    def insert(self, key, seq, prefetched=False, prefetch_id=None) -> tuple:
        """Miss-path insertion: ghost recall with adaptation, or cold insert at t1 MRU."""
        cap = self.capacity
        evicted = ()
        if key in self.b1:
            delta = 1 if self.unit_adaptation else max(1, len(self.b2) // len(self.b1))
            self.p = min(self.p + delta, cap)
            if len(self.entries) >= cap:
                evicted = (self._replace(),)
            del self.b1[key]
            self.t2[key] = None
        elif key in self.b2:
            delta = 1 if self.unit_adaptation else max(1, len(self.b1) // len(self.b2))
            self.p = max(self.p - delta, 0)
            if len(self.entries) >= cap:
                evicted = (self._replace(),)
            del self.b2[key]
            self.t2[key] = None
        else:
            if len(self.t1) + len(self.b1) == cap:
                if len(self.t1) < cap:
                    self.b1.popitem(last=False)
                    if len(self.entries) >= cap:
                        evicted = (self._replace(),)
                else:
                    # b1 empty, t1 full: the t1 LRU falls out of the directory entirely
                    old, _ = self.t1.popitem(last=False)
                    del self.entries[old]
                    evicted = (old,)
            else:
                total = len(self.t1) + len(self.t2) + len(self.b1) + len(self.b2)
                if total >= cap:
                    if total >= 2 * cap:
                        self.b2.popitem(last=False)
                    if len(self.entries) >= cap:
                        evicted = (self._replace(),)
            self.t1[key] = None
        self.entries[key] = EntryMeta(key, seq, prefetched, prefetch_id)
        return evicted

    def _replace(self):
        if len(self.t1) >= max(1, self.p):
            victim, _ = self.t1.popitem(last=False)
            self.b1[victim] = None
        else:
            victim, _ = self.t2.popitem(last=False)
            self.b2[victim] = None
        del self.entries[victim]
        return victim

    def evict_key(self, key):
        """Forced removal (pre-eviction); the key does not enter a ghost list."""
        del self.entries[key]
        if key in self.t1:
            del self.t1[key]
        else:
            del self.t2[key]


def arc_access(state: ArcState, key, seq) -> AccessOutcome:
    return state.access(key, seq)


def make_cache(config: CacheConfig):
    if config.policy == ARC:
        return ArcState(config)
    return CacheState(config)
