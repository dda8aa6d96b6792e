"""Site-selection algorithms for fixed-capacity stream downsampling.

A downsampling buffer holds S sites indexed 0..S-1.  Items arrive one at a
time; the arrival at step T is either written into exactly one site
(possibly overwriting an older item) or discarded on arrival.  Selection is
a pure function of (algorithm, S, T): identical streams produce identical
buffers on any platform, and the ingest time of every stored item can later
be reconstructed from (algorithm, S, T) alone, with no per-item metadata.

Three scalar retention profiles are provided:

* ``steady``    -- retained items stay evenly spaced across the stream.
* ``stretched`` -- density is thinned proportionally to depth (distance
                   from the stream origin), so old items are favoured.
* ``tilted``    -- density is thinned proportionally to age, so recent
                   items are favoured.

``hybrid`` layouts split one buffer into scalar segments; every segment
curates the full stream independently inside its own slice of sites.

The steady rule is closed form.  With s = log2(S), epoch
t = max(bit_length(T) - s, 0) and h = trailing zeros of T+1: an arrival
discards when h < t, fills site T during epoch 0, and otherwise inherits
the site of a well-defined expired item, resolved in O(log T) steps.

The stretched and tilted rules are greedy.  Once the identity fill is over,
each arrival scores every retained item b as (gap left by removing b) over
(weight of b), plus a discard score (tail gap) over (weight of the arrival
itself); the minimum wins.  Weights are depth+1 for stretched and age for
tilted, so the arriving item's tilted weight is zero and tilted never
discards.  Scores are compared by exact integer cross-multiplication, ties
preferring discard and then the smallest candidate.  Both profiles are
evaluated by replaying this rule from T=0; a lock-guarded per-(profile, S)
memo keeps the pure functions affordable under repeated calls.
"""

from __future__ import annotations

import threading
from array import array
from dataclasses import dataclass

from .errors import CapacityError, ConfigurationError

MIN_SITE_COUNT = 4
MAX_SITE_COUNT = 1 << 20

SCALAR_KINDS = ("steady", "stretched", "tilted")


def validate_site_count(S: int) -> None:
    """Reject site counts that are not powers of two in [4, 2**20]."""
    if (
        not isinstance(S, int)
        or isinstance(S, bool)
        or S < MIN_SITE_COUNT
        or S > MAX_SITE_COUNT
        or S & (S - 1)
    ):
        raise ConfigurationError(
            f"site count must be a power of two in [{MIN_SITE_COUNT}, 2**20], got {S!r}"
        )


def _validate_time(T: int) -> None:
    if not isinstance(T, int) or isinstance(T, bool) or T < 0:
        raise ValueError(f"ingest counter must be a non-negative integer, got {T!r}")


@dataclass(frozen=True)
class Algorithm:
    """Identifier for a site-selection rule.

    Scalar rules carry just a kind.  Hybrid layouts carry (kind, size)
    segments laid out left to right; segment sizes must be powers of two
    >= 4 and there must be at least two segments.  Nested hybrids are not
    representable on purpose.
    """

    kind: str
    segments: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.kind in SCALAR_KINDS:
            if self.segments:
                raise ConfigurationError(f"{self.kind} takes no segments")
        elif self.kind == "hybrid":
            if len(self.segments) < 2:
                raise ConfigurationError("hybrid needs at least two segments")
            for seg in self.segments:
                if not (isinstance(seg, tuple) and len(seg) == 2):
                    raise ConfigurationError(f"bad hybrid segment {seg!r}")
                sub_kind, sub_size = seg
                if sub_kind not in SCALAR_KINDS:
                    raise ConfigurationError(
                        f"hybrid segments must be scalar profiles, got {sub_kind!r}"
                    )
                validate_site_count(sub_size)
            # the enclosing surface's S is the segment sum, and S itself
            # must be a legal site count; reject dead layouts up front
            total = sum(size for _, size in self.segments)
            if total & (total - 1) or total > MAX_SITE_COUNT:
                raise ConfigurationError(
                    f"hybrid segments cover {total} sites; the total must be "
                    f"a power of two <= 2**20"
                )
        else:
            raise ConfigurationError(f"unknown algorithm kind {self.kind!r}")

    @property
    def is_hybrid(self) -> bool:
        return self.kind == "hybrid"

    @property
    def total_sites(self) -> int | None:
        """Sum of segment sizes for hybrids; None for scalar rules."""
        if not self.is_hybrid:
            return None
        return sum(size for _, size in self.segments)

    def segment_layout(self) -> tuple[tuple[str, int, int], ...]:
        """(kind, size, offset) triples, offsets cumulative left to right."""
        out = []
        offset = 0
        for sub_kind, sub_size in self.segments:
            out.append((sub_kind, sub_size, offset))
            offset += sub_size
        return tuple(out)

    def token(self) -> str:
        """Canonical text form, e.g. ``hybrid(steady:4+tilted:4)``."""
        if not self.is_hybrid:
            return self.kind
        inner = "+".join(f"{k}:{n}" for k, n in self.segments)
        return f"hybrid({inner})"

    def __str__(self) -> str:
        return self.token()


STEADY = Algorithm("steady")
STRETCHED = Algorithm("stretched")
TILTED = Algorithm("tilted")


def hybrid(*segments: tuple[str, int]) -> Algorithm:
    """Build a hybrid layout from (kind, size) pairs."""
    return Algorithm("hybrid", tuple(segments))


def parse_algorithm(text: str) -> Algorithm:
    """Parse the canonical token grammar.

    Accepts ``steady``, ``stretched``, ``tilted``, or
    ``hybrid(kind:size+kind:size...)``.  The grammar is comma-free so the
    tokens embed in CSV cells without quoting.
    """
    if not isinstance(text, str):
        raise ConfigurationError(f"algorithm token must be a string, got {text!r}")
    if text in SCALAR_KINDS:
        return Algorithm(text)
    if text.startswith("hybrid(") and text.endswith(")"):
        inner = text[len("hybrid(") : -1]
        segments = []
        for part in inner.split("+"):
            kind, sep, size_text = part.partition(":")
            if not sep or not size_text.isdigit():
                raise ConfigurationError(f"bad hybrid segment {part!r} in {text!r}")
            segments.append((kind, int(size_text)))
        return Algorithm("hybrid", tuple(segments))
    raise ConfigurationError(f"unknown algorithm token {text!r}")


def _validate_algorithm_sites(algo: Algorithm, S: int) -> None:
    if not isinstance(algo, Algorithm):
        raise ConfigurationError(f"expected an Algorithm, got {algo!r}")
    validate_site_count(S)
    if algo.is_hybrid and algo.total_sites != S:
        raise ConfigurationError(
            f"hybrid segments cover {algo.total_sites} sites but S={S}"
        )


# ---------------------------------------------------------------------------
# bit kernels


def hanoi_value(T: int) -> int:
    """Number of trailing set bits of T, i.e. trailing zeros of T+1.

    The sequence 0,1,0,2,0,1,0,3,... rules which arrivals are storable in
    each steady epoch.
    """
    _validate_time(T)
    u = T + 1
    return (u & -u).bit_length() - 1


def epoch(S: int, T: int) -> int:
    """Thinning epoch of arrival T for a buffer of S sites.

    max(bit_length(T) - log2(S), 0); epoch 0 is the identity-fill phase.
    """
    validate_site_count(S)
    _validate_time(T)
    t = T.bit_length() - (S.bit_length() - 1)
    return t if t > 0 else 0


# ---------------------------------------------------------------------------
# capacity


def stream_capacity(algo: Algorithm, S: int) -> int | None:
    """Maximum number of ingests the rule supports, or None if unbounded.

    Steady is unbounded.  Stretched and tilted are defined up to 2**S - 2
    items; a hybrid is bounded by its tightest segment.
    """
    _validate_algorithm_sites(algo, S)
    if algo.kind == "steady":
        return None
    if algo.kind in ("stretched", "tilted"):
        return (1 << S) - 2
    cap = None
    for sub_kind, sub_size, _ in algo.segment_layout():
        if sub_kind == "steady":
            continue
        sub_cap = (1 << sub_size) - 2
        cap = sub_cap if cap is None else min(cap, sub_cap)
    return cap


def has_ingest_capacity(algo: Algorithm, S: int, T: int) -> bool:
    """True when ingesting item T is within the rule's supported range."""
    _validate_algorithm_sites(algo, S)
    _validate_time(T)
    cap = stream_capacity(algo, S)
    return cap is None or T + 1 <= cap


def _require_capacity(kind: str, S: int, T: int) -> None:
    # scalar fast path: only stretched/tilted are bounded
    if T + 1 > (1 << S) - 2:
        raise CapacityError(
            f"{kind} with S={S} supports at most {(1 << S) - 2} ingests; "
            f"item T={T} is out of range"
        )


# ---------------------------------------------------------------------------
# steady


def steady_assign(S: int, T: int) -> int | None:
    """Site for arrival T under the steady rule, or None to discard.

    Epoch 0 fills site T directly.  Later epochs store only arrivals whose
    hanoi value reaches the epoch; each such arrival takes over the site of
    the expired item with hanoi value t-1 and matching incidence, which the
    loop below resolves by walking down one epoch per step.
    """
    validate_site_count(S)
    _validate_time(T)
    return _steady_site(S, T)


def _steady_site(S: int, T: int) -> int | None:
    s = S.bit_length() - 1
    t = T.bit_length() - s
    if t <= 0:
        return T
    u = T + 1
    if u & ((1 << t) - 1):
        return None  # hanoi value below epoch: discard
    half = S >> 1
    while t > 0:
        i = (u >> t) - half - 1
        u = (2 * i + 1) << (t - 1)  # successor of the expired item
        t = (u - 1).bit_length() - s
    return u - 1


# ---------------------------------------------------------------------------
# stretched / tilted (greedy replay)


class _GreedyCurator:
    """Incremental replay state for the weighted-eviction profiles.

    Keeps the retained ingest times sorted alongside the site each one
    occupies.  step() scores the current arrival, applies the outcome, and
    returns the selected site (None = discard).  O(S) per step.
    """

    __slots__ = ("S", "tilted", "T", "times", "sites")

    def __init__(self, S: int, tilted: bool):
        self.S = S
        self.tilted = tilted
        self.T = 0
        self.times: list[int] = []
        self.sites: list[int] = []

    def step(self) -> int | None:
        T = self.T
        if T < self.S:
            self.times.append(T)
            self.sites.append(T)
            self.T = T + 1
            return T
        times = self.times
        last = len(times) - 1
        tilted = self.tilted
        if tilted:
            best_n, best_d = 1, 0  # the arrival's age weight is 0: discard = +inf
        else:
            best_n, best_d = T - times[last], T + 1
        best_idx = -1
        for idx in range(last + 1):
            b = times[idx]
            n = (times[idx + 1] if idx < last else T) - (times[idx - 1] if idx else -1)
            d = (T - b) if tilted else (b + 1)
            # exact n/d < best_n/best_d; candidate d >= 1 always, best_d == 0
            # only while the best is the infinite tilted discard score
            if best_d == 0 or n * best_d < best_n * d:
                best_n, best_d, best_idx = n, d, idx
        self.T = T + 1
        if best_idx < 0:
            return None
        site = self.sites.pop(best_idx)
        times.pop(best_idx)
        times.append(T)
        self.sites.append(site)
        return site

    def retained_times(self) -> list[int]:
        return sorted(self.times)


class _ReplayMemo:
    __slots__ = ("curator", "selections")

    def __init__(self, S: int, tilted: bool):
        self.curator = _GreedyCurator(S, tilted)
        self.selections = array("i")


_memo_lock = threading.Lock()
_replay_memos: dict[tuple[str, int], _ReplayMemo] = {}


def _clear_replay_memos() -> None:
    # test hook; never needed for correctness
    with _memo_lock:
        _replay_memos.clear()


def _greedy_selection(kind: str, S: int, T: int) -> int | None:
    key = (kind, S)
    with _memo_lock:
        memo = _replay_memos.get(key)
        if memo is None:
            memo = _replay_memos[key] = _ReplayMemo(S, kind == "tilted")
        selections = memo.selections
        if len(selections) <= T:
            step = memo.curator.step
            append = selections.append
            for _ in range(T + 1 - len(selections)):
                site = step()
                append(-1 if site is None else site)
        site = selections[T]
    return None if site < 0 else site


def stretched_assign(S: int, T: int) -> int | None:
    """Site for arrival T under the stretched rule, or None to discard."""
    validate_site_count(S)
    _validate_time(T)
    _require_capacity("stretched", S, T)
    return _greedy_selection("stretched", S, T)


def tilted_assign(S: int, T: int) -> int | None:
    """Site for arrival T under the tilted rule; never None within capacity."""
    validate_site_count(S)
    _validate_time(T)
    _require_capacity("tilted", S, T)
    return _greedy_selection("tilted", S, T)


_SCALAR_ASSIGN = {
    "steady": steady_assign,
    "stretched": stretched_assign,
    "tilted": tilted_assign,
}


# ---------------------------------------------------------------------------
# hybrid and the uniform dispatcher


def hybrid_assign(algo: Algorithm, S: int, T: int) -> frozenset[int]:
    """Union of per-segment selections, offset into the shared buffer.

    Every segment sees the full stream; an arrival may be stored by several
    segments at once, each inside its own slice of sites.
    """
    _validate_algorithm_sites(algo, S)
    if not algo.is_hybrid:
        raise ConfigurationError(f"hybrid_assign needs a hybrid layout, got {algo}")
    _validate_time(T)
    picked = []
    for sub_kind, sub_size, offset in algo.segment_layout():
        site = _SCALAR_ASSIGN[sub_kind](sub_size, T)
        if site is not None:
            picked.append(offset + site)
    return frozenset(picked)


def site_selection(algo: Algorithm, S: int, T: int) -> frozenset[int]:
    """Uniform set-valued form of every rule (empty set = discard)."""
    if algo.kind == "hybrid":
        return hybrid_assign(algo, S, T)
    _validate_algorithm_sites(algo, S)
    site = _SCALAR_ASSIGN[algo.kind](S, T)
    return frozenset(() if site is None else (site,))


def selection_stream(algo: Algorithm, S: int, count: int):
    """Yield the selection for each T in [0, count) as a tuple of sites.

    One incremental pass: greedy profiles advance a private replay instead
    of re-deriving every step from scratch.  Capacity is checked up front.
    """
    _validate_algorithm_sites(algo, S)
    if not isinstance(count, int) or isinstance(count, bool) or count < 0:
        raise ValueError(f"count must be a non-negative integer, got {count!r}")
    if count > 0 and not has_ingest_capacity(algo, S, count - 1):
        cap = stream_capacity(algo, S)
        raise CapacityError(
            f"{algo} with S={S} supports at most {cap} ingests, asked for {count}"
        )
    return _selection_stream(algo, S, count)


def _selection_stream(algo, S, count):
    if algo.kind == "steady":
        for T in range(count):
            site = _steady_site(S, T)
            yield () if site is None else (site,)
    elif algo.kind in ("stretched", "tilted"):
        curator = _GreedyCurator(S, algo.kind == "tilted")
        for _ in range(count):
            site = curator.step()
            yield () if site is None else (site,)
    else:
        parts = [
            (offset, _selection_stream(Algorithm(sub_kind), sub_size, count))
            for sub_kind, sub_size, offset in algo.segment_layout()
        ]
        for _ in range(count):
            sel = []
            for offset, stream in parts:
                for site in next(stream):
                    sel.append(offset + site)
            yield tuple(sel)
