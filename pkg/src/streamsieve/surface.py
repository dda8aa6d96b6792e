"""Fixed-size working buffer plus its hex interchange format.

A Surface is the live object a producer holds: S slots of uniform width,
an ingest counter T, and per-slot written flags.  Ingest never relocates
stored values; each arrival is either written into the sites chosen by the
configured algorithm or dropped.  Because site selection is pure in
(algorithm, S, T), a dumped surface needs no per-item metadata: the hex
blob plus T is enough for any consumer to recover every item's ingest time.

Hex layout: site 0 occupies the most significant bits, each item value is
big-endian inside its field, and the digest is lowercase with exactly
S * value_bits / 4 digits.  T travels separately.
"""

from __future__ import annotations

import string

from .algorithms import (
    Algorithm,
    _validate_algorithm_sites,
    has_ingest_capacity,
    site_selection,
)
from .errors import CapacityError, ConfigurationError, DomainError, HexFormatError

VALID_VALUE_BITS = (1, 8, 16, 32, 64)

_HEX_DIGITS = frozenset(string.hexdigits)


def validate_value_bits(value_bits: int) -> None:
    if value_bits not in VALID_VALUE_BITS:
        raise ConfigurationError(
            f"item width must be one of {VALID_VALUE_BITS}, got {value_bits!r}"
        )


def hex_digest_length(S: int, value_bits: int) -> int:
    return S * value_bits // 4


def pack_slots_hex(slots, value_bits: int) -> str:
    """Pack slot values into the canonical lowercase hex digest."""
    validate_value_bits(value_bits)
    acc = 0
    for v in slots:
        acc = (acc << value_bits) | v
    digits = len(slots) * value_bits // 4
    return format(acc, f"0{digits}x")


def unpack_slots_hex(text: str, S: int, value_bits: int) -> list[int]:
    """Inverse of pack_slots_hex; strict about length and charset."""
    validate_value_bits(value_bits)
    digits = hex_digest_length(S, value_bits)
    if not isinstance(text, str) or len(text) != digits:
        raise HexFormatError(
            f"expected {digits} hex digits for S={S} width={value_bits}, "
            f"got {text!r}"
        )
    if not all(c in _HEX_DIGITS for c in text):
        raise HexFormatError(f"non-hex digit in {text!r}")
    acc = int(text, 16)
    mask = (1 << value_bits) - 1
    return [(acc >> ((S - 1 - k) * value_bits)) & mask for k in range(S)]


class Surface:
    """S fixed slots curated by a site-selection algorithm.

    Attributes mirror the stream vocabulary: ``S`` is the site count and
    ``T`` the number of items ingested so far.
    """

    __slots__ = ("algo", "S", "T", "value_bits", "slots", "written")

    def __init__(self, algo: Algorithm, S: int, value_bits: int):
        _validate_algorithm_sites(algo, S)
        validate_value_bits(value_bits)
        self.algo = algo
        self.S = S
        self.T = 0
        self.value_bits = value_bits
        self.slots = [0] * S
        self.written = [False] * S

    def ingest(self, value: int) -> frozenset[int]:
        """Store one arriving value; returns the selected sites.

        An empty selection means the arrival was discarded.  The counter
        advances either way.  Raises CapacityError before any state change
        when the algorithm's supported stream length is exhausted, and
        DomainError when the value does not fit the configured width.
        """
        if not has_ingest_capacity(self.algo, self.S, self.T):
            raise CapacityError(
                f"{self.algo} with S={self.S} cannot ingest item T={self.T}"
            )
        if not isinstance(value, int) or isinstance(value, bool) or value < 0 or value >> self.value_bits:
            raise DomainError(
                f"value {value!r} does not fit in {self.value_bits} bits"
            )
        selection = site_selection(self.algo, self.S, self.T)
        for k in selection:
            self.slots[k] = value
            self.written[k] = True
        self.T += 1
        return selection

    def to_hex(self) -> str:
        """Dump the slots as the canonical hex digest (T travels separately)."""
        return pack_slots_hex(self.slots, self.value_bits)

    @classmethod
    def from_hex(
        cls, algo: Algorithm, S: int, T: int, value_bits: int, text: str
    ) -> "Surface":
        """Rebuild a surface from a dump.

        Written flags are reconstructed from the lookup table: a site
        counts as written exactly when some T' < T selected it.
        """
        if not isinstance(T, int) or isinstance(T, bool) or T < 0:
            raise ValueError(f"ingest counter must be a non-negative integer, got {T!r}")
        surface = cls(algo, S, value_bits)
        slots = unpack_slots_hex(text, S, value_bits)
        from .lookup import last_write_times  # deferred: lookup imports this module

        entries = last_write_times(algo, S, T)
        surface.T = T
        surface.slots = slots
        surface.written = [entry is not None for entry in entries]
        return surface

    def __repr__(self) -> str:
        return (
            f"Surface(algo={self.algo}, S={self.S}, T={self.T}, "
            f"value_bits={self.value_bits})"
        )
