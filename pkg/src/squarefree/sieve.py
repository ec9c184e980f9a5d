"""Exact arithmetic primitives: primes, Mobius values, square-free indicators.

Bulk ranges go through segmented sieving with a cache-sized block; single
values use trial division against a cached prime table.  Every operation
is a pure function of its arguments and the same range always yields
bit-identical output no matter how it is segmented internally.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import IO, Iterable

import numpy as np

from . import _kernels as kernels
from .errors import DomainError, RangeError

#: Largest admissible range endpoint.  Keeps p*p and the running products
#: of the Mobius sieve inside signed 64-bit arithmetic, and keeps the base
#: prime table (primes up to sqrt(end), ~8 MB of sieve at the cap) in RAM.
MAX_ENDPOINT = 1 << 46

#: Segment length (integers) for bulk sieving.  Multiple of 8 so segment
#: boundaries stay byte-aligned when packing indicator bits.
SEGMENT = 1 << 20


@lru_cache(maxsize=32)
def primes_upto(limit: int) -> np.ndarray:
    """All primes <= limit, ascending, as an int64 array."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _trial_primes(n: int) -> np.ndarray:
    # round the sieve limit up to a power of two so the cache is reused
    need = max(4, isqrt(n))
    limit = 1 << need.bit_length()
    return primes_upto(limit)


def _check_range(start: int, length: int) -> None:
    if start < 1:
        raise DomainError(f"range start must be >= 1, got {start}")
    if length < 1:
        raise DomainError(f"range length must be >= 1, got {length}")
    if start + length - 1 > MAX_ENDPOINT:
        raise RangeError(
            f"range end {start + length - 1} exceeds the supported "
            f"64-bit sieve limit {MAX_ENDPOINT}"
        )


def _base_primes(start: int, length: int) -> np.ndarray:
    return primes_upto(isqrt(start + length - 1))


@dataclass(frozen=True)
class FactorSummary:
    """Distinct and square prime divisors of n, with omega and Mobius value."""

    n: int
    distinct_primes: tuple[int, ...]
    square_primes: tuple[int, ...]
    omega: int
    mobius: int


@lru_cache(maxsize=1 << 16)
def factor_summary(n: int) -> FactorSummary:
    """Factor n by trial division and summarize its prime structure."""
    if n < 1:
        raise DomainError(f"factor_summary requires n >= 1, got {n}")
    m = n
    distinct: list[int] = []
    square: list[int] = []
    for p in _trial_primes(n):
        p = int(p)
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            distinct.append(p)
            if e >= 2:
                square.append(p)
    if m > 1:
        distinct.append(m)
    mobius = 0 if square else (-1) ** len(distinct)
    return FactorSummary(n, tuple(distinct), tuple(square), len(distinct), mobius)


def is_prime(n: int) -> bool:
    return n >= 2 and factor_summary(n).distinct_primes == (n,)


@dataclass(frozen=True)
class SquarefreeInt:
    """A square-free positive integer together with its prime divisors."""

    value: int
    primes: tuple[int, ...]

    @classmethod
    def of(cls, d: "int | SquarefreeInt") -> "SquarefreeInt":
        if isinstance(d, SquarefreeInt):
            return d
        fs = factor_summary(d)
        if fs.mobius == 0:
            raise DomainError(f"{d} is not square-free (square primes {fs.square_primes})")
        return cls(int(d), fs.distinct_primes)

    @property
    def omega(self) -> int:
        return len(self.primes)

    @property
    def mobius(self) -> int:
        return (-1) ** len(self.primes)


@dataclass(frozen=True)
class SieveBlock:
    """Bit-packed square-free indicator over [start, start+length).

    bits is LSB-first: bit i of the stream equals mu^2(start + i).
    Concatenating blocks with matching boundaries reproduces the global
    indicator exactly.
    """

    start: int
    length: int
    bits: bytes

    def indicator(self) -> np.ndarray:
        raw = np.frombuffer(self.bits, dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little", count=self.length)

    def bit(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise DomainError(f"bit index {i} outside block of length {self.length}")
        return (self.bits[i >> 3] >> (i & 7)) & 1

    def popcount(self) -> int:
        return int.from_bytes(self.bits, "little").bit_count()

    def to_bytes(self) -> bytes:
        """8-byte LE start, 8-byte LE length, then ceil(length/8) data bytes."""
        return struct.pack("<QQ", self.start, self.length) + self.bits

    @classmethod
    def from_bytes(cls, raw: bytes) -> "SieveBlock":
        if len(raw) < 16:
            raise DomainError("serialized block shorter than its 16-byte header")
        start, length = struct.unpack_from("<QQ", raw)
        nbytes = (length + 7) // 8
        if len(raw) != 16 + nbytes:
            raise DomainError(
                f"serialized block has {len(raw) - 16} data bytes, expected {nbytes}"
            )
        return cls(start, length, raw[16:])


def sieve_squarefree(start: int, length: int) -> SieveBlock:
    """Square-free indicator of [start, start+length) as a packed block."""
    _check_range(start, length)
    base = _base_primes(start, length)
    chunks = []
    done = 0
    while done < length:
        n = min(SEGMENT, length - done)
        bits = kernels.squarefree_block(start + done, n, base)
        chunks.append(np.packbits(bits, bitorder="little").tobytes())
        done += n
    return SieveBlock(start, length, b"".join(chunks))


def mu2_indicator(start: int, length: int) -> np.ndarray:
    """Unpacked 0/1 square-free indicator (uint8) of [start, start+length)."""
    _check_range(start, length)
    return kernels.squarefree_block(start, length, _base_primes(start, length))


def mobius_range(start: int, length: int) -> np.ndarray:
    """Mobius values of [start, start+length) as int8, by segmented sieving."""
    _check_range(start, length)
    base = _base_primes(start, length)
    if length <= SEGMENT:
        return kernels.mobius_block(start, length, base)
    parts = []
    done = 0
    while done < length:
        n = min(SEGMENT, length - done)
        parts.append(kernels.mobius_block(start + done, n, base))
        done += n
    return np.concatenate(parts)


def square_radical_range(start: int, length: int) -> np.ndarray:
    """Product of the primes p with p^2 | n, per n in the range (int64)."""
    _check_range(start, length)
    return kernels.square_radical_block(start, length, _base_primes(start, length))


def export_csv(start: int, length: int, stream: IO[str]) -> None:
    """Write `n,mu,mu2` rows (with header) for the range to a text stream."""
    _check_range(start, length)
    stream.write("n,mu,mu2\n")
    done = 0
    while done < length:
        n = min(SEGMENT, length - done)
        mu = mobius_range(start + done, n)
        for i in range(n):
            m = int(mu[i])
            stream.write(f"{start + done + i},{m},{int(m != 0)}\n")
        done += n


def squarefree_values_upto(limit: int) -> Iterable[int]:
    """Ascending square-free integers in [1, limit]."""
    mask = mu2_indicator(1, limit)
    return (int(v) for v in np.flatnonzero(mask) + 1)
