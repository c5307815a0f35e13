"""Prefix codes synthesized from a length function.

Codewords are assigned in lexicographic (canonical) order: ``m = 1`` gets
the all-zero word of length ``L(1)``, and each next codepoint gets the
previous value plus one, left-shifted by however much the length grew.
This yields a prefix code whenever ``L`` is nondecreasing and satisfies
Kraft's inequality.

Used for eta and theta, which are only known through their length
functions here.  The realized codes are length-equivalent stand-ins, not
the original constructions: every length matches, the bit patterns need not.

Assignment is lazy and works run by run (a run is a maximal block of
codepoints sharing one length), so lookups near ``2**64`` are cheap.
Instances mutate their tables; share them across threads only under a lock.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable

from .bitio import BitReader, BitString
from .codes import MAX_CODEPOINT
from .errors import KraftViolation, NonMonotoneLength, ValueGap


@dataclass(frozen=True)
class Run:
    """Codepoints ``first .. first + count - 1`` share ``length``; values are consecutive from ``value``."""

    first: int
    count: int
    length: int
    value: int

    @property
    def last(self) -> int:
        return self.first + self.count - 1


class CanonicalCode:
    def __init__(self, source: Callable[[int], int], max_codepoint: int = MAX_CODEPOINT):
        self.source = source
        self.max_codepoint = max_codepoint
        self.runs: list[Run] = []
        self._firsts: list[int] = []
        self._by_length: dict[int, Run] = {}

    @property
    def name(self) -> str:
        return getattr(self.source, "name", getattr(self.source, "__name__", "canonical"))

    # -- assignment ----------------------------------------------------------

    def _L(self, m: int) -> int:
        n = self.source(m)
        if n < 1:
            raise ValueError(f"length function returned {n} at m={m}")
        return n

    def _extend(self) -> Run:
        """Materialize the next run."""
        if not self.runs:
            first, length, value = 1, self._L(1), 0
        else:
            prev = self.runs[-1]
            first = prev.last + 1
            if first > self.max_codepoint:
                raise ValueError(f"codepoints beyond {self.max_codepoint} are not supported")
            length = self._L(first)
            if length < prev.length:
                raise NonMonotoneLength(
                    f"L({first}) = {length} < L({prev.last}) = {prev.length}"
                )
            value = (prev.value + prev.count) << (length - prev.length)
        capacity = (1 << length) - value
        if capacity <= 0:
            raise KraftViolation(f"no {length}-bit codeword left for m={first}")

        # Largest count such that L is still `length` at first + count - 1,
        # found by galloping then bisection; L is nondecreasing, so the
        # same-length codepoints form one contiguous block.
        limit = min(capacity, self.max_codepoint - first + 1)
        lo, step = 1, 1
        while lo < limit:
            probe = min(lo + step, limit)
            if self._L(first + probe - 1) != length:
                hi = probe - 1
                break
            lo = probe
            step *= 2
        else:
            hi = lo
        # invariant: L(first + lo - 1) == length and every count > hi differs
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._L(first + mid - 1) == length:
                lo = mid
            else:
                hi = mid - 1
        count = lo
        # a full run is fine; the next _extend reports the violation at the
        # first codepoint that no longer fits
        run = Run(first, count, length, value)
        self.runs.append(run)
        self._firsts.append(first)
        self._by_length[length] = run
        return run

    def _run_for(self, m: int) -> Run:
        while not self.runs or self.runs[-1].last < m:
            self._extend()
        return self.runs[bisect_right(self._firsts, m) - 1]

    # -- coding --------------------------------------------------------------

    def encode(self, m: int) -> BitString:
        if not 1 <= m <= self.max_codepoint:
            raise ValueError(f"codepoint {m} outside 1..{self.max_codepoint}")
        run = self._run_for(m)
        return BitString(run.value + (m - run.first), run.length)

    def length(self, m: int) -> int:
        return self._run_for(m).length

    def _exhausted(self) -> bool:
        return bool(self.runs) and self.runs[-1].last >= self.max_codepoint

    def decode(self, src: BitReader) -> int:
        value = 0
        nbits = 0
        while True:
            value = (value << 1) | src.read_bit()
            nbits += 1
            while not self._exhausted() and (not self.runs or self.runs[-1].length < nbits):
                self._extend()
            run = self._by_length.get(nbits)
            if run is not None and run.value <= value < run.value + run.count:
                return run.first + (value - run.value)
            if self._exhausted() and nbits >= self.runs[-1].length:
                raise ValueGap(f"bit pattern {value:0{nbits}b} matches no codeword")


def canonical_encode(code: CanonicalCode, m: int) -> BitString:
    return code.encode(m)


def canonical_decode(code: CanonicalCode, src: BitReader) -> int:
    return code.decode(src)
