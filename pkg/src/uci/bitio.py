"""Bit strings and MSB-first bit streams.

A :class:`BitString` stores its bits as an integer plus an explicit length,
so leading zeros cost nothing.  That matters for unary-heavy codewords: a
codeword of a billion zeros followed by ``10`` is still a two-field value.

:class:`BitSink` packs bits MSB-first into bytes and zero-pads the final
byte on :meth:`BitSink.flush`.  :class:`BitSource` reads them back in the
same order and treats reading past its limit as an error, never as padding.
:class:`BitStringSource` offers the same reading interface directly over a
:class:`BitString`, without materializing bytes.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Iterator, Protocol

from .errors import BitstreamExhausted

__all__ = [
    "BitString",
    "BitReader",
    "BitSink",
    "BitSource",
    "BitStringSource",
    "write_bits",
    "read_bit",
    "pack",
]

_NONZERO_BYTE = re.compile(rb"[^\x00]")


@dataclass(frozen=True)
class BitString:
    """An immutable, finite sequence of bits.

    ``value`` holds the bits as a big-endian unsigned integer and ``length``
    says how many bits there are; ``value < 2**length`` always holds.
    """

    value: int = 0
    length: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError(f"negative length {self.length}")
        if self.value < 0 or self.value.bit_length() > self.length:
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_str(cls, bits: str) -> BitString:
        """Parse a string of ``0``/``1`` characters; spaces are ignored."""
        bits = bits.replace(" ", "")
        if bits.strip("01"):
            raise ValueError(f"not a bit string: {bits!r}")
        return cls(int(bits, 2) if bits else 0, len(bits))

    @classmethod
    def from_int(cls, value: int, width: int) -> BitString:
        return cls(value, width)

    @classmethod
    def zeros(cls, n: int) -> BitString:
        return cls(0, n)

    @classmethod
    def join(cls, parts: Iterable[BitString]) -> BitString:
        value = length = 0
        for p in parts:
            value = (value << p.length) | p.value
            length += p.length
        return cls(value, length)

    def __len__(self) -> int:
        return self.length

    def __add__(self, other: BitString) -> BitString:
        if not isinstance(other, BitString):
            return NotImplemented
        return BitString((self.value << other.length) | other.value, self.length + other.length)

    def __iter__(self) -> Iterator[int]:
        for i in range(self.length - 1, -1, -1):
            yield (self.value >> i) & 1

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self.length
        if not 0 <= i < self.length:
            raise IndexError("bit index out of range")
        return (self.value >> (self.length - 1 - i)) & 1

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __repr__(self) -> str:
        if self.length <= 128:
            return f"BitString('{self}')"
        return f"BitString(value={self.value}, length={self.length})"

    def leading_zeros(self) -> int:
        return self.length - self.value.bit_length()

    def startswith(self, prefix: BitString) -> bool:
        if prefix.length > self.length:
            return False
        return self.value >> (self.length - prefix.length) == prefix.value

    def to_bytes(self) -> bytes:
        """Pack MSB-first, zero-padding the final byte."""
        nbytes = (self.length + 7) // 8
        return (self.value << (nbytes * 8 - self.length)).to_bytes(nbytes, "big")


class BitReader(Protocol):
    """What decoders need from a bit source."""

    def read_bit(self) -> int: ...

    def read_bits(self, n: int) -> int: ...

    def read_unary(self) -> int: ...


class BitSink:
    """Writes bits MSB-first to a binary stream.

    With no stream given, bytes collect in memory and :meth:`getvalue`
    returns them.  Call :meth:`flush` once at the end; it pads the last
    partial byte with zeros.
    """

    def __init__(self, stream: BinaryIO | None = None):
        self._stream = stream if stream is not None else io.BytesIO()
        self._acc = 0
        self._nacc = 0
        self.bits_written = 0

    def write_bits(self, s: BitString) -> None:
        self._acc = (self._acc << s.length) | s.value
        self._nacc += s.length
        self.bits_written += s.length
        if self._nacc >= 8:
            keep = self._nacc & 7
            nbytes = self._nacc >> 3
            self._stream.write((self._acc >> keep).to_bytes(nbytes, "big"))
            self._acc &= (1 << keep) - 1
            self._nacc = keep

    def write_bit(self, bit: int) -> None:
        self.write_bits(BitString(1 if bit else 0, 1))

    def write_uint(self, value: int, width: int) -> None:
        self.write_bits(BitString(value, width))

    def flush(self) -> None:
        if self._nacc:
            self._stream.write((self._acc << (8 - self._nacc)).to_bytes(1, "big"))
            self._acc = self._nacc = 0
        if hasattr(self._stream, "flush"):
            self._stream.flush()

    def getvalue(self) -> bytes:
        return self._stream.getvalue()


class BitSource:
    """Reads bits MSB-first from bytes or a binary stream.

    ``limit`` caps the number of readable bits (e.g. to exclude pad bits);
    it defaults to every bit of the data.
    """

    def __init__(self, data: bytes | bytearray | memoryview | BinaryIO, limit: int | None = None):
        if not isinstance(data, (bytes, bytearray, memoryview)):
            data = data.read()
        self._data = bytes(data)
        total = len(self._data) * 8
        if limit is None:
            limit = total
        if not 0 <= limit <= total:
            raise ValueError(f"limit {limit} outside 0..{total}")
        self.limit = limit
        self.pos = 0

    @property
    def remaining(self) -> int:
        return self.limit - self.pos

    def _need(self, n: int) -> None:
        if n > self.limit - self.pos:
            raise BitstreamExhausted(
                f"need {n} bit(s) at position {self.pos}, only {self.limit - self.pos} left"
            )

    def read_bit(self) -> int:
        self._need(1)
        p = self.pos
        self.pos = p + 1
        return (self._data[p >> 3] >> (7 - (p & 7))) & 1

    def read_bits(self, n: int) -> int:
        """Read ``n`` bits and return them as an unsigned integer."""
        if n == 0:
            return 0
        self._need(n)
        p = self.pos
        first, last = p >> 3, (p + n + 7) >> 3
        chunk = int.from_bytes(self._data[first:last], "big")
        shift = (last - first) * 8 - (p - first * 8) - n
        self.pos = p + n
        return (chunk >> shift) & ((1 << n) - 1)

    def read_unary(self) -> int:
        """Count zeros up to the next 1-bit and consume all of them, the 1 included."""
        p = self.pos
        byte_index = p >> 3
        one_at = None
        if p & 7:
            # rest of the current partial byte
            rest = self._data[byte_index] & (0xFF >> (p & 7))
            if rest:
                one_at = byte_index * 8 + 8 - rest.bit_length()
            else:
                byte_index += 1
        if one_at is None:
            m = _NONZERO_BYTE.search(self._data, byte_index)
            if m is not None:
                i = m.start()
                one_at = i * 8 + 8 - self._data[i].bit_length()
        if one_at is None or one_at >= self.limit:
            raise BitstreamExhausted(f"no terminating 1-bit after position {p}")
        self.pos = one_at + 1
        return one_at - p

    def read_bitstring(self, n: int) -> BitString:
        return BitString(self.read_bits(n), n)


class BitStringSource:
    """Reads from a :class:`BitString` with the same interface as :class:`BitSource`.

    Runs of leading zeros are skipped arithmetically, so codewords far too
    long to materialize as bytes can still be decoded.
    """

    def __init__(self, bits: BitString):
        self.limit = bits.length
        self.pos = 0
        self._rest = bits.value  # bits not yet read, as the low `remaining` bits

    @property
    def remaining(self) -> int:
        return self.limit - self.pos

    def read_bit(self) -> int:
        return self.read_bits(1)

    def read_bits(self, n: int) -> int:
        r = self.limit - self.pos
        if n > r:
            raise BitstreamExhausted(f"need {n} bit(s) at position {self.pos}, only {r} left")
        if n == 0:
            return 0
        shift = r - n
        out = self._rest >> shift
        if out:
            self._rest ^= out << shift
        self.pos += n
        return out

    def read_unary(self) -> int:
        if not self._rest:
            raise BitstreamExhausted(f"no terminating 1-bit after position {self.pos}")
        top = self._rest.bit_length()
        zeros = self.limit - self.pos - top
        self._rest ^= 1 << (top - 1)
        self.pos += zeros + 1
        return zeros

    def read_bitstring(self, n: int) -> BitString:
        return BitString(self.read_bits(n), n)


def write_bits(sink: BitSink, s: BitString) -> None:
    sink.write_bits(s)


def read_bit(source: BitReader) -> int:
    return source.read_bit()


def pack(parts: Iterable[BitString]) -> tuple[bytes, int]:
    """Concatenate bit strings into padded bytes; returns ``(data, nbits)``."""
    sink = BitSink()
    for s in parts:
        sink.write_bits(s)
    nbits = sink.bits_written
    sink.flush()
    return sink.getvalue(), nbits
