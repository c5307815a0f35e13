"""Count-prefixed binary container for streams of codewords.

Layout (14-byte header, then payload)::

    magic   4 bytes  b"UCI1"
    code    1 byte   code id, see CODE_IDS
    t       1 byte   code parameter, 0 when the code has none
    count   8 bytes  little-endian number of codewords

The payload is the concatenated codewords, MSB-first, zero-padded to a
byte boundary.  Decoders stop after ``count`` codewords; pad bits are never
interpreted.
"""

from __future__ import annotations

import struct
from typing import Iterable

from .bitio import BitSink, BitSource
from .codes import IntegerCode, get_code
from .errors import BadMagic, BitstreamExhausted, TruncatedPayload, UnknownCode

MAGIC = b"UCI1"
HEADER = struct.Struct("<4sBBQ")

CODE_IDS = {
    0: "alpha_tilde",
    1: "iota",
    2: "gamma_tilde_t",
    3: "kappa_t",
    4: "omega",
    5: "eta_canonical",
    6: "theta_canonical",
}
_IDS_BY_NAME = {v: k for k, v in CODE_IDS.items()}
_IDS_BY_NAME.update({"eta": 5, "theta": 6})
PARAMETRIZED = {2, 3}


def code_id(name: str) -> int:
    try:
        return _IDS_BY_NAME[name]
    except KeyError:
        raise UnknownCode(f"code {name!r} has no container id") from None


def resolve(cid: int, t: int) -> IntegerCode:
    if cid not in CODE_IDS:
        raise UnknownCode(f"unknown code id {cid}")
    if cid in PARAMETRIZED:
        if t < 1:
            raise UnknownCode(f"code id {cid} needs t >= 1")
        return get_code(CODE_IDS[cid], t)
    if t != 0:
        raise UnknownCode(f"code id {cid} takes no parameter, header has t={t}")
    return get_code(CODE_IDS[cid])


def encode_stream(name: str, t: int | None, values: Iterable[int]) -> tuple[bytes, int, int]:
    """Build a container; returns ``(data, count, payload_bits)``."""
    cid = code_id(name)
    tb = t or 0
    if cid in PARAMETRIZED and not 1 <= tb <= 255:
        raise ValueError(f"t must be in 1..255 for {name}, got {t}")
    code = resolve(cid, tb if cid in PARAMETRIZED else 0)
    values = list(values)
    sink = BitSink()
    for m in values:
        sink.write_bits(code.encode(m))
    nbits = sink.bits_written
    sink.flush()
    return HEADER.pack(MAGIC, cid, tb, len(values)) + sink.getvalue(), len(values), nbits


def decode_stream(data: bytes) -> tuple[IntegerCode, list[int]]:
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic(f"bad magic {bytes(data[:4])!r}, expected {MAGIC!r}")
    if len(data) < HEADER.size:
        raise TruncatedPayload("container header is incomplete")
    _, cid, t, count = HEADER.unpack_from(data)
    code = resolve(cid, t)
    src = BitSource(memoryview(data)[HEADER.size:])
    out = []
    try:
        for _ in range(count):
            out.append(code.decode(src))
    except BitstreamExhausted as e:
        raise TruncatedPayload(f"payload ends after {len(out)} of {count} codewords") from e
    return code, out
