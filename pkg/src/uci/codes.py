"""Universal integer codes: encoders, streaming decoders and exact lengths.

Building blocks (all over the positive integers):

* ``alpha(m)``        -- ``m`` zeros then a one.
* ``beta(m)``         -- binary representation, leading bit 1.
* ``bracket_beta(m)`` -- ``beta(m)`` without its leading 1.

Codes built from them:

* alpha-tilde: ``1`` for 1, else ``alpha(m // 2)`` followed by the parity bit.
* iota: alpha-tilde of the bit width of ``m``, then ``bracket_beta(m)``.
* gamma-tilde[t]: alpha-tilde below ``2t``; above it an Elias-gamma style
  header shifted by ``t - 2`` extra zeros over ``m + 2 - 2t``.
* kappa[t]: gamma-tilde[t] of the bit width of ``m``, then ``bracket_beta(m)``.
* Elias omega, in its usual recursive-group form.

gamma-tilde[1] is Elias gamma and kappa[1] is Elias delta; gamma-tilde[2]
and kappa[2] are the plain gamma-tilde and kappa codes.

Codepoints are limited to the unsigned 64-bit range.  Decoders raise
:class:`~uci.errors.CodepointOverflow` for codewords that announce anything
wider, before reading the payload.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .bitio import BitReader, BitString, BitStringSource
from .errors import CodepointOverflow

MAX_CODEPOINT = (1 << 64) - 1
MAX_WIDTH = 64


def _check(m: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool):
        raise TypeError(f"codepoint must be an int, got {type(m).__name__}")
    if not 1 <= m <= MAX_CODEPOINT:
        raise ValueError(f"codepoint {m} outside 1..2**64-1")


def _check_t(t: int) -> None:
    if not isinstance(t, int) or t < 1:
        raise ValueError(f"t must be a positive integer, got {t!r}")


def flog2(m: int) -> int:
    """floor(log2(m)) for m >= 1."""
    return m.bit_length() - 1


# ---------------------------------------------------------------- primitives


def alpha(m: int) -> BitString:
    if m < 1:
        raise ValueError(f"alpha needs m >= 1, got {m}")
    return BitString(1, m + 1)


def beta(m: int) -> BitString:
    if m < 1:
        raise ValueError(f"beta needs m >= 1, got {m}")
    return BitString(m, m.bit_length())


def bracket_beta(m: int) -> BitString:
    if m < 1:
        raise ValueError(f"bracket_beta needs m >= 1, got {m}")
    k = m.bit_length() - 1
    return BitString(m ^ (1 << k), k)


# --------------------------------------------------------------- alpha-tilde


def alpha_tilde_encode(m: int) -> BitString:
    _check(m)
    if m == 1:
        return BitString(1, 1)
    # alpha(m // 2) then the low bit: value is 0b1b over m//2 + 2 bits
    return BitString(2 | (m & 1), (m >> 1) + 2)


def alpha_tilde_decode(src: BitReader) -> int:
    z = src.read_unary()
    if z == 0:
        return 1
    m = 2 * z + src.read_bit()
    if m > MAX_CODEPOINT:
        raise CodepointOverflow(f"alpha-tilde codeword decodes to {m}")
    return m


def alpha_tilde_length(m: int) -> int:
    return 1 if m == 1 else 2 + m // 2


# ---------------------------------------------------------------------- iota


def iota_encode(m: int) -> BitString:
    _check(m)
    return alpha_tilde_encode(m.bit_length()) + bracket_beta(m)


def iota_decode(src: BitReader) -> int:
    width = alpha_tilde_decode(src)
    if width > MAX_WIDTH:
        raise CodepointOverflow(f"iota codeword announces a {width}-bit value")
    return (1 << (width - 1)) | src.read_bits(width - 1)


def iota_length(m: int) -> int:
    if m == 1:
        return 1
    k = flog2(m)
    return 2 + (1 + k) // 2 + k


# ------------------------------------------------------------ gamma-tilde[t]


def gamma_tilde_t_encode(t: int, m: int) -> BitString:
    _check_t(t)
    _check(m)
    if m < 2 * t:
        return alpha_tilde_encode(m)
    n = m + 2 - 2 * t
    return alpha(n.bit_length() + t - 2) + bracket_beta(n)


def gamma_tilde_t_decode(t: int, src: BitReader) -> int:
    # The leading-zero count z separates the regimes: alpha-tilde codewords
    # below 2t have 1..t-1 zeros, the alpha-headed ones have at least t.
    _check_t(t)
    z = src.read_unary()
    if z == 0:
        return 1
    if z < t:
        return 2 * z + src.read_bit()
    width = z - t + 2
    if width > MAX_WIDTH:
        raise CodepointOverflow(f"gamma-tilde[{t}] codeword announces a {width}-bit value")
    n = (1 << (width - 1)) | src.read_bits(width - 1)
    m = n + 2 * t - 2
    if m > MAX_CODEPOINT:
        raise CodepointOverflow(f"gamma-tilde[{t}] codeword decodes to {m}")
    return m


def gamma_tilde_t_length(t: int, m: int) -> int:
    if m == 1:
        return 1
    if m < 2 * t:
        return 2 + m // 2
    return t + 2 * flog2(m + 2 - 2 * t)


# ------------------------------------------------------------------ kappa[t]


def kappa_t_encode(t: int, m: int) -> BitString:
    _check_t(t)
    _check(m)
    return gamma_tilde_t_encode(t, m.bit_length()) + bracket_beta(m)


def kappa_t_decode(t: int, src: BitReader) -> int:
    width = gamma_tilde_t_decode(t, src)
    if width > MAX_WIDTH:
        raise CodepointOverflow(f"kappa[{t}] codeword announces a {width}-bit value")
    return (1 << (width - 1)) | src.read_bits(width - 1)


def kappa_t_length(t: int, m: int) -> int:
    if m == 1:
        return 1
    k = flog2(m)
    if m < 1 << (2 * t - 1):
        return 2 + k + (1 + k) // 2
    return t + k + 2 * flog2(k + 3 - 2 * t)


# --------------------------------------------------------------- Elias omega


def omega_encode(m: int) -> BitString:
    _check(m)
    groups = [BitString(0, 1)]
    n = m
    while n > 1:
        groups.append(beta(n))
        n = n.bit_length() - 1
    return BitString.join(reversed(groups))


def omega_decode(src: BitReader) -> int:
    n = 1
    while src.read_bit():
        # the 1 just read opens a group of n + 1 bits
        if n + 1 > MAX_WIDTH:
            raise CodepointOverflow(f"omega group of {n + 1} bits exceeds {MAX_WIDTH}")
        n = (1 << n) | src.read_bits(n)
    return n


def omega_length(m: int) -> int:
    """1 + sum over the iterated floor-log chain of (lambda^i(m) + 1)."""
    total = 1
    n = m
    while n > 1:
        n = flog2(n)
        total += n + 1
    return total


# ------------------------------------------------------ length-only formulas


def gamma_length(m: int) -> int:
    return 1 + 2 * flog2(m)


def delta_length(m: int) -> int:
    k = flog2(m)
    return 1 + k + 2 * flog2(1 + k)


def eta_length(m: int) -> int:
    if m == 1:
        return 1
    k = flog2(m - 1)
    return 3 + k + k // 2


def theta_length(m: int) -> int:
    if m == 1:
        return 1
    k = flog2(m)
    j = flog2(k)
    return 3 + k + j + j // 2


# ------------------------------------------------------------------ registry


@dataclass(frozen=True)
class LengthFunction:
    """A named, total map from codepoints to codeword lengths."""

    name: str
    eval: Callable[[int], int] = field(compare=False)

    def __call__(self, m: int) -> int:
        return self.eval(m)


@dataclass(frozen=True)
class IntegerCode:
    """An encoder/decoder pair together with its exact length function."""

    name: str
    t: int | None
    encode: Callable[[int], BitString] = field(compare=False)
    decode: Callable[[BitReader], int] = field(compare=False)
    length: Callable[[int], int] = field(compare=False)

    @property
    def label(self) -> str:
        return self.name if self.t is None else f"{self.name}[{self.t}]"

    def length_function(self) -> LengthFunction:
        return LengthFunction(self.label, self.length)

    def decode_bits(self, bits: BitString) -> int:
        """Decode one codeword from the start of ``bits``."""
        return self.decode(BitStringSource(bits))


_PLAIN_LENGTHS: dict[str, Callable[[int], int]] = {
    "gamma": gamma_length,
    "delta": delta_length,
    "omega": omega_length,
    "eta": eta_length,
    "theta": theta_length,
    "alpha_tilde": alpha_tilde_length,
    "iota": iota_length,
}
_T_LENGTHS: dict[str, Callable[[int, int], int]] = {
    "gamma_tilde_t": gamma_tilde_t_length,
    "kappa_t": kappa_t_length,
}
CODE_NAMES = tuple(_PLAIN_LENGTHS) + tuple(_T_LENGTHS)


def length_function(name: str, t: int | None = None) -> LengthFunction:
    if name in _PLAIN_LENGTHS:
        return LengthFunction(name, _PLAIN_LENGTHS[name])
    if name in _T_LENGTHS:
        if t is None:
            raise ValueError(f"{name} needs a parameter t")
        _check_t(t)
        fn = _T_LENGTHS[name]
        return LengthFunction(f"{name}[{t}]", lambda m: fn(t, m))
    raise KeyError(f"unknown code {name!r}; expected one of {', '.join(CODE_NAMES)}")


def length_of(name: str, t: int | None, m: int) -> int:
    """Exact codeword length of ``m`` under the named code."""
    _check(m)
    return length_function(name, t)(m)


def get_code(name: str, t: int | None = None) -> IntegerCode:
    """Look up an implemented code by name.

    ``eta`` and ``theta`` resolve to their canonical realizations (see
    :mod:`uci.canonical`); all other names map to the constructions above.
    """
    if name == "alpha_tilde":
        return IntegerCode(name, None, alpha_tilde_encode, alpha_tilde_decode, alpha_tilde_length)
    if name == "iota":
        return IntegerCode(name, None, iota_encode, iota_decode, iota_length)
    if name == "omega":
        return IntegerCode(name, None, omega_encode, omega_decode, omega_length)
    if name in ("gamma_tilde_t", "kappa_t"):
        if t is None:
            raise ValueError(f"{name} needs a parameter t")
        _check_t(t)
        if name == "gamma_tilde_t":
            return IntegerCode(
                name, t,
                lambda m: gamma_tilde_t_encode(t, m),
                lambda src: gamma_tilde_t_decode(t, src),
                lambda m: gamma_tilde_t_length(t, m),
            )
        return IntegerCode(
            name, t,
            lambda m: kappa_t_encode(t, m),
            lambda src: kappa_t_decode(t, src),
            lambda m: kappa_t_length(t, m),
        )
    if name in ("eta", "eta_canonical", "theta", "theta_canonical"):
        from .canonical import CanonicalCode

        base = name.split("_")[0]
        code = CanonicalCode(length_function(base))
        return IntegerCode(f"{base}_canonical", None, code.encode, code.decode, code.source)
    raise KeyError(f"no encoder for code {name!r}")
