"""Bound checking and expansion-factor analysis for universal integer codes.

Everything here works on length functions.  The bound checks are
finite-range: a :class:`BoundReport` records the interval it examined and
is evidence over that interval, not a proof for all integers.

Key constants, per code: the smallest slope ``b`` with
``L(m) <= b + 1 + b*floor(log2 m)`` for ``m >= 2`` and ``L(1) = 1``.  With
``1 <= b <= 9/4`` that length envelope caps the expansion ratio at ``b + 1``.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .codes import flog2, length_function
from .dist import (
    Distribution,
    entropy,
    expected_length,
    lengths_array,
    truncated_geometric,
    two_point,
    uniform,
)

B_MIN = Fraction(1)
B_MAX = Fraction(9, 4)

# Known length envelopes c + b*floor(log2 m), m >= 2, for the classic codes.
CLASSIC_BOUNDS: dict[str, tuple[Fraction, Fraction]] = {
    "delta": (Fraction(11, 4), Fraction(7, 4)),
    "omega": (Fraction(3), Fraction(2)),
    "eta": (Fraction(8, 3), Fraction(5, 3)),
    "theta": (Fraction(14, 5), Fraction(9, 5)),
}


def kappa_t_slope(t: int) -> Fraction:
    return Fraction(3, 2) + Fraction(1, 2 * t + 2)


def known_slope(name: str, t: int | None = None) -> Fraction:
    """Slope ``b`` whose envelope each code meets; ``b + 1`` is its expansion-factor bound."""
    if name == "iota":
        return Fraction(3, 2)
    if name == "kappa_t":
        return kappa_t_slope(t)
    if name == "gamma":
        return Fraction(2)
    if name in CLASSIC_BOUNDS:
        return CLASSIC_BOUNDS[name][1]
    raise KeyError(f"no known slope for {name!r}")


def expansion_bound(name: str, t: int | None = None) -> Fraction:
    return known_slope(name, t) + 1


def as_exact(x) -> Fraction:
    """Exact rational for a bound parameter.

    Floats go through their shortest decimal repr, so ``1.6667`` means
    16667/10000 rather than the nearest binary fraction.
    """
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(repr(float(x)))


def _fn(lengthfn) -> Callable[[int], int]:
    return lengthfn.length if hasattr(lengthfn, "encode") else lengthfn


def _name(lengthfn) -> str:
    for attr in ("label", "name", "__name__"):
        v = getattr(lengthfn, attr, None)
        if isinstance(v, str):
            return v
    return "lengths"


# --------------------------------------------------------------------- Kraft


EXACT_MAX_LENGTH = 1024


def _dyadic_sum(counts: Counter) -> Fraction:
    num = 0
    prev = 0
    for L in sorted(counts):
        num = (num << (L - prev)) + counts[L]
        prev = L
    return Fraction(num, 1 << prev)


def kraft_partial_sum(lengths, M: int | None = None, exact: bool | None = None):
    """``sum(2**-L(m) for m in 1..M)``.

    ``lengths`` is either a length callable (``M`` required) or an explicit
    sequence of lengths for ``m = 1, 2, ...`` (``M`` defaults to all of it).

    Returns an exact :class:`~fractions.Fraction` when every length is at
    most ``EXACT_MAX_LENGTH`` bits (or ``exact=True``), otherwise the
    correctly rounded float from :func:`math.fsum`.  Unary-like codes reach
    lengths in the hundreds of thousands, where exact sums get quadratic.
    """
    if callable(lengths) or hasattr(lengths, "encode"):
        if M is None or M < 1:
            raise ValueError("M >= 1 required with a length function")
        counts = Counter(map(_fn(lengths), range(1, M + 1)))
    else:
        seq = list(lengths)
        if M is not None:
            seq = seq[:M]
        counts = Counter(seq)
    if not counts:
        return Fraction(0)
    if min(counts) < 0:
        raise ValueError("negative codeword length")
    if exact is None:
        exact = max(counts) <= EXACT_MAX_LENGTH
    if exact:
        return _dyadic_sum(counts)
    return math.fsum(c * math.ldexp(1.0, -L) for L, c in counts.items())


def kraft_partial_sums(lengthfn, checkpoints: Sequence[int]) -> list:
    """Kraft partial sums at nondecreasing ``checkpoints``, in a single pass."""
    fn = _fn(lengthfn)
    counts: Counter = Counter()
    out = []
    m = 1
    for M in checkpoints:
        if M < m - 1:
            raise ValueError("checkpoints must be nondecreasing")
        counts.update(map(fn, range(m, M + 1)))
        m = M + 1
        out.append(_dyadic_sum(counts) if counts else Fraction(0))
    return out


# ------------------------------------------------------------ length bounds


@dataclass(frozen=True)
class BoundReport:
    subject: str
    b: Fraction
    c: Fraction
    m_min: int
    m_max: int
    holds: bool
    first_violation: int | None = None
    violating_length: int | None = None
    implied_bound: Fraction | None = None
    kind: str = "length-bound"

    @property
    def scope(self) -> str:
        return f"finite-range check over m in [{self.m_min}, {self.m_max}]"

    def summary(self) -> str:
        head = f"{self.kind}: {self.subject}: L(m) <= {float(self.c):.6g} + {float(self.b):.6g}*floor(log2 m)"
        if self.holds:
            line = f"{head} holds ({self.scope})"
            if self.implied_bound is not None:
                line += f"; implied K* <= {float(self.implied_bound):.6g}"
            return line
        return (
            f"{head} FAILS at m={self.first_violation} "
            f"(L={self.violating_length} > {float(self.c + self.b * flog2(self.first_violation)):.6g}; "
            f"{self.scope})"
        )

    def row(self) -> dict:
        d = asdict(self)
        for k in ("b", "c", "implied_bound"):
            if d[k] is not None:
                d[k] = float(d[k])
        d["scope"] = self.scope
        return d


def check_length_bound(lengthfn, c, b, M: int, m_min: int = 2, subject: str | None = None) -> BoundReport:
    """Check ``L(m) <= c + b*floor(log2 m)`` for ``m_min <= m <= M`` in exact arithmetic."""
    c, b = as_exact(c), as_exact(b)
    fn = _fn(lengthfn)
    subject = subject or _name(lengthfn)
    if M < m_min:
        raise ValueError(f"empty range [{m_min}, {M}]")
    for k in range(flog2(m_min), flog2(M) + 1):
        lo = max(m_min, 1 << k)
        hi = min(M, (2 << k) - 1)
        limit = math.floor(c + b * k)  # lengths are integers
        bad = next((m for m in range(lo, hi + 1) if fn(m) > limit), None)
        if bad is not None:
            return BoundReport(subject, b, c, m_min, M, False, bad, fn(bad))
    return BoundReport(subject, b, c, m_min, M, True)


class BoundParameterError(ValueError):
    pass


def check_slope_bound(lengthfn, b, M: int, subject: str | None = None) -> BoundReport:
    """Check ``L(1) = 1`` and ``L(m) <= b + 1 + b*floor(log2 m)`` on ``[2, M]``.

    When both hold and ``1 <= b <= 9/4``, the report carries the implied
    expansion-factor bound ``b + 1``.
    """
    b = as_exact(b)
    if not B_MIN <= b <= B_MAX:
        raise BoundParameterError(f"b = {b} outside [1, 9/4]; no conclusion available")
    fn = _fn(lengthfn)
    subject = subject or _name(lengthfn)
    if fn(1) != 1:
        return BoundReport(subject, b, b + 1, 1, M, False, 1, fn(1), kind="slope")
    r = check_length_bound(fn, b + 1, b, M, subject=subject)
    return BoundReport(
        subject, b, b + 1, 1, M, r.holds, r.first_violation, r.violating_length,
        implied_bound=b + 1 if r.holds else None, kind="slope",
    )


def check_classic_bound(name: str, M: int) -> BoundReport:
    if name not in CLASSIC_BOUNDS:
        raise KeyError(f"no classic bound for {name!r}; expected one of {', '.join(CLASSIC_BOUNDS)}")
    if M < 2:
        raise ValueError("M >= 2 required")
    c, b = CLASSIC_BOUNDS[name]
    r = check_length_bound(length_function(name), c, b, M, subject=name)
    return BoundReport(**{**r.__dict__, "kind": "classic"})


# ------------------------------------------------------ infeasibility witness


@dataclass(frozen=True)
class InfeasibilityWitness:
    """Kraft certificate that no prefix code meets the envelope for slope ``b``.

    ``permitted`` lists ``(first m, last m, max length)`` per block of equal
    ``floor(log2 m)``.  ``kraft_lower_bound`` is the smallest possible Kraft
    sum over ``m = 1..15``; if it reaches 1, codeword 16 onwards pushes the
    full sum strictly above 1.
    """

    b: Fraction
    permitted: tuple[tuple[int, int, int], ...]
    kraft_lower_bound: Fraction
    infeasible: bool
    note: str = (
        "the sum runs over m=1..15 (15 terms); an index written as m=1..16 "
        "would add the m=16 term, which only increases the bound"
    )

    def summary(self) -> str:
        blocks = ", ".join(f"m={a}..{z}: L<={L}" for a, z, L in self.permitted)
        verdict = "INFEASIBLE" if self.infeasible else "no contradiction"
        return (
            f"witness b={float(self.b):.6g}: L(1)=1, {blocks}; "
            f"Kraft sum over m=1..15 >= {self.kraft_lower_bound} ({float(self.kraft_lower_bound):.6g}); "
            f"any codeword for m>=16 adds positive mass -> {verdict}"
        )


def infeasibility_witness(b) -> InfeasibilityWitness:
    b = as_exact(b)
    if b >= Fraction(3, 2):
        raise BoundParameterError(f"b = {b} >= 3/2: the Kraft argument yields no contradiction")
    permitted = []
    total = Fraction(1, 2)  # L(1) = 1
    for k in (1, 2, 3):
        L = math.floor(b + 1 + b * k)
        permitted.append((1 << k, (2 << k) - 1, L))
        total += (1 << k) * Fraction(2) ** -L
    return InfeasibilityWitness(b, tuple(permitted), total, total >= 1)


# ----------------------------------------------------------------- envelopes


def asymptotic_envelope(t: int, H: float) -> float:
    """``3t - 1 + H + 2*log2(1 + H)``, an upper bound on the expected kappa[t] length."""
    if t < 1 or H < 0:
        raise ValueError("need t >= 1 and H >= 0")
    return 3 * t - 1 + H + 2 * math.log2(1 + H)


@dataclass(frozen=True)
class EnvelopeCheck:
    t: int
    entropy: float
    expected_length: float
    envelope: float
    holds: bool
    advisory: bool

    def __bool__(self) -> bool:
        return self.holds


@lru_cache(maxsize=32)
def _kappa_lengths_pow2(t: int, n: int) -> np.ndarray:
    a = lengths_array(length_function("kappa_t", t), n)
    a.setflags(write=False)
    return a


def _kappa_lengths(t: int, n: int) -> np.ndarray:
    return _kappa_lengths_pow2(t, 1 << max(n - 1, 1).bit_length())[:n]


def check_envelope(t: int, P: Distribution, tol: float = 1e-9) -> EnvelopeCheck:
    """Compare E_P[L_kappa[t]] to the envelope.  ``t = 1`` results are advisory only."""
    H = entropy(P)
    E = expected_length(_kappa_lengths(t, len(P)), P)
    T = asymptotic_envelope(t, H)
    return EnvelopeCheck(t, H, E, T, E <= T + tol, t == 1)


# ------------------------------------------------------------ proof scanning


@dataclass(frozen=True)
class ProofScanReport:
    b: float
    gridsize: int
    g1_max: float
    g1_argmax: float
    g2_max: float
    g2_argmax: float
    tol: float

    @property
    def g1_holds(self) -> bool:
        return self.g1_max <= self.b + 1 + self.tol

    @property
    def g2_holds(self) -> bool:
        return self.g2_max <= 1 + self.tol

    @property
    def holds(self) -> bool:
        return self.g1_holds and self.g2_holds

    def summary(self) -> str:
        return (
            f"proofscan b={self.b:g} ({self.gridsize} points): "
            f"max g1 on [1/2,1] = {self.g1_max:.15g} at x={self.g1_argmax:g} (limit b+1={self.b + 1:g}) "
            f"{'ok' if self.g1_holds else 'VIOLATED'}; "
            f"max g2 on (0,1/2) = {self.g2_max:.15g} at x={self.g2_argmax:.9g} (limit 1) "
            f"{'ok' if self.g2_holds else 'VIOLATED'}"
        )


def g1(x, b):
    x = np.asarray(x, dtype=float)
    return 2 * b + 1 - b * x + b * x * np.log2(x)


def g2(x, b):
    x = np.asarray(x, dtype=float)
    return (b + 1 - b * x + b * x * np.log2(x)) / -np.log2(x)


def proof_inequality_scan(b: float, gridsize: int, tol: float = 1e-12) -> ProofScanReport:
    """Evaluate g1 on a uniform grid of [1/2, 1] and g2 on one of (0, 1/2)."""
    b_exact = as_exact(b)
    if not B_MIN <= b_exact <= B_MAX:
        raise BoundParameterError(f"b = {b} outside [1, 9/4]")
    if gridsize < 10:
        raise ValueError("gridsize >= 10 required")
    b = float(b_exact)
    x1 = np.linspace(0.5, 1.0, gridsize)
    y1 = g1(x1, b)
    x2 = np.linspace(0.0, 0.5, gridsize + 2)[1:-1]
    y2 = g2(x2, b)
    i, j = int(np.argmax(y1)), int(np.argmax(y2))
    return ProofScanReport(b, gridsize, float(y1[i]), float(x1[i]), float(y2[j]), float(x2[j]), tol)


# -------------------------------------------------------------------- sweeps


@dataclass(frozen=True)
class SweepPoint:
    param: float
    entropy: float
    expected_length: float
    ratio: float
    truncation_bound: float


@dataclass
class SweepReport:
    code: str
    family: str
    grid: str
    points: list[SweepPoint] = field(repr=False)
    max_ratio: float = 0.0
    argmax: float = float("nan")
    truncation_bound: float = 0.0

    def summary(self) -> str:
        return (
            f"sweep {self.code} over {self.family} ({self.grid}): "
            f"max ratio {self.max_ratio:.12g} at {self.argmax:g}; "
            f"truncation bound {self.truncation_bound:.3g}"
        )

    def rows(self) -> list[dict]:
        return [{"code": self.code, "family": self.family, **asdict(p)} for p in self.points]


def default_grid(family: str, steps: int = 1000) -> np.ndarray:
    if family == "two_point":
        return np.linspace(0.5, 1.0, steps)
    if family == "uniform":
        return np.arange(1, steps + 1)
    if family == "truncated_geometric":
        return np.linspace(0.0, 1.0, steps + 2)[1:-1]
    raise ValueError(f"unknown family {family!r}")


def ratio_sweep(
    code,
    family: str,
    grid: Iterable[float] | None = None,
    *,
    n: int = 10_000,
    steps: int = 1000,
    b=None,
    name: str | None = None,
) -> SweepReport:
    """Expansion ratio of ``code`` at every point of a one-parameter family.

    ``grid`` holds ``q`` (two_point), ``N`` (uniform) or ``r``
    (truncated_geometric, with support size ``n``).  The maximum is exact over
    the grid; ties go to the smallest parameter.  For truncated_geometric the
    untruncated tail mass ``r**n`` times the envelope
    ``b + 1 + b*log2(n)`` is reported as the truncation bound.
    """
    fn = _fn(code)
    name = name or _name(code)
    params = sorted(float(x) for x in (default_grid(family, steps) if grid is None else grid))
    if not params:
        raise ValueError("empty grid")
    if family == "two_point":
        size = 2
    elif family == "uniform":
        size = int(max(params))
    elif family == "truncated_geometric":
        size = n
    else:
        raise ValueError(f"unknown family {family!r}")
    L = lengths_array(fn, size)
    slope = float(as_exact(b)) if b is not None else _default_slope(name)

    points = []
    for x in params:
        if family == "two_point":
            P, tail = two_point(x), 0.0
        elif family == "uniform":
            P, tail = uniform(int(x)), 0.0
        else:
            P, tail = truncated_geometric(x, n), x**n
        H = entropy(P)
        E = expected_length(L, P)
        trunc = tail * (slope + 1 + slope * math.log2(len(P))) if tail else 0.0
        points.append(SweepPoint(x, H, E, E / max(1.0, H), trunc))

    best = points[0]
    for p in points[1:]:
        if p.ratio > best.ratio:
            best = p
    grid_desc = f"{len(params)} points in [{params[0]:g}, {params[-1]:g}]"
    if family == "truncated_geometric":
        grid_desc += f", N={n}"
    return SweepReport(name, family, grid_desc, points, best.ratio, best.param, max(p.truncation_bound for p in points))


def _default_slope(name: str) -> float:
    base, _, t = name.partition("[")
    try:
        return float(known_slope(base, int(t.rstrip("]")) if t else None))
    except (KeyError, TypeError, ValueError):
        return float("inf")


# --------------------------------------------------------------- reporting


def rows_to_csv(rows: Sequence[dict], path: str | Path | None = None) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: ("" if v is None else v) for k, v in r.items()})
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
