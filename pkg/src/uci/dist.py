"""Monotone source distributions, entropy and expansion ratios.

Sources are finite probability vectors over ``1..N`` that never increase:
``p(m) >= p(m + 1)``.  Construction enforces that, and the sum-to-one
condition, so every :class:`Distribution` is a valid source.

The expansion ratio of a code under ``P`` is ``E_P[L] / max(1, H(P))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

SUM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Distribution:
    p: np.ndarray
    label: str = ""

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("distribution needs a nonempty 1-d probability vector")
        if np.any(~np.isfinite(p)) or np.any(p < 0):
            raise ValueError("probabilities must be finite and nonnegative")
        total = math.fsum(p)
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        if np.any(np.diff(p) > 0):
            i = int(np.argmax(np.diff(p) > 0))
            raise ValueError(f"not monotone: p({i + 1}) = {p[i]} < p({i + 2}) = {p[i + 1]}")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    def __len__(self) -> int:
        return self.p.size

    def __getitem__(self, m: int) -> float:
        """Probability of symbol ``m`` (1-based)."""
        return float(self.p[m - 1])


def entropy(P: Distribution) -> float:
    p = P.p[P.p > 0]
    return max(0.0, -math.fsum(p * np.log2(p)))


def lengths_array(lengthfn: Callable[[int], int], n: int) -> np.ndarray:
    """Codeword lengths of symbols ``1..n`` as a float array."""
    return np.fromiter((lengthfn(m) for m in range(1, n + 1)), dtype=float, count=n)


def _lengths(code, n: int) -> np.ndarray:
    if isinstance(code, np.ndarray):
        if code.size < n:
            raise ValueError(f"need {n} lengths, got {code.size}")
        return code[:n]
    fn = code.length if hasattr(code, "encode") else code
    return lengths_array(fn, n)


def expected_length(code, P: Distribution) -> float:
    """Sum of ``L(m) * p(m)`` over the support.

    ``code`` may be an :class:`~uci.codes.IntegerCode`, any length callable,
    or a precomputed array of lengths for ``1..N``.
    """
    return math.fsum(_lengths(code, len(P)) * P.p)


@dataclass(frozen=True)
class RatioReport:
    code: str
    entropy: float
    expected_length: float
    ratio: float


def _code_name(code) -> str:
    for attr in ("label", "name", "__name__"):
        name = getattr(code, attr, None)
        if isinstance(name, str):
            return name
    return "lengths"


def expansion_ratio(code, P: Distribution, name: str | None = None) -> RatioReport:
    H = entropy(P)
    E = expected_length(code, P)
    return RatioReport(name or _code_name(code), H, E, E / max(1.0, H))


# ------------------------------------------------------------------ families

FAMILIES = ("two_point", "uniform", "truncated_geometric")


def two_point(q: float) -> Distribution:
    if not 0.5 <= q <= 1.0:
        raise ValueError(f"two_point needs 1/2 <= q <= 1 for a monotone source, got {q}")
    return Distribution(np.array([q, 1.0 - q]), f"two_point({q:g})")


def uniform(n: int) -> Distribution:
    if n < 1:
        raise ValueError(f"uniform needs N >= 1, got {n}")
    return Distribution(np.full(n, 1.0 / n), f"uniform({n})")


def truncated_geometric(r: float, n: int) -> Distribution:
    """``p(m)`` proportional to ``r**(m-1)`` on ``1..n``."""
    if not 0.0 < r < 1.0:
        raise ValueError(f"truncated_geometric needs 0 < r < 1, got {r}")
    if n < 1:
        raise ValueError(f"truncated_geometric needs N >= 1, got {n}")
    w = r ** np.arange(n, dtype=float)
    return Distribution(w / math.fsum(w), f"truncated_geometric({r:g}, {n})")


def make_family(kind: str, *params) -> Distribution:
    if kind == "two_point":
        (q,) = params
        return two_point(float(q))
    if kind == "uniform":
        (n,) = params
        return uniform(int(n))
    if kind == "truncated_geometric":
        r, n = params
        return truncated_geometric(float(r), int(n))
    raise ValueError(f"unknown family {kind!r}; expected one of {', '.join(FAMILIES)}")


def parse_dist(spec: str) -> Distribution:
    """Parse ``kind:p1,p2`` (e.g. ``two_point:0.5``) or a path to a distribution file."""
    kind, sep, rest = spec.partition(":")
    if sep and kind in FAMILIES:
        return make_family(kind, *[x for x in rest.split(",") if x])
    return load_distribution(spec)


# ------------------------------------------------------------------ file I/O


def load_distribution(path: str | Path) -> Distribution:
    """Read one probability per line; ``#`` starts a comment, blank lines are skipped."""
    probs = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            probs.append(float(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a probability: {line!r}") from None
    return Distribution(np.array(probs), Path(path).name)


def save_distribution(P: Distribution, path: str | Path, comment: str | None = None) -> None:
    lines = [f"# {comment}"] if comment else []
    lines += [repr(float(x)) for x in P.p]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def from_weights(weights: Sequence[float]) -> Distribution:
    w = np.asarray(weights, dtype=float)
    return Distribution(w / math.fsum(w))
