"""Acceptance criteria 1-11.

Each test reports through the ``criterion`` fixture; the terminal summary
prints one PASS/FAIL line per criterion.
"""

import random
import time
from fractions import Fraction

import numpy as np
import pytest

from oracles import brute_kraft, elias_delta, elias_gamma, floor_log2
from test_codes import TABLE_ALPHA_TILDE, TABLE_GAMMA_TILDE, TABLE_IOTA, TABLE_KAPPA
from uci.analysis import (
    check_envelope,
    check_classic_bound,
    check_slope_bound,
    kappa_t_slope,
    kraft_partial_sum,
    proof_inequality_scan,
    ratio_sweep,
    infeasibility_witness,
)
from uci.bitio import BitString, BitStringSource
from uci.codes import (
    alpha_tilde_encode,
    gamma_tilde_t_encode,
    get_code,
    iota_encode,
    kappa_t_encode,
    length_function,
)
from uci.dist import expansion_ratio, truncated_geometric, two_point, uniform

pytestmark = pytest.mark.acceptance

ROUND_TRIP_CODES = (
    [get_code(n) for n in ("alpha_tilde", "iota", "omega", "eta_canonical", "theta_canonical")]
    + [get_code("gamma_tilde_t", t) for t in range(1, 9)]
    + [get_code("kappa_t", t) for t in range(1, 9)]
)
KRAFT_CODES = [(n, None) for n in ("alpha_tilde", "iota", "omega", "eta", "theta", "gamma", "delta")] \
    + [(n, t) for n in ("gamma_tilde_t", "kappa_t") for t in range(1, 9)]
M_LARGE = 10**6


def test_criterion_01_golden_tables(criterion):
    start = time.perf_counter()
    B = BitString.from_str
    bad = [n for n in range(1, 17)
           if alpha_tilde_encode(n) != B(TABLE_ALPHA_TILDE[n - 1]) or iota_encode(n) != B(TABLE_IOTA[n - 1])]
    bad += [n for n in TABLE_KAPPA
            if gamma_tilde_t_encode(2, n) != B(TABLE_GAMMA_TILDE[n]) or kappa_t_encode(2, n) != B(TABLE_KAPPA[n])]
    elapsed = time.perf_counter() - start
    criterion(1, not bad and elapsed < 1.0,
              f"{16 + len(TABLE_KAPPA)} rows, table vs definition mismatches={bad}, {elapsed * 1000:.1f} ms")


def test_criterion_02_round_trip(criterion):
    rng = random.Random(20261015)
    wide = [rng.randrange(1, 2**63) for _ in range(10_000)]
    start = time.perf_counter()
    failures = []
    for code in ROUND_TRIP_CODES:
        for m in [*range(1, 100_001), *wide]:
            w = code.encode(m)
            src = BitStringSource(w)
            if code.decode(src) != m or src.remaining or w.length != code.length(m):
                failures.append((code.label, m))
                break
    elapsed = time.perf_counter() - start
    criterion(2, not failures and elapsed < 60.0,
              f"{len(ROUND_TRIP_CODES)} codes x 110000 values, failures={failures}, {elapsed:.1f} s")


def test_criterion_03_specialization(criterion):
    bad_gamma = next((m for m in range(1, 100_001) if str(gamma_tilde_t_encode(1, m)) != elias_gamma(m)), None)
    bad_delta = next((m for m in range(1, 100_001) if str(kappa_t_encode(1, m)) != elias_delta(m)), None)
    criterion(3, bad_gamma is None and bad_delta is None,
              f"gamma_tilde[1] vs Elias gamma first mismatch={bad_gamma}; "
              f"kappa[1] vs Elias delta first mismatch={bad_delta}")


def test_criterion_04_ratio_at_two_point(criterion):
    P = two_point(0.5)
    ratios = {"iota": expansion_ratio(get_code("iota"), P).ratio}
    ratios |= {f"kappa[{t}]": expansion_ratio(get_code("kappa_t", t), P).ratio for t in range(1, 9)}
    worst = max(abs(r - 2.5) for r in ratios.values())
    criterion(4, worst <= 1e-12, f"max |ratio - 2.5| = {worst:.3g} over {len(ratios)} codes")


def test_criterion_05_kraft(criterion):
    sums = {f"{n}[{t}]" if t else n: kraft_partial_sum(length_function(n, t), M_LARGE) for n, t in KRAFT_CODES}
    worst = max(sums, key=lambda k: sums[k])
    profile = [1, 3, 3] + [5] * 4 + [6] * 8
    exact = kraft_partial_sum(profile)
    ok = all(s <= 1 + 1e-12 for s in sums.values()) and exact == 1 and brute_kraft(profile) == 1
    criterion(5, ok, f"M=1e6 max sum {float(sums[worst]):.15f} ({worst}); 15-term profile sums to {exact}")


def test_criterion_06_slope_bounds(criterion):
    cases = [(length_function("iota"), Fraction(3, 2), Fraction(5, 2)),
             (length_function("kappa_t", 2), Fraction(5, 3), Fraction(8, 3))]
    cases += [(length_function("kappa_t", t), kappa_t_slope(t), Fraction(5, 2) + Fraction(1, 2 * t + 2))
              for t in range(1, 9)]
    reports = [(check_slope_bound(fn, b, M_LARGE), K) for fn, b, K in cases]
    reports += [(check_classic_bound(n, M_LARGE), None) for n in ("delta", "omega", "eta", "theta")]
    classic_b = {r.subject: r.b for r, _ in reports[-4:]}
    ok = all(r.holds and (K is None or r.implied_bound == K) for r, K in reports)
    ok &= classic_b == {"delta": Fraction(7, 4), "omega": 2, "eta": Fraction(5, 3), "theta": Fraction(9, 5)}
    failed = [r.subject for r, _ in reports if not r.holds]
    criterion(6, ok, f"{len(reports)} bound checks over m <= 1e6 (finite-range evidence), failed={failed}")


def test_criterion_07_infeasibility_witness(criterion):
    bs = [Fraction(i, 10) for i in range(10, 15)] + [Fraction(149, 100)]
    witnesses = [infeasibility_witness(b) for b in bs]
    low = min(w.kraft_lower_bound for w in witnesses)
    criterion(7, all(w.kraft_lower_bound >= 1 and w.infeasible for w in witnesses),
              f"b in 1.0..1.49: min Kraft lower bound over m=1..15 = {low}")


def test_criterion_08_iota_lower_bound(criterion):
    L = length_function("iota")
    bad = next((m for m in range(1, M_LARGE + 1) if L(m) < 1 + Fraction(3, 2) * floor_log2(m)), None)
    criterion(8, bad is None,
              f"L_iota(m) >= 1 + 1.5 floor(log2 m) for m <= 1e6, first violation={bad}")


def test_criterion_09_proof_scan(criterion):
    details, ok = [], True
    for b in (Fraction(1), Fraction(3, 2), Fraction(9, 4)):
        r = proof_inequality_scan(b, 10**5, tol=1e-9)
        at_end = r.g1_argmax in (0.5, 1.0)
        ok &= abs(r.g1_max - float(b + 1)) <= 1e-9 and at_end and r.g2_max <= 1 + 1e-9
        details.append(f"b={float(b)}: max g1={r.g1_max:.12f} at x={r.g1_argmax}, max g2={r.g2_max:.12f}")
    criterion(9, ok, "; ".join(details))


def _envelope_families(n_geom):
    yield from (two_point(q) for q in np.linspace(0.5, 1.0, 101))
    yield from (uniform(N) for N in range(1, 4097))
    yield from (truncated_geometric(r, n_geom) for r in np.linspace(0.0, 1.0, 202)[1:-1])
    yield from (truncated_geometric(1 - 2.0**-j, n_geom) for j in range(1, 21))


def test_criterion_10_envelope(criterion):
    failures, count = [], 0
    for P in _envelope_families(10**5):
        for t in (2, 3, 4):
            count += 1
            if not check_envelope(t, P):
                failures.append((t, P.label))
    criterion(10, not failures, f"envelope holds on {count - len(failures)}/{count} (t, P) pairs")


def test_criterion_10_kappa2_ratio_monotone_toward_limit(criterion):
    grid = [1 - 2.0**-j for j in range(1, 21)]
    rep = ratio_sweep(length_function("kappa_t", 2), "truncated_geometric", grid, n=10**5)
    ratios = [p.ratio for p in rep.points]
    rises = [(grid[i + 1], ratios[i], ratios[i + 1]) for i in range(len(ratios) - 1) if ratios[i + 1] > ratios[i]]
    monotone = not rises
    below = ratios[-1] < 1.6
    criterion(10, monotone and below,
              f"kappa[2] over truncated_geometric(1-2^-j, 1e5): all ratios < 1.6 = {max(ratios) < 1.6}, "
              f"final {ratios[-1]:.4f}, nonincreasing = {monotone} "
              f"(min {min(ratios):.4f} at r={grid[ratios.index(min(ratios))]}, {len(rises)} increases)")


def test_criterion_11_sweep_lower_bounds(criterion):
    grid = np.linspace(0.5, 1.0, 1001)
    maxima = {"iota": ratio_sweep(length_function("iota"), "two_point", grid).max_ratio}
    maxima |= {f"kappa[{t}]": ratio_sweep(length_function("kappa_t", t), "two_point", grid).max_ratio
               for t in range(1, 9)}
    g = ratio_sweep(length_function("gamma"), "uniform", range(1, 4097))
    ok = all(abs(v - 2.5) <= 1e-12 for v in maxima.values()) and g.max_ratio <= 3.0 + g.truncation_bound
    criterion(11, ok, f"two-point max ratio in [{min(maxima.values())}, {max(maxima.values())}] "
                      f"for iota and kappa[1..8]; gamma over uniform(N<=4096) max {g.max_ratio:.6f} "
                      f"at N={int(g.argmax)}")
