"""Independent reference implementations used as test oracles.

Everything here is string-based and written from the textbook definitions,
sharing no code with the package under test.
"""

from fractions import Fraction
import math


def binary(n):
    return bin(n)[2:]


def elias_gamma(n):
    b = binary(n)
    return "0" * (len(b) - 1) + b


def elias_delta(n):
    b = binary(n)
    return elias_gamma(len(b)) + b[1:]


def elias_omega(n):
    out = "0"
    while n > 1:
        b = binary(n)
        out = b + out
        n = len(b) - 1
    return out


def floor_log2(n):
    # repeated halving, deliberately not bit_length()
    k = 0
    while n >= 2:
        n //= 2
        k += 1
    return k


def omega_length_table_formula(m):
    """1 + sum_{n=1..s} (lambda^n(m) + 1) with lambda = floor(log2)."""
    if m == 1:
        return 1
    chain = []
    x = m
    while True:
        x = floor_log2(x)
        chain.append(x)
        if x == 1:
            break
    return 1 + sum(v + 1 for v in chain)


def brute_kraft(lengths):
    return sum((Fraction(1, 2**L) for L in lengths), Fraction(0))


def is_prefix_free(words):
    ws = sorted(words)
    # in sorted order a prefix sorts immediately before some extension of it
    return all(not ws[i + 1].startswith(ws[i]) for i in range(len(ws) - 1)) and len(set(ws)) == len(ws)


def entropy_bits(p):
    return -sum(x * math.log2(x) for x in p if x > 0)
