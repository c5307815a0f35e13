import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import entropy_bits
from uci.analysis import expansion_bound
from uci.codes import get_code, length_function
from uci.dist import (
    Distribution,
    entropy,
    expansion_ratio,
    expected_length,
    load_distribution,
    make_family,
    parse_dist,
    save_distribution,
    truncated_geometric,
    two_point,
    uniform,
)


def test_entropy_examples():
    assert entropy(two_point(0.5)) == 1.0
    assert entropy(Distribution([1.0])) == 0.0
    assert entropy(Distribution([0.5, 0.25, 0.25])) == 1.5


@pytest.mark.parametrize("n", [1, 2, 3, 7, 100, 1000, 4097, 2**16])
def test_entropy_of_uniform(n):
    assert abs(entropy(uniform(n)) - math.log2(n)) <= 1e-12


def test_expected_length_examples():
    iota = get_code("iota")
    assert expected_length(iota, two_point(0.5)) == 2.5
    assert expected_length(iota, Distribution([1.0])) == 1.0
    assert expected_length(length_function("gamma"), Distribution([0.5, 0.25, 0.25])) == 2.0


def test_expansion_ratio_examples():
    assert expansion_ratio(get_code("iota"), two_point(0.5)).ratio == 2.5
    for t in range(1, 9):
        assert expansion_ratio(length_function("kappa_t", t), two_point(0.5)).ratio == 2.5
    r = expansion_ratio(length_function("theta"), Distribution([1.0]))
    assert r.ratio == 1.0 and r.entropy == 0.0


def test_families():
    assert list(make_family("two_point", 0.5).p) == [0.5, 0.5]
    assert list(make_family("uniform", 4).p) == [0.25] * 4
    np.testing.assert_allclose(make_family("truncated_geometric", 0.5, 3).p, [4 / 7, 2 / 7, 1 / 7], rtol=1e-15)


@pytest.mark.parametrize("kind,params", [
    ("two_point", (0.49,)), ("two_point", (1.01,)), ("uniform", (0,)),
    ("truncated_geometric", (0.0, 3)), ("truncated_geometric", (1.0, 3)), ("truncated_geometric", (0.5, 0)),
    ("zipf", (1.0,)),
])
def test_family_parameter_errors(kind, params):
    with pytest.raises(ValueError):
        make_family(kind, *params)


def test_construction_enforces_source_model():
    with pytest.raises(ValueError, match="monotone"):
        Distribution([0.25, 0.75])
    with pytest.raises(ValueError, match="sum"):
        Distribution([0.5, 0.4])
    with pytest.raises(ValueError):
        Distribution([1.5, -0.5])
    with pytest.raises(ValueError):
        Distribution([])


def test_file_round_trip(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("# a comment\n0.5\n\n0.25  # trailing\n0.25\n", encoding="utf-8")
    P = load_distribution(path)
    assert list(P.p) == [0.5, 0.25, 0.25]
    save_distribution(truncated_geometric(0.9, 50), tmp_path / "g.txt", comment="geometric")
    Q = load_distribution(tmp_path / "g.txt")
    np.testing.assert_array_equal(Q.p, truncated_geometric(0.9, 50).p)
    assert list(parse_dist(str(path)).p) == list(P.p)


def test_file_validation(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0.2\n0.8\n", encoding="utf-8")
    with pytest.raises(ValueError, match="monotone"):
        load_distribution(bad)
    bad.write_text("0.5\nhalf\n", encoding="utf-8")
    with pytest.raises(ValueError, match="bad.txt:2"):
        load_distribution(bad)


@st.composite
def monotone_distributions(draw):
    w = draw(st.lists(st.floats(1e-6, 1.0), min_size=1, max_size=60))
    w = np.sort(np.array(w))[::-1]
    return Distribution(w / math.fsum(w))


@given(monotone_distributions())
def test_entropy_is_bounded_by_top_probability(P):
    H = entropy(P)
    assert H >= -math.log2(P[1]) - 1e-12
    if H < 1:
        assert P[1] > 0.5
    assert abs(H - entropy_bits(P.p)) <= 1e-9


CODES = [("iota", None), ("delta", None), ("omega", None), ("eta", None), ("theta", None), ("gamma", None)] \
    + [("kappa_t", t) for t in range(1, 9)]


@given(monotone_distributions())
def test_ratio_respects_expansion_bounds(P):
    for name, t in CODES:
        r = expansion_ratio(length_function(name, t), P)
        assert abs(r.ratio * max(1.0, r.entropy) - r.expected_length) <= 1e-12 * r.expected_length
        assert r.ratio <= float(expansion_bound(name, t)) + 1e-12, (name, t)
