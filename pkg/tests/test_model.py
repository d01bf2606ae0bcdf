"""Sign pattern parsing, networks, canonicalization, point sampling."""

import math
from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lvcoex.model import (
    EcologicalNetwork,
    ParameterPoint,
    PatternError,
    SignPattern,
    apply_permutation,
    canonicalize,
    network_to_sign_pattern,
    parse_sign_pattern,
    sample_point,
)


def brute_canonical(sp):
    # independent oracle: minimum flattened string over all n! relabelings
    return min(apply_permutation(sp, pi).text() for pi in permutations(range(sp.n)))


def random_patterns(n):
    span = n + n * n
    for bits in product("+-", repeat=span):
        yield "".join(bits)


# ---------------------------------------------------------------- parsing

def test_parse_all_plus_n2():
    sp = parse_sign_pattern("++ ++++")
    assert sp.n == 2
    assert sp.a_signs == (1, 1)
    assert sp.b_signs == ((1, 1), (1, 1))


def test_parse_obligate_mutualism_n2():
    sp = parse_sign_pattern("-- +--+")
    assert sp.a_signs == (-1, -1)
    assert sp.b_signs == ((1, -1), (-1, 1))


def test_parse_n3_with_separators():
    sp = parse_sign_pattern("+--, +--/++-/+-+")
    assert sp.n == 3
    assert sp.text() == "+--+--++-+-+"


def test_parse_rejects_bad_length():
    with pytest.raises(PatternError):
        parse_sign_pattern("+++")  # 3 is not n + n^2


def test_parse_rejects_bad_character():
    with pytest.raises(PatternError):
        parse_sign_pattern("++ +0++")


def test_parse_rejects_negative_diagonal():
    with pytest.raises(PatternError):
        parse_sign_pattern("++ -+++")
    # explicit override admits it
    sp = parse_sign_pattern("++ -+++", allow_any_diagonal=True)
    assert sp.b_signs[0][0] == -1


@given(st.integers(min_value=2, max_value=5), st.data())
def test_parse_format_round_trip(n, data):
    span = n + n * n
    chars = data.draw(st.lists(st.sampled_from("+-"), min_size=span, max_size=span))
    # keep the diagonal legal
    sp0 = list(chars)
    for i in range(n):
        sp0[n + i * n + i] = "+"
    text = "".join(sp0)
    sp = parse_sign_pattern(text)
    assert sp.text() == text
    assert parse_sign_pattern(sp.text()) == sp


def test_json_round_trip():
    sp = parse_sign_pattern("+--+--++-+-+")
    assert SignPattern.from_json(sp.to_json()) == sp
    assert sp.to_json()["a"] == ["+", "-", "-"]


# ---------------------------------------------------------------- networks

def test_network_competition_n2():
    net = EcologicalNetwork(2, (1, 1), {(0, 1): "competition"})
    assert network_to_sign_pattern(net).text() == "++++++"


def test_network_obligate_mutualism_n3():
    edges = {(0, 1): "mutualism", (0, 2): "mutualism", (1, 2): "mutualism"}
    net = EcologicalNetwork(3, (-1, -1, -1), edges)
    assert network_to_sign_pattern(net).text() == "---+---+---+"


def test_network_predation_direction():
    # species 1 predates species 2: b12 < 0, b21 > 0
    net = EcologicalNetwork(2, (1, 1), {(0, 1): "predation:0>1"})
    assert network_to_sign_pattern(net).text() == "+++-++"


def test_network_requires_every_pair():
    with pytest.raises(PatternError):
        network_to_sign_pattern(EcologicalNetwork(3, (1, 1, 1), {(0, 1): "competition"}))


# ---------------------------------------------------------------- canonicalization

def test_canonicalize_all_plus_fixed_point():
    sp = parse_sign_pattern("++++++")
    canon, pi = canonicalize(sp)
    assert canon == sp
    assert pi == (0, 1)


def test_canonicalize_n2_swap_pair():
    a = parse_sign_pattern("+- ++-+")
    b = parse_sign_pattern("-+ +-++")  # the same community with species swapped
    assert canonicalize(a)[0] == canonicalize(b)[0]


def test_canonicalize_matches_brute_force_n2():
    for text in random_patterns(2):
        try:
            sp = parse_sign_pattern(text)
        except PatternError:
            continue
        canon, pi = canonicalize(sp)
        assert canon.text() == brute_canonical(sp)
        assert apply_permutation(sp, pi) == canon


@given(st.sampled_from(list(product("+-", repeat=6))))
def test_canonicalize_constant_on_orbit_n3(offdiag):
    b = [["+"] * 3 for _ in range(3)]
    positions = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
    for (i, j), c in zip(positions, offdiag):
        b[i][j] = c
    text = "+-+" + "".join("".join(row) for row in b)
    sp = parse_sign_pattern(text)
    canon, _ = canonicalize(sp)
    for pi in permutations(range(3)):
        moved = apply_permutation(sp, pi)
        assert canonicalize(moved)[0] == canon
    # idempotence
    assert canonicalize(canon)[0] == canon


def test_apply_permutation_is_group_action():
    sp = parse_sign_pattern("+--+--++-+-+")
    p = (2, 0, 1)
    q = (1, 2, 0)
    composed = tuple(p[q[i]] for i in range(3))
    assert apply_permutation(apply_permutation(sp, p), q) == apply_permutation(sp, composed)


def test_orbit_count_n2_is_ten():
    # all diag-plus patterns for n=2 fall into exactly 10 relabeling classes
    seen = set()
    for bits in product("+-", repeat=4):
        text = bits[0] + bits[1] + "+" + bits[2] + bits[3] + "+"
        canon, _ = canonicalize(parse_sign_pattern(text))
        seen.add(canon.text())
    assert len(seen) == 10


# ---------------------------------------------------------------- sampling

def test_sample_point_deterministic():
    sp = parse_sign_pattern("+--+--++-+-+")
    assert sample_point(sp, seed=7) == sample_point(sp, seed=7)
    assert sample_point(sp, seed=7) != sample_point(sp, seed=8)


def test_sample_point_signs_and_range():
    sp = parse_sign_pattern("---+---+---+")
    pt = sample_point(sp, seed=3)
    assert all(ai < 0 for ai in pt.a)
    for i in range(3):
        for j in range(3):
            expected = sp.b_signs[i][j]
            assert (pt.B[i][j] > 0) == (expected > 0)
            assert Fraction(1, 100) <= abs(pt.B[i][j]) <= 100
    assert all(isinstance(v, Fraction) for v in pt.a)


def test_sample_point_respects_range():
    sp = parse_sign_pattern("++++++")
    pt = sample_point(sp, log_magnitude_range=(1.0, 10.0), seed=11)
    for v in list(pt.a) + [x for row in pt.B for x in row]:
        assert 1 <= abs(v) <= 10


# ---------------------------------------------------------------- parameter points

def test_point_from_decimals_is_exact():
    pt = ParameterPoint.from_decimals([0.11, -0.056], [[1, 2.949], [0.897, 1]])
    assert pt.a[0] == Fraction(11, 100)
    assert pt.B[0][1] == Fraction(2949, 1000)


def test_point_sign_pattern_extraction():
    pt = ParameterPoint.from_decimals([1, -2], [[1, -3], ["0.5", 1]])
    assert pt.sign_pattern().text() == "+-+-++"


def test_point_sign_pattern_rejects_zero():
    pt = ParameterPoint.from_decimals([1, 0], [[1, 1], [1, 1]])
    with pytest.raises(PatternError):
        pt.sign_pattern()
