import re

import pytest
from hypothesis import given, strategies as st

from relkit.perm import (
    CycleParseError,
    Permutation,
    compose,
    from_cycles,
    inverse,
    parse_cycles,
    print_cycles,
)


@st.composite
def perms(draw, n=None):
    n = draw(st.integers(1, 32)) if n is None else n
    return Permutation(draw(st.permutations(range(n))))


def test_parse_example():
    assert parse_cycles("(1,2,5)(3,4,6)", 6).images == (1, 4, 3, 5, 0, 2)


def test_identity_prints_as_empty_cycle():
    assert print_cycles(Permutation.identity(5)) == "()"
    assert parse_cycles("()", 5).is_identity()
    assert parse_cycles("", 3).is_identity()


def test_whitespace_is_tolerated():
    assert parse_cycles(" ( 1 , 2 )( 3,4 ) ", 4) == parse_cycles("(1,2)(3,4)", 4)


@pytest.mark.parametrize("text, where", [
    ("(1,2", "unterminated"),
    ("(1,2,1)", "repeated"),
    ("(1,9)", "outside"),
    ("(0,1)", "outside"),
    ("1,2)", "expected '('"),
    ("(1;2)", "expected ','"),
    ("(,1)", "expected a point"),
])
def test_parse_errors(text, where):
    with pytest.raises(CycleParseError, match=re.escape(where)):
        parse_cycles(text, 4)


def test_error_reports_offset():
    with pytest.raises(CycleParseError) as exc:
        parse_cycles("(1,2)(3,9)", 5)
    assert exc.value.offset == 8


def test_degree_bounds():
    with pytest.raises(ValueError):
        parse_cycles("()", 33)
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


@given(perms())
def test_print_parse_round_trip(g):
    assert parse_cycles(print_cycles(g), g.degree) == g


@given(st.data())
def test_product_applies_left_factor_first(data):
    n = data.draw(st.integers(1, 12))
    g, h = data.draw(perms(n)), data.draw(perms(n))
    gh = g * h
    assert gh == compose(g, h)
    for i in range(n):
        assert gh(i) == h(g(i))


@given(perms())
def test_inverse(g):
    e = Permutation.identity(g.degree)
    assert g * ~g == e == ~g * g
    assert inverse(g) == ~g


@given(perms(), st.integers(0, 2**32 - 1))
def test_image_mask_matches_pointwise(g, mask):
    mask &= (1 << g.degree) - 1
    expect = sum(1 << g(i) for i in range(g.degree) if mask >> i & 1)
    assert g.image_mask(mask) == expect


@given(perms())
def test_order_and_parity_from_cycles(g):
    p = g
    k = 1
    while not p.is_identity():
        p = p * g
        k += 1
    assert g.order() == k
    transpositions = sum(len(c) - 1 for c in g.cycles())
    assert g.is_even() == (transpositions % 2 == 0)


def test_from_cycles_is_zero_based():
    assert from_cycles([(0, 1, 2)], 4) == parse_cycles("(1,2,3)", 4)


def test_immutable_and_hashable():
    g = parse_cycles("(1,2)", 3)
    with pytest.raises(AttributeError):
        g.images = (0, 1, 2)
    assert len({g, parse_cycles("(2,1)", 3)}) == 1


def test_cycle_type_counts_fixed_points():
    assert parse_cycles("(1,2)(3,4,5)", 7).cycle_type() == (1, 1, 2, 3)
