import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from relpib.ring import (
    ParseError,
    RingError,
    RingSpec,
    canonical_associate,
    enumerate_norm_le,
    format_elt,
    norm,
    parse,
    sqrt_exact,
    units,
)

TEST_D = (1, 2, 3, 5, 7, 11, 15, 19)


def elt(D, a, b):
    return RingSpec(D)(a, b)


def test_ring_rejects_non_squarefree_and_nonpositive():
    for D in (0, -1, 4, 12, 18):
        with pytest.raises(RingError):
            RingSpec(D)


def test_basis_choice():
    assert RingSpec(3).trace_w == 1 and RingSpec(3).const_w == -1
    assert RingSpec(7).const_w == -2
    assert RingSpec(1).trace_w == 0 and RingSpec(1).const_w == -1
    assert RingSpec(2).const_w == -2


def test_arith_examples():
    assert elt(1, 1, 1) * elt(1, 1, 1) == elt(1, 0, 2)
    r3 = RingSpec(3)
    assert r3.w * r3.w == r3.w - 1
    assert elt(2, 1, 1) * elt(2, 1, -1) == elt(2, 3, 0)


def test_mixed_rings_rejected():
    with pytest.raises(RingError):
        elt(1, 1, 1) + elt(2, 1, 1)


def test_norm_examples():
    assert norm(elt(1, 1, 1)) == 2
    assert norm(RingSpec(3).w) == 1
    assert norm(elt(2, 3, 2)) == 17


def test_unit_counts():
    assert len(units(RingSpec(1))) == 4
    assert len(units(RingSpec(3))) == 6
    assert len(units(RingSpec(7))) == 2


@pytest.mark.parametrize("D", TEST_D)
def test_unit_group_closure(D):
    us = set(units(RingSpec(D)))
    for u, v in itertools.product(us, us):
        assert u * v in us
    for u in us:
        assert any(u * v == 1 for v in us)
        assert u.norm() == 1


def test_sqrt_examples():
    r1 = RingSpec(1)
    assert sqrt_exact(2 * r1.w) == r1(1, 1)
    assert sqrt_exact(r1(3)) is None
    r3 = RingSpec(3)
    assert sqrt_exact(r3.w - 1) in (r3.w, -r3.w)


def test_sqrt_large():
    r = RingSpec(7)
    x = r(3 ** 90 + 11, -(5 ** 70))
    assert sqrt_exact(x * x) in (x, -x)
    assert sqrt_exact(x * x * 3) is None


def test_enumerate_examples():
    r1 = RingSpec(1)
    assert enumerate_norm_le(r1, 0) == [r1.zero]
    assert len(enumerate_norm_le(r1, 2)) == 9
    r5 = RingSpec(5)
    assert set(enumerate_norm_le(r5, 4)) == {r5(a) for a in (-2, -1, 0, 1, 2)}


def test_enumerate_sorted_and_rejects_negative():
    r = RingSpec(3)
    xs = enumerate_norm_le(r, 50)
    keys = [(x.norm(), x.a, x.b) for x in xs]
    assert keys == sorted(keys)
    with pytest.raises(ValueError):
        enumerate_norm_le(r, -1)


def test_canonical_associate_examples():
    r1 = RingSpec(1)
    reps = {canonical_associate((u, r1.zero)) for u in units(r1)}
    assert len(reps) == 1
    t = r1(5, 2)
    v = (-r1.w * t, r1.zero, r1.one)
    assert canonical_associate(tuple(r1.w * x for x in v)) == canonical_associate(v)
    r7 = RingSpec(7)
    v = (r7(1, 2), r7(0), r7(3))
    assert len({canonical_associate(tuple(u * x for x in v)) for u in units(r7)}) == 1
    assert len({tuple(u * x for x in v) for u in units(r7)}) == 2


def test_canonical_associate_zero_rejected():
    r = RingSpec(1)
    with pytest.raises(RingError):
        canonical_associate((r.zero, r.zero))


def test_parse_examples():
    r = RingSpec(1)
    assert parse("3+2*w", r) == r(3, 2)
    assert parse("-1", r) == r(-1, 0)
    assert parse("3-2*w", r) == r(3, -2)
    assert parse("-2*w", r) == r(0, -2)
    assert parse("2*w", r) == r(0, 2)


@pytest.mark.parametrize("text,pos", [("w", 0), ("", 0), ("3+w", 2), ("3+2*x", 3), ("3+2*w ", 5), ("3*", 1), ("+3", 2)])
def test_parse_rejects_with_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text, RingSpec(1))
    assert info.value.pos == pos


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(TEST_D), st.integers(-10**30, 10**30), st.integers(-10**30, 10**30))
def test_format_parse_round_trip(D, a, b):
    r = RingSpec(D)
    x = r(a, b)
    s = format_elt(x)
    assert parse(s, r) == x
    assert format_elt(parse(s, r)) == s


def test_exact_div():
    r = RingSpec(2)
    x, y = r(3, 1), r(1, -5)
    assert (x * y).exact_div(y) == x
    assert r(1).exact_div(r(2)) is None
    with pytest.raises(ZeroDivisionError):
        x.exact_div(r.zero)


def _naive_box(ring, bound):
    # for both bases |b| <= 2*sqrt(bound/D) and |a| <= |b| + sqrt(bound) cover every element
    bmax = 2 * math.isqrt(bound // ring.D + 1) + 1
    amax = math.isqrt(bound) + bmax + 1
    return {ring(a, b) for a in range(-amax, amax + 1) for b in range(-bmax, bmax + 1)
            if ring(a, b).norm() <= bound}


@pytest.mark.parametrize("D", TEST_D)
def test_enumeration_matches_naive_box(D):
    r = RingSpec(D)
    for bound in (0, 1, 3, 17, 100):
        got = enumerate_norm_le(r, bound)
        assert len(got) == len(set(got))
        assert set(got) == _naive_box(r, bound)
