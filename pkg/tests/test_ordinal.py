import random

import pytest
from hypothesis import given, strategies as st

from prcert import ordinal as o
from prcert.ordinal import Ordering

W = o.omega()
coeff_lists = st.lists(st.integers(0, 30), max_size=5)
polys = coeff_lists.map(o.from_coeffs)


def schoolbook_cmp(a, b):
    """Independent comparison: pad to a common length, read highest degree first."""
    n = max(len(a), len(b))
    pa = list(a) + [0] * (n - len(a))
    pb = list(b) + [0] * (n - len(b))
    ka, kb = pa[::-1], pb[::-1]
    return (ka > kb) - (ka < kb)


@pytest.mark.parametrize("n, coeffs", [(0, ()), (1, (1,)), (7, (7,))])
def test_from_nat(n, coeffs):
    assert o.from_nat(n).coeffs == coeffs


def test_omega_and_square():
    assert W.coeffs == (0, 1)
    assert o.mul_omega(W).coeffs == (0, 0, 1)


def test_add_fixtures():
    two_w = o.mul_nat(W, 2)
    assert o.add(o.ZERO, two_w) == two_w
    assert o.add(two_w, o.from_nat(1)).coeffs == (1, 2)
    n = 3
    assert o.add(o.mul_nat(two_w, n), o.from_nat(n - 1)).coeffs == (2, 6)


def test_mul_fixtures():
    x = o.from_coeffs([3, 0, 2])
    assert o.mul_nat(x, 1) == x
    assert o.mul_nat(x, 0) == o.ZERO
    assert o.mul_nat(o.mul_nat(W, 2), 3).coeffs == (0, 6)
    assert o.mul_omega(o.ZERO) == o.ZERO
    assert o.mul_omega(o.from_nat(2)) == o.mul_nat(W, 2)
    assert o.mul_omega(o.from_coeffs([1, 1])).coeffs == (0, 1, 1)


def test_cmp_fixtures():
    x = o.from_coeffs([4, 1])
    assert o.cmp(x, x) is Ordering.EQUAL
    assert o.cmp(W, o.from_nat(10**6)) is Ordering.GREATER
    c = o.mul_nat(W, 2)
    lhs = o.add(o.mul_nat(c, 5), o.from_nat(4))
    rhs = o.mul_omega(o.add(c, o.from_nat(1)))
    assert lhs.coeffs == (4, 10) and rhs.coeffs == (0, 1, 2)
    assert o.cmp(lhs, rhs) is Ordering.LESS


def test_normalization():
    assert o.from_coeffs([1, 0, 0]).coeffs == (1,)
    assert o.from_coeffs([0, 0]) == o.ZERO
    with pytest.raises(ValueError):
        o.from_coeffs([1, -1])


@pytest.mark.parametrize("text, coeffs", [
    ("0", ()), ("5", (5,)), ("1*w", (0, 1)), ("2*w", (0, 2)),
    ("3*w^2 + 1", (1, 0, 3)), ("1*w^3 + 2*w + 7", (7, 2, 0, 1)),
])
def test_render_parse(text, coeffs):
    p = o.parse(text)
    assert p.coeffs == coeffs
    assert str(p) == text


def test_parse_accepts_bare_omega():
    assert o.parse("w") == W
    assert o.parse("w^2") == o.mul_omega(W)


@given(polys)
def test_render_roundtrip(a):
    assert o.parse(str(a)) == a


@given(coeff_lists, coeff_lists)
def test_cmp_matches_schoolbook(a, b):
    expected = {-1: Ordering.LESS, 0: Ordering.EQUAL, 1: Ordering.GREATER}[schoolbook_cmp(a, b)]
    assert o.cmp(o.from_coeffs(a), o.from_coeffs(b)) is expected


@given(coeff_lists, coeff_lists)
def test_add_is_coefficientwise(a, b):
    n = max(len(a), len(b))
    summed = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    assert o.add(o.from_coeffs(a), o.from_coeffs(b)) == o.from_coeffs(summed)


@given(polys, polys, polys)
def test_add_commutative_associative(a, b, c):
    assert o.add(a, b) == o.add(b, a)
    assert o.add(o.add(a, b), c) == o.add(a, o.add(b, c))


@given(polys)
def test_mul_omega_increases_nonzero(a):
    if not a.is_zero():
        assert o.cmp(o.mul_omega(a), a) is Ordering.GREATER


@given(polys, polys, st.integers(1, 40))
def test_mul_nat_preserves_order(a, b, n):
    assert o.cmp(o.mul_nat(a, n), o.mul_nat(b, n)) is o.cmp(a, b)


def test_descent_inequality_family():
    rng = random.Random(11)
    one = o.from_nat(1)
    for _ in range(200):
        c = o.from_coeffs([rng.randint(0, 9) for _ in range(rng.randint(0, 4))])
        for n in range(51):
            lhs = o.add(o.mul_nat(c, n), o.from_nat(max(n - 1, 0)))
            assert o.cmp(lhs, o.mul_omega(o.add(c, one))) is Ordering.LESS


def test_degree_dominance_exhaustive_small():
    # every degree d+1 polynomial beats every polynomial of degree <= d
    for d in range(3):
        tops = [o.from_coeffs([0] * (d + 1) + [k]) for k in (1, 2, 20)]
        for lead in range(1, 21):
            low = o.from_coeffs([20] * d + [lead])
            for t in tops:
                assert o.cmp(t, low) is Ordering.GREATER


@given(st.integers(0, 2**70))
def test_pack_roundtrip_and_order(n):
    a = o.from_coeffs([n % 1000, n % 7, n % 3])
    assert o.unpack(o.pack(a)) == a
    assert (o.pack(a) < o.pack(o.add(a, o.from_nat(1))))


@given(polys, polys)
def test_pack_is_additive_and_monotone(a, b):
    assert o.pack(o.add(a, b)) == o.pack(a) + o.pack(b)
    assert (o.pack(a) < o.pack(b)) == (o.cmp(a, b) is Ordering.LESS)


def test_pack_rejects_huge_coefficients():
    with pytest.raises(OverflowError):
        o.pack(o.from_nat(2**64))
