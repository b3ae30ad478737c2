import math
import random

import pytest

from singerlat.arith import (
    Field, ZMod, make_field, prime_factors, prime_power, is_prime, zmod_units,
)
from singerlat.errors import CapExceeded, InvalidInput


# independent polynomial oracle: dense lists over GF(p), naive arithmetic

def poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def oracle_reducible(f, p):
    """f reducible iff it equals a product of two smaller monic polys."""
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for n in range(p ** d):
            g = [(n // p ** i) % p for i in range(d)] + [1]
            for m in range(p ** (deg - d)):
                h = [(m // p ** i) % p for i in range(deg - d)] + [1]
                if poly_mul(g, h, p) == list(f):
                    return True
    return False


def oracle_min_irreducible(p, k):
    for n in range(p ** k):
        f = tuple((n // p ** i) % p for i in range(k)) + (1,)
        if not oracle_reducible(f, p):
            return f
    raise AssertionError


@pytest.mark.parametrize("p,k", [(2, 3), (3, 3), (2, 2), (3, 2), (5, 3), (2, 6)])
def test_modulus_is_minimal_irreducible(p, k):
    assert make_field(p, k).modulus_poly == oracle_min_irreducible(p, k)


def test_gf8_reduction_rule():
    # x^3 + x + 1, so omega^3 = omega + 1
    f = make_field(2, 3)
    assert f.modulus_poly == (1, 1, 0, 1)
    w = f.omega
    assert (w ** 3).coeffs == (w + f.element((1, 0, 0))).coeffs


@pytest.mark.parametrize("p,k", [(2, 1), (2, 3), (3, 1), (3, 2), (2, 6),
                                 (5, 1), (5, 3), (7, 3), (2, 9), (3, 6)])
def test_primitive_witness_order_by_exhaustive_walk(p, k):
    f = make_field(p, k)
    acc = f.one
    seen = 0
    while True:
        acc = f.mul(acc, f.omega_coeffs)
        seen += 1
        if acc == f.one:
            break
        assert seen < f.order
    assert seen == f.order - 1


def test_field_laws_spot_checked():
    rng = random.Random(0)
    for p, k in [(2, 3), (3, 2), (5, 1), (3, 3)]:
        f = make_field(p, k)
        elems = list(f.iter_elements())
        for _ in range(200):
            a, b, c = (rng.choice(elems) for _ in range(3))
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            assert f.mul(a, b) == f.mul(b, a)
            assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))


def test_inverses_everywhere_in_small_fields():
    for p, k in [(2, 3), (3, 2), (5, 1)]:
        f = make_field(p, k)
        for a in f.iter_elements():
            if a == f.zero:
                with pytest.raises(InvalidInput):
                    f.inv(a)
            else:
                assert f.mul(a, f.inv(a)) == f.one


def test_element_index_round_trip():
    f = make_field(3, 2)
    elems = list(f.iter_elements())
    assert len(elems) == 9
    assert elems == sorted(elems)  # canonical order is lexicographic
    for i, e in enumerate(elems):
        assert f.index(e) == i
        assert f.element_by_index(i) == e


def test_make_field_rejects_bad_parameters():
    with pytest.raises(InvalidInput):
        make_field(4, 2)
    with pytest.raises(InvalidInput):
        make_field(2, 0)
    with pytest.raises(InvalidInput):
        make_field(2, 10)
    with pytest.raises(CapExceeded):
        make_field(3, 7)
    with pytest.raises(CapExceeded):
        make_field(11, 3)


def test_zmod_units_examples():
    assert zmod_units(7) == [1, 2, 3, 4, 5, 6]
    assert zmod_units(21) == [1, 2, 4, 5, 8, 10, 11, 13, 16, 17, 19, 20]
    assert all(math.gcd(a, 91) == 1 for a in zmod_units(91))


def test_zmod_ring_ops():
    a = ZMod(7, 10)
    assert a.value == 3
    b = ZMod(7, 5)
    assert (a + b).value == 1
    assert (a - b).value == 5
    assert (a * b).value == 1
    assert (-a).value == 4
    assert (a ** 6).value == 1
    assert (b.inverse() * b).value == 1
    with pytest.raises(InvalidInput):
        ZMod(6, 2).inverse()
    with pytest.raises(InvalidInput):
        a + ZMod(11, 1)


def test_prime_power_decomposition():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    assert prime_power(6) is None
    assert prime_power(1) is None
    assert prime_factors(728) == [2, 7, 13]
    assert is_prime(997) and not is_prime(1)
