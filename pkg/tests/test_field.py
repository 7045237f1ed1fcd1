import itertools

import numpy as np
import pytest

from scatterpoly import (
    DivisionByZero,
    EvenCharacteristicRejected,
    FieldTooLarge,
    NonPrime,
    build_field,
)
from scatterpoly.field import factorize, is_prime, modulus_text

from naive_oracle import naive_mul, naive_pow


def test_f9_deterministic_construction(f9):
    # smallest-encoding irreducible quadratic over F_3 is x^2 + 1
    assert f9.modulus == (1, 0, 1)
    assert modulus_text(f9) == "x^2 + 1"
    # smallest-encoding element of order 8 is x + 1
    assert f9.gamma.coeffs == (1, 1)
    assert f9.element_order(f9.gamma) == 8
    assert f9.order == 8
    assert f9.factorization == ((2, 3),)


def test_prime_field_construction():
    ctx = build_field(3, 1, 1)
    assert ctx.modulus == (0, 1)
    assert ctx.gamma.coeffs == (2,)
    assert ctx.element_order(ctx.gamma) == 2


def test_build_rejections():
    with pytest.raises(NonPrime):
        build_field(4, 1, 2)
    with pytest.raises(FieldTooLarge):
        build_field(3, 1, 30)
    with pytest.raises(EvenCharacteristicRejected):
        build_field(2, 1, 4)
    # the strictness flag admits characteristic 2
    ctx = build_field(2, 1, 4, strict=False)
    assert ctx.size == 16


def test_build_is_reproducible():
    a = build_field(3, 1, 4)
    b = build_field(3, 1, 4)
    assert a.modulus == b.modulus
    assert a.gamma == b.gamma
    assert np.array_equal(a._antilog, b._antilog)


def test_primality_and_factorization():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_prime(n) == (n in primes)
    for n in (2, 8, 80, 242, 3124, 390624, 59048):
        fact = factorize(n)
        prod = 1
        for prime, exp in fact:
            assert is_prime(prime)
            prod *= prime**exp
        assert prod == n


@pytest.mark.parametrize("params", [(3, 1, 2), (3, 1, 3), (3, 1, 4), (3, 1, 5),
                                    (5, 1, 3), (3, 2, 2)])
def test_table_bijection(params):
    ctx = build_field(*params)
    assert ctx.order == ctx.size - 1
    # antilog then log is the identity on exponents
    for k in range(ctx.order):
        e = ctx.element_from_dlog(k)
        assert e.dlog == k
        assert ctx.element_from_encoding(ctx.encode(e)) == e
    # log then antilog is the identity on nonzero encodings
    seen = {ctx.encode(ctx.element_from_dlog(k)) for k in range(ctx.order)}
    assert len(seen) == ctx.order
    assert 0 not in seen


def test_mul_against_polynomial_arithmetic(f9):
    # independent oracle: schoolbook multiplication mod x^2 + 1
    for a_enc in range(9):
        for b_enc in range(9):
            a = f9.element_from_encoding(a_enc)
            b = f9.element_from_encoding(b_enc)
            expected = naive_mul(3, f9.modulus, a.coeffs, b.coeffs)
            assert f9.mul(a, b).coeffs == expected


def test_mul_examples(f9):
    g = f9.gamma
    assert f9.mul(g, g).coeffs == (0, 2)  # (x+1)^2 = 2x
    assert f9.mul(f9.zero(), g).is_zero
    g3 = f9.element_from_dlog(3)
    g5 = f9.element_from_dlog(5)
    assert f9.mul(g3, g5) == f9.one()  # exponents sum to 8


def test_inv(f9):
    two = f9.element_from_coeffs([2])
    assert f9.inv(two) == two
    assert f9.inv(f9.gamma) == f9.element_from_dlog(7)
    with pytest.raises(DivisionByZero):
        f9.inv(f9.zero())
    for k in range(f9.order):
        e = f9.element_from_dlog(k)
        assert f9.mul(e, f9.inv(e)) == f9.one()


def test_frobenius(f9, f81):
    x = f9.element_from_coeffs([0, 1])
    assert f9.frobenius(x, 1).coeffs == (0, 2)  # x^3 = 2x mod x^2+1
    for ctx in (f9, f81):
        for k in range(ctx.order):
            e = ctx.element_from_dlog(k)
            assert ctx.frobenius(e, 0) == e
            assert ctx.frobenius(e, ctx.n) == e
    assert f9.frobenius(f9.zero(), 1).is_zero
    with pytest.raises(ValueError):
        f9.frobenius(x, -1)


def test_frobenius_additive_and_linear(f9, f27, f81):
    # fully exhaustive over all element pairs, zero included
    for ctx in (f9, f27, f81):
        elements = [ctx.element_from_encoding(enc) for enc in range(ctx.size)]
        subfield = [e for e in elements if ctx.in_base_subfield(e)]
        for j in (1, 2):
            for a, b in itertools.product(elements, elements):
                lhs = ctx.frobenius(ctx.add(a, b), j)
                rhs = ctx.add(ctx.frobenius(a, j), ctx.frobenius(b, j))
                assert lhs == rhs
            for lam in subfield:
                for a in elements:
                    assert (ctx.frobenius(ctx.mul(lam, a), j)
                            == ctx.mul(lam, ctx.frobenius(a, j)))


def test_frobenius_matches_naive_powers(f81):
    for k in range(0, f81.order, 13):
        e = f81.element_from_dlog(k)
        expected = naive_pow(3, list(f81.modulus), e.coeffs, 3)
        assert f81.frobenius(e, 1).coeffs == expected


def test_element_order(f9, f81):
    assert f9.element_order(f9.gamma) == 8
    assert f9.element_order(f9.one()) == 1
    assert f9.element_order(f9.element_from_coeffs([2])) == 2
    with pytest.raises(DivisionByZero):
        f9.element_order(f9.zero())
    # independent oracle: repeated multiplication
    for k in range(f81.order):
        e = f81.element_from_dlog(k)
        acc = e
        order = 1
        while acc != f81.one():
            acc = f81.mul(acc, e)
            order += 1
        assert f81.element_order(e) == order


def test_relative_norm(f9, f243):
    assert f9.relative_norm(f9.gamma).coeffs == (2, 0)  # gamma^4 = 2
    assert f9.relative_norm(f9.one()) == f9.one()
    # (q^n-1)/(q-1) = 121 is odd, so the norm of -1 stays -1
    assert f243.relative_norm(f243.minus_one()) == f243.minus_one()
    assert f243.relative_norm(f243.zero()).is_zero


def test_norm_multiplicative_and_surjective(f81, f243):
    for ctx in (f81, f243):
        for a_dlog in range(0, ctx.order, 7):
            for b_dlog in range(0, ctx.order, 11):
                a = ctx.element_from_dlog(a_dlog)
                b = ctx.element_from_dlog(b_dlog)
                assert (ctx.relative_norm(ctx.mul(a, b))
                        == ctx.mul(ctx.relative_norm(a), ctx.relative_norm(b)))
        image = {ctx.relative_norm(ctx.element_from_dlog(k))
                 for k in range(ctx.order)}
        subfield_units = {ctx.element_from_dlog(k) for k in range(ctx.order)
                          if ctx.in_base_subfield(ctx.element_from_dlog(k))}
        assert image == subfield_units


def test_in_base_subfield(f9):
    assert f9.in_base_subfield(f9.element_from_coeffs([2]))
    assert not f9.in_base_subfield(f9.element_from_coeffs([0, 1]))
    assert f9.in_base_subfield(f9.zero())
    for k in range(f9.order):
        e = f9.element_from_dlog(k)
        assert f9.in_base_subfield(e) == (f9.frobenius(e, 1) == e)


@pytest.mark.parametrize("params", [(3, 1, 2), (3, 1, 3), (3, 1, 4), (5, 1, 3)])
def test_subfield_characterization(params):
    ctx = build_field(*params)
    e = ctx.subfield_index
    for a in range(ctx.order):
        assert ctx.in_base_subfield(ctx.element_from_dlog(a)) == (a % e == 0)


def test_proper_tower(f81_tower):
    # q = 9, n = 2: the base subfield has 9 elements, 8 of them units
    assert f81_tower.q == 9
    assert f81_tower.subfield_index == 10
    units_in_base = sum(
        1 for k in range(f81_tower.order)
        if f81_tower.in_base_subfield(f81_tower.element_from_dlog(k)))
    assert units_in_base == 8
    # norm lands in F_9
    for k in range(0, f81_tower.order, 3):
        nrm = f81_tower.relative_norm(f81_tower.element_from_dlog(k))
        assert f81_tower.in_base_subfield(nrm)


def test_add_sub_neg(f9):
    for a_enc in range(9):
        for b_enc in range(9):
            a = f9.element_from_encoding(a_enc)
            b = f9.element_from_encoding(b_enc)
            s = f9.add(a, b)
            assert f9.sub(s, b) == a
    assert f9.add(f9.one(), f9.neg(f9.one())).is_zero


def test_degenerate_binary_field():
    ctx = build_field(2, 1, 1, strict=False)
    assert ctx.size == 2
    assert ctx.gamma == ctx.one()
    assert ctx.element_order(ctx.one()) == 1
    assert ctx.in_base_subfield(ctx.one())
