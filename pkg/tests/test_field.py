import numpy as np
import pytest

from cqunits import make_field, q_decompose
from cqunits.errors import (MathDomainError, NotPrime, QDoesNotDivide,
                            ReducibleModulus, ZeroInverse)
from cqunits.field import _is_irreducible


def brute_order(a, one):
    # independent oracle: direct powering
    k, acc = 1, a
    while acc != one:
        acc = acc * a
        k += 1
        assert k <= 10 ** 7
    return k


def test_make_field_7(f7):
    assert f7.zeta.code == 3
    assert f7.order == 6
    assert brute_order(f7.zeta, f7.one()) == 6


def test_make_field_11(f11):
    # 2 is the least primitive root mod 11
    assert f11.zeta.code == 2
    assert brute_order(f11.zeta, f11.one()) == 10


def test_reducible_modulus_rejected():
    # x^2 - 1 has roots mod 7
    with pytest.raises(ReducibleModulus):
        make_field(7, 2, [6, 0, 1])


def test_make_field_rejects():
    with pytest.raises(NotPrime):
        make_field(6)
    with pytest.raises(NotPrime):
        make_field(2)
    with pytest.raises(MathDomainError):
        make_field(7, 0)
    with pytest.raises(ReducibleModulus):
        make_field(7, 2, [1, 1])  # not degree 2


def test_field_ops_examples(f7, f11):
    three = f7.elem(3)
    assert three.inverse() == f7.elem(5)  # 3*5 = 15 = 1 mod 7
    assert f11.elem(2).order() == 10
    assert three ** 6 == f7.one()
    with pytest.raises(ZeroInverse):
        f7.zero().inverse()


def test_mixed_field_operands(f7, f11):
    from cqunits.errors import CtxMismatch
    with pytest.raises(CtxMismatch):
        f7.elem(1) + f11.elem(1)


def test_q_decompose_examples(f7, f19, f31):
    q = q_decompose(f7, 3)
    assert (q.s, q.m) == (2, 1)
    assert q.omega.code == 2 and f7.elem(2) ** 3 == f7.one()
    q19 = q_decompose(f19, 3)
    assert (q19.s, q19.m) == (2, 2)
    q31 = q_decompose(f31, 5)
    assert (q31.s, q31.m) == (6, 1)
    assert q31.eta.code == 26 and q31.eta.order() == 6


def test_q_decompose_rejects(f7):
    with pytest.raises(QDoesNotDivide):
        q_decompose(f7, 5)
    with pytest.raises(QDoesNotDivide):
        q_decompose(f7, 2)


def test_qdecomp_invariants(f7, f11, f13, f19, f31):
    for fld, q in ((f7, 3), (f11, 5), (f13, 3), (f19, 3), (f31, 5)):
        d = q_decompose(fld, q)
        assert fld.order == d.s * q ** d.m
        assert d.s % q != 0
        assert d.omega ** q == fld.one() and d.omega != fld.one()
        assert d.eta ** d.s == fld.one()
        if d.s > 1:
            assert d.eta.order() == d.s


def test_zeta_order_is_full(f7, f31, f49):
    for fld in (f7, f31, f49):
        assert fld.zeta.order() == fld.order
        # zeta^d != 1 for every proper divisor d
        import sympy
        for d in sympy.divisors(fld.order)[:-1]:
            assert fld.zeta ** d != fld.one()


def test_field_axioms_random(f7, f31, f49, rng):
    for fld in (f7, f31, f49):
        codes = rng.integers(0, fld.size, (1000, 3))
        for a_, b_, c_ in codes:
            a, b, c = fld.from_code(a_), fld.from_code(b_), fld.from_code(c_)
            assert (a + b) + c == a + (b + c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            if a.code:
                assert a * a.inverse() == fld.one()


def test_extension_field_basics(f49):
    assert f49.size == 49
    assert _is_irreducible(list(f49.modulus), 7)
    z = f49.zeta
    assert z.order() == 48
    # Frobenius: (a + b)^7 = a^7 + b^7
    a, b = f49.from_code(13), f49.from_code(38)
    assert (a + b) ** 7 == a ** 7 + b ** 7


def test_vectorized_ops_match_scalar(f7, f49, rng):
    for fld in (f7, f49):
        a = rng.integers(0, fld.size, 200)
        b = rng.integers(0, fld.size, 200)
        va = fld.vadd(a, b)
        vm = fld.vmul(a, b)
        for i in range(200):
            assert va[i] == fld.add(int(a[i]), int(b[i]))
            assert vm[i] == fld.mul(int(a[i]), int(b[i]))


def test_irreducibility_high_degree():
    # full test path (degree > 3)
    f = make_field(3, 5)
    assert f.size == 243
    assert f.zeta.order() == 242
