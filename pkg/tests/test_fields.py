import random
from fractions import Fraction

import pytest

from hopfkit.fields import FieldSpec, cyclotomic_polynomial, make_field


QQ = make_field(FieldSpec.rational())
C3 = make_field(FieldSpec.cyclotomic(3))
C9 = make_field(FieldSpec.cyclotomic(9))


def poly_mod_oracle(k, phi):
    """x^k mod phi by plain long division over Q (independent oracle)."""
    num = [Fraction(0)] * k + [Fraction(1)]
    phi = [Fraction(c) for c in phi]
    while len(num) >= len(phi):
        c = num[-1] / phi[-1]
        shift = len(num) - len(phi)
        for i in range(len(phi)):
            num[shift + i] -= c * phi[i]
        while num and num[-1] == 0:
            num.pop()
        if not num:
            break
    num += [Fraction(0)] * (len(phi) - 1 - len(num))
    return tuple(num)


def test_make_field_trivial_cases():
    assert QQ.zero + QQ.one == QQ.one
    z = C3.zeta
    assert z * z + z + C3.one == C3.zero  # Phi_3(zeta) = 0
    with pytest.raises(ValueError):
        make_field(FieldSpec.prime(4))
    with pytest.raises(ValueError):
        make_field(FieldSpec.cyclotomic(0))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == [-1, 1]
    assert cyclotomic_polynomial(3) == [1, 1, 1]
    assert cyclotomic_polynomial(9) == [1, 0, 0, 1, 0, 0, 1]
    assert cyclotomic_polynomial(12) == [1, 0, -1, 0, 1]


def test_zeta_powers_against_division_oracle():
    phi = cyclotomic_polynomial(9)
    z = C9.zeta
    for k in range(1, 19):
        assert (z ** k).rep == poly_mod_oracle(k, phi)
    assert z ** 9 == C9.one
    for k in range(1, 9):
        assert z ** k != C9.one


def test_zeta_has_order_exactly_n():
    for n in (1, 2, 3, 4, 5, 6, 9, 12):
        f = make_field(FieldSpec.cyclotomic(n))
        z = f.zeta
        assert z ** n == f.one
        for k in range(1, n):
            assert z ** k != f.one


def test_simple_arithmetic():
    z = C3.zeta
    assert z * (z * z) == C3.one  # zeta^3 = 1
    assert QQ.from_fraction(2, 3).inv() == QQ.from_fraction(3, 2)
    gf7 = make_field(FieldSpec.prime(7))
    assert gf7.from_int(3) * gf7.from_int(5) == gf7.from_int(1)
    assert gf7.from_int(3).inv() == gf7.from_int(5)


def test_field_axioms_on_random_triples():
    rng = random.Random(0)
    for field in (QQ, make_field(FieldSpec.prime(11)), C3, C9):
        for _ in range(40):
            a = field.random_scalar(rng)
            b = field.random_scalar(rng)
            c = field.random_scalar(rng)
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a + b == b + a
            assert a * (b + c) == a * b + a * c
            if not a.is_zero():
                assert a * a.inv() == field.one


def test_canonical_form_unique():
    # same value reached along different routes compares equal (and hashes equal)
    z = C9.zeta
    lhs = (z ** 6) + (z ** 3)  # = -1 since Phi_9 = z^6 + z^3 + 1
    assert lhs == C9.from_int(-1)
    assert hash(lhs) == hash(C9.from_int(-1))
    a = QQ.from_fraction(2, 4)
    assert a == QQ.from_fraction(1, 2)


def test_errors():
    with pytest.raises(ZeroDivisionError):
        QQ.zero.inv()
    with pytest.raises(ValueError):
        _ = QQ.one + C3.one
    with pytest.raises(ZeroDivisionError):
        C3.zero.inv()


def test_literal_roundtrip():
    samples = {
        QQ: ["0", "3", "-1/2", "7/3"],
        C3: ["0", "z", "-z", "z + 1", "1/2*z - 3"],
        C9: ["z^5", "1/2*z^2 - z + 3", "-2*z^4 + z^3 - 1/7"],
    }
    for field, texts in samples.items():
        for text in texts:
            s = field.parse(text)
            assert field.parse(field.format(s)) == s


def test_literal_parser_values():
    s = C3.parse("1/2*z^2 - z + 3")
    z = C3.zeta
    expected = QQ_half(C3) * z * z - z + C3.from_int(3)
    assert s == expected
    assert C9.parse("z^-1") == C9.zeta.inv()
    with pytest.raises(ValueError):
        C3.parse("")
    with pytest.raises(ValueError):
        C3.parse("2 ** z")
    with pytest.raises(ValueError):
        QQ.parse("z + 1")  # no designated root in QQ


def QQ_half(field):
    return field.from_fraction(1, 2)


def test_prime_field_literals():
    gf5 = make_field(FieldSpec.prime(5))
    assert gf5.parse("7") == gf5.from_int(2)
    assert gf5.parse("1/2") == gf5.from_int(3)  # 2 * 3 = 6 = 1 mod 5
