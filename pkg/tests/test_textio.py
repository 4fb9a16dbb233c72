"""Round trips for the comma/slash text formats."""

import pytest

from normbase import gf, textio
from normbase.polyring import Poly


def test_prime_field_poly_roundtrip(f2, f3):
    f = textio.parse_poly("1,0,1", f2)
    assert f.coeffs == (1, 0, 1)  # 1 + x^2
    assert textio.format_poly(f) == "1,0,1"
    g = textio.parse_poly("2,1,0,1", f3)
    assert textio.format_poly(g) == "2,1,0,1"
    assert textio.format_poly(Poly.zero(f2)) == "0"


def test_integers_are_canonicalized(f3):
    assert textio.parse_poly("-1,4", f3).coeffs == (2, 1)


def test_trailing_zero_normalization(f2):
    assert textio.parse_poly("1,1,0,0", f2).coeffs == (1, 1)


def test_element_roundtrip_prime_base(f2):
    F8 = gf.extension(f2, 3)
    a = textio.parse_element("0,1,1", F8)
    assert a == (0, 1, 1)
    assert textio.format_element(a, F8) == "0,1,1"
    # short vectors pad with zeros
    assert textio.parse_element("1", F8) == (1, 0, 0)
    with pytest.raises(ValueError):
        textio.parse_element("1,0,0,0", F8)


def test_prime_field_element(f3):
    assert textio.parse_element("5", f3) == 2
    assert textio.format_element(2, f3) == "2"


def test_slash_nested_coefficients(f4):
    # polynomial over F_4: each coefficient is a /-joined vector over F_2
    f = textio.parse_poly("0/1,1/0,1/1", f4)
    assert f.coeffs == ((0, 1), (1, 0), (1, 1))
    assert textio.format_poly(f) == "0/1,1/0,1/1"
    # element of F_{4^2}
    F16 = gf.extension(f4, 2)
    a = textio.parse_element("0/1,1/0", F16)
    assert a == ((0, 1), (1, 0))
    assert textio.format_element(a, F16) == "0/1,1/0"
    with pytest.raises(ValueError):
        textio.parse_coeff("1/0/1", f4)


def test_parse_errors(f2):
    with pytest.raises(ValueError):
        textio.parse_poly("1,garbage", f2)
