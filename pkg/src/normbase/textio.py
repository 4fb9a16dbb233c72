"""Text formats for field elements and polynomials.

A value over F_p is written as comma-separated integers, little-endian:
"1,0,1" over F_2 is 1 + x^2.  When the coefficient field is itself an
extension F_{p^k}, each coefficient is a slash-joined vector over F_p, so
"0/1,1/0" is a two-coefficient vector whose entries live in F_{p^2}.
Integers are canonicalized modulo p on input; output is always canonical.
"""

from __future__ import annotations

from . import gf
from .polyring import Poly


def parse_coeff(text: str, field):
    """One coefficient in the given field (an int, or a slash vector)."""
    text = text.strip()
    if isinstance(field, gf.PrimeField):
        try:
            value = int(text)
        except ValueError:
            raise ValueError(f"bad field integer {text!r}") from None
        return value % field.p
    parts = text.split("/")
    if len(parts) > field.degree:
        raise ValueError(
            f"coefficient {text!r} has {len(parts)} entries, field degree is {field.degree}"
        )
    coords = [parse_coeff(part, field.base) for part in parts]
    coords += [field.base.zero] * (field.degree - len(coords))
    return tuple(coords)


def format_coeff(c) -> str:
    if isinstance(c, int):
        return str(c)
    return "/".join(format_coeff(x) for x in c)


def parse_vector(text: str, field) -> list:
    return [parse_coeff(part, field) for part in text.split(",")]


def parse_element(text: str, field):
    """An element of `field` given as its coefficient vector over the base.

    Prime fields take a single integer; an extension of degree d takes up to
    d comma-separated coefficients (missing high coefficients are zero)."""
    if isinstance(field, gf.PrimeField):
        return parse_coeff(text, field)
    coeffs = parse_vector(text, field.base)
    if len(coeffs) > field.degree:
        raise ValueError(
            f"element has {len(coeffs)} coefficients, field degree is {field.degree}"
        )
    coeffs += [field.base.zero] * (field.degree - len(coeffs))
    return tuple(coeffs)


def format_element(a, field) -> str:
    if isinstance(field, gf.PrimeField):
        return format_coeff(a)
    return ",".join(format_coeff(c) for c in a)


def parse_poly(text: str, field) -> Poly:
    """A polynomial with coefficients in `field`, little-endian."""
    return Poly.of(field, parse_vector(text, field))


def format_poly(f: Poly) -> str:
    if not f.coeffs:
        return "0"
    return ",".join(format_coeff(c) for c in f.coeffs)
