"""Exact arithmetic in finite-field towers F_p <= F_q <= F_{q^n}.

A field object owns the arithmetic; elements are plain immutable data:
integers in [0, p) for a prime field, and little-endian tuples of base-field
elements (constant coordinate first) for an extension.  Plain data keeps
equality, hashing and serialization trivial and makes values safe to share
across workers.

Every field enumerates its elements in a fixed lexicographic order:
coefficient vectors compare from the constant coordinate upward, each
coordinate by its canonical integer encoding.  ``index``/``from_index``
expose that order as a bijection with ``range(order)``, so the encoding of
an element *is* its position in the enumeration.
"""

from __future__ import annotations

import itertools
import os

from .errors import BudgetExceeded, VerificationError

ELEMENT_BUDGET_DEFAULT = 2**20
POLY_BUDGET_DEFAULT = 2**16

BUDGET_ENV_VAR = "NORMBASE_BUDGET"


def resolve_budget(budget, default):
    """Explicit argument wins, then the NORMBASE_BUDGET variable, then default."""
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env:
        return int(env)
    return default


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The prime field F_p with elements represented as integers in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self.degree = 1
        self.base = None
        self.prime_dim = 1
        self.zero = 0
        self.one = 1

    def validate(self, a) -> None:
        if not isinstance(a, int) or not 0 <= a < self.p:
            raise ValueError(f"{a!r} is not a canonical element of {self}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def elements(self, budget=None):
        return iter(range(self.p))

    def index(self, a) -> int:
        return a

    def from_index(self, i: int):
        if not 0 <= i < self.p:
            raise ValueError(f"index {i} out of range for {self}")
        return i

    def prime_coords(self, a):
        return (a,)

    def from_prime_coords(self, coords):
        return coords[0] % self.p

    def random(self, rng):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


# ---------------------------------------------------------------------------
# Raw polynomial kernel over an arbitrary field object.
#
# A polynomial is a little-endian tuple of field elements with no trailing
# zeros (the zero polynomial is the empty tuple).  The public Poly class in
# polyring wraps these same tuples; extension fields use them directly for
# modular reduction, inversion and modulus validation, which keeps this
# module free of import cycles.
# ---------------------------------------------------------------------------


def ptrim(F, c):
    c = tuple(c)
    end = len(c)
    while end > 0 and c[end - 1] == F.zero:
        end -= 1
    return c[:end]


def pdeg(c) -> int:
    """Degree as an int, -1 for the zero polynomial (kernel-internal only)."""
    return len(c) - 1


def padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = F.add(out[i], x)
    return ptrim(F, out)


def psub(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.sub(x, y))
    return ptrim(F, out)


def pneg(F, a):
    return tuple(F.neg(x) for x in a)


def pmul(F, a, b):
    if not a or not b:
        return ()
    if isinstance(F, PrimeField):
        # Hot path: integer convolution with one reduction per coefficient.
        p = F.p
        la, lb = len(a), len(b)
        out = []
        for k in range(la + lb - 1):
            s = 0
            for i in range(max(0, k - lb + 1), min(k, la - 1) + 1):
                s += a[i] * b[k - i]
            out.append(s % p)
        return ptrim(F, out)
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == F.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return ptrim(F, out)


def pscale(F, a, s):
    if s == F.zero:
        return ()
    return ptrim(F, tuple(F.mul(x, s) for x in a))


def pmonic(F, a):
    if not a:
        return a
    lead = a[-1]
    if lead == F.one:
        return a
    return pscale(F, a, F.inv(lead))


def pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    if isinstance(F, PrimeField):
        p = F.p
        inv_lead = pow(b[-1], -1, p)
        rem = list(a)
        lb = len(b)
        quo = [0] * (len(a) - lb + 1)
        for shift in range(len(a) - lb, -1, -1):
            coef = rem[shift + lb - 1]
            if coef:
                fac = coef * inv_lead % p
                quo[shift] = fac
                for i in range(lb):
                    rem[shift + i] = (rem[shift + i] - fac * b[i]) % p
        return ptrim(F, quo), ptrim(F, rem)
    inv_lead = F.inv(b[-1])
    rem = list(a)
    quo = [F.zero] * (len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        coef = rem[shift + len(b) - 1]
        if coef == F.zero:
            continue
        fac = F.mul(coef, inv_lead)
        quo[shift] = fac
        for i, y in enumerate(b):
            rem[shift + i] = F.sub(rem[shift + i], F.mul(fac, y))
    return ptrim(F, quo), ptrim(F, rem)


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def pgcd(F, a, b):
    """Monic gcd; the zero polynomial acts as the identity."""
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def ppow_mod(F, base, e: int, mod):
    if e < 0:
        raise ValueError("negative exponent")
    base = pmod(F, base, mod)
    result = (F.one,)
    while e:
        if e & 1:
            result = pmod(F, pmul(F, result, base), mod)
        base = pmod(F, pmul(F, base, base), mod)
        e >>= 1
    return result


def pinv_mod(F, a, mod):
    """Inverse of a modulo mod via the extended Euclidean algorithm."""
    r0, r1 = pmod(F, a, mod), mod
    s0, s1 = (F.one,), ()
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, q, s1))
    if pdeg(r0) != 0:
        raise ZeroDivisionError("element is not invertible")
    return pmod(F, pscale(F, s0, F.inv(r0[0])), mod)


def _prime_factors(n: int):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def pirreducible(F, f) -> bool:
    """Rabin's test: x^(q^d) == x mod f, and for every prime r | d the
    polynomial x^(q^(d/r)) - x is coprime to f."""
    d = pdeg(f)
    if d < 1:
        raise ValueError("irreducibility is undefined for constants")
    if d == 1:
        return True
    f = pmonic(F, f)
    q = F.order
    x = (F.zero, F.one)
    for r in _prime_factors(d):
        h = psub(F, ppow_mod(F, x, q ** (d // r), f), x)
        if pdeg(pgcd(F, h, f)) != 0:
            return False
    return ppow_mod(F, x, q**d, f) == pmod(F, x, f)


def peval(F, coeffs, a):
    """Horner evaluation of a raw coefficient tuple at a field point."""
    acc = F.zero
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, a), c)
    return acc


def first_irreducible(F, degree: int):
    """Coefficients of the lexicographically smallest monic irreducible of
    the given degree (constant coordinate compared first).

    Candidates with zero constant term are divisible by x and are skipped
    wholesale (they fill the entire first stretch of the lexicographic
    order); over small fields a linear-root screen runs before Rabin."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if degree == 1:
        return (F.zero, F.one)
    screen = (
        [F.from_index(i) for i in range(F.order)] if F.order <= 256 else None
    )
    head = range(1, F.order)
    rest = [range(F.order)] * (degree - 1)
    for tail in itertools.product(head, *rest):
        cand = tuple(F.from_index(i) for i in tail) + (F.one,)
        if screen is not None and any(peval(F, cand, a) == F.zero for a in screen):
            continue
        if pirreducible(F, cand):
            return cand
    raise AssertionError("unreachable: an irreducible of every degree exists")


class ExtensionField:
    """F_{Q^n} built as base[x]/(modulus); elements are length-n tuples of
    base-field elements, constant coordinate first."""

    def __init__(self, base, modulus):
        modulus = ptrim(base, tuple(modulus))
        degree = pdeg(modulus)
        if degree < 1:
            raise ValueError("modulus must have degree >= 1")
        if modulus[-1] != base.one:
            raise ValueError("modulus must be monic")
        if not pirreducible(base, modulus):
            raise ValueError("modulus is reducible over the base field")
        self.base = base
        self.modulus = modulus
        self.degree = degree
        self.char = base.char
        self.order = base.order**degree
        self.prime_dim = degree * base.prime_dim
        self.zero = (base.zero,) * degree
        self.one = self._pad((base.one,))
        self.gen = self._pad(pmod(base, (base.zero, base.one), modulus))

    def _pad(self, coeffs):
        return tuple(coeffs) + (self.base.zero,) * (self.degree - len(coeffs))

    def validate(self, a) -> None:
        if not isinstance(a, tuple) or len(a) != self.degree:
            raise ValueError(
                f"{a!r} is not a length-{self.degree} coefficient vector of {self}"
            )
        for c in a:
            self.base.validate(c)

    def embed(self, c):
        """Embed a base-field element as a constant."""
        return self._pad((c,) if c != self.base.zero else ())

    def to_base(self, a):
        """Inverse of embed; fails if any higher coordinate is nonzero."""
        if any(c != self.base.zero for c in a[1:]):
            raise ValueError(f"{a!r} does not lie in the base field")
        return a[0]

    def add(self, a, b):
        base = self.base
        return tuple(base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        base = self.base
        return tuple(base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        base = self.base
        return tuple(base.neg(x) for x in a)

    def mul(self, a, b):
        prod = pmul(self.base, ptrim(self.base, a), ptrim(self.base, b))
        return self._pad(pmod(self.base, prod, self.modulus))

    def inv(self, a):
        t = ptrim(self.base, a)
        if not t:
            raise ZeroDivisionError("inverse of zero")
        return self._pad(pinv_mod(self.base, t, self.modulus))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        a = tuple(a)
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frobenius(self, a):
        """a raised to the order of the base field."""
        self.validate(a)
        return self.pow(a, self.base.order)

    def trace(self, a):
        """a + a^q + ... + a^(q^(n-1)), returned as a base-field element."""
        self.validate(a)
        acc = a
        cur = a
        for _ in range(self.degree - 1):
            cur = self.pow(cur, self.base.order)
            acc = self.add(acc, cur)
        if any(c != self.base.zero for c in acc[1:]):
            raise VerificationError(f"trace of {a!r} left the base field: {acc!r}")
        return acc[0]

    def elements(self, budget=None):
        """Every element exactly once, in lexicographic coefficient order."""
        cap = resolve_budget(budget, ELEMENT_BUDGET_DEFAULT)
        if self.order > cap:
            raise BudgetExceeded(
                f"field has {self.order} elements, budget is {cap}"
            )
        base_elems = [self.base.from_index(i) for i in range(self.base.order)]
        return itertools.product(base_elems, repeat=self.degree)

    def index(self, a) -> int:
        i = 0
        for c in a:
            i = i * self.base.order + self.base.index(c)
        return i

    def from_index(self, i: int):
        if not 0 <= i < self.order:
            raise ValueError(f"index {i} out of range for {self}")
        digits = []
        for _ in range(self.degree):
            i, d = divmod(i, self.base.order)
            digits.append(self.base.from_index(d))
        return tuple(reversed(digits))

    def prime_coords(self, a):
        out = []
        for c in a:
            out.extend(self.base.prime_coords(c))
        return tuple(out)

    def from_prime_coords(self, coords):
        k = self.base.prime_dim
        return tuple(
            self.base.from_prime_coords(tuple(coords[i * k : (i + 1) * k]))
            for i in range(self.degree)
        )

    def random(self, rng):
        return tuple(self.base.random(rng) for _ in range(self.degree))

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtensionField", self.base, self.modulus))

    def __repr__(self):
        return f"GF({self.base.order}^{self.degree})"


def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


def base_field(p: int, k: int = 1, modulus=None):
    """F_{p^k}; with k > 1 the modulus defaults to the lexicographically
    smallest monic irreducible of degree k over F_p."""
    F = PrimeField(p)
    if k == 1:
        if modulus is not None:
            raise ValueError("a degree-1 base field takes no modulus")
        return F
    return extension(F, k, modulus)


def extension(field, n: int, modulus=None) -> ExtensionField:
    """Degree-n extension of `field`, with a deterministic default modulus."""
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if modulus is None:
        coeffs = first_irreducible(field, n)
    else:
        coeffs = tuple(getattr(modulus, "coeffs", modulus))
        if pdeg(ptrim(field, coeffs)) != n:
            raise ValueError(f"modulus degree is not the requested {n}")
    return ExtensionField(field, coeffs)


def field_of_order(q: int):
    """F_q for a prime power q, built from deterministic moduli."""
    from . import counting

    p, k = counting.prime_power_split(q)
    return base_field(p, k)
