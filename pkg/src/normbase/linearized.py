"""Linearized-operator algebra through conventional associates.

A q-linearized operator sum c_i x^(q^i) over F_q is stored only as its
associate polynomial sum c_i x^i: composition of operators corresponds to
ordinary multiplication of associates and divisibility transfers the same
way, so the expanded operator (degree q^deg) never needs to be built.
Evaluation uses iterated Frobenius; whole-field root counting goes through
the operators' F_p matrices.
"""

from __future__ import annotations

import dataclasses
import itertools

import numpy as np

from . import _linalg, gf
from .errors import BudgetExceeded
from .polyring import NEG_INF, Factorization, Poly, gcd, x_pow_minus_one


@dataclasses.dataclass(frozen=True)
class QPoly:
    """A linearized operator, held as its associate polynomial."""

    associate: Poly

    @property
    def field(self):
        return self.associate.field

    @property
    def degree(self):
        """Degree of the associate (the operator itself has degree q^this)."""
        return self.associate.degree

    def to_json_obj(self) -> dict:
        from . import textio

        return {"q": self.field.order, "associate": textio.format_poly(self.associate)}

    def __repr__(self):
        return f"QPoly<{self.associate!r}>"


def symbolic_mul(l1: QPoly, l2: QPoly) -> QPoly:
    """Composition of operators == product of associates."""
    if l1.field != l2.field:
        raise ValueError("operators live over different base fields")
    return QPoly(l1.associate * l2.associate)


def symbolic_divides(l1: QPoly, l: QPoly) -> bool:
    """Operator divisibility == ordinary divisibility of associates."""
    if l1.associate.is_zero():
        raise ValueError("division by the zero operator")
    return (l.associate % l1.associate).is_zero()


def evaluate(l: QPoly, a, ext):
    """sum c_i * a^(q^i) by iterated Frobenius; coefficients embed into ext."""
    if ext.base != l.field:
        raise ValueError("operator coefficients do not live in ext's base field")
    ext.validate(a)
    F = l.field
    acc = ext.zero
    cur = a
    for i, c in enumerate(l.associate.coeffs):
        if i:
            cur = ext.frobenius(cur)
        if c != F.zero:
            acc = ext.add(acc, ext.mul(ext.embed(c), cur))
    return acc


_OP_TABLES: dict = {}


def _op_tables(ext):
    tabs = _OP_TABLES.get(ext)
    if tabs is None:
        dim = ext.prime_dim
        frob = _linalg.frobenius_matrix(ext).astype(np.int64)
        tabs = {"fpows": [np.eye(dim, dtype=np.int64), frob], "smats": {}}
        _OP_TABLES[ext] = tabs
    return tabs


def _scalar_matrix(ext, c):
    tabs = _op_tables(ext)
    idx = ext.base.index(c)
    mat = tabs["smats"].get(idx)
    if mat is None:
        emb = ext.embed(c)
        mat = _linalg.linear_map_matrix(lambda a: ext.mul(a, emb), ext).astype(np.int64)
        tabs["smats"][idx] = mat
    return mat


def operator_matrix(l: QPoly, ext):
    """The operator as an F_p matrix acting on ext's prime coordinates,
    assembled as sum_i (multiply-by-c_i) . frobenius^i."""
    if ext.base != l.field:
        raise ValueError("operator coefficients do not live in ext's base field")
    p = ext.char
    dim = ext.prime_dim
    tabs = _op_tables(ext)
    fpows = tabs["fpows"]
    coeffs = l.associate.coeffs
    while len(fpows) < len(coeffs):
        fpows.append(fpows[-1] @ fpows[1] % p)
    acc = np.zeros((dim, dim), dtype=np.int64)
    F = l.field
    for i, c in enumerate(coeffs):
        if c != F.zero:
            acc += _scalar_matrix(ext, c) @ fpows[i]
    return (acc % p).astype(np.uint8)


@dataclasses.dataclass
class SymbolicFactorization:
    """Pairwise-coprime monic operator parts with multiplicities; the
    associates multiply to the associate of the whole operator."""

    parts: list[tuple[QPoly, int]]

    @classmethod
    def from_factorization(cls, fact: Factorization) -> "SymbolicFactorization":
        return cls([(QPoly(base), mult) for base, mult in fact.parts])

    @property
    def field(self):
        return self.parts[0][0].field

    def associate(self) -> Poly:
        out = Poly.one(self.field)
        for part, mult in self.parts:
            out = out * part.associate**mult
        return out

    def total_degree(self) -> int:
        return sum(int(part.degree) * mult for part, mult in self.parts)

    def to_json_obj(self) -> dict:
        fact = Factorization([(part.associate, mult) for part, mult in self.parts])
        return {"q": self.field.order, "parts": fact.to_json_obj()}

    def validate(self) -> None:
        if not self.parts:
            raise ValueError("empty symbolic factorization")
        field = self.field
        for part, mult in self.parts:
            if mult < 1:
                raise ValueError("multiplicities must be >= 1")
            if part.field != field:
                raise ValueError("parts live over different fields")
            a = part.associate
            if a.degree is NEG_INF or a.degree < 1 or not a.is_monic():
                raise ValueError("part associates must be monic of degree >= 1")
        for (a, _), (b, _) in itertools.combinations(self.parts, 2):
            if gcd(a.associate, b.associate).degree != 0:
                raise ValueError("parts are not pairwise coprime")


def root_count(fact: SymbolicFactorization) -> int:
    """Exact number of roots of the factored operator lying in the kernel of
    no single-part-omitted cofactor:

        q^D * prod over parts of (1 - q^(-n_i))
          == q^(D - sum n_i) * prod over parts of (q^n_i - 1)

    with D the total associate degree.  The second form is how it is
    computed, so only integers ever appear."""
    fact.validate()
    q = fact.field.order
    degrees = [int(part.degree) for part, _ in fact.parts]
    exponent = fact.total_degree() - sum(degrees)
    out = q**exponent
    for d in degrees:
        out *= q**d - 1
    return out


def generalized_phi(l: Poly, fact: Factorization) -> int:
    """Number of polynomials of degree < deg l divisible by no factorization
    base.  Closed form mirrors root_count; fact must actually factor l."""
    fact.validate(expected=l)
    q = l.field.order
    degrees = [int(base.degree) for base, _ in fact.parts]
    out = q ** (int(l.degree) - sum(degrees))
    for d in degrees:
        out *= q**d - 1
    return out


def phi_by_residue_enumeration(l: Poly, fact: Factorization, budget=None) -> int:
    """The same count by walking every residue of degree < deg l and trial
    dividing; the independent slow path for generalized_phi."""
    fact.validate(expected=l)
    F = l.field
    deg = int(l.degree)
    cap = gf.resolve_budget(budget, gf.POLY_BUDGET_DEFAULT)
    if F.order**deg > cap:
        raise BudgetExceeded(f"{F.order}^{deg} residues exceed the budget {cap}")
    bases = [base.coeffs for base, _ in fact.parts]
    elems = [F.from_index(i) for i in range(F.order)]
    count = 0
    for tail in itertools.product(elems, repeat=deg):
        r = gf.ptrim(F, tail)
        if all(gf.pmod(F, r, b) for b in bases):
            count += 1
    return count


def refine(fact: Factorization, part_index: int, g: Poly, h: Poly) -> Factorization:
    """Split one base into coprime monic factors g * h at the same
    multiplicity.  The residue count of generalized_phi strictly decreases
    under any such split; that is asserted by the test suite rather than
    recomputed here."""
    if not 0 <= part_index < len(fact.parts):
        raise ValueError("part index out of range")
    base, mult = fact.parts[part_index]
    for piece in (g, h):
        if piece.degree is NEG_INF or piece.degree < 1:
            raise ValueError("split pieces must have degree >= 1")
        if not piece.is_monic():
            raise ValueError("split pieces must be monic")
    if g * h != base:
        raise ValueError("pieces do not multiply to the chosen base")
    if gcd(g, h).degree != 0:
        raise ValueError("pieces are not coprime")
    parts = list(fact.parts)
    parts[part_index : part_index + 1] = [(g, mult), (h, mult)]
    return Factorization(sorted(parts, key=lambda bm: bm[0].sort_key()), False)


def _survivor_mask(fact: SymbolicFactorization, ext, budget=None):
    fact.validate()
    if ext.base != fact.field:
        raise ValueError("factorization does not live over ext's base field")
    cap = gf.resolve_budget(budget, gf.ELEMENT_BUDGET_DEFAULT)
    if ext.order > cap:
        raise BudgetExceeded(f"field has {ext.order} elements, budget is {cap}")
    full = fact.associate()
    if not (x_pow_minus_one(ext.degree, fact.field) % full).is_zero():
        raise ValueError(
            "the associate must divide x^n - 1 so that every operator root "
            "lies in the degree-n extension"
        )
    p = ext.char
    vecs = _linalg.all_vectors(p, ext.prime_dim)
    in_kernel = ~_linalg.apply_map(vecs, operator_matrix(QPoly(full), ext), p).any(axis=1)
    mask = in_kernel
    for part, _ in fact.parts:
        cofactor = QPoly(full // part.associate)
        alive = _linalg.apply_map(vecs, operator_matrix(cofactor, ext), p).any(axis=1)
        mask = mask & alive
    return vecs, mask


def root_count_by_enumeration(fact: SymbolicFactorization, ext, budget=None) -> int:
    """Count, by direct evaluation over every element of ext, the roots of
    the whole operator killed by no single-part-omitted cofactor.  Must
    agree with root_count; the cofactor for each part removes exactly one
    copy of that part's operator."""
    _, mask = _survivor_mask(fact, ext, budget)
    return int(mask.sum())


def root_survivors(fact: SymbolicFactorization, ext, budget=None) -> list:
    """The actual elements counted by root_count_by_enumeration."""
    vecs, mask = _survivor_mask(fact, ext, budget)
    return [ext.from_prime_coords(tuple(int(x) for x in row)) for row in vecs[mask]]
