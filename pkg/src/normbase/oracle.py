"""Brute-force ground truth for the closed-form counts.

Everything here counts by looking at actual elements and actual polynomials.
The per-element normality test runs two independent criteria and insists
they agree: the definitional one (the conjugates' coordinate matrix has full
rank over F_q) and the gcd one (x^n - 1 is coprime to the polynomial whose
coefficients are the conjugates).  Whole-field and whole-degree scans use
the same predicates expressed as batched F_p linear algebra so that budgets
up to 2^20 elements stay practical; the batched paths are cross-checked
against the per-element ones in the test suite.
"""

from __future__ import annotations

import dataclasses
import functools

import numpy as np

from . import _linalg, counting, gf, polyring
from .errors import BudgetExceeded, VerificationError
from .polyring import Poly

PURE_SCAN_LIMIT = 2**9
_RANK_CHUNK = 2**15


def conjugate_matrix(a, ext) -> list:
    """Rows i = 0..n-1 are the coordinate vectors of a^(q^i)."""
    ext.validate(a)
    rows = [a]
    cur = a
    for _ in range(ext.degree - 1):
        cur = ext.frobenius(cur)
        rows.append(cur)
    return rows


def rank_over_field(rows, field) -> int:
    """Gaussian elimination over an arbitrary field, first-nonzero pivots."""
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for c in range(ncols):
        piv = next(
            (i for i in range(rank, len(work)) if work[i][c] != field.zero), None
        )
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = field.inv(work[rank][c])
        work[rank] = [field.mul(x, inv) for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][c] != field.zero:
                fac = work[i][c]
                work[i] = [
                    field.sub(x, field.mul(fac, y))
                    for x, y in zip(work[i], work[rank])
                ]
        rank += 1
    return rank


def is_normal(a, ext) -> bool:
    """Whether the conjugates of a form a basis of ext over its base field.

    Runs both the rank criterion and the gcd criterion and raises if they
    ever disagree, so a bug in either cannot pass silently."""
    rows = conjugate_matrix(a, ext)
    by_rank = rank_over_field(rows, ext.base) == ext.degree
    conj_poly = Poly(ext, tuple(rows))
    by_gcd = (
        polyring.gcd(polyring.x_pow_minus_one(ext.degree, ext), conj_poly).degree == 0
    )
    if by_rank != by_gcd:
        raise VerificationError(
            f"rank and gcd normality criteria disagree at {a!r} in {ext!r}"
        )
    return by_rank


def is_n_polynomial(f: Poly) -> bool:
    """Monic irreducible whose roots form a basis; normality is tested on
    the canonical root x mod f, which suffices because the conjugates of a
    normal element are all normal."""
    if f.degree is polyring.NEG_INF or f.degree < 1:
        raise ValueError("need degree >= 1")
    if not f.is_monic():
        raise ValueError("N-polynomial candidates must be monic")
    n = int(f.degree)
    if n > 1 and not polyring.is_irreducible(f):
        return False
    ext = gf.ExtensionField(f.field, f.coeffs)
    return is_normal(ext.gen, ext)


def degree_of(a, ext) -> int:
    """Least t >= 1 with a^(q^t) = a; always a divisor of ext's degree."""
    ext.validate(a)
    cur = a
    for t in range(1, ext.degree + 1):
        cur = ext.frobenius(cur)
        if cur == a:
            return t
    raise VerificationError(f"{a!r} not fixed by n-fold Frobenius")


# ---------------------------------------------------------------------------
# Whole-field normal-element count.
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def extension_for(q: int, n: int):
    """F_{q^n} over F_q with the deterministic default moduli."""
    return gf.extension(gf.field_of_order(q), n)


def count_normal_elements(ext, budget=None, method: str = "auto") -> int:
    """Exhaustive count of normal elements.

    method="pure" walks elements through the dual-path is_normal;
    method="batched" evaluates the same rank criterion as chunked batched
    elimination over F_p.  "auto" picks pure for small fields."""
    cap = gf.resolve_budget(budget, gf.ELEMENT_BUDGET_DEFAULT)
    if ext.order > cap:
        raise BudgetExceeded(f"field has {ext.order} elements, budget is {cap}")
    if method == "auto":
        method = "pure" if ext.order <= PURE_SCAN_LIMIT else "batched"
    if method == "pure":
        return sum(1 for a in ext.elements(budget=cap) if is_normal(a, ext))
    if method != "batched":
        raise ValueError(f"unknown method {method!r}")
    return _batched_normal_count(ext)


def _batched_normal_count(ext) -> int:
    p = ext.char
    dim = ext.prime_dim
    k = ext.base.prime_dim
    frob = _linalg.frobenius_matrix(ext)
    smats = _linalg.scalar_mult_matrices(ext) if k > 1 else None
    total = 0
    for start in range(0, ext.order, _RANK_CHUNK):
        vecs = _linalg.all_vectors(p, dim, start, min(start + _RANK_CHUNK, ext.order))
        conj = [vecs]
        for _ in range(ext.degree - 1):
            conj.append(_linalg.apply_map(conj[-1], frob, p))
        if smats is None:
            rows = conj
        else:
            # Independence over F_q == full F_p-rank of the conjugates
            # scaled by every F_p-basis scalar of F_q.
            rows = [_linalg.apply_map(c, s, p) for s in smats for c in conj]
        mats = np.stack(rows, axis=1)
        total += int(_linalg.batched_rank_full(mats, p).sum())
    return total


# ---------------------------------------------------------------------------
# Whole-degree irreducible-polynomial scan.
# ---------------------------------------------------------------------------


@dataclasses.dataclass
class IrreducibleScan:
    """Every monic irreducible of one degree over one field, in
    lexicographic order, with its trace coefficient and N-polynomial flag."""

    n: int
    field: object
    coeff_rows: np.ndarray        # (count, n) encoded low coefficients
    trace_nonzero: np.ndarray     # (count,) bool
    npoly: np.ndarray             # (count,) bool
    trace_counts: np.ndarray      # per encoded trace value

    def _decode(self, row) -> Poly:
        F = self.field
        coeffs = tuple(F.from_index(int(i)) for i in row) + (F.one,)
        return Poly(F, coeffs)

    def polys(self) -> list[Poly]:
        return [self._decode(row) for row in self.coeff_rows]

    def npolys(self) -> list[Poly]:
        return [self._decode(row) for row in self.coeff_rows[self.npoly]]

    def nonzero_trace_polys(self) -> list[Poly]:
        return [self._decode(row) for row in self.coeff_rows[self.trace_nonzero]]

    @property
    def count(self) -> int:
        return len(self.coeff_rows)


def _vec_ops(field):
    """Elementwise encoded-coefficient arithmetic on numpy arrays: plain
    mod-p for prime fields, lookup tables for small extensions."""
    q = field.order
    if isinstance(field, gf.PrimeField):
        p = field.p

        def vadd(x, y):
            return ((x.astype(np.int16) + y) % p).astype(np.uint8)

        def vmul(x, y):
            return ((x.astype(np.int16) * y) % p).astype(np.uint8)

        def vneg(x):
            return ((p - x.astype(np.int16)) % p).astype(np.uint8)

        return vadd, vmul, vneg
    if q > 256:
        raise BudgetExceeded(f"scan tables are limited to field order <= 256, got {q}")
    elems = [field.from_index(i) for i in range(q)]
    add_t = np.array(
        [[field.index(field.add(a, b)) for b in elems] for a in elems], dtype=np.uint8
    )
    mul_t = np.array(
        [[field.index(field.mul(a, b)) for b in elems] for a in elems], dtype=np.uint8
    )
    neg_t = np.array([field.index(field.neg(a)) for a in elems], dtype=np.uint8)
    return (
        lambda x, y: add_t[x, y],
        lambda x, y: mul_t[x, y],
        lambda x: neg_t[x],
    )


def _scan_impl(n: int, q: int) -> IrreducibleScan:
    field = gf.field_of_order(q)
    if n == 1:
        # Every monic linear is irreducible; x - c is an N-polynomial
        # exactly when its root c is nonzero, i.e. the constant is nonzero.
        rows = np.arange(q, dtype=np.int64).reshape(q, 1)
        nonzero = rows[:, 0] != 0
        return IrreducibleScan(
            n=1,
            field=field,
            coeff_rows=rows,
            trace_nonzero=nonzero.copy(),
            npoly=nonzero.copy(),
            trace_counts=np.ones(q, dtype=np.int64),
        )
    if q > 256:
        raise BudgetExceeded(f"degree scans support field order <= 256, got {q}")

    vadd, vmul, vneg = _vec_ops(field)
    count = q**n
    one_idx = field.index(field.one)
    # Row i holds the encoded low coefficients (a_0 .. a_{n-1}) of the i-th
    # monic candidate in lexicographic order.
    coeffs = np.empty((count, n), dtype=np.uint8)
    idx = np.arange(count, dtype=np.int64)
    for j in range(n):
        coeffs[:, j] = (idx // q ** (n - 1 - j)) % q
    neg_f = vneg(coeffs)  # x^n mod f, per candidate

    def shift(x):
        out = np.zeros_like(x)
        out[:, 1:] = x[:, :-1]
        return vadd(out, vmul(x[:, n - 1 : n], neg_f))

    # powers[j] = x^(j*q) mod f
    xq = np.zeros((count, n), dtype=np.uint8)
    xq[:, 1] = one_idx
    for _ in range(q - 1):
        xq = shift(xq)
    powers = [np.zeros((count, n), dtype=np.uint8)]
    powers[0][:, 0] = one_idx
    cur = xq
    for _ in range(n - 1):
        powers.append(cur)
        nxt = cur
        for _ in range(q):
            nxt = shift(nxt)
        cur = nxt

    def frobenius_step(c):
        out = vmul(c[:, 0:1], powers[0])
        for j in range(1, n):
            out = vadd(out, vmul(c[:, j : j + 1], powers[j]))
        return out

    # conj[i] = x^(q^i) mod f; conj[n] drives the fixed-point test.
    conj = [np.zeros((count, n), dtype=np.uint8)]
    conj[0][:, 1] = one_idx
    for _ in range(n):
        conj.append(frobenius_step(conj[-1]))

    fixed = (conj[n] == conj[0]).all(axis=1)
    candidates = np.nonzero(fixed)[0]

    # Exact completion on the few fixed-point survivors: for each prime
    # r | n the polynomial x^(q^(n/r)) - x must be coprime to f.
    x_coeffs = (field.zero, field.one)
    sub_degrees = [n // r for r in counting.factorize(n)]
    keep = []
    for i in candidates.tolist():
        f_coeffs = tuple(field.from_index(int(v)) for v in coeffs[i]) + (field.one,)
        good = True
        for nd in sub_degrees:
            g = gf.psub(
                field,
                tuple(field.from_index(int(v)) for v in conj[nd][i]),
                x_coeffs,
            )
            if gf.pdeg(gf.pgcd(field, g, f_coeffs)) != 0:
                good = False
                break
        if good:
            keep.append(i)
    irr = np.array(keep, dtype=np.int64)

    # Normality of the canonical root: its conjugate coordinate rows are
    # exactly conj[0..n-1], so stack them and rank-test over F_p (scaling
    # by the base field's F_p-basis when q is not prime).
    mats_q = np.stack([c[irr] for c in conj[:n]], axis=1)  # (S, n, n)
    p = field.char
    k = field.prime_dim
    if k == 1:
        mats_p = mats_q
    else:
        elems = [field.from_index(i) for i in range(q)]
        coord_t = np.array([field.prime_coords(a) for a in elems], dtype=np.uint8)
        blocks = []
        for t in range(k):
            unit = [0] * k
            unit[t] = 1
            s_idx = np.uint8(field.index(field.from_prime_coords(tuple(unit))))
            scaled = vmul(s_idx, mats_q)
            blocks.append(coord_t[scaled].reshape(len(irr), n, n * k))
        mats_p = np.concatenate(blocks, axis=1)
    normal = _linalg.batched_rank_full(mats_p, p)

    trace_col = coeffs[irr, n - 1]
    return IrreducibleScan(
        n=n,
        field=field,
        coeff_rows=coeffs[irr],
        trace_nonzero=trace_col != 0,
        npoly=normal,
        trace_counts=np.bincount(trace_col, minlength=q).astype(np.int64),
    )


@functools.lru_cache(maxsize=128)
def _scan_cached(n: int, q: int) -> IrreducibleScan:
    return _scan_impl(n, q)


def scan_irreducibles(n: int, q: int, budget=None) -> IrreducibleScan:
    """All monic irreducibles of degree n over F_q, scanned from the q^n
    monic candidates (so q^n is held to the polynomial-scan budget)."""
    if n < 1:
        raise ValueError("degree must be >= 1")
    cap = gf.resolve_budget(budget, gf.POLY_BUDGET_DEFAULT)
    if q**n > cap:
        raise BudgetExceeded(f"scanning {q}^{n} candidates exceeds the budget {cap}")
    return _scan_cached(n, q)


def count_npolys_and_traces(n: int, q: int, budget=None) -> tuple[int, int, bool]:
    """(N-polynomial count, nonzero-trace irreducible count, containment),
    where containment reports that every N-polynomial had nonzero trace."""
    scan = scan_irreducibles(n, q, budget)
    containment = not bool(np.any(scan.npoly & ~scan.trace_nonzero))
    return int(scan.npoly.sum()), int(scan.trace_nonzero.sum()), containment


def find_witness(n: int, q: int, budget=None) -> Poly | None:
    """The lexicographically smallest monic irreducible with nonzero trace
    that is not an N-polynomial, or None when no such polynomial exists."""
    scan = scan_irreducibles(n, q, budget)
    wanted = scan.trace_nonzero & ~scan.npoly
    hits = np.nonzero(wanted)[0]
    if len(hits) == 0:
        return None
    return scan._decode(scan.coeff_rows[hits[0]])


def full_report(
    q: int,
    n: int,
    with_oracle: bool = False,
    element_budget=None,
    poly_budget=None,
) -> counting.CountReport:
    """Closed-form report, optionally enriched and cross-checked with the
    enumeration counts.  Oracle cells beyond their budget stay None; any
    mismatch between a closed form and its oracle raises."""
    report = counting.build_report(q, n)
    if not with_oracle:
        return report
    order = q**n
    e_cap = gf.resolve_budget(element_budget, gf.ELEMENT_BUDGET_DEFAULT)
    p_cap = gf.resolve_budget(poly_budget, gf.POLY_BUDGET_DEFAULT)
    if order <= e_cap:
        report.oracle_v = count_normal_elements(extension_for(q, n), budget=e_cap)
        if report.oracle_v != report.v:
            raise VerificationError(
                f"normal-element enumeration {report.oracle_v} != closed form "
                f"{report.v} at q={q}, n={n}"
            )
    if order <= p_cap:
        npoly, irr_nz, containment = count_npolys_and_traces(n, q, budget=p_cap)
        report.oracle_npoly = npoly
        report.oracle_irr = irr_nz
        if not containment:
            raise VerificationError(
                f"an N-polynomial with zero trace appeared at q={q}, n={n}"
            )
        if npoly != report.nb_count:
            raise VerificationError(
                f"N-polynomial scan {npoly} != closed form {report.nb_count} "
                f"at q={q}, n={n}"
            )
        if irr_nz != report.irr_nonzero_trace:
            raise VerificationError(
                f"nonzero-trace scan {irr_nz} != closed form "
                f"{report.irr_nonzero_trace} at q={q}, n={n}"
            )
    return report
