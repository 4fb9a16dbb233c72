"""Brute-force oracles: normality, N-polynomials, exhaustive counts."""

import itertools

import numpy as np
import pytest

from normbase import _linalg, counting, gf, polyring
from normbase.errors import BudgetExceeded
from normbase.oracle import (
    conjugate_matrix,
    count_normal_elements,
    count_npolys_and_traces,
    degree_of,
    extension_for,
    find_witness,
    full_report,
    is_n_polynomial,
    is_normal,
    rank_over_field,
    scan_irreducibles,
)
from normbase.polyring import Poly, enumerate_monic_irreducibles, is_irreducible, poly_trace


def P(field, *coeffs):
    return Poly.of(field, coeffs)


SMALL_EXTENSIONS = [
    (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 8),
    (3, 2), (3, 3), (3, 4),
    (4, 2), (4, 3),
    (5, 2),
    (8, 2),
    (9, 2),
]


def test_conjugate_matrix_shape(f2):
    F8 = gf.extension(f2, 3)
    rows = conjugate_matrix(F8.gen, F8)
    assert len(rows) == 3
    assert rows[0] == F8.gen
    assert rows[1] == F8.frobenius(F8.gen)


def test_rank_over_field_against_span_enumeration(rng):
    # Independent oracle: the F_q-span of the rows has size q^rank.
    for field in (gf.prime_field(2), gf.prime_field(3), gf.base_field(2, 2)):
        for _ in range(15):
            m = rng.randrange(1, 4)
            rows = [tuple(field.random(rng) for _ in range(3)) for _ in range(m)]
            span = set()
            consts = list(field.elements())
            for combo in itertools.product(consts, repeat=m):
                vec = tuple(
                    # sum_i combo[i] * rows[i][j]
                    _dot(field, combo, [r[j] for r in rows])
                    for j in range(3)
                )
                span.add(vec)
            rank = rank_over_field(rows, field)
            assert len(span) == field.order**rank


def _dot(field, xs, ys):
    acc = field.zero
    for x, y in zip(xs, ys):
        acc = field.add(acc, field.mul(x, y))
    return acc


def test_is_normal_examples(f2):
    F8 = gf.extension(f2, 3, modulus=(1, 0, 1, 1))  # x^3 + x^2 + 1
    assert is_normal(F8.gen, F8)
    assert not is_normal(F8.zero, F8)
    assert not is_normal(F8.one, F8)
    F8b = gf.extension(f2, 3, modulus=(1, 1, 0, 1))  # x^3 + x + 1, trace-0 root
    assert not is_normal(F8b.gen, F8b)


def test_dual_path_agreement_exhaustive():
    # is_normal raises internally if the rank and gcd criteria ever split;
    # walking whole small fields is the agreement test.
    for q, n in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2), (5, 2), (8, 2), (9, 2)]:
        ext = extension_for(q, n)
        normals = sum(1 for a in ext.elements() if is_normal(a, ext))
        assert normals == counting.normal_element_count(n, q)


def test_count_normal_elements_examples(f2):
    assert count_normal_elements(gf.extension(f2, 3)) == 3
    assert count_normal_elements(gf.extension(f2, 4)) == 8
    for q in (2, 3, 5):
        ext = gf.extension(gf.prime_field(q), 1)
        assert count_normal_elements(ext) == q - 1


def test_count_methods_agree():
    for q, n in SMALL_EXTENSIONS:
        ext = extension_for(q, n)
        pure = count_normal_elements(ext, method="pure")
        batched = count_normal_elements(ext, method="batched")
        assert pure == batched == counting.normal_element_count(n, q), (q, n)


def test_count_normal_budget():
    ext = extension_for(2, 5)
    with pytest.raises(BudgetExceeded):
        count_normal_elements(ext, budget=16)
    with pytest.raises(ValueError):
        count_normal_elements(ext, method="nonsense")


def test_is_n_polynomial_examples(f2):
    assert is_n_polynomial(P(f2, 1, 0, 1, 1))       # x^3 + x^2 + 1
    assert not is_n_polynomial(P(f2, 1, 1, 0, 1))   # x^3 + x + 1: zero trace
    assert not is_n_polynomial(P(f2, 1, 0, 1))      # (x+1)^2: reducible
    with pytest.raises(ValueError):
        is_n_polynomial(P(gf.prime_field(3), 2, 1, 2))  # not monic
    with pytest.raises(ValueError):
        is_n_polynomial(Poly.one(f2))


def test_degree_of(f2):
    F16 = gf.extension(f2, 4)
    for c in (F16.zero, F16.one):
        assert degree_of(c, F16) == 1
    assert degree_of(F16.gen, F16) == 4
    # the F_4 subfield inside F_16: solutions of a^(q^2) = a beyond F_2
    sub = [
        a
        for a in F16.elements()
        if F16.frobenius(F16.frobenius(a)) == a and F16.frobenius(a) != a
    ]
    assert len(sub) == 2
    assert all(degree_of(a, F16) == 2 for a in sub)
    for a in F16.elements():
        assert F16.degree % degree_of(a, F16) == 0


def test_orbit_structure(f2):
    # normal elements split into Frobenius orbits of size exactly n, and the
    # orbit count equals the independently scanned N-polynomial count
    for q, n in ((2, 4), (3, 3), (4, 2)):
        ext = extension_for(q, n)
        normals = [a for a in ext.elements() if is_normal(a, ext)]
        orbits = set()
        for a in normals:
            orbit = [a]
            while True:
                nxt = ext.frobenius(orbit[-1])
                if nxt == a:
                    break
                orbit.append(nxt)
            assert len(orbit) == n
            orbits.add(frozenset(orbit))
        assert len(normals) == n * len(orbits)
        assert len(orbits) == count_npolys_and_traces(n, q)[0]


def test_count_npolys_and_traces_examples():
    assert count_npolys_and_traces(7, 2) == (7, 9, True)
    assert count_npolys_and_traces(3, 2) == (1, 1, True)
    assert count_npolys_and_traces(4, 2) == (2, 2, True)


def test_scan_matches_pure_enumeration():
    # the vectorized scan must reproduce the lazy scanner and the
    # per-polynomial N-test exactly, including order
    for q, n in [(2, 2), (2, 3), (2, 4), (2, 6), (2, 8), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3), (5, 2), (7, 2), (8, 2), (9, 2)]:
        field = gf.field_of_order(q)
        scan = scan_irreducibles(n, q)
        slow = list(enumerate_monic_irreducibles(n, field))
        assert scan.polys() == slow, (q, n)
        assert list(scan.npoly) == [is_n_polynomial(f) for f in slow], (q, n)
        assert list(scan.trace_nonzero) == [
            poly_trace(f) != field.zero for f in slow
        ], (q, n)


def test_scan_trace_counts():
    for q, n in ((3, 3), (4, 2), (5, 3)):
        scan = scan_irreducibles(n, q)
        counts = scan.trace_counts
        assert counts.sum() == scan.count == counting.total_irr_count(n, q)
        nonzero = counts[1:]
        assert (nonzero == nonzero[0]).all()  # independence of the trace value
        assert int(nonzero[0]) == counting.irr_count_trace(n, q)
        assert int(counts[0]) == counting.zero_trace_irr_count(n, q)


def test_scan_budget():
    with pytest.raises(BudgetExceeded):
        scan_irreducibles(17, 2, budget=2**16)


def test_find_witness_examples(f2):
    w = find_witness(7, 2)
    assert w is not None
    assert is_irreducible(w) and poly_trace(w) != 0 and not is_n_polynomial(w)
    # lexicographically smallest, by independent filtering
    slow = [
        f
        for f in enumerate_monic_irreducibles(7, f2)
        if poly_trace(f) != 0 and not is_n_polynomial(f)
    ]
    assert len(slow) == 2  # 9 nonzero-trace irreducibles, 7 N-polynomials
    assert w == slow[0]
    assert find_witness(3, 2) is None
    assert find_witness(4, 2) is None


def test_full_report_with_oracle():
    r = full_report(2, 7, with_oracle=True)
    assert (r.oracle_v, r.oracle_npoly, r.oracle_irr) == (49, 7, 9)
    plain = full_report(2, 7)
    assert plain.oracle_v is None


def test_full_report_budget_skips():
    r = full_report(2, 7, with_oracle=True, element_budget=16, poly_budget=16)
    assert r.oracle_v is None and r.oracle_npoly is None and r.oracle_irr is None
    r2 = full_report(2, 7, with_oracle=True, poly_budget=16)
    assert r2.oracle_v == 49 and r2.oracle_npoly is None


def test_survivor_elements_satisfy_structural_claims():
    # every surviving root of the fully split field polynomial has nonzero
    # trace and full degree; at least one non-survivor shares both traits
    # exactly when the two counts differ
    from normbase.linearized import SymbolicFactorization, root_survivors

    for q, n in ((2, 3), (2, 4), (2, 6), (3, 2), (3, 4), (5, 2), (4, 2)):
        field = gf.field_of_order(q)
        ext = extension_for(q, n)
        fact = SymbolicFactorization.from_factorization(
            polyring.factor_xn_minus_1(n, field).flatten()
        )
        survivors = root_survivors(fact, ext)
        assert len(survivors) == counting.normal_element_count(n, q)
        for a in survivors:
            assert ext.trace(a) != field.zero
            assert degree_of(a, ext) == n
        outside = [
            a
            for a in ext.elements()
            if a not in set(survivors)
            and ext.trace(a) != field.zero
            and degree_of(a, ext) == n
        ]
        lhs, rhs = counting.inequality_sides(n, q)
        assert (len(outside) > 0) == (lhs < rhs)


def test_survivor_claims_exhaustive_to_spec_scale(rng):
    # full coverage of q^n <= 2^12: every surviving root of the split field
    # polynomial has nonzero trace and full degree, and an element outside
    # the survivor set shares both traits exactly when the bound is strict.
    # Masks are matrix-evaluated; a random sample per field is re-checked
    # against the definitional trace and Frobenius-order computations.
    from normbase.linearized import QPoly, SymbolicFactorization, operator_matrix

    for q in counting.prime_powers_up_to(16):
        n = 2
        while q**n <= 2**12:
            field = gf.field_of_order(q)
            ext = extension_for(q, n)
            p = ext.char
            fact = SymbolicFactorization.from_factorization(
                polyring.factor_xn_minus_1(n, field).flatten()
            )
            from normbase.linearized import _survivor_mask

            vecs, survivors = _survivor_mask(fact, ext)
            trace_op = QPoly(Poly(field, (field.one,) * n))
            trace_nz = _linalg.apply_map(vecs, operator_matrix(trace_op, ext), p).any(axis=1)
            full_degree = np.ones(len(vecs), dtype=bool)
            frob = _linalg.frobenius_matrix(ext).astype(np.int64)
            for r in counting.factorize(n):
                power = np.linalg.matrix_power(frob, n // r) % p
                moved = (vecs.astype(np.int64) @ power.T % p != vecs).any(axis=1)
                full_degree &= moved
            assert not np.any(survivors & ~trace_nz), (q, n)
            assert not np.any(survivors & ~full_degree), (q, n)
            outside_exists = bool(np.any(~survivors & trace_nz & full_degree))
            lhs, rhs = counting.inequality_sides(n, q)
            assert outside_exists == (lhs < rhs), (q, n)
            # definitional spot checks on a few sampled rows
            idx = [rng.randrange(len(vecs)) for _ in range(8)]
            for i in idx:
                a = ext.from_prime_coords(tuple(int(v) for v in vecs[i]))
                assert (ext.trace(a) != field.zero) == bool(trace_nz[i])
                assert (degree_of(a, ext) == n) == bool(full_degree[i])
            n += 1


def test_linalg_kernels_agree_with_pure_rank(rng):
    for p in (2, 3, 5, 7):
        field = gf.prime_field(p)
        mats = np.array(
            [
                [[rng.randrange(p) for _ in range(5)] for _ in range(5)]
                for _ in range(64)
            ],
            dtype=np.uint8,
        )
        got = _linalg.batched_rank_full(mats, p)
        for i in range(64):
            rows = [tuple(int(x) for x in mats[i, r]) for r in range(5)]
            assert got[i] == (rank_over_field(rows, field) == 5)


def test_all_vectors_matches_field_index_order():
    for q, n in ((2, 3), (3, 2), (4, 2)):
        ext = extension_for(q, n)
        vecs = _linalg.all_vectors(ext.char, ext.prime_dim)
        for i in (0, 1, ext.order // 2, ext.order - 1):
            assert tuple(int(v) for v in vecs[i]) == ext.prime_coords(ext.from_index(i))
