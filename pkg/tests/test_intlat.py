import random
from math import gcd

from ndsys.intlat import (GaloisSubgroup, IntLattice, IntMatrix,
                          diagonal_lattice, full_lattice, hnf,
                          hnf_with_transform, integer_kernel_rows, join,
                          lattice_from_rows, lattice_to_subgroup, meet,
                          same_coset, smith, subgroup_to_lattice,
                          unimodular_inverse, zero_lattice)


def _rand_matrix(rng, rows, cols, lo=-5, hi=5):
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(cols)]
                                for _ in range(rows)], cols)


def _row_span_equal(a: IntMatrix, b: IntMatrix) -> bool:
    return hnf(a) == hnf(b)


# ---------------------------------------------------------------------------
# Hermite form


def test_hnf_golden_hexagonal():
    h = hnf(IntMatrix.from_rows([[1, 1], [2, 0]], 2))
    assert h.rows == ((1, 1), (0, 2))


def test_hnf_echelon_shape_random():
    """Pivots strictly move right, are positive, and entries above each
    pivot are reduced into [0, pivot)."""
    rng = random.Random(5)
    for _ in range(60):
        m = _rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        h = hnf(m)
        last = -1
        for row in h.rows:
            piv = next((j for j, v in enumerate(row) if v), None)
            assert piv is not None  # zero rows are dropped
            assert piv > last
            assert row[piv] > 0
            last = piv
        for i, row in enumerate(h.rows):
            piv = next(j for j, v in enumerate(row) if v)
            for above in h.rows[:i]:
                assert 0 <= above[piv] < row[piv]


def test_hnf_invariant_under_unimodular_remix():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(1, 4)
        m = _rand_matrix(rng, rng.randint(1, 4), n)
        rows = [list(r) for r in m.rows]
        # random invertible row operations preserve the row lattice
        for _ in range(6):
            i, j = rng.randrange(len(rows)), rng.randrange(len(rows))
            if i != j:
                c = rng.randint(-3, 3)
                rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
            elif rng.random() < 0.5:
                rows[i] = [-a for a in rows[i]]
        assert hnf(m) == hnf(IntMatrix.from_rows(rows, n))


def test_hnf_with_transform_consistency():
    rng = random.Random(13)
    for _ in range(30):
        m = _rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        h, u, r = hnf_with_transform(m)
        assert u.is_unimodular()
        assert u @ m == h
        # first r rows are the Hermite form, the rest are zero
        assert IntMatrix.from_rows(h.rows[:r], m.ncols) == hnf(m)
        assert all(all(v == 0 for v in row) for row in h.rows[r:])


def test_integer_kernel():
    rng = random.Random(17)
    for _ in range(30):
        m = _rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        ker = integer_kernel_rows(m)
        for v in ker:
            prod = [sum(v[i] * m.rows[i][j] for i in range(m.nrows))
                    for j in range(m.ncols)]
            assert all(x == 0 for x in prod)


def test_unimodular_inverse():
    u = IntMatrix.from_rows([[2, 1], [1, 1]], 2)
    v = unimodular_inverse(u)
    assert u @ v == IntMatrix.identity(2)
    assert v @ u == IntMatrix.identity(2)


# ---------------------------------------------------------------------------
# Smith form


def test_smith_golden_example():
    """Columns (2,2) and (1,-3): invariant factors 1 and 8."""
    m = IntMatrix.from_rows([[2, 1], [2, -3]], 2)
    dec = smith(m)
    assert dec.diagonal == (1, 8)
    assert dec.U.is_unimodular() and dec.V.is_unimodular()
    assert dec.U @ dec.D @ dec.V == m


def _minor_gcds(m: IntMatrix, upto: int):
    """gcd of all r x r minors, the classical invariant-factor oracle."""
    from itertools import combinations
    out = []
    rows = [list(r) for r in m.rows]
    for r in range(1, upto + 1):
        g = 0
        for ri in combinations(range(m.nrows), r):
            for ci in combinations(range(m.ncols), r):
                sub = IntMatrix.from_rows([[rows[i][j] for j in ci] for i in ri], r)
                g = gcd(g, abs(sub.det()))
        out.append(g)
    return out


def test_smith_random_invariants():
    rng = random.Random(23)
    for _ in range(25):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = _rand_matrix(rng, rows, cols, -6, 6)
        dec = smith(m)
        assert dec.U @ dec.D @ dec.V == m
        assert dec.U.is_unimodular()
        assert dec.V.is_unimodular()
        diag = dec.diagonal
        for a, b in zip(diag, diag[1:]):
            if b:
                assert a and b % a == 0
        # determinantal-divisor cross-check
        r = len([d for d in diag if d])
        minors = _minor_gcds(m, r)
        prods = []
        acc = 1
        for d in diag[:r]:
            acc *= d
            prods.append(acc)
        assert minors[:r] == prods


def test_smith_zero_matrix():
    m = IntMatrix.from_rows([[0, 0], [0, 0]], 2)
    dec = smith(m)
    assert dec.diagonal == (0, 0)
    assert dec.U @ dec.D @ dec.V == m


# ---------------------------------------------------------------------------
# lattices


def test_lattice_canonical_and_membership():
    lat = lattice_from_rows(2, [[2, 0], [0, 2], [1, 1]])
    assert lat.basis.rows == ((1, 1), (0, 2))
    assert lat.contains((3, 5))
    assert not lat.contains((1, 0))
    assert lat.index() == 2


def test_lattice_index_none_when_degenerate():
    lat = lattice_from_rows(2, [[1, 1]])
    assert lat.rank == 1
    assert lat.index() is None
    assert lat.contains((2, 2))
    assert not lat.contains((2, -2))


def test_meet_join_laws():
    rng = random.Random(31)
    for _ in range(40):
        n = rng.randint(1, 3)
        a = lattice_from_rows(n, [[rng.randint(-4, 4) for _ in range(n)]
                                  for _ in range(rng.randint(0, n))])
        b = lattice_from_rows(n, [[rng.randint(-4, 4) for _ in range(n)]
                                  for _ in range(rng.randint(0, n))])
        m = meet(a, b)
        j = join(a, b)
        assert a.contains_lattice(m) and b.contains_lattice(m)
        assert j.contains_lattice(a) and j.contains_lattice(b)
        assert join(a, a) == a
        assert meet(a, a) == a
        # absorption
        assert join(a, meet(a, b)) == a
        assert meet(a, join(a, b)) == a


def test_meet_with_zero_and_full():
    a = lattice_from_rows(2, [[2, 1]])
    assert meet(a, zero_lattice(2)) == zero_lattice(2)
    assert meet(a, full_lattice(2)) == a
    assert join(a, zero_lattice(2)) == a


def test_diagonal_lattice_pinned_axis():
    lat = diagonal_lattice([2, 0])
    assert lat.contains((4, 0))
    assert not lat.contains((2, 1))
    assert lat.rank == 1


def test_coset_rep_is_canonical():
    rng = random.Random(37)
    for _ in range(40):
        n = rng.randint(1, 3)
        lat = lattice_from_rows(n, [[rng.randint(-3, 3) for _ in range(n)]
                                    for _ in range(rng.randint(1, n))])
        x = tuple(rng.randint(-6, 6) for _ in range(n))
        shift = lat.basis.rows[rng.randrange(len(lat.basis.rows))] if lat.rank else None
        rep = lat.coset_rep(x)
        assert same_coset(lat, x, rep)
        if shift:
            y = tuple(a + b for a, b in zip(x, shift))
            assert lat.coset_rep(y) == rep


def test_coset_count_matches_index():
    lat = lattice_from_rows(2, [[1, 1], [0, 2]])
    reps = {lat.coset_rep((x, y)) for x in range(-4, 5) for y in range(-4, 5)}
    assert len(reps) == 2


# ---------------------------------------------------------------------------
# finite character groups


def test_galois_five_subgroups_of_mu2xmu2():
    """The five subgroups of the order-4 diagonal group pair off with the
    five lattices between the doubled lattice and Z^2, inclusion-reversed."""
    d = (2, 2)
    trivial = GaloisSubgroup.make(d, [])
    whole = GaloisSubgroup.make(d, [(1, 0), (0, 1)])
    g10 = GaloisSubgroup.make(d, [(1, 0)])
    g01 = GaloisSubgroup.make(d, [(0, 1)])
    g11 = GaloisSubgroup.make(d, [(1, 1)])

    assert subgroup_to_lattice(trivial) == full_lattice(2)
    assert subgroup_to_lattice(whole) == diagonal_lattice([2, 2])
    assert subgroup_to_lattice(g10) == lattice_from_rows(2, [[2, 0], [0, 1]])
    assert subgroup_to_lattice(g01) == lattice_from_rows(2, [[1, 0], [0, 2]])
    assert subgroup_to_lattice(g11) == lattice_from_rows(2, [[1, 1], [2, 0]])


def test_galois_roundtrip_both_ways():
    d = (2, 2)
    subs = [GaloisSubgroup.make(d, gens) for gens in
            ([], [(1, 0)], [(0, 1)], [(1, 1)], [(1, 0), (0, 1)])]
    for h in subs:
        lat = subgroup_to_lattice(h)
        back = lattice_to_subgroup(lat, d)
        assert back.same_subgroup(h)
        assert subgroup_to_lattice(back) == lat


def test_galois_inclusion_reversing():
    d = (2, 2)
    small = GaloisSubgroup.make(d, [(1, 1)])
    big = GaloisSubgroup.make(d, [(1, 0), (0, 1)])
    lat_small = subgroup_to_lattice(small)
    lat_big = subgroup_to_lattice(big)
    assert set(small.elements()) <= set(big.elements())
    assert lat_small.contains_lattice(lat_big)


def test_galois_order_times_index():
    """Subgroup order equals the index of its fixed lattice in Z^n."""
    d = (2, 4)
    for gens in ([], [(1, 0)], [(0, 1)], [(1, 2)], [(1, 0), (0, 1)]):
        h = GaloisSubgroup.make(d, gens)
        lat = subgroup_to_lattice(h)
        assert lat.index() == h.order()
