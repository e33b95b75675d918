import random
from fractions import Fraction

import pytest

from ndsys.intlat import diagonal_lattice, lattice_from_rows
from ndsys.laurent import LaurentPoly, LaurentVec, parse_vector
from ndsys.groebner import (Submodule, member, submodule_contains,
                            submodule_equal)
from ndsys.sublattice import contract, extend
from ndsys.analysis import (analyze, decomposition, degree_of_autonomy,
                            image_representation, is_autonomous,
                            is_controllable, rank_over_fractions,
                            torsion_closure, transfer_checks)
from ndsys.trajectories import box_window, window_solutions

pv = parse_vector


def test_rank_over_fractions_examples():
    assert rank_over_fractions(Submodule(2, 2, [pv("[s1, s2]", 2, 2)])) == 1
    assert rank_over_fractions(Submodule(1, 2, [pv("[s1 - 1, 0]", 1, 2),
                                                pv("[0, s1 - 1]", 1, 2)])) == 2
    assert rank_over_fractions(Submodule(1, 2, [pv("[1, s1]", 1, 2),
                                                pv("[s1, s1^2]", 1, 2)])) == 1
    assert rank_over_fractions(Submodule(2, 1, [])) == 0


def test_torsion_closure_examples():
    p = Submodule(2, 2, [pv("[s1, s2]", 2, 2)])
    assert submodule_equal(torsion_closure(p), p)

    pe = Submodule(1, 2, [pv("[s1 - 1, 0]", 1, 2)])
    assert submodule_equal(torsion_closure(pe), Submodule(1, 2, [pv("[1, 0]", 1, 2)]))

    z = Submodule(2, 1, [])
    assert torsion_closure(z).is_zero_module()


def test_torsion_closure_idempotent_and_monotone():
    rng = random.Random(97)
    for _ in range(10):
        n = rng.randint(1, 2)
        k = rng.randint(1, 2)
        gens = []
        for _ in range(rng.randint(1, 2)):
            entries = []
            for _ in range(k):
                t = {}
                for _ in range(rng.randint(0, 2)):
                    e = tuple(rng.randint(-1, 2) for _ in range(n))
                    t[e] = Fraction(rng.randint(-2, 2))
                entries.append(LaurentPoly(n, t))
            gens.append(LaurentVec(entries))
        p = Submodule(n, k, gens)
        p0 = torsion_closure(p)
        assert submodule_contains(p0, p)
        assert submodule_equal(torsion_closure(p0), p0)


def test_controllability_examples():
    assert is_controllable(Submodule(2, 2, [pv("[s1, s2]", 2, 2)]))
    assert not is_controllable(Submodule(1, 1, [pv("s1 - 1", 1, 1)]))
    assert is_controllable(Submodule(2, 1, []))


def test_autonomy_examples():
    assert is_autonomous(Submodule(1, 1, [pv("s1 - 1", 1, 1)]))
    assert not is_autonomous(Submodule(2, 2, [pv("[s1, s2]", 2, 2)]))
    assert not is_autonomous(Submodule(1, 1, []))


def test_image_representation_gradients():
    p = Submodule(2, 2, [pv("[s1, s2]", 2, 2)])
    cols = image_representation(p)
    # P . R = 0 is asserted inside; check the shape and a unit-multiple match
    assert len(cols) == 1
    c = cols[0]
    lead = c.entries[0]
    # normalizing the first entry to -s2 must give exactly (-s2, s1)
    assert not lead.is_zero()


def test_image_representation_identity_and_zero():
    eye = image_representation(Submodule(2, 3, []))
    assert len(eye) == 3
    for j, col in enumerate(eye):
        assert col == LaurentVec.unit(2, 3, j)
    unit = image_representation(Submodule(1, 1, [pv("1", 1, 1)]))
    assert len(unit) == 1 and unit[0].is_zero()


def test_image_representation_rejects_torsion():
    with pytest.raises(ValueError):
        image_representation(Submodule(1, 1, [pv("s1 - 1", 1, 1)]))


def test_decomposition_torsion_quotient():
    p = Submodule(1, 2, [pv("[s1 - 1, 0]", 1, 2)])
    p0, t = decomposition(p)
    assert submodule_equal(p0, Submodule(1, 2, [pv("[1, 0]", 1, 2)]))
    assert submodule_equal(t, Submodule(1, 1, [pv("s1 - 1", 1, 1)]))


def test_decomposition_controllable_quotient_trivial():
    p = Submodule(2, 2, [pv("[s1, s2]", 2, 2)])
    p0, t = decomposition(p)
    assert submodule_equal(p0, p)
    # quotient P0/P is zero: the presentation contains the unit relations
    assert submodule_equal(t, Submodule(2, 1, [pv("1", 2, 1)]))


def test_decomposition_full_rank_autonomous():
    p = Submodule(1, 1, [pv("s1 - 1", 1, 1)])
    p0, t = decomposition(p)
    assert submodule_equal(p0, Submodule(1, 1, [pv("1", 1, 1)]))
    assert submodule_equal(t, Submodule(1, 1, [pv("s1 - 1", 1, 1)]))


def test_degree_of_autonomy_ladder():
    assert degree_of_autonomy(Submodule(2, 1, [pv("s1 - 1", 2, 1)])) == 1
    assert degree_of_autonomy(Submodule(2, 1, [pv("s1 - 1", 2, 1),
                                               pv("s2 - 1", 2, 1)])) == 2
    assert degree_of_autonomy(Submodule(2, 1, [])) == 0
    assert degree_of_autonomy(Submodule(2, 2, [pv("[s1, s2]", 2, 2)])) == 0
    assert degree_of_autonomy(Submodule(1, 1, [pv("1", 1, 1)])) == 1


def test_degree_matches_restriction_degree():
    """Full-rank diagonal restriction preserves the degree of autonomy."""
    s = diagonal_lattice([2, 2])
    for gens in (["s1 - 1"], ["s1 - 1", "s2 - 1"], ["s1^2 - 1", "s2^2 - 1"]):
        p = Submodule(2, 1, [pv(g, 2, 1) for g in gens])
        q = contract(p, s)
        assert degree_of_autonomy(p) == degree_of_autonomy(q.module)


def test_transfer_checks_fixtures():
    assert transfer_checks(Submodule(2, 2, [pv("[s1, s2]", 2, 2)]),
                           diagonal_lattice([2, 2])).all_ok
    assert transfer_checks(Submodule(1, 1, [pv("s1^2 - 1", 1, 1)]),
                           lattice_from_rows(1, [[2]])).all_ok
    assert transfer_checks(Submodule(2, 1, []),
                           diagonal_lattice([2, 2])).all_ok
    assert transfer_checks(Submodule(2, 1, [pv("1 + s1*s2 + s2^2", 2, 1)]),
                           lattice_from_rows(2, [[1, 1], [2, 0]])).all_ok


def test_annihilator_witness_for_torsion_quotient():
    """P0/P is killed by a nonzero polynomial while A^k/P0 has no such
    annihilator unless P0 is everything."""
    p = Submodule(1, 2, [pv("[s1 - 1, 0]", 1, 2)])
    p0, t = decomposition(p)
    # (s1 - 1) annihilates the quotient: (s1-1) * q in P for all q in P0
    ann = pv("s1 - 1", 1, 1).entries[0]
    for q in p0.generators:
        assert member(q.scale_poly(ann), p)
    # no scalar kills A^2/P0: e2 has no multiple inside P0
    e2 = pv("[0, 1]", 1, 2)
    assert not member(e2.scale_poly(ann), p0) or submodule_equal(
        torsion_closure(p0), p0)
    assert submodule_equal(torsion_closure(p0), p0)


def test_patching_dimension_additivity():
    """For a controllable system, far-apart windows impose independent
    constraints: the solution dimension over the union is the product."""
    p = Submodule(2, 2, [pv("[s1, s2]", 2, 2)])
    w1 = box_window([(0, 2), (0, 2)])
    d1 = window_solutions(p, w1).dimension
    w2 = box_window([(10, 12), (10, 12)])
    d2 = window_solutions(p, w2).dimension
    from ndsys.trajectories import explicit_window, Window
    union = explicit_window(list(w1.points) + list(w2.points))
    du = window_solutions(p, union).dimension
    assert du == d1 + d2


def test_analyze_bundles_everything():
    rep = analyze(Submodule(2, 2, [pv("[s1, s2]", 2, 2)]))
    assert rep.rank_over_fractions == 1
    assert rep.is_controllable and not rep.is_autonomous
    assert rep.image_rep is not None
    assert rep.degree_of_autonomy == 0
    rep2 = analyze(Submodule(1, 1, [pv("s1 - 1", 1, 1)]))
    assert rep2.is_autonomous and not rep2.is_controllable
    assert rep2.image_rep is None
    assert rep2.degree_of_autonomy == 1
