"""The base category: morphism algebra, conflations, bicartesian
squares, and the exact-structure axiom suite."""

import pytest

from f1kgw.pointed import (
    BicartesianSquare,
    Conflation,
    F1Morphism,
    NotAConflation,
    TypeMismatch,
    all_conflations,
    axiom_suite,
    classify,
    complete_pullback,
    complete_pushout,
    compose,
    conflation_retractions,
    conflation_sections,
    conflation_splittings,
    decompose_inflation,
    direct_sum,
    dualize,
    fill_conflation_morphism,
    hom_morphisms,
    inc_left,
    inc_right,
    inflations,
    deflations,
    is_deflation,
    is_inflation,
    isos,
    proj_left,
    proj_right,
    retraction_of_splitting,
    section_of_splitting,
    split_conflation,
)
from f1kgw._backend import kernel


def test_morphism_literal_round_trip():
    f = F1Morphism.from_literal("[0,2,0,1]:3->2")
    assert f.src == 3 and f.dst == 2 and f.map == (0, 2, 0, 1)
    assert str(f) == "[0,2,0,1]:3->2"
    assert F1Morphism.from_literal(str(f)) == f
    with pytest.raises(ValueError):
        F1Morphism.from_literal("[0,2,0]:3->2")  # wrong arity
    with pytest.raises(ValueError):
        F1Morphism.from_literal("junk")


def test_morphism_validation():
    with pytest.raises(ValueError):
        F1Morphism(2, 2, (0, 1, 1))  # collision
    with pytest.raises(ValueError):
        F1Morphism(2, 2, (0, 3, 1))  # out of range
    with pytest.raises(ValueError):
        F1Morphism(2, 2, (1, 1, 2))  # moves the base point


def test_compose_pointwise():
    f = F1Morphism(3, 3, (0, 2, 0, 1))
    g = F1Morphism(3, 3, (0, 1, 0, 3))
    assert compose(g, f).map == (0, 0, 0, 1)
    # evaluation order: (g o f)(x) = g(f(x))
    f2 = F1Morphism(2, 2, (0, 2, 1))
    g2 = F1Morphism(2, 2, (0, 1, 0))
    assert compose(g2, f2).map == (0, 0, 1)


def test_dualize_is_adjoint_involution():
    for u in range(4):
        for v in range(4):
            for f in hom_morphisms(u, v):
                back = dualize(f)
                assert back.src == v and back.dst == u
                assert dualize(back) == f if is_inflation(f) and is_deflation(f) else True
                # adjoint relation: back(n) = m iff f(m) = n
                for m in range(1, u + 1):
                    n = f.map[m]
                    if n:
                        assert back.map[n] == m


def test_classification():
    assert classify(F1Morphism.identity(2)) == "iso"
    assert classify(inc_left(1, 1)) == "inflation"
    assert classify(proj_left(1, 1)) == "deflation"
    assert classify(F1Morphism(2, 2, (0, 0, 1))) == "generic"


def test_hom_count_formula():
    # |hom(n, m)| = sum_k C(n,k) * m!/(m-k)!
    from math import comb, perm

    for n in range(5):
        for m in range(5):
            want = sum(comb(n, k) * perm(m, k) for k in range(min(n, m) + 1))
            assert len(hom_morphisms(n, m)) == want
    assert len(hom_morphisms(4, 4)) == 209


def test_direct_sum_block_structure():
    a = F1Morphism(1, 2, (0, 2))
    b = F1Morphism(2, 1, (0, 1, 0))
    s = direct_sum(a, b)
    assert s.src == 3 and s.dst == 3
    assert s.map == (0, 2, 3, 0)
    # inclusions and projections compose to identities
    for u in range(3):
        for v in range(3):
            assert compose(proj_left(u, v), inc_left(u, v)) == F1Morphism.identity(u)
            assert compose(proj_right(u, v), inc_right(u, v)) == F1Morphism.identity(v)


def test_conflation_census_counts():
    # (x+1) * x! conflations with total of size x
    from math import factorial

    by_total = {}
    for c in all_conflations(5):
        by_total[int(c.total)] = by_total.get(int(c.total), 0) + 1
    for x in range(6):
        assert by_total[x] == (x + 1) * factorial(x)
    assert len(all_conflations(3)) == 33
    assert len(all_conflations(4)) == 153
    assert len(all_conflations(5)) == 873


def test_conflation_rejects_mismatched_kernel():
    i = inc_left(1, 1)
    p = proj_left(1, 1)  # kills the second point, but i hits the first
    with pytest.raises(NotAConflation):
        Conflation(i, p)


def test_splitting_census_is_unique():
    for c in all_conflations(4):
        phis = conflation_splittings(c)
        assert len(phis) == 1
        assert phis[0] == split_conflation(c)
        sections = conflation_sections(c)
        retractions = conflation_retractions(c)
        assert len(sections) == 1 and len(retractions) == 1
        assert section_of_splitting(c, phis[0]) == sections[0]
        assert retraction_of_splitting(c, phis[0]) == retractions[0]


def test_complete_pullback_of_block_square():
    j = F1Morphism(1, 2, (0, 1))
    sq = complete_pullback(j, proj_left(2, 1))
    assert (int(sq.top.src), int(sq.bottom.src)) == (2, 1)
    assert sq.top.map == (0, 1, 3)
    assert sq.left.map == (0, 1, 0)
    assert sq.is_bicartesian()


def test_complete_pushout_glues():
    l = proj_left(1, 1)
    t = inc_left(2, 0)
    sq = complete_pushout(l, t)
    assert sq.is_bicartesian()
    # pushout of a deflation along an identity-like inflation stays a deflation
    assert is_deflation(sq.right)


def test_wedge_is_not_a_pushout_of_points():
    # the square 0 -> 1, 0 -> 1 completed to the wedge 1+1 is NOT the
    # pushout taken among partial injections with a genuine deflation
    # left leg absent: the fold map is not a partial injection, and the
    # intrinsic criterion only applies over deflation left legs.
    sq = BicartesianSquare(
        left=F1Morphism.zero(0, 1),
        top=F1Morphism.zero(0, 1),
        bottom=inc_left(1, 1),
        right=inc_right(1, 1),
        check_classes=False,
    )
    assert not sq.verify(universal_bound=2)


def test_fill_conflation_morphism_unique():
    top = Conflation.canonical(1, 1)
    bottom = Conflation.canonical(1, 1)
    f = F1Morphism.identity(1)
    g = F1Morphism.identity(1)
    mid = fill_conflation_morphism(top, bottom, f, g)
    assert mid == F1Morphism.identity(2)
    # the fill exists for every (f, g) pair and is pinned pointwise:
    # killing the quotient forces the non-kernel points to die
    killed = fill_conflation_morphism(top, bottom, f, F1Morphism.zero(1, 1))
    assert killed.map == (0, 1, 0)
    with pytest.raises(TypeMismatch):
        fill_conflation_morphism(top, bottom, F1Morphism.identity(2), g)


def test_decompose_inflation_blocks():
    i = F1Morphism(2, 3, (0, 3, 1))
    f, i1, i2 = decompose_inflation(i, (2, 1))
    assert classify(f) == "iso"
    assert compose(direct_sum(i1, i2), f) == i
    assert i1.map == (0, 1) and i2.map == (0, 1)
    with pytest.raises(TypeMismatch):
        decompose_inflation(i, (1, 1))


def test_axiom_suite_small():
    report = axiom_suite(3)
    assert report.ok
    names = [c.name for c in report.checks]
    assert any("cartesian" in n for n in names)
    assert "result: ALL PASS" in report.render()


def test_axiom_suite_rejects_corrupted_classes():
    # widening the deflation class to every morphism must break the
    # axioms, proving the suite can fail honestly
    report = axiom_suite(
        2, deflation_maps_of=lambda u, v: kernel.hom_maps(u, v)
    )
    assert not report.ok
    failed = [c for c in report.checks if not c.passed]
    assert failed and any(c.witness for c in failed)


def test_enumeration_class_filters():
    for u in range(4):
        for v in range(4):
            assert all(is_inflation(f) for f in inflations(u, v))
            assert all(is_deflation(f) for f in deflations(u, v))
    assert [len(isos(n)) for n in range(5)] == [1, 1, 2, 6, 24]


def test_type_mismatch_raises():
    with pytest.raises(TypeMismatch):
        compose(F1Morphism.identity(2), F1Morphism.identity(3))
