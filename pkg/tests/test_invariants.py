"""Grothendieck-group invariants computed through two independent
routes, plus the Witt monoid and hermitian component counts."""

import pytest

from f1kgw.fincat import AbelianGroupSNF
from f1kgw.invariants import (
    gw0,
    hermitian_component_count,
    k0,
    k0_from_sums,
    w0,
)


def test_k0_dual_routes_agree():
    for n in range(6):
        via_shapes = k0(n)
        via_sums = k0_from_sums(n)
        assert via_shapes.group == via_sums.group
        want = AbelianGroupSNF(0 if n == 0 else 1, ())
        assert via_shapes.group == want


def test_k0_json_shape_is_pinned():
    data = k0(4).to_json()
    assert set(data) == {"invariant", "max_size", "group"}
    assert data == {
        "invariant": "K0",
        "max_size": 4,
        "group": {"rank": 1, "torsion": []},
    }


def test_k0_render_mentions_the_census():
    text = k0(4).render()
    assert text.startswith("K0 at max size 4: Z")
    assert "15 conflation shapes among 153 conflations" in text
    assert "5 isomorphism classes" in k0_from_sums(4).render()


def test_gw0_is_infinite_cyclic_on_hyperbolics():
    r = gw0(6)
    assert r.group == AbelianGroupSNF(1, ())
    assert "additivity instances verified" in r.render()
    assert gw0(0).group == AbelianGroupSNF(0, ())
    assert gw0(6).to_json()["invariant"] == "GW0"


def test_w0_monoid_classes_and_completion():
    pres, classes, group = w0(6)
    assert pres.generators == ("w",)
    assert pres.relations == ()
    assert group == AbelianGroupSNF(1, ())
    assert sorted(classes) == list(range(7))
    for fixed, signatures in classes.items():
        for t, f in signatures:
            assert f == fixed
            assert 2 * t + f <= 6
    # every size in the window is realized by some signature
    sizes = {2 * t + f for sigs in classes.values() for t, f in sigs}
    assert sizes == set(range(7))


def test_hermitian_component_count():
    assert hermitian_component_count(3) == 4
    assert hermitian_component_count(2) == 3
