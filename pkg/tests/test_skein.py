from __future__ import annotations

import random

import pytest

from skeinlab import skein
from skeinlab.checks import normalization_results, random_planar, skein_suite
from skeinlab.diagrams import connected_sum, mirror, parse_gauss, parse_pd, realize
from skeinlab.diagrams.planar import PlanarDiagram
from skeinlab.diagrams.tables import classical_table, random_classical
from skeinlab.errors import NotAKnot, UnknownCrossing
from skeinlab.poly import LaurentPoly

a = LaurentPoly.var("a")
z = LaurentPoly.var("z")
l = LaurentPoly.var("l")
m = LaurentPoly.var("m")

TREFOIL = realize(parse_gauss("O1+U2+O3+U1+O2+U3+"))
FIG8 = realize(parse_gauss("O1-U2-O3+U4+O2-U1-O4+U3+"))
UNKNOT = PlanarDiagram.unknot()
UNLINK2 = PlanarDiagram.unknot(2)
KINK = realize(parse_gauss("O1+U1+"))


def test_skein_triple_of_trefoil():
    triple = skein.skein_triple(TREFOIL, 0)
    assert triple.positive == TREFOIL
    assert skein.conway(triple.negative) == 1
    assert triple.smoothed.n_components == 2
    assert skein.conway(triple.smoothed) == z
    assert skein.homfly(triple.smoothed) == skein.homfly(realize(parse_gauss("O1+U2+ / U1+O2+")))


def test_skein_triple_of_kink_and_errors():
    smoothed = skein.skein_triple(KINK, 0).smoothed
    assert smoothed.n_components == 2 and smoothed.n_crossings == 0
    with pytest.raises(UnknownCrossing):
        skein.skein_triple(UNKNOT, 0)
    with pytest.raises(UnknownCrossing):
        skein.skein_triple(TREFOIL, 7)
    with pytest.raises(UnknownCrossing):
        skein.bracket_pair(UNKNOT, 0)


def test_bracket_pair_drops_a_crossing():
    pair = skein.bracket_pair(TREFOIL, 1)
    assert pair.a_smoothing.n_crossings == 2
    assert pair.b_smoothing.n_crossings == 2


def test_bracket_values():
    assert skein.kauffman_bracket(UNKNOT) == 1
    assert skein.kauffman_bracket(UNLINK2) == -(a**2) - a**-2
    # the A/B labelling is pinned by the kink identity
    assert skein.kauffman_bracket(KINK) == -(a**3)


def test_bracket_state_sum_matches_recursion():
    rng = random.Random(11)
    for _ in range(30):
        d = random_planar(rng, 1, 6)
        assert skein.kauffman_bracket(d) == skein.bracket_recursive(d)


def test_jones_values():
    assert skein.jones(UNKNOT) == 1
    assert skein.jones(KINK) == 1
    assert skein.jones(TREFOIL) == a**-4 + a**-12 - a**-16
    assert skein.jones(FIG8) == a**8 - a**4 + 1 - a**-4 + a**-8


def test_jones_of_mirror_inverts_a():
    for g in classical_table(4):
        d = realize(g)
        assert skein.jones(mirror(d)) == skein.jones(d).substitute({"a": a**-1})


def test_conway_values():
    assert skein.conway(UNKNOT) == 1
    assert skein.conway(UNLINK2) == 0
    assert skein.conway(TREFOIL) == z**2 + 1
    assert skein.conway(FIG8) == 1 - z**2


def test_homfly_values():
    assert skein.homfly(UNKNOT) == 1
    assert skein.homfly(UNLINK2) == (l + l**-1) * m**-1
    assert skein.homfly(TREFOIL) == l**-2 * m**2 - 2 * l**-2 - l**-4


def test_arf_values():
    assert skein.arf(UNKNOT) == 0
    assert skein.arf(TREFOIL) == 1
    assert skein.arf(FIG8) == 1
    with pytest.raises(NotAKnot):
        skein.arf(UNLINK2)


def test_specialisations_on_small_table():
    for g in classical_table(5):
        d = realize(g)
        h = skein.homfly(d)
        assert skein.homfly_to_conway(h) == skein.conway(d)
        assert skein.homfly_to_jones(h) == skein.jones(d)


def test_specialisations_on_links():
    rng = random.Random(12)
    for _ in range(60):
        d = random_planar(rng, 1, 7)
        h = skein.homfly(d)
        assert skein.homfly_to_conway(h) == skein.conway(d)
        assert skein.homfly_to_jones(h) == skein.jones(d)


def test_results_do_not_depend_on_basepoints():
    rng = random.Random(13)
    for _ in range(60):
        d = random_planar(rng, 1, 7)
        assert skein.conway(d, seed=1) == skein.conway(d, seed=2) == skein.conway(d)
        assert skein.homfly(d, seed=1) == skein.homfly(d, seed=2) == skein.homfly(d)


def test_connected_sum_multiplies():
    rng = random.Random(14)
    knots = [random_classical(rng, rng.randint(0, 4)) for _ in range(8)]
    for k1 in knots:
        for k2 in knots:
            s = realize(connected_sum(k1, k2))
            p1, p2 = realize(k1), realize(k2)
            assert skein.conway(s) == skein.conway(p1) * skein.conway(p2)
            assert skein.jones(s) == skein.jones(p1) * skein.jones(p2)
            assert skein.arf(s) == (skein.arf(p1) + skein.arf(p2)) % 2


def test_skein_relations_hold():
    results = skein_suite(seed=5, count=40)
    assert all(r.ok for r in results), [r.to_json() for r in results if not r.ok]
    assert all(r.checked > 0 for r in results)


def test_normalisations():
    assert all(r.ok for r in normalization_results())


def test_pd_trefoil_is_left_handed():
    d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    assert skein.conway(d) == z**2 + 1
    assert skein.jones(d) == skein.jones(TREFOIL).substitute({"a": a**-1})
