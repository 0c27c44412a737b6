from __future__ import annotations

import random

import numpy as np
import pytest

from skeinlab import vinv
from skeinlab.diagrams import connected_sum, is_realizable, parse_gauss
from skeinlab.diagrams.tables import classical_table, diagram_of, planar_curves, random_gauss
from skeinlab.errors import BadComponent, NotAKnot, UnknownCrossing
from skeinlab.poly import LaurentPoly

t = LaurentPoly.var("t")
VTREFOIL = parse_gauss("O1+U2+U1+O2+")
HOPF = parse_gauss("O1+U2+ / U1+O2+")


def test_index_examples():
    assert vinv.gaussian_index(VTREFOIL, 1) in (1, -1)
    assert vinv.gaussian_index(parse_gauss("O1+U1+"), 1) == 0
    for g in classical_table(4):
        assert all(vinv.gaussian_index(g, c) == 0 for c, _ in g.signs)


def test_index_errors():
    with pytest.raises(NotAKnot):
        vinv.gaussian_index(HOPF, 1)
    with pytest.raises(UnknownCrossing):
        vinv.gaussian_index(VTREFOIL, 9)
    with pytest.raises(NotAKnot):
        vinv.odd_writhe(HOPF)
    with pytest.raises(NotAKnot):
        vinv.index_polynomial(HOPF)


def test_index_fast_path_matches_smoothing():
    rng = random.Random(21)
    for _ in range(400):
        g = random_gauss(rng, rng.randint(1, 7))
        for c, _ in g.signs:
            assert vinv.gaussian_index(g, c) == vinv.gaussian_index_by_smoothing(g, c)


def test_odd_writhe_examples():
    assert vinv.odd_writhe(parse_gauss("")) == 0
    assert vinv.odd_writhe(VTREFOIL) == 2
    assert vinv.odd_writhe(parse_gauss("O1+U2+O3+U1+O2+U3+")) == 0


def test_index_polynomial_examples():
    assert vinv.index_polynomial(parse_gauss("")) == 0
    w = vinv.index_polynomial(VTREFOIL)
    assert w == t - 2 + t**-1
    assert w.substitute({"t": LaurentPoly.const(1)}) == 0
    assert sum(c for e, c in w.items() if e[4] % 2) == 2


def test_switching_the_virtual_trefoil():
    # one crossing switched: the two odd indices now carry opposite signs
    assert vinv.odd_writhe(parse_gauss("U1-O2+O1-U2+")) == 0


def test_odd_writhe_is_odd_part_of_index_polynomial():
    rng = random.Random(22)
    for _ in range(300):
        g = random_gauss(rng, rng.randint(0, 7))
        w = vinv.index_polynomial(g)
        assert sum(c for _, c in w.items()) == 0
        assert vinv.odd_writhe(g) == sum(c for e, c in w.items() if e[4] % 2)


def test_odd_writhe_adds_under_connected_sum():
    rng = random.Random(23)
    knots = [random_gauss(rng, rng.randint(0, 4)) for _ in range(12)]
    assert vinv.odd_writhe(connected_sum(VTREFOIL, VTREFOIL)) == 4
    for k1 in knots:
        for k2 in knots:
            assert vinv.odd_writhe(connected_sum(k1, k2)) == vinv.odd_writhe(k1) + vinv.odd_writhe(k2)


def test_linking_matrix_examples():
    assert vinv.linking_matrix(VTREFOIL).rows == ((0,),)
    lm = vinv.linking_matrix(HOPF)
    assert lm.lk(1, 2) == 1 and lm.lk(2, 1) == 1
    assert vinv.wriggle_number(HOPF, 1, 2) == 0
    with pytest.raises(BadComponent):
        vinv.wriggle_number(HOPF, 1, 1)
    with pytest.raises(BadComponent):
        lm.lk(1, 3)


def test_linking_matrix_offdiagonal_sum_is_signed_count():
    rng = random.Random(24)
    for _ in range(200):
        g = random_gauss(rng, rng.randint(0, 6), rng.randint(1, 4))
        lm = vinv.linking_matrix(g)
        where = {(l, o): ci for ci, c in enumerate(g.circles) for l, o in c}
        mixed = sum(s for l, s in g.signs if where[(l, True)] != where[(l, False)])
        assert sum(sum(r) for r in lm.rows) == mixed
        assert all(lm.rows[i][i] == 0 for i in range(lm.size))
        for i in range(1, g.n_circles + 1):
            for j in range(1, g.n_circles + 1):
                if i != j:
                    assert vinv.wriggle_number(g, i, j) == -vinv.wriggle_number(g, j, i)


def test_classical_links_have_symmetric_linking():
    rng = random.Random(25)
    seen = 0
    while seen < 150:
        g = random_gauss(rng, rng.randint(1, 8), 2)
        if not is_realizable(g):
            continue
        seen += 1
        lm = vinv.linking_matrix(g)
        assert lm.lk(1, 2) == lm.lk(2, 1)


def test_batched_indices_match_scalar():
    rng = random.Random(26)
    for n in range(1, 6):
        curves = list(planar_curves(n))
        words = [w for w, _ in curves]
        bits = [b for _, b in curves]
        ind = vinv.switch_indices(words, bits)
        assert ind.shape == (len(curves), 2**n, n)
        for _ in range(20):
            k, f = rng.randrange(len(curves)), rng.randrange(2**n)
            flips = tuple((f >> c) & 1 for c in range(n))
            g = diagram_of(words[k], bits[k], flips)
            assert [vinv.gaussian_index(g, c + 1) for c in range(n)] == list(ind[k, f])


def test_batched_indices_see_virtual_words():
    # the interleaved two-chord word is not a curve; its indices are odd
    ind = vinv.switch_indices([(0, 1, 0, 1)], [(1, 1)])
    assert np.all(ind % 2 == 1)
