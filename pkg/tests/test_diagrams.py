from __future__ import annotations

import random

import pytest

from skeinlab.diagrams import (
    GaussDiagram,
    PlanarDiagram,
    canonical_key,
    connected_sum,
    is_realizable,
    mirror,
    parse_gauss,
    parse_pd,
    pd_to_gauss,
    realize,
    render_gauss,
    render_pd,
    writhe,
)
from skeinlab.diagrams.planar import euler_ok
from skeinlab.diagrams.tables import (
    classical_table,
    planar_curves,
    random_classical,
    random_gauss,
    virtual_table,
)
from skeinlab.errors import (
    DiagramSyntaxError,
    NotAKnot,
    NotRealizable,
    SemanticsError,
)

TREFOIL = "O1+U2+O3+U1+O2+U3+"
VTREFOIL = "O1+U2+U1+O2+"
TREFOIL_PD = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"


def test_parse_virtual_trefoil():
    g = parse_gauss(VTREFOIL)
    assert g.n_circles == 1
    assert g.n_arrows == 2
    assert dict(g.signs) == {1: 1, 2: 1}
    assert render_gauss(g) == VTREFOIL


def test_parse_trefoil_is_classical():
    g = parse_gauss(TREFOIL)
    assert g.n_arrows == 3
    assert is_realizable(g)
    assert realize(g).n_crossings == 3


def test_parse_gauss_errors():
    with pytest.raises(SemanticsError):
        parse_gauss("O1+U1+O1+")
    with pytest.raises(SemanticsError):
        parse_gauss("O1+U1-")
    with pytest.raises(DiagramSyntaxError, match="O1"):
        parse_gauss("O1U2")


def test_gauss_text_forms():
    assert parse_gauss("O1+ U1+") == parse_gauss("O1+U1+")
    two = parse_gauss("O1+U2+ / U1+O2+")
    assert two.n_circles == 2
    assert render_gauss(two) == "O1+U2+ / U1+O2+"
    assert parse_gauss("").n_circles == 1
    assert parse_gauss("() / ()").n_circles == 2
    assert render_gauss(parse_gauss("() / ()")) == "() / ()"


def test_parse_pd_trefoil():
    d = parse_pd(TREFOIL_PD)
    assert d.n_crossings == 3
    assert abs(d.writhe()) == 3
    assert render_pd(d) == TREFOIL_PD
    # this code is the left-handed trefoil
    assert canonical_key(d) == canonical_key(mirror(parse_gauss(TREFOIL)))


def test_parse_pd_unknot_and_errors():
    u = parse_pd("", free_loops=1)
    assert u.n_crossings == 0 and u.free_loops == 1
    assert parse_pd("L2").free_loops == 2
    with pytest.raises(DiagramSyntaxError):
        parse_pd("X[1,2,3]")
    with pytest.raises(SemanticsError):
        parse_pd("X[1,2,3,4]")


def test_pd_to_gauss_examples():
    assert pd_to_gauss(parse_pd("", free_loops=1)) == parse_gauss("")
    hopf = realize(parse_gauss("O1+U2+ / U1+O2+"))
    assert canonical_key(pd_to_gauss(hopf)) == canonical_key(parse_gauss("O1+U2+ / U1+O2+"))
    assert hopf.n_components == 2


def test_realize_examples():
    with pytest.raises(NotRealizable):
        realize(parse_gauss(VTREFOIL))
    assert not is_realizable(parse_gauss(VTREFOIL))
    assert realize(parse_gauss("")).n_crossings == 0


def test_writhe_and_mirror():
    t = parse_gauss(TREFOIL)
    assert writhe(parse_gauss("")) == 0
    assert writhe(t) == 3
    assert writhe(mirror(t)) == -3
    assert canonical_key(mirror(mirror(t))) == canonical_key(t)
    assert mirror(parse_gauss("")) == parse_gauss("")
    d = parse_pd(TREFOIL_PD)
    assert mirror(d).writhe() == -d.writhe()


def test_connected_sum():
    t = parse_gauss(TREFOIL)
    assert connected_sum(t, parse_gauss("")) == t
    assert connected_sum(t, t).n_arrows == 6
    with pytest.raises(NotAKnot):
        connected_sum(parse_gauss("O1+U2+ / U1+O2+"), t)


def test_canonical_key_examples():
    k = canonical_key(parse_gauss(VTREFOIL))
    assert k == canonical_key(parse_gauss("U2+U1+O2+O1+"))
    assert k == canonical_key(parse_gauss("O2+U1+U2+O1+"))
    assert canonical_key(parse_gauss(TREFOIL)) != canonical_key(mirror(parse_gauss(TREFOIL)))


def _random_relabel(rng, g: GaussDiagram) -> GaussDiagram:
    labels = [l for l, _ in g.signs]
    new = dict(zip(labels, rng.sample(range(1, 100), len(labels))))
    circles = [list(c) for c in g.circles]
    rng.shuffle(circles)
    circles = [c[k:] + c[:k] for c in circles for k in [rng.randrange(len(c)) if c else 0]]
    return GaussDiagram.build(
        [[(new[l], o) for l, o in c] for c in circles], {new[l]: s for l, s in g.signs}
    )


def test_canonical_key_ignores_basepoints_order_and_labels():
    rng = random.Random(3)
    for _ in range(300):
        g = random_gauss(rng, rng.randint(0, 6), rng.randint(1, 3))
        assert canonical_key(_random_relabel(rng, g)) == canonical_key(g)


def test_round_trip_through_text():
    rng = random.Random(4)
    for _ in range(200):
        g = random_gauss(rng, rng.randint(0, 6), rng.randint(1, 3))
        assert parse_gauss(render_gauss(g)) == g
        # PD text fixes a component's direction only through its under-strands
        # or, failing that, its arc numbering, which is ambiguous for two arcs
        if is_realizable(g) and all(any(not o for _, o in c) for c in g.circles if c):
            d = realize(g)
            assert parse_pd(render_pd(d), free_loops=d.free_loops) == d


def test_table_round_trip_through_planar():
    for g in classical_table(6):
        d = realize(g)
        assert euler_ok(d.crossings) or d.n_crossings == 0
        back = pd_to_gauss(d)
        assert back.n_arrows == g.n_arrows
        assert back.n_circles == g.n_circles
        assert sorted(s for _, s in back.signs) == sorted(s for _, s in g.signs)
        assert canonical_key(back) == canonical_key(g)


def test_random_classical_links_round_trip():
    rng = random.Random(5)
    for _ in range(200):
        g = random_gauss(rng, rng.randint(1, 6), rng.randint(1, 3))
        if not is_realizable(g):
            continue
        assert canonical_key(pd_to_gauss(realize(g))) == canonical_key(g)


def test_curve_counts():
    # spherical curves with n double points, orientation kept
    assert [sum(1 for _ in planar_curves(n)) for n in range(6)] == [1, 2, 4, 18, 54, 244]


def test_table_counts_and_uniqueness():
    counts = [1, 3, 13, 73, 609]
    for m, expected in enumerate(counts):
        keys = [canonical_key(g) for g in classical_table(m)]
        assert len(keys) == expected == len(set(keys))
    virtual = [canonical_key(g) for g in virtual_table(3)]
    assert len(virtual) == len(set(virtual)) == 181


def test_classical_table_is_the_realizable_part():
    classical = {canonical_key(g) for g in classical_table(4)}
    brute = {canonical_key(g) for g in virtual_table(4) if is_realizable(g)}
    assert classical == brute


def test_random_classical_is_realizable():
    rng = random.Random(6)
    for _ in range(100):
        g = random_classical(rng, rng.randint(0, 7))
        assert is_realizable(g)


def test_mirror_of_planar_switches_every_crossing():
    d = realize(parse_gauss(TREFOIL))
    assert isinstance(mirror(d), PlanarDiagram)
    assert canonical_key(mirror(d)) == canonical_key(mirror(parse_gauss(TREFOIL)))
