from __future__ import annotations

import json
import random

import pytest

from skeinlab import vinv
from skeinlab.checks import (
    preservation_suite,
    quotients_suite,
    rmoves_suite,
    sample_application,
    soundness_fuzz,
    theorem_directions,
)
from skeinlab.diagrams import canonical_key, parse_gauss, realize
from skeinlab.diagrams.planar import PlanarDiagram
from skeinlab.diagrams.tables import random_classical, random_gauss
from skeinlab.errors import BadInput, LevelMismatch, NotAKnot, StaleSite
from skeinlab.moves import (
    Bounds,
    apply_move,
    builtin_moves,
    decide_quotient,
    equivalent_mod,
    find_sites,
    get_rule,
    neighbors,
    path_from_json,
    path_to_json,
    replay,
    unknot_search,
)

TREFOIL = parse_gauss("O1+U2+O3+U1+O2+U3+")
VTREFOIL = parse_gauss("O1+U2+U1+O2+")
UNKNOT = parse_gauss("")
SMALL = Bounds(node_cap=2000, depth_cap=8)


def test_registry_contents():
    names = {r.name for r in builtin_moves()}
    assert {"r1+", "r1-", "r2", "r3", "cc", "vc", "fo", "fu", "fm", "xi", "s1", "s2",
            "delta", "pass", "sharp", "wbp"} <= names
    assert "jones" not in get_rule("cc").preserves
    assert "odd_writhe" in get_rule("xi").preserves
    assert "linking_matrix" in get_rule("fo").preserves
    assert "linking_matrix" in get_rule("fu").preserves
    assert "index_polynomial" in get_rule("s1").preserves
    assert "arf" in get_rule("pass").preserves
    assert get_rule("delta").level == "planar"
    with pytest.raises(KeyError, match="known"):
        get_rule("nope")


def test_find_sites_examples():
    assert find_sites(UNKNOT, get_rule("r1-")) == []
    assert len(find_sites(TREFOIL, get_rule("cc"))) == 3
    assert find_sites(VTREFOIL, get_rule("fo"))
    with pytest.raises(LevelMismatch):
        find_sites(TREFOIL, get_rule("delta"))
    with pytest.raises(LevelMismatch):
        find_sites(realize(TREFOIL), get_rule("xi"))


def test_sites_are_deterministic():
    for rule in builtin_moves():
        d = realize(TREFOIL) if rule.level == "planar" else TREFOIL
        assert find_sites(d, rule) == find_sites(d, rule)


def test_cc_at_every_crossing_then_search():
    for site in find_sites(TREFOIL, get_rule("cc")):
        switched = apply_move(TREFOIL, site)
        assert unknot_search(realize(switched), [], SMALL).verdict == "Equivalent"


def test_deleting_every_arrow_leaves_bare_circles():
    g = parse_gauss("O1+U2- / U1+O3+U3+O2-")
    rule = get_rule("vdel")
    while g.n_arrows:
        g = apply_move(g, find_sites(g, rule)[0])
    assert g.n_circles == 2


def test_vc_keeps_the_symmetric_linking():
    rng = random.Random(31)
    for _ in range(100):
        g = random_gauss(rng, rng.randint(1, 6), rng.randint(1, 3))
        for site in find_sites(g, get_rule("vc")):
            h = apply_move(g, site)
            assert vinv.lk_symmetric(h) == vinv.lk_symmetric(g)


def test_r1_then_inverse_restores_the_diagram():
    rng = random.Random(32)
    for _ in range(50):
        g = random_gauss(rng, rng.randint(0, 5))
        site = rng.choice(find_sites(g, get_rule("r1+")))
        h = apply_move(g, site)
        back = [apply_move(h, s) for s in find_sites(h, get_rule("r1-"))]
        assert canonical_key(g) in {canonical_key(b) for b in back}


def test_stale_sites_are_rejected():
    site = find_sites(TREFOIL, get_rule("cc"))[0]
    with pytest.raises(StaleSite):
        apply_move(VTREFOIL, site)


def test_neighbors_of_unknot():
    out = neighbors(UNKNOT, [], 3)
    keys = [canonical_key(d) for d in out]
    assert canonical_key(parse_gauss("O1+U1+")) in keys
    assert canonical_key(parse_gauss("O1-U1-")) in keys
    assert len(keys) == len(set(keys))


def test_neighbors_respect_the_cap():
    for cap in (3, 4, 5):
        assert all(d.n_arrows <= cap for d in neighbors(TREFOIL, ["cc", "xi"], cap))
    d = realize(TREFOIL)
    assert all(n.n_crossings <= 4 for n in neighbors(d, ["delta"], 4))


def test_search_examples():
    out = equivalent_mod(realize(TREFOIL), PlanarDiagram.unknot(), ["cc"], Bounds(8, 10**5, 12))
    assert out.verdict == "Equivalent"
    out = equivalent_mod(realize(TREFOIL), PlanarDiagram.unknot(), [])
    assert out.verdict == "Distinguished" and out.certificate[0] == "jones"
    out = equivalent_mod(VTREFOIL, UNKNOT, ["fo", "fu"])
    assert out.verdict == "Equivalent"
    assert canonical_key(replay(VTREFOIL, out.path)) == canonical_key(UNKNOT)


def test_unknot_search_examples():
    assert unknot_search(UNKNOT, []).verdict == "Equivalent"
    assert unknot_search(UNKNOT, []).path == []
    assert unknot_search(VTREFOIL, ["fm"]).verdict == "Equivalent"
    out = unknot_search(realize(TREFOIL), ["delta"], Bounds(depth_cap=6))
    assert out.verdict == "Equivalent"
    with pytest.raises(NotAKnot):
        unknot_search(parse_gauss("O1+U2+ / U1+O2+"), [])


def test_search_reports_unknown_when_bounds_run_out():
    out = equivalent_mod(VTREFOIL, parse_gauss("O1-U2-U1-O2-"), ["xi"], Bounds(node_cap=3, depth_cap=1))
    assert out.verdict in ("Unknown", "Distinguished")
    assert out.verdict != "Equivalent"


def test_search_rejects_mixed_inputs():
    with pytest.raises(BadInput):
        equivalent_mod(realize(TREFOIL), UNKNOT, [])


def test_component_count_separates():
    out = equivalent_mod(parse_gauss("O1+U2+ / U1+O2+"), UNKNOT, ["cc"])
    assert out.verdict == "Distinguished" and out.certificate[0] == "components"


def test_search_is_symmetric():
    rng = random.Random(33)
    for _ in range(10):
        g = random_gauss(rng, rng.randint(1, 3))
        h = random_gauss(rng, rng.randint(1, 3))
        bounds = Bounds(node_cap=30, depth_cap=3)
        assert equivalent_mod(g, h, ["xi"], bounds).verdict == equivalent_mod(h, g, ["xi"], bounds).verdict


def test_paths_serialise():
    out = equivalent_mod(VTREFOIL, UNKNOT, ["fo", "fu"])
    text = json.dumps(path_to_json(out.path))
    assert canonical_key(replay(VTREFOIL, path_from_json(json.loads(text)))) == canonical_key(UNKNOT)
    assert json.loads(json.dumps(out.to_json()))["verdict"] == "Equivalent"


def test_decide_quotient_examples():
    assert decide_quotient(VTREFOIL, UNKNOT, "xi") == "Inequivalent"
    assert decide_quotient(TREFOIL, parse_gauss("O1-U2-O3+U4+O2-U1-O4+U3+"), "shell") == "Equivalent"
    rng = random.Random(34)
    g = random_gauss(rng, 4)
    h = g
    for _ in range(5):
        sites = find_sites(h, get_rule("xi"))
        if sites:
            h = apply_move(h, rng.choice(sites))
    assert decide_quotient(g, h, "xi") == "Equivalent"
    with pytest.raises(BadInput):
        decide_quotient(g, h, "nope")
    with pytest.raises(BadInput):
        decide_quotient(parse_gauss("O1+U2+ / U1+O2+"), UNKNOT, "xi")


def test_sample_application_covers_every_rule():
    rng = random.Random(35)
    for rule in builtin_moves():
        d, site, out = sample_application(rng, rule.name)
        assert site.rule == rule.name
        assert canonical_key(apply_move(d, site)) == canonical_key(out)


def test_classical_moves_keep_diagrams_classical():
    rng = random.Random(36)
    for name in ("cc", "delta", "pass", "sharp", "r1+", "r2", "r3"):
        for _ in range(10):
            d = realize(random_classical(rng, rng.randint(2, 6)))
            rule = get_rule(name)
            for site in find_sites(d, rule)[:3]:
                assert isinstance(apply_move(d, site), PlanarDiagram)


def test_property_suites_small():
    for results in (
        rmoves_suite(seed=3, count=80),
        preservation_suite(seed=3, count=25),
        theorem_directions(seed=3, count=40),
        quotients_suite(seed=3, count=4),
        soundness_fuzz(seed=3, count=40),
    ):
        assert all(r.ok for r in results), [r.to_json() for r in results if not r.ok]
