"""Bounded search for equivalence modulo a set of moves.

States are Gauss diagrams keyed by :func:`canonical_key`.  A planar input
is searched through its Gauss diagram with every step kept realizable, so
Reidemeister moves act as the virtual ones restricted to classical
diagrams.  Paths are rebuilt afterwards on the actual input diagram.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from ..diagrams.convert import is_realizable, pd_to_gauss, realize
from ..diagrams.gauss import GaussDiagram, canonical_key
from ..diagrams.planar import PlanarDiagram
from ..errors import BadInput, NotAKnot, NotRealizable
from .. import skein, vinv
from .rules import (
    INVARIANTS,
    REIDEMEISTER,
    MoveRule,
    MoveSite,
    _RULES,
    apply_move,
    get_rule,
)

__all__ = [
    "Bounds",
    "SearchOutcome",
    "neighbors",
    "neighbors_with_sites",
    "equivalent_mod",
    "unknot_search",
    "decide_quotient",
    "invariant_value",
    "replay",
    "path_to_json",
    "path_from_json",
]

EQUIVALENT = "Equivalent"
DISTINGUISHED = "Distinguished"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Bounds:
    crossing_cap: int | None = None  # defaults to the larger input size + 2
    node_cap: int = 100_000
    depth_cap: int = 16


@dataclass
class SearchOutcome:
    verdict: str
    path: list[MoveSite] = field(default_factory=list)
    certificate: tuple | None = None
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        cert = None
        if self.certificate:
            name, a, b = self.certificate
            cert = {"invariant": name, "values": [_jsonable(a), _jsonable(b)]}
        return {
            "verdict": self.verdict,
            "path": path_to_json(self.path),
            "certificate": cert,
            "stats": self.stats,
        }


def _jsonable(v):
    if hasattr(v, "render"):
        return v.render()
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def path_to_json(path: list[MoveSite]) -> list[dict]:
    return [s.to_json() for s in path]


def path_from_json(obj: list[dict]) -> list[MoveSite]:
    return [MoveSite.from_json(x) for x in obj]


def replay(d, path: list[MoveSite]):
    for site in path:
        d = apply_move(d, site)
    return d


# -- invariants -------------------------------------------------------------------


def _gauss(d) -> GaussDiagram:
    return pd_to_gauss(d) if isinstance(d, PlanarDiagram) else d


def _over_orders(g: GaussDiagram, fn):
    """Least value of ``fn`` over all orderings of the circles."""
    return min(
        fn(GaussDiagram.build([g.circles[i] for i in p], g.sign))
        for p in itertools.permutations(range(g.n_circles))
    )


def invariant_value(name: str, d):
    """Value of a registered invariant, or None when it does not apply to ``d``.

    Link invariants are minimised over component orders so they do not
    depend on the numbering of the circles.
    """
    planar = isinstance(d, PlanarDiagram)
    g = _gauss(d)
    knot = g.is_knot()
    if name in ("jones", "conway", "homfly", "arf") and not planar:
        return None
    if name == "jones":
        return skein.jones(d)
    if name == "conway":
        return skein.conway(d)
    if name == "homfly":
        return skein.homfly(d)
    if name == "arf":
        return skein.arf(d) if knot else None
    if name == "odd_writhe":
        return vinv.odd_writhe(g) if knot else None
    if name == "index_polynomial":
        return vinv.index_polynomial(g) if knot else None
    if name == "linking_matrix":
        return vinv.linking_matrix(g).canonical()
    if name == "lk_symmetric":
        return _over_orders(g, vinv.lk_symmetric)
    if name == "wriggle":
        return _over_orders(
            g, lambda h: tuple(vinv.wriggle_number(h, i, j) for i in range(1, h.n_circles + 1)
                               for j in range(1, h.n_circles + 1) if i != j)
        )
    if name == "welded_z2":
        return _over_orders(g, vinv.welded_z2)
    raise KeyError(name)


def _preserved(rules: list[MoveRule]) -> list[str]:
    keep = set(INVARIANTS)
    for r in rules:
        keep &= r.preserves
    return [name for name in INVARIANTS if name in keep]


def _separate(d1, d2, rules):
    if _gauss(d1).n_circles != _gauss(d2).n_circles:
        return ("components", _gauss(d1).n_circles, _gauss(d2).n_circles)
    for name in _preserved(rules):
        a, b = invariant_value(name, d1), invariant_value(name, d2)
        if a is not None and b is not None and a != b:
            return (name, a, b)
    return None


# -- neighbours -------------------------------------------------------------------


def _rule_list(rules) -> list[MoveRule]:
    out = []
    for r in rules or ():
        out.append(get_rule(r) if isinstance(r, str) else r)
    return out


def _expand(g: GaussDiagram, rules: list[MoveRule], planar: bool, cap: int):
    """``(rule, anchor, result)`` for single moves on the Gauss state ``g``."""
    names = list(REIDEMEISTER) + [r.name for r in rules if r.name not in REIDEMEISTER]
    for name in names:
        rule, impl = _RULES[name]
        if planar and not (rule.level == "planar" or rule.classical):
            continue
        if not planar and rule.level == "planar":
            continue
        for anchor in impl.sites(g):
            out = impl.apply(g, anchor)
            if out.n_arrows > cap:
                continue
            if planar and not is_realizable(out):
                continue
            yield name, anchor, out


def neighbors(d, rules=(), crossing_cap: int = 8) -> list:
    """Distinct results of one move from ``rules`` or a Reidemeister move.

    Results have at most ``crossing_cap`` crossings, one per canonical key,
    in order of first discovery.
    """
    return [out for _, out in neighbors_with_sites(d, rules, crossing_cap)]


def neighbors_with_sites(d, rules=(), crossing_cap: int = 8) -> list[tuple[MoveSite, object]]:
    from .rules import fingerprint

    rules = _rule_list(rules)
    planar = isinstance(d, PlanarDiagram)
    g = _gauss(d)
    at = fingerprint(d)
    seen = set()
    out = []
    for name, anchor, res in _expand(g, rules, planar, crossing_cap):
        key = canonical_key(res)
        if key in seen:
            continue
        seen.add(key)
        out.append((MoveSite(name, anchor, at), realize(res) if planar else res))
    return out


# -- search -----------------------------------------------------------------------


def _size(d) -> int:
    return d.n_crossings if isinstance(d, PlanarDiagram) else d.n_arrows


def equivalent_mod(d1, d2, rules=(), bounds: Bounds | None = None) -> SearchOutcome:
    """Decide or search whether ``d1`` and ``d2`` are related by ``rules``
    together with Reidemeister moves.

    A preserved invariant that differs gives ``Distinguished``; otherwise a
    breadth-first search from both ends (from ``d1`` only when some rule is
    not reversible) looks for a path.  Exhausted bounds give ``Unknown``.
    """
    rules = _rule_list(rules)
    bounds = bounds or Bounds()
    if isinstance(d1, PlanarDiagram) != isinstance(d2, PlanarDiagram):
        raise BadInput("both diagrams must be planar or both Gauss diagrams")
    planar = isinstance(d1, PlanarDiagram)
    cap = bounds.crossing_cap if bounds.crossing_cap is not None else max(_size(d1), _size(d2)) + 2
    cert = _separate(d1, d2, rules)
    if cert is not None:
        return SearchOutcome(DISTINGUISHED, certificate=cert, stats={"nodes": 0, "max_frontier": 0, "depth": 0})
    g1, g2 = _gauss(d1), _gauss(d2)
    k1, k2 = canonical_key(g1), canonical_key(g2)
    stats = {"nodes": 0, "max_frontier": 1, "depth": 0}
    if k1 == k2:
        return SearchOutcome(EQUIVALENT, [], None, stats)
    both = all(r.reversible for r in rules)
    parents = [{k1: None}, {k2: None}]
    states = [{k1: g1}, {k2: g2}]
    frontiers = [[k1], [k2]]
    depths = [0, 0]
    meet = None
    while meet is None:
        sides = [0, 1] if both else [0]
        live = [s for s in sides if frontiers[s]]
        if not live or sum(depths) >= bounds.depth_cap:
            break
        side = min(live, key=lambda s: (len(frontiers[s]), s))
        other = 1 - side
        nxt = []
        for key in frontiers[side]:
            stats["nodes"] += 1
            if stats["nodes"] > bounds.node_cap:
                break
            for _, _, res in _expand(states[side][key], rules, planar, cap):
                rk = canonical_key(res)
                if rk in parents[side]:
                    continue
                parents[side][rk] = key
                states[side][rk] = res
                nxt.append(rk)
                if rk in parents[other]:
                    meet = rk
                    break
            if meet is not None:
                break
        if stats["nodes"] > bounds.node_cap and meet is None:
            break
        nxt.sort()
        frontiers[side] = nxt
        depths[side] += 1
        stats["max_frontier"] = max(stats["max_frontier"], len(nxt))
        stats["depth"] = sum(depths)
    if meet is None:
        return SearchOutcome(UNKNOWN, stats=stats)
    keys = _chain(parents[0], meet)[::-1] + _chain(parents[1], meet)[1:]
    path = _rebuild(d1, keys, rules, cap)
    return SearchOutcome(EQUIVALENT, path, None, stats)


def _chain(parents, key):
    out = []
    while key is not None:
        out.append(key)
        key = parents[key]
    return out


def _rebuild(d1, keys, rules, cap) -> list[MoveSite]:
    """Concrete sites on the actual diagrams along a chain of canonical keys.

    Steps found from the far end use the inverse move; every rule here is
    reversible when that happens, so the forward step exists.
    """
    path = []
    cur = d1
    for target in keys[1:]:
        for site, res in neighbors_with_sites(cur, rules, cap):
            if canonical_key(res) == target:
                path.append(site)
                cur = res
                break
        else:  # pragma: no cover - guarded by the search itself
            raise RuntimeError("could not rebuild a step of the path")
    return path


def unknot_search(d, rules=(), bounds: Bounds | None = None) -> SearchOutcome:
    """Search for a path from the knot ``d`` to the crossingless unknot.

    Raises:
        NotAKnot: when ``d`` has more than one component.
    """
    if isinstance(d, PlanarDiagram):
        if d.n_components != 1:
            raise NotAKnot("unknotting search needs a knot")
        return equivalent_mod(d, PlanarDiagram.unknot(), rules, bounds)
    if not d.is_knot():
        raise NotAKnot("unknotting search needs a knot")
    return equivalent_mod(d, GaussDiagram.unknot(), rules, bounds)


def decide_quotient(d1, d2, quotient: str) -> str:
    """Exact decision for quotients with a known complete invariant.

    ``xi`` compares odd writhes, ``shell`` index polynomials and ``fused``
    linking matrices (components matched in order).

    Raises:
        BadInput: for an unknown quotient or unsuitable diagrams.
    """
    g1, g2 = _gauss(d1), _gauss(d2)
    if quotient in ("xi", "shell"):
        if not (g1.is_knot() and g2.is_knot()):
            raise BadInput(f"the {quotient} quotient is decided for knots only")
        fn = vinv.odd_writhe if quotient == "xi" else vinv.index_polynomial
        same = fn(g1) == fn(g2)
    elif quotient == "fused":
        if g1.n_circles != g2.n_circles:
            raise BadInput("fused comparison needs the same number of components")
        same = vinv.linking_matrix(g1) == vinv.linking_matrix(g2)
    else:
        raise BadInput(f"unknown quotient {quotient!r}; use xi, shell or fused")
    return "Equivalent" if same else "Inequivalent"


def realize_if_classical(g: GaussDiagram):
    """The planar diagram of ``g`` when it is realizable, else ``g`` itself."""
    try:
        return realize(g)
    except NotRealizable:
        return g
