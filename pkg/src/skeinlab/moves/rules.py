"""Named local moves as rewrite rules on Gauss diagrams.

Every rule is implemented on the Gauss form.  Rules that make sense for
classical diagrams also accept a :class:`PlanarDiagram`: the move is applied
to its Gauss diagram and the result is realized again, and sites whose
result is not realizable are not reported.  Rules marked ``planar`` need a
face of the diagram (a triangle or a square) and only act on planar
diagrams; the purely virtual rules only act on Gauss diagrams.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterator

from ..diagrams.convert import gauss_faces, gauss_quads, pd_to_gauss, realize
from ..diagrams.gauss import GaussDiagram
from ..diagrams.planar import PlanarDiagram, crossing_components
from ..errors import LevelMismatch, NotRealizable, StaleSite
from .geometry import DELTA_PATTERNS, R3_PATTERNS, triangle_signature

__all__ = [
    "MoveRule",
    "MoveSite",
    "builtin_moves",
    "get_rule",
    "find_sites",
    "apply_move",
    "fingerprint",
    "REIDEMEISTER",
    "INVARIANTS",
]

# invariant names known to the preservation registry
INVARIANTS = (
    "jones",
    "conway",
    "homfly",
    "arf",
    "odd_writhe",
    "index_polynomial",
    "linking_matrix",
    "lk_symmetric",
    "wriggle",
    "welded_z2",
)
_LK = ("linking_matrix", "lk_symmetric", "wriggle", "welded_z2")
_SWITCH = ("wriggle",)  # kept by any crossing change

REIDEMEISTER = ("r1+", "r1-", "r2", "r3")


@dataclass(frozen=True)
class MoveRule:
    """A monomial local move.

    ``level`` is ``"gauss"`` or ``"planar"``.  ``classical`` gauss rules also
    act on planar diagrams.  ``pattern`` and ``replacement`` describe both
    sides in words; they share the same boundary.
    """

    name: str
    level: str
    classical: bool
    reversible: bool
    preserves: frozenset[str]
    pattern: str
    replacement: str
    inverse: str = ""

    def accepts(self, d) -> bool:
        if isinstance(d, PlanarDiagram):
            return self.level == "planar" or self.classical
        return self.level == "gauss"


@dataclass(frozen=True)
class MoveSite:
    """One occurrence of a rule's pattern inside a specific diagram.

    ``anchor`` is plain JSON data; ``at`` fingerprints the diagram the site
    was matched on.
    """

    rule: str
    anchor: tuple
    at: str = field(default="", compare=False)

    def to_json(self) -> dict:
        return {"rule": self.rule, "site": _listify(self.anchor), "at": self.at}

    @classmethod
    def from_json(cls, obj: dict) -> MoveSite:
        return cls(obj["rule"], _tupleify(obj["site"]), obj.get("at", ""))


def _listify(x):
    return [_listify(v) for v in x] if isinstance(x, tuple) else x


def _tupleify(x):
    return tuple(_tupleify(v) for v in x) if isinstance(x, list) else x


def fingerprint(d) -> str:
    """Exact (not canonical) text of a diagram, used to detect stale sites."""
    if isinstance(d, PlanarDiagram):
        return json.dumps([d.crossings, d.signs, d.free_loops])
    return json.dumps([d.circles, d.signs])


# -- Gauss-level helpers ----------------------------------------------------------


def _lists(g: GaussDiagram) -> list[list[tuple[int, bool]]]:
    return [list(c) for c in g.circles]


def _build(circles, sign) -> GaussDiagram:
    return GaussDiagram.build(circles, sign)


def _gaps(g: GaussDiagram) -> list[tuple[int, int]]:
    return [(ci, p) for ci, c in enumerate(g.circles) for p in range(max(1, len(c)))]


def _adjacent_pairs(g: GaussDiagram) -> Iterator[tuple[int, int, int]]:
    """``(circle, p, q)`` for consecutive slots ``p, q = p + 1`` (cyclically)."""
    for ci, c in enumerate(g.circles):
        n = len(c)
        if n < 2:
            continue
        for p in range(n if n > 2 else 1):
            yield ci, p, (p + 1) % n


def _where(g: GaussDiagram) -> dict[tuple[int, bool], tuple[int, int]]:
    return {(l, o): (ci, p) for ci, p, l, o in g.slots()}


def _next_label(g: GaussDiagram) -> int:
    return max(g.labels, default=0) + 1


# r1 ------------------------------------------------------------------------------


def _r1_add_sites(g):
    for ci, p in _gaps(g):
        for tail_first in (True, False):
            for s in (1, -1):
                yield (ci, p, tail_first, s)


def _r1_add(g, anchor):
    ci, p, tail_first, s = anchor
    label = _next_label(g)
    circles = _lists(g)
    block = [(label, True), (label, False)]
    if not tail_first:
        block.reverse()
    circles[ci][p:p] = block
    sign = g.sign
    sign[label] = s
    return _build(circles, sign)


def _is_kink(g, label) -> bool:
    (tc, tp), (hc, hp) = g.endpoints()[label]
    n = len(g.circles[tc])
    return tc == hc and (tp - hp) % n in (1, n - 1)


def _r1_del_sites(g):
    for label in g.labels:
        if _is_kink(g, label):
            yield (label,)


def _delete(g, labels):
    labels = set(labels)
    circles = [[s for s in c if s[0] not in labels] for c in g.circles]
    return _build(circles, {l: s for l, s in g.signs if l not in labels})


def _r1_del(g, anchor):
    if not _is_kink(g, anchor[0]):
        raise StaleSite("arrow is not a kink")
    return _delete(g, anchor)


# r2 ------------------------------------------------------------------------------


def _r2_sites(g):
    where = _where(g)
    sign = g.sign
    labels = g.labels
    for i, x in enumerate(labels):
        for y in labels[i + 1 :]:
            if sign[x] == sign[y]:
                continue
            if _adjacent(g, where[(x, True)], where[(y, True)]) and _adjacent(
                g, where[(x, False)], where[(y, False)]
            ):
                yield ("del", x, y)
    gaps = _gaps(g)
    for ga in gaps:
        for gb in gaps:
            for order in (0, 1):
                for s in (1, -1):
                    yield ("add", ga[0], ga[1], gb[0], gb[1], order, s, 0)
                    if ga == gb:
                        yield ("add", ga[0], ga[1], gb[0], gb[1], order, s, 1)


def _adjacent(g, a, b) -> bool:
    if a[0] != b[0]:
        return False
    n = len(g.circles[a[0]])
    return (a[1] - b[1]) % n in (1, n - 1)


def _r2(g, anchor):
    if anchor[0] == "del":
        return _delete(g, anchor[1:])
    _, ca, pa, cb, pb, order, s, heads_first = anchor
    x = _next_label(g)
    y = x + 1
    tails = [(x, True), (y, True)]
    heads = [(x, False), (y, False)] if order == 0 else [(y, False), (x, False)]
    circles = _lists(g)
    if (ca, pa) == (cb, pb):
        circles[ca][pa:pa] = heads + tails if heads_first else tails + heads
    elif ca == cb and pa > pb:
        circles[ca][pa:pa] = tails
        circles[cb][pb:pb] = heads
    else:
        circles[cb][pb:pb] = heads
        circles[ca][pa:pa] = tails
    sign = g.sign
    sign[x], sign[y] = s, -s
    return _build(circles, sign)


# triangles -----------------------------------------------------------------------


def _triangles(g) -> Iterator[tuple[tuple[int, int], ...]]:
    """Triples of edges pairwise joined by one arrow, as sorted start slots."""
    segs: dict[tuple[int, int], tuple[int, int]] = {}  # start slot -> end slot
    at: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for ci, p, q in _adjacent_pairs(g):
        c = g.circles[ci]
        if c[p][0] != c[q][0]:
            segs[(ci, p)] = (ci, q)
            at.setdefault((ci, p), []).append((ci, p))
            at.setdefault((ci, q), []).append((ci, p))
        if len(c) == 2 and c[0][0] != c[1][0]:
            # a two-slot circle has the edge 1 -> 0 as well
            segs[(ci, 1)] = (ci, 0)
            at.setdefault((ci, 1), []).append((ci, 1))
            at.setdefault((ci, 0), []).append((ci, 1))
    where = _where(g)

    def label(slot):
        return g.circles[slot[0]][slot[1]]

    def partner(slot):
        l, o = label(slot)
        return where[(l, not o)]

    found = set()
    for s1, e1 in segs.items():
        for s2 in at.get(partner(s1), []):
            slots2 = {s2, segs[s2]}
            other2 = (slots2 - {partner(s1)}).pop()
            for s3 in at.get(partner(e1), []):
                slots3 = {s3, segs[s3]}
                other3 = (slots3 - {partner(e1)}).pop()
                if partner(other2) != other3:
                    continue
                all_slots = {s1, e1} | slots2 | slots3
                if len(all_slots) != 6:
                    continue
                key = tuple(sorted((s1, s2, s3)))
                if key not in found:
                    found.add(key)
                    yield key


def _triangle_sig(g, tri):
    where = _where(g)
    segs = []
    for ci, p in tri:
        n = len(g.circles[ci])
        segs.append(((ci, p), (ci, (p + 1) % n)))
    owner = {slot: k for k, seg in enumerate(segs) for slot in seg}
    sign = g.sign
    strands, signs = [], {}
    for k, seg in enumerate(segs):
        row = []
        for slot in seg:
            l, o = g.circles[slot[0]][slot[1]]
            other = owner[where[(l, not o)]]
            row.append((other, o))
            signs[tuple(sorted((k, other)))] = sign[l]
        strands.append(tuple(row))
    return triangle_signature(strands, signs)


def _reverse_segments(g, tri):
    circles = _lists(g)
    for ci, p in tri:
        n = len(circles[ci])
        q = (p + 1) % n
        circles[ci][p], circles[ci][q] = circles[ci][q], circles[ci][p]
    return _build(circles, g.sign)


def _r3_sites(g):
    for tri in _triangles(g):
        if _triangle_sig(g, tri) in R3_PATTERNS:
            yield tri


def _r3(g, anchor):
    if _triangle_sig(g, anchor) not in R3_PATTERNS:
        raise StaleSite("not a Reidemeister III triangle")
    return _reverse_segments(g, anchor)


def _face_edges(g) -> list[frozenset[int]] | None:
    """Faces as sets of global edge indices, or None for split diagrams."""
    quads, _, _ = gauss_quads(g)
    if not quads or len(crossing_components(quads)) > 1:
        return None
    return gauss_faces(g)


def _global(g, ci, p) -> int:
    return sum(len(c) for c in g.circles[:ci]) + p


def _delta_sites(g):
    faces = _face_edges(g)
    if faces is None:
        return
    faces = set(faces)
    for tri in _triangles(g):
        if _triangle_sig(g, tri) not in DELTA_PATTERNS:
            continue
        if frozenset(_global(g, ci, p) for ci, p in tri) in faces:
            yield tri


def _delta(g, anchor):
    if _triangle_sig(g, anchor) not in DELTA_PATTERNS:
        raise StaleSite("not a Delta triangle")
    return _reverse_segments(g, anchor)


# single arrows -------------------------------------------------------------------


def _each_label(g):
    for label in g.labels:
        yield (label,)


def _cc(g, anchor):
    (label,) = anchor
    g.check_label(label)
    return _switch(g, [label])


def _switch(g, labels):
    labels = set(labels)
    circles = [[(l, (not o) if l in labels else o) for l, o in c] for c in g.circles]
    return _build(circles, {l: (-s if l in labels else s) for l, s in g.signs})


def _vc(g, anchor):
    (label,) = anchor
    g.check_label(label)
    circles = [[(l, (not o) if l == label else o) for l, o in c] for c in g.circles]
    return _build(circles, g.sign)


def _vdel(g, anchor):
    g.check_label(anchor[0])
    return _delete(g, anchor)


# endpoint exchanges ------------------------------------------------------------------


def _exchange_sites(kind):
    def sites(g):
        for ci, p, q in _adjacent_pairs(g):
            (a, oa), (b, ob) = g.circles[ci][p], g.circles[ci][q]
            if a == b:
                continue
            if (kind == "o" and oa and ob) or (kind == "u" and not oa and not ob) or (
                kind == "m" and oa != ob
            ):
                yield (ci, p)

    return sites


def _exchange(g, anchor):
    ci, p = anchor
    circles = _lists(g)
    n = len(circles[ci])
    q = (p + 1) % n
    circles[ci][p], circles[ci][q] = circles[ci][q], circles[ci][p]
    return _build(circles, g.sign)


def _xi_sites(g):
    for ci, c in enumerate(g.circles):
        n = len(c)
        if n < 3:
            continue
        for p in range(n):
            if len({c[p][0], c[(p + 1) % n][0], c[(p + 2) % n][0]}) == 3:
                yield (ci, p)


def _xi(g, anchor):
    ci, p = anchor
    circles = _lists(g)
    n = len(circles[ci])
    r = (p + 2) % n
    circles[ci][p], circles[ci][r] = circles[ci][r], circles[ci][p]
    return _build(circles, g.sign)


# shells --------------------------------------------------------------------------


def _shells(g) -> Iterator[tuple[int, int]]:
    """``(circle, p)`` where slots ``p, p + 1`` are the two ends of one arrow."""
    for ci, c in enumerate(g.circles):
        n = len(c)
        if n < 2:
            continue
        for p in range(n if n > 2 else 1):
            if c[p][0] == c[(p + 1) % n][0]:
                yield ci, p


def _s1_sites(g):
    for ci, p in _shells(g):
        if len(g.circles[ci]) >= 3:
            yield (ci, p, 1)
            yield (ci, p, -1)


def _s1(g, anchor):
    ci, p, step = anchor
    circles = _lists(g)
    c = circles[ci]
    n = len(c)
    if n < 3 or c[p][0] != c[(p + 1) % n][0]:
        raise StaleSite("no shell at this position")
    if step > 0:
        idx = [p, (p + 1) % n, (p + 2) % n]
        vals = [c[idx[2]], c[idx[0]], c[idx[1]]]
    else:
        idx = [(p - 1) % n, p, (p + 1) % n]
        vals = [c[idx[1]], c[idx[2]], c[idx[0]]]
    for i, v in zip(idx, vals):
        c[i] = v
    return _build(circles, g.sign)


def _s2_sites(g):
    for ci, p in _shells(g):
        yield (g.circles[ci][p][0],)


def _s2(g, anchor):
    (label,) = anchor
    if not _is_kink(g, label):
        raise StaleSite("arrow is not a shell")
    sign = g.sign
    sign[label] = -sign[label]
    return _build(_lists(g), sign)


# grids ---------------------------------------------------------------------------


def _grids(g) -> Iterator[tuple[int, int, int, int]]:
    """Four arrows joining two tail-tail edges to two head-head edges."""
    pairs = {}
    for ci, p, q in _adjacent_pairs(g):
        (a, oa), (b, ob) = g.circles[ci][p], g.circles[ci][q]
        if a != b and oa == ob:
            pairs.setdefault(oa, []).append(frozenset((a, b)))
    heads = set(pairs.get(False, []))
    found = set()
    tails = pairs.get(True, [])
    for t1 in tails:
        for t2 in tails:
            if t1 & t2:
                continue
            x11, x12 = sorted(t1)
            for x21, x22 in (sorted(t2), sorted(t2)[::-1]):
                if frozenset((x11, x21)) in heads and frozenset((x12, x22)) in heads:
                    key = tuple(sorted((x11, x12, x21, x22)))
                    if key not in found:
                        found.add(key)
                        yield (x11, x12, x21, x22)


def _wbp(g, anchor):
    return _switch(g, anchor)


def _square_faces(g):
    """Square faces as ``(sides, corner)``: ``sides`` lists the four edges'
    endpoint slots and ``corner[(i, j)]`` the arrow shared by sides i and j."""
    faces = _face_edges(g)
    if faces is None:
        return
    index = []
    for ci, c in enumerate(g.circles):
        for p in range(len(c)):
            index.append((ci, p))
    for face in faces:
        if len(face) != 4:
            continue
        sides = []
        for e in sorted(face):
            ci, p = index[e]
            n = len(g.circles[ci])
            sides.append((g.circles[ci][p], g.circles[ci][(p + 1) % n]))
        labels = [s[0][0] for s in sides] + [s[1][0] for s in sides]
        if len(set(labels)) != 4 or any(a[0] == b[0] for a, b in sides):
            continue
        yield sides


def _pass_sites(g):
    sign = g.sign
    for sides in _square_faces(g):
        tails = [s for s in sides if s[0][1] and s[1][1]]
        heads = [s for s in sides if not s[0][1] and not s[1][1]]
        if len(tails) != 2 or len(heads) != 2:
            continue
        a1, a2 = ({s[0][0], s[1][0]} for s in tails)
        b1, b2 = ({s[0][0], s[1][0]} for s in heads)
        x = {(i, j): (a & b).pop() for i, a in enumerate((a1, a2)) for j, b in enumerate((b1, b2)) if a & b}
        if len(x) != 4:
            continue
        s = sign[x[(0, 0)]]
        # both bands have antiparallel strands
        if sign[x[(0, 1)]] == -s and sign[x[(1, 0)]] == -s and sign[x[(1, 1)]] == s:
            yield tuple(sorted(x.values()))


def _sharp_sites(g):
    for sides in _square_faces(g):
        if all(a[1] != b[1] for a, b in sides):
            yield tuple(sorted({a[0] for a, _ in sides} | {b[0] for _, b in sides}))


# -- registry ---------------------------------------------------------------------


@dataclass(frozen=True)
class _Impl:
    sites: Callable
    apply: Callable


def _rule(name, level, classical, reversible, preserves, pattern, replacement, inverse=""):
    return MoveRule(name, level, classical, reversible, frozenset(preserves), pattern, replacement, inverse)


_ALL = frozenset(INVARIANTS)

_RULES: dict[str, tuple[MoveRule, _Impl]] = {
    "r1+": (
        _rule("r1+", "gauss", True, True, _ALL, "an empty gap", "a kink: one arrow with adjacent ends", "r1-"),
        _Impl(_r1_add_sites, _r1_add),
    ),
    "r1-": (
        _rule("r1-", "gauss", True, True, _ALL, "a kink", "an empty gap", "r1+"),
        _Impl(_r1_del_sites, _r1_del),
    ),
    "r2": (
        _rule(
            "r2", "gauss", True, True, _ALL,
            "two gaps", "two arrows of opposite sign with adjacent tails and adjacent heads", "r2",
        ),
        _Impl(_r2_sites, _r2),
    ),
    "r3": (
        _rule(
            "r3", "gauss", True, True, _ALL,
            "three edges pairwise joined by arrows with a stacked height order",
            "the same edges with the order on each reversed", "r3",
        ),
        _Impl(_r3_sites, _r3),
    ),
    "cc": (
        _rule("cc", "gauss", True, True, _SWITCH, "an arrow", "the arrow reversed with its sign negated", "cc"),
        _Impl(_each_label, _cc),
    ),
    "vc": (
        _rule(
            "vc", "gauss", False, True, ("odd_writhe", "lk_symmetric"),
            "an arrow", "the arrow reversed with its sign kept", "vc",
        ),
        _Impl(_each_label, _vc),
    ),
    "vdel": (
        _rule("vdel", "gauss", False, False, (), "an arrow", "no arrow"),
        _Impl(_each_label, _vdel),
    ),
    "fo": (
        _rule("fo", "gauss", False, True, _LK, "two adjacent tails", "the tails exchanged", "fo"),
        _Impl(_exchange_sites("o"), _exchange),
    ),
    "fu": (
        _rule("fu", "gauss", False, True, _LK, "two adjacent heads", "the heads exchanged", "fu"),
        _Impl(_exchange_sites("u"), _exchange),
    ),
    "fm": (
        _rule("fm", "gauss", False, True, _LK, "a tail next to a head of another arrow", "the two exchanged", "fm"),
        _Impl(_exchange_sites("m"), _exchange),
    ),
    "xi": (
        _rule(
            "xi", "gauss", False, True, ("odd_writhe",) + _LK,
            "three consecutive ends of three arrows", "the first and third exchanged", "xi",
        ),
        _Impl(_xi_sites, _xi),
    ),
    "s1": (
        _rule(
            "s1", "gauss", False, True, ("odd_writhe", "index_polynomial") + _LK,
            "a shell next to an arrow end", "the shell on the other side of that end", "s1",
        ),
        _Impl(_s1_sites, _s1),
    ),
    "s2": (
        _rule(
            "s2", "gauss", False, True, ("odd_writhe", "index_polynomial") + _LK,
            "a shell", "the shell with its sign negated", "s2",
        ),
        _Impl(_s2_sites, _s2),
    ),
    "wbp": (
        _rule(
            "wbp", "gauss", False, True, ("welded_z2",) + _SWITCH,
            "two bands crossing in a grid of four arrows, one band over",
            "the same grid with the other band over", "wbp",
        ),
        _Impl(_grids, _wbp),
    ),
    "delta": (
        _rule(
            "delta", "planar", False, True, _LK,
            "a triangular face with cyclic heights", "the third strand moved across the opposite vertex", "delta",
        ),
        _Impl(_delta_sites, _delta),
    ),
    "pass": (
        _rule(
            "pass", "planar", False, True, ("arf", "welded_z2") + _SWITCH,
            "a square face where one band of antiparallel strands passes over another",
            "the same square with the other band over", "pass",
        ),
        _Impl(_pass_sites, _wbp),
    ),
    "sharp": (
        _rule(
            "sharp", "planar", False, True, ("welded_z2",) + _SWITCH,
            "a square face with woven crossings", "all four crossings switched", "sharp",
        ),
        _Impl(_sharp_sites, _wbp),
    ),
}


def builtin_moves() -> list[MoveRule]:
    return [rule for rule, _ in _RULES.values()]


def get_rule(name: str) -> MoveRule:
    try:
        return _RULES[name][0]
    except KeyError:
        raise KeyError(f"unknown move {name!r}; known: {', '.join(_RULES)}") from None


def _check_level(d, rule: MoveRule) -> None:
    if not rule.accepts(d):
        kind = "planar" if isinstance(d, PlanarDiagram) else "Gauss"
        raise LevelMismatch(f"move {rule.name!r} does not act on {kind} diagrams")


def _gauss_of(d) -> GaussDiagram:
    return pd_to_gauss(d) if isinstance(d, PlanarDiagram) else d


def _results(d, rule: MoveRule) -> Iterator[tuple[MoveSite, object]]:
    impl = _RULES[rule.name][1]
    g = _gauss_of(d)
    planar = isinstance(d, PlanarDiagram)
    at = fingerprint(d)
    for anchor in impl.sites(g):
        out = impl.apply(g, anchor)
        if planar:
            try:
                out = realize(out)
            except NotRealizable:
                continue
        yield MoveSite(rule.name, anchor, at), out


def find_sites(d, rule: MoveRule | str) -> list[MoveSite]:
    """Every site of ``rule`` in ``d`` whose application gives a valid diagram.

    Raises:
        LevelMismatch: when the rule does not act on this kind of diagram.
    """
    rule = get_rule(rule) if isinstance(rule, str) else rule
    _check_level(d, rule)
    return [site for site, _ in _results(d, rule)]


def moves_with_results(d, rule: MoveRule | str) -> list[tuple[MoveSite, object]]:
    """Like :func:`find_sites` but paired with the resulting diagrams."""
    rule = get_rule(rule) if isinstance(rule, str) else rule
    _check_level(d, rule)
    return list(_results(d, rule))


def apply_move(d, site: MoveSite):
    """Apply ``site`` to ``d``.

    Raises:
        StaleSite: when ``d`` is not the diagram the site was matched on, or
            the pattern is no longer present.
        LevelMismatch: for a rule that does not act on this kind of diagram.
    """
    rule = get_rule(site.rule)
    _check_level(d, rule)
    if site.at and site.at != fingerprint(d):
        raise StaleSite(f"site for {site.rule!r} was matched on a different diagram")
    impl = _RULES[rule.name][1]
    g = _gauss_of(d)
    if site.anchor not in set(impl.sites(g)):
        raise StaleSite(f"no {site.rule!r} pattern at {site.anchor!r}")
    out = impl.apply(g, site.anchor)
    if isinstance(d, PlanarDiagram):
        try:
            return realize(out)
        except NotRealizable:
            raise StaleSite("the move leaves the class of planar diagrams here") from None
    return out
