"""Conversion between planar diagrams and Gauss diagrams."""

from __future__ import annotations

from ..errors import NotRealizable
from .gauss import GaussDiagram
from .planar import PlanarDiagram, euler_ok, faces_of, relabel_consecutive

__all__ = ["pd_to_gauss", "realize", "is_realizable", "gauss_quads", "gauss_faces"]


def pd_to_gauss(d: PlanarDiagram) -> GaussDiagram:
    """Walk each component from its smallest arc; crossing ``i`` becomes arrow ``i + 1``."""
    entry = d.entry_of()
    circles = []
    for comp in d.components():
        circle = []
        for arc in comp:
            ci, p = entry[arc]
            circle.append((ci + 1, p != 0))
        circles.append(circle)
    circles.extend([[] for _ in range(d.free_loops)])
    if not circles:
        circles = [[]]
    return GaussDiagram.build(circles, {ci + 1: s for ci, s in enumerate(d.signs)})


def gauss_quads(g: GaussDiagram) -> tuple[list[tuple[int, int, int, int]], list[int], list[int]]:
    """The oriented quadruples of the ribbon graph of ``g``.

    Arc ``k`` is the edge leaving global slot ``k`` (slots numbered from 0
    through all circles).  Returns ``(quads, signs, labels)`` with one entry
    per arrow in label order.
    """
    prev: dict[int, int] = {}
    where: dict[tuple[int, bool], int] = {}
    base = 0
    for circle in g.circles:
        n = len(circle)
        for pos, (label, over) in enumerate(circle):
            s = base + pos
            prev[s] = base + (pos - 1) % n
            where[(label, over)] = s
        base += n
    quads, signs, labels = [], [], []
    for label, sign in g.signs:
        t, h = where[(label, True)], where[(label, False)]
        if sign > 0:
            quads.append((prev[h], t, h, prev[t]))
        else:
            quads.append((prev[h], prev[t], h, t))
        signs.append(sign)
        labels.append(label)
    return quads, signs, labels


def is_realizable(g: GaussDiagram) -> bool:
    """True when the signed Gauss diagram comes from a diagram on the sphere.

    The sign and direction of each arrow fix the cyclic order of the four
    half-edges at its crossing, so the rotation system is determined and
    realizability is the Euler check on that single map.
    """
    quads, _, _ = gauss_quads(g)
    return euler_ok(quads) if quads else True


def realize(g: GaussDiagram) -> PlanarDiagram:
    quads, signs, _ = gauss_quads(g)
    loops = sum(1 for c in g.circles if not c)
    if not quads:
        return PlanarDiagram.unknot(loops)
    if not euler_ok(quads):
        raise NotRealizable("no planar embedding respects this signed Gauss code")
    # labels from 0; shift to positive arc numbers
    shifted = [tuple(x + 1 for x in q) for q in quads]
    d = PlanarDiagram(tuple(shifted), tuple(signs), loops)
    return relabel_consecutive(d)


def gauss_faces(g: GaussDiagram) -> list[frozenset[int]]:
    """Faces of the ribbon graph as sets of global slot indices of their edges."""
    quads, _, _ = gauss_quads(g)
    if not quads:
        return []
    return [frozenset(quads[ci][p] for ci, p in face) for face in faces_of(quads)]
