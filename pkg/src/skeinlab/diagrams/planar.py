"""Planar diagrams of classical links as PD codes.

Each crossing is a quadruple of arc labels listed counterclockwise,
starting at the incoming under-strand.  Under-strand runs position 0 -> 2.
The over-strand runs 3 -> 1 at a positive crossing and 1 -> 3 at a
negative one.  Crossingless circles are kept as a ``free_loops`` count.

Text form: ``X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]``, optionally followed by
``L<k>`` for ``k`` free loops.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..errors import (
    DiagramSyntaxError,
    InconsistentOrientation,
    NonPlanar,
    SemanticsError,
    UnknownCrossing,
)

__all__ = ["PlanarDiagram", "parse_pd", "render_pd"]

Quad = tuple[int, int, int, int]
Occ = tuple[int, int]  # (crossing index, position)


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[Quad, ...]
    signs: tuple[int, ...]
    free_loops: int = 0

    def __post_init__(self):
        if len(self.crossings) != len(self.signs):
            raise SemanticsError("one sign per crossing required")
        _check_oriented(self.crossings, self.signs)
        _check_planar(self.crossings)

    @classmethod
    def unknot(cls, loops: int = 1) -> PlanarDiagram:
        return cls((), (), loops)

    # -- structure ----------------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def writhe(self) -> int:
        return sum(self.signs)

    def check_crossing(self, c: int) -> None:
        if not isinstance(c, int) or not 0 <= c < len(self.crossings):
            raise UnknownCrossing(f"no crossing with index {c!r}")

    def in_positions(self, c: int) -> tuple[int, int]:
        """Positions at which arcs enter crossing ``c`` (under first)."""
        return (0, 3) if self.signs[c] > 0 else (0, 1)

    def occurrences(self) -> dict[int, list[Occ]]:
        occ: dict[int, list[Occ]] = {}
        for ci, quad in enumerate(self.crossings):
            for p, label in enumerate(quad):
                occ.setdefault(label, []).append((ci, p))
        return occ

    def entry_of(self) -> dict[int, Occ]:
        """Map arc label -> the (crossing, position) where the arc enters."""
        out = {}
        for ci, quad in enumerate(self.crossings):
            for p in self.in_positions(ci):
                out[quad[p]] = (ci, p)
        return out

    def components(self) -> list[list[int]]:
        """Arc cycles, each starting at its minimal label, sorted by that label."""
        entry = self.entry_of()
        seen: set[int] = set()
        comps = []
        for start in sorted(entry):
            if start in seen:
                continue
            cycle = []
            arc = start
            while arc not in seen:
                seen.add(arc)
                cycle.append(arc)
                ci, p = entry[arc]
                arc = self.crossings[ci][(p + 2) % 4]
            comps.append(cycle)
        return comps

    @property
    def n_components(self) -> int:
        return len(self.components()) + self.free_loops

    def __str__(self):
        return render_pd(self)

    # -- local operations ---------------------------------------------------

    def _hints(self, skip: int | None = None) -> list[tuple[Occ, bool]]:
        hints = []
        for ci in range(len(self.crossings)):
            if ci == skip:
                continue
            ins = self.in_positions(ci)
            for p in range(4):
                hints.append(((ci, p), p in ins))
        return hints

    def switch(self, c: int) -> PlanarDiagram:
        """Crossing change at ``c``."""
        self.check_crossing(c)
        a, b, cc, d = self.crossings[c]
        quads = list(self.crossings)
        quads[c] = (d, a, b, cc) if self.signs[c] > 0 else (b, cc, d, a)
        signs = list(self.signs)
        signs[c] = -signs[c]
        return PlanarDiagram(tuple(quads), tuple(signs), self.free_loops)

    def with_sign(self, c: int, sign: int) -> PlanarDiagram:
        self.check_crossing(c)
        return self if self.signs[c] == sign else self.switch(c)

    def smooth_oriented(self, c: int) -> PlanarDiagram:
        """Oriented (Seifert) smoothing at ``c``."""
        self.check_crossing(c)
        quad = self.crossings[c]
        o_in, o_out = (3, 1) if self.signs[c] > 0 else (1, 3)
        return self._resolve(c, [(quad[0], quad[o_out]), (quad[o_in], quad[2])])

    def smooth_unoriented(self, c: int, kind: str) -> PlanarDiagram:
        """A-smoothing joins positions (0,1),(2,3); B-smoothing joins (0,3),(1,2)."""
        self.check_crossing(c)
        a, b, cc, d = self.crossings[c]
        if kind == "A":
            joins = [(a, b), (cc, d)]
        elif kind == "B":
            joins = [(a, d), (b, cc)]
        else:
            raise ValueError("kind must be 'A' or 'B'")
        return self._resolve(c, joins)

    def _resolve(self, c: int, joins: Iterable[tuple[int, int]]) -> PlanarDiagram:
        parent: dict[int, int] = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        for x, y in joins:
            rx, ry = find(x), find(y)
            if rx != ry:
                lo, hi = min(rx, ry), max(rx, ry)
                parent[hi] = lo
        removed = set(self.crossings[c])
        quads = [
            tuple(find(l) for l in q) for ci, q in enumerate(self.crossings) if ci != c
        ]
        used = {l for q in quads for l in q}
        loops = len({find(l) for l in removed} - used)
        hints = []
        for (ci, p), is_in in self._hints(skip=c):
            hints.append(((ci - (ci > c), p), is_in))
        return build_diagram(quads, self.free_loops + loops, hints=hints)


# -- validation ---------------------------------------------------------------


def _check_oriented(crossings: Sequence[Quad], signs: Sequence[int]) -> None:
    ins: dict[int, int] = {}
    outs: dict[int, int] = {}
    for ci, (quad, s) in enumerate(zip(crossings, signs)):
        if s not in (1, -1):
            raise SemanticsError(f"crossing {ci} has sign {s}")
        in_pos = (0, 3) if s > 0 else (0, 1)
        for p, label in enumerate(quad):
            bucket = ins if p in in_pos else outs
            bucket[label] = bucket.get(label, 0) + 1
    labels = set(ins) | set(outs)
    for label in labels:
        if ins.get(label) != 1 or outs.get(label) != 1:
            raise InconsistentOrientation(f"arc {label} must enter once and leave once")


def faces_of(crossings: Sequence[Quad]) -> list[list[Occ]]:
    """Face cycles of the rotation system, as lists of darts."""
    occ: dict[int, list[Occ]] = {}
    for ci, quad in enumerate(crossings):
        for p, label in enumerate(quad):
            occ.setdefault(label, []).append((ci, p))
    alpha: dict[Occ, Occ] = {}
    for label, pair in occ.items():
        if len(pair) != 2:
            raise SemanticsError(f"arc label {label} occurs {len(pair)} times; expected 2")
        alpha[pair[0]] = pair[1]
        alpha[pair[1]] = pair[0]
    seen: set[Occ] = set()
    faces = []
    for dart in sorted(alpha):
        if dart in seen:
            continue
        face = []
        d = dart
        while d not in seen:
            seen.add(d)
            face.append(d)
            ci, p = alpha[d]
            d = (ci, (p + 1) % 4)
        faces.append(face)
    return faces


def crossing_components(crossings: Sequence[Quad]) -> list[set[int]]:
    occ: dict[int, list[int]] = {}
    for ci, quad in enumerate(crossings):
        for label in quad:
            occ.setdefault(label, []).append(ci)
    adj: dict[int, set[int]] = {ci: set() for ci in range(len(crossings))}
    for cis in occ.values():
        for x in cis:
            adj[x].update(cis)
    comps = []
    seen: set[int] = set()
    for start in range(len(crossings)):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    queue.append(y)
        comps.append(comp)
    return comps


def euler_ok(crossings: Sequence[Quad]) -> bool:
    """V - E + F = 2 on every connected piece of the 4-valent graph."""
    faces = faces_of(crossings)
    for comp in crossing_components(crossings):
        f = sum(1 for face in faces if face[0][0] in comp)
        v = len(comp)
        if v - 2 * v + f != 2:
            return False
    return True


def _check_planar(crossings: Sequence[Quad]) -> None:
    if crossings and not euler_ok(crossings):
        raise NonPlanar("combinatorial map fails the Euler check V - E + F = 2")


# -- orientation ----------------------------------------------------------------


def build_diagram(
    quads: Sequence[Sequence[int]],
    free_loops: int = 0,
    *,
    hints: Iterable[tuple[Occ, bool]] = (),
    strict: Iterable[Occ] = (),
    numbering: bool = False,
) -> PlanarDiagram:
    """Orient a PD whose under-strands sit at positions 0 and 2.

    ``strict`` occurrences are forced to be incoming; a conflict raises
    ``InconsistentOrientation``.  ``hints`` orient components that ``strict``
    leaves undetermined, first hint wins.  With ``numbering`` the leftover
    components follow increasing arc labels.
    """
    quads = [tuple(int(x) for x in q) for q in quads]
    occ: dict[int, list[Occ]] = {}
    for ci, quad in enumerate(quads):
        for p, label in enumerate(quad):
            occ.setdefault(label, []).append((ci, p))
    for label, pair in occ.items():
        if len(pair) != 2:
            raise SemanticsError(f"arc label {label} occurs {len(pair)} times; expected 2")

    inn: dict[Occ, bool] = {}

    def other(o: Occ) -> Occ:
        a, b = occ[quads[o[0]][o[1]]]
        return b if a == o else a

    def propagate(start: Occ, is_in: bool) -> None:
        queue = deque([(start, is_in)])
        while queue:
            o, v = queue.popleft()
            if o in inn:
                if inn[o] != v:
                    raise InconsistentOrientation(
                        f"arc {quads[o[0]][o[1]]} cannot be oriented consistently"
                    )
                continue
            inn[o] = v
            queue.append(((o[0], (o[1] + 2) % 4), not v))
            queue.append((other(o), not v))

    for o in strict:
        propagate(o, True)
    for o, v in hints:
        if o not in inn:
            propagate(o, v)
    if numbering:
        for ci, quad in enumerate(quads):
            if (ci, 1) in inn:
                continue
            b, d = quad[1], quad[3]
            succ = _successor_map(quads, occ, (ci, 1))
            if succ.get(b) == d:
                propagate((ci, 1), True)
            elif succ.get(d) == b:
                propagate((ci, 3), True)
            else:
                raise InconsistentOrientation(
                    f"arc numbering does not orient the strand {b},{d} at crossing {ci}"
                )
    for ci in range(len(quads)):
        if (ci, 0) not in inn:
            propagate((ci, 0), True)

    oriented: list[Quad] = []
    signs: list[int] = []
    for ci, quad in enumerate(quads):
        if inn[(ci, 0)]:
            q = quad
            pos1_out = not inn[(ci, 1)]
        else:
            q = (quad[2], quad[3], quad[0], quad[1])
            pos1_out = not inn[(ci, 3)]
        oriented.append(q)
        signs.append(1 if pos1_out else -1)
    return PlanarDiagram(tuple(oriented), tuple(signs), free_loops)


def _successor_map(quads, occ, start: Occ) -> dict[int, int]:
    """Cyclic successor of each label within the unicursal component of ``start``."""
    labels = set()
    stack = [start]
    seen = set()
    while stack:
        o = stack.pop()
        if o in seen:
            continue
        seen.add(o)
        label = quads[o[0]][o[1]]
        labels.add(label)
        stack.append((o[0], (o[1] + 2) % 4))
        stack.extend(occ[label])
    order = sorted(labels)
    return {x: order[(i + 1) % len(order)] for i, x in enumerate(order)}


# -- text -----------------------------------------------------------------------

_PD_TOKEN = re.compile(r"X\[\s*([^\]]*)\]")
_LOOPS = re.compile(r"L(\d+)")


def parse_pd(text: str, free_loops: int | None = None) -> PlanarDiagram:
    """Parse ``X[a,b,c,d]`` tokens (and an optional ``L<k>``) into a diagram.

    Orientation comes from the under-strands (position 0 -> 2) and, for
    components that are never under, from increasing arc labels.
    """
    quads = []
    loops = 0
    for tok in text.split():
        m = _PD_TOKEN.fullmatch(tok)
        if m:
            fields = [f.strip() for f in m.group(1).split(",")]
            if len(fields) != 4:
                raise DiagramSyntaxError(f"crossing {tok!r} must have exactly 4 arc labels")
            try:
                quad = tuple(int(f) for f in fields)
            except ValueError:
                raise DiagramSyntaxError(f"non-integer arc label in {tok!r}") from None
            if any(x <= 0 for x in quad):
                raise DiagramSyntaxError(f"arc labels must be positive in {tok!r}")
            quads.append(quad)
            continue
        m = _LOOPS.fullmatch(tok)
        if m:
            loops += int(m.group(1))
            continue
        raise DiagramSyntaxError(f"malformed PD token {tok!r}")
    if free_loops is not None:
        loops = free_loops
    elif not quads and loops == 0:
        loops = 1
    return build_diagram(quads, loops, strict=[(ci, 0) for ci in range(len(quads))], numbering=True)


def render_pd(d: PlanarDiagram) -> str:
    """PD text with arcs renumbered consecutively along each component."""
    mapping: dict[int, int] = {}
    for comp in d.components():
        for label in comp:
            mapping[label] = len(mapping) + 1
    parts = [f"X[{','.join(str(mapping[x]) for x in q)}]" for q in d.crossings]
    if d.free_loops and parts:
        parts.append(f"L{d.free_loops}")
    elif d.free_loops != 1 and not parts:
        parts.append(f"L{d.free_loops}")
    return " ".join(parts)


def relabel_consecutive(d: PlanarDiagram) -> PlanarDiagram:
    mapping: dict[int, int] = {}
    for comp in d.components():
        for label in comp:
            mapping[label] = len(mapping) + 1
    quads = tuple(tuple(mapping[x] for x in q) for q in d.crossings)
    return PlanarDiagram(quads, d.signs, d.free_loops)
