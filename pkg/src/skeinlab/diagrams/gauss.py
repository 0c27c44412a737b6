"""Gauss diagrams: oriented circles carrying signed arrows.

A slot is one arrow endpoint on a circle.  An arrow runs from its tail
(the overpass, written ``O``) to its head (the underpass, written ``U``).
Text form::

    O1+U2+U1+O2+            one circle, two arrows
    O1+U2+ / U1+O2+         two circles
    ()                      an explicit crossingless circle

An empty string is a single crossingless circle.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from ..errors import DiagramSyntaxError, NotAKnot, SemanticsError, UnknownCrossing

__all__ = [
    "GaussDiagram",
    "Slot",
    "parse_gauss",
    "render_gauss",
    "canonical_key",
    "mirror",
    "writhe",
    "connected_sum",
]

# (arrow label, is_over)
Slot = tuple[int, bool]

_TOKEN = re.compile(r"([OU])(\d+)([+-])")


@dataclass(frozen=True)
class GaussDiagram:
    circles: tuple[tuple[Slot, ...], ...]
    signs: tuple[tuple[int, int], ...]  # sorted (label, sign) pairs

    def __post_init__(self):
        seen: dict[int, list[bool]] = {}
        for circle in self.circles:
            for label, over in circle:
                seen.setdefault(label, []).append(over)
        sign_map = dict(self.signs)
        for label, kinds in seen.items():
            if sorted(kinds) != [False, True]:
                raise SemanticsError(
                    f"label {label} must occur exactly once as O and once as U, got {len(kinds)} occurrence(s)"
                )
            if sign_map.get(label) not in (1, -1):
                raise SemanticsError(f"label {label} has no valid sign")
        if set(sign_map) != set(seen):
            raise SemanticsError("sign table does not match the arrows present")
        if not self.circles:
            raise SemanticsError("a diagram needs at least one circle")

    @classmethod
    def build(cls, circles: Sequence[Sequence[Slot]], signs: Mapping[int, int]) -> GaussDiagram:
        return cls(
            tuple(tuple((int(l), bool(o)) for l, o in c) for c in circles),
            tuple(sorted((int(l), int(s)) for l, s in signs.items())),
        )

    @classmethod
    def unknot(cls, circles: int = 1) -> GaussDiagram:
        return cls(((),) * circles, ())

    # -- structure ----------------------------------------------------------

    @property
    def sign(self) -> dict[int, int]:
        return dict(self.signs)

    @property
    def labels(self) -> list[int]:
        return [l for l, _ in self.signs]

    @property
    def n_arrows(self) -> int:
        return len(self.signs)

    @property
    def n_circles(self) -> int:
        return len(self.circles)

    def is_knot(self) -> bool:
        return len(self.circles) == 1

    def endpoints(self) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
        """Map label -> ((circle, pos) of tail, (circle, pos) of head)."""
        tails: dict[int, tuple[int, int]] = {}
        heads: dict[int, tuple[int, int]] = {}
        for ci, circle in enumerate(self.circles):
            for pos, (label, over) in enumerate(circle):
                (tails if over else heads)[label] = (ci, pos)
        return {l: (tails[l], heads[l]) for l in tails}

    def check_label(self, label: int) -> None:
        if label not in self.sign:
            raise UnknownCrossing(f"no arrow labelled {label}")

    def slots(self) -> Iterator[tuple[int, int, int, bool]]:
        for ci, circle in enumerate(self.circles):
            for pos, (label, over) in enumerate(circle):
                yield ci, pos, label, over

    def relabeled(self) -> GaussDiagram:
        """Labels renumbered 1..n in order of first appearance."""
        mapping: dict[int, int] = {}
        for circle in self.circles:
            for label, _ in circle:
                if label not in mapping:
                    mapping[label] = len(mapping) + 1
        sign = self.sign
        return GaussDiagram.build(
            [[(mapping[l], o) for l, o in c] for c in self.circles],
            {mapping[l]: sign[l] for l in mapping},
        )

    def __str__(self):
        return render_gauss(self)


def _render_circle(circle: Sequence[Slot], sign: Mapping[int, int]) -> str:
    if not circle:
        return "()"
    return "".join(f"{'O' if o else 'U'}{l}{'+' if sign[l] > 0 else '-'}" for l, o in circle)


def render_gauss(g: GaussDiagram) -> str:
    sign = g.sign
    if len(g.circles) == 1 and not g.circles[0]:
        return ""
    return " / ".join(_render_circle(c, sign) for c in g.circles)


def parse_gauss(text: str) -> GaussDiagram:
    """Parse a signed Gauss code.

    Raises:
        DiagramSyntaxError: on a malformed token.
        SemanticsError: when a label does not occur exactly once as ``O`` and
            once as ``U`` or its two occurrences disagree on the sign.
    """
    circles: list[list[Slot]] = []
    signs: dict[int, int] = {}
    counts: dict[int, int] = {}
    parts = text.split("/")
    if len(parts) == 1 and not text.strip():
        return GaussDiagram.unknot()
    for part in parts:
        body = part.strip()
        if body == "()":
            circles.append([])
            continue
        if not body:
            raise DiagramSyntaxError("empty component; write () for a crossingless circle")
        circle: list[Slot] = []
        pos = 0
        while pos < len(body):
            if body[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(body, pos)
            if not m:
                bad = re.match(r"[OU]?\d*[+-]?", body[pos:]).group(0) or body[pos]
                raise DiagramSyntaxError(
                    f"malformed token {bad!r} at offset {pos} in {body!r}; expected O|U, label, sign"
                )
            kind, label, sgn = m.groups()
            label = int(label)
            if label <= 0:
                raise DiagramSyntaxError(f"label must be positive in token {m.group(0)!r}")
            s = 1 if sgn == "+" else -1
            if label in signs and signs[label] != s:
                raise SemanticsError(f"sign mismatch between the two occurrences of label {label}")
            signs[label] = s
            counts[label] = counts.get(label, 0) + 1
            circle.append((label, kind == "O"))
            pos = m.end()
        circles.append(circle)
    for label, n in counts.items():
        if n != 2:
            raise SemanticsError(f"label {label} appears {n} times; expected once as O and once as U")
    return GaussDiagram.build(circles, signs)


# -- canonical form ---------------------------------------------------------


def _encode(circles: Sequence[Sequence[Slot]], sign: Mapping[int, int]) -> tuple:
    mapping: dict[int, int] = {}
    out: list[int] = []
    for circle in circles:
        out.append(-len(circle))
        for label, over in circle:
            if label not in mapping:
                mapping[label] = len(mapping) + 1
            out.append(4 * mapping[label] + (0 if over else 2) + (0 if sign[label] > 0 else 1))
    return tuple(out)


def _decode(code: tuple) -> GaussDiagram:
    circles: list[list[Slot]] = []
    signs: dict[int, int] = {}
    i = 0
    while i < len(code):
        n = -code[i]
        circle = []
        for v in code[i + 1 : i + 1 + n]:
            label, rest = divmod(v, 4)
            circle.append((label, rest < 2))
            signs[label] = 1 if rest % 2 == 0 else -1
        circles.append(circle)
        i += n + 1
    return GaussDiagram.build(circles, signs)


def canonical_form(g: GaussDiagram) -> GaussDiagram:
    """Lexicographically minimal relabelling over basepoints and circle orders."""
    return _decode(_canonical_code(g))


def _canonical_code(g: GaussDiagram) -> tuple:
    return _least_code(g.circles, g.signs)


@functools.lru_cache(maxsize=200_000)
def _least_code(circles, signs) -> tuple:
    # Every circle block opens with its length, so the least code is found
    # block by block, keeping only the partial relabellings that tie.
    sign = dict(signs)
    states = [((), {}, tuple(range(len(circles))))]
    for _ in range(len(circles)):
        best = None
        nxt = []
        for prefix, mapping, left in states:
            for i in left:
                c = circles[i]
                rest = tuple(j for j in left if j != i)
                for r in range(max(len(c), 1)):
                    m = dict(mapping)
                    block = [-len(c)]
                    for label, over in c[r:] + c[:r]:
                        if label not in m:
                            m[label] = len(m) + 1
                        block.append(4 * m[label] + (0 if over else 2) + (0 if sign[label] > 0 else 1))
                    block = tuple(block)
                    if best is None or block < best:
                        best = block
                        nxt = []
                    if block == best:
                        nxt.append((prefix + block, m, rest))
        states = nxt
    return states[0][0]


def canonical_key(d) -> str:
    """Text key equal for diagrams that differ only by basepoints, circle order
    and arrow labels.  Planar diagrams are keyed through their Gauss diagram."""
    if not isinstance(d, GaussDiagram):
        from .convert import pd_to_gauss

        d = pd_to_gauss(d)
    return _key_text(_canonical_code(d))


@functools.lru_cache(maxsize=200_000)
def _key_text(code: tuple) -> str:
    parts = []
    i = 0
    while i < len(code):
        n = -code[i]
        tokens = []
        for v in code[i + 1 : i + 1 + n]:
            label, rest = divmod(v, 4)
            tokens.append(f"{'O' if rest < 2 else 'U'}{label}{'+' if rest % 2 == 0 else '-'}")
        parts.append("".join(tokens) or "()")
        i += n + 1
    return "" if parts == ["()"] else " / ".join(parts)


# -- elementary operations --------------------------------------------------


def mirror(g: GaussDiagram) -> GaussDiagram:
    """Swap every arrow's head and tail and negate its sign."""
    return GaussDiagram.build(
        [[(l, not o) for l, o in c] for c in g.circles],
        {l: -s for l, s in g.signs},
    )


def writhe(d) -> int:
    if isinstance(d, GaussDiagram):
        return sum(s for _, s in d.signs)
    return d.writhe()


def connected_sum(k1: GaussDiagram, k2: GaussDiagram) -> GaussDiagram:
    """Splice ``k2`` into the arc of ``k1`` that follows slot 0.

    The arrows of ``k2`` are renumbered above those of ``k1``.
    """
    if not k1.is_knot() or not k2.is_knot():
        raise NotAKnot("connected sum needs two one-circle diagrams")
    offset = max(k1.labels, default=0)
    inner = [(l + offset, o) for l, o in k2.circles[0]]
    c1 = list(k1.circles[0])
    spliced = c1[:1] + inner + c1[1:]
    signs = dict(k1.signs)
    signs.update({l + offset: s for l, s in k2.signs})
    return GaussDiagram.build([spliced], signs)
