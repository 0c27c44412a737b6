"""Gauss-diagram invariants of virtual and welded knots and links.

Gaussian index of an arrow, odd writhe, index polynomial, linking matrix
and wriggle numbers.

Orientation convention for the two halves at an arrow ``c``: smoothing
along ``c`` splits the circle into the run of slots strictly after the
tail up to the head and the run after the head up to the tail.  The right
half is the first run at a positive crossing and the second at a negative
one, so ``sgn(c) W(right, left)`` is the wriggle number of the tail-to-head
run against the rest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagrams.gauss import GaussDiagram
from .errors import BadComponent, NotAKnot
from .poly import LaurentPoly

__all__ = [
    "LinkingMatrix",
    "gaussian_index",
    "gaussian_index_by_smoothing",
    "halves",
    "switch_indices",
    "odd_writhe",
    "index_polynomial",
    "linking_matrix",
    "wriggle_number",
    "lk_symmetric",
    "welded_z2",
]


def _require_knot(g: GaussDiagram) -> None:
    if not g.is_knot():
        raise NotAKnot(f"expected one circle, got {g.n_circles}")


def _runs(g: GaussDiagram, c: int) -> tuple[list, list]:
    """The tail-to-head run and the head-to-tail run of slots at ``c``."""
    circle = g.circles[0]
    n = len(circle)
    t = circle.index((c, True))
    h = circle.index((c, False))
    forward = [circle[(t + k) % n] for k in range(1, (h - t) % n)]
    backward = [circle[(h + k) % n] for k in range(1, (t - h) % n)]
    return forward, backward


def halves(g: GaussDiagram, c: int) -> tuple[list, list]:
    """``(right, left)`` halves of the knot smoothed at ``c``."""
    forward, backward = _runs(g, c)
    return (forward, backward) if g.sign[c] > 0 else (backward, forward)


def gaussian_index(g: GaussDiagram, c: int) -> int:
    """Index of arrow ``c``.

    Counts arrows with exactly one endpoint in the tail-to-head run of
    ``c``: ``+sgn(e)`` when the tail of ``e`` lies there, ``-sgn(e)`` when
    its head does.

    Raises:
        NotAKnot: for diagrams with more than one circle.
        UnknownCrossing: when ``c`` is not an arrow of ``g``.
    """
    _require_knot(g)
    g.check_label(c)
    sign = g.sign
    forward, _ = _runs(g, c)
    # an arrow with both endpoints in the run contributes +1 - 1 = 0
    return sum(sign[label] if over else -sign[label] for label, over in forward)


def gaussian_index_by_smoothing(g: GaussDiagram, c: int) -> int:
    """Index of ``c`` from its definition: the signed wriggle number of the halves."""
    _require_knot(g)
    g.check_label(c)
    right, left = halves(g, c)
    sign = {l: s for l, s in g.signs if l != c}
    smoothed = GaussDiagram.build([right, left], sign)
    return g.sign[c] * wriggle_number(smoothed, 1, 2)


def odd_writhe(g: GaussDiagram) -> int:
    _require_knot(g)
    return sum(s for l, s in g.signs if gaussian_index(g, l) % 2)


def index_polynomial(g: GaussDiagram) -> LaurentPoly:
    """``sum sgn(c) (t^ind(c) - 1)`` over all arrows."""
    _require_knot(g)
    total = LaurentPoly()
    for label, s in g.signs:
        total = total + s * (LaurentPoly.monomial(1, t=gaussian_index(g, label)) - 1)
    return total


@dataclass(frozen=True)
class LinkingMatrix:
    """Entry ``(i, j)`` sums the signs of arrows from circle ``i`` to circle ``j``.

    Components are numbered from 1 in the order of the diagram's circles.
    """

    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def lk(self, i: int, j: int) -> int:
        self._check(i)
        self._check(j)
        return self.rows[i - 1][j - 1]

    def _check(self, i: int) -> None:
        if not 1 <= i <= len(self.rows):
            raise BadComponent(f"no component {i}; the diagram has {len(self.rows)}")

    def canonical(self) -> tuple[tuple[int, ...], ...]:
        """Lexicographically least matrix over relabelings of the components."""
        from itertools import permutations

        n = len(self.rows)
        return min(
            tuple(tuple(self.rows[p[i]][p[j]] for j in range(n)) for i in range(n))
            for p in permutations(range(n))
        )

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def linking_matrix(g: GaussDiagram) -> LinkingMatrix:
    n = g.n_circles
    rows = [[0] * n for _ in range(n)]
    sign = g.sign
    for label, ((ti, _), (hi, _)) in g.endpoints().items():
        if ti != hi:
            rows[ti][hi] += sign[label]
    return LinkingMatrix(tuple(tuple(r) for r in rows))


def wriggle_number(g: GaussDiagram, i: int, j: int) -> int:
    """``lk(i, j) - lk(j, i)``.

    Raises:
        BadComponent: for an out-of-range component or ``i == j``.
    """
    if i == j:
        raise BadComponent("the wriggle number needs two distinct components")
    m = linking_matrix(g)
    return m.lk(i, j) - m.lk(j, i)


def lk_symmetric(g: GaussDiagram) -> tuple[tuple[int, ...], ...]:
    """``lk(i, j) + lk(j, i)`` for ``i < j``, as an upper-triangular table."""
    r = linking_matrix(g).rows
    n = len(r)
    return tuple(tuple(r[i][j] + r[j][i] for j in range(i + 1, n)) for i in range(n))


def welded_z2(g: GaussDiagram) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Mod-2 data: symmetrised ``lk`` per pair and the row sums of ``lk``."""
    r = linking_matrix(g).rows
    n = len(r)
    pairs = tuple(tuple((r[i][j] + r[j][i]) % 2 for j in range(i + 1, n)) for i in range(n))
    rowsum = tuple(sum(r[i][j] for j in range(n) if j != i) % 2 for i in range(n))
    return pairs, rowsum


def switch_indices(words, bits_list):
    """Indices of every arrow for every over/under choice on a batch of curves.

    ``words`` and ``bits_list`` come from
    :func:`skeinlab.diagrams.tables.planar_curves` and all share one arrow
    count ``n``.  The result has shape ``(curves, 2**n, n)``; entry
    ``[k, f, c]`` is the index of arrow ``c`` in the diagram obtained from
    curve ``k`` by switching the crossings set in the bitmask ``f``.  It is
    the same count as :func:`gaussian_index`, evaluated with numpy.
    """
    words = np.asarray(words, dtype=np.int64)
    bits = np.asarray(bits_list, dtype=np.int64)
    m, n2 = words.shape
    n = n2 // 2
    if n == 0:
        return np.zeros((m, 1, 0), dtype=np.int64)
    pos = np.arange(n2)
    # first and second occurrence of each chord
    onehot = words[:, :, None] == np.arange(n)[None, None, :]  # (m, 2n, n)
    first = np.argmax(onehot, axis=1)  # (m, n)
    second = n2 - 1 - np.argmax(onehot[:, ::-1, :], axis=1)
    flips = (np.arange(2**n)[:, None] >> np.arange(n)[None, :]) & 1  # (F, n)
    fl = flips[None, :, :]
    tail = np.where(fl == 1, second[:, None, :], first[:, None, :])  # (m, F, n)
    head = np.where(fl == 1, first[:, None, :], second[:, None, :])
    sign = (2 * bits[:, None, :] - 1) * (1 - 2 * fl)  # (m, F, n)
    # value at each slot: +sgn at a tail, -sgn at a head
    chord_at = np.broadcast_to(words[:, None, :], (m, 2**n, n2))
    slot_sign = np.take_along_axis(sign, chord_at, axis=2)
    slot_tail = np.take_along_axis(tail, chord_at, axis=2) == pos[None, None, :]
    value = np.where(slot_tail, slot_sign, -slot_sign)  # (m, F, 2n)
    # slot p lies strictly after the tail and before the head of chord c
    offset = (pos[None, None, None, :] - tail[..., None]) % n2  # (m, F, n, 2n)
    span = ((head - tail) % n2)[..., None]
    inside = (offset > 0) & (offset < span)
    return np.einsum("kfcp,kfp->kfc", inside.astype(np.int64), value)
