"""Local pictures of three-strand moves, computed from straight lines.

Three lines ``y = 0``, ``y = x`` and ``y = 2 - x`` bound a triangle.  For
every orientation of the lines and every over/under relation among them we
record what a Gauss diagram sees along each strand: the order of its two
crossings, whether it passes over at each, and the crossing signs.  Moving
``y = 0`` to ``y = 2`` across the opposite vertex reverses the order on all
three strands.  Transitive height orders give Reidemeister III, cyclic ones
give the Delta move.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

__all__ = ["triangle_signature", "R3_PATTERNS", "DELTA_PATTERNS"]

# Strand description: for strand i, a pair of (other strand, passes over).
# Signs are listed for the pairs (0, 1), (0, 2), (1, 2).


def triangle_signature(strands, signs) -> tuple:
    """Canonical form of a triangle under relabelling of its three strands.

    ``strands[i]`` is the ordered pair of ``(other, over)`` entries met along
    strand ``i`` and ``signs[(i, j)]`` (``i < j``) is the sign of their
    crossing.
    """
    best = None
    for p in itertools.permutations(range(3)):
        inv = {old: new for new, old in enumerate(p)}
        rows = tuple(tuple((inv[o], ov) for o, ov in strands[old]) for old in p)
        sg = tuple(
            signs[tuple(sorted((p[i], p[j])))] for i, j in ((0, 1), (0, 2), (1, 2))
        )
        cand = (rows, sg)
        if best is None or cand < best:
            best = cand
    return best


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _intersection(p, u, q, v):
    # p + s u = q + r v
    det = _cross(u, v)
    s = Fraction(_cross((q[0] - p[0], q[1] - p[1]), v), det)
    return (p[0] + s * u[0], p[1] + s * u[1])


def _picture(lines, over):
    """Signature of three oriented lines with ``over[(i, j)]`` true when ``i`` is on top."""
    pts = {}
    for i, j in itertools.combinations(range(3), 2):
        pts[(i, j)] = _intersection(lines[i][0], lines[i][1], lines[j][0], lines[j][1])
    strands = []
    for i in range(3):
        p, u = lines[i]
        met = []
        for j in range(3):
            if j == i:
                continue
            x = pts[tuple(sorted((i, j)))]
            t = (x[0] - p[0]) * u[0] + (x[1] - p[1]) * u[1]
            met.append((t, j))
        met.sort()
        strands.append(tuple((j, over[(i, j)]) for _, j in met))
    signs = {}
    for i, j in itertools.combinations(range(3), 2):
        top, bottom = (i, j) if over[(i, j)] else (j, i)
        c = _cross(lines[top][1], lines[bottom][1])
        signs[(i, j)] = 1 if c > 0 else -1
    return triangle_signature(strands, signs)


def _tables():
    r3, delta = set(), set()
    base = [((0, 0), (1, 0)), ((0, 0), (1, 1)), ((2, 0), (-1, 1))]
    moved = [((0, 2), (1, 0))] + base[1:]
    heights = []
    for order in itertools.permutations(range(3)):
        rank = {s: k for k, s in enumerate(order)}
        heights.append(("r3", {(i, j): rank[i] > rank[j] for i in range(3) for j in range(3) if i != j}))
    for cyc in ((0, 1, 2), (0, 2, 1)):
        rel = {}
        for k in range(3):
            a, b = cyc[k], cyc[(k + 1) % 3]
            rel[(a, b)], rel[(b, a)] = True, False
        heights.append(("delta", rel))
    for dirs in itertools.product((1, -1), repeat=3):
        for config in (base, moved):
            lines = [(p, (d * u[0], d * u[1])) for (p, u), d in zip(config, dirs)]
            for kind, over in heights:
                (r3 if kind == "r3" else delta).add(_picture(lines, over))
    return frozenset(r3), frozenset(delta)


R3_PATTERNS, DELTA_PATTERNS = _tables()
