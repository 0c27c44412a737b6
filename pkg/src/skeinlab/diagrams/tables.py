"""Enumeration and random generation of Gauss diagrams.

Classical one-circle diagrams are produced curve first: a chord diagram
satisfying Gauss's evenness condition, one bit per chord choosing the
local rotation at the crossing, a planarity check on the resulting map,
and then every over/under choice.  Switching a crossing does not change
the underlying curve, so every choice of the last step is realizable.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .convert import is_realizable
from .gauss import GaussDiagram, _canonical_code, _decode, _encode, canonical_key

__all__ = [
    "chord_words",
    "planar_curves",
    "classical_table",
    "classical_entries",
    "diagram_of",
    "virtual_table",
    "table",
    "random_gauss",
    "random_classical",
    "random_link",
]


def chord_words(n: int) -> Iterator[tuple[int, ...]]:
    """Chord diagrams with ``n`` chords satisfying Gauss's evenness condition.

    A word lists the chord at each of the ``2n`` points; chords are numbered
    by first occurrence.  Each chord has an even number of points strictly
    between its endpoints.  One word is produced per rotation class.
    """
    if n == 0:
        yield ()
        return
    word = [-1] * (2 * n)

    def fill(pos: int, next_id: int):
        while pos < 2 * n and word[pos] != -1:
            pos += 1
        if pos == 2 * n:
            yield tuple(word)
            return
        word[pos] = next_id
        for j in range(pos + 1, 2 * n, 2):
            if word[j] == -1:
                word[j] = next_id
                yield from fill(pos + 1, next_id + 1)
                word[j] = -1
        word[pos] = -1

    for w in fill(0, 0):
        if w == _min_rotation(w):
            yield w


def _relabel(w) -> tuple[int, ...]:
    m: dict[int, int] = {}
    return tuple(m.setdefault(x, len(m)) for x in w)


def _min_rotation(w) -> tuple[int, ...]:
    return min(_relabel(w[r:] + w[:r]) for r in range(len(w)))


def _faces(word, bits) -> int:
    """Number of faces of the curve with rotation bits ``bits``."""
    n2 = len(word)
    first: dict[int, int] = {}
    quads = []
    for pos, ch in enumerate(word):
        if ch in first:
            t, h = first[ch], pos
            if bits[ch]:
                quads.append((h - 1, t, h, (t - 1) % n2))
            else:
                quads.append((h - 1, (t - 1) % n2, h, t))
        else:
            first[ch] = pos
    occ: dict[int, int] = {}
    alpha = [0] * (4 * len(quads))
    for ci, q in enumerate(quads):
        for p, label in enumerate(q):
            d = 4 * ci + p
            if label in occ:
                e = occ[label]
                alpha[d], alpha[e] = e, d
            else:
                occ[label] = d
    seen = bytearray(len(alpha))
    faces = 0
    for start in range(len(alpha)):
        if seen[start]:
            continue
        faces += 1
        d = start
        while not seen[d]:
            seen[d] = 1
            e = alpha[d]
            d = e - e % 4 + (e % 4 + 1) % 4
    return faces


def planar_curves(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """``(word, bits)`` for every spherical curve with ``n`` double points.

    The first occurrence of a chord is its tail and ``bits[k]`` is 1 when
    chord ``k`` is positive in that orientation.
    """
    for word in chord_words(n):
        for bits in itertools.product((0, 1), repeat=n):
            if n == 0 or _faces(word, bits) == n + 2:
                yield word, bits


def diagram_of(word, bits, flips) -> GaussDiagram:
    first: set[int] = set()
    circle = []
    for ch in word:
        is_first = ch not in first
        first.add(ch)
        circle.append((ch + 1, is_first != bool(flips[ch])))
    # switching a crossing swaps tail and head and negates the sign
    sign = {ch + 1: (1 if bits[ch] else -1) * (-1 if flips[ch] else 1) for ch in range(len(bits))}
    return GaussDiagram.build([circle], sign)


def _symmetric(word) -> bool:
    n2 = len(word)
    return sum(1 for r in range(n2) if _relabel(word[r:] + word[:r]) == word) > 1


def classical_table(max_arrows: int) -> Iterator[GaussDiagram]:
    """All realizable signed one-circle diagrams with at most ``max_arrows``
    arrows, one per canonical key, in a deterministic order."""
    for _, _, _, g in classical_entries(max_arrows):
        yield g


def classical_entries(max_arrows: int):
    """``(word, bits, flips, diagram)`` for the entries of :func:`classical_table`."""
    for n in range(max_arrows + 1):
        seen: set[tuple] = set()
        last = None
        for word, bits in planar_curves(n):
            if word != last:
                # diagrams from different curves of one symmetric word may agree
                last, symmetric = word, _symmetric(word)
                seen.clear()
            for flips in itertools.product((0, 1), repeat=n):
                g = diagram_of(word, bits, flips)
                if symmetric:
                    code = _canonical_code(g)
                    if code in seen:
                        continue
                    seen.add(code)
                yield word, bits, flips, g


def _all_signed(word) -> Iterator[GaussDiagram]:
    n = len(word) // 2
    for dirs in itertools.product((0, 1), repeat=n):
        for signs in itertools.product((1, -1), repeat=n):
            first: set[int] = set()
            circle = []
            for ch in word:
                is_first = ch not in first
                first.add(ch)
                circle.append((ch + 1, is_first != bool(dirs[ch])))
            yield GaussDiagram.build([circle], {ch + 1: signs[ch] for ch in range(n)})


def _all_words(n: int) -> Iterator[tuple[int, ...]]:
    """Every chord diagram with ``n`` chords, one per rotation class."""
    if n == 0:
        yield ()
        return
    seen: set[tuple] = set()
    for perm in _matchings(list(range(2 * n))):
        word = [0] * (2 * n)
        for k, (i, j) in enumerate(perm):
            word[i] = word[j] = k
        w = _min_rotation(tuple(word))
        if w not in seen:
            seen.add(w)
            yield w


def _matchings(points):
    if not points:
        yield []
        return
    a = points[0]
    for idx in range(1, len(points)):
        b = points[idx]
        rest = points[1:idx] + points[idx + 1 :]
        for m in _matchings(rest):
            yield [(a, b)] + m


def virtual_table(max_arrows: int) -> Iterator[GaussDiagram]:
    """All signed one-circle Gauss diagrams up to canonical key."""
    for n in range(max_arrows + 1):
        for word in _all_words(n):
            if _symmetric(word):
                seen: set[tuple] = set()
                for g in _all_signed(word):
                    code = _canonical_code(g)
                    if code not in seen:
                        seen.add(code)
                        yield g
            else:
                yield from _all_signed(word)


def table(max_arrows: int, classical: bool = False) -> Iterator[GaussDiagram]:
    return classical_table(max_arrows) if classical else virtual_table(max_arrows)


# -- random generation --------------------------------------------------------


def random_gauss(rng: random.Random, n_arrows: int, n_circles: int = 1) -> GaussDiagram:
    """Uniformly placed endpoints on ``n_circles`` circles, random signs."""
    slots = [(l, o) for l in range(1, n_arrows + 1) for o in (True, False)]
    rng.shuffle(slots)
    circles: list[list] = [[] for _ in range(n_circles)]
    for k, s in enumerate(slots):
        # every circle gets at least one endpoint when there are enough
        circles[k if k < n_circles else rng.randrange(n_circles)].append(s)
    return GaussDiagram.build(circles, {l: rng.choice((1, -1)) for l in range(1, n_arrows + 1)})


def random_link(rng: random.Random, n_arrows: int, n_circles: int) -> GaussDiagram:
    return random_gauss(rng, n_arrows, n_circles)


def random_classical(rng: random.Random, n_arrows: int, tries: int = 10_000) -> GaussDiagram:
    """A random realizable one-circle diagram with exactly ``n_arrows`` arrows."""
    for _ in range(tries):
        word = _random_even_word(rng, n_arrows)
        bits = [rng.randrange(2) for _ in range(n_arrows)]
        if n_arrows == 0 or _faces(word, bits) == n_arrows + 2:
            flips = [rng.randrange(2) for _ in range(n_arrows)]
            g = diagram_of(word, bits, flips)
            r = rng.randrange(max(1, 2 * n_arrows))
            c = g.circles[0]
            return GaussDiagram.build([c[r:] + c[:r]], g.sign)
    raise RuntimeError("no realizable diagram found; raise the number of tries")


def _random_even_word(rng: random.Random, n: int) -> tuple[int, ...]:
    # evenness means every chord joins an even and an odd position
    evens = list(range(0, 2 * n, 2))
    odds = list(range(1, 2 * n, 2))
    rng.shuffle(odds)
    word = [0] * (2 * n)
    for i, j in zip(evens, odds):
        word[i] = word[j] = i
    return _relabel(word)
