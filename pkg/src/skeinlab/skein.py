"""Skein-relation invariants of classical links.

* Kauffman bracket by a state sum over all resolutions.
* Jones polynomial ``(-a)^(-3w) <L>``.
* Conway and HOMFLY-PT polynomials by the descending-diagram skein tree:
  walk the components from their basepoints; the first crossing met from
  below is switched and smoothed, and a descending diagram is an unlink.
* Arf invariant as the ``z^2`` Conway coefficient mod 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .diagrams.convert import pd_to_gauss
from .diagrams.gauss import GaussDiagram, canonical_key
from .diagrams.planar import PlanarDiagram
from .errors import NonLaurentResult, NotAKnot, UnknownCrossing
from .poly import LaurentPoly

__all__ = [
    "SkeinTriple",
    "BracketPair",
    "skein_triple",
    "bracket_pair",
    "kauffman_bracket",
    "bracket_recursive",
    "jones",
    "conway",
    "homfly",
    "arf",
    "homfly_to_conway",
    "homfly_to_jones",
    "LOOP",
]

A = LaurentPoly.var("a")
Z = LaurentPoly.var("z")
L = LaurentPoly.var("l")
M = LaurentPoly.var("m")
ONE = LaurentPoly.const(1)
LOOP = -(A**2) - A**-2  # value of an extra circle in the bracket
_HOMFLY_LOOP = (L + L**-1) * M**-1


@dataclass(frozen=True)
class SkeinTriple:
    positive: PlanarDiagram
    negative: PlanarDiagram
    smoothed: PlanarDiagram


@dataclass(frozen=True)
class BracketPair:
    a_smoothing: PlanarDiagram
    b_smoothing: PlanarDiagram


def skein_triple(d: PlanarDiagram, c: int) -> SkeinTriple:
    if not d.crossings:
        raise UnknownCrossing("diagram has no crossings")
    d.check_crossing(c)
    return SkeinTriple(d.with_sign(c, 1), d.with_sign(c, -1), d.smooth_oriented(c))


def bracket_pair(d: PlanarDiagram, c: int) -> BracketPair:
    if not d.crossings:
        raise UnknownCrossing("diagram has no crossings")
    d.check_crossing(c)
    return BracketPair(d.smooth_unoriented(c, "A"), d.smooth_unoriented(c, "B"))


# -- Kauffman bracket and Jones ---------------------------------------------------


def _count_loops(crossings, states) -> int:
    parent: dict[int, int] = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while x != root:
            parent[x], x = root, parent[x]
        return root

    for (a, b, c, d), s in zip(crossings, states):
        pairs = ((a, b), (c, d)) if s else ((a, d), (b, c))
        for x, y in pairs:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
    labels = {x for q in crossings for x in q}
    return len({find(x) for x in labels})


def kauffman_bracket(d: PlanarDiagram) -> LaurentPoly:
    """State sum ``sum a^(#A - #B) (-a^2 - a^-2)^(loops - 1)``."""
    n = len(d.crossings)
    by_exp: dict[tuple[int, int], int] = {}
    for states in product((True, False), repeat=n):
        loops = _count_loops(d.crossings, states) + d.free_loops
        na = sum(states)
        key = (na - (n - na), loops - 1)
        by_exp[key] = by_exp.get(key, 0) + 1
    total = LaurentPoly()
    loop_powers: dict[int, LaurentPoly] = {}
    for (e, k), count in by_exp.items():
        if k not in loop_powers:
            loop_powers[k] = LOOP**k
        total = total + count * (A**e) * loop_powers[k]
    return total


def bracket_recursive(d: PlanarDiagram) -> LaurentPoly:
    """The bracket by expanding the last crossing with the skein relation."""
    if not d.crossings:
        return LOOP ** (d.free_loops - 1)
    pair = bracket_pair(d, len(d.crossings) - 1)
    return A * bracket_recursive(pair.a_smoothing) + A**-1 * bracket_recursive(pair.b_smoothing)


def jones(d: PlanarDiagram) -> LaurentPoly:
    w = d.writhe()
    factor = (-A) ** (-3 * w) if w <= 0 else ((-A) ** -1) ** (3 * w)
    return factor * kauffman_bracket(d)


# -- Gauss-level helpers for the skein tree --------------------------------------


def _strip_kinks(circles: list[list[tuple[int, bool]]], sign: dict[int, int]):
    """Remove arrows whose endpoints are adjacent on a circle (Reidemeister I)."""
    changed = True
    while changed:
        changed = False
        for ci, c in enumerate(circles):
            n = len(c)
            for i in range(n):
                j = (i + 1) % n
                if n >= 2 and c[i][0] == c[j][0]:
                    label = c[i][0]
                    circles[ci] = [s for s in c if s[0] != label]
                    del sign[label]
                    changed = True
                    break
            if changed:
                break
    return circles, sign


def _switch(circles, sign, label):
    circles = [[(l, (not o) if l == label else o) for l, o in c] for c in circles]
    sign = dict(sign)
    sign[label] = -sign[label]
    return circles, sign


def _smooth(circles, sign, label):
    """Oriented smoothing at an arrow: splits one circle or merges two."""
    loc = {}
    for ci, c in enumerate(circles):
        for pos, (l, _) in enumerate(c):
            if l == label:
                loc.setdefault(ci, []).append(pos)
    sign = dict(sign)
    del sign[label]
    rest = [c for ci, c in enumerate(circles) if ci not in loc]
    if len(loc) == 1:
        (ci, (i, j)), = loc.items()
        c = circles[ci]
        inner = c[i + 1 : j]
        outer = c[j + 1 :] + c[:i]
        return rest + [outer, inner], sign
    (c1, (i,)), (c2, (j,)) = sorted(loc.items())
    a, b = circles[c1], circles[c2]
    merged = a[:i] + b[j + 1 :] + b[:j] + a[i + 1 :]
    return rest + [merged], sign


def _violation(circles) -> int | None:
    seen = set()
    for c in circles:
        for label, over in c:
            if label not in seen:
                seen.add(label)
                if not over:
                    return label
    return None


def _key(circles, sign) -> str:
    cs = [c for c in circles if c] + [[] for c in circles if not c]
    return canonical_key(GaussDiagram.build(cs, sign))


_MEMO: dict[tuple, LaurentPoly] = {}
_MEMO_LIMIT = 500_000


def _remember(key, value):
    if len(_MEMO) > _MEMO_LIMIT:
        _MEMO.clear()
    _MEMO[key] = value
    return value


def _skein_tree(circles, sign, kind: str, seed) -> LaurentPoly:
    circles, sign = _strip_kinks([list(c) for c in circles], dict(sign))
    memo_key = (kind, seed, _key(circles, sign))
    if memo_key in _MEMO:
        return _MEMO[memo_key]
    label = _violation(circles)
    if label is None:
        k = len(circles)
        if kind == "conway":
            value = ONE if k == 1 else LaurentPoly()
        else:
            value = _HOMFLY_LOOP ** (k - 1) if k > 1 else ONE
        return _remember(memo_key, value)
    s = sign[label]
    sw = _skein_tree(*_switch(circles, sign, label), kind, seed)
    sm = _skein_tree(*_smooth(circles, sign, label), kind, seed)
    if kind == "conway":
        value = sw + Z * sm if s > 0 else sw - Z * sm
    elif s > 0:
        # l P+ + l^-1 P- = m P0  =>  P+ = l^-1 m P0 - l^-2 P-
        value = L**-1 * M * sm - L**-2 * sw
    else:
        value = L * M * sm - L**2 * sw
    return _remember(memo_key, value)


def _run_tree(d: PlanarDiagram | GaussDiagram, kind: str, seed: int | None) -> LaurentPoly:
    g = d if isinstance(d, GaussDiagram) else pd_to_gauss(d)
    circles = [list(c) for c in g.circles]
    if seed is not None:
        # basepoints and component order are fixed once; the recursion keeps them
        rng = random.Random(seed)
        rng.shuffle(circles)
        circles = [c[k:] + c[:k] for c in circles for k in [rng.randrange(len(c)) if c else 0]]
    return _skein_tree(circles, g.sign, kind, seed)


def conway(d: PlanarDiagram, seed: int | None = None) -> LaurentPoly:
    """Conway polynomial in ``z``.

    ``seed`` randomises component order and basepoints; the value must not
    depend on it.
    """
    return _run_tree(d, "conway", seed)


def homfly(d: PlanarDiagram, seed: int | None = None) -> LaurentPoly:
    """HOMFLY-PT polynomial in ``l, m`` with ``l P+ + l^-1 P- = m P0``."""
    value = _run_tree(d, "homfly", seed)
    k = d.n_components if isinstance(d, PlanarDiagram) else d.n_circles
    if not value.is_zero() and value.degree_range("m")[0] < 1 - k:
        raise NonLaurentResult(f"m-degree {value.degree_range('m')[0]} below {1 - k}")
    return value


def arf(d: PlanarDiagram) -> int:
    if d.n_components != 1:
        raise NotAKnot("the Arf invariant is defined here for knots only")
    return conway(d).coeff(z=2) % 2


# -- specialisations ---------------------------------------------------------------


def _i_power(n: int) -> int:
    if n % 2:
        raise ArithmeticError("odd power of i in a specialisation; parity rule violated")
    return -1 if (n // 2) % 2 else 1


def homfly_to_conway(p: LaurentPoly) -> LaurentPoly:
    """Image under ``l -> i, m -> i z``.

    Every term ``l^p m^q`` of a HOMFLY-PT polynomial has ``p + q`` even,
    so the image has integer coefficients.
    """
    out = LaurentPoly()
    for (a, z, l, m, t), c in p.items():
        out = out + LaurentPoly.monomial(c * _i_power(l + m), z=m)
    return out


def homfly_to_jones(p: LaurentPoly) -> LaurentPoly:
    """Image under ``l -> -i a^4, m -> i (a^2 - a^-2)``.

    Negative powers of ``m`` are cleared by multiplying through and dividing
    exactly at the end.
    """
    shift = max(0, -p.degree_range("m")[0])
    delta = A**2 - A**-2
    acc = LaurentPoly()
    for (a, z, l, m, t), c in p.items():
        acc = acc + c * (-1) ** (l % 2) * _i_power(l + m) * A ** (4 * l) * delta ** (m + shift)
    return acc.divexact(delta**shift) if shift else acc
