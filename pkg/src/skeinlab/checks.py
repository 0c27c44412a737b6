"""Randomised property suites shared by the test-suite and the CLI.

Each suite returns a list of :class:`PropertyResult`; a suite passes when
no result records a failure.  All randomness flows from one seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from . import skein, vinv
from .diagrams.convert import realize
from .diagrams.gauss import GaussDiagram, canonical_key, connected_sum
from .diagrams.planar import PlanarDiagram
from .diagrams.tables import random_classical, random_gauss
from .moves.rules import REIDEMEISTER, _RULES, get_rule, moves_with_results
from .moves.search import Bounds, decide_quotient, equivalent_mod, invariant_value, replay
from .poly import LaurentPoly

__all__ = [
    "PropertyResult",
    "SUITES",
    "run_suite",
    "skein_suite",
    "rmoves_suite",
    "preservation_suite",
    "quotients_suite",
    "soundness_fuzz",
    "random_planar",
    "sample_application",
]

A = LaurentPoly.var("a")
Z = LaurentPoly.var("z")
L = LaurentPoly.var("l")
M = LaurentPoly.var("m")


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: int = 0
    examples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def fail(self, detail) -> None:
        self.failures += 1
        if len(self.examples) < 5:
            self.examples.append(str(detail))

    def to_json(self) -> dict:
        return {"property": self.name, "checked": self.checked, "failures": self.failures,
                "examples": self.examples}


def random_planar(rng: random.Random, lo: int = 1, hi: int = 8) -> PlanarDiagram:
    return realize(random_classical(rng, rng.randint(lo, hi)))


# -- skein conformance ----------------------------------------------------------


def skein_suite(seed: int = 0, count: int = 200, max_crossings: int = 8) -> list[PropertyResult]:
    """The three skein relations at every crossing of random classical diagrams."""
    rng = random.Random(seed)
    conway = PropertyResult("conway: C(L+) - C(L-) = z C(L0)")
    homfly = PropertyResult("homfly: l P(L+) + l^-1 P(L-) = m P(L0)")
    bracket = PropertyResult("bracket: <L> = a <L_A> + a^-1 <L_B>")
    for _ in range(count):
        d = random_planar(rng, 1, max_crossings)
        for c in range(d.n_crossings):
            t = skein.skein_triple(d, c)
            conway.checked += 1
            if skein.conway(t.positive) - skein.conway(t.negative) != Z * skein.conway(t.smoothed):
                conway.fail((str(d), c))
            homfly.checked += 1
            lhs = L * skein.homfly(t.positive) + L**-1 * skein.homfly(t.negative)
            if lhs != M * skein.homfly(t.smoothed):
                homfly.fail((str(d), c))
            p = skein.bracket_pair(d, c)
            bracket.checked += 1
            rhs = A * skein.kauffman_bracket(p.a_smoothing) + A**-1 * skein.kauffman_bracket(p.b_smoothing)
            if skein.kauffman_bracket(d) != rhs:
                bracket.fail((str(d), c))
    return [conway, homfly, bracket]


def normalization_results() -> list[PropertyResult]:
    out = []
    checks = [
        ("jones(unknot) = 1", skein.jones(PlanarDiagram.unknot()), LaurentPoly.const(1)),
        ("conway(2-unlink) = 0", skein.conway(PlanarDiagram.unknot(2)), LaurentPoly()),
        ("homfly(2-unlink) = (l + l^-1) m^-1", skein.homfly(PlanarDiagram.unknot(2)), (L + L**-1) * M**-1),
    ]
    for name, got, want in checks:
        r = PropertyResult(name, 1)
        if got != want:
            r.fail(f"{got.render()} != {want.render()}")
        out.append(r)
    return out


# -- applications of moves -----------------------------------------------------------


def _random_knot(rng, lo=2, hi=7) -> GaussDiagram:
    return random_gauss(rng, rng.randint(lo, hi), 1)


def _random_link(rng, lo=2, hi=7) -> GaussDiagram:
    return random_gauss(rng, rng.randint(lo, hi), rng.randint(1, 3))


def _with_shell(rng, g: GaussDiagram) -> GaussDiagram:
    sites = moves_with_results(g, "r1+")
    return rng.choice(sites)[1]


_SOURCES = {
    "planar": lambda rng: random_planar(rng, 1, 7),
    "knot": _random_knot,
    "link": _random_link,
    "shell": lambda rng: _with_shell(rng, _random_knot(rng, 1, 6)),
    "shell_link": lambda rng: _with_shell(rng, _random_link(rng, 1, 6)),
}

# where each rule draws its diagrams from
_DOMAINS = {
    "r1+": ("planar", "knot", "link"),
    "r1-": ("planar", "shell", "shell_link"),
    "r2": ("planar", "knot", "link"),
    "r3": ("planar", "knot", "link"),
    "cc": ("planar", "knot", "link"),
    "vc": ("knot", "link"),
    "vdel": ("knot", "link"),
    "fo": ("knot", "link"),
    "fu": ("knot", "link"),
    "fm": ("knot", "link"),
    "xi": ("knot", "link"),
    "s1": ("shell", "shell_link"),
    "s2": ("shell", "shell_link"),
    "wbp": ("link", "knot"),
    "delta": ("planar",),
    "pass": ("planar",),
    "sharp": ("planar",),
}


def sample_application(rng: random.Random, rule: str, tries: int = 2000):
    """A random ``(diagram, site, result)`` for ``rule``.

    Draws diagrams from the rule's domain until one has a site.
    """
    domains = _DOMAINS[rule]
    for _ in range(tries):
        d = _SOURCES[rng.choice(domains)](rng)
        options = moves_with_results(d, rule)
        if options:
            site, out = rng.choice(options)
            return d, site, out
    raise RuntimeError(f"no site for {rule!r} found in {tries} random diagrams")


def _applicable(name: str, d) -> bool:
    return invariant_value(name, d) is not None


def _application_suite(rng, rules, invariants_for, count, label) -> list[PropertyResult]:
    results = []
    for rule in rules:
        res = PropertyResult(f"{label}: {rule}")
        for _ in range(count):
            d, site, out = sample_application(rng, rule)
            res.checked += 1
            for name in invariants_for(rule):
                before = invariant_value(name, d)
                if before is None:
                    continue
                after = invariant_value(name, out)
                if before != after:
                    res.fail({"rule": rule, "invariant": name, "diagram": str(d), "site": site.anchor})
                    break
        results.append(res)
    return results


def rmoves_suite(seed: int = 0, count: int = 500) -> list[PropertyResult]:
    """Random Reidemeister moves leave every implemented invariant unchanged."""
    rng = random.Random(seed)
    res = PropertyResult("reidemeister moves keep every invariant")
    from .moves.rules import INVARIANTS

    for _ in range(count):
        rule = rng.choice(REIDEMEISTER)
        d, site, out = sample_application(rng, rule)
        res.checked += 1
        for name in INVARIANTS:
            before = invariant_value(name, d)
            if before is not None and before != invariant_value(name, out):
                res.fail({"rule": rule, "invariant": name, "diagram": str(d), "site": site.anchor})
                break
    return [res]


def preservation_suite(seed: int = 0, count: int = 500, rules=None) -> list[PropertyResult]:
    """Every invariant a rule registers as preserved survives its applications."""
    rng = random.Random(seed)
    names = rules or [r for r in _RULES if r not in REIDEMEISTER]
    return _application_suite(
        rng, names, lambda r: sorted(get_rule(r).preserves), count, "preserved"
    )


def theorem_directions(seed: int = 0, count: int = 500) -> list[PropertyResult]:
    """The directions stated by the classification theorems."""
    rng = random.Random(seed)
    plan = [("xi", ["odd_writhe"]), ("s1", ["index_polynomial"]), ("s2", ["index_polynomial"]),
            ("fo", ["linking_matrix"]), ("fu", ["linking_matrix"]), ("pass", ["arf"])]
    out = []
    for rule, invs in plan:
        out += _application_suite(rng, [rule], lambda r, invs=invs: invs, count, "+".join(invs))
    return out


# -- quotients and soundness ----------------------------------------------------------

_SMALL = Bounds(crossing_cap=None, node_cap=40, depth_cap=3)
_FUZZ = Bounds(crossing_cap=None, node_cap=12, depth_cap=3)


def _random_pair(rng):
    if rng.random() < 0.5:
        g = _random_knot(rng, 1, 4)
        if rng.random() < 0.5:
            return g, _random_knot(rng, 1, 4)
        # a nearby diagram: a few random moves away
        h = g
        for _ in range(rng.randint(1, 3)):
            rule = rng.choice(("xi", "r1+", "r2", "fo", "cc"))
            opts = moves_with_results(h, rule)
            if opts:
                h = rng.choice(opts)[1]
        return g, h
    return _random_link(rng, 1, 4), _random_link(rng, 1, 4)


def quotients_suite(seed: int = 0, count: int = 60) -> list[PropertyResult]:
    """decide_quotient and equivalent_mod never contradict each other."""
    rng = random.Random(seed)
    res = PropertyResult("xi search agrees with the odd writhe decision")
    shell = PropertyResult("shell search agrees with the index polynomial decision")
    fused = PropertyResult("fo/fu search agrees with the linking matrix decision")
    for _ in range(count):
        g = _random_knot(rng, 1, 4)
        h = _random_knot(rng, 1, 4) if rng.random() < 0.5 else _nearby(rng, g, "xi")
        for r, quot, rules in ((res, "xi", ["xi"]), (shell, "shell", ["s1", "s2"])):
            r.checked += 1
            verdict = equivalent_mod(g, h, rules, _SMALL).verdict
            decision = decide_quotient(g, h, quot)
            if verdict == "Equivalent" and decision != "Equivalent":
                r.fail((str(g), str(h)))
        a = _random_link(rng, 1, 4)
        b = _nearby(rng, a, "fo")
        fused.checked += 1
        out = equivalent_mod(a, b, ["fo", "fu"], _SMALL)
        if out.verdict == "Equivalent":
            # the search works up to the order of the circles
            if vinv.linking_matrix(a).canonical() != vinv.linking_matrix(b).canonical():
                fused.fail((str(a), str(b)))
    return [res, shell, fused]


def _nearby(rng, g, rule):
    h = g
    for _ in range(rng.randint(1, 3)):
        opts = moves_with_results(h, rng.choice((rule, "r2", "r1+", "r3")))
        if opts:
            h = rng.choice(opts)[1]
    return h


def soundness_fuzz(seed: int = 0, count: int = 1000) -> list[PropertyResult]:
    """equivalent_mod never says Equivalent for pairs an invariant separates."""
    rng = random.Random(seed)
    res = PropertyResult("no Equivalent verdict for separated pairs")
    replayed = PropertyResult("every Equivalent path replays to the target")
    rule_sets = [[], ["xi"], ["fo", "fu"], ["cc"], ["vc"], ["s1", "s2"], ["fm"], ["wbp"], ["xi", "fo"]]
    for _ in range(count):
        g, h = _random_pair(rng)
        rules = rng.choice(rule_sets)
        out = equivalent_mod(g, h, rules, _FUZZ)
        res.checked += 1
        if out.verdict == "Equivalent":
            replayed.checked += 1
            if canonical_key(replay(g, out.path)) != canonical_key(h):
                replayed.fail((str(g), str(h), rules))
            keep = set.intersection(*(set(get_rule(r).preserves) for r in rules)) if rules else None
            from .moves.rules import INVARIANTS

            for name in INVARIANTS:
                if keep is not None and name not in keep:
                    continue
                a, b = invariant_value(name, g), invariant_value(name, h)
                if a is not None and a != b:
                    res.fail((str(g), str(h), rules, name))
                    break
            if rules == ["xi"] and g.is_knot() and decide_quotient(g, h, "xi") != "Equivalent":
                res.fail((str(g), str(h), "xi decision"))
            if rules == ["s1", "s2"] and g.is_knot() and decide_quotient(g, h, "shell") != "Equivalent":
                res.fail((str(g), str(h), "shell decision"))
    return [res, replayed]


# -- specialisation over the classical table ---------------------------------------


def _flip_brackets(d0: PlanarDiagram, n: int) -> np.ndarray:
    """Bracket coefficients of every switching pattern of ``d0``.

    Row ``f`` holds the coefficients of ``a^e`` for ``e = -E..E`` when the
    crossings in the bit set ``f`` are switched.  Switching a crossing swaps
    its A and B smoothings, so one loop count per state of ``d0`` serves
    every pattern.
    """
    size = 1 << n
    states = np.arange(size)
    loops = np.array([
        skein._count_loops(d0.crossings, [not (st >> k) & 1 for k in range(n)]) + d0.free_loops
        for st in states
    ])
    n_b = np.array([bin(st).count("1") for st in states])
    top = int(loops.max())
    # basis[j, l]: a^(n - 2j) (-a^2 - a^-2)^(l - 1)
    span = n + 2 * top
    basis = np.zeros((n + 1, top + 1, 2 * span + 1), dtype=np.int64)
    for l in range(1, top + 1):
        for k in range(l):
            c = (-1) ** (l - 1) * math.comb(l - 1, k)
            e = 2 * k - 2 * (l - 1 - k)
            for j in range(n + 1):
                basis[j, l, span + n - 2 * j + e] += c
    cells = (n_b[None, :] * (top + 1) + loops[states[None, :] ^ states[:, None]]).astype(np.int64)
    cells += np.arange(size)[:, None] * (n + 1) * (top + 1)
    counts = np.bincount(cells.ravel(), minlength=size * (n + 1) * (top + 1))
    counts = counts.reshape(size, (n + 1) * (top + 1))
    return counts @ basis.reshape((n + 1) * (top + 1), -1), span


def _dense_jones(p: LaurentPoly) -> dict[int, int]:
    return {e[0]: c for e, c in p.items()}


def specialization_table(max_crossings: int = 7, sample: int = 2000, seed: int = 0) -> list[PropertyResult]:
    """HOMFLY-PT against Conway and Jones on every classical table entry.

    The Conway side runs the Conway skein tree; the Jones side is the
    bracket state sum, batched over the switchings of each curve.  A random
    sample of entries is also checked against :func:`skein.jones` on the
    realized diagram.
    """
    from .diagrams.tables import classical_entries, diagram_of

    rng = random.Random(seed)
    to_conway = PropertyResult("homfly specialises to conway on the classical table")
    to_jones = PropertyResult("homfly specialises to jones on the classical table")
    direct = PropertyResult("batched bracket agrees with jones(realize(g))")
    images: dict[LaurentPoly, tuple] = {}
    current = None
    for word, bits, flips, g in classical_entries(max_crossings):
        n = len(bits)
        if (word, bits) != current:
            current = (word, bits)
            d0 = realize(diagram_of(word, bits, (0,) * n))
            rows, span = _flip_brackets(d0, n)
        h = skein.homfly(g)
        if h not in images:
            images[h] = (skein.homfly_to_conway(h), _dense_jones(skein.homfly_to_jones(h)))
        c_img, j_img = images[h]
        to_conway.checked += 1
        if skein.conway(g) != c_img:
            to_conway.fail(str(g))
        f = sum(b << k for k, b in enumerate(flips))
        w = sum(sg for _, sg in g.signs)
        row = rows[f]
        nz = np.nonzero(row)[0]
        jones = {int(e) - span - 3 * w: int(row[e]) * (-1) ** (w % 2) for e in nz}
        to_jones.checked += 1
        if jones != j_img:
            to_jones.fail(str(g))
        if n <= 3 or (direct.checked < sample and rng.random() < 0.002):
            direct.checked += 1
            if _dense_jones(skein.jones(realize(g))) != jones:
                direct.fail(str(g))
    return [to_conway, to_jones, direct]


# -- classical vanishing and additivity ---------------------------------------------


def classicality_table(max_arrows: int = 8, chunk: int = 128, sample: int = 500, seed: int = 0) -> list[PropertyResult]:
    """Odd writhe and index polynomial vanish on every realizable diagram.

    Every spherical curve with at most ``max_arrows`` double points is taken
    with every over/under choice; indices come from :func:`vinv.switch_indices`
    and a random sample is recomputed one diagram at a time.
    """
    from .diagrams.tables import diagram_of, planar_curves

    rng = random.Random(seed)
    odd = PropertyResult("J = 0 on realizable diagrams")
    wpoly = PropertyResult("W(t) = 0 on realizable diagrams")
    scalar = PropertyResult("batched indices agree with gaussian_index")

    def run(batch, n):
        words = [w for w, _ in batch]
        bits = np.asarray([b for _, b in batch], dtype=np.int64).reshape(len(batch), n)
        ind = vinv.switch_indices(words, bits)
        flips = (np.arange(1 << n)[:, None] >> np.arange(n)[None, :]) & 1
        sign = (2 * bits[:, None, :] - 1) * (1 - 2 * flips[None, :, :])
        j = (sign * (ind % 2)).sum(axis=2)
        bad = np.argwhere(j != 0)
        odd.checked += j.size
        for k, f in bad[:5]:
            odd.fail((words[k], tuple(bits[k]), int(f)))
        odd.failures += max(0, len(bad) - 5)
        # W vanishes when, for every index value v != 0, the signs at index v cancel
        wpoly.checked += j.size
        values = np.arange(-2 * n, 2 * n + 1)
        values = values[values != 0]
        per_value = (sign[..., None] * (ind[..., None] == values)).sum(axis=2)
        bad = np.argwhere(np.any(per_value != 0, axis=2))
        for k, f in bad[:5]:
            wpoly.fail((words[k], tuple(bits[k]), int(f)))
        wpoly.failures += max(0, len(bad) - 5)
        for _ in range(min(4, len(batch))):
            if scalar.checked >= sample:
                break
            k, f = rng.randrange(len(batch)), rng.randrange(1 << n)
            g = diagram_of(words[k], tuple(int(x) for x in bits[k]), tuple(int(x) for x in flips[f]))
            scalar.checked += 1
            expect = [vinv.gaussian_index(g, c + 1) for c in range(n)]
            if expect != [int(x) for x in ind[k, f]]:
                scalar.fail(str(g))

    for n in range(max_arrows + 1):
        batch = []
        for word, bits in planar_curves(n):
            batch.append((word, bits))
            if len(batch) == chunk:
                run(batch, n)
                batch = []
        if batch:
            run(batch, n)
    return [odd, wpoly, scalar]



def additivity(sample: list[GaussDiagram]) -> list[PropertyResult]:
    arf = PropertyResult("arf(K1 # K2) = arf(K1) + arf(K2) mod 2")
    odd = PropertyResult("J(K1 # K2) = J(K1) + J(K2)")
    for k1 in sample:
        for k2 in sample:
            s = connected_sum(k1, k2)
            odd.checked += 1
            if vinv.odd_writhe(s) != vinv.odd_writhe(k1) + vinv.odd_writhe(k2):
                odd.fail((str(k1), str(k2)))
            try:
                p1, p2, ps = realize(k1), realize(k2), realize(s)
            except Exception:
                continue
            arf.checked += 1
            if skein.arf(ps) != (skein.arf(p1) + skein.arf(p2)) % 2:
                arf.fail((str(k1), str(k2)))
    return [arf, odd]


SUITES = ("skein", "rmoves", "preservation", "quotients", "all")


def run_suite(name: str, seed: int = 0) -> list[PropertyResult]:
    if name == "skein":
        return normalization_results() + skein_suite(seed)
    if name == "rmoves":
        return rmoves_suite(seed)
    if name == "preservation":
        return preservation_suite(seed, count=100) + theorem_directions(seed)
    if name == "quotients":
        return quotients_suite(seed) + soundness_fuzz(seed, count=200)
    if name == "all":
        out = []
        for s in SUITES[:-1]:
            out += run_suite(s, seed)
        return out
    raise KeyError(name)

