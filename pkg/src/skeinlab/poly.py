"""Sparse Laurent polynomials with integer coefficients.

Every polynomial invariant in the package lives in the ring
``Z[a^±1, z^±1, l^±1, m^±1, t^±1]``.  A polynomial is an immutable mapping
from exponent vectors (ordered ``a, z, l, m, t``) to nonzero integers.
"""

from __future__ import annotations

import json
import re
from typing import Iterable, Mapping

__all__ = [
    "VARIABLES",
    "LaurentPoly",
    "NonMonomialBinding",
    "ExponentOverflow",
    "add",
    "mul",
    "substitute",
    "render",
    "parse",
]

VARIABLES = ("a", "z", "l", "m", "t")
_INDEX = {v: i for i, v in enumerate(VARIABLES)}
_NVARS = len(VARIABLES)
_ZERO_EXP = (0,) * _NVARS
_EXP_BOUND = 2**31 - 1


class NonMonomialBinding(ValueError):
    """A substitution target is not a signed Laurent monomial."""


class ExponentOverflow(OverflowError):
    pass


def _check_exp(exps: tuple[int, ...]) -> tuple[int, ...]:
    for e in exps:
        if e > _EXP_BOUND or e < -_EXP_BOUND:
            raise ExponentOverflow(f"exponent {e} outside 32-bit range")
    return exps


class LaurentPoly:
    """Immutable sparse Laurent polynomial.

    >>> a = LaurentPoly.var("a")
    >>> str(a**2 + 1 - a**2 + a**-2)
    '1+a^-2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], int] | None = None):
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != _NVARS:
                    raise ValueError(f"exponent vector must have length {_NVARS}")
                c = int(c)
                if c:
                    clean[_check_exp(tuple(int(e) for e in exps))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[tuple[int, ...], int]) -> LaurentPoly:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls._raw({_ZERO_EXP: int(c)} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> LaurentPoly:
        return cls.monomial(1, **{name: power})

    @classmethod
    def monomial(cls, coeff: int = 1, **powers: int) -> LaurentPoly:
        exps = [0] * _NVARS
        for name, p in powers.items():
            if name not in _INDEX:
                raise KeyError(f"unknown variable {name!r}")
            exps[_INDEX[name]] = int(p)
        return cls({tuple(exps): coeff})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coeff(self, **powers: int) -> int:
        exps = [0] * _NVARS
        for name, p in powers.items():
            exps[_INDEX[name]] = p
        return self._terms.get(tuple(exps), 0)

    def variables(self) -> set[str]:
        used = set()
        for exps in self._terms:
            for i, e in enumerate(exps):
                if e:
                    used.add(VARIABLES[i])
        return used

    def degree_range(self, name: str) -> tuple[int, int]:
        """Return ``(min, max)`` exponent of ``name``; ``(0, 0)`` for zero."""
        if not self._terms:
            return (0, 0)
        i = _INDEX[name]
        es = [exps[i] for exps in self._terms]
        return (min(es), max(es))

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exps, c in other._terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(exps, 0) + c1 * c2
                if s:
                    out[exps] = s
                else:
                    out.pop(exps, None)
        for exps in out:
            _check_exp(exps)
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (exps, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit to invert")
            return LaurentPoly._raw({_check_exp(tuple(-e * -n for e in exps)): c ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def divexact(self, divisor: LaurentPoly) -> LaurentPoly:
        """Exact division by a polynomial in a single variable.

        Raises ``ArithmeticError`` when the quotient is not a Laurent
        polynomial with integer coefficients.
        """
        dvars = divisor.variables()
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if len(dvars) > 1:
            raise ValueError("divisor must involve at most one variable")
        if not dvars:
            (c,) = divisor._terms.values()
            out = {}
            for e, v in self._terms.items():
                q, r = divmod(v, c)
                if r:
                    raise ArithmeticError("inexact integer division")
                out[e] = q
            return LaurentPoly._raw(out)
        i = _INDEX[dvars.pop()]
        dterms = sorted(((e[i], c) for e, c in divisor._terms.items()), reverse=True)
        dlead_e, dlead_c = dterms[0]
        rem = dict(self._terms)
        quot: dict[tuple[int, ...], int] = {}
        if not rem:
            return LaurentPoly()
        floor = min(e[i] for e in rem) - dterms[-1][0]
        while rem:
            lead = max(rem, key=lambda e: (e[i], e))
            q, r = divmod(rem[lead], dlead_c)
            qe = list(lead)
            qe[i] -= dlead_e
            if r or qe[i] < floor:
                raise ArithmeticError("division is not exact")
            qe = tuple(qe)
            quot[qe] = quot.get(qe, 0) + q
            for de, dc in dterms:
                te = list(qe)
                te[i] += de
                te = tuple(te)
                s = rem.get(te, 0) - q * dc
                if s:
                    rem[te] = s
                else:
                    rem.pop(te, None)
        return LaurentPoly({e: c for e, c in quot.items() if c})

    # -- substitution -----------------------------------------------------

    def substitute(self, bindings: Mapping[str, LaurentPoly]) -> LaurentPoly:
        """Apply a ring homomorphism sending each bound variable to a signed monomial."""
        mono: dict[int, tuple[tuple[int, ...], int]] = {}
        for name, target in bindings.items():
            if name not in _INDEX:
                raise KeyError(f"unknown variable {name!r}")
            if not isinstance(target, LaurentPoly) or not target.is_monomial():
                raise NonMonomialBinding(f"binding for {name!r} is not a monomial: {target}")
            (exps, c), = target._terms.items()
            if c not in (1, -1):
                raise NonMonomialBinding(f"binding for {name!r} has non-unit coefficient {c}")
            mono[_INDEX[name]] = (exps, c)
        out: dict[tuple[int, ...], int] = {}
        for exps, c in self._terms.items():
            new = [0] * _NVARS
            sign = 1
            for i, e in enumerate(exps):
                if i in mono and e:
                    texps, tc = mono[i]
                    for k in range(_NVARS):
                        new[k] += texps[k] * e
                    if tc == -1 and e % 2:
                        sign = -sign
                else:
                    new[i] += e
            key = _check_exp(tuple(new))
            s = out.get(key, 0) + sign * c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return LaurentPoly._raw(out)

    # -- text and JSON ----------------------------------------------------

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps in sorted(self._terms, reverse=True):
            c = self._terms[exps]
            body = "".join(
                VARIABLES[i] if e == 1 else f"{VARIABLES[i]}^{e}"
                for i, e in enumerate(exps)
                if e
            )
            if not body:
                mag = str(abs(c))
            elif abs(c) == 1:
                mag = body
            else:
                mag = f"{abs(c)}{body}"
            sign = "-" if c < 0 else "+"
            pieces.append(sign + mag)
        text = "".join(pieces)
        return text[1:] if text[0] == "+" else text

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LaurentPoly({self.render()!r})"

    def to_json(self) -> list[dict]:
        return [
            {
                "exponents": {VARIABLES[i]: e for i, e in enumerate(exps) if e},
                "coeff": str(self._terms[exps]),
            }
            for exps in sorted(self._terms, reverse=True)
        ]

    @classmethod
    def from_json(cls, data: str | Iterable[Mapping]) -> LaurentPoly:
        if isinstance(data, str):
            data = json.loads(data)
        out: dict[tuple[int, ...], int] = {}
        for term in data:
            exps = [0] * _NVARS
            for name, e in term.get("exponents", {}).items():
                exps[_INDEX[name]] = int(e)
            key = tuple(exps)
            out[key] = out.get(key, 0) + int(term["coeff"])
        return cls(out)

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        return parse(text)


_TERM_RE = re.compile(r"([+-]?)(\d*)((?:[azlmt](?:\^-?\d+)?)*)")
_FACTOR_RE = re.compile(r"([azlmt])(?:\^(-?\d+))?")


def parse(text: str) -> LaurentPoly:
    """Parse the canonical text produced by :meth:`LaurentPoly.render`."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return LaurentPoly()
    pos = 0
    out: dict[tuple[int, ...], int] = {}
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing sign before {s[pos:]!r}")
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            c = -c
        exps = [0] * _NVARS
        for f in _FACTOR_RE.finditer(m.group(3)):
            exps[_INDEX[f.group(1)]] += int(f.group(2)) if f.group(2) else 1
        key = tuple(exps)
        out[key] = out.get(key, 0) + c
        pos = m.end()
    return LaurentPoly(out)


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def substitute(p: LaurentPoly, bindings: Mapping[str, LaurentPoly]) -> LaurentPoly:
    return p.substitute(bindings)


def render(p: LaurentPoly) -> str:
    return p.render()
