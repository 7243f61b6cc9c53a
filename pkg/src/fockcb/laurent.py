"""Exact integer Laurent polynomials in q."""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Mapping


class LaurentPoly:
    """An element of Z[q, q^-1], stored as ``{exponent: nonzero coefficient}``.

    Instances are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | int | None = None):
        t: dict[int, int] = {}
        if terms is None:
            pass
        elif isinstance(terms, int):
            if terms:
                t[0] = terms
        else:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for ex, c in items:
                c = t.get(int(ex), 0) + int(c)
                if c:
                    t[int(ex)] = c
                else:
                    t.pop(int(ex), None)
        self._t = t
        self._hash = None

    @classmethod
    def _wrap(cls, t: dict[int, int]) -> "LaurentPoly":
        # trusted constructor: t has no zero coefficients
        p = object.__new__(cls)
        p._t = t
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls._wrap({exponent: coeff} if coeff else {})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._t)

    def items(self):
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def degree(self) -> int:
        if not self._t:
            raise ValueError("the zero polynomial has no degree")
        return max(self._t)

    def low_degree(self) -> int:
        if not self._t:
            raise ValueError("the zero polynomial has no degree")
        return min(self._t)

    def coeff(self, exponent: int) -> int:
        return self._t.get(exponent, 0)

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def at_one(self) -> int:
        return sum(self._t.values())

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if len(self._t) < len(other._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        t = dict(a)
        for ex, c in b.items():
            c += t.get(ex, 0)
            if c:
                t[ex] = c
            else:
                del t[ex]
        return LaurentPoly._wrap(t)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._wrap({ex: -c for ex, c in self._t.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return self.scale(other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if len(other._t) == 1:
            (ex, c), = other._t.items()
            return self.shift(ex).scale(c)
        if len(self._t) == 1:
            (ex, c), = self._t.items()
            return other.shift(ex).scale(c)
        t: dict[int, int] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                ex = e1 + e2
                t[ex] = t.get(ex, 0) + c1 * c2
        return LaurentPoly._wrap({ex: c for ex, c in t.items() if c})

    __rmul__ = __mul__

    def scale(self, c: int) -> "LaurentPoly":
        if c == 1:
            return self
        if c == 0:
            return ZERO
        return LaurentPoly._wrap({ex: c * v for ex, v in self._t.items()})

    def shift(self, s: int) -> "LaurentPoly":
        """Multiply by q^s."""
        if s == 0:
            return self
        return LaurentPoly._wrap({ex + s: c for ex, c in self._t.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def bar(self) -> "LaurentPoly":
        """The ring involution q -> q^-1."""
        return LaurentPoly._wrap({-ex: c for ex, c in self._t.items()})

    def positive_part(self) -> "LaurentPoly":
        return LaurentPoly._wrap({ex: c for ex, c in self._t.items() if ex > 0})

    # -- comparison, hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def sort_key(self):
        return tuple(sorted(self._t.items()))

    # -- text and JSON ----------------------------------------------------

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({to_text(self)!r})"

    def to_json(self) -> list[list[int]]:
        return [[ex, c] for ex, c in sorted(self._t.items())]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls((int(ex), int(c)) for ex, c in data)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
Q = LaurentPoly.monomial(1)
QINV = LaurentPoly.monomial(-1)


def q(exponent: int = 1, coeff: int = 1) -> LaurentPoly:
    """Shorthand for ``coeff * q**exponent``."""
    return LaurentPoly.monomial(exponent, coeff)


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def exact_div(p: LaurentPoly, m: LaurentPoly) -> LaurentPoly:
    """The Laurent polynomial ``p / m``; raises ArithmeticError if inexact."""
    p, m = _coerce(p), _coerce(m)
    if m.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    if m.is_monomial():
        (t, c), = m._t.items()
        out = {}
        for ex, v in p._t.items():
            quo, rem = divmod(v, c)
            if rem:
                raise ArithmeticError(f"{p} is not divisible by {m}")
            out[ex - t] = quo
        return LaurentPoly._wrap(out)
    rem = dict(p._t)
    mdeg, mlow = m.degree(), m.low_degree()
    lead = m._t[mdeg]
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        if top - mdeg < min(rem) - mlow:
            raise ArithmeticError(f"{p} is not divisible by {m}")
        c, r = divmod(rem[top], lead)
        if r:
            raise ArithmeticError(f"{p} is not divisible by {m}")
        s = top - mdeg
        quot[s] = c
        for ex, v in m._t.items():
            nv = rem.get(ex + s, 0) - c * v
            if nv:
                rem[ex + s] = nv
            else:
                rem.pop(ex + s, None)
    return LaurentPoly._wrap(quot)


def is_bar_antisymmetric(g: LaurentPoly) -> bool:
    return g.bar() == -g


def solve_bar_difference(g: LaurentPoly) -> LaurentPoly:
    """The unique f in qZ[q] with f - bar(f) = g."""
    if not is_bar_antisymmetric(g):
        raise ValueError(f"{g} is not antisymmetric under q -> q^-1")
    return g.positive_part()


@lru_cache(maxsize=None)
def quantum_integer(n: int) -> LaurentPoly:
    """Balanced quantum integer q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n < 0:
        raise ValueError("quantum integers are only defined here for n >= 0")
    return LaurentPoly._wrap({n - 1 - 2 * j: 1 for j in range(n)})


@lru_cache(maxsize=None)
def quantum_factorial(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("quantum factorials are only defined for n >= 0")
    out = ONE
    for i in range(2, n + 1):
        out = out * quantum_integer(i)
    return out


def _term_text(ex: int, c: int, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if ex == 0:
        body = str(a)
    else:
        var = "q" if ex == 1 else f"q^{ex}"
        body = var if a == 1 else f"{a}{var}"
    if first:
        return body if sign == "+" else "-" + body
    return f" {sign} {body}"


def to_text(p: LaurentPoly) -> str:
    """Canonical text form, ascending exponents: ``-q^-2 + 1 + 2q^3``."""
    items = p.items()
    if not items:
        return "0"
    return "".join(_term_text(ex, c, i == 0) for i, (ex, c) in enumerate(items))


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(q(?:\^(-?\d+))?)?")


def from_text(text: str) -> LaurentPoly:
    """Parse the canonical text form (spaces optional)."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ZERO
    t: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            ex = int(m.group(4)) if m.group(4) is not None else 1
        else:
            ex = 0
        t[ex] = t.get(ex, 0) + sign * coeff
        pos = m.end()
    return LaurentPoly(t)
