"""Exact Laurent polynomials with integer coefficients.

Coefficients are Python ints, so arithmetic never wraps.  The text form
``c*t^e`` (terms in ascending exponent order, joined by ``" + "``) is the
canonical serialization used in fingerprint files.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

_TERM = re.compile(r"^\s*([+-]?\d+)\*t\^([+-]?\d+)\s*$")


class LaurentPoly:
    """Immutable mapping exponent -> nonzero integer coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            e, c = int(e), int(c)
            acc[e] = acc.get(e, 0) + c
        self._terms = {e: acc[e] for e in sorted(acc) if acc[e] != 0}
        self._hash = None

    # construction helpers

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentPoly":
        """Build from a dense coefficient list whose first entry has exponent ``low``."""
        return cls((low + i, c) for i, c in enumerate(coeffs))

    @classmethod
    def from_text(cls, text: str) -> "LaurentPoly":
        text = text.strip()
        if text == "0":
            return cls()
        terms = []
        for part in text.split(" + "):
            m = _TERM.match(part)
            if m is None:
                raise ValueError(f"malformed polynomial term {part!r} in {text!r}")
            terms.append((int(m.group(2)), int(m.group(1))))
        return cls(terms)

    # inspection

    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        return next(iter(self._terms)) if self._terms else 0

    @property
    def max_exp(self) -> int:
        return next(reversed(self._terms)) if self._terms else 0

    def coeffs(self) -> list[int]:
        """Dense coefficients from ``min_exp`` to ``max_exp``."""
        if not self._terms:
            return []
        lo = self.min_exp
        out = [0] * (self.max_exp - lo + 1)
        for e, c in self._terms.items():
            out[e - lo] = c
        return out

    def __call__(self, x):
        """Evaluate exactly; integer arguments are promoted to Fraction."""
        if isinstance(x, int):
            x = Fraction(x)
        total = sum(c * x**e for e, c in self._terms.items())
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    # algebra

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        return LaurentPoly(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient has no inverse")
            return LaurentPoly({e * k: c ** (-k)})
        out = LaurentPoly({0: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def invert_variable(self) -> "LaurentPoly":
        """Substitute ``t -> 1/t``."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def scale_exponents(self, num: int, den: int = 1) -> "LaurentPoly":
        """Replace every exponent ``e`` by ``e*num/den``; raises if not integral."""
        out = {}
        for e, c in self._terms.items():
            q, r = divmod(e * num, den)
            if r:
                raise ValueError(f"exponent {e}*{num}/{den} is not an integer")
            out[q] = c
        return LaurentPoly(out)

    # comparison / text

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*t^{e}" for e, c in self._terms.items())

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    raise TypeError(f"cannot combine LaurentPoly with {type(x).__name__}")


def poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of dense integer polynomials (lowest degree first).

    Used by fraction-free elimination, where every division is known to be
    exact; a nonzero remainder means the caller's invariant is broken.
    """
    num = _trim(list(num))
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if not num:
        return []
    if len(num) < len(den):
        raise ArithmeticError("inexact polynomial division")
    out = [0] * (len(num) - len(den) + 1)
    rem = num[:]
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c, r = divmod(rem[i + len(den) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = c
        if c:
            for j, d in enumerate(den):
                rem[i + j] -= c * d
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _trim(out)


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_sub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p
