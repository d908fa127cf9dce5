"""Sparse Laurent polynomials in one variable ``v`` with integer coefficients.

Values are immutable and kept in canonical form: no zero coefficient is ever
stored, so structural equality is polynomial equality.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

__all__ = ["LaurentPoly", "ZERO", "ONE", "V", "monomial", "parse_laurent"]


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for e, c in items:
            if c:
                acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "LaurentPoly":
        # caller guarantees canonical form
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw({0: c} if c else {})

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._terms.items()))

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def exponents(self) -> list[int]:
        return sorted(self._terms)

    def min_exponent(self) -> int:
        return min(self._terms)

    def max_exponent(self) -> int:
        return max(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(b) == 1:
            ((f, d),) = b.items()
            return LaurentPoly._raw({e + f: c * d for e, c in a.items()})
        if len(a) == 1:
            ((f, d),) = a.items()
            return LaurentPoly._raw({e + f: c * d for e, c in b.items()})
        out: dict[int, int] = {}
        for e, c in a.items():
            for f, d in b.items():
                out[e + f] = out.get(e + f, 0) + c * d
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            return LaurentPoly._raw({-e * (-n): c ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by ``v**e``."""
        if not e:
            return self
        return LaurentPoly._raw({k + e: c for k, c in self._terms.items()})

    def div_by_monomial(self, e: int) -> "LaurentPoly":
        return self.shift(-e)

    def bar(self) -> "LaurentPoly":
        """The involution ``v -> v^-1``."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def eval_at_one(self) -> int:
        return sum(self._terms.values())

    def exponent_parities(self) -> frozenset[str]:
        return frozenset("odd" if e % 2 else "even" for e in self._terms)

    def truncate(self, lo: int | None = None, hi: int | None = None) -> "LaurentPoly":
        """Keep exponents in the closed range ``[lo, hi]``."""
        return LaurentPoly._raw({
            e: c for e, c in self._terms.items()
            if (lo is None or e >= lo) and (hi is None or e <= hi)
        })

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- rendering --------------------------------------------------------

    def to_dict(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._terms.items())}

    @classmethod
    def from_dict(cls, d: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in d.items()})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(sorted(self._terms.items())):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "v" if e == 1 else f"v^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return NotImplemented


def monomial(e: int, c: int = 1) -> LaurentPoly:
    return LaurentPoly._raw({e: c} if c else {})


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
V = LaurentPoly._raw({1: 1})

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+)\s*(?P<star>\*)?\s*)?
        (?P<v>v(?:\s*\^\s*(?P<exp>[+-]?\d+|\(\s*[+-]?\d+\s*\)))?)?\s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the rendering produced by ``str`` (e.g. ``v^-2 + 2 + v^2``).

    Also accepts ``2v``, ``v^(-1)`` and ``v**-1``.
    """
    s = text.replace("**", "^").strip()
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return ZERO
    terms: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial at {s[pos:]!r}")
        sign, coef, star, vpart, exp = (m.group(k) for k in ("sign", "coef", "star", "v", "exp"))
        if not first and sign is None:
            raise ValueError(f"missing operator in {text!r}")
        if coef is None and vpart is None:
            raise ValueError(f"empty term in {text!r}")
        if star and vpart is None:
            raise ValueError(f"dangling '*' in {text!r}")
        c = int(coef) if coef is not None else 1
        if sign == "-":
            c = -c
        if vpart is None:
            e = 0
        elif exp is None:
            e = 1
        else:
            e = int(exp.strip("() "))
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(terms)
