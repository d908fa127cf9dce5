"""Iwahori-Hecke algebra over Z[v, v^-1], standard basis arithmetic and KL bases.

Normalisation: ``T_s^2 = (v^-2 - 1) T_s + v^-2``, ``H_w = v^l(w) T_w``, so
``C'_s = v T_s + v = H_s + v``.  Elements are stored in the ``T`` basis.
"""

from __future__ import annotations

import os
from typing import Callable, Iterable, Mapping

from .coxeter import CoxeterSystem, Element
from .laurent import ONE, ZERO, LaurentPoly, monomial

__all__ = [
    "HeckeElement",
    "HeckeAlgebra",
    "Basis",
    "hecke_algebra",
    "T_BASIS",
    "H_BASIS",
    "C_BASIS",
    "CPRIME_BASIS",
    "expand_in_basis",
    "reconstruct",
]

_QUAD_LIN = monomial(-2) - ONE  # v^-2 - 1
_QUAD_CONST = monomial(-2)  # v^-2
_INV_LIN = monomial(2)  # T_s^-1 = v^2 T_s + (v^2 - 1)
_INV_CONST = monomial(2) - ONE


def _length(w: Element) -> int:
    return w.length


class HeckeElement:
    """Finitely supported map ``Element -> LaurentPoly`` (coefficients of ``T_w``)."""

    __slots__ = ("system", "_terms")

    def __init__(self, system: CoxeterSystem, terms: Mapping[Element, LaurentPoly] | None = None):
        self.system = system
        self._terms = {w: p for w, p in (terms or {}).items() if p}

    @classmethod
    def _raw(cls, system, terms):
        h = object.__new__(cls)
        h.system = system
        h._terms = terms
        return h

    # -- access ---------------------------------------------------------

    @property
    def terms(self) -> dict[Element, LaurentPoly]:
        return dict(self._terms)

    def support(self) -> list[Element]:
        return sorted(self._terms, key=Element.sort_key)

    def coeff(self, w: Element) -> LaurentPoly:
        return self._terms.get(w, ZERO)

    def __getitem__(self, w: Element) -> LaurentPoly:
        return self.coeff(w)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.support())

    def items(self):
        return [(w, self._terms[w]) for w in self.support()]

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, HeckeElement):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- linear structure -------------------------------------------------

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = dict(self._terms)
        for w, p in other._terms.items():
            q = out.get(w)
            q = p if q is None else q + p
            if q:
                out[w] = q
            else:
                out.pop(w, None)
        return HeckeElement._raw(self.system, out)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement._raw(self.system, {w: -p for w, p in self._terms.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> "HeckeElement":
        if isinstance(c, int):
            c = LaurentPoly.const(c)
        if not c:
            return HeckeElement._raw(self.system, {})
        return HeckeElement._raw(self.system, {w: p * c for w, p in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return hecke_algebra(self.system).mul(self, other)
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    # -- generator multiplication --------------------------------------------

    def mul_gen(self, s: int, side: str = "right", power: int = 1) -> "HeckeElement":
        """Multiply by ``T_s`` (power +1) or ``T_s^-1`` (power -1) on the given side."""
        if power not in (1, -1):
            raise ValueError("power must be +1 or -1")
        out: dict[Element, LaurentPoly] = {}

        def add(w, p):
            q = out.get(w)
            q = p if q is None else q + p
            if q:
                out[w] = q
            else:
                out.pop(w, None)

        right = side == "right"
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        for w, p in self._terms.items():
            ws = w.rmul_gen(s) if right else w.lmul_gen(s)
            up = (s not in w.right_descents()) if right else ws.length > w.length
            if power == 1:
                if up:
                    add(ws, p)
                else:
                    add(w, p * _QUAD_LIN)
                    add(ws, p * _QUAD_CONST)
            else:
                if up:
                    add(ws, p * _INV_LIN)
                    add(w, p * _INV_CONST)
                else:
                    add(ws, p)
        return HeckeElement._raw(self.system, out)

    def mul_word(self, word: Iterable[tuple[int, int]], side: str = "right") -> "HeckeElement":
        """Multiply successively by ``T_{s}^{eps}`` for ``(s, eps)`` in ``word``."""
        h = self
        if side == "right":
            for s, eps in word:
                h = h.mul_gen(s, "right", eps)
        else:
            for s, eps in reversed(list(word)):
                h = h.mul_gen(s, "left", eps)
        return h

    # -- involutions ------------------------------------------------------

    def bar(self) -> "HeckeElement":
        return hecke_algebra(self.system).bar(self)

    def j(self) -> "HeckeElement":
        out = {}
        for w, p in self._terms.items():
            ell = w.length
            q = p.bar().shift(2 * ell)
            out[w] = -q if ell % 2 else q
        return HeckeElement._raw(self.system, out)

    def eval_at_one(self) -> dict[Element, int]:
        return {w: p.eval_at_one() for w, p in self._terms.items() if p.eval_at_one()}

    # -- rendering ----------------------------------------------------------

    def to_list(self) -> list[list[str]]:
        return [[str(w), str(p)] for w, p in self.items()]

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({p})*T[{w}]" for w, p in self.items())

    def __repr__(self):
        return f"HeckeElement({str(self)})"


class Basis:
    """A basis ``{B_x}`` unitriangular up to a monomial: ``B_x = u v^d T_x + (terms below x)``."""

    name = "basis"

    def element(self, x: Element) -> HeckeElement:
        raise NotImplementedError

    def __str__(self):
        return self.name


class _FnBasis(Basis):
    def __init__(self, name: str, fn: Callable[[HeckeAlgebra, Element], HeckeElement]):
        self.name = name
        self._fn = fn

    def element(self, x: Element) -> HeckeElement:
        return self._fn(hecke_algebra(x.system), x)


T_BASIS = _FnBasis("T", lambda alg, x: alg.t(x))
H_BASIS = _FnBasis("H", lambda alg, x: alg.h(x))
C_BASIS = _FnBasis("C", lambda alg, x: alg.c(x))
CPRIME_BASIS = _FnBasis("C'", lambda alg, x: alg.cprime(x))


def _cache_cap() -> int | None:
    raw = os.environ.get("MIKADO_CACHE_MAX")
    if not raw:
        return None
    return max(int(raw), 0)


class HeckeAlgebra:
    """Per-system caches: ``bar(T_w)``, ``C'_w`` and ``C_w`` (grow-only, write-once)."""

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self._one = HeckeElement._raw(system, {system.identity: ONE})
        self._bar_t: dict[Element, HeckeElement] = {system.identity: self._one}
        self._cprime: dict[Element, HeckeElement] = {system.identity: self._one}
        self._c: dict[Element, HeckeElement] = {system.identity: self._one}
        self.cap = _cache_cap()

    def _store(self, cache: dict, key, value):
        if self.cap is None or len(cache) < self.cap:
            cache.setdefault(key, value)
        return value

    # -- basis elements -------------------------------------------------------

    def one(self) -> HeckeElement:
        return self._one

    def zero(self) -> HeckeElement:
        return HeckeElement._raw(self.system, {})

    def t(self, w: Element) -> HeckeElement:
        return HeckeElement._raw(self.system, {w: ONE})

    def h(self, w: Element) -> HeckeElement:
        return HeckeElement._raw(self.system, {w: monomial(w.length)})

    def t_inverse(self, w: Element) -> HeckeElement:
        """``T_w^-1 = T_{s_k}^-1 ... T_{s_1}^-1`` for a reduced word ``s_1 ... s_k``."""
        return self.one().mul_word([(s, -1) for s in reversed(w.reduced_word)])

    def from_word(self, word: Iterable[tuple[int, int]]) -> HeckeElement:
        return self.one().mul_word(word)

    # -- products ----------------------------------------------------------

    def mul(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        if not a._terms or not b._terms:
            return self.zero()
        cost_a = sum(w.length for w in a._terms)
        cost_b = sum(w.length for w in b._terms)
        out = self.zero()
        if cost_b <= cost_a:
            for w, p in b._terms.items():
                out = out + a.mul_word([(s, 1) for s in w.reduced_word]).scale(p)
        else:
            for w, p in a._terms.items():
                out = out + b.mul_word([(s, 1) for s in w.reduced_word], side="left").scale(p)
        return out

    # -- involutions ---------------------------------------------------------

    def bar_t(self, w: Element) -> HeckeElement:
        """``bar(T_w) = T_{s_1}^-1 ... T_{s_k}^-1``."""
        got = self._bar_t.get(w)
        if got is not None:
            return got
        word = w.reduced_word
        prefix = self.system.from_word(word[:-1])
        res = self.bar_t(prefix).mul_gen(word[-1], "right", -1)
        return self._store(self._bar_t, w, res)

    def bar(self, h: HeckeElement) -> HeckeElement:
        out = self.zero()
        for w, p in h._terms.items():
            out = out + self.bar_t(w).scale(p.bar())
        return out

    # -- Kazhdan-Lusztig bases -------------------------------------------------

    def cprime(self, w: Element) -> HeckeElement:
        """``C'_w``: bar-invariant, ``H_w`` plus ``v Z[v]`` multiples of lower ``H_y``."""
        got = self._cprime.get(w)
        if got is not None:
            return got
        s = w.reduced_word[0]  # smallest left descent
        u = w.lmul_gen(s)
        cu = self.cprime(u)
        ts_cu = cu.mul_gen(s, "left", 1)
        res = (ts_cu + cu).scale(monomial(1))
        for z, p in cu._terms.items():
            if z == u:
                continue
            mu = p.coeff(1 + z.length)  # coefficient of v in h_{z,u}
            if mu and z.lmul_gen(s).length < z.length:
                res = res - self.cprime(z).scale(mu)
        return self._store(self._cprime, w, res)

    def c(self, w: Element) -> HeckeElement:
        """``C_w = (-1)^l(w) j(C'_w)``."""
        got = self._c.get(w)
        if got is not None:
            return got
        res = self.cprime(w).j()
        if w.length % 2:
            res = -res
        return self._store(self._c, w, res)

    def kl_polynomials(self, w: Element) -> dict[Element, LaurentPoly]:
        """Coefficients ``h_{y,w}`` of ``C'_w`` in the ``H`` basis."""
        return {y: p.shift(-y.length) for y, p in self.cprime(w)._terms.items()}


_algebras: dict[CoxeterSystem, HeckeAlgebra] = {}


def hecke_algebra(system: CoxeterSystem) -> HeckeAlgebra:
    alg = _algebras.get(system)
    if alg is None:
        alg = _algebras.setdefault(system, HeckeAlgebra(system))
    return alg


def expand_in_basis(h: HeckeElement, basis: Basis) -> dict[Element, LaurentPoly]:
    """Coefficients of ``h`` in a triangular basis, by back-substitution on decreasing length."""
    rem = dict(h._terms)
    coeffs: dict[Element, LaurentPoly] = {}
    while rem:
        top = max(w.length for w in rem)
        layer = [w for w in rem if w.length == top]
        for x in layer:
            p = rem.get(x)
            if not p:
                continue
            bx = basis.element(x)
            lead = bx.coeff(x)
            if not lead.is_monomial() or abs(next(iter(lead.terms.values()))) != 1:
                raise ArithmeticError(f"basis element {basis}_{x} has non-unit leading coefficient {lead}")
            c = p * lead ** -1
            coeffs[x] = c
            for y, q in bx._terms.items():
                r = rem.get(y, ZERO) - q * c
                if r:
                    rem[y] = r
                else:
                    rem.pop(y, None)
            if rem.get(x):
                raise ArithmeticError(f"basis {basis} is not triangular at {x}")
    return coeffs


def reconstruct(system: CoxeterSystem, coeffs: Mapping[Element, LaurentPoly], basis: Basis) -> HeckeElement:
    out = hecke_algebra(system).zero()
    for x, c in coeffs.items():
        out = out + basis.element(x).scale(c)
    return out
