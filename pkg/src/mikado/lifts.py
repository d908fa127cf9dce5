"""Signed braid lifts ``x_A`` of group elements and their Hecke images ``T_{x,A}``.

Braid words are never reduced in the Artin-Tits group; every identity is
checked after evaluation in the Hecke algebra.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .biclosed import BiclosedSet, twisted_length
from .coxeter import CoxeterSystem, ConfigError, Element
from .hecke import Basis, HeckeElement, hecke_algebra

__all__ = [
    "BraidWord",
    "parse_braid",
    "lift",
    "lift_all",
    "lift_signs_roots",
    "eval_hecke",
    "t_twisted",
    "TwistedT",
]


@dataclass(frozen=True)
class BraidWord:
    system: CoxeterSystem
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for g, e in self.letters:
            if e not in (1, -1) or not 0 <= g < self.system.rank:
                raise ValueError(f"bad braid letter {(g, e)}")

    @property
    def word(self) -> tuple[int, ...]:
        return tuple(g for g, _ in self.letters)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.letters)

    def sign_sum(self) -> int:
        return sum(self.signs)

    def image(self) -> Element:
        """Image in the Coxeter group (signs forgotten)."""
        return self.system.from_word(self.word)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if other.system != self.system:
            raise ValueError("braid words over different systems")
        return BraidWord(self.system, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.system, tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return "e"
        names = self.system.names
        return " ".join(names[g] if e == 1 else f"{names[g]}^-1" for g, e in self.letters)


_LETTER = re.compile(r"([A-Za-z][A-Za-z0-9_]*?)(\^-1|\^\(-1\)|\^1|\^\+1)?$")


def parse_braid(system: CoxeterSystem, text: str) -> BraidWord:
    """Parse ``t s^-1 r``; tokens are whitespace separated, ``e`` or empty is the identity."""
    text = text.strip()
    if text in ("", "e", "1"):
        return BraidWord(system, ())
    letters = []
    for tok in text.split():
        m = _LETTER.match(tok)
        if not m:
            raise ConfigError(f"cannot parse braid letter {tok!r}")
        name, exp = m.group(1), m.group(2)
        if name not in system.names:
            raise ConfigError(f"unknown generator {name!r} in braid word {text!r}")
        letters.append((system.index(name), -1 if exp and "-" in exp else 1))
    return BraidWord(system, tuple(letters))


def lift_signs_roots(system: CoxeterSystem, word: Sequence[int]) -> list[tuple[int, ...]]:
    """For ``s_1 ... s_k`` the roots ``s_k ... s_{i+1}(alpha_{s_i})``, indexed by ``i``."""
    k = len(word)
    roots: list = [None] * k
    g = system.identity
    for i in range(k - 1, -1, -1):
        roots[i] = CoxeterSystem.positive_normalize(g.act(system.simple_root(word[i])))
        g = g.rmul_gen(word[i])
    return roots


def _lift_word(system: CoxeterSystem, word: Sequence[int], A: BiclosedSet) -> BraidWord:
    roots = lift_signs_roots(system, word)
    return BraidWord(system, tuple((s, -1 if A.contains(r) else 1) for s, r in zip(word, roots)))


def lift(x: Element, A: BiclosedSet, word: Sequence[int] | None = None) -> BraidWord:
    """``x_A`` on the canonical reduced word of ``x`` (or on ``word``, which must be reduced for ``x``)."""
    if word is None:
        word = x.reduced_word
    elif x.system.from_word(word) != x or len(word) != x.length:
        raise ValueError(f"{word} is not a reduced word for {x}")
    return _lift_word(x.system, word, A)


def lift_all(x: Element, A: BiclosedSet) -> list[BraidWord]:
    return [_lift_word(x.system, w, A) for w in x.system.all_reduced_words(x)]


def eval_hecke(beta: BraidWord) -> HeckeElement:
    return hecke_algebra(beta.system).from_word(beta.letters)


_twisted_cache: dict[tuple, HeckeElement] = {}


def t_twisted(x: Element, A: BiclosedSet, cache: bool = True) -> HeckeElement:
    """``T_{x,A}``: top term ``v^(l(x) - l_A(x)) T_x`` plus terms below ``x``.

    ``cache=False`` skips the memo table (useful for large one-shot sweeps).
    """
    key = (A, x)
    got = _twisted_cache.get(key)
    if got is None:
        got = eval_hecke(lift(x, A))
        cap = hecke_algebra(x.system).cap
        if cache and (cap is None or len(_twisted_cache) < cap):
            _twisted_cache.setdefault(key, got)
    return got


class TwistedT(Basis):
    """The basis ``{T_{x,A}}`` for a fixed biclosed set."""

    def __init__(self, A: BiclosedSet):
        self.A = A
        self.name = f"T[{A.describe()}]"

    def element(self, x: Element) -> HeckeElement:
        return t_twisted(x, self.A)

    def diagonal_exponent(self, x: Element) -> int:
        return x.length - twisted_length(self.A, x)
