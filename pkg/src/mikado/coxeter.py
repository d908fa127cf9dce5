"""Coxeter groups realised by integral Cartan matrices.

Group elements are the integer matrices by which they act on the root lattice
(columns are images of the simple roots).  With an integral realisation every
root has integer coordinates in the simple-root basis, so all sign tests are
exact.  The reflection formula is ``s_i(alpha_j) = alpha_j - a_ij alpha_i``.
"""

from __future__ import annotations

import math
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CoxeterSystem",
    "Element",
    "Root",
    "ConfigError",
    "INF",
    "PRESETS",
    "preset",
]

INF = 0  # Coxeter-matrix encoding of m_st = infinity

Root = tuple  # tuple[int, ...], simple-root coordinates

_PRODUCT = {2: 0, 3: 1, 4: 2, 6: 3, INF: 4}
_DEFAULT_CARTAN = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3), INF: (-2, -2)}


class ConfigError(ValueError):
    """Invalid system or biclosed-set configuration.  ``errors`` lists every problem found."""

    def __init__(self, errors: Sequence[str] | str):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def _normalize_m(x) -> int:
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "oo", "∞"):
            return INF
        x = int(x)
    if isinstance(x, float) and x == float("inf"):
        return INF
    if x is None:
        return INF
    return int(x)


class CoxeterSystem:
    """A Coxeter system together with an integral Cartan realisation."""

    def __init__(self, coxeter_matrix, cartan=None, names: Sequence[str] | None = None):
        errors: list[str] = []
        try:
            m = [[_normalize_m(x) for x in row] for row in coxeter_matrix]
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"unreadable Coxeter matrix: {exc}") from None
        n = len(m)
        if n == 0:
            raise ConfigError("rank must be positive")
        if any(len(row) != n for row in m):
            raise ConfigError("Coxeter matrix must be square")
        if names is None:
            names = _default_names(n)
        names = [str(x) for x in names]
        if len(names) != n:
            errors.append(f"expected {n} generator names, got {len(names)}")
        if len(set(names)) != len(names):
            errors.append("generator names must be distinct")
        for nm in names:
            if nm == "e" or not nm or any(ch.isspace() or ch in "^*,()" for ch in nm):
                errors.append(f"invalid generator name {nm!r}")
        if len(names) != n:
            names = _default_names(n)

        def pair(i, j):
            return f"({names[i]},{names[j]})"

        for i in range(n):
            if m[i][i] != 1:
                errors.append(f"diagonal entry m{pair(i, i)} must be 1, got {m[i][i]}")
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    errors.append(f"Coxeter matrix not symmetric at {pair(i, j)}: {m[i][j]} vs {m[j][i]}")
                for val in {m[i][j], m[j][i]}:
                    if val not in _PRODUCT:
                        errors.append(
                            f"unsupported label m{pair(i, j)} = {val} "
                            "(integral realisations need m in {2,3,4,6,inf})"
                        )
        if errors:
            raise ConfigError(errors)

        if cartan is None:
            a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    a[i][j], a[j][i] = _DEFAULT_CARTAN[m[i][j]]
        else:
            try:
                a = [[int(x) for x in row] for row in cartan]
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"unreadable Cartan matrix: {exc}") from None
            if len(a) != n or any(len(row) != n for row in a):
                raise ConfigError(f"Cartan matrix must be {n}x{n}")
            for i in range(n):
                if a[i][i] != 2:
                    errors.append(f"Cartan diagonal a{pair(i, i)} must be 2, got {a[i][i]}")
                for j in range(i + 1, n):
                    aij, aji = a[i][j], a[j][i]
                    if aij > 0 or aji > 0:
                        errors.append(f"Cartan entries at {pair(i, j)} must be <= 0")
                    if (aij == 0) != (aji == 0) or (aij == 0) != (m[i][j] == 2):
                        errors.append(f"Cartan zero pattern at {pair(i, j)} inconsistent with m = {m[i][j]}")
                    if aij * aji != _PRODUCT[m[i][j]]:
                        errors.append(
                            f"Cartan product a{pair(i, j)}*a{pair(j, i)} = {aij * aji} "
                            f"does not match m = {'inf' if m[i][j] == INF else m[i][j]}"
                        )
            if errors:
                raise ConfigError(errors)

        self.rank = n
        self.coxeter_matrix = tuple(tuple(row) for row in m)
        self.cartan = tuple(tuple(row) for row in a)
        self.names = tuple(names)
        self._index = {nm: i for i, nm in enumerate(self.names)}
        self._key = (self.coxeter_matrix, self.cartan, self.names)
        self._gens = tuple(self._make_gen(i) for i in range(n))
        self._e = Element(self, tuple(1 if k == j else 0 for k in range(n) for j in range(n)))
        # grow-only caches keyed by matrix tuples / roots
        self._walk: dict[tuple, tuple[int, ...]] = {}
        self._canon: dict[tuple, tuple[int, ...]] = {}
        self._refl: dict[Root, Element] = {}
        self._balls: dict[int, list[Element]] = {}
        self._bruhat: dict[tuple, bool] = {}
        self._inv: dict[tuple, frozenset] = {}

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, CoxeterSystem) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"CoxeterSystem(rank={self.rank}, names={self.names})"

    def __getstate__(self):
        return {"coxeter_matrix": self.coxeter_matrix, "cartan": self.cartan, "names": self.names}

    def __setstate__(self, state):
        self.__init__(state["coxeter_matrix"], state["cartan"], state["names"])

    def m(self, i: int, j: int) -> int:
        return self.coxeter_matrix[i][j]

    def is_finite_label(self, i: int, j: int) -> bool:
        return self.coxeter_matrix[i][j] != INF

    def describe(self) -> dict:
        return {
            "rank": self.rank,
            "generators": list(self.names),
            "coxeter_matrix": [["inf" if x == INF else x for x in row] for row in self.coxeter_matrix],
            "cartan": [list(row) for row in self.cartan],
            "reflection_convention": "s_i(alpha_j) = alpha_j - a_ij * alpha_i",
            "valid": True,
        }

    # -- elements ---------------------------------------------------------

    def _make_gen(self, i: int) -> "Element":
        n = self.rank
        mat = [1 if k == j else 0 for k in range(n) for j in range(n)]
        for j in range(n):
            mat[i * n + j] -= self.cartan[i][j]
        return Element(self, tuple(mat))

    @property
    def identity(self) -> "Element":
        return self._e

    def gen(self, i: int) -> "Element":
        if not 0 <= i < self.rank:
            raise IndexError(f"generator index {i} out of range for rank {self.rank}")
        return self._gens[i]

    simple_reflection = gen

    @property
    def generators(self) -> tuple["Element", ...]:
        return self._gens

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}; known: {', '.join(self.names)}") from None

    def from_word(self, word: Iterable[int]) -> "Element":
        w = self._e
        for i in word:
            w = w.rmul_gen(i)
        return w

    def parse_word(self, text: str) -> tuple[int, ...]:
        """Split a word such as ``"sts"``, ``"s t s"`` or ``"e"`` into generator indices."""
        s = text.strip()
        if s in ("", "e", "1"):
            return ()
        tokens = s.replace(",", " ").replace("*", " ").split()
        if len(tokens) == 1 and tokens[0] not in self._index and all(len(x) == 1 for x in self.names):
            tokens = list(tokens[0])
        return tuple(self.index(tok) for tok in tokens)

    def element(self, text: str) -> "Element":
        return self.from_word(self.parse_word(text))

    def word_str(self, word: Sequence[int]) -> str:
        if not word:
            return "e"
        sep = "" if all(len(x) == 1 for x in self.names) else " "
        return sep.join(self.names[i] for i in word)

    # -- walks / words ----------------------------------------------------

    def _right_walk(self, mat: tuple) -> tuple[int, ...]:
        """Greedy right-descent walk ``w -> w s_i`` (smallest i) down to the identity."""
        cached = self._walk.get(mat)
        if cached is not None:
            return cached
        n = self.rank
        a = self.cartan
        cur = list(mat)
        walk = []
        while True:
            for i in range(n):
                col_neg = False
                for k in range(n):
                    x = cur[k * n + i]
                    if x:
                        col_neg = x < 0
                        break
                if col_neg:
                    break
            else:
                break
            walk.append(i)
            # cur <- cur * s_i : column j gets -a_ij * column i
            coli = [cur[k * n + i] for k in range(n)]
            for j in range(n):
                c = a[i][j]
                if c:
                    for k in range(n):
                        cur[k * n + j] -= c * coli[k]
        out = tuple(walk)
        self._walk[mat] = out
        return out

    # -- roots & reflections ------------------------------------------------

    def simple_root(self, i: int) -> Root:
        return tuple(1 if k == i else 0 for k in range(self.rank))

    def pairing(self, beta: Sequence[int], i: int) -> int:
        """``<beta, alpha_i^vee>``, i.e. the coefficient in ``s_i(beta) = beta - c alpha_i``."""
        row = self.cartan[i]
        return sum(row[j] * beta[j] for j in range(self.rank))

    def reflect(self, i: int, beta: Sequence[int]) -> Root:
        c = self.pairing(beta, i)
        out = list(beta)
        out[i] -= c
        return tuple(out)

    def _root_descent(self, beta: Root) -> tuple[list[int], int] | None:
        """Reduce a positive vector to a simple root by height-decreasing reflections.

        Returns ``(path, j)`` with ``beta = s_{path[0]} ... s_{path[-1]} (alpha_j)``,
        or None if ``beta`` is not a positive root.
        """
        if any(x < 0 for x in beta) or not any(beta):
            return None
        path = []
        cur = tuple(beta)
        while True:
            if sum(cur) == 1:
                return path, cur.index(1)
            for i in range(self.rank):
                if self.pairing(cur, i) > 0:
                    break
            else:
                return None
            cur = self.reflect(i, cur)
            if any(x < 0 for x in cur):
                return None
            path.append(i)

    def is_positive_root(self, beta: Sequence[int]) -> bool:
        return len(beta) == self.rank and self._root_descent(tuple(beta)) is not None

    @staticmethod
    def is_positive_vector(beta: Sequence[int]) -> bool:
        return all(x >= 0 for x in beta) and any(beta)

    @staticmethod
    def positive_normalize(beta: Sequence[int]) -> Root:
        """The positive one of ``beta`` and ``-beta``."""
        beta = tuple(beta)
        for x in beta:
            if x:
                return beta if x > 0 else tuple(-y for y in beta)
        raise ValueError("zero vector is not a root")

    def reflection_of_root(self, beta: Sequence[int]) -> "Element":
        beta = tuple(beta)
        t = self._refl.get(beta)
        if t is not None:
            return t
        desc = self._root_descent(beta) if len(beta) == self.rank else None
        if desc is None:
            raise ValueError(f"{beta} is not a positive root")
        path, j = desc
        u = self.from_word(path)
        t = u * self._gens[j] * u.inverse()
        self._refl[beta] = t
        return t

    def root_of_reflection(self, t: "Element") -> Root:
        n = self.rank
        mat = t.mat
        if t.is_identity() or not (t * t).is_identity():
            raise ValueError(f"{t} is not a reflection")
        for j in range(n):
            col = [mat[k * n + j] - (1 if k == j else 0) for k in range(n)]
            if any(col):
                break
        g = reduce(gcd, (abs(x) for x in col))
        root = self.positive_normalize([x // g for x in col])
        if not self.is_positive_root(root) or self.reflection_of_root(root) != t:
            raise ValueError(f"{t} is not a reflection")
        return root

    def is_reflection(self, t: "Element") -> bool:
        try:
            self.root_of_reflection(t)
        except ValueError:
            return False
        return True

    def root_depth(self, beta: Root) -> int:
        """Length of the reflection of ``beta``; membership certificates are indexed by this."""
        return self.reflection_of_root(beta).length

    def positive_roots(self, reflection_length: int) -> list[Root]:
        """Positive roots whose reflections have length at most ``reflection_length``."""
        seen = set()
        out = []
        for w in self.ball(reflection_length):
            if w.length % 2 and w.is_involution():
                try:
                    r = self.root_of_reflection(w)
                except ValueError:
                    continue
                if r not in seen:
                    seen.add(r)
                    out.append(r)
        return out

    # -- inversion sets -----------------------------------------------------

    def left_inversion_set(self, w: "Element") -> frozenset:
        """Roots of ``N(w) = {t : l(tw) < l(w)}``."""
        cached = self._inv.get(w.mat)
        if cached is not None:
            return cached
        roots = []
        prefix = self._e
        for i in w.reduced_word:
            roots.append(prefix.act(self.simple_root(i)))
            prefix = prefix.rmul_gen(i)
        out = frozenset(roots)
        self._inv[w.mat] = out
        return out

    def inversion_roots_ordered(self, word: Sequence[int]) -> list[Root]:
        """``alpha_{s1}, s1(alpha_{s2}), ...`` for a (reduced) word."""
        roots = []
        prefix = self._e
        for i in word:
            roots.append(prefix.act(self.simple_root(i)))
            prefix = prefix.rmul_gen(i)
        return roots

    # -- Bruhat order ---------------------------------------------------------

    def bruhat_leq(self, u: "Element", w: "Element") -> bool:
        key = (u.mat, w.mat)
        cached = self._bruhat.get(key)
        if cached is not None:
            return cached
        lu, lw = u.length, w.length
        if lu > lw:
            res = False
        elif lu == lw:
            res = u == w
        elif lu == 0:
            res = True
        else:
            s = w.reduced_word[0]
            sw = w.lmul_gen(s)
            su = u.lmul_gen(s)
            res = self.bruhat_leq(su if su.length < lu else u, sw)
        self._bruhat[key] = res
        return res

    # -- enumeration ------------------------------------------------------------

    def ball(self, radius: int) -> list["Element"]:
        """All elements of length <= radius sorted by (length, canonical word)."""
        if radius < 0:
            return []
        cached = self._balls.get(radius)
        if cached is not None:
            return list(cached)
        levels = [[self._e]]
        seen = {self._e.mat}
        for _ in range(radius):
            nxt = []
            for w in levels[-1]:
                desc = w.right_descents()
                for i in range(self.rank):
                    if i in desc:
                        continue
                    u = w.rmul_gen(i)
                    if u.mat not in seen:
                        seen.add(u.mat)
                        nxt.append(u)
            if not nxt:
                break
            levels.append(nxt)
        out = sorted((w for lev in levels for w in lev), key=Element.sort_key)
        self._balls[radius] = out
        return list(out)

    def is_finite(self) -> bool:
        """Finite iff the cosine form ``-cos(pi/m_ij)`` is positive definite."""
        n = self.rank
        if any(self.coxeter_matrix[i][j] == INF for i in range(n) for j in range(n)):
            return False
        form = np.array([[-math.cos(math.pi / self.coxeter_matrix[i][j]) for j in range(n)] for i in range(n)])
        return bool(np.linalg.eigvalsh(form).min() > 1e-9)

    def all_elements(self) -> list["Element"]:
        if not self.is_finite():
            raise ValueError("group is infinite")
        r = 0
        while len(self.ball(r + 1)) != len(self.ball(r)):
            r += 1
        return self.ball(r)

    def longest_element(self) -> "Element":
        return self.all_elements()[-1]

    def all_reduced_words(self, w: "Element") -> list[tuple[int, ...]]:
        memo: dict[tuple, list[tuple[int, ...]]] = {}

        def rec(x: Element) -> list[tuple[int, ...]]:
            got = memo.get(x.mat)
            if got is not None:
                return got
            if x.is_identity():
                res = [()]
            else:
                res = []
                for i in sorted(x.right_descents()):
                    for word in rec(x.rmul_gen(i)):
                        res.append(word + (i,))
            memo[x.mat] = res
            return res

        return sorted(rec(w))


class Element:
    """A group element, stored as its integer action matrix (row-major, flat)."""

    __slots__ = ("system", "mat", "_hash")

    def __init__(self, system: CoxeterSystem, mat: tuple):
        self.system = system
        self.mat = mat
        self._hash = hash(mat)

    def __eq__(self, other):
        return isinstance(other, Element) and self.mat == other.mat and (
            self.system is other.system or self.system == other.system
        )

    def __hash__(self):
        return self._hash

    def __getstate__(self):
        return (self.system, self.mat)

    def __setstate__(self, state):
        self.system, self.mat = state
        self._hash = hash(self.mat)

    def __mul__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        if other.system is not self.system and other.system != self.system:
            raise ValueError("elements belong to different systems")
        n = self.system.rank
        a, b = self.mat, other.mat
        out = []
        for k in range(n):
            row = a[k * n:(k + 1) * n]
            for j in range(n):
                out.append(sum(row[m] * b[m * n + j] for m in range(n)))
        return Element(self.system, tuple(out))

    def rmul_gen(self, i: int) -> "Element":
        """``self * s_i``."""
        sysm = self.system
        n = sysm.rank
        arow = sysm.cartan[i]
        cur = list(self.mat)
        for k in range(n):
            x = cur[k * n + i]
            if x:
                base = k * n
                for j in range(n):
                    c = arow[j]
                    if c:
                        cur[base + j] -= c * x
        return Element(sysm, tuple(cur))

    def lmul_gen(self, i: int) -> "Element":
        """``s_i * self``."""
        sysm = self.system
        n = sysm.rank
        arow = sysm.cartan[i]
        cur = list(self.mat)
        for j in range(n):
            c = sum(arow[m] * cur[m * n + j] for m in range(n))
            if c:
                cur[i * n + j] -= c
        return Element(sysm, tuple(cur))

    def act(self, beta: Sequence[int]) -> Root:
        n = self.system.rank
        m = self.mat
        return tuple(sum(m[k * n + j] * beta[j] for j in range(n)) for k in range(n))

    def inverse(self) -> "Element":
        # w = s_{ik} ... s_{i1} for the right walk, so w^-1 = s_{i1} ... s_{ik}
        return self.system.from_word(self.system._right_walk(self.mat))

    def is_identity(self) -> bool:
        return self.mat == self.system._e.mat

    def is_involution(self) -> bool:
        return (self * self).is_identity()

    @property
    def reduced_word(self) -> tuple[int, ...]:
        """Lexicographically smallest reduced word (greedy smallest left descent)."""
        sysm = self.system
        got = sysm._canon.get(self.mat)
        if got is None:
            got = sysm._right_walk(self.inverse().mat)
            sysm._canon[self.mat] = got
        return got

    @property
    def length(self) -> int:
        return len(self.system._right_walk(self.mat))

    def right_descents(self) -> frozenset[int]:
        n = self.system.rank
        m = self.mat
        out = []
        for i in range(n):
            for k in range(n):
                x = m[k * n + i]
                if x:
                    if x < 0:
                        out.append(i)
                    break
        return frozenset(out)

    def left_descents(self) -> frozenset[int]:
        return self.inverse().right_descents()

    def sort_key(self):
        w = self.reduced_word
        return (len(w), w)

    def __lt__(self, other: "Element") -> bool:
        return self.sort_key() < other.sort_key()

    def word_str(self) -> str:
        return self.system.word_str(self.reduced_word)

    def __str__(self):
        return self.word_str()

    def __repr__(self):
        return f"Element({self.word_str()!r})"


def _default_names(n: int) -> list[str]:
    if n == 2:
        return ["s", "t"]
    if n == 3:
        return ["r", "s", "t"]
    return [f"s{i + 1}" for i in range(n)]


def _linear(labels: Sequence[int]) -> list[list[int]]:
    n = len(labels) + 1
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i, lab in enumerate(labels):
        m[i][i + 1] = m[i + 1][i] = lab
    return m


PRESETS = {
    "A1": lambda: CoxeterSystem([[1]], names=["s"]),
    "A2": lambda: CoxeterSystem(_linear([3])),
    "B2": lambda: CoxeterSystem(_linear([4])),
    "G2": lambda: CoxeterSystem(_linear([6])),
    "A3": lambda: CoxeterSystem(_linear([3, 3]), names=["s1", "s2", "s3"]),
    "B3": lambda: CoxeterSystem(_linear([4, 3]), names=["s1", "s2", "s3"]),
    "I2inf": lambda: CoxeterSystem([[1, INF], [INF, 1]]),
    "U3": lambda: CoxeterSystem([[1, INF, INF], [INF, 1, INF], [INF, INF, 1]]),
    "A2~": lambda: CoxeterSystem([[1, 3, 3], [3, 1, 3], [3, 3, 1]]),
}
PRESET_ALIASES = {
    "infinite-dihedral": "I2inf",
    "universal3": "U3",
    "universal-3": "U3",
    "affine-A2": "A2~",
}
_preset_cache: dict[str, CoxeterSystem] = {}


def preset(name: str) -> CoxeterSystem:
    key = PRESET_ALIASES.get(name, name)
    if key not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS) + sorted(PRESET_ALIASES))}")
    if key not in _preset_cache:
        _preset_cache[key] = PRESETS[key]()
    return _preset_cache[key]
