"""Biclosed sets of positive roots and the orders they induce.

A biclosed set ``A`` twists the length function,
``l_A(w) = l(w) - 2 |N(w^-1) & A|``, and the Bruhat-like order ``<=_A`` is
generated by the covers ``u -> ut`` (``t`` a reflection) that raise ``l_A``.
Membership is always tested on integer root vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .coxeter import CoxeterSystem, ConfigError, Element, Root

__all__ = [
    "BiclosedSet",
    "InversionSet",
    "Complement",
    "HalfSpace",
    "ExplicitOnBall",
    "DoubleTwist",
    "DepthExceeded",
    "Cover",
    "BiclosedReport",
    "empty_set",
    "all_reflections",
    "cone_contains",
    "is_biclosed_on_ball",
    "twisted_length",
    "twisted_lt_cover",
    "twisted_order_on_ball",
    "hasse_diagram",
    "twisted_leq",
    "as_compatible_enumeration",
    "s_stable_part",
    "double_twist",
    "order_to_dot",
    "right_inversion_roots",
]


class DepthExceeded(ValueError):
    """A membership query fell outside the certified region of a truncated set."""


class BiclosedSet:
    """Base class: a (putatively) biclosed set of positive roots of ``system``."""

    system: CoxeterSystem

    def contains(self, root: Root) -> bool:
        raise NotImplementedError

    def __contains__(self, root) -> bool:
        return self.contains(tuple(root))

    def certified_depth(self) -> int | None:
        """Largest reflection length on which membership is defined (None = unbounded)."""
        return None

    def describe(self) -> str:
        raise NotImplementedError

    def to_config(self) -> dict:
        raise NotImplementedError

    def __str__(self):
        return self.describe()

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()}>"

    def __eq__(self, other):
        return isinstance(other, BiclosedSet) and type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def _key(self):
        raise NotImplementedError


class InversionSet(BiclosedSet):
    """``N(y)``, the left inversion set of ``y``."""

    def __init__(self, y: Element):
        self.system = y.system
        self.y = y
        self._roots = y.system.left_inversion_set(y)

    def contains(self, root: Root) -> bool:
        return root in self._roots

    @property
    def roots(self) -> frozenset:
        return self._roots

    def describe(self) -> str:
        return f"N({self.y})"

    def to_config(self) -> dict:
        return {"type": "inversion", "element": str(self.y)}

    def _key(self):
        return self.y.mat


class Complement(BiclosedSet):
    def __init__(self, inner: BiclosedSet):
        self.system = inner.system
        self.inner = inner

    def contains(self, root: Root) -> bool:
        return not self.inner.contains(root)

    def certified_depth(self):
        return self.inner.certified_depth()

    def describe(self) -> str:
        if isinstance(self.inner, InversionSet) and self.inner.y.is_identity():
            return "T"
        return f"T \\ {self.inner.describe()}"

    def to_config(self) -> dict:
        return {"type": "complement", "of": self.inner.to_config()}

    def _key(self):
        return (type(self.inner).__name__, self.inner._key())


class HalfSpace(BiclosedSet):
    """Positive roots on which a rational covector is strictly positive."""

    def __init__(self, system: CoxeterSystem, covector: Sequence):
        if len(covector) != system.rank:
            raise ConfigError(f"half-space covector needs {system.rank} entries, got {len(covector)}")
        self.system = system
        self.covector = tuple(Fraction(x) for x in covector)

    def value(self, root: Sequence[int]) -> Fraction:
        return sum((f * x for f, x in zip(self.covector, root)), Fraction(0))

    def contains(self, root: Root) -> bool:
        return self.value(root) > 0

    def describe(self) -> str:
        return "H+(" + ", ".join(str(x) for x in self.covector) + ")"

    def to_config(self) -> dict:
        return {"type": "halfspace", "covector": [str(x) for x in self.covector]}

    def _key(self):
        return self.covector

    @classmethod
    def through(cls, system: CoxeterSystem, spanning: Sequence[Sequence[int]], positive: Sequence[int]) -> "HalfSpace":
        """Open half-space bounded by the hyperplane spanned by ``spanning`` and containing ``positive``."""
        f = _hyperplane_normal([[Fraction(x) for x in v] for v in spanning], system.rank)
        val = sum(a * b for a, b in zip(f, positive))
        if val == 0:
            raise ConfigError("reference vector lies on the hyperplane")
        if val < 0:
            f = [-x for x in f]
        # scale to a primitive integer covector
        den = math.lcm(*(x.denominator for x in f))
        ints = [int(x * den) for x in f]
        g = math.gcd(*ints)
        return cls(system, [x // g for x in ints])


class ExplicitOnBall(BiclosedSet):
    """A finite list of roots, authoritative only for reflections of length <= depth."""

    def __init__(self, system: CoxeterSystem, roots: Iterable[Sequence[int]], certified_depth: int):
        self.system = system
        self.roots = frozenset(tuple(r) for r in roots)
        self.depth = int(certified_depth)
        bad = [r for r in self.roots if not system.is_positive_root(r)]
        if bad:
            raise ConfigError([f"{r} is not a positive root" for r in bad])
        self._depths: dict[Root, int] = {}

    def contains(self, root: Root) -> bool:
        d = self._depths.get(root)
        if d is None:
            d = self._depths[root] = self.system.root_depth(root)
        if d > self.depth:
            raise DepthExceeded(f"root {root} has reflection length {d} > certified depth {self.depth}")
        return root in self.roots

    def certified_depth(self):
        return self.depth

    def describe(self) -> str:
        rs = ", ".join(str(r) for r in sorted(self.roots))
        return f"{{{rs}}}@{self.depth}"

    def to_config(self) -> dict:
        return {"type": "explicit", "roots": [list(r) for r in sorted(self.roots)], "depth": self.depth}

    def _key(self):
        return (self.roots, self.depth)


class DoubleTwist(BiclosedSet):
    """``N(y) + y A y^-1`` (symmetric difference)."""

    def __init__(self, inner: BiclosedSet, y: Element):
        self.system = inner.system
        self.inner = inner
        self.y = y
        self._yinv = y.inverse()
        self._ny = y.system.left_inversion_set(y)

    def contains(self, root: Root) -> bool:
        conj = CoxeterSystem.positive_normalize(self._yinv.act(root))
        return (root in self._ny) != self.inner.contains(conj)

    def certified_depth(self):
        d = self.inner.certified_depth()
        if d is None:
            return None
        # conjugating by y changes reflection length by at most 2 l(y)
        return max(d - 2 * self.y.length, 0)

    def describe(self) -> str:
        return f"N({self.y}) + {self.y}({self.inner.describe()}){self.y}^-1"

    def to_config(self) -> dict:
        return {"type": "double_twist", "inner": self.inner.to_config(), "element": str(self.y)}

    def _key(self):
        return (type(self.inner).__name__, self.inner._key(), self.y.mat)


def _hyperplane_normal(rows: list[list[Fraction]], n: int) -> list[Fraction]:
    """Normal covector of the hyperplane spanned by ``rows`` (Gauss-Jordan over Q)."""
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                k = rows[i][c]
                rows[i] = [a - k * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise ConfigError("spanning vectors must span a hyperplane")
    f = [Fraction(0)] * n
    f[free[0]] = Fraction(1)
    for i, c in enumerate(pivots):
        f[c] = -rows[i][free[0]]
    return f


def empty_set(system: CoxeterSystem) -> InversionSet:
    return InversionSet(system.identity)


def all_reflections(system: CoxeterSystem) -> Complement:
    return Complement(empty_set(system))


# -- biclosedness certificate ---------------------------------------------------


def cone_contains(alpha: Sequence[int], beta: Sequence[int], gamma: Sequence[int]) -> bool:
    """Whether ``gamma = a alpha + b beta`` with rationals ``a, b > 0``."""
    n = len(alpha)
    for i in range(n):
        for j in range(i + 1, n):
            det = alpha[i] * beta[j] - alpha[j] * beta[i]
            if det:
                a = Fraction(gamma[i] * beta[j] - gamma[j] * beta[i], det)
                b = Fraction(alpha[i] * gamma[j] - alpha[j] * gamma[i], det)
                if a <= 0 or b <= 0:
                    return False
                return all(a * alpha[k] + b * beta[k] == gamma[k] for k in range(n))
    return False  # parallel: the open cone is a ray, never contains a further root


@dataclass
class BiclosedReport:
    description: str
    radius: int
    roots_checked: int
    violations: list[dict] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "biclosed_set": self.description,
            "radius": self.radius,
            "roots_checked": self.roots_checked,
            "certified": self.certified,
            "violations": self.violations,
        }


def is_biclosed_on_ball(A: BiclosedSet, radius: int) -> BiclosedReport:
    """Check closure of ``A`` and its complement on roots of reflections in ``ball(radius)``."""
    system = A.system
    roots = system.positive_roots(radius)
    member = {r: A.contains(r) for r in roots}
    violations = []
    for alpha, beta in combinations(roots, 2):
        if member[alpha] != member[beta]:
            continue
        side = "A" if member[alpha] else "complement"
        for gamma in roots:
            if gamma == alpha or gamma == beta or member[gamma] == member[alpha]:
                continue
            if cone_contains(alpha, beta, gamma):
                violations.append({"side": side, "alpha": list(alpha), "beta": list(beta), "gamma": list(gamma)})
    return BiclosedReport(A.describe(), radius, len(roots), violations)


# -- twisted length and order ----------------------------------------------------


def right_inversion_roots(w: Element) -> frozenset:
    """Roots of ``N(w^-1)`` (the reflections ``t`` with ``l(wt) < l(w)``)."""
    return w.system.left_inversion_set(w.inverse())


def twisted_length(A: BiclosedSet, w: Element) -> int:
    roots = right_inversion_roots(w)
    return w.length - 2 * sum(1 for r in roots if A.contains(r))


class Cover(str, Enum):
    UP = "up"
    DOWN = "down"


def twisted_lt_cover(A: BiclosedSet, x: Element, t: Root) -> Cover:
    """``DOWN`` iff ``x t <_A x``, i.e. ``t`` lies in ``N(x^-1) + A``."""
    t = tuple(t)
    in_inv = t in right_inversion_roots(x)
    return Cover.DOWN if in_inv != A.contains(t) else Cover.UP


def _reflection_root_or_none(system: CoxeterSystem, t: Element, cache: dict) -> Root | None:
    got = cache.get(t.mat, False)
    if got is not False:
        return got
    root = None
    if t.length % 2 == 1 and t.is_involution():
        try:
            root = system.root_of_reflection(t)
        except ValueError:
            root = None
    cache[t.mat] = root
    return root


def twisted_order_on_ball(A: BiclosedSet, radius: int, elements: Sequence[Element] | None = None) -> nx.DiGraph:
    """Cover graph of ``<_A`` on ``ball(radius)``: an edge ``u -> ut`` whenever ``l_A`` goes up.

    Nodes carry ``length``, ``twisted_length`` and ``word`` attributes.  The
    (ball-restricted) order is the transitive closure.
    """
    system = A.system
    elems = list(elements) if elements is not None else system.ball(radius)
    g = nx.DiGraph()
    la = {}
    for w in elems:
        la[w] = twisted_length(A, w)
        g.add_node(w, length=w.length, twisted_length=la[w], word=str(w))
    inv = {w: w.inverse() for w in elems}
    cache: dict = {}
    for i, u in enumerate(elems):
        for w in elems[i + 1:]:
            if (u.length - w.length) % 2 == 0:
                continue
            t = inv[u] * w
            root = _reflection_root_or_none(system, t, cache)
            if root is None:
                continue
            if la[w] > la[u]:
                g.add_edge(u, w, reflection=root)
            else:
                g.add_edge(w, u, reflection=root)
    return g


def hasse_diagram(order: nx.DiGraph) -> nx.DiGraph:
    h = nx.transitive_reduction(order)
    h.add_nodes_from(order.nodes(data=True))
    return h


def twisted_leq(order: nx.DiGraph, u: Element, v: Element) -> bool:
    return u == v or nx.has_path(order, u, v)


def s_stable_part(elems: Iterable[Element], s: int) -> list[Element]:
    """Elements ``x`` of ``elems`` with ``s x`` also in ``elems``."""
    elems = list(elems)
    pool = set(elems)
    return [x for x in elems if x.lmul_gen(s) in pool]


def as_compatible_enumeration(A: BiclosedSet, s: int, elems: Sequence[Element]) -> list[Element]:
    """An ``(A, s)``-compatible enumeration of an ``s``-stable set.

    Even positions hold exactly the ``x`` with ``s x >_A x`` and position
    ``2i + 1`` holds ``s`` times position ``2i``.
    """
    pool = set(elems)
    missing = [x for x in elems if x.lmul_gen(s) not in pool]
    if missing:
        raise ValueError(f"element set is not stable under left multiplication by {A.system.names[s]}: "
                         + ", ".join(str(x) for x in missing[:5]))
    ups = []
    for x in pool:
        lx = twisted_length(A, x)
        if twisted_length(A, x.lmul_gen(s)) > lx:
            ups.append((lx, x.reduced_word, x))
    ups.sort(key=lambda item: (item[0], len(item[1]), item[1]))
    out = []
    for _, _, x in ups:
        out.append(x)
        out.append(x.lmul_gen(s))
    return out


def double_twist(A: BiclosedSet, y: Element) -> BiclosedSet:
    if y.is_identity():
        return A
    return DoubleTwist(A, y)


def order_to_dot(order: nx.DiGraph, name: str = "twisted_order", reduce: bool = True) -> str:
    """DOT rendering, nodes labelled ``word (l_A)``; node/edge order is deterministic."""
    g = hasse_diagram(order) if reduce else order
    nodes = sorted(g.nodes, key=lambda w: (order.nodes[w]["twisted_length"], w.sort_key()))
    ids = {w: f"n{i}" for i, w in enumerate(nodes)}
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for w in nodes:
        d = order.nodes[w]
        lines.append(f'  {ids[w]} [label="{d["word"]} ({d["twisted_length"]})"];')
    pos = {w: i for i, w in enumerate(nodes)}
    edges = sorted(g.edges, key=lambda e: (pos[e[0]], pos[e[1]]))
    for u, w in edges:
        lines.append(f"  {ids[u]} -> {ids[w]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
