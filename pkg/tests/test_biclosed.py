import networkx as nx
import pytest
from hypothesis import given, strategies as st

from mikado.biclosed import (
    Complement,
    Cover,
    DepthExceeded,
    ExplicitOnBall,
    HalfSpace,
    InversionSet,
    all_reflections,
    as_compatible_enumeration,
    double_twist,
    empty_set,
    hasse_diagram,
    is_biclosed_on_ball,
    order_to_dot,
    right_inversion_roots,
    s_stable_part,
    twisted_length,
    twisted_leq,
    twisted_lt_cover,
    twisted_order_on_ball,
)
from mikado.coxeter import CoxeterSystem, preset

D = preset("I2inf")
U = preset("U3")
CHAIN = ["tsts", "sts", "ts", "s", "e", "t", "st", "tst", "stst"]


def half_s():
    return HalfSpace(D, (1, -1))


def rank3_halfspace():
    return HalfSpace.through(U, [(1, 0, 0), (2, 2, 1)], (2, 1, 0))


def test_halfspace_is_the_s_side():
    A = half_s()
    members = [r for r in D.positive_roots(7) if A.contains(r)]
    # exactly the roots of s, sts, ststs, ...
    assert sorted(members) == [(1, 0), (2, 1), (3, 2), (4, 3)]
    assert {D.reflection_of_root(r) for r in members} == {D.element(w) for w in ["s", "sts", "ststs", "stststs"]}


def test_dihedral_halfspace_chain_is_a_path():
    A = half_s()
    order = twisted_order_on_ball(A, 4)
    h = hasse_diagram(order)
    path = list(nx.topological_sort(h))
    assert [str(w) for w in path] == CHAIN
    assert h.number_of_edges() == len(CHAIN) - 1
    assert [order.nodes[w]["twisted_length"] for w in path] == list(range(-4, 5))


def test_dot_output_is_deterministic():
    A = half_s()
    a = order_to_dot(twisted_order_on_ball(A, 4))
    b = order_to_dot(twisted_order_on_ball(A, 4))
    assert a == b
    assert 'label="tsts (-4)"' in a and a.count("->") == 8


def test_rank3_halfspace_memberships():
    A = rank3_halfspace()
    assert A.covector == (0, 1, -2)
    assert not A.contains((1, 0, 0))
    assert not A.contains((2, 2, 1))
    assert A.contains((2, 1, 0))
    assert not A.contains((6, 2, 1))  # root of rstsr with this Cartan matrix, on the boundary plane


def test_halfspace_through_rejects_degenerate():
    from mikado.coxeter import ConfigError

    with pytest.raises(ConfigError):
        HalfSpace.through(U, [(1, 0, 0), (2, 2, 1)], (3, 2, 1))


@pytest.mark.parametrize("make", [
    lambda: InversionSet(D.element("stst")),
    lambda: Complement(InversionSet(D.element("ts"))),
    half_s,
    lambda: HalfSpace(D, (-1, 1)),
    lambda: empty_set(D),
    lambda: all_reflections(D),
])
def test_dihedral_sets_are_biclosed(make):
    assert is_biclosed_on_ball(make(), 9).certified


@pytest.mark.parametrize("make", [
    rank3_halfspace,
    lambda: InversionSet(U.element("rst")),
    lambda: Complement(InversionSet(U.element("ts"))),
])
def test_rank3_sets_are_biclosed(make):
    assert is_biclosed_on_ball(make(), 5).certified


def test_non_biclosed_set_detected():
    bad = ExplicitOnBall(D, [(1, 0), (0, 1)], 9)
    rep = is_biclosed_on_ball(bad, 9)
    assert not rep.certified and rep.violations[0]["side"] == "A"
    good = ExplicitOnBall(D, [(1, 0)], 9)
    assert is_biclosed_on_ball(good, 9).certified


def test_explicit_depth_exceeded():
    A = ExplicitOnBall(D, [(1, 0)], 3)
    assert not A.contains((2, 1))
    with pytest.raises(DepthExceeded):
        A.contains((4, 3))


def test_twisted_length_conventions():
    W = preset("A3")
    w0 = W.longest_element()
    A = InversionSet(w0)
    for u in W.all_elements():
        assert twisted_length(A, u) == -u.length
        assert twisted_length(empty_set(W), u) == u.length
    assert [twisted_length(half_s(), D.element(w)) for w in CHAIN] == list(range(-4, 5))


@pytest.mark.parametrize("name", ["A2", "B2", "A3"])
def test_inversion_order_is_y_twisted_bruhat(name):
    # u <=_{N(y)} v iff u y <= v y, minimal element y^-1
    W = preset(name)
    els = W.all_elements()
    for y in els[:: max(1, len(els) // 6)]:
        order = twisted_order_on_ball(InversionSet(y), 10, els)
        for u in els:
            for v in els:
                assert twisted_leq(order, u, v) == W.bruhat_leq(u * y, v * y)
        minimal = [u for u in els if order.in_degree(u) == 0]
        assert minimal == [y.inverse()]


def _sets_for(W, ball):
    sets = [InversionSet(y) for y in ball] + [Complement(InversionSet(y)) for y in ball[:4]]
    if W is D:
        sets += [half_s(), HalfSpace(D, (-1, 1))]
    if W is U:
        sets.append(rank3_halfspace())
    return sets


@pytest.mark.parametrize("W,L", [(preset("A3"), 6), (D, 6), (U, 3)])
def test_twisted_cover_criterion(W, L):
    # l_A(xt) < l_A(x) exactly for t in N(x^-1) + A
    ball = W.ball(L)
    roots = W.positive_roots(2 * L - 1)
    for A in _sets_for(W, W.ball(2)):
        for x in ball:
            lx = twisted_length(A, x)
            for r in roots:
                xt = x * W.reflection_of_root(r)
                down = (r in right_inversion_roots(x)) != A.contains(r)
                assert (twisted_length(A, xt) < lx) == down
                assert twisted_lt_cover(A, x, r) == (Cover.DOWN if down else Cover.UP)
                assert (twisted_length(A, xt) - lx) % 2 == 1


def _z_property(W, A, order, elems):
    for s in range(W.rank):
        for x in elems:
            sx = x.lmul_gen(s)
            if not twisted_leq(order, sx, x):
                continue
            for y in elems:
                sy = y.lmul_gen(s)
                if not twisted_leq(order, sy, y):
                    continue
                a = twisted_leq(order, x, y)
                b = twisted_leq(order, sx, y)
                c = twisted_leq(order, sx, sy)
                assert a == b == c, (A, s, x, y)


@pytest.mark.parametrize("name", ["A2", "B2", "A3"])
def test_z_property_finite(name):
    W = preset(name)
    els = W.all_elements()
    for y in els[:: max(1, len(els) // 5)]:
        A = InversionSet(y)
        _z_property(W, A, twisted_order_on_ball(A, 10, els), els)


def test_z_property_dihedral_ball():
    for A in [half_s(), HalfSpace(D, (-1, 1)), InversionSet(D.element("sts"))]:
        order = twisted_order_on_ball(A, 8)
        _z_property(D, A, order, D.ball(5))


def test_compatible_enumeration():
    A = half_s()
    part = s_stable_part(D.ball(3), 0)
    seq = as_compatible_enumeration(A, 0, part)
    assert [str(x) for x in seq] == ["sts", "ts", "s", "e", "t", "st"]
    for i in range(0, len(seq), 2):
        assert seq[i + 1] == seq[i].lmul_gen(0)
        assert twisted_length(A, seq[i + 1]) > twisted_length(A, seq[i])
    with pytest.raises(ValueError):
        as_compatible_enumeration(A, 0, D.ball(3))


@given(st.lists(st.integers(0, 2), max_size=5), st.lists(st.integers(0, 2), max_size=4))
def test_double_twist_membership(yw, rw):
    # B = N(y) + y A y^-1
    y = U.from_word(yw)
    A = rank3_halfspace()
    B = double_twist(A, y)
    r = CoxeterSystem.positive_normalize(U.from_word(rw).act((1, 0, 0)))
    conj = CoxeterSystem.positive_normalize(y.inverse().act(r))
    assert B.contains(r) == ((r in U.left_inversion_set(y)) != A.contains(conj))


def test_double_twist_of_identity_is_same_set():
    A = half_s()
    assert double_twist(A, D.identity) is A
