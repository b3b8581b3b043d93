import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilaut import groupkit as gk
from nilaut.errors import GroupError, ParseError


def order_profile(G):
    return sorted(Counter(int(o) for o in G.orders).items())


def test_g2_relations_and_size():
    for n in (5, 6, 7):
        G = gk.build_G2(n)
        assert G.size == 2**n
        assert all(gk.relations_hold(G, gk.g2_relations(n)).values())
        assert gk.is_nilpotent(G) and gk.group_prime(G) == 2


def test_g2_small_n_rejected():
    with pytest.raises(GroupError, match="exceptional"):
        gk.build_G2(4)


def test_gp_relations_and_size():
    for p, n in ((3, 3), (3, 4), (5, 3)):
        G = gk.build_Gp(p, n)
        assert G.size == p**n
        assert all(gk.relations_hold(G, gk.gp_relations(p, n)).values())
        assert gk.exponent(G) == p ** (n - 1)
        assert len(gk.center(G)) == p ** (n - 2)


def test_gp_rejects_even_prime():
    with pytest.raises(GroupError):
        gk.build_Gp(2, 4)


def test_permutation_dihedral_matches_builtin(d4):
    P = gk.from_permutations([gk.parse_cycles("(1 2 3 4)"), gk.parse_cycles("(1 3)", 4)])
    assert P.size == 8
    assert order_profile(P) == order_profile(d4) == [(1, 1), (2, 5), (4, 2)]
    assert len(gk.automorphisms(P)) == len(gk.automorphisms(d4)) == 8


def test_table_invariants(g2_5):
    g2_5.validate()
    t = g2_5.table
    for x in range(g2_5.size):
        assert sorted(t[x]) == list(range(g2_5.size))  # Latin square
        assert t[x, g2_5.inverse[x]] == g2_5.identity


@pytest.mark.parametrize(
    "make, relations, names",
    [
        (lambda: gk.dihedral(4), [("r4", "r^4", ""), ("s2", "s s", ""), ("srsr", "s r s r", "")], ("r", "s")),
        (lambda: gk.build_Gp(3, 3), gk.gp_relations(3, 3), ("a", "b")),
        (lambda: gk.cyclic(12), [("c12", "c^12", "")], ("c",)),
    ],
)
def test_automorphism_count_matches_presentation_oracle(make, relations, names):
    # Aut(G) is in bijection with generating tuples satisfying a presentation.
    G = make()
    auts = gk.automorphisms(G)
    assert len(auts) == gk.count_homomorphism_tuples(G, relations, names)
    assert all(m.is_homomorphism() and m.is_bijective() for m in auts)


def test_known_automorphism_group_orders():
    assert len(gk.automorphisms(gk.cyclic(8))) == 4
    assert len(gk.automorphisms(gk.from_permutations([(1, 0, 3, 2), (2, 3, 0, 1)]))) == 6  # Klein four
    assert len(gk.automorphisms(gk.dihedral(3))) == 6


def test_inner_automorphisms(d4, gp_33):
    # |Inn(G)| = |G / Z(G)|
    assert len(gk.inner_automorphisms(d4)) == 4
    assert len(gk.inner_automorphisms(gp_33)) == 9
    assert len(gk.inner_automorphisms(gk.cyclic(5))) == 1


def test_nilpotency():
    assert not gk.is_nilpotent(gk.dihedral(3))
    assert gk.is_nilpotent(gk.dihedral(4))
    assert gk.is_nilpotent(gk.direct_product(gk.cyclic(3), gk.dihedral(4)))
    assert gk.group_prime(gk.dihedral(3)) is None


def test_frattini(d4, gp_33):
    assert len(gk.frattini_subgroup(d4)) == 2
    assert len(gk.frattini_subgroup(gp_33)) == 3


def test_g2_involution_classes(g2_5):
    classes = gk.subgroup_classes_of_order(g2_5, 2)
    assert len(classes) == 5
    normal = [c for c in classes if c.normal]
    assert len(normal) == 1
    r = g2_5.gen("r")
    z = g2_5.power(r, 2)
    assert set(normal[0].representative) == {g2_5.identity, z}


def test_subgroups_of_composite_order_bruteforce(d4):
    # oracle: every 4-subset containing the identity that is closed
    brute = set()
    for rest in itertools.combinations([x for x in range(8) if x != d4.identity], 3):
        S = (d4.identity,) + rest
        if gk.is_subgroup(d4, S):
            brute.add(tuple(sorted(S)))
    assert set(gk.subgroups_of_order(d4, 4)) == brute
    assert len(brute) == 3


def test_eval_word_and_labels(g2_5):
    x = gk.eval_word(g2_5, "a r^-1 b")
    assert g2_5.element_by_label(g2_5.label(x)) == x
    with pytest.raises(GroupError):
        gk.eval_word(g2_5, "q")


def test_parse_cycles():
    assert gk.parse_cycles("(1 2 3)(4 5)") == (1, 2, 0, 4, 3)
    assert gk.parse_cycles("", 3) == (0, 1, 2)
    with pytest.raises(ParseError):
        gk.parse_cycles("(1 2) x")


def test_perm_cap():
    from nilaut.errors import CapExceededError

    with pytest.raises(CapExceededError):
        gk.from_permutations([gk.parse_cycles("(1 2 3 4 5 6)"), gk.parse_cycles("(1 2)", 6)], cap=100)


perms = st.permutations(list(range(5))).map(tuple)


@settings(max_examples=60, deadline=None)
@given(st.lists(perms, min_size=1, max_size=3))
def test_permutation_groups_are_groups(gens):
    G = gk.from_permutations(gens)
    assert gk.is_associative(G.table)
    assert 120 % G.size == 0
    # closure in the package matches a plain set closure
    closed = {tuple(range(5))}
    frontier = list(closed)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple(g[x[i]] for i in range(5))
            if y not in closed:
                closed.add(y)
                frontier.append(y)
    assert G.size == len(closed)
    # element orders agree with repeated composition
    for k, x in enumerate(G.coords):
        y, m = x, 1
        while y != tuple(range(5)):
            y = tuple(x[y[i]] for i in range(5))
            m += 1
        assert G.orders[k] == m


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30))
def test_direct_product_of_cyclics(m, n):
    G = gk.direct_product(gk.cyclic(m, "x"), gk.cyclic(n, "y"))
    assert G.size == m * n
    assert gk.exponent(G) == np.lcm(m, n)
    assert gk.is_abelian(G)
