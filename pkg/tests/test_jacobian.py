import cmath
from fractions import Fraction

import numpy as np
import pytest

from nilaut import actions as ac
from nilaut import groupkit as gk
from nilaut import jacobian as jc
from nilaut.cyclo import root_of_unity
from nilaut.families import G2_SIGNATURE, g2_subgroups, gp_signature, theta_m, theta_uv


def quaternion():
    return gk.from_permutations([gk.parse_cycles("(1 2 3 4)(5 6 7 8)"), gk.parse_cycles("(1 5 3 7)(2 8 4 6)")])


def as_complex(x):
    w = cmath.exp(2j * cmath.pi / x.conductor)
    return sum(float(c) * w**e for e, c in enumerate(x.coefficients))


@pytest.fixture(scope="module")
def g2_table(g2_5):
    return jc.character_table(g2_5)


@pytest.fixture(scope="module")
def gp_table(gp_33):
    return jc.character_table(gp_33)


@pytest.mark.parametrize(
    "make, degrees",
    [
        (lambda: gk.dihedral(4), [1, 1, 1, 1, 2]),
        (quaternion, [1, 1, 1, 1, 2]),
        (lambda: gk.build_G2(5), None),
        (lambda: gk.build_Gp(3, 3), [1] * 9 + [3, 3]),
        (lambda: gk.build_Gp(5, 3), [1] * 25 + [5] * 4),
    ],
)
def test_tables_are_orthonormal(make, degrees):
    t = jc.character_table(make())
    assert jc.orthogonality_defects(t) == []
    if degrees is not None:
        assert sorted(t.degrees) == degrees


def test_cyclic_table_is_roots_of_unity():
    C = gk.cyclic(9)
    t = jc.character_table(C)
    want = {tuple(root_of_unity(9, j * k) for j in range(9)) for k in range(9)}
    got = {tuple(t.value(i, x) for x in range(9)) for i in range(9)}
    assert got == want


def test_values_match_trace_of_matrices(gp_33, gp_table):
    # oracle: complex traces of the explicit monomial matrices
    mats = jc.rep_on_elements(gp_33, jc.gp_monomial_rep(3, 3, 1), ("a", "b"))
    row = gp_table.index_of(tuple(mats[c[0]].trace().lift(gp_table.conductor) for c in gp_table.classes))
    for x in range(gp_33.size):
        m = mats[x]
        assert abs(as_complex(gp_table.value(row, x)) - as_complex(m.trace())) < 1e-9


@pytest.mark.parametrize("make", [lambda: gk.build_G2(5), lambda: gk.build_G2(6), lambda: gk.build_Gp(3, 3)])
def test_generic_and_explicit_routes_agree(make):
    G = make()
    explicit = jc.explicit_characters(G)
    assert explicit and set(explicit) <= set(jc.character_table(G).characters)


def test_gp_explicit_table_complete(gp_33, gp_table):
    assert set(jc.explicit_table(gp_33).characters) == set(gp_table.characters)


def test_non_p_group_rejected():
    with pytest.raises(jc.CharacterError, match="not a p-group"):
        jc.character_table(gk.dihedral(3))


def test_indicator_counts_square_roots():
    # sum_chi nu(chi) chi(1) = number of x with x^2 = 1
    for G in (gk.dihedral(4), quaternion(), gk.build_G2(5), gk.build_Gp(3, 3)):
        t = jc.character_table(G)
        total = sum(jc.frobenius_schur_indicator(t, i) * t.degrees[i] for i in range(len(t)))
        roots = int(np.sum(G.table[np.arange(G.size), np.arange(G.size)] == G.identity))
        assert total == roots


def test_schur_indices():
    assert [W.schur_index for W in jc.rational_irreps(jc.character_table(quaternion()))] == [1, 1, 1, 1, 2]
    assert all(W.schur_index == 1 for W in jc.rational_irreps(jc.character_table(gk.dihedral(4))))


def test_quaternion_genus_two():
    Q = quaternion()
    from nilaut.sigcalc import Signature

    sig = Signature(0, (4, 4, 4))
    th = ac.make_epimorphism(sig, Q, ac.enumerate_image_tuples(sig, Q)[0])
    rep = jc.group_algebra_decomposition(th)
    assert [(f.degree, f.multiplicity, f.dim) for f in rep.factors] == [(2, 1, 2)]
    assert rep.total == th.genus() == 2


def test_rational_irreps_partition(gp_table):
    irreps = jc.rational_irreps(gp_table)
    members = sorted(i for W in irreps for i in W.members)
    assert members == list(range(len(gp_table)))
    # k_V is the size of the Galois orbit
    for W in irreps:
        assert all(gp_table.degrees[i] == W.degree for i in W.members)


def test_fixed_dim_matches_complex_average(g2_5, g2_table):
    for H in g2_subgroups(g2_5).values():
        for i in range(len(g2_table)):
            avg = sum(as_complex(g2_table.value(i, h)) for h in H) / len(H)
            assert abs(avg - jc.fixed_dim(g2_table, i, H)) < 1e-9


def test_g2_decomposition(g2_5, g2_table):
    from nilaut.families import g2_v_character_index, w1_character_index

    irreps = jc.rational_irreps(g2_table)
    th = theta_uv(g2_5, 0, 0)
    rep = jc.group_algebra_decomposition(th, g2_table, irreps)
    W1 = jc.irrep_of_character(irreps, w1_character_index(g2_table))
    W2 = jc.irrep_of_character(irreps, g2_v_character_index(g2_table))
    assert jc.dim_factor(th, W1, g2_table) == 1
    assert jc.dim_factor(th, W2, g2_table) == 1
    assert W2.multiplicity == 4
    assert rep.total == rep.genus == 5


def test_every_epimorphism_decomposes_to_its_genus(gp_33, gp_table):
    sig = gp_signature(3)
    irreps = jc.rational_irreps(gp_table)
    rows = ac.enumerate_image_tuples(sig, gp_33)
    for row in rows[::17]:
        th = ac.make_epimorphism(sig, gp_33, row)
        assert jc.group_algebra_decomposition(th, gp_table, irreps).total == th.genus()


def test_quotients_match_branching_genus(g2_5, g2_table):
    th = theta_uv(g2_5, 0, 0)
    irreps = jc.rational_irreps(g2_table)
    for cls in gk.subgroup_classes_of_order(g2_5, 2) + gk.subgroup_classes_of_order(g2_5, 4):
        H = cls.representative
        rep = jc.quotient_decomposition(th, H, g2_table, irreps)
        assert rep.total == ac.quotient_branch_data(th, H).genus


def test_inconsistent_table_is_caught(g2_5, g2_table):
    # dropping a rational irreducible leaves a remainder
    irreps = jc.rational_irreps(g2_table)[:-1]
    with pytest.raises(jc.DecompositionError, match="decomposition inconsistent"):
        jc.group_algebra_decomposition(theta_uv(g2_5, 0, 0), g2_table, irreps)


def test_gp_theta_factor_dims(gp_33, gp_table):
    from nilaut.families import gp_v_character_index

    irreps = jc.rational_irreps(gp_table)
    W = jc.irrep_of_character(irreps, gp_v_character_index(gp_table))
    for m in (1, 2):
        th = theta_m(gp_33, m)
        assert jc.dim_factor(th, W, gp_table) == Fraction(2 * 3, 2)
        assert W.multiplicity == 3


def test_monomial_algebra():
    M = jc.g2_monomial_rep(5)
    r, s = M["r"], M["s"]
    ident = r.power(0)
    assert r.power(4) == ident
    assert (s @ r) @ (s @ r) == ident
