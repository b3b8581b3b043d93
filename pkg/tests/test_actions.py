import itertools
import json
from pathlib import Path

import pytest

from nilaut import actions as ac
from nilaut import groupkit as gk
from nilaut.errors import NilautError
from nilaut.families import G2_SIGNATURE, gp_signature, theta_m, theta_uv
from nilaut.sigcalc import Signature, parse_signature

GOLDEN = Path(__file__).parent / "golden"


def brute_epimorphisms(sig, G):
    """Oracle: every tuple of elements, filtered by the definition directly."""
    out = []
    for tup in itertools.product(range(G.size), repeat=2 * sig.genus + sig.length):
        hyp, per = tup[: 2 * sig.genus], tup[2 * sig.genus :]
        if any(int(G.orders[x]) != m for x, m in zip(per, sig.periods)):
            continue
        if ac.long_relation(G, hyp, per) != G.identity:
            continue
        if gk.generates(G, tup):
            out.append(tup)
    return sorted(out)


@pytest.mark.parametrize(
    "sig, make",
    [
        ("(0; 2,2,2,4)", lambda: gk.dihedral(4)),
        ("(0; 2,2,4,4)", lambda: gk.dihedral(4)),
        ("(1; 2)", lambda: gk.dihedral(4)),
        ("(0; 3,3,3,3)", lambda: gk.cyclic(3)),
        ("(0; 2,2,2,2,2)", lambda: gk.from_permutations([(1, 0, 2, 3), (0, 1, 3, 2)])),
    ],
)
def test_enumeration_matches_bruteforce(sig, make):
    sig = parse_signature(sig)
    G = make()
    rows = ac.enumerate_image_tuples(sig, G)
    assert sorted(tuple(map(int, r)) for r in rows) == brute_epimorphisms(sig, G)


def test_theta_surface_kernel(g2_5):
    th = theta_uv(g2_5, 0, 0)
    assert ac.is_surface_kernel(th)
    assert th.genus() == 5


def test_kernel_violations(g2_5):
    s, r = g2_5.gen("s"), g2_5.gen("r")
    bad_order = ac.make_epimorphism(G2_SIGNATURE, g2_5, (s, s, s, s))
    assert "order" in ac.is_surface_kernel(bad_order).violation
    # right orders, but s s (s r) r = s r^2 is not the identity
    sr = g2_5.mul(s, r)
    rel = ac.make_epimorphism(G2_SIGNATURE, g2_5, (s, s, sr, r))
    assert not ac.is_surface_kernel(rel)
    D = gk.dihedral(4)
    small = ac.make_epimorphism(Signature(0, (2, 2, 2, 2)), D, (D.gen("s"),) * 4)
    assert ac.is_surface_kernel(small).violation == "images do not generate the group"


def test_arity_mismatch(g2_5):
    with pytest.raises(NilautError):
        ac.make_epimorphism(G2_SIGNATURE, g2_5, (1, 2, 3))


def test_moves_preserve_surface_kernel(gp_33):
    sig = gp_signature(3)
    rows = ac.enumerate_image_tuples(sig, gp_33)
    auts = gk.automorphisms(gp_33)
    for row in rows[:: max(1, len(rows) // 40)]:
        th = ac.make_epimorphism(sig, gp_33, row)
        for mv in ac.mapping_class_moves(sig) + [ac.automorphism(auts[5]), ac.conjugate_by(7)]:
            assert ac.is_surface_kernel(ac.apply_move(th, mv))


def test_braid_rules(d4):
    sig = parse_signature("(0; 2,2,2,4)")
    th = ac.make_epimorphism(sig, d4, ac.enumerate_image_tuples(sig, d4)[0])
    assert ac.is_surface_kernel(ac.apply_move(th, ac.braid(1)))
    assert ac.is_surface_kernel(ac.apply_move(th, ac.braid2(3)))
    with pytest.raises(ac.MoveError):
        ac.apply_move(th, ac.braid(3))
    with pytest.raises(ac.MoveError):
        ac.apply_move(th, ac.A1(1))


# small corpus, |G| <= 64: fast classifier vs brute-force label propagation
CORPUS = [
    ("(0; 2,2,2,4)", lambda: gk.dihedral(4)),
    ("(0; 2,2,4,4)", lambda: gk.dihedral(4)),
    ("(1; 2)", lambda: gk.dihedral(4)),
    ("(0; 2,2,2,4)", lambda: gk.build_G2(5)),
    ("(1; 3)", lambda: gk.build_Gp(3, 3)),
    ("(0; 3,3,3,3)", lambda: gk.direct_product(gk.cyclic(3, "x"), gk.cyclic(3, "y"))),
    ("(0; 2,2,2,2,2)", lambda: gk.from_permutations([(1, 0, 2, 3), (0, 1, 3, 2)])),
]


@pytest.mark.parametrize("sig, make", CORPUS)
@pytest.mark.parametrize("action", ["full", "inner"])
def test_classify_matches_naive_oracle(sig, make, action):
    sig = parse_signature(sig)
    G = make()
    auts = gk.automorphisms(G) if action == "full" else gk.inner_automorphisms(G)
    rep = ac.classify(sig, G, auts=auts, action=action)
    assert rep.partition() == ac.naive_orbit_partition(sig, G, auts=auts)
    assert sum(rep.orbit_sizes) == rep.total


def test_classify_rejects_unknown_action(d4):
    with pytest.raises(NilautError):
        ac.classify(G2_SIGNATURE, d4, action="outer")


def test_theta_chain_joins_theta1_and_theta2(gp_33):
    """theta_1 and theta_2 are equivalent once outer automorphisms are allowed."""
    G = gp_33
    w = lambda s: gk.eval_word(G, s)
    th = theta_m(G, 1)
    assert th.images == (w("a"), w("b"), w("a^3"))
    steps = [
        (ac.A1(-1), ("a", "a^5 b", "a^3")),
        (ac.A2(-1), ("a^2 b^2", "a^5 b", "a^3")),
        (ac.A1(-1), ("a^2 b^2", "b^2", "a^3")),
        (ac.A2(-1), ("a^2", "b^2", "a^3")),
    ]
    for mv, words in steps:
        th = ac.apply_move(th, mv)
        assert th.images == tuple(w(x) for x in words)
    omega = gk.hom_from_generators(G, G, {"a": w("a^5"), "b": w("b")})
    assert omega is not None and omega.is_bijective()
    assert omega not in gk.inner_automorphisms(G)
    th = ac.apply_move(th, ac.automorphism(omega))
    assert th.images == theta_m(G, 2).images


def test_gp33_orbit_counts(gp_33):
    sig = gp_signature(3)
    full = ac.classify(sig, gp_33)
    inner = ac.classify(sig, gp_33, action="inner")
    assert full.total == 432
    assert full.orbit_count == 1
    assert inner.orbit_sizes == [216, 216]
    where = {theta_m(gp_33, m).images: m for m in (1, 2)}
    assert sorted(where[t] for o in inner.orbits for t in o.members if t in where) == [1, 2]
    assert all(any(t in where for t in o.members) for o in inner.orbits)


def test_central_element_claim(g2_5):
    assert ac.central_element_claim(G2_SIGNATURE, g2_5)


def test_quotient_branch_data_against_riemann_hurwitz(g2_5):
    th = theta_uv(g2_5, 0, 0)
    for cls in gk.subgroup_classes_of_order(g2_5, 2) + gk.subgroup_classes_of_order(g2_5, 4):
        H = cls.representative
        q = ac.quotient_branch_data(th, H)
        # 2g - 2 = |H|(2g_H - 2) + sum over branch points of |H|(1 - 1/e)
        lhs = 2 * th.genus() - 2
        rhs = len(H) * (2 * q.genus - 2) + sum(len(H) - len(H) // e for e in q.branch)
        assert lhs == rhs
    z = g2_5.power(g2_5.gen("r"), 2)
    q = ac.quotient_branch_data(th, [g2_5.identity, z])
    assert (q.genus, q.branch) == (1, (2,) * 8)
    q = ac.quotient_branch_data(th, range(g2_5.size))
    assert q.signature == G2_SIGNATURE


def test_quotient_rejects_non_subgroup(g2_5):
    with pytest.raises(NilautError):
        ac.quotient_branch_data(theta_uv(g2_5, 0, 0), [0, g2_5.gen("r")])


def test_maximality_and_extension_witness():
    assert ac.maximality_lookup(G2_SIGNATURE).status == "maximal"
    assert ac.maximality_lookup(Signature(1, (5,))).extends_to == (Signature(0, (2, 2, 2, 10)),)
    assert ac.maximality_lookup(Signature(2, ())).status == "unknown"
    rep = ac.extension_witness_report(3, 3)
    assert rep.actions_tried > 1 and rep.epimorphisms_found == 0


def test_classify_golden_json(d4):
    rep = ac.classify(G2_SIGNATURE, d4)
    text = json.dumps(rep.to_json(), indent=2, sort_keys=True) + "\n"
    golden = GOLDEN / "classify_d4.json"
    assert text == golden.read_text()
