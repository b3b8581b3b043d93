import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilaut import bounds, groupkit
from nilaut.sigcalc import Signature, parse_signature

# expected coefficients c in |G| <= c (g-1), written out by hand
NILPOTENT = {1: "8", 2: "4", 3: "2", 4: "4/3", 5: "1", 6: "4/5"}
P_COEFF = {
    3: ["3", "3/2", "1", "3/4", "3/5", "1/2"],
    5: ["5/2", "5/4", "1", "5/7", "5/9", "1/2"],
    7: ["7/3", "7/6", "1", "7/10", "7/13", "1/2"],
}


@pytest.mark.parametrize("d", range(1, 7))
def test_nilpotent_table(d):
    assert bounds.max_order_coefficient("nilpotent", d) == Fraction(NILPOTENT[d])
    sigs = bounds.extremal_signatures("nilpotent", d)
    want = Signature(0, (2, 2, 2, 4)) if d == 1 else Signature(0, (2,) * (d + 3))
    assert sigs == [want]


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("d", range(1, 7))
def test_p_table(p, d):
    assert bounds.max_order_coefficient(p, d) == Fraction(P_COEFF[p][d - 1])


def test_p3_equality_set():
    assert bounds.extremal_signatures(3, 1) == [parse_signature("(0; 3,3,3,3)"), parse_signature("(1; 3)")]


def test_two_means_nilpotent():
    assert bounds.bound(2, 3).p == "nilpotent"


def test_bad_inputs():
    with pytest.raises(bounds.BoundError):
        bounds.max_order_coefficient(4, 1)
    with pytest.raises(bounds.BoundError):
        bounds.max_order_coefficient(3, 0)


def _local(sig, p):
    per = []
    for m in sig.periods:
        q = 1
        while m % p == 0:
            q, m = q * p, m // p
        if q > 1:
            per.append(q)
    return sig.genus, sorted(per)


def _admissible_oracle(sig):
    primes = {q for m in sig.periods for q in range(2, m + 1) if m % q == 0 and all(q % k for k in range(2, q))}
    for p in primes:
        h, per = _local(sig, p)
        if h == 0 and (len(per) == 1 or (len(per) == 2 and per[0] != per[1])):
            return False
    return True


def _naive_min(d, periods):
    # oracle: all multisets, no pruning
    best, arg = None, []
    for h in range(d // 3 + 2):
        l = d + 3 - 3 * h
        if l < 0:
            continue
        for per in itertools.combinations_with_replacement(periods, l):
            sig = Signature(h, per)
            area = 2 * h - 2 + sum(1 - Fraction(1, m) for m in per)
            if area <= 0 or not _admissible_oracle(sig):
                continue
            if best is None or area < best:
                best, arg = area, [sig]
            elif area == best:
                arg.append(sig)
    return best, sorted(arg, key=lambda s: (s.genus, s.periods))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_search_matches_naive_nilpotent(d):
    res = bounds.min_area_search(d)
    best, arg = _naive_min(d, range(2, 17))
    assert res.min_area == best
    assert res.argmin == arg


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_search_matches_naive_p(p, d):
    res = bounds.min_area_search(d, p)
    best, arg = _naive_min(d, bounds.allowed_periods(p))
    assert (res.min_area, res.argmin) == (best, arg)


@pytest.mark.parametrize("fam", ["nilpotent", 3, 5, 7])
@pytest.mark.parametrize("d", range(1, 7))
def test_search_reproduces_closed_form(fam, d):
    res = bounds.min_area_search(d, fam)
    b = bounds.bound(fam, d)
    assert res.min_area == b.min_area
    assert res.argmin == list(b.extremal_signatures)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["nilpotent", 3, 5, 7]), st.integers(1, 11))
def test_coefficients_non_increasing(fam, d):
    assert bounds.max_order_coefficient(fam, d + 1) <= bounds.max_order_coefficient(fam, d)


def test_verdicts(d4, g2_5, gp_33):
    sig = parse_signature("(0; 2,2,2,4)")
    assert bounds.check_action_against_bound(d4, sig, 1).status == "extremal"
    assert bounds.check_action_against_bound(g2_5, sig, 1).status == "extremal"
    assert bounds.check_action_against_bound(gp_33, parse_signature("(1; 3)"), 1).status == "extremal"
    v = bounds.check_action_against_bound(groupkit.cyclic(12), parse_signature("(0; 2,2,2,3)"), 1)
    assert (v.status, v.genus) == ("violates", 2)
    assert bounds.check_action_against_bound(d4, parse_signature("(1; 2)"), 1).status == "consistent"


def test_dimension_mismatch_raises():
    with pytest.raises(bounds.BoundError, match="dimension"):
        bounds.check_action_against_bound(groupkit.cyclic(4), parse_signature("(0; 2,2,2,4)"), 2)


def test_bound_not_applicable():
    with pytest.raises(bounds.BoundError, match="bound not applicable"):
        bounds.bound_family_of(groupkit.dihedral(3))
