import pytest
from hypothesis import given, settings

from emsurf.curve import cusp_label, curve_invariants, cusps, elliptic_count, genus
from emsurf.errors import InconsistentInvariants, MinusOneInGroup
from emsurf.oracle import brute_coset_space, brute_cusps
from emsurf.sl2 import MatZ
from emsurf.subgroup import PermutationRep, from_permutations, validate
from conftest import CORPUS_SPECS, group, lifted_rep, psl_actions


@pytest.mark.parametrize("text, expected", [
    # (psl_width, regular) multisets, frozen from the brute-force oracle
    ("gamma1:4", [(1, False), (1, True), (4, True)]),
    ("gamma:3", [(3, True)] * 4),
    ("gamma1:3", [(1, True), (3, True)]),
])
def test_cusp_examples(text, expected):
    G = group(text)
    N = G.origin.level
    oracle = brute_cusps(N, [g.entries for g in G.origin.generators])
    assert oracle == expected
    assert sorted((c.psl_width, c.regular) for c in cusps(G)) == expected


def test_gamma1_4_cusp_details():
    cs = cusps(group("gamma1:4"))
    assert cs[0].label == "inf" and cs[0].regular and cs[0].psl_width == 1
    irr = [c for c in cs if not c.regular]
    assert len(irr) == 1
    assert irr[0].psl_width == 1 and irr[0].sl_width == 2
    # the irregular cusp is Gamma_1(4)-equivalent to 1/2, whose first column is (1, 2) up to sign mod 4
    a, c = irr[0].witness.a, irr[0].witness.c
    assert (a % 4, c % 4) in {(1, 2), (3, 2)}


@pytest.mark.parametrize("text, eps3", [("gamma1:3", 1), ("gamma1:4", 0), ("gamma:3", 0)])
def test_elliptic_count(text, eps3):
    G = group(text)
    assert brute_coset_space(G.origin.level, [g.entries for g in G.origin.generators]).eps3 == eps3
    assert elliptic_count(G) == (0, eps3)


@pytest.mark.parametrize("mu, e3, ec, g", [(6, 0, 3, 0), (60, 0, 10, 1), (168, 0, 24, 3), (4, 1, 2, 0)])
def test_genus(mu, e3, ec, g):
    assert genus(mu, e3, ec) == g


def test_genus_rejects_nonintegral():
    with pytest.raises(InconsistentInvariants):
        genus(6, 0, 2)


@pytest.mark.parametrize("text, mu, g, e3, reg, irr", [
    ("gamma1:4", 6, 0, 0, 2, 1),
    ("gamma1:7", 24, 0, 0, 6, 0),
    ("gamma1:11", 60, 1, 0, 10, 0),
    ("gamma:7", 168, 3, 0, 24, 0),
])
def test_curve_invariants(text, mu, g, e3, reg, irr):
    ci = curve_invariants(group(text))
    assert (ci.mu, ci.g, ci.eps3, ci.eps_reg, ci.eps_irr, ci.eps2) == (mu, g, e3, reg, irr, 0)


@pytest.mark.parametrize("text", ["gamma1:2", "gamma:2", "gamma:1"])
def test_minus_one_refused(text):
    with pytest.raises(MinusOneInGroup):
        curve_invariants(group(text))


@pytest.mark.parametrize("text", CORPUS_SPECS)
def test_bookkeeping(text):
    G = group(text)
    ci = curve_invariants(G)
    assert sum(c.psl_width for c in ci.cusps) == ci.mu
    consumed = sorted(i for c in ci.cusps for i in c.cosets)
    assert consumed == list(range(G.rep.n))
    for c in ci.cusps:
        assert len(c.cosets) == (2 * c.psl_width)
        assert c.sl_width == (c.psl_width if c.regular else 2 * c.psl_width)
        # sl_width is the minimal N with gamma T^N gamma^-1 in Gamma: T^N fixes the witness coset
        i = G.rep.witnesses.index(c.witness)
        j, k = i, 0
        while True:
            j, k = G.rep.sigma_t[j], k + 1
            if j == i:
                break
        assert k == c.sl_width
    assert all(G.rep.sigma_s[i] != i for i in range(G.rep.n))


def test_labels():
    assert cusp_label(MatZ(1, 0, 0, 1)) == "inf"
    assert cusp_label(MatZ(0, -1, 1, 0)) == "0"
    assert cusp_label(MatZ(1, 0, -2, 1)) == "-1/2"


def test_broken_rep_is_caught():
    # a valid-looking rep whose T-orbit pairing is wrong never reaches cusps(): validate flags it
    G = group("gamma1:4")
    s = list(G.rep.sigma_t)
    s[0], s[1] = s[1], s[0]
    assert validate(PermutationRep(12, G.rep.sigma_s, tuple(s))) != []


@settings(max_examples=200, deadline=None)
@given(psl_actions())
def test_random_groups_have_integral_genus(data):
    n, s_pairs, u, signs, usigns = data
    s, t = lifted_rep(n, s_pairs, u, signs, usigns)
    ci = curve_invariants(from_permutations(len(s), s, t))
    assert ci.g >= 0
    assert sum(c.psl_width for c in ci.cusps) == ci.mu == len(s) // 2
