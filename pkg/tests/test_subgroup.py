import itertools
import json

import pytest
from hypothesis import given, settings

from emsurf.errors import InvalidInput, InvalidRepresentation
from emsurf.sl2 import GENERATORS, reduce_mod, mul_mod
from emsurf.subgroup import (
    PermutationRep, builtin_spec, close_subgroup, compose, contains_minus_one,
    dumps_permutation, export_permutation, from_permutations, load_permutation, sl2_order,
    validate,
)
from conftest import CORPUS_SPECS, group, lifted_rep, psl_actions


def brute_sl2_order(N):
    one = 1 % N
    return sum(1 for a, b, c, d in itertools.product(range(N), repeat=4) if (a * d - b * c) % N == one)


@pytest.mark.parametrize("N", range(1, 13))
def test_sl2_order_matches_enumeration(N):
    assert sl2_order(N) == brute_sl2_order(N)


def test_frozen_orders():
    # exhaustive counts
    assert brute_sl2_order(3) == 24
    assert brute_sl2_order(4) == 48


def test_builtin_specs():
    g14 = builtin_spec("gamma1", 4)
    assert len(close_subgroup(g14)) == 4
    assert close_subgroup(builtin_spec("gamma", 3)) == {(1, 0, 0, 1)}
    assert close_subgroup(builtin_spec("gamma1", 1)) == {(0, 0, 0, 0)}
    with pytest.raises(InvalidInput):
        builtin_spec("gamma0", 5)


@pytest.mark.parametrize("text, n", [("gamma1:4", 12), ("gamma:3", 24), ("gamma1:3", 8), ("gamma1:1", 1)])
def test_index(text, n):
    assert group(text).rep.n == n


@pytest.mark.parametrize("text, expected", [
    ("gamma1:4", False), ("gamma1:2", True), ("gamma:3", False), ("gamma:1", True), ("gamma:2", True),
    ("gamma1:1", True),
])
def test_contains_minus_one(text, expected):
    G = group(text)
    assert contains_minus_one(G) is expected
    assert G.minus_one is expected


@pytest.mark.parametrize("text", CORPUS_SPECS + ["gamma1:2", "gamma:2"])
def test_structural_invariants(text):
    G = group(text)
    N = G.origin.level
    H = close_subgroup(G.origin)
    assert validate(G.rep) == []
    assert G.rep.n * len(H) == sl2_order(N)
    minus = compose(G.rep.sigma_s, G.rep.sigma_s)
    fixed = sum(1 for i, j in enumerate(minus) if i == j)
    assert fixed in (0, G.rep.n)
    if not G.minus_one:
        assert G.rep.n % 2 == 0


@pytest.mark.parametrize("text", ["gamma1:4", "gamma1:6", "gamma:4", "gamma1:9"])
def test_witness_consistency(text):
    G = group(text)
    N = G.origin.level
    H = close_subgroup(G.origin)
    rep = G.rep
    assert rep.witnesses[0] == (1, 0, 0, 1)
    for i in range(rep.n):
        for name, perm in (("S", rep.sigma_s), ("T", rep.sigma_t)):
            lhs = reduce_mod(rep.witnesses[i] @ GENERATORS[name], N).entries
            target = reduce_mod(rep.witnesses[perm[i]], N).entries
            assert lhs in {mul_mod(h, target, N) for h in H}


def test_validate_relation_violation():
    # 4-cycle-free S: sigma_s a 3-cycle breaks S^4
    rep = PermutationRep(3, (1, 2, 0), (0, 1, 2))
    assert any("S^4" in v for v in validate(rep))


def test_validate_intransitive():
    rep = PermutationRep(2, (0, 1), (0, 1))
    problems = validate(rep)
    assert any(v.startswith("transitivity") for v in problems)


def test_validate_shape():
    assert validate(PermutationRep(3, (0, 1), (0, 1, 2)))[0].startswith("shape")
    assert validate(PermutationRep(2, (0, 0), (0, 1)))[0].startswith("shape")


def _swap(seq, i, j):
    seq = list(seq)
    seq[i], seq[j] = seq[j], seq[i]
    return tuple(seq)


@pytest.mark.parametrize("i, j", [(0, 1), (2, 5), (3, 11), (7, 8)])
def test_fault_injection_in_sigma_t(i, j):
    G = group("gamma1:4")
    bad = PermutationRep(12, G.rep.sigma_s, _swap(G.rep.sigma_t, i, j))
    assert validate(bad) != []


@pytest.mark.parametrize("i, j", [(0, 1), (2, 5), (4, 9)])
def test_fault_injection_in_sigma_s(i, j):
    G = group("gamma1:4")
    bad = PermutationRep(12, _swap(G.rep.sigma_s, i, j), G.rep.sigma_t)
    assert validate(bad) != []


def test_mixed_minus_one_rejected():
    # S is a 4-cycle on 1..4 and fixes 0, so S^2 fixes exactly one coset
    rep = PermutationRep(5, (0, 2, 3, 4, 1), (0, 1, 2, 3, 4))
    assert any(v.startswith("minus-one") for v in validate(rep))


def test_round_trip():
    G = group("gamma1:4")
    doc = export_permutation(G)
    assert list(doc) == ["n", "sigma_s", "sigma_t", "label"]
    H = load_permutation(json.dumps(doc))
    assert (H.rep.n, H.rep.sigma_s, H.rep.sigma_t) == (G.rep.n, G.rep.sigma_s, G.rep.sigma_t)
    assert H.rep.witnesses == G.rep.witnesses
    assert export_permutation(H) == doc
    assert dumps_permutation(H) == dumps_permutation(G)


def test_export_is_bit_stable():
    assert dumps_permutation(group("gamma1:5")) == dumps_permutation(group("gamma1:5"))


def test_load_errors():
    with pytest.raises(InvalidInput, match="length"):
        load_permutation({"n": 3, "sigma_s": [0, 1], "sigma_t": [0, 1, 2]})
    with pytest.raises(InvalidInput, match="JSON"):
        load_permutation("{not json")
    with pytest.raises(InvalidRepresentation) as exc:
        load_permutation({"n": 3, "sigma_s": [1, 2, 0], "sigma_t": [0, 1, 2]})
    assert len(exc.value.violations) >= 2


def test_inconsistent_generator():
    from emsurf.sl2 import MatModN
    from emsurf.subgroup import CongruenceSpec
    with pytest.raises(InvalidInput):
        CongruenceSpec(5, (MatModN(2, 0, 0, 2, 5),), "bad")


@settings(max_examples=150, deadline=None)
@given(psl_actions())
def test_lifted_actions_are_valid(data):
    s, t = lifted_rep(*data)
    assert validate(PermutationRep(len(s), s, t)) == []
    G = from_permutations(len(s), s, t)
    assert not G.minus_one
    assert G.origin is None
