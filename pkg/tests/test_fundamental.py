from __future__ import annotations

import random

import oracles
import pytest
from builders import TRIVIAL_RING, Z2_RING, iv, m2tot, module_of, ring_of, singletons, z2_module
from test_submodules import z2_passing

from hvlab.fuzzy import IVIFS
from hvlab.fundamental import (
    Partition,
    UnionFind,
    achievable_sets,
    build_fundamental_quotient,
    epsilon_star,
    gamma_star,
    negation_monotone,
    quotient_ivifs,
    verify_quotient_transfer,
)
from hvlab.generators import (
    GenConfig,
    chain_ivifs,
    enumerate_hv_modules,
    enumerate_hv_rings,
    generate_hv_modules,
    ordinary_modules,
)
from hvlab.hyperstructures import Carrier, build_example_24, check_hv_module
from hvlab.intervals import BOTTOM, TOP
from hvlab.report import ConsistencyError
from hvlab.submodules import check_st_hv_submodule

ENUMERATED = list(enumerate_hv_modules(2, 1))


def example_24b_full():
    return build_example_24(z2_module().as_ordinary(), "b", [0, 1])


def test_union_find():
    uf = UnionFind(5)
    assert uf.union(3, 1) and not uf.union(1, 3)
    assert uf.union_mask(0b10101)
    p = Partition.from_union_find(Carrier.of_size(5), uf)
    assert p.to_json() == [["0", "2", "4"], ["1", "3"]]
    assert p.class_of == (0, 1, 0, 1, 0) and p.class_label(1) == "{1,3}"


def test_achievable_set_examples():
    fam = achievable_sets(z2_module())
    assert fam.module_sets == {0b01, 0b10}
    assert 0b11 in achievable_sets(m2tot()).module_sets
    assert 0b11 in achievable_sets(example_24b_full()).module_sets


def test_epsilon_examples():
    assert epsilon_star(z2_module()).is_identity()
    assert epsilon_star(m2tot()).to_json() == [["0", "1"]]
    assert epsilon_star(example_24b_full()).to_json() == [["0", "1"]]


def test_gamma_examples():
    assert gamma_star(Z2_RING).is_identity()
    assert len(gamma_star(TRIVIAL_RING)) == 1
    total_add = ring_of(2, ((3, 3), (3, 3)), singletons(((0, 0), (0, 1))))
    assert gamma_star(total_add).to_json() == [["0", "1"]]


def test_quotient_examples():
    q = build_fundamental_quotient(z2_module())
    assert q.size == 2 and q.core == 0b01
    assert q.to_json()["add"] == [["{0}", "{1}"], ["{1}", "{0}"]]
    assert q.to_json()["action"] == [["{0}", "{0}"], ["{0}", "{1}"]]
    for m in (m2tot(), example_24b_full()):
        q = build_fundamental_quotient(m)
        assert q.size == 1 and q.core == 0b11 and q.to_json()["core"] == "{0,1}"


def test_quotient_ivifs_examples():
    q = build_fundamental_quotient(m2tot())
    any_a = IVIFS.from_values(Carrier.of_size(2), [iv("0.1"), iv("0.2")], [iv("0.3"), iv("0.4")])
    aq = quotient_ivifs(any_a, q)
    assert aq.M.values == (TOP,) and aq.N.values == (BOTTOM,)
    qz = build_fundamental_quotient(z2_module())
    aq = quotient_ivifs(z2_passing(), qz)
    assert aq.M.values == (TOP, iv("0.3", "0.4")) and aq.N.values == (BOTTOM, iv("0.4", "0.5"))
    const = IVIFS.constant(Carrier.of_size(2), iv("0.5", "0.6"), iv("0.1", "0.2"))
    aq = quotient_ivifs(const, qz)
    assert aq.M.values == (TOP, iv("0.5", "0.6")) and aq.N.values == (BOTTOM, iv("0.1", "0.2"))


def test_quotient_ivifs_without_override_takes_sup_and_inf():
    q = build_fundamental_quotient(m2tot())
    a = IVIFS.from_values(Carrier.of_size(2), [iv("0.1", "0.5"), iv("0.2", "0.3")], [iv("0.3", "0.4"), iv("0.2", "0.5")])
    aq = quotient_ivifs(a, q, override=False)
    assert aq.M.values == (iv("0.2", "0.5"),) and aq.N.values == (iv("0.2", "0.4"),)


def test_quotient_transfer_examples(m2tot):
    assert verify_quotient_transfer(z2_module(), z2_passing()).ok
    assert verify_quotient_transfer(m2tot.module, m2tot.fuzzy["K"]).ok
    const = IVIFS.constant(Carrier.of_size(2), iv("0.25", "0.5"), iv("0.25", "0.5"))
    assert verify_quotient_transfer(example_24b_full(), const).ok
    assert verify_quotient_transfer(m2tot.module, m2tot.fuzzy["F"]).skipped


def test_dropping_the_core_override_fails_the_zero_condition():
    r = verify_quotient_transfer(z2_module(), z2_passing(), override=False)
    assert r.failed and r.condition == "zero"


def test_chain_oracle_agrees_with_union_find():
    mods = ENUMERATED + list(generate_hv_modules(GenConfig(4, 2, seed=31, budget=150, mode="random")))
    for m in mods:
        ring_sets, mod_sets = oracles.achievable_sets(m)
        fam = achievable_sets(m)
        as_sets = {frozenset(i for i in range(m.size) if u >> i & 1) for u in fam.module_sets}
        assert as_sets == mod_sets
        assert {frozenset(i for i in range(m.ring.size) if u >> i & 1) for u in fam.ring_sets} == ring_sets
        eps = epsilon_star(m, fam)
        assert [frozenset(i for i in range(m.size) if c >> i & 1) for c in eps.classes] == oracles.components(m.size, mod_sets)


def test_termination_bound():
    for m in ENUMERATED + list(generate_hv_modules(GenConfig(4, 3, seed=5, budget=60, mode="random"))):
        assert achievable_sets(m).rounds <= 2 ** m.size + 2 ** m.ring.size


def test_gamma_matches_congruence_oracle():
    for r in enumerate_hv_rings(2):
        assert [frozenset(i for i in range(2) if c >> i & 1) for c in gamma_star(r).classes] == oracles.ring_congruence(r)


def test_gamma_matches_congruence_oracle_on_random_rings():
    for m in generate_hv_modules(GenConfig(2, 3, seed=41, budget=80, mode="random")):
        r = m.ring
        got = [frozenset(i for i in range(r.size) if c >> i & 1) for c in gamma_star(r).classes]
        assert got == oracles.ring_congruence(r)


def test_quotients_are_consistent_at_desk_scale():
    rng = random.Random(6)
    checked = 0
    mods = ENUMERATED + list(generate_hv_modules(GenConfig(4, 3, seed=6, budget=300, mode="random")))
    for m in mods:
        q = build_fundamental_quotient(m)
        if m.zero is not None:
            assert q.module_partition.class_of[m.zero] == q.zero_class
        a = chain_ivifs(rng, m)
        if check_st_hv_submodule(m, a).ok:
            checked += 1
            assert negation_monotone(q, quotient_ivifs(a, q)).ok
    assert checked > 100


def test_ordinary_inputs_give_identity_quotients():
    for nr in (1, 2, 3):
        for nm in (1, 2, 3):
            for om in ordinary_modules(nr, nm):
                m = om.as_hv_module()
                q = build_fundamental_quotient(m)
                assert q.module_partition.is_identity() and q.ring_partition.is_identity()
                assert q.add_table == om.add
                assert q.action_table == om.action
                assert q.ring_add_table == om.ring_add and q.ring_mul_table == om.ring_mul
                assert q.zero_class == om.zero


def test_wrong_designated_zero_is_a_consistency_error():
    # total addition with a zero is fine; Z2 with 1 designated fails the module check first
    m = module_of(Z2_RING, 2, singletons(((0, 1), (1, 0))), singletons(((0, 0), (0, 1))), zero=1)
    assert not check_hv_module(m).ok
    with pytest.raises(ConsistencyError):
        build_fundamental_quotient(m)


def test_projection_is_a_strong_epimorphism():
    from hvlab.homomorphisms import classify_map

    for m in ENUMERATED:
        f = build_fundamental_quotient(m).canonical_projection()
        assert f.is_surjective() and classify_map(f)[0] == "strong"
