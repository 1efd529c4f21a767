from itertools import product

import numpy as np
import pytest

import oracles
from rfca.cellular import (
    EquivariantMap,
    LocalRule,
    NotClosed,
    Transformation,
    apply_rule,
    compose,
    enumerate_ca,
    from_wolfram,
    identity_ca,
    identity_rule,
    is_equivariant,
    map_from_json,
    map_to_json,
    random_ca,
    rule_from_function,
    rule_from_json,
    rule_to_json,
    rules_equal,
    tau_m,
    transformation_monoid,
)
from rfca.monoid_core import CATALOG
from rfca.shift_space import CapExceeded, Configuration, PeriodicWord, config_from_index, inv_integer, shift

SMALL = [M for M in CATALOG.values() if 2 ** M.size <= 8]


def test_is_equivariant_examples(z2):
    assert is_equivariant(z2, 2, range(4))
    assert is_equivariant(z2, 2, [3, 3, 3, 3])
    swap = [0, 2, 1, 3]  # 01 <-> 10
    f = {x: oracles.all_configs(2, 2)[swap[i]] for i, x in enumerate(oracles.all_configs(2, 2))}
    assert is_equivariant(z2, 2, swap) == oracles.equivariant(z2.table, 2, f)
    assert is_equivariant(z2, 2, [0, 1, 1, 3]) is False


def test_enumerate_ca_examples(trivial, z2):
    assert len(enumerate_ca(trivial, 2)) == 4
    graphs = [c.graph for c in enumerate_ca(z2, 2)]
    assert graphs == oracles.equivariant_graphs(z2.table, 2)
    assert tuple(range(4)) in graphs
    with pytest.raises(CapExceeded):
        enumerate_ca(z2, 2, cap=8)


@pytest.mark.parametrize("M", SMALL, ids=lambda M: M.name)
def test_enumerate_ca_matches_filter(M):
    got = [c.graph for c in enumerate_ca(M, 2)]
    assert got == oracles.equivariant_graphs_pruned(M.table, 2)
    if 2 ** M.size <= 4:
        assert got == oracles.equivariant_graphs(M.table, 2)


def test_enumerate_ca_ternary(trivial, z2):
    # trivial monoid: every self-map of A
    assert len(enumerate_ca(trivial, 3)) == 27
    assert [c.graph for c in enumerate_ca(CATALOG["trivial"], 3)] == oracles.equivariant_graphs(((0,),), 3)


@pytest.mark.parametrize("M", SMALL, ids=lambda M: M.name)
def test_ca_is_a_monoid(M):
    cas = enumerate_ca(M, 2)
    graphs = {c.graph for c in cas}
    assert identity_ca(M, 2).graph in graphs
    pairs = product(cas, cas) if len(cas) <= 16 else (
        (cas[i], cas[j]) for i, j in np.random.default_rng(1).integers(0, len(cas), size=(200, 2)))
    for s, t in pairs:
        assert compose(s, t).graph in graphs
    trip = cas[:6]
    for a, b, c in product(trip, repeat=3):
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_compose_identity(z2):
    for t in enumerate_ca(z2, 2):
        assert compose(identity_ca(z2, 2), t) == t == compose(t, identity_ca(z2, 2))


def test_compose_local_rules():
    r = compose(from_wolfram(110), from_wolfram(30))
    assert r.radius == 2 and len(r.table) == 32
    r90 = from_wolfram(90)
    sq = compose(r90, r90)
    expect = rule_from_function(2, 2, lambda w: w[0] ^ w[4])
    assert sq == expect


def test_compose_local_rules_acts_in_order(seed):
    rng = np.random.default_rng(seed)
    for _ in range(30):
        a, b = rng.integers(0, 256, size=2)
        r = compose(from_wolfram(int(a)), from_wolfram(int(b)))
        for w in product(range(2), repeat=5):
            assert apply_rule(r, PeriodicWord(w)).word == oracles.evolve(int(a), oracles.evolve(int(b), w))


def test_tau_m_examples(z6):
    assert tau_m(z6, 2, 0) == identity_ca(z6, 2)
    x = config_from_index(z6, 2, 0b011010)
    t = tau_m(z6, 2, 2)
    assert t(x).values == tuple(x.values[(2 + mp) % 6] for mp in range(6))


@pytest.mark.parametrize("name", list(CATALOG))
def test_tau_m_anti_morphism(name):
    M = CATALOG[name]
    taus = [tau_m(M, 2, m) for m in range(M.size)]
    assert taus[M.identity] == identity_ca(M, 2)
    for m1 in range(M.size):
        for m2 in range(M.size):
            assert taus[M.mul(m1, m2)] == compose(taus[m2], taus[m1])
    assert len({t.graph for t in taus}) == M.size
    for t in taus:
        assert is_equivariant(M, 2, t.graph)


def test_tau_m_injectivity_witness(z6):
    for m1 in range(6):
        x = Configuration(z6, tuple(1 if m == m1 else 0 for m in range(6)))
        for m2 in range(6):
            if m2 != m1:
                assert tau_m(z6, 2, m1)(x)(0) == 1 != 0 == tau_m(z6, 2, m2)(x)(0)


def test_apply_rule_examples():
    y = PeriodicWord((0, 1, 1, 0, 1))
    assert apply_rule(identity_rule(2), y).word == y.word
    assert apply_rule(from_wolfram(110), PeriodicWord((0, 1))).word == oracles.evolve(110, (0, 1)) == (1, 1)
    assert apply_rule(from_wolfram(90), PeriodicWord((0, 1))).word == (0, 0)


def test_apply_rule_matches_oracle():
    for n in range(256):
        for p in range(1, 5):
            for w in product(range(2), repeat=p):
                assert apply_rule(from_wolfram(n), PeriodicWord(w)).word == oracles.evolve(n, w)


def test_apply_rule_commutes_with_rotation():
    rules = [rule_from_function(0, 2, lambda w, f=f: f[w[0]]) for f in product(range(2), repeat=2)]
    rules += [from_wolfram(n) for n in range(256)]
    for r in rules:
        for p in range(1, 5):
            for w in product(range(2), repeat=p):
                y = PeriodicWord(w)
                for k in range(p):
                    assert apply_rule(r, shift(k, y)).word == shift(k, apply_rule(r, y)).word


def test_rules_equal_examples():
    r = from_wolfram(110)
    assert rules_equal(r, r)
    assert rules_equal(identity_rule(2), rule_from_function(1, 2, lambda w: w[1]))
    assert not rules_equal(from_wolfram(110), from_wolfram(90))
    with pytest.raises(Exception):
        rules_equal(from_wolfram(3), identity_rule(3))


def test_wolfram_round_trip():
    for n in (0, 30, 90, 110, 255):
        assert from_wolfram(n).wolfram == n
    # copy-center rule is 204
    assert rules_equal(from_wolfram(204), identity_rule(2))


def test_transformation_monoid_examples():
    X = inv_integer(2, 2)
    assert transformation_monoid(X, identity_rule(2)) == Transformation(4, (0, 1, 2, 3))
    t = transformation_monoid(X, from_wolfram(110))
    words = [w.word for w in X]
    expect = tuple(words.index(oracles.evolve(110, w)) for w in words)
    assert t.mapping == expect == (0, 3, 3, 0)
    with pytest.raises(NotClosed):
        transformation_monoid(X[:3], from_wolfram(110))


def test_transformation_respects_composition(z2, seed):
    rng = np.random.default_rng(seed)
    X = [config_from_index(z2, 2, i) for i in range(4)]
    sample = enumerate_ca(z2, 2)
    for s in sample:
        for t in sample:
            assert transformation_monoid(X, compose(s, t)) == \
                transformation_monoid(X, s).after(transformation_monoid(X, t))
    M = CATALOG["leftzero3"]
    X = [config_from_index(M, 2, i) for i in range(8)]
    for _ in range(50):
        s, t = random_ca(M, 2, rng), random_ca(M, 2, rng)
        assert transformation_monoid(X, compose(s, t)) == \
            transformation_monoid(X, s).after(transformation_monoid(X, t))


def test_rules_differ_on_short_period(seed):
    rng = np.random.default_rng(seed)
    for _ in range(40):
        r1 = LocalRule(1, 2, rng.integers(0, 2, size=8))
        r2 = LocalRule(2, 2, rng.integers(0, 2, size=32))
        if rules_equal(r1, r2):
            continue
        bound = 2 * 2 + 1
        assert any(apply_rule(r1, y) != apply_rule(r2, y)
                   for p in range(1, bound + 1) for y in inv_integer(p, 2))


def test_json_round_trips(z2):
    r = from_wolfram(110)
    assert rule_from_json(rule_to_json(r)) == r
    assert rule_from_json({"wolfram": 110}) == r
    t = enumerate_ca(z2, 2)[7]
    assert map_from_json(map_to_json(t)) == t
    with pytest.raises(Exception):
        map_from_json({"monoid": "z2", "alphabet": 2, "graph": [0, 1, 1, 3]})


def test_local_rule_validation():
    with pytest.raises(ValueError):
        LocalRule(1, 2, [0] * 7)
    with pytest.raises(ValueError):
        LocalRule(0, 2, [0, 2])
    with pytest.raises(Exception):
        EquivariantMap(CATALOG["z2"], 2, [0, 1, 2])
