import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import formulas
from corpus import corpus, witness_pool
from fixmodal.decide import valid
from fixmodal.axioms import con, ground, instances, min_n
from fixmodal.formula import System, parse, variables
from fixmodal.fixlab import (
    K3,
    AndD,
    Bot,
    NotD,
    OrD,
    Pool,
    PoolTooLarge,
    PrimeViolation,
    Top,
    TruthOf,
    classify,
    compatible,
    definability_audit,
    enumerate_fixed_points,
    eval_k3,
    info_join,
    jump,
    least_fixed_point,
    parse_def,
    pool_eval,
    pool_valid,
    profile,
    realize,
    render_def,
    valuation_leq,
)
from fixmodal.fixlab.kleene import DefSyntaxError, UnresolvedName
from fixmodal.fixlab.modal import UnassignedVariable
from fixmodal.isolator import Tensor, enumerate_admissible

T_, F_, N_ = K3.TRUE, K3.FALSE, K3.NEITHER


def pool(**defs):
    return Pool.from_text(defs)


# -- strong Kleene ---------------------------------------------------------------

def test_eval_examples():
    assert eval_k3(NotD(TruthOf("s")), {"s": N_}) is N_
    assert eval_k3(AndD(Top(), Bot()), {}) is F_
    assert eval_k3(OrD(TruthOf("s"), NotD(TruthOf("s"))), {"s": N_}) is N_


def test_eval_tables():
    for a, b in itertools.product(K3, repeat=2):
        v = {"a": a, "b": b}
        assert eval_k3(AndD(TruthOf("a"), TruthOf("b")), v) == min(a, b)
        assert eval_k3(OrD(TruthOf("a"), TruthOf("b")), v) == max(a, b)


def test_unresolved():
    with pytest.raises(UnresolvedName):
        eval_k3(TruthOf("zz"), {})
    with pytest.raises(UnresolvedName):
        pool(a="True(b)")


def test_def_text_round_trip():
    d = parse_def("~True(a) & True(b) | TOP")
    assert d == OrD(AndD(NotD(TruthOf("a")), TruthOf("b")), Top())
    assert parse_def(render_def(d)) == d
    with pytest.raises(DefSyntaxError):
        parse_def("True(a")
    with pytest.raises(DefSyntaxError):
        parse_def("a & b")


# -- jump and fixed points -------------------------------------------------------

def test_jump_examples():
    assert jump(pool(l="~True(l)"), {"l": N_}) == {"l": N_}
    assert jump(pool(v0="TOP"), {"v0": N_}) == {"v0": T_}
    assert jump(pool(t="True(t)"), {"t": T_}) == {"t": T_}


def test_least_fixed_point_examples():
    assert least_fixed_point(pool(l="~True(l)", t="True(t)", g="TOP")) == {"l": N_, "t": N_, "g": T_}
    assert least_fixed_point(pool(g="True(g) | ~True(g)")) == {"g": N_}
    assert least_fixed_point(pool(a="TOP", b="True(a)")) == {"a": T_, "b": T_}


def test_enumeration_examples():
    assert [w["t"] for w in enumerate_fixed_points(pool(t="True(t)"))] == [T_, F_, N_]
    assert [w["l"] for w in enumerate_fixed_points(pool(l="~True(l)"))] == [N_]
    assert {w["g"] for w in enumerate_fixed_points(pool(g="True(g) | ~True(g)"))} == {T_, N_}


@pytest.mark.parametrize("name,p", sorted(corpus().items()))
def test_components_match_brute_force(name, p):
    fast = enumerate_fixed_points(p)
    slow = enumerate_fixed_points(p, method="brute")
    assert fast.points == slow.points and fast.minimum == slow.minimum
    for w in fast:
        assert jump(p, w) == w
        assert valuation_leq(fast.least, w)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_independent_truth_tellers(k):
    p = Pool.from_text({f"t{i}": f"True(t{i})" for i in range(k)})
    assert len(enumerate_fixed_points(p)) == 3 ** k


def test_caps():
    big = Pool.from_text({f"t{i}": f"True(t{(i + 1) % 13})" for i in range(13)})
    with pytest.raises(PoolTooLarge):
        enumerate_fixed_points(big)
    with pytest.raises(PoolTooLarge):
        enumerate_fixed_points(big, method="brute")


def random_pool(rng: random.Random, k: int) -> Pool:
    names = [f"s{i}" for i in range(k)]

    def gen(depth):
        r = rng.random()
        if depth == 0 or r < 0.3:
            return rng.choice([Top(), Bot()] + [TruthOf(n) for n in names] * 2)
        if r < 0.5:
            return NotD(gen(depth - 1))
        return rng.choice([AndD, OrD])(gen(depth - 1), gen(depth - 1))

    return Pool({n: gen(3) for n in names})


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10 ** 6), k=st.integers(1, 5))
def test_jump_is_monotone(seed, k):
    rng = random.Random(seed)
    p = random_pool(rng, k)
    lo = {n: rng.choice(list(K3)) for n in p.names}
    hi = {n: (x if x is not N_ else rng.choice(list(K3))) for n, x in lo.items()}
    assert valuation_leq(lo, hi)
    assert valuation_leq(jump(p, lo), jump(p, hi))


def _climb(p, v):
    while (nxt := jump(p, v)) != v:
        v = nxt
    return v


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10 ** 6), k=st.integers(1, 5))
def test_compatible_join_is_sound(seed, k):
    # the join sits below its own jump, so iterating reaches a fixed point above it
    p = random_pool(random.Random(seed), k)
    fps = enumerate_fixed_points(p)
    for u, w in itertools.combinations(fps.points, 2):
        if compatible(u, w):
            joined = info_join(u, w)
            assert valuation_leq(joined, jump(p, joined))
            top = _climb(p, joined)
            assert top in fps.points and valuation_leq(joined, top)


def test_compatible_join_need_not_be_fixed():
    p = pool(
        s0="True(s0) | (True(s3) & BOT) | (True(s2) | True(s3)) & True(s0)",
        s1="True(s2) & True(s2) & True(s1) & True(s0) & True(s4)",
        s2="~True(s4) | (True(s3) | True(s1)) & True(s1)",
        s3="(True(s1) | True(s0)) & True(s1) & TOP | True(s3)",
        s4="True(s3)",
    )
    code = dict(zip("TFN", (T_, F_, N_)))
    u = dict(zip(p.names, (code[c] for c in "TFNNN")))
    w = dict(zip(p.names, (code[c] for c in "TNNTT")))
    assert jump(p, u) == u and jump(p, w) == w and compatible(u, w)
    joined = info_join(u, w)
    assert jump(p, joined) != joined
    assert _climb(p, joined) == dict(zip(p.names, (code[c] for c in "TFFTT")))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10 ** 6), k=st.integers(1, 5))
def test_least_is_below_everything(seed, k):
    p = random_pool(random.Random(seed), k)
    fps = enumerate_fixed_points(p)
    assert fps.least == least_fixed_point(p)
    assert all(valuation_leq(fps.least, w) for w in fps)


# -- profiles and classification ------------------------------------------------

def test_profile_examples():
    p = pool(g="TOP", t="True(t)")
    assert profile(p, ["g", "t"]) == Tensor.from_cells({(1, 1), (1, 2), (1, 3)})
    assert profile(pool(t="True(t)"), ["t", "t"]) == Tensor.from_cells({(1, 1), (2, 2), (3, 3)})
    assert profile(pool(l="~True(l)"), ["l"]) == Tensor.from_cells({(3,)})
    with pytest.raises(KeyError):
        profile(p, ["nope"])


def test_classification_examples():
    g = classify(pool(g="True(g) | ~True(g)", t="True(t)"), "g")
    assert g.intrinsic and g.inevitable and not g.grounded
    d = classify(pool(t="True(t)", d="True(t) | ~True(t)"), "d")
    assert d.inevitable and not d.intrinsic
    assert classify(pool(l="~True(l)"), "l").paradoxical
    top = classify(pool(g="TOP"), "g")
    assert top.grounded and top.intrinsic
    t = classify(pool(t="True(t)"), "t")
    assert not (t.grounded or t.paradoxical or t.inevitable)


@pytest.mark.parametrize("name,p", sorted(corpus().items()))
def test_classification_invariants(name, p):
    fps = enumerate_fixed_points(p)
    for s in p.names:
        c = classify(p, s, fps)
        assert len(c.profile) >= 1
        if c.grounded:
            assert c.inevitable and c.intrinsic
        if c.paradoxical:
            assert not c.grounded


# -- realization -----------------------------------------------------------------

def test_realize_examples():
    p, names = realize(Tensor.from_cells({(1, 1)}))
    assert [p[n] for n in names] == [Top(), Top()]
    p, names = realize(Tensor.from_cells({(1, 1), (1, 3)}))
    assert p[names[0]] == Top() and p[names[1]] == parse_def("True(gamma) | ~True(gamma)")
    diag = Tensor.from_cells({(1, 1), (2, 2), (3, 3)})
    p, names = realize(diag)
    assert profile(p, names) == diag
    with pytest.raises(PrimeViolation):
        realize(Tensor.from_cells({(1, 1), (1, 3), (2, 3), (3, 1)}))


def test_realize_rejects_bad_input():
    with pytest.raises(PrimeViolation):
        realize(Tensor.from_cells({(1,), (2,)}))
    with pytest.raises(ValueError):
        realize(Tensor.from_cells({(4,)}, v=4))
    with pytest.raises(ValueError):
        realize(Tensor.from_cells({(3,)}), layout="other")


@pytest.mark.parametrize("n", [1, 2])
def test_realize_round_trip(n):
    for t in enumerate_admissible(System.S5ConGroundMin, n):
        p, names = realize(t)
        assert profile(p, names) == t, t


def test_dense_layout_leaks_cells():
    # consecutive selector codes let partially-undecided truth-tellers reach extra cells
    t = Tensor.from_cells({(1, 1), (1, 2), (3, 3)})
    p, names = realize(t, layout="dense")
    leaked = profile(p, names)
    assert set(t.cells()) < set(leaked.cells())
    failures = 0
    for t in enumerate_admissible(System.S5ConGroundMin, 2):
        p, names = realize(t, layout="dense")
        failures += profile(p, names) != t
    assert failures > 0


def test_realize_n3_sample():
    t = Tensor.from_cells({(1, 1, 1), (2, 2, 3), (3, 3, 3)}, n=3)
    p, names = realize(t)
    assert profile(p, names) == t


# -- modal evaluation over pools --------------------------------------------------

def test_pool_valid_examples():
    assert pool_valid(pool(t="True(t)"), ground(1), {1: "t"})
    assert not pool_valid(pool(g="TOP"), parse("[]N(x1)"), {"x1": "g"})
    lp = pool(l="~True(l)")
    assert pool_valid(lp, con(1), {1: "l"})
    with pytest.raises(UnassignedVariable):
        pool_valid(lp, parse("T(x2)"), {1: "l"})


def test_pool_eval_world_dependence():
    p = pool(t="True(t)")
    fps = enumerate_fixed_points(p)
    truths = [pool_eval(p, parse("T(x1)"), {1: "t"}, w, fps) for w in fps]
    assert truths == [True, False, False]


@pytest.mark.parametrize("name,p", sorted(corpus().items()))
def test_axioms_hold_over_pools(name, p):
    axioms = [con(1), con(2), ground(1), ground(2), min_n(2)]
    samples = [parse(s) for s in ("T(x1)", "F(x2)", "[]N(x1)", "T(x1) & ~F(x2)")]
    axioms += instances(System.S5, samples, [1, 2])
    fps = enumerate_fixed_points(p)
    for a, b in itertools.product(p.names, repeat=2):
        for ax in axioms:
            assert pool_valid(p, ax, {1: a, 2: b}, fps), (ax, a, b)


# -- definability audit -----------------------------------------------------------

def test_audit_on_witness_pool():
    report = definability_audit(witness_pool())
    assert len(report.candidates) == 64
    assert report.inevitable == {"g", "d", "top", "bot"}
    assert report.intrinsic == {"g", "top", "bot"}
    # no sentence here has profile FN, so dropping that isolator defines the same set
    assert {c.profiles for c in report.inevitable_matches} == {("TN", "FN", "T", "F"), ("TN", "T", "F")}
    assert report.intrinsic_matches == ()
    assert ("g", "d") in report.indiscernible_pairs


def test_audit_degenerate_pool():
    report = definability_audit(pool(g="TOP"))
    assert report.intrinsic == {"g"}
    assert any(c.profiles == ("T",) for c in report.intrinsic_matches)
    empty = next(c for c in report.candidates if not c.profiles)
    assert empty.members == frozenset()


@settings(max_examples=40, deadline=None)
@given(f=formulas(max_var=2, max_leaves=6))
def test_countermodels_are_refuted_in_realized_pools(f):
    v = valid(f, System.S5ConGroundMin)
    if v.valid:
        return
    p, names = realize(v.witness.frame)
    fps = enumerate_fixed_points(p)
    assignment = dict(zip(variables(f), names))
    worlds = [w for w in fps if tuple(w[n].code for n in names) == v.witness.world]
    assert worlds
    assert not any(pool_eval(p, f, assignment, w, fps) for w in worlds)
