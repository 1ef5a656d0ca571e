import random

import pytest

from klrkit import klr
from klrkit.combinat import enumerate_sequences, swap_adjacent
from klrkit.exact_algebra import MultiPoly, TruncSeries, monomials_upto, random_poly
from klrkit.klr import (
    FAMILIES,
    CompletedKLRVector,
    E,
    KLRVector,
    Tau,
    X,
    act,
    act_completed,
    act_word,
    evaluate_side,
    generator_degree,
    reduced_words,
    relation_instances,
    trace_component,
    verify_grading,
    verify_relations,
)
from klrkit.quiver_ar import DynkinQuiver
from klrkit.root_system import build_root_system


def quiver(t, n, arrows=None):
    rs = build_root_system(t, n)
    return DynkinQuiver.parse(rs, arrows) if arrows else DynkinQuiver.default(rs)


A2 = quiver("A", 2, "1>2")


def x(d, k):
    return MultiPoly.var(d, k)


def vec(q, seq, f):
    return KLRVector(q, len(seq), {tuple(seq): f})


def test_act_examples():
    one = KLRVector.basis(A2, (1, 1))
    assert not act(Tau(1), one)
    assert act(Tau(1), KLRVector.basis(A2, (1, 1), (1, 0))) == vec(A2, (1, 1), MultiPoly.constant(2, -1))
    got = act(Tau(1), KLRVector.basis(A2, (2, 1)))
    assert got == vec(A2, (1, 2), x(2, 2) - x(2, 1))
    # the "other" branch is a plain swap
    assert act(Tau(1), KLRVector.basis(A2, (1, 2), (2, 0))) == KLRVector.basis(A2, (2, 1), (0, 2))


def test_act_word_examples():
    rng = random.Random(0)
    seqs = enumerate_sequences(A2.rs, (1, 1))
    v = KLRVector(A2, 2, {s: random_poly(2, 3, rng) for s in seqs})
    assert act_word([], v) == v
    assert not act_word([E((1, 2)), E((2, 1))], v)
    assert act_word([X(1), X(2)], v) == act_word([X(2), X(1)], v)


def test_generator_degree_examples():
    c = A2.rs.cartan
    assert generator_degree(X(3), (1, 1, 2), c) == 2
    assert generator_degree(Tau(1), (1, 1), c) == -2
    assert generator_degree(Tau(1), (1, 2), c) == 1
    assert generator_degree(E((1, 2)), (1, 2), c) == 0
    a3 = build_root_system("A", 3)
    assert generator_degree(Tau(1), (1, 3), a3.cartan) == 0


def test_tau_square_vanishes_on_equal_labels():
    rng = random.Random(1)
    for _ in range(10):
        v = vec(A2, (1, 1, 2), random_poly(3, 4, rng))
        assert not act_word([Tau(1), Tau(1)], v)


def test_braid_example():
    # i_1 = i_3 = 1 and 1 <- 2 for the arrow 2 -> 1
    q = quiver("A", 2, "2>1")
    rng = random.Random(2)
    for _ in range(10):
        f = random_poly(3, 4, rng)
        v = vec(q, (1, 2, 1), f)
        lhs = act_word([Tau(2), Tau(1), Tau(2)], v) - act_word([Tau(1), Tau(2), Tau(1)], v)
        assert lhs == v


def test_idempotents_orthogonal_and_complete():
    rng = random.Random(3)
    q = quiver("A", 3)
    seqs = enumerate_sequences(q.rs, (1, 2, 1))
    v = KLRVector(q, 4, {s: random_poly(4, 3, rng) for s in seqs})
    total = KLRVector(q, 4)
    for i in seqs:
        total = total + act(E(i), v)
        assert act_word([E(i), E(i)], v) == act(E(i), v)
    assert total == v


def test_errors():
    v = KLRVector.basis(A2, (1, 2))
    with pytest.raises(IndexError):
        act(Tau(2), v)
    with pytest.raises(IndexError):
        act(X(3), v)
    with pytest.raises(ValueError):
        act(E((1, 2, 2)), v)


@pytest.mark.parametrize("t,n,arrows,beta", [
    ("A", 2, "1>2", (1, 1)), ("A", 2, "2>1", (2, 1)), ("A", 3, None, (1, 1, 1)),
    ("A", 3, "1>2,3>2", (1, 1, 1)), ("D", 4, None, (1, 1, 0, 1)), ("A", 1, None, (3,)),
])
def test_verify_relations_all_families(t, n, arrows, beta):
    q = quiver(t, n, arrows)
    rep = verify_relations(q.rs, q, beta, trials=5, seed=42)
    assert rep.ok, rep.summary()
    fams = set(rep.counts_by_check())
    expected = {"idempotent", "unit", "x_commute", "x_e", "tau_e", "tau_square", "tau_x"}
    if sum(beta) >= 3:
        expected.add("braid")
    if sum(beta) >= 4:
        expected.add("tau_far")
    assert expected <= fams <= set(FAMILIES)


def test_verify_relations_a2_seed_42():
    rep = verify_relations(A2.rs, A2, (1, 1), trials=50, seed=42)
    assert rep.ok
    d = rep.to_dict()
    assert d["failed"] == 0
    assert all(set(r) == {"relation_family", "instance", "status"} for r in d["results"])


def _bad_sign_act(gen, v):
    out = act(gen, v)
    if gen.kind == "tau":
        flip = {}
        for s, f in v.terms.items():
            if klr.tau_branch(v.quiver, s, gen.arg) == "left":
                flip[swap_adjacent(s, gen.arg)] = True
        out = KLRVector(v.quiver, v.d, {s: (-f if s in flip else f) for s, f in out.terms.items()})
    return out


def test_negative_control_sign_flip_is_detected(monkeypatch):
    monkeypatch.setattr(klr, "act", _bad_sign_act)
    rep = verify_relations(A2.rs, A2, (1, 1), trials=3, seed=0)
    assert not rep.ok
    bad = {r.check for r in rep.failures}
    assert "tau_square" in bad
    rec = [r for r in rep.to_dict()["results"] if r["status"] == "fail"][0]
    assert "counterexample" in rec


def test_negative_control_wrong_orientation_is_detected():
    # relation table for 1 -> 2, action computed for 2 -> 1
    table_q = A2
    act_q = quiver("A", 2, "2>1")
    seqs = enumerate_sequences(A2.rs, (1, 1))
    failures = 0
    for inst in relation_instances(table_q, seqs):
        if inst.family != "tau_square":
            continue
        for s in seqs:
            v = KLRVector.basis(act_q, s, (1, 0))
            if evaluate_side(inst.lhs, v, zero=KLRVector(act_q, 2)) != evaluate_side(
                    inst.rhs, v, zero=KLRVector(act_q, 2)):
                failures += 1
    assert failures > 0


def staircase_degree(q, seq):
    """#{k < l : arrow seq_l -> seq_k}: the grading shift of 1_seq."""
    return sum(1 for k in range(len(seq)) for l in range(k + 1, len(seq))
               if q.has_arrow(seq[l], seq[k]))


@pytest.mark.parametrize("t,n,arrows,beta", [
    ("A", 2, "1>2", (2, 1)), ("A", 3, "1>2,3>2", (1, 2, 1)), ("D", 4, None, (1, 1, 1, 1)),
])
def test_polynomial_degree_matches_klr_degree(t, n, arrows, beta):
    q = quiver(t, n, arrows)
    seqs = enumerate_sequences(q.rs, beta)
    d = len(seqs[0])
    for s in seqs:
        for e in monomials_upto(d, 3):
            v = KLRVector.basis(q, s, e)
            base = 2 * sum(e) + staircase_degree(q, s)
            for g in [X(k) for k in range(1, d + 1)] + [Tau(k) for k in range(1, d)]:
                out = act(g, v)
                for t2, f in out.terms.items():
                    assert f.is_homogeneous()
                    got = 2 * f.degree() + staircase_degree(q, t2)
                    assert got == base + generator_degree(g, s, q.rs.cartan)
                if g.kind == "x":
                    assert out.terms[s].degree() == sum(e) + 1


@pytest.mark.parametrize("beta", [(1, 1, 1, 1), (1, 2, 1, 0), (0, 2, 1, 1)])
def test_grading_table_d4(beta):
    q = quiver("D", 4)
    rep = verify_grading(q.rs, q, beta)
    assert rep.ok
    assert all(r.check == "grading" for r in rep.results)


def test_trace_component():
    assert trace_component(A2, (Tau(1), E((2, 1))), (1, 2)) == ((2, 1), 1)
    assert trace_component(A2, (Tau(1), E((1, 2))), (1, 2)) is None
    assert trace_component(A2, (Tau(1), X(2)), (1, 1)) == ((1, 1), 0)


def test_reduced_word_counts():
    # number of permutations of S_4 with length <= 3 is 1 + 3 + 5 + 6
    words = reduced_words(4, 3)
    assert len(words) == 15
    assert len(reduced_words(3, 10)) == 6


@pytest.mark.parametrize("t,n,beta", [("A", 2, (2, 1)), ("A", 3, (1, 1, 1)), ("A", 1, (3,))])
def test_reduced_words_act_nonzero(t, n, beta):
    """tau_w e(i) is nonzero for reduced w: no tested word collapses without a relation forcing it."""
    q = quiver(t, n)
    seqs = enumerate_sequences(q.rs, beta)
    d = len(seqs[0])
    # the staircase monomial is the top Schubert polynomial, so no divided difference kills it
    generic = MultiPoly.monomial(tuple(range(d - 1, -1, -1)))
    for w in reduced_words(d, 3):
        for s in seqs:
            v = vec(q, s, generic)
            assert act_word([Tau(k) for k in w], v), (w, s)
    # a non-reduced word acting on an equal-label block must be able to vanish
    assert not act_word([Tau(1), Tau(1)], vec(q, seqs[0], generic)) or seqs[0][0] != seqs[0][1]


def test_act_completed_matches_act():
    rng = random.Random(5)
    q = quiver("A", 2, "1>2")
    seqs = enumerate_sequences(q.rs, (2, 1))
    for _ in range(20):
        v = KLRVector(q, 3, {s: random_poly(3, 3, rng) for s in rng.sample(seqs, 2)})
        cv = CompletedKLRVector.from_vector(v, 6)
        for g in [Tau(1), Tau(2), X(2), E(seqs[0])]:
            out = act_completed(g, cv)
            assert out.eq_upto(CompletedKLRVector.from_vector(act(g, v), 6), out.order)


def test_act_completed_order_bookkeeping():
    q = A2
    N = 4
    s = TruncSeries.var(2, N, 1)
    eq = CompletedKLRVector(q, 2, {(1, 1): s}, N)
    assert act_completed(Tau(1), eq).order == N - 1
    assert act_completed(Tau(1), eq).eq_upto(CompletedKLRVector(q, 2, {(1, 1): TruncSeries.constant(2, N, -1)}, N))
    mixed = CompletedKLRVector(q, 2, {(2, 1): s}, N)
    assert act_completed(Tau(1), mixed).order == N
    assert act_completed(E((2, 1)), mixed).order == N
    assert act_completed(X(1), mixed).order == N
