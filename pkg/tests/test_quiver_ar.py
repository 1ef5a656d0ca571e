import random

import pytest

from klrkit.errors import InvariantViolation
from klrkit.quiver_ar import (
    DynkinQuiver,
    HeightFunction,
    ar_quiver_dot,
    build_phi,
    coxeter_action,
    default_height,
    gamma,
    validate_height,
)
from klrkit.root_system import Weight, build_root_system, dynkin_edges

CASES = [
    ("A", 1, None), ("A", 2, None), ("A", 2, "2>1"), ("A", 3, None), ("A", 3, "1>2,3>2"),
    ("A", 3, "2>1,2>3"), ("A", 4, "2>1,2>3,4>3"), ("D", 4, None), ("D", 4, "2>1,2>3,2>4"),
    ("D", 5, None), ("E", 6, None),
]


def quiver(t, n, arrows=None):
    rs = build_root_system(t, n)
    return DynkinQuiver.parse(rs, arrows) if arrows else DynkinQuiver.default(rs)


def test_default_height_examples():
    assert default_height(quiver("A", 2, "1>2")).xi == (1, 0)
    assert default_height(quiver("A", 1)).xi == (0,)
    assert default_height(quiver("A", 3, "1>2,3>2")).xi == (1, 0, 1)


def test_gamma_examples():
    q = quiver("A", 2, "1>2")
    rs = q.rs
    assert gamma(q, 1) == rs.alpha(1)
    assert gamma(q, 2) == rs.alpha(1) + rs.alpha(2)
    assert gamma(quiver("A", 1), 1) == build_root_system("A", 1).alpha(1)


def test_phi_examples():
    q = quiver("A", 2, "1>2")
    rs = q.rs
    pt = build_phi(q, default_height(q))
    a1, a2 = rs.alpha(1), rs.alpha(2)
    assert pt.phi == {a1: (1, 1), a1 + a2: (2, 0), a2: (1, -1)}
    assert pt.lambda_of == {1: 1, 2: 1}
    assert pt.a_exp_of == {1: 1, 2: -1}
    pt1 = build_phi(quiver("A", 1), HeightFunction((3,)))
    assert pt1.phi == {build_root_system("A", 1).alpha(1): (1, 3)}


def test_coxeter_examples():
    q = quiver("A", 2, "1>2")
    rs = q.rs
    pt = build_phi(q, default_height(q))
    assert coxeter_action(pt, rs, rs.alpha(1), 1) == rs.alpha(2)
    w = Weight((4, -7))
    assert coxeter_action(pt, rs, w, 0) == w
    assert coxeter_action(pt, rs, w, 3) == w


@pytest.mark.parametrize("t,n,arrows", CASES)
def test_phi_bijective_with_parity(t, n, arrows):
    q = quiver(t, n, arrows)
    xi = default_height(q)
    pt = build_phi(q, xi)
    rs = q.rs
    assert set(pt.phi) == set(rs.positive_roots)
    assert len(set(pt.phi.values())) == len(rs.positive_roots)
    for i, p in pt.phi.values():
        assert (p - xi[i]) % 2 == 0
    word = pt.coxeter_word
    assert sorted(word) == list(rs.vertices())
    assert all(xi[a] >= xi[b] for a, b in zip(word, word[1:]))


@pytest.mark.parametrize("t,n,arrows", CASES)
def test_mesh_additivity(t, n, arrows):
    """Independent oracle: roots on each AR mesh satisfy dim M + dim tau M = sum of middle terms."""
    q = quiver(t, n, arrows)
    pt = build_phi(q, default_height(q))
    rs = q.rs
    inv = {v: w for w, v in pt.phi.items()}
    for (i, p), w in inv.items():
        tau = inv.get((i, p - 2))
        if tau is None:
            continue
        middle = rs.zero()
        for j in rs.vertices():
            if rs.adjacent(i, j) and (j, p - 1) in inv:
                middle = middle + inv[(j, p - 1)]
        assert w + tau == middle


@pytest.mark.parametrize("t,n,h", [("A", 2, 3), ("A", 3, 4), ("A", 4, 5), ("D", 4, 6), ("D", 5, 8),
                                   ("E", 6, 12), ("E", 7, 18), ("E", 8, 30)])
def test_coxeter_number_order(t, n, h):
    q = quiver(t, n)
    pt = build_phi(q, default_height(q))
    rs = q.rs
    assert rs.coxeter_number() == h
    for i in rs.vertices():
        w = rs.fundamental(i)
        assert coxeter_action(pt, rs, w, h) == w
    # and no smaller power fixes everything
    for k in range(1, h):
        assert any(coxeter_action(pt, rs, rs.fundamental(i), k) != rs.fundamental(i)
                   for i in rs.vertices())


@pytest.mark.parametrize("t,n,arrows", CASES)
def test_height_shift_covariance(t, n, arrows):
    q = quiver(t, n, arrows)
    xi = default_height(q)
    base = build_phi(q, xi)
    for c in (-3, 1, 4):
        moved = build_phi(q, xi.shifted(c))
        for w, (i, p) in base.phi.items():
            assert moved.phi[w] == (i, p + c)
        assert moved.lambda_of == base.lambda_of
        assert all(moved.a_exp_of[i] == base.a_exp_of[i] + c for i in q.rs.vertices())


@pytest.mark.parametrize("t,n,arrows", CASES)
def test_gamma_has_unit_coordinate(t, n, arrows):
    q = quiver(t, n, arrows)
    for i in q.rs.vertices():
        assert q.rs.to_alpha(gamma(q, i))[i - 1] == 1


def test_random_orientations():
    rng = random.Random(1)
    for t, n in [("A", 4), ("D", 5), ("E", 6)]:
        rs = build_root_system(t, n)
        for _ in range(5):
            arrows = tuple((a, b) if rng.random() < 0.5 else (b, a) for a, b in dynkin_edges(t, n))
            q = DynkinQuiver(rs, arrows)
            xi = default_height(q)
            assert min(xi.xi) == 0
            validate_height(q, xi)
            pt = build_phi(q, xi)
            assert len(set(pt.phi.values())) == len(rs.positive_roots)


def test_dot_output():
    q = quiver("A", 2, "1>2")
    pt = build_phi(q, default_height(q))
    dot = ar_quiver_dot(pt)
    assert dot.count("[label=") == 3
    assert dot.count("->") == 2
    assert '"1_-1" -> "2_0"' in dot and '"2_0" -> "1_1"' in dot
    assert dot == ar_quiver_dot(build_phi(q, default_height(q)))
    q1 = quiver("A", 1)
    dot1 = ar_quiver_dot(build_phi(q1, default_height(q1)))
    assert dot1.count("[label=") == 1 and "->" not in dot1


def test_invalid_inputs():
    rs = build_root_system("A", 3)
    with pytest.raises(ValueError):
        DynkinQuiver(rs, ((1, 2),))
    with pytest.raises(ValueError):
        DynkinQuiver(rs, ((1, 2), (2, 1), (2, 3)))
    with pytest.raises(ValueError):
        DynkinQuiver.parse(rs, "1-2,2>3")
    q = DynkinQuiver.default(rs)
    with pytest.raises((ValueError, InvariantViolation)):
        validate_height(q, HeightFunction((0, 0, 0)))
    assert q.points_to(2, 1) and not q.points_to(1, 2)
