import itertools
import math
import random
from fractions import Fraction

import pytest

from groundsub.cayley import (
    Configuration,
    TreeContext,
    Truncation,
    ball,
    ball_size,
    brute_force_ground_states,
    build_ball_ground_subgroup,
    count_periodic_ground_states,
    distance,
    energy_U,
    hamiltonian,
    involutions,
    periodic_configuration,
    stabilizer_ground_search,
    verify_theorem3,
)
from groundsub.errors import (
    ColorOutOfRange,
    MissingCosetColor,
    PartialConfiguration,
    QTooSmall,
    StateSpaceTooLarge,
)
from groundsub.freegrp import difference_set, verify_ones_ground
from groundsub.groupcore import Mode, Permutation, Word, parse_word

I = Mode.INVOLUTIVE
T2 = TreeContext(2)
E = Word.identity(I)


def iw(text):
    return parse_word(text, I)


def test_ball_examples():
    b = ball(T2, E, 1)
    assert set(b.members) == {E, iw("a"), iw("b"), iw("c")}
    assert len(ball(T2, E, 2)) == 10
    assert len(ball(TreeContext(3), iw("a"), 1)) == 5


@pytest.mark.parametrize("k,r,size", [(2, 1, 4), (2, 2, 10), (3, 1, 5), (3, 2, 17)])
def test_ball_size_law(k, r, size):
    ctx = TreeContext(k)
    assert ball_size(k, r) == size
    assert len(ball(ctx, E, r)) == size
    g = ctx.words(3)[-1]
    assert len(ball(ctx, g, r)) == size


def test_ball_members_within_distance():
    for g in T2.words(2):
        b = ball(T2, g, 2)
        assert all(distance(v, g) <= 2 for v in b.members)
        # and every vertex within distance 2 appears
        assert {v for v in T2.words(4) if distance(v, g) <= 2} == set(b.members)


def test_metric_invariance_of_difference_set():
    base = difference_set(ball(T2, E, 1).members).star
    for g in T2.words(3):
        assert difference_set(ball(T2, g, 1).members).star == base


def test_truncation_geometry():
    t = Truncation(T2, 2, 1)
    assert len(t.vertices) == ball_size(2, 2)
    assert len(t.balls) == 4
    vs = set(t.vertices)
    assert all(set(b.members) <= vs for b in t.balls)
    assert set().union(*(b.members for b in t.balls)) == vs


def test_energy_examples():
    assert energy_U([2, 2, 2, 2], 4) == 3
    assert energy_U([1, 2, 3, 4], 4) == 0
    for i, j in itertools.product(range(1, 4), repeat=2):
        assert energy_U([i, j], 3) == (1 if i == j else 0)
    with pytest.raises(ColorOutOfRange):
        energy_U([0, 1], 3)


def test_energy_bounds_random():
    rng = random.Random(1)
    for _ in range(300):
        q = rng.randint(1, 6)
        vals = [rng.randint(1, q) for _ in range(rng.randint(1, 8))]
        u = energy_U(vals, q)
        assert len(vals) - min(len(vals), q) <= u <= len(vals) - 1
        assert (u == 0) == (len(set(vals)) == len(vals))
        assert (u == len(vals) - 1) == (len(set(vals)) == 1)


def _config(trunc, colors, q):
    return Configuration(dict(zip(trunc.vertices, colors)), q)


def test_hamiltonian_examples():
    t1 = Truncation(T2, 1, 1)
    assert hamiltonian(_config(t1, [1] * 4, 4), t1, 1) == -3
    assert hamiltonian(_config(t1, [1, 2, 3, 4], 4), t1, -1) == 0
    t2 = Truncation(T2, 2, 1)
    assert hamiltonian(_config(t2, [1] * 10, 2), t2, 1) == -12
    assert hamiltonian(_config(t2, [1] * 10, 2), t2, Fraction(1, 2)) == -6
    with pytest.raises(PartialConfiguration):
        hamiltonian(_config(t2, [1] * 4, 2), t2, 1)


def test_ball_ground_subgroup_kernel():
    c = build_ball_ground_subgroup(T2, 1)
    assert len(c.star) == 9
    members = ball(T2, E, 1).members
    assert verify_ones_ground(c.handle, members)
    for g in T2.words(2):
        assert verify_ones_ground(c.handle, ball(T2, g, 1).members)


def test_involution_counts():
    # 1, 2, 4, 10, 26, 76: a(n) = a(n-1) + (n-1) a(n-2)
    assert [len(involutions(d)) for d in range(1, 7)] == [1, 2, 4, 10, 26, 76]
    assert all((p * p).is_identity() for p in involutions(5))


def test_stabilizer_search_examples():
    H = stabilizer_ground_search(T2, 1, 4)
    assert H.rep.images == (Permutation.from_cycles(4, (1, 2)),
                            Permutation.from_cycles(4, (1, 3)),
                            Permutation.from_cycles(4, (1, 4)))
    assert [H.coset_id(w) for w in (E, iw("a"), iw("b"), iw("c"))] == [1, 2, 3, 4]
    assert H.index() == 4
    assert stabilizer_ground_search(T2, 1, 3) is None
    for g in T2.words(2):
        assert verify_ones_ground(H, ball(T2, g, 1).members)


def test_stabilizer_search_k3():
    ctx = TreeContext(3)
    H = stabilizer_ground_search(ctx, 1, 5)
    assert H.index() == 5
    for g in ctx.words(2):
        assert verify_ones_ground(H, ball(ctx, g, 1).members)


def test_periodic_configuration_examples():
    H = stabilizer_ground_search(T2, 1, 4)
    t2 = Truncation(T2, 2, 1)
    conf = periodic_configuration(H, {i: i for i in range(1, 5)}, t2)
    for b in t2.balls:
        assert energy_U([conf.assignment[v] for v in b.members], 4) == 0
    const = periodic_configuration(H, {i: 1 for i in range(1, 5)}, t2)
    assert set(const.assignment.values()) == {1}
    with pytest.raises(MissingCosetColor):
        periodic_configuration(H, {1: 1, 2: 2}, t2)


def test_periodicity_and_kernel_injective_coloring():
    t = Truncation(T2, 3, 1)
    K = build_ball_ground_subgroup(T2, 1).handle
    S = stabilizer_ground_search(T2, 1, 4)
    for H in (K, S):
        ids = sorted({H.coset_id(v) for v in t.vertices}, key=str)
        conf = periodic_configuration(H, {cid: i + 1 for i, cid in enumerate(ids)}, t)
        by_coset = {}
        for v in t.vertices:
            by_coset.setdefault(H.coset_id(v), set()).add(conf.assignment[v])
        assert all(len(colors) == 1 for colors in by_coset.values())
        for b in t.balls:
            assert energy_U([conf.assignment[v] for v in b.members], conf.q) == 0
            assert verify_ones_ground(H, b.members)


def test_count_periodic_ground_states():
    assert count_periodic_ground_states(4, 4) == 24
    assert count_periodic_ground_states(7, 7) == math.factorial(7)
    assert count_periodic_ground_states(5, 4) == 120
    with pytest.raises(QTooSmall):
        count_periodic_ground_states(3, 4)


def python_brute_force(ctx, r, R, q, J):
    """Independent oracle: itertools over all colourings with per-ball sets."""
    t = Truncation(ctx, R, r)
    balls = [[t.position[v] for v in b.members] for b in t.balls]
    best, argmin = None, []
    for colors in itertools.product(range(1, q + 1), repeat=len(t.vertices)):
        total = sum(len(b) - len({colors[i] for i in b}) for b in balls)
        energy = -Fraction(J) * total
        if best is None or energy < best:
            best, argmin = energy, [colors]
        elif energy == best:
            argmin.append(colors)
    return best, argmin


@pytest.mark.parametrize("R,q,J", [(1, 2, 1), (1, 4, -1), (2, 2, 1), (1, 3, -1), (2, 2, -1)])
def test_brute_force_matches_python_oracle(R, q, J):
    gs = brute_force_ground_states(T2, 1, R, q, J)
    best, argmin = python_brute_force(T2, 1, R, q, J)
    assert gs.min_energy == best
    assert gs.count == len(argmin)
    assert gs.minimizers == argmin


def test_brute_force_examples():
    gs = brute_force_ground_states(T2, 1, 1, 2, 1)
    assert gs.minimizers == [(1,) * 4, (2,) * 4]
    gs = brute_force_ground_states(T2, 1, 1, 4, -1)
    assert gs.min_energy == 0 and gs.count == 24
    assert all(len(set(m)) == 4 for m in gs.minimizers)
    gs = brute_force_ground_states(T2, 1, 2, 2, 1)
    assert gs.minimizers == [(1,) * 10, (2,) * 10]
    with pytest.raises(StateSpaceTooLarge):
        brute_force_ground_states(T2, 1, 2, 4, -1, cap=1000)


def test_report_limit_switches_to_counts():
    gs = brute_force_ground_states(T2, 1, 2, 4, -1, report_limit=100)
    assert gs.count == 192 and gs.minimizers is None


def test_sign_dichotomy():
    # J > 0 picks the colourings maximising sum U (the constants); J < 0 the minimisers
    for R, q in [(1, 3), (2, 2)]:
        pos = brute_force_ground_states(T2, 1, R, q, 1)
        big = brute_force_ground_states(T2, 1, R, q, Fraction(7, 3))
        neg = brute_force_ground_states(T2, 1, R, q, -1)
        assert pos.minimizers == big.minimizers
        n = len(pos.vertices)
        assert pos.minimizers == [(c,) * n for c in range(1, q + 1)]
        assert neg.minimizers == python_brute_force(T2, 1, R, q, -1)[1]
        sums = sorted(-e for e in pos.energy_histogram)
        assert pos.min_energy == -sums[-1]


def test_verify_ground_states_examples():
    rep = verify_theorem3(T2, 1, 2, 2, 1)
    assert rep.passed and rep.minimizer_count == 2
    rep = verify_theorem3(T2, 1, 2, 4, -1)
    assert rep.passed and rep.constructed_count == 24 and rep.formula_count == 24
    assert rep.method == "stabilizer" and rep.index == 4
    rep = verify_theorem3(T2, 1, 1, 3, -1)
    assert rep.min_energy == 1 and rep.passed
    assert rep.formula_count is None and rep.constructed_count == 0
    assert any("q=3 < K=4" in n for n in rep.notes)
    rep = verify_theorem3(T2, 1, 1, 4, -1)
    assert rep.passed and rep.minimizer_count == 24
