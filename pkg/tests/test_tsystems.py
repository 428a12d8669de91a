from math import factorial

import numpy as np
import pytest

from dessins.errors import NotApplicable
from dessins.tsystems import (ALL_MOVES, MINIMAL_MOVES, MINUS_I_WORD, S_WORD, T_WORD, U_WORD, NielsenMove,
                              apply_nielsen, apply_word, higman_lower_bound_check, move_pair,
                              move_permutation, omega_action_order, omega_orbits)

from helpers import census, tsystems

GROUPS = ["C6", "D5", "S4", "A5", "PSL2_7", "F_13_3", "SL2_5"]


def word_map(c, word):
    return [apply_word(word, k, c) for k in range(c.r)]


def compose_maps(*maps):
    out = list(range(len(maps[0])))
    for m in maps:
        out = [m[i] for i in out]
    return out


@pytest.mark.parametrize("label", GROUPS)
def test_moves_are_permutations(label):
    c = census(label)
    for m in ALL_MOVES:
        perm = move_permutation(c, m)
        assert sorted(perm.tolist()) == list(range(c.r))


@pytest.mark.parametrize("label", GROUPS)
def test_e1_involution_and_type_swap(label):
    c = census(label)
    for cl in c.classes:
        d = apply_nielsen(NielsenMove.E1, cl, c)
        assert apply_nielsen(NielsenMove.E1, d, c) == cl.class_id
        l, m, n = cl.type
        assert c.classes[d].type == (m, l, n)
        assert c.classes[d].genus == cl.genus


@pytest.mark.parametrize("label", GROUPS)
def test_t_rotates_type(label):
    c = census(label)
    T = word_map(c, T_WORD)
    for cl in c.classes:
        l, m, n = cl.type
        assert c.classes[T[cl.class_id]].type == (n, l, m)
        assert c.classes[T[cl.class_id]].genus == cl.genus
    assert compose_maps(T, T, T) == list(range(c.r))


@pytest.mark.parametrize("label", GROUPS)
def test_s_squared_is_t_and_s_cubed_is_minus_i(label):
    c = census(label)
    S = word_map(c, S_WORD)
    T = word_map(c, T_WORD)
    minus_i = word_map(c, MINUS_I_WORD)
    assert compose_maps(S, S) == T
    assert compose_maps(S, S, S) == minus_i
    U = word_map(c, U_WORD)
    assert compose_maps(U, U) == minus_i


@pytest.mark.parametrize("label", GROUPS)
def test_minus_i_word_matches_direct_inversion(label):
    c = census(label)
    inv = c.group.inv
    for cl in c.classes:
        x, y = cl.rep
        assert apply_word(MINUS_I_WORD, cl, c) == c.class_of_pair(int(inv[x]), int(inv[y]))


@pytest.mark.parametrize("label", GROUPS)
def test_e5_lift_does_not_matter(label):
    c = census(label)
    for m in (NielsenMove.E5, NielsenMove.E5inv):
        right = move_permutation(c, m, e5_lift="right")
        left = move_permutation(c, m, e5_lift="left")
        assert np.array_equal(right, left)


def test_move_pair_definitions():
    c = census("S4")
    G = c.group
    mul, inv = G.mul, G.inv
    x, y = c.classes[0].rep
    assert move_pair(c, "E1", x, y) == (y, x)
    assert move_pair(c, "E2", x, y) == (inv[x], y)
    assert move_pair(c, "E3", x, y) == (x, inv[y])
    assert move_pair(c, "E4", x, y) == (mul[x, y], y)
    assert move_pair(c, "E5", x, y) == (x, mul[y, x])
    assert move_pair(c, "E4inv", *move_pair(c, "E4", x, y)) == (x, y)
    assert move_pair(c, "E5inv", *move_pair(c, "E5", x, y)) == (x, y)


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclic_single_orbit(n):
    assert tsystems(f"C{n}").nu == 1


@pytest.mark.parametrize("n", range(3, 13))
def test_dihedral_single_orbit(n):
    assert tsystems(f"D{n}").nu == 1


def test_a5_orbits():
    c = census("A5")
    ts = tsystems("A5")
    assert ts.nu == 2
    assert sorted(ts.lengths) == [9, 10]
    by_len = {o.length: o for o in ts.orbits}
    assert by_len[9].commutator_order == 3
    assert by_len[10].commutator_order == 5
    kinds = set()
    for k in by_len[9].members:
        cl = c.classes[k]
        t = tuple(sorted(cl.type))
        if t == (3, 5, 5):
            i, j = [a for a, v in enumerate(cl.type) if v == 5]
            pair = {(0, 1): 0, (1, 2): 1, (0, 2): 2}[(i, j)]
            assert not cl.conjugacy_pattern[pair]          # the "minus" kind
            kinds.add("355-")
        else:
            kinds.add(t)
    assert kinds == {(2, 5, 5), (3, 3, 5), "355-"}
    assert sum(ts.lengths) == c.r


@pytest.mark.parametrize("label", GROUPS + ["PSL2_8", "PSL2_11", "A6", "S5"])
def test_minimal_moves_give_same_partition(label):
    c = census(label)
    assert omega_orbits(c, ALL_MOVES).partition() == omega_orbits(c, MINIMAL_MOVES).partition()


@pytest.mark.parametrize("label", GROUPS + ["PSL2_8", "PSL2_11"])
def test_orbit_invariants(label):
    c = census(label)
    ts = tsystems(label)
    for o in ts.orbits:
        assert len({c.classes[k].commutator_order for k in o.members}) == 1
        assert len({c.classes[k].higman_label for k in o.members}) == 1
    assert sorted(k for o in ts.orbits for k in o.members) == list(range(c.r))


def test_omega_action_order():
    assert omega_action_order(census("A5")) == factorial(9) * factorial(10) == 1316818944000
    for label in ("C2", "D3"):
        c = census(label)
        assert tsystems(label).nu == 1
        assert omega_action_order(c) % c.r == 0      # transitive


@pytest.mark.parametrize("label,bound,nu", [("PSL2_5", 1, 2), ("PSL2_7", 2, 4), ("PSL2_11", 3, None),
                                            ("PSL2_13", 3, 12)])
def test_higman_bound(label, bound, nu):
    c = census(label)
    labels = higman_lower_bound_check(c, tsystems(label))
    assert labels >= bound
    assert tsystems(label).nu >= labels
    if nu is not None:
        assert tsystems(label).nu == nu


def test_higman_not_applicable():
    with pytest.raises(NotApplicable):
        higman_lower_bound_check(census("A6"))
    with pytest.raises(NotApplicable):
        higman_lower_bound_check(census("S4"))
