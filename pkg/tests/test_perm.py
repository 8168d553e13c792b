import math
import random

import numpy as np
import pytest

from sring.errors import DoesNotContainRegular, NotSubgroup
from sring.groups import aut_group, make_group
from sring.perm import (
    PermGroup,
    compose,
    inverse,
    is_normal,
    regular_group,
    transitivity_module,
    translation,
    two_equivalent,
)

from oracles import brute_perm_group_order


def sym_gens(n):
    return [np.array([1, 0] + list(range(2, n))), np.array(list(range(1, n)) + [0])]


def test_symmetric_group_orders():
    for n in range(2, 9):
        assert PermGroup(sym_gens(n), n).order == math.factorial(n)


def test_regular_representation():
    G = make_group([8, 2, 3])
    K = regular_group(G)
    assert K.order == 48
    assert int(K.orbits().max()) == 0
    assert K.point_stabilizer(0).order == 1
    C5 = make_group([5])
    assert regular_group(C5).order == 5


def test_holomorph_c5():
    from sring.perm import aut_perm_group, holomorph

    C5 = make_group([5])
    hol = PermGroup([translation(C5, 1)] + [f.perm for f in aut_group(C5)], 5)
    assert hol.order == 20
    assert is_normal(regular_group(C5), hol)
    assert holomorph(C5).order == 20
    assert aut_perm_group(C5).order == 4
    E4 = make_group([2, 2])
    assert holomorph(E4).order == 24
    assert is_normal(regular_group(E4), holomorph(E4))


def test_order_against_brute_force():
    random.seed(7)
    np.random.seed(7)
    for _ in range(30):
        gens = [np.random.permutation(8) for _ in range(random.randint(1, 3))]
        K = PermGroup(gens, 8)
        assert K.order == brute_perm_group_order([g.tolist() for g in gens], 8)


def test_membership_sifting():
    s5 = PermGroup(sym_gens(5), 5)
    a5 = PermGroup([np.array([1, 2, 0, 3, 4]), np.array([0, 1, 3, 4, 2])], 5)
    assert a5.order == 60
    random.seed(1)
    word = np.arange(5)
    for _ in range(50):
        word = compose(random.choice(s5.generators), word)
        assert s5.contains(word)
    assert not a5.contains(np.array([1, 0, 2, 3, 4]))
    assert a5.contains(compose(np.array([1, 0, 2, 3, 4]), np.array([0, 1, 2, 4, 3])))


def test_extend():
    a5 = PermGroup([np.array([1, 2, 0, 3, 4]), np.array([0, 1, 3, 4, 2])], 5)
    assert a5.extend(np.array([1, 0, 2, 3, 4]))
    assert a5.order == 120
    assert not a5.extend(np.array([1, 2, 3, 4, 0]))


def test_point_stabilizer_orbit_stabilizer():
    s6 = PermGroup(sym_gens(6), 6)
    C5 = make_group([5])
    hol = PermGroup([translation(C5, 1)] + [f.perm for f in aut_group(C5)], 5)
    for K in (s6, hol, regular_group(make_group([8, 2]))):
        st = K.point_stabilizer(0)
        assert st.order * len(K.orbit_of(0)) == K.order
        # stabilizer really fixes the point
        for g in st.generators:
            assert g[0] == 0
    # stabilizer at a non-initial base point
    st2 = s6.point_stabilizer(3)
    assert st2.order == math.factorial(5)


def test_is_normal():
    s4 = PermGroup(sym_gens(4), 4)
    v4 = regular_group(make_group([2, 2]))
    assert is_normal(v4, s4)
    c4 = regular_group(make_group([4]))
    assert not is_normal(c4, s4)
    a5 = PermGroup([np.array([1, 2, 0, 3, 4]), np.array([0, 1, 3, 4, 2])], 5)
    s5 = PermGroup(sym_gens(5), 5)
    assert is_normal(a5, s5)
    with pytest.raises(NotSubgroup):
        is_normal(s5, a5)


def test_two_equivalence():
    s5 = PermGroup(sym_gens(5), 5)
    a5 = PermGroup([np.array([1, 2, 0, 3, 4]), np.array([0, 1, 3, 4, 2])], 5)
    assert two_equivalent(s5, a5)
    assert two_equivalent(s5, s5)
    assert not two_equivalent(s5, regular_group(make_group([5])))
    # Hol(C5) = AGL(1,5) is 2-transitive, hence 2-equivalent to Sym(5)
    hol = PermGroup(
        [translation(make_group([5]), 1)] + [f.perm for f in aut_group(make_group([5]))], 5
    )
    assert two_equivalent(hol, s5)
    assert not two_equivalent(hol, regular_group(make_group([5])))


def test_transitivity_modules():
    C5 = make_group([5])
    assert transitivity_module(regular_group(C5), C5).rank == 5
    hol = PermGroup([translation(C5, 1)] + [f.perm for f in aut_group(C5)], 5)
    assert transitivity_module(hol, C5).rank == 2
    E4 = make_group([2, 2])
    hol_e4 = PermGroup(
        [translation(E4, 1), translation(E4, 2)] + [f.perm for f in aut_group(E4)], 4
    )
    assert transitivity_module(hol_e4, E4).rank == 2
    with pytest.raises(DoesNotContainRegular):
        transitivity_module(PermGroup([], 5), C5)


def test_v_k_g_equals_iff_two_equivalent():
    # V(K, G) = V(K', G) iff K ~2 K', over groups containing G_r
    C6 = make_group([6])
    Gr = regular_group(C6)
    auts = aut_group(C6)
    candidates = [
        PermGroup(Gr.generators, 6),
        PermGroup(Gr.generators + [auts[1].perm], 6),
        PermGroup(sym_gens(6), 6),
    ]
    for K1 in candidates:
        for K2 in candidates:
            same_module = (
                transitivity_module(K1, C6).key() == transitivity_module(K2, C6).key()
            )
            assert same_module == two_equivalent(K1, K2)
