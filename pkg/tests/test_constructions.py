import numpy as np
import pytest

from sring.constructions import (
    WreathSpec,
    cyclotomic,
    dual,
    generalized_wreath,
    is_generalized_wreath,
    is_star,
    perp,
    tensor,
)
from sring.errors import IncompatibleSection, SectionNotASection
from sring.groups import (
    Automorphism,
    aut_group,
    generated_subgroup,
    make_group,
    section_make,
    subgroup_from_members,
)
from sring.srings import full_group_ring, trivial_sring, validate


def identity_cyc_is_group_ring():
    C4 = make_group([4])
    assert cyclotomic(C4, [Automorphism(C4, [1])]).rank == 4


def test_cyclotomic_examples():
    C4 = make_group([4])
    assert cyclotomic(C4, [Automorphism(C4, [1])]).rank == 4
    assert cyclotomic(C4, [Automorphism(C4, [3])]).rank == 3
    # full automorphism group of E4 gives T_E4
    E4 = make_group([2, 2])
    assert cyclotomic(E4, aut_group(E4)).rank == 2
    # an order-3 rotation alone suffices
    rot = Automorphism(E4, [E4.index_of((0, 1)), E4.index_of((1, 1))])
    assert cyclotomic(E4, [rot]).rank == 2


def test_cyclotomic_sigma0_classes():
    from sring.repro import build_t3_components, t3_expected_a0_classes

    A0, _ = build_t3_components(5)
    assert set(A0.class_sets()) == set(t3_expected_a0_classes())


def test_tensor():
    E4 = make_group([2, 2])
    C3 = make_group([3])
    assert tensor(full_group_ring(E4), full_group_ring(C3)).rank == 12
    T = tensor(trivial_sring(E4), trivial_sring(C3))
    assert T.rank == 4 and T.group.factors == (2, 2, 3)
    C2 = make_group([2])
    Cp = make_group([3])
    assert tensor(trivial_sring(C2), trivial_sring(Cp)).rank == 4


def test_tensor_index_layout():
    A = tensor(full_group_ring(make_group([2])), trivial_sring(make_group([5])))
    G = A.group
    # class of (1, x) for x != 0 is {1} x C5^#
    cid = A.class_id_of(G.index_of((1, 1)))
    assert {tuple(G.coords_of(int(v))) for v in A.classes[cid]} == {
        (1, 1), (1, 2), (1, 3), (1, 4)
    }


def test_generalized_wreath_c4():
    C2 = make_group([2])
    C4 = make_group([4])
    L2 = generated_subgroup(C4, [2])
    spec = WreathSpec(
        section=section_make(L2, L2),
        bottom=full_group_ring(C2),
        bottom_gen_images=(2,),
        top=full_group_ring(C2),
        top_gen_images=(1,),
    )
    W = generalized_wreath(spec)
    assert sorted(sorted(int(x) for x in m) for m in W.classes) == [[0], [1, 3], [2]]


def test_generalized_wreath_identity_case():
    # L = {e}, U = G, top = bottom = A gives back A
    C6 = make_group([6])
    A = validate(C6, [[0], [3], [2, 4], [1, 5]])
    full = subgroup_from_members(C6, range(6))
    triv = generated_subgroup(C6, [])
    spec = WreathSpec(
        section=section_make(full, triv),
        bottom=A,
        bottom_gen_images=(1,),
        top=A,
        top_gen_images=(1,),
    )
    assert generalized_wreath(spec).key() == A.key()


def test_generalized_wreath_incompatible():
    # bottom induces ZC3 on U/L while top restricts to T_C3 there
    G = make_group([3, 3])
    C3 = make_group([3])
    U = generated_subgroup(G, [G.index_of((1, 0))])
    triv = generated_subgroup(G, [])
    top = tensor(trivial_sring(C3), full_group_ring(C3))
    spec = WreathSpec(
        section=section_make(U, triv),
        bottom=full_group_ring(C3),
        bottom_gen_images=(G.index_of((1, 0)),),
        top=top,
        top_gen_images=(G.index_of((1, 0)), G.index_of((0, 1))),
    )
    with pytest.raises(IncompatibleSection):
        generalized_wreath(spec)


def test_is_generalized_wreath():
    C4 = make_group([4])
    A3 = validate(C4, [[0], [2], [1, 3]])
    L2 = generated_subgroup(C4, [2])
    full = subgroup_from_members(C4, range(4))
    triv = generated_subgroup(C4, [])
    ok, nontrivial = is_generalized_wreath(A3, section_make(L2, L2))
    assert ok and nontrivial
    ok, nontrivial = is_generalized_wreath(A3, section_make(full, triv))
    assert ok and not nontrivial
    ok, _ = is_generalized_wreath(full_group_ring(C4), section_make(L2, L2))
    assert not ok
    from sring.repro import build_t2_instance

    A = build_t2_instance(3)
    G = A.group
    P = generated_subgroup(G, [G.index_of((0, 0, 1))])
    U = generated_subgroup(
        G, [G.index_of((2, 0, 0)), G.index_of((0, 1, 0)), G.index_of((0, 0, 1))]
    )
    ok, nontrivial = is_generalized_wreath(A, section_make(U, P))
    assert ok and nontrivial


def test_is_star():
    # star = tensor when the intersection is trivial
    C2 = make_group([2])
    C3 = make_group([3])
    A2 = tensor(trivial_sring(C2), trivial_sring(C3))
    G6 = A2.group
    B = generated_subgroup(G6, [G6.index_of((1, 0))])
    P = generated_subgroup(G6, [G6.index_of((0, 1))])
    assert is_star(A2, B, P)
    C4 = make_group([4])
    A3 = validate(C4, [[0], [2], [1, 3]])
    L2 = generated_subgroup(C4, [2])
    assert not is_star(A3, L2, L2)
    with pytest.raises(SectionNotASection):
        is_star(trivial_sring(C4), L2, L2)


def test_dual_basics():
    C4 = make_group([4])
    E4 = make_group([2, 2])
    for A in (
        full_group_ring(C4),
        trivial_sring(C4),
        validate(C4, [[0], [2], [1, 3]]),
        trivial_sring(E4),
        tensor(trivial_sring(E4), trivial_sring(make_group([3]))),
    ):
        D = dual(A)
        assert D.rank == A.rank
        assert dual(D).key() == A.key()
    # dual(ZG) has singleton classes
    assert dual(full_group_ring(C4)).rank == 4


def test_dual_t2_rank_preserved():
    from sring.repro import build_t2_instance

    A = build_t2_instance(3)
    assert dual(A).rank == 13


def test_perp():
    C4 = make_group([4])
    subs = [generated_subgroup(C4, []), generated_subgroup(C4, [2]), generated_subgroup(C4, [1])]
    assert [perp(C4, H).order for H in subs] == [4, 2, 1]
    G = make_group([2, 2, 3])
    for H in (generated_subgroup(G, [G.index_of((1, 0, 0))]),):
        p = perp(G, H)
        assert p.order * H.order == G.order  # abelian pairing is perfect


def test_dual_cyclotomic_correspondence():
    # Lemma: A = cyc(K, G) iff dual(A) = cyc(K, G-hat); checked via the decision
    from sring.schurity import is_cyclotomic

    C4 = make_group([4])
    A = validate(C4, [[0], [2], [1, 3]])
    ok, _ = is_cyclotomic(A)
    ok_dual, _ = is_cyclotomic(dual(A))
    assert ok and ok_dual
