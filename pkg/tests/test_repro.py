import json

import pytest

from sring.errors import SRingError
from sring.repro import (
    build_t2_instance,
    build_t3_components,
    build_t3_instance,
    repro_t2,
    repro_t3,
    t2_expected_classes,
    t3_expected_a0_classes,
    t3_expected_a1_classes,
)


def test_t2_matches_paper_classes():
    for p in (3, 5, 7):
        A = build_t2_instance(p)
        assert A.rank == 13
        assert set(A.class_sets()) == set(t2_expected_classes(p))


def test_t2_precondition():
    with pytest.raises(SRingError):
        build_t2_instance(2)
    with pytest.raises(SRingError):
        build_t2_instance(9)
    with pytest.raises(SRingError):
        build_t2_instance(17)


def test_t2_nonschurian():
    result = repro_t2(3)
    assert result.classes_match
    assert not result.report.schurian
    payload = json.loads(result.to_json())
    assert payload["schurian"] is False


def test_t3_components_match_paper_classes():
    A0, A1 = build_t3_components(5)
    assert set(A0.class_sets()) == set(t3_expected_a0_classes())
    assert set(A1.class_sets()) == set(t3_expected_a1_classes(5))
    A0b, A1b = build_t3_components(7)
    assert set(A0b.class_sets()) == set(t3_expected_a0_classes())
    assert set(A1b.class_sets()) == set(t3_expected_a1_classes(7))


def test_t3_precondition():
    with pytest.raises(SRingError):
        build_t3_instance(3)
    with pytest.raises(SRingError):
        build_t3_instance(4)


def test_t3_builds_and_validates():
    A = build_t3_instance(5)
    assert A.group.order == 80
    assert A.rank == 11
    # nontrivial generalized wreath with schurian operands
    from sring.constructions import is_generalized_wreath
    from sring.groups import generated_subgroup, section_make

    G = A.group
    P = generated_subgroup(G, [G.index_of((0, 0, 0, 0, 1))])
    U = generated_subgroup(
        G,
        [
            G.index_of((1, 0, 0, 0, 0)),
            G.index_of((0, 1, 0, 0, 0)),
            G.index_of((0, 0, 1, 0, 0)),
            G.index_of((0, 0, 0, 0, 1)),
        ],
    )
    ok, nontrivial = is_generalized_wreath(A, section_make(U, P))
    assert ok and nontrivial


def test_t3_full_class_list():
    # the generalized wreath product: A1's nine classes inside U = E8 x P,
    # plus the two top classes outside V lifted by full P-cosets
    from sring.groups import make_group

    p = 5
    A = build_t3_instance(p)
    G = A.group
    U4 = make_group([2, 2, 2, p])
    expected = set()
    for members in t3_expected_a1_classes(p):
        expected.add(
            frozenset(
                G.index_of(U4.coords_of(x)[:3] + (0,) + U4.coords_of(x)[3:])
                for x in members
            )
        )
    tops = [
        [(0, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1), (1, 1, 1, 1)],
        [(1, 0, 0, 1), (1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1)],
    ]
    for top in tops:
        expected.add(
            frozenset(
                G.index_of(h + (t,)) for h in top for t in range(p)
            )
        )
    assert set(A.class_sets()) == expected


def test_t3_operands_schurian():
    from sring.schurity import is_schurian

    A0, A1 = build_t3_components(5)
    assert is_schurian(A0).schurian
    assert is_schurian(A1).schurian


def test_t2_operands_schurian_product_not():
    # the computational content of the Section 9 construction
    from sring.schurity import is_schurian

    A = build_t2_instance(3)
    rep = is_schurian(A)
    assert not rep.schurian
