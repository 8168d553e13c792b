from sring.checks import (
    check_dual_tensor,
    check_duality,
    check_galois,
    check_multiplier_suite,
    check_star_h1p1,
    is_gwreath_pair,
    run_property_suite,
    wreath_meets,
)
from sring.enumeration import enumerate_srings
from sring.groups import generated_subgroup, make_group
from sring.srings import full_group_ring, trivial_sring, validate


def test_property_suite_small_catalogs():
    for factors in ([4], [2, 2], [6], [9], [4, 2]):
        cat = enumerate_srings(make_group(factors))
        report = run_property_suite(cat)
        assert not report["failures"], report["failures"][:5]


def test_multiplier_suite_on_t2():
    from sring.repro import build_t2_instance

    assert not check_multiplier_suite(build_t2_instance(3))


def test_duality_on_t2():
    from sring.repro import build_t2_instance

    assert not check_duality(build_t2_instance(3))


def test_dual_tensor_pairs():
    C3 = make_group([3])
    C4 = make_group([4])
    assert not check_dual_tensor(trivial_sring(C3), full_group_ring(C4))
    assert not check_dual_tensor(validate(C4, [[0], [2], [1, 3]]), trivial_sring(C3))


def test_galois_on_flagged_entries():
    cat = enumerate_srings(make_group([8]))
    for entry in cat.entries:
        assert not check_galois(entry)


def test_circulant_checks():
    from sring.checks import check_circulant

    for factors in ([8], [9], [15], [12]):
        cat = enumerate_srings(make_group(factors))
        for entry in cat.entries:
            assert not check_circulant(entry), (factors, entry.rank)


def test_star_h1p1_where_applicable():
    # C2 x odd shapes
    for factors in ([6], [2, 2, 3], [4, 2]):
        cat = enumerate_srings(make_group(factors), compute_flags=False)
        for entry in cat.entries:
            assert not check_star_h1p1(entry.sring)


def test_wreath_meets_agrees_with_pairs():
    from sring.repro import build_t2_instance

    A = build_t2_instance(3)
    meets = wreath_meets(A)
    subs = A.a_subgroups()
    for U in subs:
        for L in subs:
            if not U.contains_subgroup(L):
                continue
            fast = (L.mask & ~meets[U.mask]) == 0
            assert fast == is_gwreath_pair(A, U, L)
