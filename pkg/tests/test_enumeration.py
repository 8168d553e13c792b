import numpy as np
import pytest

from sring.enumeration import (
    Catalog,
    catalog_from_jsonl,
    catalog_to_jsonl,
    enumerate_srings,
)
from sring.errors import SRingError
from sring.groups import make_group
from sring.srings import sring_closure

from oracles import is_sring_partition, oracle_enumerate


def catalog_keys(catalog):
    return {
        tuple(sorted(tuple(sorted(int(x) for x in m)) for m in A.classes))
        for A in catalog.srings()
    }


def test_counts_match_spec_examples():
    for factors, expected in ([4], 3), ([2, 2], 5), ([5], 3), ([7], 4):
        assert len(enumerate_srings(make_group(factors), compute_flags=False)) == expected


def test_matches_oracle_small():
    for factors in ([2], [3], [4], [2, 2], [5], [6], [7], [8], [4, 2], [2, 2, 2], [9], [3, 3], [10]):
        G = make_group(factors)
        assert catalog_keys(enumerate_srings(G, compute_flags=False)) == oracle_enumerate(G)


def test_entries_distinct_sorted_and_valid():
    G = make_group([12])
    cat = enumerate_srings(G, compute_flags=False)
    keys = [A.key() for A in cat.srings()]
    assert len(set(keys)) == len(keys)
    ranks = [e.rank for e in cat.entries]
    assert ranks == sorted(ranks)
    for A in cat.srings():
        assert is_sring_partition(G, [m.tolist() for m in A.classes])


def test_closure_idempotent_and_monotone():
    G = make_group([8, 2])
    import random

    random.seed(11)
    for _ in range(10):
        labels = [0] + [random.randrange(3) + 1 for _ in range(G.order - 1)]
        parts = {}
        for x, l in enumerate(labels):
            parts.setdefault(l, []).append(x)
        A = sring_closure(G, list(parts.values()))
        again = sring_closure(G, [m.tolist() for m in A.classes])
        assert again.key() == A.key()
        # coarser input never yields a coarser closure than a finer input's
        finer = [[x] for x in range(G.order)]
        assert sring_closure(G, finer).rank >= A.rank


def test_flags_on_e4c3():
    cat = enumerate_srings(make_group([2, 2, 3]))
    assert len(cat) == 76
    assert all(e.schurian for e in cat.entries)
    for e in cat.entries:
        assert e.aut_order is not None and e.aut_order % 12 == 0
        if e.cyclotomic:
            assert e.schurian
    # ZG and T_G endpoints
    assert cat.entries[0].rank == 2 and cat.entries[-1].rank == 12
    assert cat.entries[0].primitive
    trivial = cat.entries[0]
    assert trivial.aut_order == 479001600  # 12!


def test_enumeration_bound():
    with pytest.raises(SRingError):
        enumerate_srings(make_group([5, 13]), compute_flags=False)


def test_iso_representatives():
    from sring.enumeration import mark_iso_representatives
    from sring.groups import aut_group

    G = make_group([2, 2, 3])
    cat = enumerate_srings(G, compute_flags=False)
    rep_of = mark_iso_representatives(cat)
    # orbits partition the catalog and their sizes divide |Aut(G)|
    n_aut = len(aut_group(G))
    orbits = {}
    for i, rep in rep_of.items():
        orbits.setdefault(rep, []).append(i)
    assert sum(len(v) for v in orbits.values()) == len(cat)
    for members in orbits.values():
        assert n_aut % len(members) == 0
    # representatives are their own representatives
    keys = [A.key() for A in cat.srings()]
    for rep, members in orbits.items():
        assert rep in {keys[i] for i in members}
    assert len(orbits) < len(cat)  # E4 x C3 has nontrivial Aut-orbits


def test_catalog_jsonl_round_trip():
    cat = enumerate_srings(make_group([6]))
    text = catalog_to_jsonl(cat)
    back = catalog_from_jsonl(text)
    assert catalog_keys(back) == catalog_keys(cat)
    assert [e.rank for e in back.entries] == [e.rank for e in cat.entries]
    assert [e.aut_order for e in back.entries] == [e.aut_order for e in cat.entries]
    assert catalog_to_jsonl(back) == text
