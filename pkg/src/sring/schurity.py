"""Schurity, cyclotomicity, normality, and the E4 x C_n clause classifier."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .autsearch import aut_sring
from .constructions import is_generalized_wreath
from .errors import WrongGroupShape
from .groups import AbelianGroup, Subgroup, aut_group, generated_subgroup, section_make, subgroup_from_members
from .perm import PermGroup, is_normal, regular_group
from .srings import SRing, relabel_by_first_occurrence


@dataclass
class SchurReport:
    schurian: bool
    aut_order: int
    stabilizer_orbits: list
    witness: tuple | None  # (class id, orbits splitting it) iff nonschurian

    def to_json(self) -> str:
        payload = {
            "schurian": self.schurian,
            "aut_order": str(self.aut_order),
        }
        if self.witness is not None:
            cid, orbits = self.witness
            payload["witness"] = {"class": cid, "orbits": [sorted(o) for o in orbits]}
        return json.dumps(payload)


def is_schurian(A: SRing, aut: PermGroup | None = None) -> SchurReport:
    """Compare the classes with the orbits of Aut(A)_e.

    Every class is a union of stabilizer orbits; A is schurian iff none
    splits.  The witness is the first class that does.
    """
    K = aut if aut is not None else aut_sring(A)
    labels = relabel_by_first_occurrence(K.stabilizer_orbit_labels(0).astype(np.int32))
    orbit_sets = {}
    for x, lab in enumerate(labels.tolist()):
        orbit_sets.setdefault(lab, []).append(x)
    orbits = [sorted(v) for _, v in sorted(orbit_sets.items())]
    witness = None
    for cid, members in enumerate(A.classes):
        hit = sorted({int(labels[int(x)]) for x in members})
        if len(hit) > 1:
            witness = (cid, [orbit_sets[h] for h in hit])
            break
    return SchurReport(
        schurian=witness is None,
        aut_order=K.order,
        stabilizer_orbits=orbits,
        witness=witness,
    )


_AUT_PERM_CACHE: dict = {}


def _aut_perm_matrix(G: AbelianGroup):
    """All of Aut(G) as one (|Aut|, n) permutation matrix, cached per group."""
    key = G.factors
    hit = _AUT_PERM_CACHE.get(key)
    if hit is None:
        autos = aut_group(G)
        hit = (autos, np.stack([f.perm for f in autos]))
        _AUT_PERM_CACHE[key] = hit
    return hit


def cayley_stabilizer(A: SRing):
    """Aut_G(A): the group automorphisms fixing every class setwise."""
    autos, mat = _aut_perm_matrix(A.group)
    keep = (A.class_of[mat] == A.class_of[None, :]).all(axis=1)
    return [f for f, ok in zip(autos, keep) if ok]


def is_cyclotomic(A: SRing):
    """(decision, Aut_G(A)): true iff the class-stabilizer orbits are the classes.

    If A = cyc(K, G) then K lies in the stabilizer K*, whose orbits refine
    the classes and coarsen the K-orbits, hence equal the classes; and
    conversely equality exhibits A as cyc(K*, G).
    """
    star = cayley_stabilizer(A)
    # K* is a group, so the orbit of x is exactly the set of images of x
    mat = np.stack([f.perm for f in star])
    same = all(
        len({frozenset(mat[:, int(x)].tolist()) for x in members}) == 1
        and len(frozenset(mat[:, int(members[0])].tolist())) == len(members)
        for members in A.classes
    )
    return same, star


def is_normal_sring(A: SRing, aut: PermGroup | None = None) -> bool:
    """Whether G_r is normal in Aut(A)."""
    K = aut if aut is not None else aut_sring(A)
    return is_normal(regular_group(A.group), K)


# -- the E4 x C_n classifier -----------------------------------------------------


def _e4cn_parts(G: AbelianGroup):
    """Subgroups H (the 2-part, must be E4) and D (odd part, must be C_{p^k} or C_pq)."""
    two_part = [g for g in range(G.order) if G.element_order(g) in (1, 2, 4)]
    H = generated_subgroup(G, [g for g in range(G.order) if G.element_order(g) == 2])
    odd = [g for g in range(G.order) if G.element_order(g) % 2 == 1]
    D = generated_subgroup(G, odd)
    n = D.order
    if H.order != 4 or len(two_part) != 4 or H.order * n != G.order:
        raise WrongGroupShape("group is not E4 x C_n")
    if max(G.element_order(g) for g in D.members) != n:
        raise WrongGroupShape("odd part is not cyclic")
    primes = []
    m = n
    d = 3
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            primes.append((d, e))
        d += 2
    if m > 1:
        primes.append((m, 1))
    shape_ok = (len(primes) == 1) or (len(primes) == 2 and all(e == 1 for _, e in primes))
    if n <= 1 or not shape_ok:
        raise WrongGroupShape(f"odd order {n} is not p^k or pq")
    return H, D, primes


def _restriction(A: SRing, U: Subgroup):
    """The S-ring induced on U presented as its own group, with the element map."""
    G = A.group
    S = section_make(U, generated_subgroup(G, []))
    return A.induced(S), S


def _quotient(A: SRing, L: Subgroup):
    G = A.group
    full = subgroup_from_members(G, range(G.order))
    S = section_make(full, L)
    return A.induced(S), S


def is_tensor_pair(A: SRing, G1: Subgroup, G2: Subgroup) -> bool:
    """Whether A = A_G1 (x) A_G2 for the complementary A-subgroups G1, G2."""
    G = A.group
    if G1.order * G2.order != G.order or (G1.mask & G2.mask) != 1:
        return False
    if not (A.is_a_subgroup(G1) and A.is_a_subgroup(G2)):
        return False
    cl1 = [set(int(x) for x in m) for m in A.classes if int(m[0]) in G1]
    cl2 = [set(int(x) for x in m) for m in A.classes if int(m[0]) in G2]
    products = set()
    for Y in cl1:
        for Z in cl2:
            products.add(frozenset(G.add(y, z) for y in Y for z in Z))
    return products == set(A.class_sets())


def has_nontrivial_tensor(A: SRing) -> bool:
    subs = A.a_subgroups()
    n = A.group.order
    for i, G1 in enumerate(subs):
        if G1.order in (1, n):
            continue
        for G2 in subs:
            if G2.order in (1, n) or G1.order * G2.order != n:
                continue
            if (G1.mask & G2.mask) == 1 and is_tensor_pair(A, G1, G2):
                return True
    return False


def _tensor_complemented(A: SRing, L_sub: Subgroup) -> bool:
    """Whether A_L is (x)-complemented in A (ambient = A's group)."""
    for H in A.a_subgroups():
        if H.order * L_sub.order == A.group.order and (H.mask & L_sub.mask) == 1:
            if is_tensor_pair(A, L_sub, H):
                return True
    return False


def circulant_radical_order(A: SRing) -> int:
    """|rad(A)| for a circulant S-ring: radical of a generator-bearing class."""
    G = A.group
    n = G.order
    gen_class = None
    for cid, members in enumerate(A.classes):
        if any(G.element_order(int(x)) == n for x in members):
            gen_class = cid
            break
    assert gen_class is not None, "cyclic group without a generator class"
    return A.radical(gen_class).order


def classify_e4cn(A: SRing) -> set:
    """Clause tags of the dense/nondense description over E4 x C_n.

    Tags: cyclotomic, tensor, and gwreath-(1..4) for the generalized wreath
    clauses; nonempty for every nontrivial S-ring over these groups.
    """
    G = A.group
    H, D, _primes = _e4cn_parts(G)
    if A.rank <= 2:
        raise ValueError("classifier requires a nontrivial S-ring (rank > 2)")
    n = D.order
    tags = set()
    if is_cyclotomic(A)[0]:
        tags.add("cyclotomic")
    if has_nontrivial_tensor(A):
        tags.add("tensor")
    dense = A.is_a_subgroup(H) and A.is_a_subgroup(D)
    three_k = _primes[0][0] == 3 and len(_primes) == 1

    subs = A.a_subgroups()
    sections = []
    for U in subs:
        for L in subs:
            if L.order == 1 or U.order == G.order:
                continue
            if not U.contains_subgroup(L):
                continue
            sections.append((U, L))
    sections.sort(key=lambda UL: (-UL[0].order, UL[1].order))
    for U, L in sections:
        S = section_make(U, L)
        ok, nontrivial = is_generalized_wreath(A, S)
        if not (ok and nontrivial):
            continue
        if U.order // L.order <= 2:
            tags.add("gwreath-1")
        A_U, sec_U = _restriction(A, U)
        L_in_U = generated_subgroup(
            A_U.group, [sec_U.project(x) for x in L.members]
        )
        if _tensor_complemented(A_U, L_in_U):
            tags.add("gwreath-2")
        else:
            A_quo, sec_quo = _quotient(A, L)
            S_in_quo = generated_subgroup(
                A_quo.group, [sec_quo.project(x) for x in U.members]
            )
            if _tensor_complemented(A_quo, S_in_quo):
                tags.add("gwreath-2")
        if not dense:
            candidates = []
            A_quo, _ = _quotient(A, L)
            u_cyclic = len([f for f in A_U.group.factors if f > 1]) <= 1
            q_cyclic = len([f for f in A_quo.group.factors if f > 1]) <= 1
            if u_cyclic and A_U.group.order > 1:
                candidates.append(A_U)
            if q_cyclic and A_quo.group.order > 1:
                candidates.append(A_quo)
            for B in candidates:
                if is_cyclotomic(B)[0] and circulant_radical_order(B) == 1:
                    tags.add("gwreath-3")
                    break
        if dense and U.contains_subgroup(H) and (L.mask & ~D.mask) == 0:
            A_U2, _ = _restriction(A, U)
            if is_cyclotomic(A_U2)[0]:
                UD = generated_subgroup(G, [g for g in U.members if g in D])
                A_UD, _ = _restriction(A, UD)
                rad_ok = True
                if UD.order > 1:
                    r = circulant_radical_order(A_UD)
                    rad_ok = r == 1 or (three_k and r == 3)
                if rad_ok:
                    tags.add("gwreath-4")
    return tags
