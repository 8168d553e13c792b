"""Product and transform constructions: cyclotomic, tensor, generalized
wreath, star recognition, and the dual S-ring.

Operand S-rings of a generalized wreath live over standalone groups; the
WreathSpec carries the generator images that embed them into the ambient
group and its quotient.  The assembled partition is re-validated, so a
construction bug cannot leak an invalid S-ring.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclo import char_exponent_table, _reduction_table
from .errors import GroupError, IncompatibleSection, SectionNotASection, SRingError
from .groups import (
    AbelianGroup,
    Automorphism,
    Section,
    Subgroup,
    make_group,
    section_make,
    subgroup_from_members,
)
from .srings import SRing, rank_rows, relabel_by_first_occurrence, validate, validate_labels

CLOSURE_BOUND = 10**6


def close_automorphisms(G: AbelianGroup, gens) -> list[Automorphism]:
    """Close a set of automorphisms under composition (and hence inverse)."""
    gens = list(gens)
    for f in gens:
        if f.group != G:
            raise GroupError("automorphism of a different group")
        if not f.is_bijective():
            raise GroupError("not bijective on G")
    ident = tuple(Automorphism(G, [g for g in _canonical_gen_indices(G)]).gen_images)
    seen = {}
    frontier = [Automorphism(G, ident)]
    seen[ident] = frontier[0]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = g.compose(f)
                if h.gen_images not in seen:
                    if len(seen) >= CLOSURE_BOUND:
                        raise SRingError("automorphism closure exceeds bound")
                    seen[h.gen_images] = h
                    nxt.append(h)
        frontier = nxt
    return sorted(seen.values(), key=lambda a: a.gen_images)


def _canonical_gen_indices(G: AbelianGroup):
    from .groups import _canonical_gens

    return _canonical_gens(G)


def cyclotomic(G: AbelianGroup, K) -> SRing:
    """cyc(K, G): classes are the orbits of K (closed under composition)."""
    group = close_automorphisms(G, K)
    labels = np.full(G.order, -1, dtype=np.int32)
    nxt = 0
    perms = [f.perm for f in group]
    for start in range(G.order):
        if labels[start] >= 0:
            continue
        labels[start] = nxt
        queue = [start]
        while queue:
            x = queue.pop()
            for p in perms:
                y = int(p[x])
                if labels[y] < 0:
                    labels[y] = nxt
                    queue.append(y)
        nxt += 1
    return validate_labels(G, labels)


def tensor(A1: SRing, A2: SRing) -> SRing:
    """The S-ring over G1 x G2 whose classes are products of operand classes."""
    G1, G2 = A1.group, A2.group
    G = make_group(G1.factors + G2.factors)
    n2 = G2.order
    labels = (
        A1.class_of[:, None].astype(np.int64) * A2.rank + A2.class_of[None, :]
    ).reshape(G.order)
    return validate_labels(G, relabel_by_first_occurrence(labels.astype(np.int32)))


def embed_hom(small: AbelianGroup, big: AbelianGroup, gen_images) -> np.ndarray:
    """index map small -> big of the homomorphism sending canonical generators
    to the given big-group elements; checked to respect factor orders."""
    gen_images = [int(g) for g in gen_images]
    if len(gen_images) != small.k:
        raise GroupError("one image per factor required")
    for n, img in zip(small.factors, gen_images):
        if big.scale(img, n) != 0:
            raise GroupError("generator image order does not divide factor order")
    out = np.zeros(small.order, dtype=np.int64)
    for x in range(small.order):
        acc = 0
        for c, img in zip(small.coords_of(x), gen_images):
            acc = big.add(acc, big.scale(img, c))
        out[x] = acc
    return out


@dataclass
class WreathSpec:
    """Operands and embeddings of a generalized wreath product over G.

    bottom lives over a group isomorphic to U, top over one isomorphic to
    G/L; *_gen_images are elements of G defining those isomorphisms (top
    images are coset representatives).
    """

    section: Section
    bottom: SRing
    bottom_gen_images: tuple
    top: SRing
    top_gen_images: tuple


def generalized_wreath(spec: WreathSpec) -> SRing:
    """The unique S-ring restricting to bottom on U, inducing top on G/L,
    with every class outside U a union of L-cosets."""
    S = spec.section
    G = S.G
    U, L = S.U, S.L
    full = subgroup_from_members(G, range(G.order))
    quo = section_make(full, L)  # G/L with projection

    # embed bottom onto U
    emb_b = embed_hom(spec.bottom.group, G, spec.bottom_gen_images)
    image = set(int(v) for v in emb_b)
    if len(image) != spec.bottom.group.order or image != set(U.members):
        raise SectionNotASection("bottom does not embed isomorphically onto U")
    # embed top onto G/L (generator images are coset representatives)
    emb_t = embed_hom(
        spec.top.group, quo.group, [quo.project(int(v)) for v in spec.top_gen_images]
    )
    if spec.top.group.order != quo.group.order or len(set(emb_t.tolist())) != quo.group.order:
        raise SectionNotASection("top does not embed isomorphically onto G/L")

    # A-subgroup requirements on the section
    L_in_bottom = [int(x) for x in range(spec.bottom.group.order) if int(emb_b[x]) in L]
    if not spec.bottom.is_union_of_classes(L_in_bottom):
        raise SectionNotASection("L is not an A-subgroup of the bottom operand")
    piU = {quo.project(int(u)) for u in U.members}
    piU_in_top = [x for x in range(spec.top.group.order) if int(emb_t[x]) in piU]
    if not spec.top.is_union_of_classes(piU_in_top):
        raise SectionNotASection("U/L is not an A-subgroup of the top operand")

    # compatibility: both operands induce the same S-ring on S = U/L
    bottom_induced = set()
    for members in spec.bottom.classes:
        bottom_induced.add(frozenset(quo.project(int(emb_b[int(x)])) for x in members))
    top_on_S = set()
    for members in spec.top.classes:
        img = frozenset(int(emb_t[int(x)]) for x in members)
        if img <= piU:
            top_on_S.add(img)
    if bottom_induced != top_on_S:
        raise IncompatibleSection("operands induce different S-rings on U/L")

    # assemble: bottom classes inside U; lifted top classes outside
    labels = np.full(G.order, -1, dtype=np.int64)
    for cid, members in enumerate(spec.bottom.classes):
        for x in members:
            labels[int(emb_b[int(x)])] = cid
    offset = spec.bottom.rank
    proj_all = np.array([quo.project(g) for g in range(G.order)], dtype=np.int64)
    top_class_of_quo = np.empty(quo.group.order, dtype=np.int64)
    top_class_of_quo[emb_t] = np.arange(spec.top.group.order)
    top_class_of_quo = spec.top.class_of[top_class_of_quo]
    outside = labels < 0
    labels[outside] = offset + top_class_of_quo[proj_all[outside]]
    return validate_labels(G, relabel_by_first_occurrence(labels.astype(np.int32)))


def plain_wreath(spec_section: Section, bottom: SRing, bottom_gen_images, top: SRing, top_gen_images) -> SRing:
    """The wreath product: the U/L-wreath with U = L."""
    return generalized_wreath(
        WreathSpec(spec_section, bottom, tuple(bottom_gen_images), top, tuple(top_gen_images))
    )


def is_generalized_wreath(A: SRing, S: Section):
    """(is S-wreath, is nontrivial): L inside rad(X) for every class outside U."""
    if not (A.is_a_subgroup(S.U) and A.is_a_subgroup(S.L)):
        raise SectionNotASection("U and L must be A-subgroups")
    U, L = S.U, S.L
    for cid, members in enumerate(A.classes):
        if int(members[0]) in U:
            continue
        rad = A.radical(cid)
        if not rad.contains_subgroup(L):
            return False, False
    nontrivial = L.order > 1 and U.order < A.group.order
    return True, nontrivial


def is_star(A: SRing, L: Subgroup, U: Subgroup) -> bool:
    """Star recognition over two A-subgroups.

    (1) classes inside U \\ L are unions of (L ∩ U)-cosets;
    (2) classes inside G \\ (L ∪ U) factor as Y * Z with Y a class in L and
        Z a class in U (exhaustive product search).
    """
    if not (A.is_a_subgroup(L) and A.is_a_subgroup(U)):
        raise SectionNotASection("L and U must be A-subgroups")
    G = A.group
    inter_mask = L.mask & U.mask
    inter = [i for i in range(G.order) if (inter_mask >> i) & 1]
    classes_in_L = [set(int(x) for x in m) for m in A.classes if int(m[0]) in L]
    classes_in_U = [set(int(x) for x in m) for m in A.classes if int(m[0]) in U]
    for members in A.classes:
        first = int(members[0])
        mem = set(int(x) for x in members)
        if all(x in U and x not in L for x in mem):
            # union of (L ∩ U)-cosets
            for x in mem:
                for h in inter:
                    if G.add(x, h) not in mem:
                        return False
        if all(x not in L and x not in U for x in mem):
            ok = False
            for Y in classes_in_L:
                for Z in classes_in_U:
                    prod = {G.add(y, z) for y in Y for z in Z}
                    if prod == mem:
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return False
    return True


# -- duality -------------------------------------------------------------------


def dual(A: SRing) -> SRing:
    """The dual S-ring on the character group, identified with G.

    Characters y, y' share a dual class iff chi_y(X) = chi_{y'}(X) exactly
    (as cyclotomic integers) for every class X.
    """
    G = A.group
    N = G.exponent
    table = char_exponent_table(G)  # (y, x) -> pairing exponent
    red = _reduction_table(N)  # (N, phi(N))
    sig_blocks = []
    for members in A.classes:
        exps = table[:, members]  # (n, |X|)
        counts = np.zeros((G.order, N), dtype=np.int64)
        np.add.at(counts, (np.arange(G.order)[:, None], exps), 1)
        sig_blocks.append(counts @ red)  # (n, phi(N)) exact coords
    sig = np.concatenate(sig_blocks, axis=1)
    labels = rank_rows(sig)
    out = validate_labels(G, relabel_by_first_occurrence(labels.astype(np.int32)))
    assert out.rank == A.rank, "duality must preserve rank"
    return out


_PERP_CACHE: dict = {}
_CHAR_TABLE_CACHE: dict = {}


def _char_table(G: AbelianGroup) -> np.ndarray:
    hit = _CHAR_TABLE_CACHE.get(G.factors)
    if hit is None:
        hit = char_exponent_table(G)
        _CHAR_TABLE_CACHE[G.factors] = hit
    return hit


def perp(G: AbelianGroup, H: Subgroup) -> Subgroup:
    """H-perp: characters vanishing on H, as a subgroup of G under the pairing."""
    key = (G.factors, H.mask)
    hit = _PERP_CACHE.get(key)
    if hit is None:
        table = _char_table(G)
        members = np.nonzero((table[:, H.member_array()] == 0).all(axis=1))[0]
        hit = subgroup_from_members(G, members.tolist())
        _PERP_CACHE[key] = hit
    return hit
