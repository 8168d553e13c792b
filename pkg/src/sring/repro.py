"""Deterministic builders for the two explicit nonschurian constructions and
the desk-scale theorem checks."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .constructions import WreathSpec, cyclotomic, generalized_wreath, tensor
from .enumeration import enumerate_srings
from .errors import SRingError
from .groups import (
    Automorphism,
    generated_subgroup,
    make_group,
    section_make,
)
from .schurity import SchurReport, classify_e4cn, is_schurian
from .srings import SRing, trivial_sring, validate


@dataclass
class ReproResult:
    name: str
    group: str
    sring: SRing
    classes_match: bool
    expected_classes: list
    report: SchurReport

    def to_json(self) -> str:
        G = self.sring.group
        classes = [
            sorted(",".join(str(c) for c in G.coords_of(int(x))) for x in members)
            for members in self.sring.classes
        ]
        return json.dumps(
            {
                "name": self.name,
                "group": self.group,
                "classes_match": self.classes_match,
                "classes": classes,
                "schurian": self.report.schurian,
                "aut_order": str(self.report.aut_order),
            }
        )


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _squares_mod(p: int):
    return {pow(t, 2, p) for t in range(1, p)}


# -- Section 9: the nonschurian S-ring over C8 x C2 x C_p ------------------------


def build_t2_instance(p: int) -> SRing:
    """The 13-class S-ring over C8 x C2 x C_p via the wreath/cyclotomic pipeline."""
    if not (_is_prime(p) and p % 2 == 1 and p <= 13):
        raise SRingError("p must be an odd prime at most 13")
    squares = _squares_mod(p)

    # A1 = cyc(F, C4 x C_p): the fiber product of Aut(C_p) with Aut(C4) over
    # the index-2 quotient (sigma is a square iff it acts trivially on C4)
    G4p = make_group([4, p])
    F = []
    for t in range(1, p):
        s = 1 if t in squares else 3
        F.append(
            Automorphism(G4p, [G4p.index_of((s, 0)), G4p.index_of((0, t))])
        )
    A1 = cyclotomic(G4p, F)

    # A2 = T_B (x) T_P over C2 x C_p
    A2 = tensor(trivial_sring(make_group([2])), trivial_sring(make_group([p])))

    # A12 = A1 wr_{U1/A1} A2 over U = C4 x C2 x C_p (L = the C4 factor)
    Gu = make_group([4, 2, p])
    U1 = generated_subgroup(Gu, [Gu.index_of((1, 0, 0)), Gu.index_of((0, 0, 1))])
    A1sub = generated_subgroup(Gu, [Gu.index_of((1, 0, 0))])
    A12 = generalized_wreath(
        WreathSpec(
            section=section_make(U1, A1sub),
            bottom=A1,
            bottom_gen_images=(Gu.index_of((1, 0, 0)), Gu.index_of((0, 0, 1))),
            top=A2,
            top_gen_images=(Gu.index_of((0, 1, 0)), Gu.index_of((0, 0, 1))),
        )
    )

    # A3 = cyc(<inversion>, C8); A4 = the explicit rank-6 partition of C4 x C2
    C8 = make_group([8])
    A3 = cyclotomic(C8, [Automorphism(C8, [7])])
    G42 = make_group([4, 2])
    A4 = validate(
        G42,
        [
            [(0, 0)], [(2, 0)], [(1, 1)], [(3, 1)],
            [(1, 0), (3, 0)], [(0, 1), (2, 1)],
        ],
    )

    # A34 = A3 wr_{A/A2} A4 over C8 x C2 (L = A2 = <a^4>)
    G82 = make_group([8, 2])
    Asub = generated_subgroup(G82, [G82.index_of((1, 0))])
    A2sub = generated_subgroup(G82, [G82.index_of((4, 0))])
    A34 = generalized_wreath(
        WreathSpec(
            section=section_make(Asub, A2sub),
            bottom=A3,
            bottom_gen_images=(G82.index_of((1, 0)),),
            top=A4,
            top_gen_images=(G82.index_of((1, 0)), G82.index_of((0, 1))),
        )
    )

    # A = A12 wr_{U/P} A34 over G = C8 x C2 x C_p
    G = make_group([8, 2, p])
    U = generated_subgroup(
        G, [G.index_of((2, 0, 0)), G.index_of((0, 1, 0)), G.index_of((0, 0, 1))]
    )
    P = generated_subgroup(G, [G.index_of((0, 0, 1))])
    A = generalized_wreath(
        WreathSpec(
            section=section_make(U, P),
            bottom=A12,
            bottom_gen_images=(
                G.index_of((2, 0, 0)),
                G.index_of((0, 1, 0)),
                G.index_of((0, 0, 1)),
            ),
            top=A34,
            top_gen_images=(G.index_of((1, 0, 0)), G.index_of((0, 1, 0))),
        )
    )
    return A


def t2_expected_classes(p: int):
    """The 13 listed basic sets over C8 x C2 x C_p, as index sets."""
    G = make_group([8, 2, p])
    squares = _squares_mod(p)
    a = lambda k, j=0: G.index_of((k % 8, j, 0))
    P_all = [G.index_of((0, 0, t)) for t in range(p)]
    P_sharp = P_all[1:]
    P1 = [G.index_of((0, 0, t)) for t in sorted(squares)]
    P2 = [G.index_of((0, 0, t)) for t in range(1, p) if t not in squares]

    def plus(base, dset):
        return {G.add(base, x) for x in dset}

    A1b = {G.index_of((k, 1, 0)) for k in (0, 2, 4, 6)}
    classes = [
        {0},
        {a(4)},
        {a(2), a(6)},
        set(P_sharp),
        plus(a(4), P_sharp),
        plus(a(2), P1) | plus(a(6), P2),
        plus(a(2), P2) | plus(a(6), P1),
        A1b,
        {G.add(h, x) for h in A1b for x in P_sharp},
        plus(a(1), P_all) | plus(a(7), P_all),
        plus(a(3), P_all) | plus(a(5), P_all),
        plus(a(1, 1), P_all) | plus(a(5, 1), P_all),
        plus(a(3, 1), P_all) | plus(a(7, 1), P_all),
    ]
    return [frozenset(c) for c in classes]


# -- Section 10: the nonschurian S-ring over E16 x C_p ----------------------------


def build_t3_components(p: int):
    """(A0 over E16, A1 over E8 x C_p, M_V data) for the E16 x C_p instance."""
    if not (_is_prime(p) and p >= 5):
        raise SRingError("p must be a prime at least 5")
    E16 = make_group([2, 2, 2, 2])
    idx = E16.index_of
    a, b, c, d = idx((1, 0, 0, 0)), idx((0, 1, 0, 0)), idx((0, 0, 1, 0)), idx((0, 0, 0, 1))
    sigma0 = Automorphism(E16, [a, E16.add(a, b), E16.add(b, c), E16.add(c, d)])
    A0 = cyclotomic(E16, [sigma0])

    V = make_group([2, 2, 2])
    av, bv, cv = V.index_of((1, 0, 0)), V.index_of((0, 1, 0)), V.index_of((0, 0, 1))
    sigma1 = Automorphism(V, [av, V.add(av, bv), V.add(bv, cv)])
    sigma2 = Automorphism(V, [av, bv, V.add(bv, cv)])
    # dihedral relations
    s1_pow = sigma1
    order1 = 1
    ident = np.arange(8)
    while not (s1_pow.perm == ident).all():
        s1_pow = s1_pow.compose(sigma1)
        order1 += 1
    assert order1 == 4
    assert (sigma2.compose(sigma2).perm == ident).all()
    conj = sigma2.compose(sigma1).compose(sigma2)
    inv1 = sigma1.compose(sigma1).compose(sigma1)
    assert (conj.perm == inv1.perm).all(), "sigma2 sigma1 sigma2 != sigma1^-1"

    # M_V = <sigma1, sigma2> = D8; M_V^0 = <sigma1^2, sigma2 sigma1> = E4
    def closure(gens):
        seen = {tuple(np.arange(8)): Automorphism(V, [av, bv, cv])}
        frontier = list(gens)
        for g in gens:
            seen[tuple(g.perm)] = g
        while frontier:
            nxt = []
            for f in frontier:
                for g in gens:
                    h = g.compose(f)
                    if tuple(h.perm) not in seen:
                        seen[tuple(h.perm)] = h
                        nxt.append(h)
            frontier = nxt
        return list(seen.values())

    M_V = closure([sigma1, sigma2])
    assert len(M_V) == 8
    M_V0 = closure([sigma1.compose(sigma1), sigma2.compose(sigma1)])
    assert len(M_V0) == 4
    M_V0_keys = {f.gen_images for f in M_V0}

    squares = _squares_mod(p)
    U = make_group([2, 2, 2, p])
    uidx = U.index_of
    M1 = []
    for f in M_V:
        in_M0 = f.gen_images in M_V0_keys
        for t in range(1, p):
            if (t in squares) != in_M0:
                continue
            imgs = []
            for gi in f.gen_images:
                cv3 = V.coords_of(gi)
                imgs.append(uidx((cv3[0], cv3[1], cv3[2], 0)))
            imgs.append(uidx((0, 0, 0, t)))
            M1.append(Automorphism(U, imgs))
    A1 = cyclotomic(U, M1)
    return A0, A1


def build_t3_instance(p: int) -> SRing:
    """The nonschurian S-ring over E16 x C_p (p >= 5): A1 wr_{U/P} A0."""
    A0, A1 = build_t3_components(p)
    G = make_group([2, 2, 2, 2, p])
    gidx = G.index_of
    ga, gb, gc, gd = (
        gidx((1, 0, 0, 0, 0)),
        gidx((0, 1, 0, 0, 0)),
        gidx((0, 0, 1, 0, 0)),
        gidx((0, 0, 0, 1, 0)),
    )
    gp = gidx((0, 0, 0, 0, 1))
    U = generated_subgroup(G, [ga, gb, gc, gp])
    P = generated_subgroup(G, [gp])
    return generalized_wreath(
        WreathSpec(
            section=section_make(U, P),
            bottom=A1,
            bottom_gen_images=(ga, gb, gc, gp),
            top=A0,
            top_gen_images=(ga, gb, gc, gd),
        )
    )


def t3_expected_a0_classes():
    """The six listed basic sets of A0 over E16."""
    E16 = make_group([2, 2, 2, 2])
    idx = E16.index_of
    return [
        frozenset({0}),
        frozenset({idx((1, 0, 0, 0))}),
        frozenset({idx((0, 1, 0, 0)), idx((1, 1, 0, 0))}),
        frozenset({idx((0, 0, 1, 0)), idx((1, 0, 1, 0)), idx((0, 1, 1, 0)), idx((1, 1, 1, 0))}),
        frozenset({idx((0, 0, 0, 1)), idx((0, 1, 0, 1)), idx((0, 0, 1, 1)), idx((1, 1, 1, 1))}),
        frozenset({idx((1, 0, 0, 1)), idx((1, 1, 0, 1)), idx((1, 0, 1, 1)), idx((0, 1, 1, 1))}),
    ]


def t3_expected_a1_classes(p: int):
    """The nine listed basic sets of A1 over E8 x C_p."""
    U = make_group([2, 2, 2, p])
    idx = U.index_of
    squares = _squares_mod(p)
    A = [(0, 0, 0), (1, 0, 0)]
    Ab = [(0, 1, 0), (1, 1, 0)]
    Ac = [(0, 0, 1), (1, 0, 1)]
    Abc = [(0, 1, 1), (1, 1, 1)]
    AB = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]
    P1 = sorted(squares)
    P2 = [t for t in range(1, p) if t not in squares]

    def combo(hs, ts):
        return frozenset(idx((h[0], h[1], h[2], t)) for h in hs for t in ts)

    return [
        frozenset({0}),
        frozenset({idx((1, 0, 0, 0))}),
        combo(Ab, [0]),
        combo([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)], [0]),
        combo([(0, 0, 0)], range(1, p)),
        combo([(1, 0, 0)], range(1, p)),
        combo(Ab, range(1, p)),
        combo(Ac, P1) | combo(Abc, P2),
        combo(Ac, P2) | combo(Abc, P1),
    ]


# -- wrappers and the theorem check ------------------------------------------------


def repro_t2(p: int) -> ReproResult:
    A = build_t2_instance(p)
    expected = t2_expected_classes(p)
    match = set(A.class_sets()) == set(expected)
    return ReproResult(
        name=f"t2(p={p})",
        group=A.group.spec,
        sring=A,
        classes_match=match,
        expected_classes=expected,
        report=is_schurian(A),
    )


def repro_t3(p: int) -> ReproResult:
    A = build_t3_instance(p)
    A0, A1 = build_t3_components(p)
    match = (
        set(A0.class_sets()) == set(t3_expected_a0_classes())
        and set(A1.class_sets()) == set(t3_expected_a1_classes(p))
    )
    return ReproResult(
        name=f"t3(p={p})",
        group=A.group.spec,
        sring=A,
        classes_match=match,
        expected_classes=[],
        report=is_schurian(A),
    )


def check_theorems(progress=None) -> dict:
    """Desk-scale instances of the three schurity theorems plus the classifier."""

    def note(msg):
        if progress:
            progress(msg)

    report = {}
    for f in ([2, 2, 3], [2, 2, 5]):
        cat = enumerate_srings(make_group(f))
        bad = [e for e in cat.entries if not e.schurian]
        report[f"all_schurian_{'x'.join(map(str, f))}"] = not bad
        note(f"{f}: {len(cat)} S-rings, nonschurian: {len(bad)}")

    cat48 = enumerate_srings(make_group([8, 2, 3]))
    nonschurian = [e for e in cat48.entries if not e.schurian]
    t2 = build_t2_instance(3)
    t2_found = any(e.sring.key() == t2.key() for e in cat48.entries)
    report["c8c2c3_has_nonschurian"] = len(nonschurian) >= 1
    report["c8c2c3_contains_t2"] = t2_found
    note(f"[8,2,3]: {len(cat48)} S-rings, nonschurian {len(nonschurian)}")

    r3 = repro_t3(5)
    report["t3_nonschurian"] = not r3.report.schurian
    note(f"t3(5): schurian={r3.report.schurian}")

    cat36 = enumerate_srings(make_group([2, 2, 9]), compute_flags=False)
    empty = []
    for e in cat36.entries:
        if e.rank <= 2:
            continue
        if not classify_e4cn(e.sring):
            empty.append(e)
    report["e4c9_classifier_nonempty"] = not empty
    note(f"[2,2,9]: {len(cat36)} S-rings, unclassified nontrivial: {len(empty)}")
    return report
