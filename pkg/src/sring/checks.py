"""Property sweeps: the multiplier-theorem, duality, Galois, circulant, and
star-product invariants evaluated over catalog entries.

Each check returns a list of failure strings (empty = pass); the suite
aggregates them per catalog.  Failures are data, not exceptions.
"""

from __future__ import annotations

import math

import numpy as np

from .constructions import dual, is_star, perp, tensor
from .groups import AbelianGroup, Subgroup, generated_subgroup, subgroups
from .perm import transitivity_module
from .srings import SRing


def _set_radical_mask(G: AbelianGroup, members) -> int:
    """Bitmask of {g : g + S = S} for an arbitrary set S."""
    members = np.asarray(sorted(members), dtype=np.int64)
    ind = np.zeros(G.order, dtype=bool)
    ind[members] = True
    ok = ind[G.add_table[:, members]].all(axis=1)
    mask = 0
    for g in np.nonzero(ok)[0]:
        mask |= 1 << int(g)
    return mask


def class_radical_masks(A: SRing):
    return [A.radical(cid).mask for cid in range(A.rank)]


def is_gwreath_pair(A: SRing, U: Subgroup, L: Subgroup) -> bool:
    leaders = [int(m[0]) for m in A.classes]
    for cid in range(A.rank):
        if leaders[cid] in U:
            continue
        if (L.mask & ~A.radical(cid).mask) != 0:
            return False
    return True


def wreath_meets(A: SRing) -> dict:
    """For each A-subgroup U: the AND of rad(X) masks over classes outside U.

    A is the U/L-wreath product iff L's mask lies inside the meet."""
    full = (1 << A.group.order) - 1
    rad_masks = class_radical_masks(A)
    leaders = [int(m[0]) for m in A.classes]
    out = {}
    for U in A.a_subgroups():
        meet = full
        for cid in range(A.rank):
            if leaders[cid] not in U:
                meet &= rad_masks[cid]
        out[U.mask] = meet
    return out


# -- multiplier-theorem suite (Lemmas 2.1-2.5 and the basic identities) -----------


def check_multiplier_suite(A: SRing) -> list:
    failures = []
    G = A.group
    n = G.order
    N = G.exponent
    units = [m for m in range(1, N) if math.gcd(m, N) == 1]

    # first multiplier theorem: X^(m) is a single class
    for cid in range(A.rank):
        for m in units:
            try:
                A.power_map(cid, m)
            except AssertionError as err:
                failures.append(f"power_map({cid},{m}): {err}")

    # second multiplier theorem: X^[p] is a union of classes
    primes = sorted({p for p in range(2, n + 1) if n % p == 0 and _is_prime(p)})
    for cid in range(A.rank):
        for p in primes:
            try:
                A.wielandt_p(cid, p)
            except AssertionError as err:
                failures.append(f"wielandt({cid},{p}): {err}")

    # rad(X) and <X> are A-subgroups (asserted inside the accessors)
    for cid in range(A.rank):
        try:
            A.radical(cid)
            A.span(cid)
        except AssertionError as err:
            failures.append(f"radical/span({cid}): {err}")

    # Lemma on |X ∩ Hx|: constant for every A-subgroup H
    add = G.add_table
    for H in A.a_subgroups():
        Hm = H.member_array()
        for cid, members in enumerate(A.classes):
            ind = np.zeros(n, dtype=bool)
            ind[members] = True
            counts = ind[add[np.ix_(Hm, members)]].sum(axis=0)
            if counts.min() != counts.max():
                failures.append(f"lambda nonconstant: H order {H.order}, class {cid}")

    # structure constants: sum_Z c |Z| = |X||Y| and c^e_{X X^-1} = |X|
    sizes = [len(m) for m in A.classes]
    for x in range(A.rank):
        xi = int(A.inverse_class[x])
        if A.structure_constant(x, xi, int(A.class_of[0])) != sizes[x]:
            failures.append(f"c^e_(X X^-1) != |X| at {x}")
        for y in range(A.rank):
            conv = A.conv(x, y)
            if int(conv.sum()) != sizes[x] * sizes[y]:
                failures.append(f"sum rule fails at ({x},{y})")

    # separation lemma: H <= rad(X \ H), both parts nonempty => rad(X) <= H
    # and X = <X> \ rad(X)
    for H in subgroups(G):
        hset = set(H.members)
        for cid, members in enumerate(A.classes):
            mem = set(int(v) for v in members)
            inside = mem & hset
            outside = mem - hset
            if not inside or not outside:
                continue
            rad_out = _set_radical_mask(G, outside)
            if (H.mask & ~rad_out) != 0:
                continue  # hypothesis does not fire
            radX = A.radical(cid)
            spanX = A.span(cid)
            if (radX.mask & ~H.mask) != 0:
                failures.append(f"separation: rad(X) not inside H (class {cid})")
            expected = set(spanX.members) - set(radX.members)
            if mem != expected:
                failures.append(f"separation: X != <X> \\ rad(X) (class {cid})")

    failures.extend(_check_slice_orbits(A))
    return failures


def _is_prime(p: int) -> bool:
    return p > 1 and all(p % d for d in range(2, int(p**0.5) + 1))


def _check_slice_orbits(A: SRing) -> list:
    """Coset-and-order slices of a class are orbits of one multiplier group.

    Applies when G = H x D with D a cyclic Sylow-coprime direct factor: for
    each class X, K = {m : X^(sigma) = X for sigma acting as m on D and
    trivially on H}; every nonempty slice X_{h,l} must be a single K-orbit.
    """
    G = A.group
    failures = []
    n = G.order
    # direct factors D: cyclic subgroups with gcd(|D|, |G/D|) = 1, |D| > 1
    for pos, size in enumerate(G.factors):
        if size <= 1 or math.gcd(size, n // size) != 1:
            continue
        stride = G.strides[pos]
        # sigma_m acting as m on this factor, trivially elsewhere
        maps = {}
        for m in range(1, size):
            if math.gcd(m, size) != 1:
                continue
            img = G.coords.copy()
            img[:, pos] = (img[:, pos] * m) % size
            maps[m] = (img * np.array(G.strides)).sum(axis=1)
        for cid, members in enumerate(A.classes):
            mem = set(int(x) for x in members)
            K = [m for m, perm in maps.items() if {int(perm[x]) for x in mem} == mem]
            # slices: group members by (coset of D, order of D-component)
            slices = {}
            for x in mem:
                cx = G.coords_of(x)
                dpart = cx[pos]
                rest = tuple(c for i, c in enumerate(cx) if i != pos)
                l = size // math.gcd(size, dpart)
                slices.setdefault((rest, l), set()).add(dpart)
            for (rest, l), vals in slices.items():
                if l == 1:
                    continue
                v0 = min(vals)
                orbit = {(v0 * m) % size for m in K}
                if orbit != vals:
                    failures.append(
                        f"slice not a multiplier orbit: class {cid}, slice {(rest, l)}"
                    )
    return failures


# -- duality suite ------------------------------------------------------------------


def check_duality(A: SRing) -> list:
    failures = []
    G = A.group
    D = dual(A)
    if D.rank != A.rank:
        failures.append("rank not preserved by dual")
    DD = dual(D)
    if DD.key() != A.key():
        failures.append("dual of dual differs from the original")
    # lattice antiisomorphism of A-subgroups
    a_subs = A.a_subgroups()
    d_subs = D.a_subgroups()
    perps = [perp(G, H) for H in a_subs]
    if sorted(h.mask for h in perps) != sorted(h.mask for h in d_subs):
        failures.append("perp is not a bijection onto the dual A-subgroups")
        return failures
    for H1 in a_subs:
        for H2 in a_subs:
            if H1.contains_subgroup(H2):
                if not perp(G, H2).contains_subgroup(perp(G, H1)):
                    failures.append("perp does not reverse inclusions")
                    break
    # wreath correspondence: A is U/L-wreath iff dual is L-perp/U-perp-wreath
    meets_A = wreath_meets(A)
    meets_D = wreath_meets(D)
    for U in a_subs:
        for L in a_subs:
            if not U.contains_subgroup(L):
                continue
            left = (L.mask & ~meets_A[U.mask]) == 0
            right = (perp(G, U).mask & ~meets_D[perp(G, L).mask]) == 0
            if left != right:
                failures.append(
                    f"wreath duality fails at |U|={U.order}, |L|={L.order}"
                )
    return failures


def check_dual_tensor(A1: SRing, A2: SRing) -> list:
    """dual(A1 (x) A2) = dual(A1) (x) dual(A2)."""
    left = dual(tensor(A1, A2))
    right = tensor(dual(A1), dual(A2))
    if left.key() != right.key():
        return [f"dual-tensor mismatch over {left.group.spec}"]
    return []


# -- Galois correspondence implications ----------------------------------------------


def check_galois(entry) -> list:
    """cyclotomic => schurian; schurian => V(Aut(A), G) = A; normal and
    schurian => cyclotomic.  Requires computed flags."""
    from .autsearch import aut_sring

    failures = []
    A = entry.sring
    if entry.cyclotomic and not entry.schurian:
        failures.append("cyclotomic but not schurian")
    if entry.normal and entry.schurian and not entry.cyclotomic:
        failures.append("normal and schurian but not cyclotomic")
    if entry.schurian:
        aut = entry.aut if entry.aut is not None else aut_sring(A)
        V = transitivity_module(aut, A.group)
        if V.key() != A.key():
            failures.append("schurian but V(Aut(A), G) != A")
    return failures


# -- circulant suite ------------------------------------------------------------------


def check_circulant(entry) -> list:
    """Leung-Man radical dichotomy, normal => cyclotomic, |Aut_G| = |X| for
    cyclotomic entries, pq wreath-or-cyclotomic, and the nonregular-class shape."""
    from .schurity import circulant_radical_order, is_cyclotomic

    failures = []
    A = entry.sring
    G = A.group
    n = G.order
    if n <= 1 or max(G.element_order(g) for g in range(n)) != n:
        return failures  # not circulant
    if entry.normal and not entry.cyclotomic:
        failures.append("normal circulant entry is not cyclotomic")
    rad_order = circulant_radical_order(A)
    nontrivial_wreath = any(
        L.order > 1 and U.order < n and is_gwreath_pair(A, U, L)
        for U in A.a_subgroups()
        for L in A.a_subgroups()
        if U.contains_subgroup(L)
    )
    if (rad_order > 1) != nontrivial_wreath:
        failures.append("radical dichotomy fails (|rad| > 1 iff nontrivial wreath)")
    if entry.cyclotomic:
        star = is_cyclotomic(A)[1]
        gen_class = next(
            m for m in A.classes if any(G.element_order(int(x)) == n for x in m)
        )
        if len(star) != len(gen_class):
            failures.append("|Aut_G(A)| != |X| for a generator class")
    # order pq: nontrivial entries are cyclotomic or nontrivial wreath products
    ps = _prime_factors(n)
    if len(ps) == 2 and all(e == 1 for _, e in ps) and A.rank > 2:
        if not entry.cyclotomic and not nontrivial_wreath:
            failures.append("pq entry neither cyclotomic nor a nontrivial wreath")
    # cyclic p-groups: a nonregular class is U \ L
    if len(ps) == 1:
        for cid, members in enumerate(A.classes):
            orders = {G.element_order(int(x)) for x in members}
            if len(orders) == 1:
                continue
            mem = set(int(x) for x in members)
            shapes = [
                set(U.members) - set(L.members)
                for U in A.a_subgroups()
                for L in A.a_subgroups()
                if U.contains_subgroup(L)
            ]
            if mem not in shapes:
                failures.append(f"nonregular class {cid} is not U \\ L")
    return failures


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


# -- star product over H x C_2-style groups --------------------------------------------


def check_star_h1p1(A: SRing, p: int = 2) -> list:
    """A_{H1 P1} = A_{H1} * A_{P1} whenever G = H x P with |P| = p prime
    coprime to |H| (checked through the star recognizer on the restriction)."""
    failures = []
    G = A.group
    n = G.order
    if n % p != 0 or (n // p) % p == 0 or math.gcd(p, n // p) != 1:
        return failures
    # P: the Sylow p-subgroup (cyclic of order p); H: the complement
    P_members = [g for g in range(n) if G.element_order(g) in (1, p)]
    if len(P_members) != p:
        return failures
    H_members = [g for g in range(n) if math.gcd(G.element_order(g), p) == 1]
    H1 = None
    for S in A.a_subgroups():
        if all(g in set(H_members) for g in S.members):
            if H1 is None or S.order > H1.order:
                H1 = S
    P1 = None
    for S in A.a_subgroups():
        if set(P_members) <= set(S.members):
            if P1 is None or S.order < P1.order:
                P1 = S
    prod = generated_subgroup(G, list(H1.members) + list(P1.members))
    sub, sec = _restrict(A, prod)
    H1r = generated_subgroup(sub.group, [sec.project(x) for x in H1.members])
    P1r = generated_subgroup(sub.group, [sec.project(x) for x in P1.members])
    if not is_star(sub, H1r, P1r):
        failures.append(
            f"A_H1P1 != A_H1 * A_P1 (|H1|={H1.order}, |P1|={P1.order})"
        )
    return failures


def _restrict(A: SRing, U: Subgroup):
    from .groups import section_make

    S = section_make(U, generated_subgroup(A.group, []))
    return A.induced(S), S


# -- the aggregated suite ----------------------------------------------------------------


def run_property_suite(catalog) -> dict:
    """Evaluate the cross-module invariants on every catalog entry."""
    failures = []
    n = catalog.group.order
    for i, entry in enumerate(catalog.entries):
        A = entry.sring
        for msg in check_multiplier_suite(A):
            failures.append(f"entry {i}: {msg}")
        if entry.schurian is not None:
            for msg in check_galois(entry):
                failures.append(f"entry {i}: {msg}")
            for msg in check_circulant(entry):
                failures.append(f"entry {i}: {msg}")
        if n <= 16:
            for msg in check_duality(A):
                failures.append(f"entry {i}: {msg}")
        for msg in check_star_h1p1(A):
            failures.append(f"entry {i}: {msg}")
    return {
        "group": catalog.group.spec,
        "entries": len(catalog.entries),
        "failures": failures,
    }
