"""Finite abelian groups with exact index arithmetic.

A group is a product of cyclic factors; an element is a mixed-radix tuple of
residues, identified with its index (last coordinate fastest).  All heavy
kernels work on integer indices and numpy tables; sets of elements are Python
int bitmasks.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import GroupError, SectionNotASection

DEFAULT_MAX_ORDER = 10**4
AUT_CANDIDATE_BOUND = 2**20
TABLE_ORDER_LIMIT = 1500  # n*n int32 tables only below this


def max_order_bound() -> int:
    value = os.environ.get("SRING_MAX_ORDER")
    return int(value) if value else DEFAULT_MAX_ORDER


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class AbelianGroup:
    """A finite abelian group Z/n1 x ... x Z/nk with deterministic indexing.

    index(x) = sum x_i * stride_i where stride_k = 1 and stride_i =
    n_{i+1} * stride_{i+1}; element 0 is the identity.
    """

    def __init__(self, factors):
        factors = tuple(int(n) for n in factors)
        if not factors:
            raise GroupError("at least one cyclic factor is required")
        if any(n < 1 for n in factors):
            raise GroupError(f"factors must be >= 1, got {factors}")
        order = reduce(lambda a, b: a * b, factors, 1)
        bound = max_order_bound()
        if order > bound:
            raise GroupError(f"group order {order} exceeds bound {bound}")
        self.factors = factors
        self.order = order
        self.exponent = reduce(_lcm, factors, 1)
        self.k = len(factors)
        strides = [1] * self.k
        for i in range(self.k - 2, -1, -1):
            strides[i] = strides[i + 1] * factors[i + 1]
        self.strides = tuple(strides)
        self._coords = None
        self._add_table = None
        self._sub_table = None
        self._neg = None
        self._orders = None

    # -- basic presentation ------------------------------------------------

    def __repr__(self):
        return f"AbelianGroup({list(self.factors)})"

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    @property
    def spec(self) -> str:
        """Group literal, e.g. '8x2x3'."""
        return "x".join(str(n) for n in self.factors)

    @staticmethod
    def from_spec(spec: str) -> "AbelianGroup":
        try:
            factors = [int(part) for part in spec.split("x")]
        except ValueError:
            raise GroupError(f"bad group literal {spec!r}") from None
        return AbelianGroup(factors)

    # -- coordinates -------------------------------------------------------

    def coords_of(self, index: int):
        out = []
        for n, s in zip(self.factors, self.strides):
            out.append((index // s) % n)
        return tuple(out)

    def index_of(self, coords) -> int:
        if len(coords) != self.k:
            raise GroupError(f"expected {self.k} residues, got {len(coords)}")
        idx = 0
        for c, n, s in zip(coords, self.factors, self.strides):
            idx += (int(c) % n) * s
        return idx

    @property
    def coords(self) -> np.ndarray:
        """(order, k) array of all element coordinates."""
        if self._coords is None:
            idx = np.arange(self.order)
            cols = [
                (idx // s) % n for n, s in zip(self.factors, self.strides)
            ]
            self._coords = np.stack(cols, axis=1).astype(np.int64)
        return self._coords

    # -- arithmetic on indices ----------------------------------------------

    def add(self, i: int, j: int) -> int:
        idx = 0
        for n, s in zip(self.factors, self.strides):
            idx += (((i // s) + (j // s)) % n) * s
        return idx

    def neg_one(self, i: int) -> int:
        idx = 0
        for n, s in zip(self.factors, self.strides):
            idx += (-(i // s) % n) * s
        return idx

    def scale(self, i: int, m: int) -> int:
        """m-th power x^m in additive form m*x."""
        idx = 0
        for n, s in zip(self.factors, self.strides):
            idx += ((((i // s) % n) * m) % n) * s
        return idx

    def element_order(self, i: int) -> int:
        o = 1
        for n, s in zip(self.factors, self.strides):
            c = (i // s) % n
            o = _lcm(o, n // math.gcd(n, c))
        return o

    @property
    def neg(self) -> np.ndarray:
        if self._neg is None:
            c = self.coords
            f = np.array(self.factors)
            s = np.array(self.strides)
            self._neg = (((-c) % f) * s).sum(axis=1)
        return self._neg

    @property
    def orders(self) -> np.ndarray:
        if self._orders is None:
            self._orders = np.array(
                [self.element_order(i) for i in range(self.order)]
            )
        return self._orders

    @property
    def add_table(self) -> np.ndarray:
        """add_table[i, j] = index of x_i + x_j."""
        if self._add_table is None:
            if self.order > TABLE_ORDER_LIMIT:
                raise GroupError(
                    f"addition table disabled for order {self.order} > {TABLE_ORDER_LIMIT}"
                )
            c = self.coords
            f = np.array(self.factors)
            s = np.array(self.strides)
            table = np.zeros((self.order, self.order), dtype=np.int32)
            for col, (n, st) in enumerate(zip(f, s)):
                col_sum = (c[:, None, col] + c[None, :, col]) % n
                table += (col_sum * st).astype(np.int32)
            self._add_table = table
        return self._add_table

    @property
    def sub_table(self) -> np.ndarray:
        """sub_table[g, x] = index of g - x."""
        if self._sub_table is None:
            self._sub_table = self.add_table[:, self.neg]
        return self._sub_table

    def scale_map(self, m: int) -> np.ndarray:
        """The permutation (or endomorphism) index array of x -> m*x."""
        c = self.coords
        f = np.array(self.factors)
        s = np.array(self.strides)
        return (((c * m) % f) * s).sum(axis=1)

    def element(self, spec) -> "GroupElement":
        """Element from an index, a coords tuple, or an 'a1,a2,...' literal."""
        if isinstance(spec, GroupElement):
            if spec.group != self:
                raise GroupError("element belongs to a different group")
            return spec
        if isinstance(spec, str):
            coords = tuple(int(p) for p in spec.split(","))
            return GroupElement(self, self.index_of(coords))
        if isinstance(spec, (tuple, list)):
            return GroupElement(self, self.index_of(spec))
        return GroupElement(self, int(spec) % self.order)

    def elements(self):
        return [GroupElement(self, i) for i in range(self.order)]


def make_group(factors) -> AbelianGroup:
    """Build the group Z/n1 x ... x Z/nk; element 0 is the identity."""
    return AbelianGroup(factors)


@dataclass(frozen=True)
class GroupElement:
    """An element of an AbelianGroup, identified by its index."""

    group: AbelianGroup
    index: int

    @property
    def coords(self):
        return self.group.coords_of(self.index)

    def _check(self, other: "GroupElement"):
        if self.group != other.group:
            raise GroupError("elements of different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group, self.group.add(self.index, other.index))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, self.group.neg_one(self.index))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def pow(self, m: int) -> "GroupElement":
        return GroupElement(self.group, self.group.scale(self.index, m))

    @property
    def order(self) -> int:
        return self.group.element_order(self.index)

    def __str__(self):
        return ",".join(str(c) for c in self.coords)


# -- subgroups ---------------------------------------------------------------


class Subgroup:
    """A subgroup stored as a bitmask over element indices."""

    __slots__ = ("group", "mask", "generators", "_members", "_index_in")

    def __init__(self, group: AbelianGroup, mask: int, generators=()):
        self.group = group
        self.mask = mask
        self.generators = tuple(generators)
        self._members = None
        self._index_in = None

    @property
    def members(self):
        """Sorted tuple of member indices."""
        if self._members is None:
            self._members = tuple(_bits(self.mask))
        return self._members

    @property
    def order(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, index: int) -> bool:
        return bool((self.mask >> int(index)) & 1)

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return (other.mask & ~self.mask) == 0

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group == other.group
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((self.group, self.mask))

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={list(self.members)})"

    def member_array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def generated_subgroup(G: AbelianGroup, gens) -> Subgroup:
    """Smallest subgroup containing the given elements (indices or elements)."""
    gen_idx = [g.index if isinstance(g, GroupElement) else int(g) for g in gens]
    mask = 1  # identity
    frontier = [0]
    seen = {0}
    while frontier:
        nxt = []
        for h in frontier:
            for g in gen_idx:
                s = G.add(h, g)
                if s not in seen:
                    seen.add(s)
                    mask |= 1 << s
                    nxt.append(s)
        frontier = nxt
    return Subgroup(G, mask, gen_idx)


_SUBGROUP_CACHE: dict = {}


def subgroups(G: AbelianGroup):
    """All subgroups, ordered by (order, lexicographic member list).

    BFS on the cyclic-extension lattice: repeatedly extend each known
    subgroup by one new element and close.
    """
    cached = _SUBGROUP_CACHE.get(G.factors)
    if cached is not None:
        return list(cached)
    trivial = generated_subgroup(G, [])
    found = {trivial.mask: trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for H in frontier:
            for g in range(1, G.order):
                if g in H:
                    continue
                K = generated_subgroup(G, list(H.generators) + [g])
                if K.mask not in found:
                    found[K.mask] = K
                    nxt.append(K)
        frontier = nxt
    result = sorted(found.values(), key=lambda H: (H.order, H.members))
    _SUBGROUP_CACHE[G.factors] = result
    return list(result)


def subgroup_from_members(G: AbelianGroup, members) -> Subgroup:
    """Subgroup from an explicit member set (checked for closure)."""
    idx = sorted(
        m.index if isinstance(m, GroupElement) else int(m) for m in members
    )
    mask = 0
    for m in idx:
        mask |= 1 << m
    H = generated_subgroup(G, idx)
    if H.mask != mask:
        raise GroupError("member set is not closed under the group operation")
    return H


# -- integer lattice normal forms (for quotient structure) -------------------


def _hnf_basis(columns, k):
    """Column-style Hermite basis of the lattice spanned by the given columns.

    Returns a k x k lower-triangular integer matrix with positive diagonal
    whose columns span the same lattice.
    """
    cols = [list(c) for c in columns]
    basis = []
    for row in range(k):
        # reduce all columns so at most one has a nonzero entry in `row`
        live = [c for c in cols if any(c[row:])]
        cols = live
        while True:
            nz = [c for c in cols if c[row] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(c[row]))
            pivot = nz[0]
            for c in nz[1:]:
                q = c[row] // pivot[row]
                for i in range(k):
                    c[i] -= q * pivot[i]
        nz = [c for c in cols if c[row] != 0]
        if not nz:
            raise GroupError("lattice not full rank")  # cannot happen: diag(n) included
        pivot = nz[0]
        if pivot[row] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        cols = [c for c in cols if c is not nz[0]]
    # basis[i] has zeros above row i; normalize entries below the diagonal
    for i in range(k):
        for j in range(i):
            q = basis[j][i] // basis[i][i]
            if q:
                for r in range(k):
                    basis[j][r] -= q * basis[i][r]
    # return as matrix with columns basis[j]
    return [[basis[j][i] for j in range(k)] for i in range(k)]


def _solve_lower_triangular(B, v):
    """Solve B y = v exactly for integer y (B k x k, columns triangular)."""
    k = len(v)
    y = [0] * k
    r = list(v)
    for i in range(k):
        if r[i] % B[i][i] != 0:
            raise GroupError("vector not in lattice")
        y[i] = r[i] // B[i][i]
        for row in range(k):
            r[row] -= y[i] * B[row][i]
    if any(r):
        raise GroupError("triangular solve failed")
    return y


def _snf(M):
    """Smith normal form D = P*M*Q of a square integer matrix.

    Returns (diag, P) where diag are the invariant factors d1 | d2 | ...
    and P is the left unimodular transform (Q is not needed by callers).
    """
    M = [list(row) for row in M]
    k = len(M)
    P = [[int(i == j) for j in range(k)] for i in range(k)]

    def row_op(i, j, q):  # row_i -= q * row_j
        for c in range(k):
            M[i][c] -= q * M[j][c]
            P[i][c] -= q * P[j][c]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(k):
            M[r][i] -= q * M[r][j]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for r in range(k):
            M[r][i], M[r][j] = M[r][j], M[r][i]

    for t in range(k):
        while True:
            # find a pivot with minimal absolute value in the trailing block
            pivot = None
            for i in range(t, k):
                for j in range(t, k):
                    if M[i][j] != 0 and (
                        pivot is None or abs(M[i][j]) < abs(M[pivot[0]][pivot[1]])
                    ):
                        pivot = (i, j)
            if pivot is None:
                raise GroupError("singular matrix in SNF")  # full-rank input expected
            pi, pj = pivot
            swap_rows(t, pi)
            swap_cols(t, pj)
            done = True
            for i in range(t + 1, k):
                if M[i][t] != 0:
                    row_op(i, t, M[i][t] // M[t][t])
                    if M[i][t] != 0:
                        done = False
            for j in range(t + 1, k):
                if M[t][j] != 0:
                    col_op(j, t, M[t][j] // M[t][t])
                    if M[t][j] != 0:
                        done = False
            if done:
                # divisibility: fold in any entry not divisible by the pivot
                bad = None
                for i in range(t + 1, k):
                    for j in range(t + 1, k):
                        if M[i][j] % M[t][t] != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_op(t, bad, -1)
        if M[t][t] < 0:
            for c in range(k):
                M[t][c] = -M[t][c]
                P[t][c] = -P[t][c]
    return [M[i][i] for i in range(k)], P


class Section:
    """A section U/L with the quotient presented as an AbelianGroup.

    project maps U onto the quotient group; lift returns the canonical
    (minimal-index) coset representative.
    """

    def __init__(self, U: Subgroup, L: Subgroup):
        if U.group != L.group:
            raise SectionNotASection("U and L live in different groups")
        if not U.contains_subgroup(L):
            raise SectionNotASection("L is not contained in U")
        G = U.group
        self.G = G
        self.U = U
        self.L = L
        k = G.k
        diag = [[G.factors[i] if i == j else 0 for j in range(k)] for i in range(k)]
        cols_U = [list(G.coords_of(g)) for g in U.generators] + [list(c) for c in diag]
        cols_L = [list(G.coords_of(g)) for g in L.generators] + [list(c) for c in diag]
        B_U = _hnf_basis(cols_U, k)
        B_L = _hnf_basis(cols_L, k)
        M = [
            _solve_lower_triangular(B_U, [B_L[r][j] for r in range(k)])
            for j in range(k)
        ]
        M = [[M[j][i] for j in range(k)] for i in range(k)]  # columns back to matrix
        diag_d, P = _snf(M)
        keep = [t for t, d in enumerate(diag_d) if d > 1]
        self.group = AbelianGroup([diag_d[t] for t in keep] or [1])
        self._B_U = B_U
        self._P = P
        self._keep = keep
        self._diag = diag_d
        # project table over all of G (-1 outside U) and minimal-rep lift
        proj = np.full(G.order, -1, dtype=np.int64)
        reps = np.full(self.group.order, -1, dtype=np.int64)
        for u in U.members:
            q = self._project_index(u)
            proj[u] = q
            if reps[q] < 0:
                reps[q] = u
        self._proj = proj
        self.reps = reps

    def _project_index(self, u: int) -> int:
        v = list(self.G.coords_of(u))
        y = _solve_lower_triangular(self._B_U, v)
        k = self.G.k
        q = [sum(self._P[i][j] * y[j] for j in range(k)) % self._diag[i] for i in range(k)]
        coords = [q[t] for t in self._keep]
        if not coords:
            return 0
        return self.group.index_of(coords)

    def project(self, u: int) -> int:
        q = self._proj[u.index if isinstance(u, GroupElement) else int(u)]
        if q < 0:
            raise SectionNotASection("element outside U")
        return int(q)

    def lift(self, q: int) -> int:
        return int(self.reps[int(q)])

    def project_set(self, indices) -> frozenset:
        return frozenset(int(self._proj[int(i)]) for i in indices)

    @property
    def order(self) -> int:
        return self.group.order


def section_make(U: Subgroup, L: Subgroup) -> Section:
    """Section U/L; raises SectionNotASection unless L <= U."""
    return Section(U, L)


def subgroup_as_group(G: AbelianGroup, U: Subgroup) -> Section:
    """Present a subgroup as a standalone group via the section U/{e}."""
    return Section(U, generated_subgroup(G, []))


# -- automorphisms ------------------------------------------------------------


class Automorphism:
    """An automorphism stored as images of the canonical generators."""

    __slots__ = ("group", "gen_images", "_perm")

    def __init__(self, group: AbelianGroup, gen_images):
        self.group = group
        self.gen_images = tuple(int(g) for g in gen_images)
        if len(self.gen_images) != group.k:
            raise GroupError("one generator image per cyclic factor required")
        self._perm = None

    @property
    def perm(self) -> np.ndarray:
        """Full index permutation of the map."""
        if self._perm is None:
            G = self.group
            images = np.zeros(G.order, dtype=np.int64)
            c = G.coords
            f = np.array(G.factors)
            s = np.array(G.strides)
            for i, img in enumerate(self.gen_images):
                img_c = np.array(G.coords_of(img))
                images = _idx_add(images, ((c[:, i : i + 1] * img_c[None, :]) % f * s).sum(axis=1), G)
            self._perm = images
        return self._perm

    def __call__(self, x: int) -> int:
        return int(self.perm[int(x)])

    def apply_set(self, indices) -> frozenset:
        p = self.perm
        return frozenset(int(p[int(i)]) for i in indices)

    def is_bijective(self) -> bool:
        return len(set(self.perm.tolist())) == self.group.order

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other: x -> self(other(x))."""
        if self.group != other.group:
            raise GroupError("automorphisms of different groups")
        return Automorphism(
            self.group, [self(other(g)) for g in _canonical_gens(self.group)]
        )

    def __eq__(self, other):
        return (
            isinstance(other, Automorphism)
            and self.group == other.group
            and self.gen_images == other.gen_images
        )

    def __hash__(self):
        return hash((self.group, self.gen_images))

    def __repr__(self):
        return f"Automorphism({self.gen_images})"


def _idx_add(a, b, G: AbelianGroup):
    """Vectorized index addition."""
    f = np.array(G.factors)
    s = np.array(G.strides)
    ca = np.stack([(a // st) % n for n, st in zip(G.factors, G.strides)], axis=1)
    cb = np.stack([(b // st) % n for n, st in zip(G.factors, G.strides)], axis=1)
    return (((ca + cb) % f) * s).sum(axis=1)


def _canonical_gens(G: AbelianGroup):
    """Indices of the canonical generators (unit coordinate vectors)."""
    return [s % G.order if n > 1 else 0 for n, s in zip(G.factors, G.strides)]


def identity_automorphism(G: AbelianGroup) -> Automorphism:
    return Automorphism(G, _canonical_gens(G))


def multiplication_automorphism(G: AbelianGroup, m: int) -> Automorphism:
    """sigma_m : g -> g^m, for m coprime to |G|."""
    if math.gcd(m, G.order) != 1:
        raise GroupError(f"{m} is not coprime to {G.order}")
    return Automorphism(G, [G.scale(g, m) for g in _canonical_gens(G)])


def _primary_parts(G: AbelianGroup):
    """For each prime p | |G|: list of (factor position, exponent e, p**e)."""
    primes = {}
    for pos, n in enumerate(G.factors):
        m = n
        d = 2
        while d * d <= m:
            if m % d == 0:
                e = 0
                while m % d == 0:
                    m //= d
                    e += 1
                primes.setdefault(d, []).append((pos, e, d**e))
            d += 1
        if m > 1:
            primes.setdefault(m, []).append((pos, 1, m))
    return primes


_AUT_CACHE: dict = {}


def aut_group(G: AbelianGroup):
    """All automorphisms of G, enumerated per Sylow component.

    For each prime p the invertible endomorphism matrices of the p-part are
    filtered by brute force; the Sylow pieces combine by CRT.  Deterministic
    order (sorted by generator images).
    """
    import itertools

    from .errors import AutGroupTooLarge

    cached = _AUT_CACHE.get(G.factors)
    if cached is not None:
        return cached

    primary = _primary_parts(G)
    gens = _canonical_gens(G)
    per_prime = []
    for p in sorted(primary):
        parts = primary[p]
        r = len(parts)
        exps = [e for (_, e, _) in parts]
        candidate_count = 1
        for i in range(r):
            for j in range(r):
                candidate_count *= p ** min(exps[i], exps[j])
        if candidate_count > AUT_CANDIDATE_BOUND:
            raise AutGroupTooLarge(
                f"p={p}: {candidate_count} endomorphism candidates exceed bound"
            )
        # entry (i,j): coefficient of generator j in the image of generator i,
        # a multiple of p^max(0, e_j - e_i) modulo p^e_j
        entry_choices = [
            [
                list(range(0, p ** exps[j], p ** max(0, exps[j] - exps[i])))
                for j in range(r)
            ]
            for i in range(r)
        ]
        mats = _invertible_matrices(parts, entry_choices)
        # express each matrix as images (in G) of the p-part generators
        # h_{i,p} = (n_i / p^e_i) * g_i of each factor it touches
        images = []
        for mat in mats:
            img = {}
            for (pos_i, _, _), row in zip(parts, mat):
                acc = 0
                for (pos_j, _, pk_j), c in zip(parts, row):
                    n_j = G.factors[pos_j]
                    acc = G.add(acc, G.scale(gens[pos_j], (n_j // pk_j) * int(c)))
                img[pos_i] = acc
            images.append(img)
        per_prime.append(({pos: pk for (pos, _, pk) in parts}, images))

    autos = []
    for combo in itertools.product(*[imgs for (_, imgs) in per_prime]):
        # sigma(g_i) = sum over p of u_p * sigma_p(h_{i,p}), CRT coefficients u_p
        gen_imgs = []
        for pos in range(G.k):
            n = G.factors[pos]
            acc = 0
            for (pe, _), img in zip(per_prime, combo):
                if pos in pe:
                    pk = pe[pos]
                    u = pow(n // pk, -1, pk)
                    acc = G.add(acc, G.scale(img[pos], u))
            gen_imgs.append(acc)
        autos.append(Automorphism(G, gen_imgs))
    autos.sort(key=lambda a: a.gen_images)
    _AUT_CACHE[G.factors] = autos
    return autos


def _invertible_matrices(parts, entry_choices):
    """Brute-force invertible endomorphism matrices of one p-part."""
    import itertools

    r = len(parts)
    Gp = AbelianGroup([pk for (_, _, pk) in parts])
    gens_p = _canonical_gens(Gp)
    flat_choices = [entry_choices[i][j] for i in range(r) for j in range(r)]
    mats = []
    for flat in itertools.product(*flat_choices):
        mat = [flat[i * r : (i + 1) * r] for i in range(r)]
        imgs = []
        for i in range(r):
            acc = 0
            for j in range(r):
                acc = Gp.add(acc, Gp.scale(gens_p[j], mat[i][j]))
            imgs.append(acc)
        # surjective == bijective for a finite-group endomorphism
        if generated_subgroup(Gp, imgs).order == Gp.order:
            mats.append(mat)
    return mats
