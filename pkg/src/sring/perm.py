"""Permutation groups on element indices via base / strong generating sets.

Permutations are numpy index arrays (image form).  The base always starts at
point 0 (the identity element of the group being acted on), so the first
stabilizer in the chain is the point stabilizer used by schurity queries.
Orders are exact Python ints.
"""

from __future__ import annotations

import numpy as np

from .errors import DoesNotContainRegular, NotSubgroup
from .groups import AbelianGroup
from .srings import SRing, relabel_by_first_occurrence, validate_labels


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """The permutation x -> p[q[x]]."""
    return p[q]


def inverse(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    return inv


def is_identity(p: np.ndarray) -> bool:
    return bool((p == np.arange(len(p))).all())


def check_permutation(p) -> np.ndarray:
    p = np.asarray(p, dtype=np.int64)
    if sorted(p.tolist()) != list(range(len(p))):
        raise ValueError("not a permutation")
    return p


DEGREE_CAP = 256


class PermGroup:
    """A permutation group with a verified base and strong generating set."""

    def __init__(self, generators, degree: int, prefer_base=(0,)):
        if degree > DEGREE_CAP:
            raise ValueError(f"degree {degree} exceeds the cap {DEGREE_CAP}")
        self.degree = degree
        self.generators = [check_permutation(g) for g in generators]
        for g in self.generators:
            if len(g) != degree:
                raise ValueError("generator degree mismatch")
        self.base: list[int] = []
        self._S: list[list[np.ndarray]] = []  # S[i]: strong gens fixing base[:i]
        self._T: list[dict] = []  # transversals: point -> perm moving base[i] there
        self._prefer = list(prefer_base)
        self._identity = np.arange(degree)
        self._build()

    # -- construction -----------------------------------------------------

    def _new_level(self, point: int):
        self.base.append(point)
        self._S.append([])
        self._T.append({point: self._identity})

    def _recompute_transversal(self, i: int):
        T = {self.base[i]: self._identity}
        queue = [self.base[i]]
        while queue:
            x = queue.pop(0)
            ux = T[x]
            for g in self._S[i]:
                y = int(g[x])
                if y not in T:
                    T[y] = compose(g, ux)
                    queue.append(y)
        self._T[i] = T

    def _sift(self, g: np.ndarray, level: int = 0):
        """Reduce g through the chain; returns (residue, level reached)."""
        for i in range(level, len(self.base)):
            x = int(g[self.base[i]])
            if x == self.base[i]:
                continue
            u = self._T[i].get(x)
            if u is None:
                return g, i
            g = compose(inverse(u), g)
        return g, len(self.base)

    def _next_base_point(self, g: np.ndarray) -> int:
        for p in self._prefer:
            if p not in self.base:
                return p
        moved = np.nonzero(g != self._identity)[0]
        for p in moved:
            if int(p) not in self.base:
                return int(p)
        raise AssertionError("no free point for base extension")

    def _build(self):
        if not self.base:
            self._new_level(self._prefer[0] if self._prefer else 0)
        for g in self.generators:
            self._add_strong_generator(g, 0)
        self._verify_from(0)

    def _add_strong_generator(self, g: np.ndarray, level: int) -> int:
        """Install g (which fixes base[:level]); returns the deepest level touched."""
        residue, lev = self._sift(g, level)
        if is_identity(residue):
            return -1
        if lev == len(self.base):
            self._new_level(self._next_base_point(residue))
        for j in range(level, lev + 1):
            self._S[j].append(residue)
            self._recompute_transversal(j)
        return lev

    def _verify_from(self, start: int):
        """Schreier-Sims verification, deepest level first.

        Invariant: levels deeper than i are complete; a residue installed at
        a deeper level jumps the loop back down there.
        """
        i = len(self.base) - 1
        while i >= start:
            self._recompute_transversal(i)
            clean = True
            T = self._T[i]
            for x in list(T):
                ux = T[x]
                for g in self._S[i]:
                    y = int(g[x])
                    schreier = compose(inverse(T[y]), compose(g, ux))
                    if is_identity(schreier):
                        continue
                    residue, lev = self._sift(schreier, i + 1)
                    if is_identity(residue):
                        continue
                    if lev == len(self.base):
                        self._new_level(self._next_base_point(residue))
                    for j in range(i + 1, lev + 1):
                        self._S[j].append(residue)
                        self._recompute_transversal(j)
                    clean = False
                    i = lev
                    break
                if not clean:
                    break
            if clean:
                i -= 1
        # drop trailing redundant levels (orbit size 1, no gens)
        while len(self.base) > 1 and not self._S[-1] and len(self._T[-1]) == 1:
            self.base.pop()
            self._S.pop()
            self._T.pop()

    def extend(self, g: np.ndarray) -> bool:
        """Add one more generator; returns True if the group grew."""
        g = check_permutation(g)
        residue, _ = self._sift(g)
        if is_identity(residue):
            return False
        self.generators.append(g)
        lev = self._add_strong_generator(g, 0)
        if lev >= 0:
            self._verify_from(lev)
        return True

    @classmethod
    def from_verified_chain(cls, degree: int, base_points, generators) -> "PermGroup":
        """Assemble a group from an externally verified stabilizer chain.

        base_points must satisfy: the generators fixing base_points[:i]
        pointwise generate the full stabilizer of base_points[:i].  The
        IR automorphism search guarantees this along its leftmost path, so
        no Schreier verification is rerun here.
        """
        self = cls.__new__(cls)
        self.degree = degree
        self.generators = [check_permutation(g) for g in generators]
        self._prefer = list(base_points) or [0]
        self._identity = np.arange(degree)
        self.base = []
        self._S = []
        self._T = []
        for i, point in enumerate(base_points):
            fixing = [
                g
                for g in self.generators
                if all(int(g[b]) == b for b in base_points[:i])
            ]
            self.base.append(int(point))
            self._S.append(fixing)
            self._T.append({int(point): self._identity})
            self._recompute_transversal(i)
        if not self.base:
            self._new_level(0)
        while len(self.base) > 1 and not self._S[-1] and len(self._T[-1]) == 1:
            self.base.pop()
            self._S.pop()
            self._T.pop()
        return self

    # -- queries ------------------------------------------------------------

    @property
    def order(self) -> int:
        n = 1
        for T in self._T:
            n *= len(T)
        return n

    def contains(self, g) -> bool:
        g = check_permutation(g)
        if len(g) != self.degree:
            return False
        residue, _ = self._sift(g)
        return is_identity(residue)

    def stabilizer_generators(self, level: int = 1):
        """Generators of the pointwise stabilizer of base[:level].

        The union of all strong generators at this level and deeper: each
        fixes the prefix, and by Schreier's lemma the union generates the
        full stabilizer.
        """
        seen = set()
        out = []
        for lists in self._S[level:]:
            for g in lists:
                key = tuple(int(x) for x in g)
                if key not in seen:
                    seen.add(key)
                    out.append(g)
        return out

    def point_stabilizer(self, alpha: int) -> "PermGroup":
        """The stabilizer of a point, via a base starting at alpha."""
        if self.base and self.base[0] == alpha:
            gens = self.stabilizer_generators(1)
            if len(self.base) > 1:
                return PermGroup.from_verified_chain(self.degree, self.base[1:], gens)
            return PermGroup(gens, self.degree, prefer_base=(alpha,))
        rebased = PermGroup(self.generators, self.degree, prefer_base=(alpha,))
        return rebased.point_stabilizer(alpha)

    def stabilizer_orbit_labels(self, alpha: int) -> np.ndarray:
        """Orbit labels of the stabilizer of alpha (no chain construction).

        Valid because the verified chain's level-1 generators generate the
        full point stabilizer when alpha is the first base point.
        """
        if not (self.base and self.base[0] == alpha):
            return PermGroup(
                self.generators, self.degree, prefer_base=(alpha,)
            ).stabilizer_orbit_labels(alpha)
        gens = self.stabilizer_generators(1)
        labels = np.full(self.degree, -1, dtype=np.int64)
        nxt = 0
        for start in range(self.degree):
            if labels[start] >= 0:
                continue
            labels[start] = nxt
            queue = [start]
            while queue:
                x = queue.pop()
                for g in gens:
                    y = int(g[x])
                    if labels[y] < 0:
                        labels[y] = nxt
                        queue.append(y)
            nxt += 1
        return labels

    def orbits(self):
        """Orbit partition of the points, deterministic representative order."""
        labels = np.full(self.degree, -1, dtype=np.int64)
        nxt = 0
        for start in range(self.degree):
            if labels[start] >= 0:
                continue
            labels[start] = nxt
            queue = [start]
            while queue:
                x = queue.pop(0)
                for g in self.generators:
                    y = int(g[x])
                    if labels[y] < 0:
                        labels[y] = nxt
                        queue.append(y)
            nxt += 1
        return labels

    def orbit_of(self, alpha: int):
        labels = self.orbits()
        return np.nonzero(labels == labels[alpha])[0]

    def orbitals(self) -> np.ndarray:
        """Orbit partition of ordered pairs, as labels over index a*n + b."""
        n = self.degree
        labels = np.full(n * n, -1, dtype=np.int64)
        nxt = 0
        gens = self.generators or [self._identity]
        for start in range(n * n):
            if labels[start] >= 0:
                continue
            labels[start] = nxt
            queue = [start]
            while queue:
                pair = queue.pop(0)
                a, b = divmod(pair, n)
                for g in gens:
                    q = int(g[a]) * n + int(g[b])
                    if labels[q] < 0:
                        labels[q] = nxt
                        queue.append(q)
            nxt += 1
        return labels


def is_normal(N: PermGroup, K: PermGroup) -> bool:
    """Whether N is normal in K (N <= K required, membership-checked)."""
    for h in N.generators:
        if not K.contains(h):
            raise NotSubgroup("N is not contained in K")
    for g in K.generators:
        ginv = inverse(g)
        for h in N.generators:
            if not N.contains(compose(g, compose(h, ginv))):
                return False
    return True


def two_equivalent(K1: PermGroup, K2: PermGroup) -> bool:
    """Equality of the orbit partitions on ordered pairs."""
    if K1.degree != K2.degree:
        return False
    a = relabel_by_first_occurrence(K1.orbitals().astype(np.int32))
    b = relabel_by_first_occurrence(K2.orbitals().astype(np.int32))
    return bool((a == b).all())


# -- the regular representation and transitivity modules ------------------------


def regular_gens(G: AbelianGroup):
    """Right-translation permutations by the canonical generators."""
    from .groups import _canonical_gens

    gens = []
    for g in _canonical_gens(G):
        if g == 0:
            continue
        gens.append(translation(G, g))
    return gens


def translation(G: AbelianGroup, t: int) -> np.ndarray:
    if G.order <= 1500:
        return G.add_table[:, t].astype(np.int64)
    return np.array([G.add(x, t) for x in range(G.order)], dtype=np.int64)


def regular_group(G: AbelianGroup) -> PermGroup:
    """G_r as a permutation group on the element indices."""
    return PermGroup(regular_gens(G), G.order)


def aut_perm_group(G: AbelianGroup) -> PermGroup:
    """Aut(G) acting on the element indices."""
    from .groups import aut_group

    return PermGroup([f.perm for f in aut_group(G)], G.order)


def holomorph(G: AbelianGroup) -> PermGroup:
    """Hol(G) = G_r . Aut(G) on the element indices."""
    from .groups import aut_group

    return PermGroup(regular_gens(G) + [f.perm for f in aut_group(G)], G.order)


def contains_regular(K: PermGroup, G: AbelianGroup) -> bool:
    return all(K.contains(t) for t in regular_gens(G))


def transitivity_module(K: PermGroup, G: AbelianGroup) -> SRing:
    """V(K, G): the S-ring spanned by the orbits of the stabilizer of e."""
    if K.degree != G.order:
        raise DoesNotContainRegular("degree does not match the group order")
    if not contains_regular(K, G):
        raise DoesNotContainRegular("K does not contain all right translations")
    labels = relabel_by_first_occurrence(
        K.stabilizer_orbit_labels(0).astype(np.int32)
    )
    return validate_labels(G, labels)
