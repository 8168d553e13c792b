"""The S-ring data model: validated partitions of a group with class algebra.

An S-ring is stored as a class-id array over element indices.  The same
splitting kernel implements both validation (a partition is an S-ring iff it
is a fixpoint) and the closure operator used by the enumeration search (the
coarsest S-ring partition refining a given partition).
"""

from __future__ import annotations

import json

import numpy as np

from .errors import (
    HNotASubgroup,
    IdentityNotSingleton,
    NotInverseClosed,
    NotPartition,
    ProductNotClosed,
    SectionNotASection,
)
from .groups import (
    AbelianGroup,
    GroupElement,
    Section,
    Subgroup,
    generated_subgroup,
    subgroups,
)


def _as_index_set(G, members):
    out = set()
    for m in members:
        if isinstance(m, GroupElement):
            out.add(m.index)
        elif isinstance(m, (tuple, list)):
            out.add(G.index_of(m))
        else:
            out.add(int(m))
    return out


def rank_rows(sig: np.ndarray) -> np.ndarray:
    """Labels of the distinct rows of an int matrix, in lexicographic order.

    Equivalent to np.unique(sig, axis=0, return_inverse=True)[1] but via
    lexsort; wide matrices are first packed column-group-wise into int64
    words (big-endian within each word, so the row order is unchanged).
    """
    n = sig.shape[0]
    if sig.shape[1] == 0 or n == 0:
        return np.zeros(n, dtype=np.int64)
    if sig.shape[1] > 8:
        sig = sig.astype(np.int64)
        lo = int(sig.min())
        if lo < 0:
            sig = sig - lo
        bits = max(1, int(sig.max()).bit_length())
        per = max(1, 62 // bits)
        if per > 1:
            m = sig.shape[1]
            pad = (-m) % per
            if pad:
                sig = np.concatenate(
                    [sig, np.zeros((n, pad), dtype=np.int64)], axis=1
                )
            weights = (np.int64(1) << (bits * np.arange(per - 1, -1, -1))).astype(
                np.int64
            )
            sig = (sig.reshape(n, -1, per) * weights).sum(axis=2)
    order = np.lexsort(sig.T[::-1])
    sorted_sig = sig[order]
    change = np.empty(n, dtype=bool)
    change[0] = True
    np.any(sorted_sig[1:] != sorted_sig[:-1], axis=1, out=change[1:])
    ranks = np.cumsum(change) - 1
    labels = np.empty(n, dtype=np.int64)
    labels[order] = ranks
    return labels


def relabel_by_first_occurrence(labels: np.ndarray) -> np.ndarray:
    """Relabel so ids are assigned in order of each class's minimal element."""
    seen = {}
    out = np.empty(len(labels), dtype=np.int32)
    for i, lab in enumerate(labels.tolist()):
        if lab not in seen:
            seen[lab] = len(seen)
        out[i] = seen[lab]
    return out


def _classes_from_labels(class_of: np.ndarray):
    rank = int(class_of.max()) + 1
    order = np.argsort(class_of, kind="stable")
    bounds = np.searchsorted(class_of[order], np.arange(rank + 1))
    return [order[bounds[i] : bounds[i + 1]] for i in range(rank)]


def stabilize(G: AbelianGroup, class_of: np.ndarray, forbid_split=None) -> np.ndarray:
    """Coarsest S-ring partition refining the given one (WL-style splitting).

    Repeats three splits to a fixpoint: isolate e, make the inverse map
    permute classes, and separate elements with distinct multiplicities in
    some product of two current class sums.

    If forbid_split is given (a set of class leader elements), raises
    ProductNotClosed-flavored ValueError when a split would break a class
    whose minimal element is listed; used by the enumeration pruning.
    """
    n = G.order
    neg = G.neg
    sub = G.sub_table
    labels = relabel_by_first_occurrence(np.asarray(class_of, dtype=np.int32))
    while True:
        rank = int(labels.max()) + 1
        # isolate the identity
        if np.count_nonzero(labels == labels[0]) > 1:
            fresh = labels.copy()
            fresh[0] = rank
            labels = relabel_by_first_occurrence(fresh)
            continue
        # inverse symmetrization
        pair = labels.astype(np.int64) * rank + labels[neg]
        new = relabel_by_first_occurrence(pair.astype(np.int32))
        if int(new.max()) + 1 > rank:
            labels = new
            continue
        # product multiplicities; conv(X,Y) = conv(Y,X), so only j >= i
        order = np.argsort(labels, kind="stable")
        bounds = np.searchsorted(labels[order], np.arange(rank + 1))
        classes = [order[bounds[i] : bounds[i + 1]] for i in range(rank)]
        onehot = np.zeros((rank, n), dtype=np.int32)
        onehot[labels, np.arange(n)] = 1
        splitters = []
        for i, members in enumerate(classes):
            conv = onehot[i:, sub[:, members]].sum(axis=2)  # (rank - i, n)
            cs = conv[:, order]
            mins = np.minimum.reduceat(cs, bounds[:-1], axis=1)
            maxs = np.maximum.reduceat(cs, bounds[:-1], axis=1)
            bad = np.nonzero((mins != maxs).any(axis=1))[0]
            if len(bad):
                splitters.append(conv[bad])
        if not splitters:
            return labels
        matrix = np.concatenate([labels[None, :].astype(np.int32)] + splitters, axis=0)
        labels = relabel_by_first_occurrence(rank_rows(matrix.T).astype(np.int32))


class SRing:
    """A validated S-ring over an abelian group.

    Immutable after construction; all caches are pure functions of the
    partition.  Use validate() to construct from raw sets.
    """

    def __init__(self, group: AbelianGroup, class_of: np.ndarray):
        self.group = group
        self.class_of = np.asarray(class_of, dtype=np.int32)
        self.class_of.flags.writeable = False
        self.classes = [np.sort(m) for m in _classes_from_labels(self.class_of)]
        self.rank = len(self.classes)
        self._inverse_class = None
        self._conv_cache = {}
        self._radicals = {}
        self._spans = {}
        self._a_subgroups = None

    # -- identity and presentation ------------------------------------------

    def key(self) -> tuple:
        """Canonical identity of the partition (class-of array as a tuple)."""
        return tuple(self.class_of.tolist())

    def class_sets(self):
        return [frozenset(int(x) for x in m) for m in self.classes]

    def __eq__(self, other):
        return (
            isinstance(other, SRing)
            and self.group == other.group
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash((self.group, self.key()))

    def __repr__(self):
        return f"SRing(group={self.group.spec}, rank={self.rank})"

    def class_id_of(self, element) -> int:
        idx = element.index if isinstance(element, GroupElement) else int(element)
        return int(self.class_of[idx])

    # -- class algebra -------------------------------------------------------

    @property
    def inverse_class(self) -> np.ndarray:
        """inverse_class[i] = id of the class X_i^{-1}."""
        if self._inverse_class is None:
            leaders = np.array([int(m[0]) for m in self.classes])
            self._inverse_class = self.class_of[self.group.neg[leaders]].copy()
        return self._inverse_class

    def conv(self, x_id: int, y_id: int) -> np.ndarray:
        """Multiplicity vector of the product X_x * X_y over all of G."""
        key = (x_id, y_id) if x_id <= y_id else (y_id, x_id)
        v = self._conv_cache.get(key)
        if v is None:
            X = self.classes[key[0]]
            Y = self.classes[key[1]]
            pairs = self.group.add_table[np.ix_(X, Y)]
            v = np.bincount(pairs.ravel(), minlength=self.group.order)
            v.flags.writeable = False
            self._conv_cache[key] = v
        return v

    def structure_constant(self, x_id: int, y_id: int, z_id: int) -> int:
        """c^Z_{XY}: multiplicity of any element of Z in X*Y."""
        return int(self.conv(x_id, y_id)[self.classes[z_id][0]])

    def is_union_of_classes(self, members) -> bool:
        idx = _as_index_set(self.group, members)
        if not idx:
            return True
        hit = {int(self.class_of[i]) for i in idx}
        total = sum(len(self.classes[c]) for c in hit)
        return total == len(idx)

    def class_ids_inside(self, mask_or_members):
        if isinstance(mask_or_members, Subgroup):
            test = lambda m: all(int(x) in mask_or_members for x in m)
        else:
            idx = _as_index_set(self.group, mask_or_members)
            test = lambda m: all(int(x) in idx for x in m)
        return [i for i, m in enumerate(self.classes) if test(m)]

    # -- radicals, spans, A-subgroups -----------------------------------------

    def radical(self, x_id: int) -> Subgroup:
        """rad(X) = {g : g + X = X}, an A-subgroup."""
        H = self._radicals.get(x_id)
        if H is None:
            G = self.group
            members = self.classes[x_id]
            ind = np.zeros(G.order, dtype=bool)
            ind[members] = True
            shifts = G.add_table[:, members]  # (n, |X|): g + x
            ok = ind[shifts].all(axis=1)
            H = generated_subgroup(G, np.nonzero(ok)[0].tolist())
            assert H.order == int(ok.sum()), "radical is not a subgroup"
            assert self.is_union_of_classes(H.members), "radical is not an A-set"
            self._radicals[x_id] = H
        return H

    def span(self, x_id: int) -> Subgroup:
        """The subgroup generated by the class, an A-subgroup."""
        H = self._spans.get(x_id)
        if H is None:
            H = generated_subgroup(self.group, self.classes[x_id].tolist())
            assert self.is_union_of_classes(H.members), "span is not an A-set"
            self._spans[x_id] = H
        return H

    def a_subgroups(self):
        """All subgroups that are unions of classes, in canonical order."""
        if self._a_subgroups is None:
            self._a_subgroups = [
                H for H in subgroups(self.group) if self.is_union_of_classes(H.members)
            ]
        return self._a_subgroups

    def is_a_subgroup(self, H: Subgroup) -> bool:
        return self.is_union_of_classes(H.members)

    def is_primitive(self) -> bool:
        return len(self.a_subgroups()) == 2 if self.group.order > 1 else True

    # -- induced S-ring on a section ------------------------------------------

    def induced(self, S: Section) -> "SRing":
        """The S-ring on U/L spanned by images of classes inside U."""
        if not (self.is_a_subgroup(S.U) and self.is_a_subgroup(S.L)):
            raise SectionNotASection("U and L must be A-subgroups")
        Q = S.group
        labels = np.full(Q.order, -1, dtype=np.int64)
        for cid in self.class_ids_inside(S.U):
            for x in self.classes[cid]:
                q = S.project(int(x))
                labels[q] = cid
        assert (labels >= 0).all()
        return validate_labels(Q, relabel_by_first_occurrence(labels.astype(np.int32)))

    # -- multiplier operators ---------------------------------------------------

    def power_map(self, x_id: int, m: int):
        """X^(m) = {x^m} for m coprime to |G|; always a single class."""
        import math

        G = self.group
        if math.gcd(m, G.order) != 1:
            raise ValueError(f"{m} is not coprime to |G| = {G.order}")
        image = {G.scale(int(x), m) for x in self.classes[x_id]}
        ids = {int(self.class_of[i]) for i in image}
        assert len(ids) == 1 and image == set(
            int(x) for x in self.classes[next(iter(ids))]
        ), "multiplier image is not a class"
        return image

    def power_class(self, x_id: int, m: int) -> int:
        """Class id of X^(m)."""
        first = self.group.scale(int(self.classes[x_id][0]), m)
        self.power_map(x_id, m)
        return int(self.class_of[first])

    def wielandt_p(self, x_id: int, p: int):
        """X^[p] = {x^p : x in X, |X ∩ Hx| not divisible by p}, an A-set."""
        G = self.group
        if G.order % p != 0:
            raise ValueError(f"{p} does not divide |G| = {G.order}")
        H = [g for g in range(G.order) if G.scale(g, p) == 0]
        members = set(int(x) for x in self.classes[x_id])
        out = set()
        for x in sorted(members):
            count = sum(1 for h in H if G.add(h, x) in members)
            if count % p != 0:
                out.add(G.scale(x, p))
        assert self.is_union_of_classes(out), "X^[p] is not an A-set"
        return out

    def lambda_over(self, x_id: int, H: Subgroup) -> int:
        """The common value |X ∩ Hx| over x in X (H an A-subgroup)."""
        if not self.is_a_subgroup(H):
            raise HNotASubgroup("lambda requires an A-subgroup")
        G = self.group
        members = set(int(x) for x in self.classes[x_id])
        values = {
            sum(1 for h in H.members if G.add(h, x) in members) for x in members
        }
        if len(values) != 1:
            raise AssertionError(
                f"|X ∩ Hx| is not constant on class {x_id}: {sorted(values)}"
            )
        return values.pop()


def validate_labels(G: AbelianGroup, class_of: np.ndarray) -> SRing:
    """Validate a partition given as a label array; raise precise errors."""
    class_of = relabel_by_first_occurrence(np.asarray(class_of, dtype=np.int32))
    classes = _classes_from_labels(class_of)
    if len(classes[int(class_of[0])]) != 1:
        raise IdentityNotSingleton("the class of e has more than one element")
    neg = G.neg
    class_set_ids = {}
    for i, m in enumerate(classes):
        class_set_ids[frozenset(m.tolist())] = i
    for i, m in enumerate(classes):
        inv = frozenset(int(neg[x]) for x in m.tolist())
        if inv not in class_set_ids:
            raise NotInverseClosed(
                f"inverse of class {i} ({sorted(int(x) for x in m)[:8]}...) is not a class"
            )
    stabilized = stabilize(G, class_of)
    if int(stabilized.max()) + 1 != len(classes):
        # find a witness pair: some product separates two elements of a class
        rank = len(classes)
        n = G.order
        sub = G.sub_table
        onehot = np.zeros((rank, n), dtype=np.int32)
        onehot[class_of, np.arange(n)] = 1
        for i, members in enumerate(classes):
            conv = onehot[:, sub[:, members]].sum(axis=2)
            for j in range(rank):
                v = conv[j]
                for m in classes:
                    vals = v[m]
                    if vals.min() != vals.max():
                        g = int(m[int(np.argmin(vals))])
                        gp = int(m[int(np.argmax(vals))])
                        raise ProductNotClosed(i, j, g, gp)
        raise ProductNotClosed(-1, -1, -1, -1, "product closure failed")
    return SRing(G, class_of)


def validate(G: AbelianGroup, partition) -> SRing:
    """Validate a partition given as an iterable of element sets."""
    n = G.order
    class_of = np.full(n, -1, dtype=np.int32)
    for i, part in enumerate(partition):
        idx = _as_index_set(G, part)
        if not idx:
            raise NotPartition(f"class {i} is empty")
        for x in idx:
            if not (0 <= x < n):
                raise NotPartition(f"element {x} outside the group")
            if class_of[x] != -1:
                raise NotPartition(f"element {x} appears in two classes")
            class_of[x] = i
    if (class_of == -1).any():
        missing = int(np.nonzero(class_of == -1)[0][0])
        raise NotPartition(f"element {missing} is not covered")
    return validate_labels(G, class_of)


def sring_closure(G: AbelianGroup, partition) -> SRing:
    """The coarsest S-ring refining the given partition."""
    n = G.order
    class_of = np.full(n, -1, dtype=np.int32)
    for i, part in enumerate(partition):
        idx = _as_index_set(G, part)
        if not idx:
            raise NotPartition(f"class {i} is empty")
        for x in idx:
            if not (0 <= x < n) or class_of[x] != -1:
                raise NotPartition("sets do not partition the group")
            class_of[x] = i
    if (class_of == -1).any():
        raise NotPartition("sets do not cover the group")
    return SRing(G, stabilize(G, class_of))


def trivial_sring(G: AbelianGroup) -> SRing:
    """T_G: classes {e} and G^#  (rank 1 for the trivial group)."""
    labels = np.ones(G.order, dtype=np.int32)
    labels[0] = 0
    if G.order == 1:
        labels = np.zeros(1, dtype=np.int32)
    return SRing(G, relabel_by_first_occurrence(labels))


def full_group_ring(G: AbelianGroup) -> SRing:
    """ZG: all classes are singletons."""
    return SRing(G, np.arange(G.order, dtype=np.int32))


# -- partition file format -----------------------------------------------------


def partition_to_json(A: SRing) -> str:
    """Serialize as {"group": "...", "classes": [["a1,a2,..."], ...]}."""
    G = A.group
    classes = [
        [",".join(str(c) for c in G.coords_of(int(x))) for x in members]
        for members in A.classes
    ]
    return json.dumps({"group": G.spec, "classes": classes})


def partition_from_json(text: str):
    """Parse the partition file format; returns (group, list of index sets)."""
    data = json.loads(text)
    G = AbelianGroup.from_spec(data["group"])
    classes = [
        [G.index_of([int(p) for p in elem.split(",")]) for elem in members]
        for members in data["classes"]
    ]
    return G, classes
