"""Exhaustive, deduplicated enumeration of all S-rings over a small group.

Classes are decided one at a time in order of their minimal element, so every
S-ring corresponds to exactly one root-to-leaf path and no isomorph rejection
is needed.  Pruning combines three sound cuts:

  * every future class lies inside one block of the closure of the decided
    partition (the same splitting kernel as validation);
  * deciding a class forces its whole rational package X^(m) at once;
  * partial candidate classes must keep the product multiplicities of the
    decided classes (and of the candidate against itself) completable to a
    value constant on every decided class and on the candidate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .autsearch import aut_sring
from .errors import SRingError
from .groups import AbelianGroup
from .schurity import is_cyclotomic, is_normal_sring, is_schurian
from .srings import SRing, relabel_by_first_occurrence, stabilize

ENUM_ORDER_BOUND = 64


@dataclass
class CatalogEntry:
    sring: SRing
    rank: int
    schurian: bool | None = None
    cyclotomic: bool | None = None
    normal: bool | None = None
    aut_order: int | None = None
    primitive: bool | None = None
    aut: object = None  # cached PermGroup from the flag computation

    def to_json(self) -> str:
        G = self.sring.group
        classes = [
            [",".join(str(c) for c in G.coords_of(int(x))) for x in members]
            for members in self.sring.classes
        ]
        return json.dumps(
            {
                "group": G.spec,
                "classes": classes,
                "rank": self.rank,
                "schurian": self.schurian,
                "cyclotomic": self.cyclotomic,
                "normal": self.normal,
                "aut_order": None if self.aut_order is None else str(self.aut_order),
                "primitive": self.primitive,
            }
        )


@dataclass
class Catalog:
    group: AbelianGroup
    entries: list

    def __len__(self):
        return len(self.entries)

    def srings(self):
        return [e.sring for e in self.entries]

    def to_jsonl(self) -> str:
        return "\n".join(e.to_json() for e in self.entries) + "\n"


class _Search:
    def __init__(self, G: AbelianGroup):
        self.G = G
        self.n = G.order
        self.add = G.add_table
        self.sub = G.sub_table
        self.neg = G.neg
        N = G.exponent
        self.sigma = [
            G.scale_map(m)
            for m in range(2, N)
            if math.gcd(m, N) == 1
        ]
        self.results = []

    def run(self):
        n = self.n
        if n == 1:
            self.results.append(np.zeros(1, dtype=np.int32))
            return self.results
        root = np.ones(n, dtype=np.int32)
        root[0] = 0
        labels = stabilize(self.G, root)
        self._node([frozenset([0])], labels)
        return self.results

    # -- outer recursion ----------------------------------------------------

    def _node(self, decided, labels):
        covered = set()
        for cls in decided:
            covered |= cls
        if len(covered) == self.n:
            self.results.append(labels.copy())
            return
        m = min(x for x in range(self.n) if x not in covered)
        block = frozenset(np.nonzero(labels == labels[m])[0].tolist())
        for X in self._candidates(decided, labels, block, m):
            self._commit(decided, labels, covered, X)

    def _commit(self, decided, labels, covered, X):
        # rational package: every sigma image is also a final class
        package = {X}
        for p in self.sigma:
            img = frozenset(int(p[x]) for x in X)
            package.add(img)
        new_classes = []
        for img in sorted(package, key=min):
            if img & covered:
                if img in decided:
                    continue
                return  # straddles a decided class
            lab_hit = {int(labels[x]) for x in img}
            if len(lab_hit) > 1:
                return  # straddles blocks
            new_classes.append(img)
        # carve the new classes out of their blocks and re-stabilize
        new_labels = labels.astype(np.int32).copy()
        nxt = int(labels.max()) + 1
        for img in new_classes:
            for x in img:
                new_labels[x] = nxt
            nxt += 1
        st = stabilize(self.G, new_labels)
        all_decided = decided + new_classes
        for cls in all_decided:
            first = next(iter(cls))
            lab = int(st[first])
            if int((st == lab).sum()) != len(cls):
                return  # closure split a decided class
        self._node(all_decided, st)

    # -- inner candidate enumeration -----------------------------------------

    def _candidates(self, decided, labels, block, m):
        """All candidate classes X with m = min X and X inside m's block."""
        others = sorted(block - {m})
        if not others:
            return [frozenset([m])]
        n = self.n
        add, sub = self.add, self.sub
        decided_members = [np.fromiter(cls, dtype=np.int64) for cls in decided]

        def sigma_consistent(in_set, out_set):
            """Force the multiplier-stabilizer closure; returns (in, out) or None."""
            in_set = set(in_set)
            out_set = set(out_set)
            changed = True
            while changed:
                changed = False
                for p in self.sigma:
                    img = {int(p[x]) for x in in_set}
                    if not img & in_set:
                        continue
                    # sigma meets the candidate, so it must fix it setwise
                    extra_in = img - in_set
                    if extra_in:
                        if extra_in & out_set or not extra_in <= block:
                            return None
                        in_set |= extra_in
                        changed = True
                    for y in list(out_set):
                        z = int(p[y])
                        if z in in_set:
                            return None
                        if z in block and z not in out_set:
                            out_set.add(z)
                            changed = True
            return in_set, out_set

        def tests(in_set, out_set):
            """Interval feasibility of products; sound, partial."""
            live = np.fromiter(
                sorted((block - out_set) | in_set), dtype=np.int64
            )
            in_arr = np.fromiter(sorted(in_set), dtype=np.int64)
            # self-difference multiplicities must be constant on the class
            d_lo = np.bincount(sub[np.ix_(in_arr, in_arr)].ravel(), minlength=n)
            d_hi = np.bincount(sub[np.ix_(live, live)].ravel(), minlength=n)
            if d_lo[in_arr].max() > d_hi[in_arr].min():
                return False
            # products with decided classes constant on the class and on them
            for F in decided_members:
                lo = np.bincount(add[np.ix_(F, in_arr)].ravel(), minlength=n)
                hi = np.bincount(add[np.ix_(F, live)].ravel(), minlength=n)
                if lo[in_arr].max() > hi[in_arr].min():
                    return False
                for cls_arr in decided_members:
                    if lo[cls_arr].max() > hi[cls_arr].min():
                        return False
            return True

        out = []

        def rec(i, in_set, out_set):
            while i < len(others) and (others[i] in in_set or others[i] in out_set):
                i += 1
            if i == len(others):
                out.append(frozenset(in_set))
                return
            y = others[i]
            # include y
            forced = sigma_consistent(in_set | {y}, out_set)
            if forced is not None and tests(forced[0], forced[1]):
                rec(i + 1, forced[0], forced[1])
            # exclude y
            forced = sigma_consistent(in_set, out_set | {y})
            if forced is not None:
                rec(i + 1, forced[0], forced[1])

        base = sigma_consistent({m}, set())
        if base is not None:
            rec(0, base[0], base[1])
        return out


def enumerate_srings(G: AbelianGroup, compute_flags: bool = True) -> Catalog:
    """All S-rings over G, each exactly once, sorted by (rank, class list)."""
    if G.order > ENUM_ORDER_BOUND:
        raise SRingError(f"enumeration bound {ENUM_ORDER_BOUND} exceeded")
    search = _Search(G)
    label_arrays = search.run()
    seen = {}
    for labels in label_arrays:
        A = SRing(G, relabel_by_first_occurrence(labels))
        key = A.key()
        assert key not in seen, "duplicate S-ring produced"
        seen[key] = A
    entries = []
    for A in seen.values():
        entry = CatalogEntry(sring=A, rank=A.rank)
        if compute_flags:
            K = aut_sring(A)
            rep = is_schurian(A, aut=K)
            entry.schurian = rep.schurian
            entry.aut_order = K.order
            entry.cyclotomic = is_cyclotomic(A)[0]
            entry.normal = is_normal_sring(A, aut=K)
            entry.primitive = A.is_primitive()
            entry.aut = K
        entries.append(entry)
    entries.sort(key=lambda e: (e.rank, [sorted(int(x) for x in m) for m in e.sring.classes]))
    return Catalog(group=G, entries=entries)


def sring_closure(G: AbelianGroup, partition) -> SRing:
    """Re-export of the closure operator (coarsest S-ring refining P)."""
    from .srings import sring_closure as _closure

    return _closure(G, partition)


def run_property_suite(catalog: Catalog) -> dict:
    """Evaluate the cross-module invariants on every entry (see checks)."""
    from .checks import run_property_suite as _suite

    return _suite(catalog)


def mark_iso_representatives(catalog: Catalog) -> dict:
    """Tag each entry with its Aut(G)-orbit representative.

    Catalogs list every partition; the paper-style counts are up to Cayley
    isomorphism (Aut(G)-conjugacy).  Returns {entry index: representative
    key}; an entry is an orbit representative iff its own key is minimal in
    its orbit.  Practical when |Aut(G)| is moderate.
    """
    from .groups import aut_group

    G = catalog.group
    perms = [f.perm for f in aut_group(G)]
    keys = {A.key(): i for i, A in enumerate(catalog.srings())}
    rep_of = {}
    for i, A in enumerate(catalog.srings()):
        best = None
        for p in perms:
            inv = np.empty(G.order, dtype=np.int64)
            inv[p] = np.arange(G.order)
            conj = relabel_by_first_occurrence(A.class_of[inv].astype(np.int32))
            key = tuple(conj.tolist())
            assert key in keys, "catalog is not closed under Aut(G)"
            if best is None or key < best:
                best = key
        rep_of[i] = best
    return rep_of


def catalog_to_jsonl(catalog: Catalog) -> str:
    return catalog.to_jsonl()


def catalog_from_jsonl(text: str) -> Catalog:
    from .srings import validate

    entries = []
    G = None
    for line in text.strip().splitlines():
        data = json.loads(line)
        group = AbelianGroup.from_spec(data["group"])
        if G is None:
            G = group
        classes = [
            [group.index_of([int(p) for p in elem.split(",")]) for elem in members]
            for members in data["classes"]
        ]
        A = validate(group, classes)
        entries.append(
            CatalogEntry(
                sring=A,
                rank=data["rank"],
                schurian=data.get("schurian"),
                cyclotomic=data.get("cyclotomic"),
                normal=data.get("normal"),
                aut_order=None if data.get("aut_order") is None else int(data["aut_order"]),
                primitive=data.get("primitive"),
            )
        )
    return Catalog(group=G, entries=entries)
