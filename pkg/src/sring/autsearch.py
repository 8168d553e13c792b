"""Aut(A) for an S-ring A: individualization-refinement backtracking.

The colored configuration has edge color (g, h) -> class id of h - g.  The
search refines ordered partitions (cells ordered by sorted signature, which is
invariant under vertex relabeling, so discrete leaves match positionally
against the first leaf).  All right translations are installed up front; the
found group prunes sibling branches through orbit closure.
"""

from __future__ import annotations

import numpy as np

from .errors import SRingError
from .perm import PermGroup, regular_gens
from .srings import SRing, rank_rows, relabel_by_first_occurrence

DEGREE_CAP = 256


class ColorConfig:
    """The Cayley configuration of an S-ring: a complete edge-colored digraph."""

    def __init__(self, A: SRing):
        G = A.group
        if G.order > DEGREE_CAP:
            raise SRingError(f"degree {G.order} exceeds cap {DEGREE_CAP}")
        self.sring = A
        self.degree = G.order
        # edge_color[g, h] = class of h - g; right translations preserve it
        self.edge_color = A.class_of[G.sub_table.T].astype(np.int32)
        self.n_colors = A.rank
        stack = np.zeros((A.rank, G.order, G.order), dtype=np.float32)
        for e in range(A.rank):
            stack[e] = self.edge_color == e
        self._stack = stack

    def refine(self, colors: np.ndarray) -> np.ndarray:
        """Stable ordered refinement of a vertex coloring.

        Cell ids are positions in an invariant order (sorted signatures), so
        two colorings related by a configuration automorphism refine to
        correspondingly ordered cells.  In-signatures are omitted: for these
        configurations the in-count per color equals the out-count of the
        inverse color, so they never split further.
        """
        n = self.degree
        colors = np.asarray(colors, dtype=np.int64)
        while True:
            k = int(colors.max()) + 1
            if k == n:
                return colors
            onehot = np.zeros((n, k), dtype=np.float32)
            onehot[np.arange(n), colors] = 1.0
            counts = (self._stack @ onehot).astype(np.int64)  # (E, n, k)
            sig = np.concatenate(
                [colors[:, None], counts.transpose(1, 0, 2).reshape(n, -1)], axis=1
            )
            new = rank_rows(sig)
            if int(new.max()) + 1 == k:
                return new
            colors = new

    def individualize(self, colors: np.ndarray, v: int) -> np.ndarray:
        """Split {v} off the front of its cell."""
        out = np.where(colors >= colors[v], colors + 1, colors)
        out[v] = colors[v]
        return out

    def preserves(self, f: np.ndarray) -> bool:
        M = self.edge_color
        return bool((M[np.ix_(f, f)] == M).all())


def refine(A: SRing, vertex_colors=None) -> np.ndarray:
    """Public refinement: stable coloring with first-seen class numbering."""
    config = ColorConfig(A)
    if vertex_colors is None:
        vertex_colors = np.zeros(A.group.order, dtype=np.int64)
    stable = config.refine(np.asarray(vertex_colors, dtype=np.int64))
    return relabel_by_first_occurrence(stable.astype(np.int32))


class _AutSearch:
    def __init__(self, A: SRing):
        self.config = ColorConfig(A)
        self.n = self.config.degree
        G = A.group
        self.found = [np.asarray(g) for g in regular_gens(G)]
        self._seen = {tuple(int(x) for x in g) for g in self.found}
        self.base_pi = None
        self.base_inv = {}
        self.base_path = []

    def run(self) -> PermGroup:
        colors = self.config.refine(np.zeros(self.n, dtype=np.int64))
        self._descend(colors, [])
        for g in self.found:
            assert self.config.preserves(np.asarray(g)), "IR produced a non-automorphism"
        # the leftmost path is a verified stabilizer chain for the found group
        return PermGroup.from_verified_chain(self.n, self.base_path, self.found)

    def _extend(self, g):
        key = tuple(int(x) for x in g)
        if key not in self._seen:
            self._seen.add(key)
            self.found.append(np.asarray(g))

    # -- target cell: smallest non-singleton, least position on ties ---------

    def _target_cell(self, colors):
        sizes = np.bincount(colors)
        nonsingleton = np.nonzero(sizes > 1)[0]
        if len(nonsingleton) == 0:
            return None
        best = nonsingleton[np.argmin(sizes[nonsingleton])]
        return np.nonzero(colors == best)[0]

    def _leaf(self, colors):
        """Try the positional matching against the first leaf."""
        pi = np.argsort(colors)
        if self.base_pi is None:
            self.base_pi = pi
            return None
        f = np.empty(self.n, dtype=np.int64)
        f[self.base_pi] = pi
        if self.config.preserves(f):
            return f
        return None

    def _stab_gens(self, fixed):
        out = []
        for g in self.found:
            if all(int(g[v]) == v for v in fixed):
                out.append(g)
        return out

    def _orbit_closure(self, seeds, gens, cell_set):
        orbit = set(seeds)
        queue = list(seeds)
        while queue:
            x = queue.pop()
            for g in gens:
                y = int(g[x])
                if y in cell_set and y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        return orbit

    def _descend(self, colors, fixed):
        """Explore a node; returns one new automorphism for non-base subtrees.

        On the base path (before the first leaf exists) all cell candidates
        are explored modulo the found group; elsewhere the first automorphism
        found is returned so each coset contributes a single representative.
        A node whose cell-size sequence differs from the base path's at the
        same depth cannot reach an automorphism leaf and is cut.
        """
        colors = self.config.refine(colors)
        depth = len(fixed)
        inv = tuple(np.bincount(colors).tolist())
        if self.base_pi is None:
            self.base_inv[depth] = inv
        elif self.base_inv.get(depth) != inv:
            return None
        cell = self._target_cell(colors)
        if cell is None:
            return self._leaf(colors)
        cell = [int(v) for v in cell]
        cell_set = set(cell)
        on_base = self.base_pi is None
        explored = set()
        while True:
            covered = self._orbit_closure(explored, self._stab_gens(fixed), cell_set) if explored else set()
            remaining = [v for v in cell if v not in covered]
            if not remaining:
                return None
            v = remaining[0]
            if on_base and self.base_pi is None:
                self.base_path.append(v)
            found = self._descend(self.config.individualize(colors, v), fixed + [v])
            explored.add(v)
            if found is not None:
                if not on_base:
                    return found
                self._extend(found)


def aut_sring(A: SRing) -> PermGroup:
    """The exact automorphism group of the S-ring's configuration."""
    if A.group.order == 1:
        return PermGroup([], 1)
    return _AutSearch(A).run()
