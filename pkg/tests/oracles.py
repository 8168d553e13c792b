"""Independent brute-force oracles used by the tests.

Everything here recomputes results straight from definitions with plain
Python, deliberately avoiding the package's kernels (stabilize, BSGS, IR).
"""

from itertools import product


def group_tables(G):
    n = G.order
    add = [[G.add(i, j) for j in range(n)] for i in range(n)]
    neg = [G.neg_one(i) for i in range(n)]
    return add, neg


def is_sring_partition(G, classes):
    """Direct check of the S-ring axioms on a partition given with {e} first."""
    n = G.order
    add, neg = group_tables(G)
    parts = [list(c) for c in classes]
    covered = sorted(x for p in parts for x in p)
    if covered != list(range(n)):
        return False
    if [0] not in parts and {0} not in [set(p) for p in parts]:
        return False
    if len([p for p in parts if 0 in p][0]) != 1:
        return False
    setset = {frozenset(p) for p in parts}
    for p in parts:
        if frozenset(neg[x] for x in p) not in setset:
            return False
    for P in parts:
        for Q in parts:
            mult = [0] * n
            for x in P:
                for y in Q:
                    mult[add[x][y]] += 1
            for p in parts:
                vals = {mult[x] for x in p}
                if len(vals) > 1:
                    return False
    return True


def oracle_enumerate(G):
    """All S-rings over G: every set partition of G^# filtered by the axioms."""
    n = G.order
    elems = list(range(1, n))
    found = []

    def rec(i, classes):
        if i == len(elems):
            parts = [[0]] + [list(c) for c in classes]
            if is_sring_partition(G, parts):
                found.append(
                    tuple(sorted(tuple(sorted(p)) for p in parts))
                )
            return
        x = elems[i]
        for c in classes:
            c.append(x)
            rec(i + 1, classes)
            c.pop()
        classes.append([x])
        rec(i + 1, classes)
        classes.pop()

    rec(0, [])
    return set(found)


def brute_config_stabilizer_count(edge_color, n):
    """Backtracking count of color-preserving permutations fixing point 0."""
    M = edge_color
    count = 0

    def backtrack(img):
        nonlocal count
        k = len(img)
        if k == n:
            count += 1
            return
        used = set(img)
        for cand in range(n):
            if cand in used:
                continue
            ok = True
            for u in range(k):
                if M[u][k] != M[img[u]][cand] or M[k][u] != M[cand][img[u]]:
                    ok = False
                    break
            if ok:
                backtrack(img + [cand])

    backtrack([0])
    return count


def brute_perm_group_order(gens, n):
    """Order of <gens> by plain closure."""
    seen = {tuple(range(n))}
    frontier = [tuple(range(n))]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[x] for x in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def char_sum_complex(G, y, X):
    """Floating-point character sum, for cross-checking exact cyclotomics."""
    import cmath

    N = G.exponent
    total = 0j
    for x in X:
        e = 0
        for n_i, s in zip(G.factors, G.strides):
            e += (N // n_i) * ((x // s) % n_i) * ((y // s) % n_i)
        total += cmath.exp(2j * cmath.pi * (e % N) / N)
    return total
