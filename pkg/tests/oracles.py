"""Independent brute-force implementations used to cross-check the library.

These work on plain Python sets and the raw multiplication table and avoid
every shortcut the library takes (atoms, bitset tricks, shortest paths).
"""
from itertools import combinations, product


def powerset(points):
    pts = sorted(points)
    for k in range(len(pts) + 1):
        for c in combinations(pts, k):
            yield frozenset(c)


def is_union_closed(fam):
    return all(a | b in fam for a in fam for b in fam)


def count_union_closed(n):
    """Families of subsets of an n-set containing the empty set and X, closed under unions."""
    x = frozenset(range(n))
    middle = [s for s in powerset(range(n)) if s and s != x]
    count = 0
    for k in range(len(middle) + 1):
        for pick in combinations(middle, k):
            fam = {frozenset(), x, *pick}
            if is_union_closed(fam):
                count += 1
    return count


def opens_of(top):
    return {frozenset(top.universe.labels_of(m)) for m in top.members}


def closure(opens, points, s):
    """Points all of whose open neighbourhoods meet s."""
    return frozenset(x for x in points if all(u & s for u in opens if x in u))


def setmul(table, labels, a, b):
    idx = {l: i for i, l in enumerate(labels)}
    return frozenset(labels[table[idx[x]][idx[y]]] for x in a for y in b)


def mult_precontinuous(opens, table, labels):
    """For all x, y and open W containing xy there are opens U at x, V at y with UV inside W."""
    idx = {l: i for i, l in enumerate(labels)}
    for x, y in product(labels, repeat=2):
        xy = labels[table[idx[x]][idx[y]]]
        for w in opens:
            if xy not in w:
                continue
            if not any(setmul(table, labels, u, v) <= w for u in opens if x in u for v in opens if y in v):
                return False
    return True


def inverse_precontinuous(opens, table, labels):
    idx = {l: i for i, l in enumerate(labels)}
    e = next(l for l in labels if all(table[idx[l]][j] == j for j in range(len(labels))))
    inv = {x: next(y for y in labels if labels[table[idx[x]][idx[y]]] == e) for x in labels}
    return all(frozenset(inv[z] for z in w) in opens for w in opens)


def is_t2(opens, points):
    return all(any(x in u and y in v and not u & v for u in opens for v in opens)
               for x, y in combinations(points, 2))


def weight(opens):
    """Number of nonempty opens that are not the union of strictly smaller opens."""
    n = 0
    for u in opens:
        if not u:
            continue
        below = frozenset().union(*[v for v in opens if v < u])
        if below != u:
            n += 1
    return n


def character(opens, x):
    """Size of a smallest local base at x, by trying families in increasing size."""
    at_x = [u for u in opens if x in u]
    for k in range(1, len(at_x) + 1):
        for fam in combinations(at_x, k):
            if all(any(b <= u for b in fam) for u in at_x):
                return k
    raise AssertionError("unreachable")


def cellularity(opens):
    ne = [u for u in opens if u]
    best = 0
    for k in range(1, len(ne) + 1):
        if any(all(not a & b for a, b in combinations(fam, 2)) for fam in combinations(ne, k)):
            best = k
        else:
            break
    return best


def density(opens, points):
    ne = [u for u in opens if u]
    for s in powerset(points):
        if all(u & s for u in ne):
            return len(s)


def resolvable(opens, points):
    ne = [u for u in opens if u]
    for a in powerset(points):
        b = frozenset(points) - a
        if all(u & a and u & b for u in ne):
            return a, b
    return None


def covering_index(opens, table, labels, e):
    """max over opens U at e of the least |F| with FU = G."""
    g = frozenset(labels)
    worst = 0
    for u in opens:
        if e not in u:
            continue
        best = next(len(f) for f in powerset(labels) if setmul(table, labels, f, u) == g)
        worst = max(worst, best)
    return worst


def factorization_prenorm(table, costs, identity, max_len):
    """min over products a1...ar = x with r <= max_len of the summed costs (exact, as integers)."""
    n = len(table)
    best = [None] * n
    best[identity] = 0
    frontier = {identity: 0}
    for _ in range(max_len):
        nxt = {}
        for y, d in frontier.items():
            for a in range(n):
                z = table[y][a]
                nd = d + costs[a]
                if z not in nxt or nd < nxt[z]:
                    nxt[z] = nd
        for z, d in nxt.items():
            if best[z] is None or d < best[z]:
                best[z] = d
        frontier = nxt
    return best
