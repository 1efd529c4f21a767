"""Brute-force reference computations, written straight from the definitions.

Nothing here imports the algorithmic parts of rfca; configurations are plain
tuples and the monoid is just its table.
"""

from itertools import permutations, product


def assoc_triples(table):
    n = len(table)
    return [(i, j, k) for i, j, k in product(range(n), repeat=3)
            if table[table[i][j]][k] != table[i][table[j][k]]]


def morphisms(S_table, T_table, S_id=None, T_id=None):
    """All maps f with f(ab) = f(a)f(b); monoidal when both identities given."""
    n, m = len(S_table), len(T_table)
    out = []
    for f in product(range(m), repeat=n):
        if S_id is not None and f[S_id] != T_id:
            continue
        if all(f[S_table[a][b]] == T_table[f[a]][f[b]] for a in range(n) for b in range(n)):
            out.append(f)
    return out


def is_compatible(table, labels):
    n = len(table)
    for s, a, b in product(range(n), repeat=3):
        if labels[a] == labels[b]:
            if labels[table[s][a]] != labels[table[s][b]]:
                return False
            if labels[table[a][s]] != labels[table[b][s]]:
                return False
    return True


def partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def congruence_label_arrays(table):
    n = len(table)
    out = []
    for p in partitions(range(n)):
        labels = [0] * n
        for k, block in enumerate(sorted(p, key=min)):
            for e in block:
                labels[e] = k
        if is_compatible(table, labels):
            out.append(tuple(labels))
    return out


def isomorphic(t1, id1, t2, id2):
    n = len(t1)
    if len(t2) != n:
        return False
    for f in permutations(range(n)):
        if f[id1] != id2:
            continue
        if all(f[t1[a][b]] == t2[f[a]][f[b]] for a in range(n) for b in range(n)):
            return True
    return False


def closure(table, identity, gens):
    seen = {identity}
    changed = True
    while changed:
        changed = False
        for s in list(seen):
            for g in gens:
                if table[s][g] not in seen:
                    seen.add(table[s][g])
                    changed = True
    return seen


# -- shift spaces as tuples --------------------------------------------------


def all_configs(n, a):
    return list(product(range(a), repeat=n))


def shift(table, m, x):
    return tuple(x[table[mp][m]] for mp in range(len(table)))


def equivariant(table, a, f):
    """f: dict config -> config."""
    n = len(table)
    return all(f[shift(table, m, x)] == shift(table, m, f[x])
               for m in range(n) for x in all_configs(n, a))


def equivariant_graphs(table, a):
    """Every equivariant self-map of A^M as a graph on lexicographic indices."""
    n = len(table)
    confs = all_configs(n, a)
    index = {x: i for i, x in enumerate(confs)}
    out = []
    for images in product(range(len(confs)), repeat=len(confs)):
        f = {x: confs[images[i]] for i, x in enumerate(confs)}
        if equivariant(table, a, f):
            out.append(tuple(index[f[x]] for x in confs))
    return sorted(out)


def rule_output(number, l, c, r):
    return (number >> (4 * l + 2 * c + r)) & 1


def evolve(number, word):
    n = len(word)
    return tuple(rule_output(number, word[(k - 1) % n], word[k], word[(k + 1) % n]) for k in range(n))


def equivariant_graphs_pruned(table, a):
    """Same set as equivariant_graphs, but assigns images cell by cell and
    drops a partial map as soon as some constraint f(mx) = m f(x) with both
    sides known fails.  Usable up to |A^M| = 8."""
    n = len(table)
    confs = all_configs(n, a)
    index = {x: i for i, x in enumerate(confs)}
    N = len(confs)
    sh = [[index[shift(table, m, x)] for x in confs] for m in range(n)]
    g = [None] * N
    out = []

    def ok(upto):
        for m in range(n):
            for i in range(upto + 1):
                j = sh[m][i]
                if g[j] is not None and g[j] != sh[m][g[i]]:
                    return False
        return True

    def rec(i):
        if i == N:
            out.append(tuple(g))
            return
        for v in range(N):
            g[i] = v
            if ok(i):
                rec(i + 1)
        g[i] = None

    rec(0)
    return sorted(out)
