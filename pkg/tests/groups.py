"""Small finite groups and brute-force oracles shared by the tests."""

import itertools

from groundsub.groupcore import make_from_table


def table_from_perms(perms):
    """Cayley table of a list of permutations (0-based tuples), left-to-right product."""
    perms = list(perms)
    idx = {p: i for i, p in enumerate(perms)}
    n = len(perms[0])
    return [[idx[tuple(q[p[i]] for i in range(n))] for q in perms] for p in perms]


def closure(gens):
    n = len(gens[0])
    found = {tuple(range(n))}
    layer = set(found)
    while layer:
        layer = {tuple(g[p[i]] for i in range(n)) for p in layer for g in gens} - found
        found |= layer
    return sorted(found)


def symmetric(n):
    return make_from_table(table_from_perms(sorted(itertools.permutations(range(n)))), name=f"S{n}")


def dihedral(n):
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return make_from_table(table_from_perms(closure([rot, ref])), name=f"D{n}")


def direct_product(m, n):
    elems = [(i, j) for i in range(m) for j in range(n)]
    idx = {e: t for t, e in enumerate(elems)}
    table = [[idx[((x[0] + y[0]) % m, (x[1] + y[1]) % n)] for y in elems] for x in elems]
    return make_from_table(table, labels=[f"({i},{j})" for i, j in elems], name=f"Z{m}xZ{n}")


def brute_subgroups(G):
    """All subsets containing the identity and closed under the product."""
    others = [g for g in G.elements() if g != G.identity]
    out = []
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            s = set(combo) | {G.identity}
            if all(G.mul(x, y) in s for x in s for y in s):
                out.append(tuple(sorted(s)))
    return sorted(out, key=lambda s: (len(s), s))


def brute_is_ground(G, H_elements, A, parts):
    """Direct check: group A by the relation x ~ y iff x y^-1 in H."""
    H = set(H_elements)
    classes = []
    for x in A:
        for cls in classes:
            if G.mul(x, G.inv(cls[0])) in H:
                cls.append(x)
                break
        else:
            classes.append([x])
    return tuple(sorted(len(c) for c in classes)) == tuple(parts)
