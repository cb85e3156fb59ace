"""Complete-graph combinatorics: oriented triangles, cycles, and the
decomposition of cycles into triangle 1-chains."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb, factorial

from .errors import BaseNotOnCycle, DuplicateVertex, OrderTooLarge

MAX_ORDER = 9


def oriented_triangle(a, b, c):
    """Canonical form of the oriented triangle abc: least vertex first,
    cyclic order preserved. (a,b,c) and (a,c,b) are distinct values."""
    if a == b or b == c or a == c:
        raise DuplicateVertex(f"triangle vertices not distinct: {(a, b, c)}")
    if a <= b and a <= c:
        return (a, b, c)
    if b <= a and b <= c:
        return (b, c, a)
    return (c, a, b)


def reverse_triangle(t):
    """The oppositely oriented triangle, canonical."""
    return (t[0], t[2], t[1])


def triangle_orientation(t):
    """+1 if the canonical triangle is the ascending orientation of its
    vertex set, -1 otherwise."""
    return 1 if t[1] < t[2] else -1


def triangle_key(t):
    """The ascending vertex triple underlying an oriented triangle."""
    return (t[0], t[1], t[2]) if t[1] < t[2] else (t[0], t[2], t[1])


def sorted_triangles(n):
    """All ascending vertex triples of K_n, lexicographic."""
    return list(combinations(range(n), 3))


def all_oriented_triangles(n):
    """All canonical oriented triangles of K_n (two per vertex triple)."""
    out = []
    for a, b, c in combinations(range(n), 3):
        out.append((a, b, c))
        out.append((a, c, b))
    return out


def canonical_cycle(vertices):
    """Rotate a vertex sequence so its least vertex comes first; orientation
    is preserved."""
    vs = tuple(vertices)
    if len(set(vs)) != len(vs):
        raise DuplicateVertex(f"cycle vertices not distinct: {vs}")
    k = vs.index(min(vs))
    return vs[k:] + vs[:k]


def cycle_count(n):
    """Closed form: number of cycles of K_n up to rotation and reflection."""
    return sum(comb(n, k) * factorial(k - 1) // 2 for k in range(3, n + 1))


@lru_cache(maxsize=None)
def enumerate_cycles(n, max_len=None):
    """Every cycle of K_n exactly once, one orientation each.

    Canonical representative: least vertex first and second vertex smaller
    than the last. Ordered by (length, vertex tuple); deterministic.
    """
    if not 3 <= n <= MAX_ORDER:
        raise OrderTooLarge(f"order {n} outside supported range 3..{MAX_ORDER}")
    limit = n if max_len is None else min(max_len, n)
    cycles = []
    for k in range(3, limit + 1):
        for subset in combinations(range(n), k):
            first = subset[0]
            rest = subset[1:]
            # fix orientation: second vertex < last vertex
            for perm in _permutations_with_orientation(rest):
                cycles.append((first,) + perm)
    cycles.sort(key=lambda c: (len(c), c))
    return tuple(cycles)


def _permutations_with_orientation(rest):
    from itertools import permutations

    for perm in permutations(rest):
        if perm[0] < perm[-1]:
            yield perm


def triangle_decomposition(cycle, base=None):
    """Fan decomposition of a cycle from a base vertex on it.

    After rotating the cycle to start at base, returns the triangles
    (base, v_i, v_{i+1}) for 1 <= i <= k-2, each with coefficient +1. Their
    1-chain sum equals the cycle.
    """
    vs = tuple(cycle)
    if base is None:
        base = min(vs)
    if base not in vs:
        raise BaseNotOnCycle(f"vertex {base} not on cycle {vs}")
    k = vs.index(base)
    vs = vs[k:] + vs[:k]
    return [
        (oriented_triangle(vs[0], vs[i], vs[i + 1]), 1)
        for i in range(1, len(vs) - 1)
    ]


def boundary_quadruple(p0, p1, p2, p3):
    """The four oriented faces on vertices p0..p3 whose 1-chain sum is zero:
    C0 = p1p2p3, C1 = p3p2p0, C2 = p0p1p3, C3 = p2p1p0."""
    if len({p0, p1, p2, p3}) != 4:
        raise DuplicateVertex(f"vertices not distinct: {(p0, p1, p2, p3)}")
    return (
        oriented_triangle(p1, p2, p3),
        oriented_triangle(p3, p2, p0),
        oriented_triangle(p0, p1, p3),
        oriented_triangle(p2, p1, p0),
    )


def cycle_edge_chain(cycle):
    """Directed-edge 1-chain of a cycle as {ascending pair: signed count}."""
    chain = {}
    vs = tuple(cycle)
    for i, u in enumerate(vs):
        v = vs[(i + 1) % len(vs)]
        key, sign = ((u, v), 1) if u < v else ((v, u), -1)
        chain[key] = chain.get(key, 0) + sign
        if chain[key] == 0:
            del chain[key]
    return chain


def chain_edge_chain(triangle_chain):
    """Directed-edge 1-chain of a triangle chain."""
    chain = {}
    for tri, coeff in triangle_chain:
        for i in range(3):
            u, v = tri[i], tri[(i + 1) % 3]
            key, sign = ((u, v), coeff) if u < v else ((v, u), -coeff)
            chain[key] = chain.get(key, 0) + sign
            if chain[key] == 0:
                del chain[key]
    return chain
