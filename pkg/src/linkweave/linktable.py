"""Triangle-pair linking tables between complete graphs, derived cycle-pair
linking, and weak/strong status by exhaustive enumeration."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import (
    DegenerateFamily,
    Inconsistent,
    InconsistentTable,
    MutualIntersection,
    NonGenericPair,
    OrderTooLarge,
)
from .geom import _project, _solve_projected_crossing, _cross2, rat, shear_schedule, segments_intersect
from .graphs import (
    boundary_quadruple,
    enumerate_cycles,
    sorted_triangles,
    triangle_decomposition,
    triangle_key,
    triangle_orientation,
)
from .stars import LinkMap

EXHAUSTIVE_GUARD = 8
_SHEAR_LIMIT = 512


class TriangleLinkTable:
    """Integer linking number for every ordered pair of oriented triangles.

    One value is stored per pair of ascending vertex triples; other
    orientations follow by antisymmetry, so the antisymmetry invariant holds
    structurally.
    """

    __slots__ = ("m", "n", "_values", "_matrix")

    def __init__(self, m, n, values=None):
        self.m = m
        self.n = n
        self._values = {}
        self._matrix = None
        if values:
            for (gk, hk), v in values.items():
                if v:
                    self._values[(gk, hk)] = v

    def get(self, gtri, htri):
        sign = triangle_orientation(gtri) * triangle_orientation(htri)
        return sign * self._values.get((triangle_key(gtri), triangle_key(htri)), 0)

    def set(self, gtri, htri, value):
        sign = triangle_orientation(gtri) * triangle_orientation(htri)
        key = (triangle_key(gtri), triangle_key(htri))
        self._matrix = None
        if value == 0:
            self._values.pop(key, None)
        else:
            self._values[key] = sign * value

    def items(self):
        """((ascending G triple, ascending H triple), value) pairs."""
        return self._values.items()

    def is_zero(self):
        return not self._values

    def transpose(self):
        return TriangleLinkTable(
            self.n, self.m, {(hk, gk): v for (gk, hk), v in self._values.items()}
        )

    def negate(self):
        return TriangleLinkTable(
            self.m, self.n, {k: -v for k, v in self._values.items()}
        )

    def row_map(self, gtri):
        """LinkMap over the H side: U -> lk(gtri, U)."""
        out = LinkMap(self.n)
        gkey = triangle_key(gtri)
        gsign = triangle_orientation(gtri)
        for (gk, hk), v in self._values.items():
            if gk == gkey:
                out.set(hk, gsign * v)
        return out

    def column_map(self, htri):
        """LinkMap over the G side: T -> lk(T, htri)."""
        out = LinkMap(self.m)
        hkey = triangle_key(htri)
        hsign = triangle_orientation(htri)
        for (gk, hk), v in self._values.items():
            if hk == hkey:
                out.set(gk, hsign * v)
        return out

    def matrix(self):
        """int64 matrix indexed by lexicographic ascending triples."""
        if self._matrix is None:
            gi = _triple_index(self.m)
            hi = _triple_index(self.n)
            mat = np.zeros((len(gi), len(hi)), dtype=np.int64)
            for (gk, hk), v in self._values.items():
                mat[gi[gk], hi[hk]] = v
            self._matrix = mat
        return self._matrix

    def __eq__(self, other):
        return (
            isinstance(other, TriangleLinkTable)
            and self.m == other.m
            and self.n == other.n
            and self._values == other._values
        )

    def __repr__(self):
        return f"TriangleLinkTable(m={self.m}, n={self.n}, nonzeros={len(self._values)})"


@lru_cache(maxsize=None)
def _triple_index(n):
    return {t: i for i, t in enumerate(sorted_triangles(n))}


@lru_cache(maxsize=None)
def _decomposition_matrix(n):
    """Cycle x ascending-triple matrix of fan-decomposition coefficients."""
    cycles = enumerate_cycles(n)
    index = _triple_index(n)
    mat = np.zeros((len(cycles), len(index)), dtype=np.int64)
    for r, cycle in enumerate(cycles):
        for tri, coeff in triangle_decomposition(cycle):
            mat[r, index[triangle_key(tri)]] += coeff * triangle_orientation(tri)
    return mat


# -- consistency and cycle-pair linking ---------------------------------------


def validate_consistency(table):
    """Check both-sided tetrahedron sums (antisymmetry holds structurally).

    For every 4-subset of one side, the four boundary faces must sum to zero
    against every fixed triangle of the other side; a violation means the
    table comes from no embedding.
    """
    _consistency_side(table, "G")
    _consistency_side(table.transpose(), "H")


def _consistency_side(table, side):
    mat = table.matrix()
    index = _triple_index(table.m)
    for quad in combinations(range(table.m), 4):
        total = np.zeros(mat.shape[1], dtype=np.int64)
        for tri in boundary_quadruple(*quad):
            total += triangle_orientation(tri) * mat[index[triangle_key(tri)]]
        if total.any():
            bad = int(np.flatnonzero(total)[0])
            fixed = sorted_triangles(table.n)[bad]
            raise Inconsistent(quad, fixed, side)


def cycle_pair_linking(table, c, d, base_c=None, base_d=None):
    """Bilinear extension of the table to a cycle pair via fan decomposition.

    Base-independent whenever the table is consistent; if consistency was
    skipped and base dependence is detected, raises InconsistentTable.
    """
    value = _cycle_pair_once(table, c, d, base_c, base_d)
    if base_c is None and base_d is None:
        # spot-check one alternative base pair; full independence follows
        # from consistency, which the caller is expected to have validated
        alt = _cycle_pair_once(table, c, d, c[1 % len(c)], d[1 % len(d)])
        if alt != value:
            raise InconsistentTable(
                f"cycle pair {c} x {d}: value depends on the decomposition base"
            )
    return value


def _cycle_pair_once(table, c, d, base_c, base_d):
    total = 0
    for tc, coeff_c in triangle_decomposition(c, base_c):
        for td, coeff_d in triangle_decomposition(d, base_d):
            total += coeff_c * coeff_d * table.get(tc, td)
    return total


# -- linkage status -----------------------------------------------------------


@dataclass(frozen=True)
class LinkageStatus:
    """Weak/strong/unlinked verdict with the earliest witness pair."""

    kind: str  # "unlinked" | "weak" | "strong"
    witness: tuple | None = None  # (cycle in G, cycle in H, linking number)

    @property
    def is_weak(self):
        return self.kind == "weak"

    @property
    def is_strong(self):
        return self.kind == "strong"


def linkage_status(table):
    """Exact status by enumerating every cycle pair.

    Witness order: increasing total length of the pair, then lexicographic on
    the (G cycle, H cycle) tuples. Guarded to orders <= 8 because weakness is
    a universally quantified claim.
    """
    if table.m > EXHAUSTIVE_GUARD or table.n > EXHAUSTIVE_GUARD:
        raise OrderTooLarge(
            f"orders ({table.m}, {table.n}) exceed the exhaustive guard "
            f"{EXHAUSTIVE_GUARD}; use sample_status"
        )
    cyc_g = enumerate_cycles(table.m)
    cyc_h = enumerate_cycles(table.n)
    bg = _decomposition_matrix(table.m)
    bh = _decomposition_matrix(table.n)
    left = bg @ table.matrix()  # cycles_G x triples_H

    len_g = np.array([len(c) for c in cyc_g], dtype=np.int64)
    len_h = np.array([len(c) for c in cyc_h], dtype=np.int64)
    # composite search key: total length, then G index, then H index
    # (cycle lists are already sorted by (length, tuple))
    key_strong = None
    key_weak = None
    block = 4096
    for start in range(0, len(cyc_h), block):
        stop = min(start + block, len(cyc_h))
        lk_block = left @ bh[start:stop].T
        tl = len_g[:, None] + len_h[None, start:stop]
        ic, ih = np.indices(lk_block.shape)
        keys = (tl << 28) | (ic << 14) | (ih + start)
        absv = np.abs(lk_block)
        strong_mask = absv >= 2
        if strong_mask.any():
            k = int(keys[strong_mask].min())
            key_strong = k if key_strong is None else min(key_strong, k)
        weak_mask = absv == 1
        if weak_mask.any():
            k = int(keys[weak_mask].min())
            key_weak = k if key_weak is None else min(key_weak, k)
    if key_strong is not None:
        return LinkageStatus("strong", _witness_from_key(table, key_strong))
    if key_weak is not None:
        return LinkageStatus("weak", _witness_from_key(table, key_weak))
    return LinkageStatus("unlinked")


def _witness_from_key(table, key):
    ic = (key >> 14) & ((1 << 14) - 1)
    ih = key & ((1 << 14) - 1)
    c = enumerate_cycles(table.m)[ic]
    d = enumerate_cycles(table.n)[ih]
    return (c, d, _cycle_pair_once(table, c, d, None, None))


@dataclass(frozen=True)
class SamplingResult:
    """Outcome of randomized status search; never claims weakness."""

    kind: str  # "strong_found" | "inconclusive"
    witness: tuple | None
    samples: int
    seed: int


def sample_status(table, samples, seed):
    """Seeded random cycle pairs; reports StrongFound or Inconclusive only."""
    rng = random.Random(seed)
    witness = None
    for _ in range(samples):
        c = _random_cycle(rng, table.m)
        d = _random_cycle(rng, table.n)
        v = _cycle_pair_once(table, c, d, None, None)
        if abs(v) >= 2:
            witness = (c, d, v)
            break
    if witness:
        return SamplingResult("strong_found", witness, samples, seed)
    return SamplingResult("inconclusive", None, samples, seed)


def _random_cycle(rng, n):
    k = rng.randint(3, n)
    verts = rng.sample(range(n), k)
    verts.sort()
    first, rest = verts[0], verts[1:]
    rng.shuffle(rest)
    if len(rest) >= 2 and rest[0] > rest[-1]:
        rest.reverse()
    return (first, *rest)


# -- building tables from geometry --------------------------------------------


def _chain_segments_3d(points, closed):
    n = len(points)
    limit = n if closed else n - 1
    return [(points[i], points[(i + 1) % n]) for i in range(limit)]


def _side_segments(chains):
    """Flatten [(key, points, closed)] into labeled 3d segments."""
    out = []
    for key, points, closed in chains:
        for seg in _chain_segments_3d(points, closed):
            out.append((key, seg))
    return out


def _check_sides_disjoint(asegs, bsegs):
    for akey, (p1, p2) in asegs:
        for bkey, (q1, q2) in bsegs:
            if segments_intersect(p1, p2, q1, q2):
                raise MutualIntersection((akey, bkey), None)


def _pairwise_generic(asegs, bsegs, s):
    """True when, under shear s, every cross-side incidence is a transverse
    interior crossing with strict height separation and no projected segment
    degenerates to a point."""
    s = rat(s)
    s2 = s * s
    aproj = [
        ((_project(p1, s, s2), p1[2]), (_project(p2, s, s2), p2[2]))
        for _, (p1, p2) in asegs
    ]
    bproj = [
        ((_project(q1, s, s2), q1[2]), (_project(q2, s, s2), q2[2]))
        for _, (q1, q2) in bsegs
    ]
    for (a1, _), (a2, _) in aproj:
        if a1 == a2:
            return None
    for (b1, _), (b2, _) in bproj:
        if b1 == b2:
            return None
    weights = {}
    for (akey, _), ((a1, z1), (a2, z2)) in zip(asegs, aproj):
        for (bkey, _), ((b1, w1), (b2, w2)) in zip(bsegs, bproj):
            hit = _solve_projected_crossing(a1, a2, b1, b2)
            if hit is None:
                continue
            if hit[0] != "crossing":
                return None
            _, t, u, _pt = hit
            ha = z1 + t * (z2 - z1)
            hb = w1 + u * (w2 - w1)
            if ha == hb:
                return None
            da = (a2[0] - a1[0], a2[1] - a1[1])
            db = (b2[0] - b1[0], b2[1] - b1[1])
            det = _cross2(da, db) if ha > hb else _cross2(db, da)
            sign = 1 if det > 0 else -1
            pair = (akey, bkey)
            weights[pair] = weights.get(pair, 0) + sign
    return weights


def crossing_weights(chains_a, chains_b):
    """Signed crossing sums between every chain of side A and side B.

    Finds the smallest scheduled shear making all cross-side incidences
    generic, then returns ({(a key, b key): signed crossing sum}, shear).
    The chains are [(key, rational points, closed flag)].
    """
    asegs = _side_segments(chains_a)
    bsegs = _side_segments(chains_b)
    _check_sides_disjoint(asegs, bsegs)
    for attempt, s in enumerate(shear_schedule()):
        if attempt >= _SHEAR_LIMIT:
            raise DegenerateFamily(
                f"no pairwise-generic shear in {_SHEAR_LIMIT} attempts"
            )
        weights = _pairwise_generic(asegs, bsegs, s)
        if weights is not None:
            return weights, s
    raise AssertionError("unreachable")


def _directed_edges(tri):
    """The three directed edges of an oriented triangle, as
    (ascending pair, traversal sign)."""
    out = []
    for i in range(3):
        u, v = tri[i], tri[(i + 1) % 3]
        out.append(((u, v), 1) if u < v else (((v, u)), -1))
    return out


def table_from_embeddings(g, h):
    """Triangle-pair linking table of two disjoint complete-graph embeddings.

    Every entry equals the exact linking number of the corresponding triangle
    curves. Crossings are computed once per edge pair under a single shear
    and summed per triangle pair, which gives identical values.
    """
    chains_g = [(e, g.edge_route(*e), False) for e in g.edge_keys()]
    chains_h = [(e, h.edge_route(*e), False) for e in h.edge_keys()]
    try:
        weights, _shear = crossing_weights(chains_g, chains_h)
    except MutualIntersection as exc:
        gedge, hedge = exc.i
        raise MutualIntersection(
            (f"G edge {gedge} (triangles through it)", f"H edge {hedge}")
        ) from exc
    table = TriangleLinkTable(g.order, h.order)
    for gt in sorted_triangles(g.order):
        gedges = _directed_edges(gt)
        for ht in sorted_triangles(h.order):
            total = 0
            for ge, gs in gedges:
                for he, hs in _directed_edges(ht):
                    total += gs * hs * weights.get((ge, he), 0)
            assert total % 2 == 0
            if total:
                table.set(gt, ht, total // 2)
    return table


def link_map_from_curve(curve, h):
    """LinkMap of one closed curve against every triangle of an embedding."""
    chains_c = [("C", list(curve.vertices), True)]
    chains_h = [(e, h.edge_route(*e), False) for e in h.edge_keys()]
    weights, _shear = crossing_weights(chains_c, chains_h)
    out = LinkMap(h.order)
    for ht in sorted_triangles(h.order):
        total = 0
        for he, hs in _directed_edges(ht):
            total += hs * weights.get((("C"), he), 0)
        assert total % 2 == 0
        if total:
            out.set(ht, total // 2)
    return out


# -- table files --------------------------------------------------------------


def format_table(table):
    """Text form: header 'm n', then 'a.b.c d.e.f value' per nonzero entry
    (ascending triple encodings); omitted pairs are zero."""
    lines = [f"{table.m} {table.n}"]
    for (gk, hk), v in sorted(table.items()):
        gtxt = ".".join(str(x) for x in gk)
        htxt = ".".join(str(x) for x in hk)
        lines.append(f"{gtxt} {htxt} {v}")
    return "\n".join(lines) + "\n"


def parse_table(text):
    lines = [
        ln.split("#", 1)[0].strip()
        for ln in text.splitlines()
    ]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty table file")
    m, n = (int(x) for x in lines[0].split())
    table = TriangleLinkTable(m, n)
    for ln in lines[1:]:
        gtxt, htxt, vtxt = ln.split()
        gtri = tuple(int(x) for x in gtxt.split("."))
        htri = tuple(int(x) for x in htxt.split("."))
        table.set(gtri, htri, int(vtxt))
    return table


def save_table(table, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_table(table))


def load_table(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_table(fh.read())
