"""Graph embeddings with exact rational edge routes: validation, file
format, the procedural star-cone and two-apex builders, curated figure
datasets, and the one-call verification pipeline."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from itertools import combinations

from .classify import (
    classification_dict,
    classify_K4Kn,
    classify_pair,
    classify_theta,
)
from .errors import AssetValidationFailed, ConstructionInvalid, LinkweaveError
from .geom import (
    PLCurve,
    point,
    rat,
    segments_intersect,
    _collinear_overlap_beyond_point,
    _cross,
    _sub,
    _ZERO,
)
from .graphs import enumerate_cycles, sorted_triangles, triangle_decomposition
from .linktable import (
    link_map_from_curve,
    linkage_status,
    table_from_embeddings,
    validate_consistency,
)
from .stars import Star, detect_star

_DATA_DIR = os.path.join(os.path.dirname(__file__), "data", "assets")


class GraphEmbedding:
    """A complete graph with exact PL arcs: one position per vertex, one
    polyline route per edge, endpoints matching the vertex positions."""

    __slots__ = ("order", "positions", "routes")

    def __init__(self, order, positions, routes):
        if len(positions) != order:
            raise ValueError("one position per vertex required")
        self.order = order
        self.positions = tuple(point(*p) for p in positions)
        self.routes = {}
        for (u, v), pts in routes.items():
            if u > v:
                u, v = v, u
                pts = list(reversed(pts))
            self.routes[(u, v)] = tuple(point(*p) for p in pts)
        expected = {(u, v) for u in range(order) for v in range(u + 1, order)}
        if set(self.routes) != expected:
            missing = expected - set(self.routes)
            raise ValueError(f"missing edge routes: {sorted(missing)[:4]} ...")
        for (u, v), pts in self.routes.items():
            if pts[0] != self.positions[u] or pts[-1] != self.positions[v]:
                raise ValueError(f"route of edge ({u}, {v}) does not join its endpoints")

    def edge_keys(self):
        return sorted(self.routes)

    def edge_route(self, u, v):
        """Route points from u to v (reversed storage as needed)."""
        if u < v:
            return list(self.routes[(u, v)])
        return list(reversed(self.routes[(v, u)]))

    def cycle_curve(self, cycle):
        """The closed PL curve tracing the cycle's edge routes in order."""
        pts = []
        k = len(cycle)
        for i in range(k):
            route = self.edge_route(cycle[i], cycle[(i + 1) % k])
            pts.extend(route[:-1])
        return PLCurve(pts)

    def triangle_curve(self, tri):
        return self.cycle_curve(tri)

    def segments(self):
        """All route segments, labeled (edge, index)."""
        out = []
        for key in self.edge_keys():
            pts = self.routes[key]
            for i in range(len(pts) - 1):
                out.append((key, i, pts[i], pts[i + 1]))
        return out


def validate_embedding(emb):
    """Exact global validity: routes are simple arcs, distinct routes meet
    only at shared endpoint vertices, and no route passes through a vertex
    not its own."""
    for key in emb.edge_keys():
        pts = emb.routes[key]
        for i in range(len(pts) - 1):
            if pts[i] == pts[i + 1]:
                raise ConstructionInvalid(f"edge {key}: zero-length segment {i}")
        for i in range(len(pts) - 1):
            for j in range(i + 1, len(pts) - 1):
                a1, a2 = pts[i], pts[i + 1]
                b1, b2 = pts[j], pts[j + 1]
                if j == i + 1:
                    d1 = _sub(a2, a1)
                    d2 = _sub(b2, b1)
                    if _cross(d1, d2) == (_ZERO, _ZERO, _ZERO) and \
                            _collinear_overlap_beyond_point(a1, a2, b1, b2):
                        raise ConstructionInvalid(
                            f"edge {key}: segments {i}, {j} overlap"
                        )
                elif segments_intersect(a1, a2, b1, b2):
                    raise ConstructionInvalid(
                        f"edge {key}: segments {i}, {j} intersect"
                    )
    segs = emb.segments()
    for x in range(len(segs)):
        key1, i1, a1, a2 = segs[x]
        for y in range(x + 1, len(segs)):
            key2, i2, b1, b2 = segs[y]
            if key1 == key2:
                continue
            shared = set(key1) & set(key2)
            if not segments_intersect(a1, a2, b1, b2):
                continue
            # routes sharing a graph vertex may meet exactly at its position,
            # as route-terminal segments
            allowed = False
            for v in shared:
                vp = emb.positions[v]
                ends1 = (emb.routes[key1][0], emb.routes[key1][-1])
                ends2 = (emb.routes[key2][0], emb.routes[key2][-1])
                if vp in (a1, a2) and vp in (b1, b2) and vp in ends1 and vp in ends2:
                    if _only_shared_point(a1, a2, b1, b2, vp):
                        allowed = True
            if not allowed:
                raise ConstructionInvalid(
                    f"edges {key1} and {key2} collide at segments ({i1}, {i2})"
                )
    for key in emb.edge_keys():
        pts = emb.routes[key]
        for v in range(emb.order):
            if v in key:
                continue
            vp = emb.positions[v]
            for i in range(len(pts) - 1):
                if _point_on_closed_segment(vp, pts[i], pts[i + 1]):
                    raise ConstructionInvalid(
                        f"edge {key} passes through vertex {v}"
                    )


def _only_shared_point(a1, a2, b1, b2, vp):
    """Do the two segments meet exactly at vp and nowhere else?"""
    d1 = _sub(a2, a1)
    d2 = _sub(b2, b1)
    if _cross(d1, d2) == (_ZERO, _ZERO, _ZERO):
        return not _collinear_overlap_beyond_point(a1, a2, b1, b2)
    # non-parallel segments meet in at most one point, which must be vp;
    # vp is an endpoint of both by construction
    return True


def _point_on_closed_segment(p, q1, q2):
    d = _sub(q2, q1)
    r = _sub(p, q1)
    if _cross(d, r) != (_ZERO, _ZERO, _ZERO):
        return False
    axis = max(range(3), key=lambda a: abs(d[a]))
    if d[axis] == 0:
        return p == q1
    t = r[axis] / d[axis]
    return 0 <= t <= 1


def validate_pair(g, h):
    """Exact disjointness of two embeddings (each assumed internally valid)."""
    gsegs = g.segments()
    hsegs = h.segments()
    for key1, i1, a1, a2 in gsegs:
        for key2, i2, b1, b2 in hsegs:
            if segments_intersect(a1, a2, b1, b2):
                raise ConstructionInvalid(
                    f"G edge {key1} meets H edge {key2} "
                    f"(segments {i1}, {i2})"
                )


# -- rational circles and shell routing ---------------------------------------


def unit_circle_point(angle, denom=512):
    """Exact rational point on the unit circle near the float angle."""
    wrapped = math.atan2(math.sin(angle), math.cos(angle))
    t = math.tan(wrapped / 2.0)
    if not math.isfinite(t) or abs(t) > 1e8:
        return (rat(-1), rat(0))
    tq = rat(round(t * denom), denom)
    den = 1 + tq * tq
    return ((1 - tq * tq) / den, (2 * tq) / den)


def circle_points(count, radius, phase=0.0, denom=512):
    """count near-evenly spaced exact points on the radius circle."""
    radius = rat(radius)
    out = []
    for k in range(count):
        x, y = unit_circle_point(phase + 2.0 * math.pi * k / count, denom)
        out.append((radius * x, radius * y))
    return out


def regular_16gon(radius=1):
    """The standard projection-plane circle: a 16-gon of exact points."""
    return [(x, y, rat(0)) for x, y in circle_points(16, radius)]


def _angle_of(p):
    return math.atan2(float(p[1]), float(p[0]))


def _arc_angles(start, end):
    """Intermediate angles along the shorter arc, hops under one radian."""
    delta = math.atan2(math.sin(end - start), math.cos(end - start))
    if delta == 0.0:
        return []
    hops = max(1, math.ceil(abs(delta) / 1.0))
    return [start + delta * k / hops for k in range(1, hops)]


def shell_route(u_pos, v_pos, edge_index, total_edges, base_radius=4, base_layer=2):
    """Route between vertices in the planes z = +-1 via an outer shell.

    All lateral travel happens at a per-edge radius and per-edge layer
    height; radii and heights increase together so distinct edges' shells
    cannot meet. Vertical drops live at per-edge angles, so crossings of the
    plane z = 0 stay far outside the unit circle.
    """
    r = rat(base_radius + edge_index)
    zu = u_pos[2]
    zv = v_pos[2]
    layer = rat(base_layer + edge_index)
    if zu < 0 and zv < 0:
        layer = -layer
    elif zu > 0 > zv or zv > 0 > zu:
        layer = -layer  # cross edges take the lower shell
    step = 0.30 / (2 * total_edges + 2)
    du = (1 + 2 * edge_index) * step
    dv = (2 + 2 * edge_index) * step
    au = _angle_of(u_pos) + du
    av = _angle_of(v_pos) + dv
    sx, sy = unit_circle_point(au)
    ex, ey = unit_circle_point(av)
    path = [u_pos, (r * sx, r * sy, zu)]
    path.append((r * sx, r * sy, layer))
    for ang in _arc_angles(au, av):
        cx, cy = unit_circle_point(ang)
        path.append((r * cx, r * cy, layer))
    path.append((r * ex, r * ey, layer))
    path.append((r * ex, r * ey, zv))
    path.append(v_pos)
    return path


# -- star cone ------------------------------------------------------------------


def build_star_cone(n, star, verify=True):
    """A curve and K_n embedding linking exactly the given star.

    Apex at the origin; out-set vertices on a unit circle at z = +1, in-set
    at z = -1; the curve is a 16-gon around the apex in z = 0. Apex edges are
    straight; all other edges travel over an outer shell, so only triangles
    spanning the apex from above to below pass the curve's disk.
    """
    if not isinstance(star, Star) or star.n != n:
        raise ValueError("star must belong to K_n")
    positions = [None] * n
    positions[star.apex] = point(0, 0, 0)
    upper = sorted(star.out_set)
    lower = sorted(star.in_set)
    for k, v in enumerate(upper):
        x, y = unit_circle_point(2.0 * math.pi * k / len(upper) + 0.15)
        positions[v] = (x, y, rat(1))
    for k, v in enumerate(lower):
        x, y = unit_circle_point(2.0 * math.pi * k / len(lower) + 0.45)
        positions[v] = (x, y, rat(-1))
    routes = {}
    nonapex = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if star.apex not in (u, v)
    ]
    for u in range(n):
        if u != star.apex:
            a, b = sorted((star.apex, u))
            routes[(a, b)] = [positions[a], positions[b]]
    for eidx, (u, v) in enumerate(nonapex):
        routes[(u, v)] = shell_route(
            positions[u], positions[v], eidx, len(nonapex)
        )
    emb = GraphEmbedding(n, positions, routes)
    curve = PLCurve(regular_16gon())
    if verify:
        validate_embedding(emb)
        _validate_curve_vs_embedding(curve, emb)
        link_map = link_map_from_curve(curve, emb)
        if link_map != star.indicator():
            if (-link_map) == star.indicator():
                curve = curve.reverse()
            else:
                raise ConstructionInvalid(
                    "star cone build does not realize its star"
                )
    return curve, emb


def _validate_curve_vs_embedding(curve, emb):
    csegs = list(curve.segments())
    for key, i, b1, b2 in emb.segments():
        for j, (a1, a2) in enumerate(csegs):
            if segments_intersect(a1, a2, b1, b2):
                raise ConstructionInvalid(
                    f"curve segment {j} meets edge {key} segment {i}"
                )


# -- two-apex construction --------------------------------------------------------


@dataclass(frozen=True)
class PQParams:
    """Parameters of the two-apex construction: part sizes around each apex
    plus the cluster radius and center tolerance."""

    x_sizes: tuple
    y_sizes: tuple
    rho: object = None  # rational; default |1 - zeta| / 4
    delta: object = None  # rational; default rho / 8

    @property
    def ell(self):
        return len(self.x_sizes)

    def __post_init__(self):
        if len(self.x_sizes) != len(self.y_sizes):
            raise ValueError("x and y need the same number of parts")
        if self.ell < 2:
            raise ValueError("at least two parts are required")
        if any(s < 1 for s in self.x_sizes) or any(s < 1 for s in self.y_sizes):
            raise ValueError("all part sizes must be at least 1")

    @property
    def m(self):
        return 1 + sum(self.x_sizes)

    @property
    def n(self):
        return 1 + sum(self.y_sizes)


def _default_rho(ell):
    gap = 2.0 * math.sin(math.pi / (2.0 * ell))  # |1 - zeta|
    return rat(max(1, math.floor(gap / 4.0 * 64)), 64)


def _cluster(center_angle, size, rho, z, denom=4096):
    """Exact points spread tangentially on the radius-rho circle about a
    rational approximation of the unit-circle point at center_angle."""
    cx, cy = unit_circle_point(center_angle, denom)
    pts = []
    for k in range(size):
        local = center_angle + math.pi / 2.0 + 2.0 * math.pi * k / size
        ux, uy = unit_circle_point(local)
        pts.append((cx + rho * ux, cy + rho * uy, rat(z)))
    return (cx, cy), pts


def build_pq(params):
    """The canonical two-apex weakly linked pair.

    Apexes at (0, 0, +-1); the j-th lower cluster sits on a small circle
    about the (2j)-th half-turn root direction in z = -1, the j-th upper
    cluster about the (2j+1)-th in z = +1. Apex edges are straight; cluster
    edges travel entirely in their half space over per-edge shells. All
    separation conditions are rechecked exactly after rationalizing.
    """
    ell = params.ell
    rho = rat(params.rho) if params.rho is not None else _default_rho(ell)
    delta = rat(params.delta) if params.delta is not None else rho / 8
    if rho <= 0 or delta <= 0:
        raise ValueError("rho and delta must be positive")

    xcenters, xclusters = [], []
    ycenters, yclusters = [], []
    for j in range(ell):
        c, pts = _cluster(2.0 * math.pi * j / ell, params.x_sizes[j], rho, -1)
        xcenters.append(c)
        xclusters.append(pts)
        c, pts = _cluster(
            2.0 * math.pi * (j + 0.5) / ell, params.y_sizes[j], rho, 1
        )
        ycenters.append(c)
        yclusters.append(pts)

    # exact separation: distinct disks stay disjoint and miss the origin
    for centers in (xcenters + ycenters,):
        for (ax, ay), (bx, by) in combinations(centers, 2):
            if (ax - bx) ** 2 + (ay - by) ** 2 <= (2 * rho) ** 2:
                raise ConstructionInvalid("cluster disks overlap")
        for cx, cy in centers:
            if cx * cx + cy * cy <= rho * rho:
                raise ConstructionInvalid("a cluster disk contains the origin")

    g = _half_space_embedding(point(0, 0, 1), xclusters)
    h = _half_space_embedding(point(0, 0, -1), yclusters)
    validate_embedding(g)
    validate_embedding(h)
    validate_pair(g, h)
    return g, h


def _half_space_embedding(apex_pos, clusters):
    """Complete graph on an apex plus clusters in the opposite plane; the
    cluster-to-cluster edges keep to the far side of that plane."""
    positions = [apex_pos]
    for pts in clusters:
        positions.extend(pts)
    n = len(positions)
    routes = {}
    for v in range(1, n):
        routes[(0, v)] = [positions[0], positions[v]]
    nonapex = [(u, v) for u in range(1, n) for v in range(u + 1, n)]
    for eidx, (u, v) in enumerate(nonapex):
        routes[(u, v)] = shell_route(positions[u], positions[v], eidx, len(nonapex))
    return GraphEmbedding(n, positions, routes)


# -- verification pipeline ---------------------------------------------------------


@dataclass(frozen=True)
class VerificationResult:
    status: object
    classification: object
    table: object


def verify_embedding_pair(g, h):
    """Full pipeline: table, consistency, exhaustive status, classification."""
    table = table_from_embeddings(g, h)
    validate_consistency(table)
    status = linkage_status(table)
    classification = None
    if status.is_weak:
        classification = _classify_routed(table)
    return VerificationResult(status, classification, table)


def _classify_routed(table):
    if table.m == 3:
        return detect_star(table.row_map((0, 1, 2)))
    if table.m == 4:
        return classify_K4Kn(table)
    if table.n == 3:
        star = detect_star(table.transpose().row_map((0, 1, 2)))
        return star
    if table.n == 4 and table.m >= 5:
        return classify_pair(table)
    return classify_pair(table)


# -- embedding files -----------------------------------------------------------------


def format_embedding(emb):
    lines = ["[vertices]"]
    for i, p in enumerate(emb.positions):
        lines.append(f"{i} {p[0]} {p[1]} {p[2]}")
    lines.append("[edges]")
    for (u, v) in emb.edge_keys():
        pts = " ".join(f"{p[0]} {p[1]} {p[2]}" for p in emb.routes[(u, v)])
        lines.append(f"{u} {v} {pts}")
    return "\n".join(lines) + "\n"


def parse_embedding(text):
    section = None
    positions = {}
    routes = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "[vertices]":
            section = "vertices"
            continue
        if line == "[edges]":
            section = "edges"
            continue
        parts = line.split()
        if section == "vertices":
            idx = int(parts[0])
            positions[idx] = tuple(rat(x) for x in parts[1:4])
        elif section == "edges":
            u, v = int(parts[0]), int(parts[1])
            coords = parts[2:]
            if len(coords) % 3:
                raise ValueError(f"edge ({u}, {v}): coordinate count not a multiple of 3")
            pts = [
                tuple(rat(c) for c in coords[k : k + 3])
                for k in range(0, len(coords), 3)
            ]
            routes[(u, v)] = pts
        else:
            raise ValueError(f"content outside any section: {raw!r}")
    order = len(positions)
    if set(positions) != set(range(order)):
        raise ValueError("vertex indices must be 0..n-1")
    return GraphEmbedding(order, [positions[i] for i in range(order)], routes)


def save_embedding(emb, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_embedding(emb))


def load_embedding(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_embedding(fh.read())


# -- curated figure assets -------------------------------------------------------------


@dataclass(frozen=True)
class CuratedAsset:
    name: str
    kind: str  # "theta" | "k4" | "pair"
    curves: tuple | None  # theta: the three cycle curves
    g: object | None
    h: object
    expected: dict


def asset_dir():
    return os.environ.get("LINKWEAVE_DATA", _DATA_DIR)


def asset_names():
    with open(os.path.join(asset_dir(), "manifest.json"), encoding="utf-8") as fh:
        return sorted(json.load(fh))


def load_curated(name):
    """Load a shipped figure dataset and its expected classification."""
    base = asset_dir()
    manifest_path = os.path.join(base, "manifest.json")
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    if name not in manifest:
        raise LinkweaveError(f"unknown asset {name!r}; have {sorted(manifest)}")
    entry = manifest[name]
    kind = entry["kind"]
    h = load_embedding(os.path.join(base, entry["h"]))
    curves = None
    g = None
    if kind == "theta":
        from .geom import load_curve

        curves = tuple(load_curve(os.path.join(base, f)) for f in entry["curves"])
    else:
        g = load_embedding(os.path.join(base, entry["g"]))
    return CuratedAsset(name, kind, curves, g, h, entry["expected"])


def validate_asset(asset):
    """Recompute the asset's classification and weakness; compare exactly."""
    if asset.kind == "theta":
        _validate_theta_asset(asset)
    else:
        _validate_graph_asset(asset)


def _validate_theta_asset(asset):
    validate_embedding(asset.h)
    maps = []
    for curve in asset.curves:
        _validate_curve_vs_embedding(curve, asset.h)
        maps.append(link_map_from_curve(curve, asset.h))
    if not (maps[0] + maps[1] + maps[2]).is_zero():
        raise AssetValidationFailed(f"{asset.name}: cycle maps do not sum to zero")
    # exhaustive weakness across every cycle of the far graph
    best = 0
    for cycle in enumerate_cycles(asset.h.order):
        chain = triangle_decomposition(cycle)
        for m in maps:
            total = sum(coeff * m.get(tri) for tri, coeff in chain)
            best = max(best, abs(total))
            if abs(total) >= 2:
                raise AssetValidationFailed(
                    f"{asset.name}: strong link against cycle {cycle}"
                )
    if best != 1:
        raise AssetValidationFailed(f"{asset.name}: the theta curve links nothing")
    result = classify_theta(*maps)
    got = classification_dict(result)
    if got != asset.expected:
        raise AssetValidationFailed(
            f"{asset.name}: classification {got} != expected {asset.expected}"
        )


def _validate_graph_asset(asset):
    validate_embedding(asset.g)
    validate_embedding(asset.h)
    validate_pair(asset.g, asset.h)
    result = verify_embedding_pair(asset.g, asset.h)
    if not result.status.is_weak:
        raise AssetValidationFailed(
            f"{asset.name}: expected weak linkage, found {result.status.kind}"
        )
    got = classification_dict(result.classification)
    if got != asset.expected:
        raise AssetValidationFailed(
            f"{asset.name}: classification {got} != expected {asset.expected}"
        )


def validate_all_assets():
    """Revalidate every shipped asset; raises on the first failure."""
    for name in asset_names():
        validate_asset(load_curated(name))
