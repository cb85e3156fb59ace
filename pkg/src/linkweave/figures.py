"""Procedural builders behind the curated figure datasets: window cages
whose linking patterns are forced by separation-and-piercing arguments.

The shipped assets are produced by these builders and re-validated by every
test run; the builders stay here so the data is reproducible.
"""

from __future__ import annotations

import math
from itertools import combinations

from .construct import (
    GraphEmbedding,
    unit_circle_point,
    validate_embedding,
    validate_pair,
)
from .geom import PLCurve, point, rat


def _p(x, y, z):
    return point(rat(x), rat(y), rat(z))


def _q8(value):
    """Snap a float to a rational with denominator 64."""
    return rat(round(value * 64), 64)


def _angle_of(pos):
    return math.atan2(float(pos[1]), float(pos[0]))


def _arc_angles(start, end):
    delta = math.atan2(math.sin(end - start), math.cos(end - start))
    if delta == 0.0:
        return []
    hops = max(1, math.ceil(abs(delta) / 1.0))
    return [start + delta * k / hops for k in range(1, hops)]


def far_route(u_pos, v_pos, edge_index, base_radius=9, base_depth=7):
    """Route between two far-apart vertices through a deep outer shell.

    Radius and depth grow together with the edge index, so distinct edges'
    shells cannot meet; all lateral travel happens at the edge's own layer.
    """
    r = rat(base_radius + edge_index)
    layer = rat(-(base_depth + edge_index))
    au = _angle_of(u_pos) + 0.011 * (1 + 2 * edge_index)
    av = _angle_of(v_pos) + 0.011 * (2 + 2 * edge_index)
    sx, sy = unit_circle_point(au)
    ex, ey = unit_circle_point(av)
    path = [u_pos, (r * sx, r * sy, u_pos[2]), (r * sx, r * sy, layer)]
    for ang in _arc_angles(au, av):
        cx, cy = unit_circle_point(ang)
        path.append((r * cx, r * cy, layer))
    path.append((r * ex, r * ey, layer))
    path.append((r * ex, r * ey, v_pos[2]))
    path.append(v_pos)
    return path


def _local_complete_routes(ids, positions):
    """Straight routes between all pairs of the given vertices."""
    routes = {}
    for u, v in combinations(sorted(ids), 2):
        routes[(u, v)] = [positions[u], positions[v]]
    return routes


# -- the wheel cage: a triangle frame with hub cluster and pierced windows ----


def _wheel_positions(x_count):
    """Frame triangle 0,1,2 at radius 3 in z=0 plus a hub cluster above."""
    positions = {}
    for i, deg in enumerate((90, 210, 330)):
        x, y = unit_circle_point(math.radians(deg))
        positions[i] = (3 * x, 3 * y, rat(0))
    for k in range(x_count):
        ang = 2.0 * math.pi * k / max(x_count, 1) + 0.4
        ux, uy = unit_circle_point(ang)
        positions[3 + k] = (
            ux / 4,
            uy / 4,
            rat(3) + rat(k, 8),
        )
    return positions


def _window_targets(positions):
    """A pierce point per window of the wheel on (0, 1, 2) with hub above.

    Window i (for i = 1, 2, 3) is the slant face on the edge opposite frame
    vertex i - 1... concretely: window 1 spans frame edge (1, 2), window 2
    edge (0, 2), window 3 edge (0, 1); window 0 is the base face. Pierce
    points sit near the frame-edge midpoints, far from the hub cluster.
    """
    hub = positions[3]
    mids = {
        1: tuple((positions[1][i] + positions[2][i]) / 2 for i in range(3)),
        2: tuple((positions[0][i] + positions[2][i]) / 2 for i in range(3)),
        3: tuple((positions[0][i] + positions[1][i]) / 2 for i in range(3)),
    }
    targets = {0: (rat(0), rat(0), rat(0))}
    for i, mid in mids.items():
        targets[i] = tuple(mid[c] + (hub[c] - mid[c]) / 5 for c in range(3))
    return targets


def build_wheel_cage(x_count, part_sizes):
    """Embedding pair where one side's linking triangles all share an edge
    with a frame triangle and the other side has a common vertex.

    G is the wheel: frame triangle (0, 1, 2) plus a hub cluster of x_count
    vertices, all edges straight. H has its apex inside the wheel's hull and
    clusters of sizes part_sizes = (s0, s1, s2, s3) behind the base window
    and the three slant windows; apex edges pierce their own window once,
    and all other H edges detour through a deep outer shell.
    """
    if x_count < 1 or len(part_sizes) != 4:
        raise ValueError("need x_count >= 1 and four part sizes")
    gpos = _wheel_positions(x_count)
    g = GraphEmbedding(
        3 + x_count,
        [gpos[i] for i in range(3 + x_count)],
        _local_complete_routes(range(3 + x_count), gpos),
    )

    targets = _window_targets(gpos)
    qpos = (rat(0), rat(0), rat(1))
    hpos = {0: qpos}
    idx = 1
    cluster_dirs = {}
    for w in range(4):
        target = targets[w]
        for k in range(part_sizes[w]):
            # place cluster points beyond the window along the apex-target ray
            stretch = rat(2) + rat(k, 4)
            base = tuple(qpos[c] + stretch * (target[c] - qpos[c]) for c in range(3))
            # tangential spread keeps same-window points off a common ray
            spread = rat(k + 1, 7) if part_sizes[w] > 1 else rat(0)
            pos = (base[0] + spread, base[1] + spread / 3, base[2] + rat(k, 9))
            hpos[idx] = pos
            cluster_dirs[idx] = w
            idx += 1
    n = idx
    routes = {}
    for v in range(1, n):
        routes[(0, v)] = [qpos, hpos[v]]
    outer = [(u, v) for u in range(1, n) for v in range(u + 1, n)]
    for eidx, (u, v) in enumerate(outer):
        routes[(u, v)] = far_route(hpos[u], hpos[v], eidx)
    h = GraphEmbedding(n, [hpos[i] for i in range(n)], routes)

    validate_embedding(g)
    validate_embedding(h)
    validate_pair(g, h)
    return g, h


# -- threaded wheels: two frames whose windows the other's edges pierce -------


def build_threaded_wheels(x_count, y_count):
    """Embedding pair where both sides' linking triangles share an edge with
    a frame triangle.

    G is a wheel at the origin; H is a wheel offset far along the x axis.
    The three frame edges of H are long wires that each dive through one
    slant window of G and come back out another, so exactly the triangles
    sharing an edge with either frame link the far side.
    """
    if x_count < 1 or y_count < 1:
        raise ValueError("each hub needs at least one vertex")
    gpos = _wheel_positions(x_count)
    g = GraphEmbedding(
        3 + x_count,
        [gpos[i] for i in range(3 + x_count)],
        _local_complete_routes(range(3 + x_count), gpos),
    )

    targets = _window_targets(gpos)
    shift = rat(20)
    hpos = {}
    for i, deg in enumerate((90, 210, 330)):
        x, y = unit_circle_point(math.radians(deg))
        hpos[i] = (3 * x + shift, 3 * y, rat(0))
    for k in range(y_count):
        ang = 2.0 * math.pi * k / max(y_count, 1) + 0.7
        ux, uy = unit_circle_point(ang)
        hpos[3 + k] = (ux / 4 + shift, uy / 4, rat(3) + rat(k, 8))
    n = 3 + y_count

    routes = {}
    # local frame-to-hub and hub-to-hub edges are straight
    for i in range(3):
        for k in range(y_count):
            u, v = sorted((i, 3 + k))
            routes[(u, v)] = [hpos[u], hpos[v]]
    for a, b in combinations(range(3, 3 + y_count), 2):
        routes[(a, b)] = [hpos[a], hpos[b]]
    # the H frame edges thread G's slant windows, oriented so that along the
    # frame triangle each window is entered once and exited once: edge (1,2)
    # through windows 3 -> 2, edge (0,2) through 3 -> 1, edge (0,1) through
    # 2 -> 1 (all in stored u -> v direction)
    threading = {
        (1, 2): (3, 2),
        (0, 2): (3, 1),
        (0, 1): (2, 1),
    }
    inner_points = {
        (1, 2): (rat(-1, 5), rat(-3, 20), rat(17, 16)),
        (0, 2): (rat(0), rat(1, 5), rat(13, 16)),
        (0, 1): (rat(1, 5), rat(-1, 10), rat(21, 16)),
    }
    for wi, ((u, v), (win_in, win_out)) in enumerate(threading.items()):
        cruise = rat(5) + rat(wi, 2)
        cruise_back = cruise + rat(1, 4)
        t_in = targets[win_in]
        t_out = targets[win_out]
        stage_in = _staged(qpoint=t_in, away=gpos, factor=wi, inward=False)
        stage_out = _staged(qpoint=t_out, away=gpos, factor=wi + 3, inward=False)
        yoff = rat(wi + 1, 2)
        path = [
            hpos[u],
            (hpos[u][0], hpos[u][1] + yoff, cruise),
            (rat(8), yoff, cruise),
            (stage_in[0], stage_in[1], cruise),
            stage_in,
            inner_points[(u, v)],
            stage_out,
            (stage_out[0], stage_out[1], cruise_back),
            (rat(8), -yoff, cruise_back),
            (hpos[v][0], hpos[v][1] - yoff, cruise_back),
            hpos[v],
        ]
        routes[(u, v)] = path
    h = GraphEmbedding(n, [hpos[i] for i in range(n)], routes)

    validate_embedding(g)
    validate_embedding(h)
    validate_pair(g, h)
    return g, h


def _staged(qpoint, away, factor, inward):
    """A staging point just outside a window target, pushed away from the
    wheel centroid, with a small per-wire offset."""
    cx = (away[0][0] + away[1][0] + away[2][0]) / 3
    cy = (away[0][1] + away[1][1] + away[2][1]) / 3
    cz = rat(1)
    d = (qpoint[0] - cx, qpoint[1] - cy, qpoint[2] - cz)
    off = rat(factor, 40)
    return (
        qpoint[0] + d[0] + off,
        qpoint[1] + d[1] + off / 2,
        qpoint[2] + d[2] / 2,
    )


# -- theta cages ----------------------------------------------------------------


def theta_cage():
    """Two poles joined by three descending arcs; returns the three cycle
    curves (arc_{i+1} followed by arc_{i+2} reversed, indices mod 3), whose
    chain sum is zero."""
    top = _p(0, 0, 4)
    bottom = _p(0, 0, -4)
    arcs = []
    for deg in (90, 210, 330):
        ux, uy = unit_circle_point(math.radians(deg))
        arcs.append(
            [
                top,
                (2 * ux, 2 * uy, rat(3, 2)),
                (2 * ux, 2 * uy, rat(-3, 2)),
                bottom,
            ]
        )
    curves = []
    for i in range(3):
        fwd = arcs[(i + 1) % 3]
        back = arcs[(i + 2) % 3]
        curves.append(PLCurve(fwd[:-1] + list(reversed(back[1:]))))
    return tuple(curves)


_GAP_DEGREES = (150, 270, 30)  # between arc pairs (1,2), (2,3), (3,1)


def build_theta_one_apex(part_sizes):
    """Theta cage around a K_n with its apex at the cage's center.

    The apex sits at the origin; clusters of the given sizes sit beyond the
    three gaps between cage arcs, so each apex edge leaves through one gap.
    Cluster-to-cluster edges use the deep outer shell.
    """
    if len(part_sizes) != 3 or any(s < 1 for s in part_sizes):
        raise ValueError("need three nonempty parts")
    positions = {0: _p(0, 0, 0)}
    idx = 1
    for gap, size in zip(_GAP_DEGREES, part_sizes):
        ux, uy = unit_circle_point(math.radians(gap))
        for k in range(size):
            positions[idx] = (
                5 * ux + rat(k, 3),
                5 * uy + rat(k, 5),
                rat(2 * k - (size - 1), 4),
            )
            idx += 1
    n = idx
    routes = {}
    for v in range(1, n):
        routes[(0, v)] = [positions[0], positions[v]]
    outer = [(u, v) for u in range(1, n) for v in range(u + 1, n)]
    for eidx, (u, v) in enumerate(outer):
        routes[(u, v)] = far_route(positions[u], positions[v], eidx)
    emb = GraphEmbedding(n, [positions[i] for i in range(n)], routes)
    validate_embedding(emb)
    curves = theta_cage()
    _validate_curves_vs_embedding(curves, emb)
    return curves, emb


def build_theta_three_apex(in_size=2):
    """Theta cage around a K_n with one outside vertex per gap and a shared
    inner cluster, so no vertex is common to all linking triangles."""
    if in_size < 2:
        raise ValueError("the inner cluster needs at least two vertices")
    positions = {}
    for i, gap in enumerate(_GAP_DEGREES):
        ux, uy = unit_circle_point(math.radians(gap))
        positions[i] = (5 * ux, 5 * uy, rat(0))
    idx = 3
    for k in range(in_size):
        ang = 1.1 + 2.0 * math.pi * k / in_size
        ux, uy = unit_circle_point(ang)
        positions[idx] = (ux / 3, uy / 3, rat(2 * k - (in_size - 1), 5))
        idx += 1
    n = idx
    routes = {}
    # outside-vertex to inner-cluster edges run straight through the gaps
    for i in range(3):
        for k in range(in_size):
            u, v = sorted((i, 3 + k))
            routes[(u, v)] = [positions[u], positions[v]]
    for a, b in combinations(range(3, n), 2):
        routes[(a, b)] = [positions[a], positions[b]]
    outer = list(combinations(range(3), 2))
    for eidx, (u, v) in enumerate(outer):
        routes[(u, v)] = far_route(positions[u], positions[v], eidx)
    emb = GraphEmbedding(n, [positions[i] for i in range(n)], routes)
    validate_embedding(emb)
    curves = theta_cage()
    _validate_curves_vs_embedding(curves, emb)
    return curves, emb


def _validate_curves_vs_embedding(curves, emb):
    from .geom import segments_intersect

    esegs = emb.segments()
    for ci, curve in enumerate(curves):
        for j, (a1, a2) in enumerate(curve.segments()):
            for key, i, b1, b2 in esegs:
                if segments_intersect(a1, a2, b1, b2):
                    from .errors import ConstructionInvalid

                    raise ConstructionInvalid(
                        f"cycle {ci} segment {j} meets edge {key} segment {i}"
                    )
