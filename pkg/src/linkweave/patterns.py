"""Canonical linking patterns of the weakly linked families, generated
directly from their star formulas. Classifiers verify against these, and the
round-trip tests recover generator parameters from them."""

from __future__ import annotations

from .graphs import boundary_quadruple, oriented_triangle
from .linktable import TriangleLinkTable
from .stars import LinkMap, Star


def _set_star_row(table, gtri, star):
    """Fill lk(gtri, .) with the star's indicator."""
    for t in star.triangles():
        table.set(gtri, t, 1)


def theta_maps_a1(n, apex, parts):
    """Three link maps for a theta curve around a one-apex pattern.

    parts = (I1, I2, I3): pairwise disjoint, at most one empty, union
    covering everything but the apex. Cycle i links the star
    apex|Ij u Ik|Ii; an empty part gives the zero map.
    """
    parts = tuple(frozenset(p) for p in parts)
    if sum(1 for p in parts if not p) > 1:
        raise ValueError("at most one part may be empty")
    rest = set(range(n)) - {apex}
    if set().union(*parts) != rest or sum(len(p) for p in parts) != len(rest):
        raise ValueError("parts must partition the non-apex vertices")
    maps = []
    for i in range(3):
        if not parts[i]:
            maps.append(LinkMap(n))
            continue
        out = parts[(i + 1) % 3] | parts[(i + 2) % 3]
        maps.append(Star(n, apex, out, parts[i]).indicator())
    return tuple(maps)


def theta_maps_a2(n, apexes):
    """Three link maps for a theta curve around a three-apex pattern.

    apexes = (p1, p2, p3); cycle i links the proper star pi|pj pk|rest;
    needs n >= 5 so the common in-set has two or more vertices.
    """
    p1, p2, p3 = apexes
    if n < 5:
        raise ValueError("three-apex theta pattern needs n >= 5")
    inset = set(range(n)) - {p1, p2, p3}
    return tuple(
        Star(n, a, {b, c}, inset).indicator()
        for a, b, c in ((p1, p2, p3), (p2, p1, p3), (p3, p1, p2))
    )


def table_k4_common_vertex(n, q, parts):
    """K4-vs-Kn table with one vertex common to all linking triangles.

    parts = (I0, I1, I2, I3): pairwise disjoint, at most two empty, union
    covering H minus q. Face C_i of the K4 links the star q|H'-Ii|Ii.
    """
    parts = tuple(frozenset(p) for p in parts)
    if sum(1 for p in parts if not p) > 2:
        raise ValueError("at most two parts may be empty")
    rest = set(range(n)) - {q}
    if set().union(*parts) != rest or sum(len(p) for p in parts) != len(rest):
        raise ValueError("parts must partition the non-q vertices")
    table = TriangleLinkTable(4, n)
    faces = boundary_quadruple(0, 1, 2, 3)
    for i, face in enumerate(faces):
        if not parts[i]:
            continue
        _set_star_row(table, face, Star(n, q, rest - parts[i], parts[i]))
    return table


def table_k4_no_common_vertex(n, q_triple):
    """K4-vs-Kn table with no common vertex on the Kn side.

    q_triple = (q1, q2, q3). Face C_0 of the K4 is unlinked; faces C_1, C_2,
    C_3 link the fans q1|q2 q3|rest, q2|q1 q3|rest, q3|q1 q2|rest.
    """
    q1, q2, q3 = q_triple
    if n < 5:
        raise ValueError("no-common-vertex K4 pattern needs n >= 5")
    inset = set(range(n)) - {q1, q2, q3}
    table = TriangleLinkTable(4, n)
    _, c1, c2, c3 = boundary_quadruple(0, 1, 2, 3)
    for face, (a, b, c) in zip(
        (c1, c2, c3), ((q1, q2, q3), (q2, q1, q3), (q3, q1, q2))
    ):
        _set_star_row(table, face, Star(n, a, {b, c}, inset))
    return table


def _wheel_triangles(tstar, x):
    """The oriented side triangles of the wheel on t* = (p1, p2, p3) and a
    hub vertex x: T1 = p3p2x, T2 = xp1p3, T3 = p2p1x."""
    p1, p2, p3 = tstar
    return (
        oriented_triangle(p3, p2, x),
        oriented_triangle(x, p1, p3),
        oriented_triangle(p2, p1, x),
    )


def table_common_triangle_d1(m, n, tstar, q, parts):
    """Common-triangle-vs-common-vertex table (the one-sided wheel family).

    tstar = (p1, p2, p3) in the G side; every other linking G triangle
    shares an edge with it. parts = (I0, I1, I2, I3) partition H minus q;
    I1..I3 nonempty, I0 empty exactly when t* itself is unlinked.
    """
    parts = tuple(frozenset(p) for p in parts)
    if any(not p for p in parts[1:]):
        raise ValueError("I1, I2, I3 must be nonempty")
    rest = set(range(n)) - {q}
    if set().union(*parts) != rest or sum(len(p) for p in parts) != len(rest):
        raise ValueError("parts must partition the non-q vertices")
    p1, p2, p3 = tstar
    xs = set(range(m)) - {p1, p2, p3}
    if not xs:
        raise ValueError("need at least one vertex off the triangle")
    table = TriangleLinkTable(m, n)
    if parts[0]:
        _set_star_row(
            table, oriented_triangle(p1, p2, p3), Star(n, q, rest - parts[0], parts[0])
        )
    for x in xs:
        for i, tri in enumerate(_wheel_triangles(tstar, x), start=1):
            _set_star_row(table, tri, Star(n, q, rest - parts[i], parts[i]))
    return table


def table_common_triangle_d2(m, n, tstar, ustar):
    """Common-triangle-on-both-sides table (the threaded-wheels family).

    tstar = (p1, p2, p3) in G, ustar = (q1, q2, q3) in H; neither triangle
    links, and the wheel triangles around each link the other side's fans.
    """
    p1, p2, p3 = tstar
    q1, q2, q3 = ustar
    xs = set(range(m)) - set(tstar)
    ys = set(range(n)) - set(ustar)
    if not xs or not ys:
        raise ValueError("each side needs a vertex off its triangle")
    table = TriangleLinkTable(m, n)
    qstars = (
        Star(n, q1, {q2, q3}, ys),
        Star(n, q2, {q1, q3}, ys),
        Star(n, q3, {q1, q2}, ys),
    )
    for x in xs:
        for tri, star in zip(_wheel_triangles(tstar, x), qstars):
            _set_star_row(table, tri, star)
    return table


def table_pq(m, n, p, xparts, q, yparts):
    """Both-sides common-vertex table over circularly ordered partitions.

    xparts and yparts are equal-length ordered partitions (length >= 2) of
    the non-apex vertices. The triangle p x y for x in X_j, y in X_k (j < k)
    links the star q|Y_j..Y_{k-1}|rest, and symmetrically on the other side.
    """
    xparts = tuple(tuple(sorted(part)) for part in xparts)
    yparts = tuple(tuple(sorted(part)) for part in yparts)
    ell = len(xparts)
    if ell < 2 or len(yparts) != ell:
        raise ValueError("need equal-length ordered partitions, length >= 2")
    if any(not part for part in xparts) or any(not part for part in yparts):
        raise ValueError("all parts must be nonempty")
    gset = set(range(m)) - {p}
    hset = set(range(n)) - {q}
    if set().union(*(set(px) for px in xparts)) != gset or sum(map(len, xparts)) != len(gset):
        raise ValueError("xparts must partition the non-p vertices")
    if set().union(*(set(py) for py in yparts)) != hset or sum(map(len, yparts)) != len(hset):
        raise ValueError("yparts must partition the non-q vertices")
    table = TriangleLinkTable(m, n)
    for j in range(ell):
        for k in range(j + 1, ell):
            out = set()
            for i in range(j, k):
                out.update(yparts[i])
            star = Star(n, q, out, hset - out)
            for x in xparts[j]:
                for y in xparts[k]:
                    _set_star_row(table, oriented_triangle(p, x, y), star)
    return table
