"""Decision procedures recovering the weakly linked case labels (A1/A2,
B1/B2, C1-C3, D1/D2, PQ) and their parameters from triangle-linking data."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .errors import (
    CommonApex,
    DichotomyViolation,
    NeitherCase,
    NoConsistentOrder,
    NoLinkingTriangles,
    NotTransitive,
    NotWeak,
    NotWeaklyLinked,
    PatternMismatch,
)
from .graphs import boundary_quadruple, oriented_triangle, sorted_triangles
from .linktable import TriangleLinkTable, linkage_status, validate_consistency
from .patterns import (
    table_common_triangle_d1,
    table_common_triangle_d2,
    table_k4_common_vertex,
    table_k4_no_common_vertex,
    table_pq,
)
from .stars import Star, common_apex, detect_star


# -- result types --------------------------------------------------------------


@dataclass(frozen=True)
class ThetaClassification:
    """Theta-curve-vs-K_n case: one apex with three parts, or three apexes
    with a common in-set."""

    case: str  # "A1" | "A2"
    sign: int
    apex: int | None = None
    parts: tuple | None = None  # A1: (I1, I2, I3) as sorted tuples
    apexes: tuple | None = None  # A2: (p1, p2, p3)
    in_set: tuple | None = None  # A2


@dataclass(frozen=True)
class K4Classification:
    """K4-vs-K_n case: common vertex with four parts, or a relabeling with
    three fan apexes."""

    case: str  # "B1" | "B2"
    sign: int
    q: int | None = None
    parts: tuple | None = None  # B1: (I0, I1, I2, I3)
    q_triple: tuple | None = None  # B2
    relabeling: tuple | None = None  # B2: role i is original vertex relabeling[i]
    g_side_stars: tuple | None = None  # B2: stars linked by q3q2y, yq1q3, q2q1y


@dataclass(frozen=True)
class NcaResult:
    """How two no-common-apex stars meet: one of the three edge-sharing
    cases, or incompatible with weak linking."""

    case: str  # "C1" | "C2" | "C3" | "Incompatible"
    apex1: int | None = None
    apex2: int | None = None
    p3: int | None = None
    signs: tuple | None = None


@dataclass(frozen=True)
class EpsilonValue:
    """Orientation of a triple of distinct unlinked-relation classes."""

    triple: tuple
    value: int


@dataclass(frozen=True)
class PairClassification:
    """Top-level case for a weakly linked K_m/K_n table."""

    kind: str  # "PQ" | "D1" | "D2"
    sign: int
    boundary_case: bool = False
    # PQ
    p: int | None = None
    q: int | None = None
    xparts: tuple | None = None
    yparts: tuple | None = None
    # D1 / D2
    triangle_side: str | None = None  # D1: which side carries t*
    tstar: tuple | None = None
    parts: tuple | None = None  # D1: (I0, I1, I2, I3) on the vertex side
    ustar: tuple | None = None  # D2


# -- shared helpers -------------------------------------------------------------


def _linking_triples(table):
    """Ascending G triples with a nonzero row."""
    return sorted({gk for (gk, _hk), _v in table.items()})


def common_vertex(table, side):
    """Least vertex lying on every linking triangle of the side, or None.

    Raises NoLinkingTriangles when the side links nothing at all.
    """
    work = table if side == "G" else table.transpose()
    linking = _linking_triples(work)
    if not linking:
        raise NoLinkingTriangles(f"side {side} links nothing")
    shared = set(linking[0])
    for tri in linking[1:]:
        shared &= set(tri)
        if not shared:
            return None
    return min(shared)


def _common_vertex_or_none(table, side):
    try:
        return common_vertex(table, side)
    except NoLinkingTriangles:
        return None


def _row_star(table, gtri):
    return detect_star(table.row_map(gtri))


def column_star(table, htri):
    """Star of the G-side link map of one H triangle, or None."""
    return detect_star(table.column_map(htri))


def _relabel_g(table, perm, sign):
    """Table after relabeling G so that new vertex i is old perm[i], with a
    global sign."""
    out = TriangleLinkTable(table.m, table.n)
    inverse = {old: new for new, old in enumerate(perm)}
    for (gk, hk), v in table.items():
        new_tri = oriented_triangle(*(inverse[x] for x in gk))
        out.set(new_tri, hk, sign * v)
    return out


# -- theta curves ---------------------------------------------------------------


def classify_theta(map1, map2, map3):
    """Case of a weakly linked theta curve from its three cycle link maps.

    The maps must sum to zero trianglewise. Values of size two or more, or a
    nonzero map that is not a star indicator, mean a strong link.
    """
    maps = (map1, map2, map3)
    n = map1.n
    if any(m.n != n for m in maps):
        raise ValueError("link maps have mismatched orders")
    if any(m.max_abs() >= 2 for m in maps):
        raise NotWeaklyLinked("some cycle strongly links a triangle")
    if not (map1 + map2 + map3).is_zero():
        raise ValueError("cycle maps must sum to zero trianglewise")
    if all(m.is_zero() for m in maps):
        raise NotWeaklyLinked("the theta curve links nothing")
    stars = []
    for m in maps:
        if m.is_zero():
            stars.append(None)
        else:
            s = detect_star(m)
            if s is None:
                raise NotWeaklyLinked("a cycle links without linking a star")
            stars.append(s)

    support = set()
    for m in maps:
        support |= m.support()
    shared = set.intersection(*(set(t) for t in support))
    rest_all = set(range(n))

    for sign in (1, -1):
        signed = [s if s is None or sign == 1 else s.reverse() for s in stars]
        # one-apex case
        for p in sorted(shared):
            parts = []
            ok = True
            for s in signed:
                if s is None:
                    parts.append(frozenset())
                    continue
                pres = s.presented_at(p)
                if pres is None:
                    ok = False
                    break
                parts.append(frozenset(pres[1]))
            if not ok:
                continue
            union = parts[0] | parts[1] | parts[2]
            total = sum(len(p_) for p_ in parts)
            if union == rest_all - {p} and total == len(union):
                return ThetaClassification(
                    "A1",
                    sign,
                    apex=p,
                    parts=tuple(tuple(sorted(p_)) for p_ in parts),
                )
        # three-apex case
        if all(s is not None and s.proper for s in signed):
            apexes = [s.apex for s in signed]
            if len(set(apexes)) == 3:
                inset = rest_all - set(apexes)
                want = [
                    Star(n, apexes[i], {apexes[(i + 1) % 3], apexes[(i + 2) % 3]}, inset)
                    for i in range(3)
                ]
                if list(signed) == want:
                    return ThetaClassification(
                        "A2",
                        sign,
                        apexes=tuple(apexes),
                        in_set=tuple(sorted(inset)),
                    )
    raise NotWeaklyLinked("no theta case matches the maps")


# -- K4 versus K_n ----------------------------------------------------------------


def classify_K4Kn(table):
    """Case of a weakly linked K4-vs-K_n table."""
    if table.m != 4:
        raise ValueError("first side must be a K4")
    validate_consistency(table)
    if not linkage_status(table).is_weak:
        raise NotWeak("table is not weakly linked")
    n = table.n
    faces = boundary_quadruple(0, 1, 2, 3)

    linking_h = sorted({hk for (_gk, hk), _v in table.items()})
    shared = set(linking_h[0])
    for tri in linking_h[1:]:
        shared &= set(tri)

    if shared:
        for sign in (1, -1):
            for q in sorted(shared):
                parts = _k4_parts_at(table, faces, q, sign)
                if parts is None:
                    continue
                expected = table_k4_common_vertex(n, q, parts)
                if _signed(table, sign) == expected:
                    return K4Classification(
                        "B1",
                        sign,
                        q=q,
                        parts=tuple(tuple(sorted(p_)) for p_ in parts),
                    )
        raise PatternMismatch("common vertex exists but no one-vertex case matches")

    for perm in permutations(range(4)):
        for sign in (1, -1):
            relabeled = _relabel_g(table, perm, sign)
            new_faces = boundary_quadruple(0, 1, 2, 3)
            if not relabeled.row_map(new_faces[0]).is_zero():
                continue
            ss = [_row_star(relabeled, f) for f in new_faces[1:]]
            if any(s is None for s in ss):
                continue
            apexes = [s.apex for s in ss]
            if len(set(apexes)) != 3:
                continue
            inset = set(range(n)) - set(apexes)
            want = table_k4_no_common_vertex(n, tuple(apexes))
            if relabeled == want:
                y = min(inset)
                q1, q2, q3 = apexes
                g_stars = tuple(
                    column_star(relabeled, u)
                    for u in (
                        oriented_triangle(q3, q2, y),
                        oriented_triangle(y, q1, q3),
                        oriented_triangle(q2, q1, y),
                    )
                )
                return K4Classification(
                    "B2",
                    sign,
                    q_triple=tuple(apexes),
                    relabeling=perm,
                    g_side_stars=g_stars,
                )
    raise PatternMismatch("no K4 case matches the table")


def _k4_parts_at(table, faces, q, sign):
    parts = []
    for face in faces:
        row = table.row_map(face)
        if sign == -1:
            row = -row
        if row.is_zero():
            parts.append(frozenset())
            continue
        star = detect_star(row)
        if star is None:
            return None
        pres = star.presented_at(q)
        if pres is None:
            return None
        parts.append(frozenset(pres[1]))
    union = frozenset().union(*parts)
    if union != set(range(table.n)) - {q}:
        return None
    if sum(len(p_) for p_ in parts) != len(union):
        return None
    if sum(1 for p_ in parts if not p_) > 2:
        return None
    return parts


def _signed(table, sign):
    return table if sign == 1 else table.negate()


# -- stars with no common apex -----------------------------------------------------


def nca_case(s1, s2):
    """Match a no-common-apex star pair against the three edge-sharing cases.

    Searches presentations and orientations for a mutually oriented match;
    Incompatible means the pair cannot co-occur in a weakly linked embedding.
    """
    if common_apex(s1, s2) is not None:
        raise CommonApex("stars share an apex")
    for e1 in (1, -1):
        t1 = s1 if e1 == 1 else s1.reverse()
        for e2 in (1, -1):
            t2 = s2 if e2 == 1 else s2.reverse()
            for a1, o1, i1 in sorted(t1.presentations()):
                for a2, o2, i2 in sorted(t2.presentations()):
                    if a1 == a2 or a1 not in o2 or a2 not in o1:
                        continue
                    hit = _match_nca(a1, o1, i1, a2, o2, i2)
                    if hit:
                        case, p3 = hit
                        return NcaResult(case, a1, a2, p3, (e1, e2))
    return NcaResult("Incompatible")


def _match_nca(a1, o1, i1, a2, o2, i2):
    if len(i1) == 1:
        (p3,) = i1
        if p3 not in (a1, a2) and o2 == {a1, p3}:
            return ("C1", p3)
    if len(i2) == 1:
        (p3,) = i2
        if p3 not in (a1, a2) and o1 == {a2, p3}:
            return ("C2", p3)
    if len(o1) == 2 and len(o2) == 2 and a2 in o1 and a1 in o2:
        (p3,) = o1 - {a2}
        if o2 == {a1, p3}:
            return ("C3", p3)
    return None


# -- the unlinked-pair relation and the cyclic order --------------------------------


def sim_classes(table, side):
    """Classes of the relation 'x ~ y iff the apex triangle pxy links
    nothing', on the chosen side.

    Transitivity is verified, not assumed; a failure names a violating
    triple and means the table is not weakly linked.
    """
    work = table if side == "G" else table.transpose()
    p = common_vertex(work, "G")
    if p is None:
        raise ValueError(f"side {side} has no common vertex")
    others = [v for v in range(work.m) if v != p]
    related = {}
    for x, y in combinations(others, 2):
        related[(x, y)] = work.row_map(oriented_triangle(p, x, y)).is_zero()

    def rel(a, b):
        if a == b:
            return True
        return related[(a, b) if a < b else (b, a)]

    classes = []
    assigned = {}
    for v in others:
        for cls in classes:
            if rel(cls[0], v):
                cls.append(v)
                assigned[v] = cls
                break
        else:
            classes.append([v])
    # transitivity: class membership was decided by the first element; every
    # in-class pair must agree and no cross-class pair may be related
    for cls in classes:
        for a, b in combinations(cls, 2):
            if not rel(a, b):
                raise NotTransitive(cls[0], a, b)
    for c1, c2 in combinations(classes, 2):
        for a in c1:
            for b in c2:
                if rel(a, b):
                    raise NotTransitive(c1[0], a, b)
    classes.sort(key=min)
    return tuple(tuple(sorted(c)) for c in classes)


def _pair_sets(table, p, q, a, b):
    """(O, I) at apex q of the star linked by the apex triangle p a b."""
    star = _row_star(table, oriented_triangle(p, a, b))
    if star is None:
        raise NeitherCase(f"triangle {(p, a, b)} does not link a star")
    pres = star.presented_at(q)
    if pres is None:
        raise NeitherCase(f"star of {(p, a, b)} has no presentation at {q}")
    return pres


def epsilon(table, x, y, z):
    """Orientation of a triple from pairwise distinct classes: +1 when the
    three out-sets partition the far side, -1 when the in-sets do."""
    p = common_vertex(table, "G")
    q = common_vertex(table, "H")
    if p is None or q is None:
        raise NeitherCase("both sides need a common vertex")
    hprime = set(range(table.n)) - {q}
    outs = []
    ins = []
    for a, b in ((x, y), (y, z), (z, x)):
        o, i = _pair_sets(table, p, q, a, b)
        outs.append(o)
        ins.append(i)
    case_a = (
        not (outs[0] & outs[1] or outs[1] & outs[2] or outs[0] & outs[2])
        and (outs[0] | outs[1] | outs[2]) == hprime
    )
    case_b = (
        not (ins[0] & ins[1] or ins[1] & ins[2] or ins[0] & ins[2])
        and (ins[0] | ins[1] | ins[2]) == hprime
    )
    if case_a == case_b:
        raise NeitherCase(f"triple {(x, y, z)} satisfies neither orientation case")
    return EpsilonValue((x, y, z), 1 if case_a else -1)


def cyclic_order(table):
    """Classes on the common-vertex side of G, cyclically ordered so that
    every ascending triple has orientation +1; starts at the class holding
    the least vertex."""
    classes = sim_classes(table, "G")
    if len(classes) < 2:
        raise NoConsistentOrder("a single class links nothing")
    if len(classes) == 2:
        return classes
    first = classes[0]
    x0 = first[0]
    rest = list(classes[1:])
    try:
        order = [first]
        remaining = rest[:]
        while remaining:
            nxt = remaining[0]
            for cand in remaining[1:]:
                if epsilon(table, x0, cand[0], nxt[0]).value == 1:
                    nxt = cand
            remaining.remove(nxt)
            order.append(nxt)
        for i, j, k in combinations(range(len(order)), 3):
            if epsilon(table, order[i][0], order[j][0], order[k][0]).value != 1:
                raise NoConsistentOrder(
                    f"classes {order[i]}, {order[j]}, {order[k]} break the order"
                )
    except NeitherCase as exc:
        raise NoConsistentOrder(str(exc)) from exc
    return tuple(order)


# -- the two-sided classifiers -------------------------------------------------------


def recover_pq(table):
    """Recover (p, q, ordered partitions) of a both-sides-common-vertex
    table, verifying every star equality of the pattern exactly."""
    p = common_vertex(table, "G")
    q = common_vertex(table, "H")
    if p is None or q is None:
        raise PatternMismatch("both sides need a common vertex")
    xclasses = sim_classes(table, "G")
    yclasses = sim_classes(table, "H")
    ell = len(xclasses)
    if ell < 2:
        raise PatternMismatch("graphs do not link")
    if len(yclasses) != ell:
        raise PatternMismatch(
            f"class counts differ: {ell} on G, {len(yclasses)} on H"
        )
    try:
        order_plus = cyclic_order(table)
    except NoConsistentOrder as exc:
        raise PatternMismatch(str(exc)) from exc
    order_minus = (order_plus[0],) + tuple(reversed(order_plus[1:]))
    candidates = [(1, order_plus), (-1, order_minus)]
    if ell >= 3 and min(order_minus[1]) < min(order_plus[1]):
        candidates.reverse()
    failure = None
    for sign, order in candidates:
        signed = _signed(table, sign)
        try:
            yparts = []
            for i in range(ell):
                a = order[i][0]
                b = order[(i + 1) % ell][0]
                o, _ = _pair_sets(signed, p, q, a, b)
                yparts.append(tuple(sorted(o)))
            expected = table_pq(table.m, table.n, p, order, q, yparts)
        except (NeitherCase, ValueError) as exc:
            failure = failure or str(exc)
            continue
        if signed == expected:
            return PairClassification(
                "PQ", sign, p=p, q=q, xparts=order, yparts=tuple(yparts)
            )
        failure = failure or _first_difference(signed, expected)
    raise PatternMismatch(f"table deviates from the two-apex pattern: {failure}")


def _first_difference(actual, expected):
    da = dict(actual.items())
    de = dict(expected.items())
    for key in sorted(set(da) | set(de)):
        if da.get(key, 0) != de.get(key, 0):
            return f"first deviation at {key}: {da.get(key, 0)} != {de.get(key, 0)}"
    return "tables agree"


def _locate_common_triangle(table):
    """T* such that a triangle links iff it shares an edge with T* (T* aside)."""
    linking = set(_linking_triples(table))
    for tri in sorted_triangles(table.m):
        tset = set(tri)
        ok = True
        for other in sorted_triangles(table.m):
            if other == tri:
                continue
            shares = len(set(other) & tset) == 2
            if shares != (other in linking):
                ok = False
                break
        if ok:
            return tri
    return None


def _classify_d1(table, triangle_side):
    """Common-triangle side against a common-vertex side."""
    q = common_vertex(table, "H")
    tstar = _locate_common_triangle(table)
    if tstar is None or q is None:
        raise DichotomyViolation("no wheel triangle matches the linking set")
    hprime = set(range(table.n)) - {q}
    xs = sorted(set(range(table.m)) - set(tstar))
    x0 = xs[0]
    for perm in sorted(permutations(tstar)):
        for sign in (1, -1):
            signed = _signed(table, sign)
            try:
                parts = [_d1_part(signed, perm, q, x0, 0)]
                for i in (1, 2, 3):
                    parts.append(_d1_part(signed, perm, q, x0, i))
                expected = table_common_triangle_d1(
                    table.m, table.n, perm, q, parts
                )
            except (NeitherCase, ValueError):
                continue
            if signed == expected:
                return PairClassification(
                    "D1",
                    sign,
                    triangle_side=triangle_side,
                    tstar=perm,
                    q=q,
                    parts=tuple(tuple(sorted(p_)) for p_ in parts),
                    boundary_case=table.n == 4,
                )
    raise DichotomyViolation("wheel located but no one-vertex pattern matches")


def _d1_part(table, tstar, q, x0, i):
    from .patterns import _wheel_triangles

    if i == 0:
        tri = oriented_triangle(*tstar)
    else:
        tri = _wheel_triangles(tstar, x0)[i - 1]
    row = table.row_map(tri)
    if row.is_zero():
        if i == 0:
            return frozenset()
        raise NeitherCase("wheel triangle links nothing")
    star = detect_star(row)
    if star is None:
        raise NeitherCase("row is not a star")
    pres = star.presented_at(q)
    if pres is None:
        raise NeitherCase("star has no presentation at the common vertex")
    return frozenset(pres[1])


def _classify_d2(table):
    tstar = _locate_common_triangle(table)
    ustar = _locate_common_triangle(table.transpose())
    if tstar is None or ustar is None:
        raise DichotomyViolation("no wheel triangle matches the linking set")
    for perm_p in sorted(permutations(tstar)):
        for perm_q in sorted(permutations(ustar)):
            for sign in (1, -1):
                try:
                    expected = table_common_triangle_d2(
                        table.m, table.n, perm_p, perm_q
                    )
                except ValueError:
                    continue
                if _signed(table, sign) == expected:
                    return PairClassification(
                        "D2",
                        sign,
                        tstar=perm_p,
                        ustar=perm_q,
                        boundary_case=table.n == 4,
                    )
    raise DichotomyViolation("wheels located but no two-wheel pattern matches")


def classification_dict(obj):
    """JSON-ready summary of any classification result (or None)."""
    from .stars import Star, format_star

    if obj is None:
        return None
    if isinstance(obj, Star):
        return {"case": "star", "star": format_star(obj), "n": obj.n}
    if isinstance(obj, ThetaClassification):
        d = {"case": obj.case, "sign": obj.sign}
        if obj.case == "A1":
            d["apex"] = obj.apex
            d["parts"] = [list(p) for p in obj.parts]
        else:
            d["apexes"] = list(obj.apexes)
            d["in_set"] = list(obj.in_set)
        return d
    if isinstance(obj, K4Classification):
        d = {"case": obj.case, "sign": obj.sign}
        if obj.case == "B1":
            d["q"] = obj.q
            d["parts"] = [list(p) for p in obj.parts]
        else:
            d["q_triple"] = list(obj.q_triple)
            d["relabeling"] = list(obj.relabeling)
            d["g_side_stars"] = [format_star(s) for s in obj.g_side_stars]
        return d
    if isinstance(obj, PairClassification):
        d = {"case": obj.kind, "sign": obj.sign}
        if obj.kind == "PQ":
            d["p"] = obj.p
            d["q"] = obj.q
            d["xparts"] = [list(p) for p in obj.xparts]
            d["yparts"] = [list(p) for p in obj.yparts]
        elif obj.kind == "D1":
            d["triangle_side"] = obj.triangle_side
            d["tstar"] = list(obj.tstar)
            d["q"] = obj.q
            d["parts"] = [list(p) for p in obj.parts]
        else:
            d["tstar"] = list(obj.tstar)
            d["ustar"] = list(obj.ustar)
        if obj.boundary_case:
            d["boundary_case"] = True
        return d
    raise TypeError(f"unsupported classification object {obj!r}")


def classify_pair(table):
    """Top-level case of a weakly linked table with m >= 5 and n >= 4.

    Both-sides common vertex goes to the two-apex recovery; a side without a
    common vertex carries a common triangle instead.
    """
    if table.m < 5 or table.n < 4:
        raise ValueError(
            "classify_pair expects m >= 5 and n >= 4; route smaller sides to "
            "the K4 or single-curve classifiers"
        )
    validate_consistency(table)
    if not linkage_status(table).is_weak:
        raise NotWeak("table is not weakly linked")
    cv_g = _common_vertex_or_none(table, "G")
    cv_h = _common_vertex_or_none(table, "H")
    if cv_g is not None and cv_h is not None:
        try:
            return recover_pq(table)
        except PatternMismatch as exc:
            raise DichotomyViolation(str(exc)) from exc
    if cv_g is None and cv_h is not None:
        return _classify_d1(table, "G")
    if cv_g is not None and cv_h is None:
        swapped = _classify_d1(table.transpose(), "H")
        return PairClassification(
            "D1",
            swapped.sign,
            triangle_side="H",
            tstar=swapped.tstar,
            q=swapped.q,
            parts=swapped.parts,
            boundary_case=table.m == 4,
        )
    return _classify_d2(table)
