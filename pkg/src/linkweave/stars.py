"""Stars and fans: ordered partitions ({p}, O, I) of the vertices of K_n and
the triangle link maps they induce."""

from __future__ import annotations

from .errors import SameApex, ValuesOutOfRange
from .graphs import (
    all_oriented_triangles,
    oriented_triangle,
    reverse_triangle,
    sorted_triangles,
    triangle_key,
    triangle_orientation,
)


class Star:
    """The star pOI: all oriented triangles pqr with q in O and r in I.

    ({p}, O, I) partitions the vertices of its K_n. Proper when both O and I
    have at least two elements. Improper stars (fans) have two equivalent
    (apex, O, I) presentations; instances are canonicalized to the least
    possible apex, so equality is structural.
    """

    __slots__ = ("n", "apex", "out_set", "in_set")

    def __init__(self, n, apex, out_set, in_set):
        out_set = frozenset(out_set)
        in_set = frozenset(in_set)
        if not out_set or not in_set:
            raise ValueError("O and I must both be nonempty")
        whole = {apex} | out_set | in_set
        if whole != set(range(n)) or len(out_set) + len(in_set) + 1 != n:
            raise ValueError(f"({{{apex}}}, O, I) must partition 0..{n - 1}")
        apex, out_set, in_set = self._canonical(apex, out_set, in_set)
        self.n = n
        self.apex = apex
        self.out_set = out_set
        self.in_set = in_set

    @staticmethod
    def _canonical(apex, out_set, in_set):
        forms = _equivalent_forms(apex, out_set, in_set)
        return min(forms, key=lambda f: f[0])

    @property
    def proper(self):
        return len(self.out_set) >= 2 and len(self.in_set) >= 2

    @property
    def axis(self):
        """For a fan, the (apex, partner) edge; None for proper stars."""
        if len(self.out_set) == 1:
            return (self.apex, next(iter(self.out_set)))
        if len(self.in_set) == 1:
            return (self.apex, next(iter(self.in_set)))
        return None

    def possible_apexes(self):
        """Vertices usable as the apex in some presentation of this star."""
        return frozenset(
            f[0] for f in _equivalent_forms(self.apex, self.out_set, self.in_set)
        )

    def presentations(self):
        """All (apex, O, I) presentations of this star."""
        return _equivalent_forms(self.apex, self.out_set, self.in_set)

    def presented_at(self, apex):
        """(O, I) of the presentation with the given apex, or None."""
        for a, o, i in _equivalent_forms(self.apex, self.out_set, self.in_set):
            if a == apex:
                return o, i
        return None

    def reverse(self):
        """The oppositely oriented star pIO."""
        return Star(self.n, self.apex, self.in_set, self.out_set)

    def triangles(self):
        """All canonical oriented triangles pqr, q in O, r in I."""
        return {
            oriented_triangle(self.apex, q, r)
            for q in self.out_set
            for r in self.in_set
        }

    def indicator(self):
        """LinkMap: +1 on the star's triangles, -1 on their reverses."""
        m = LinkMap(self.n)
        for t in self.triangles():
            m.set(t, 1)
        return m

    def __eq__(self, other):
        return (
            isinstance(other, Star)
            and self.n == other.n
            and self.apex == other.apex
            and self.out_set == other.out_set
            and self.in_set == other.in_set
        )

    def __hash__(self):
        return hash((self.n, self.apex, self.out_set, self.in_set))

    def __repr__(self):
        return f"Star({format_star(self)!r}, n={self.n})"


def _equivalent_forms(apex, out_set, in_set):
    """All (apex, O, I) presentations of the same star.

    A fan p{q}I equals qI{p}, and pO{r} equals r{p}O; repeat while new
    presentations appear (the K_3 star has three).
    """
    forms = {(apex, out_set, in_set)}
    frontier = list(forms)
    while frontier:
        a, o, i = frontier.pop()
        candidates = []
        if len(o) == 1:
            (q,) = o
            candidates.append((q, i, frozenset({a})))
        if len(i) == 1:
            (r,) = i
            candidates.append((r, frozenset({a}), o))
        for f in candidates:
            if f not in forms:
                forms.add(f)
                frontier.append(f)
    return forms


def star_triangles(star):
    return star.triangles()


def reverse_star(star):
    return star.reverse()


def all_stars(n):
    """Every star of K_n (canonicalized; fans appear once)."""
    out = set()
    for apex in range(n):
        rest = [v for v in range(n) if v != apex]
        for mask in range(1, 2 ** len(rest) - 1):
            o = frozenset(rest[i] for i in range(len(rest)) if mask >> i & 1)
            i = frozenset(rest) - o
            out.add(Star(n, apex, o, i))
    return sorted(out, key=lambda s: (s.apex, sorted(s.out_set), sorted(s.in_set)))


def format_star(star):
    """Literal syntax 'p|q1 q2|r1 r2 r3'."""
    o = " ".join(str(v) for v in sorted(star.out_set))
    i = " ".join(str(v) for v in sorted(star.in_set))
    return f"{star.apex}|{o}|{i}"


def parse_star(text, n=None):
    """Parse 'p|q1 q2|r1 r2 r3'; n defaults to the number of vertices used."""
    parts = text.split("|")
    if len(parts) != 3:
        raise ValueError(f"expected 'p|q..|r..', got {text!r}")
    apex = int(parts[0])
    out_set = frozenset(int(v) for v in parts[1].split())
    in_set = frozenset(int(v) for v in parts[2].split())
    if n is None:
        n = 1 + len(out_set) + len(in_set)
    return Star(n, apex, out_set, in_set)


class LinkMap:
    """Total integer map on the oriented triangles of K_n with
    value(reverse(T)) = -value(T). Stores one value per vertex triple."""

    __slots__ = ("n", "_values")

    def __init__(self, n, values=None):
        self.n = n
        self._values = dict(values) if values else {}

    def get(self, tri):
        key = triangle_key(tri)
        return triangle_orientation(tri) * self._values.get(key, 0)

    def set(self, tri, value):
        key = triangle_key(tri)
        value = triangle_orientation(tri) * value
        if value == 0:
            self._values.pop(key, None)
        else:
            self._values[key] = value

    def support(self):
        """Canonical oriented triangles with value +1 under this map."""
        out = set()
        for key, v in self._values.items():
            out.add(key if v > 0 else reverse_triangle(key))
        return out

    def is_zero(self):
        return not self._values

    def max_abs(self):
        return max((abs(v) for v in self._values.values()), default=0)

    def items(self):
        """(ascending triple, value) pairs for the stored orientation."""
        return self._values.items()

    def __eq__(self, other):
        return (
            isinstance(other, LinkMap)
            and self.n == other.n
            and self._values == other._values
        )

    def __hash__(self):
        raise TypeError("LinkMap is mutable; not hashable")

    def __neg__(self):
        return LinkMap(self.n, {k: -v for k, v in self._values.items()})

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("mismatched orders")
        out = LinkMap(self.n)
        for k in set(self._values) | set(other._values):
            v = self._values.get(k, 0) + other._values.get(k, 0)
            if v:
                out._values[k] = v
        return out

    def copy(self):
        return LinkMap(self.n, self._values)


def detect_star(link_map):
    """The unique star whose indicator equals the map, or None.

    Values must lie in {-1, 0, +1} (ValuesOutOfRange otherwise; the caller
    should have caught a strong link first). Runs in O(#triangles): apex
    candidates are the common vertices of the +1 support.
    """
    if link_map.max_abs() >= 2:
        raise ValuesOutOfRange("link map has |value| >= 2")
    support = link_map.support()
    if not support:
        return None
    common = set(next(iter(support)))
    for t in support:
        common &= set(t)
        if not common:
            return None
    n = link_map.n
    for apex in sorted(common):
        out_set = set()
        in_set = set()
        ok = True
        for t in support:
            rotated = _rotate_to_apex(t, apex)
            if rotated is None:
                ok = False
                break
            _, q, r = rotated
            out_set.add(q)
            in_set.add(r)
        if not ok:
            continue
        if out_set & in_set:
            continue
        if {apex} | out_set | in_set != set(range(n)):
            continue
        if not out_set or not in_set:
            continue
        star = Star(n, apex, out_set, in_set)
        if star.indicator() == link_map:
            return star
    return None


def _rotate_to_apex(tri, apex):
    a, b, c = tri
    if a == apex:
        return (a, b, c)
    if b == apex:
        return (b, c, a)
    if c == apex:
        return (c, a, b)
    return None


def mutual_orientation(s1, s2):
    """The unique signs (e1, e2) making e1*s1 and e2*s2 mutually oriented
    (each apex in the other's out-set)."""
    if s1.apex == s2.apex:
        raise SameApex(f"both stars have apex {s1.apex}")
    e1 = 1 if s2.apex in s1.out_set else -1
    e2 = 1 if s1.apex in s2.out_set else -1
    return e1, e2


def common_apex(s1, s2):
    """A vertex expressible as the apex of both stars, least first; None if
    the stars have no common apex."""
    shared = s1.possible_apexes() & s2.possible_apexes()
    return min(shared) if shared else None
