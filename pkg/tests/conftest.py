import random

import pytest

from linkweave.geom import PLCurve, rat


def square_xy():
    """Unit-ish square around the origin in the plane z=0, counterclockwise."""
    return PLCurve([(1, 1, 0), (-1, 1, 0), (-1, -1, 0), (1, -1, 0)])


def hopf_pair():
    """Square around the origin plus a square threading it once."""
    a = square_xy()
    b = PLCurve([(0, 0, 1), (2, 0, 1), (2, 0, -1), (0, 0, -1)])
    return a, b


def split_pair():
    a = square_xy()
    b = PLCurve([(10, 1, 0), (10, -1, 0), (12, -1, 0), (12, 1, 0)])
    return a, b


def doubled_pair():
    """Second curve passes down through the square's disk twice, entering
    over an edge and leaving under one each time: exactly four crossings."""
    a = square_xy()
    b = PLCurve(
        [
            ("-1/2", 2, 2),
            ("-1/2", "1/4", 2),
            ("-5/8", "-1/4", -2),
            ("-5/8", -2, -2),
            ("1/2", -2, -2),
            ("9/16", "-5/4", 2),
            ("1/2", "1/4", 2),
            ("5/8", "-1/4", -2),
            ("5/8", 2, -2),
        ]
    )
    return a, b


def perturb_curve(curve, rng, denom=64, spread=4):
    """Add small random rational offsets to every coordinate."""
    verts = []
    for v in curve.vertices:
        verts.append(
            tuple(c + rat(rng.randint(-spread, spread), denom) for c in v)
        )
    return PLCurve(verts)


def random_rational_rotation(rng):
    """Exact rotation matrix from a random integer quaternion."""
    while True:
        q = [rng.randint(-8, 8) for _ in range(4)]
        n = sum(c * c for c in q)
        if n != 0:
            break
    a, b, c, d = (rat(x) for x in q)
    n = rat(n)
    return (
        ((a * a + b * b - c * c - d * d) / n, (2 * (b * c - a * d)) / n, (2 * (b * d + a * c)) / n),
        ((2 * (b * c + a * d)) / n, (a * a - b * b + c * c - d * d) / n, (2 * (c * d - a * b)) / n),
        ((2 * (b * d - a * c)) / n, (2 * (c * d + a * b)) / n, (a * a - b * b - c * c + d * d) / n),
    )


def apply_matrix(curve, m):
    verts = []
    for v in curve.vertices:
        verts.append(
            tuple(m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] for r in range(3))
        )
    return PLCurve(verts)


@pytest.fixture
def rng():
    return random.Random(20260809)
