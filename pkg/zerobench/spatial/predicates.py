"""Adaptive orientation and in-circle predicates.

A floating-point evaluation is trusted when it clears a static error bound; otherwise the
determinant is recomputed exactly with rationals.
"""

from fractions import Fraction

EPSILON = 2.0**-53
ORIENT_BOUND = (3.0 + 16.0 * EPSILON) * EPSILON
INCIRCLE_BOUND = (10.0 + 96.0 * EPSILON) * EPSILON

Point = tuple[float, float]


def _sign(value: float | Fraction) -> int:
    return (value > 0) - (value < 0)


def orient2d(a: Point, b: Point, c: Point) -> int:
    """Sign of the signed area of (a, b, c): +1 counterclockwise, -1 clockwise, 0 collinear."""
    left = (a[0] - c[0]) * (b[1] - c[1])
    right = (a[1] - c[1]) * (b[0] - c[0])
    det = left - right
    if abs(det) > ORIENT_BOUND * (abs(left) + abs(right)):
        return _sign(det)
    ax, ay, bx, by, cx, cy = (Fraction(v) for v in (*a, *b, *c))
    return _sign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx))


def incircle(a: Point, b: Point, c: Point, d: Point) -> int:
    """Sign of d against the circle through counterclockwise (a, b, c): +1 inside, -1 outside."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]

    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    bc = bdx * cdy - bdy * cdx
    ca = cdx * ady - cdy * adx
    ab = adx * bdy - ady * bdx
    det = alift * bc + blift * ca + clift * ab

    permanent = (
        (abs(bdx * cdy) + abs(bdy * cdx)) * alift
        + (abs(cdx * ady) + abs(cdy * adx)) * blift
        + (abs(adx * bdy) + abs(ady * bdx)) * clift
    )
    if abs(det) > INCIRCLE_BOUND * permanent:
        return _sign(det)
    return _incircle_exact(a, b, c, d)


def _incircle_exact(a: Point, b: Point, c: Point, d: Point) -> int:
    dx, dy = Fraction(d[0]), Fraction(d[1])
    rows = []
    for p in (a, b, c):
        px, py = Fraction(p[0]) - dx, Fraction(p[1]) - dy
        rows.append((px, py, px * px + py * py))
    (ax, ay, al), (bx, by, bl), (cx, cy, cl) = rows
    det = al * (bx * cy - by * cx) + bl * (cx * ay - cy * ax) + cl * (ax * by - ay * bx)
    return _sign(det)
