"""Delaunay triangulation with exact predicates and deterministic cocircular handling.

Qhull provides the initial triangulation; Lawson flips driven by the adaptive predicates then
enforce the empty-circumcircle property exactly. Four cocircular points keep the diagonal that
contains their lexicographically smallest point, which is the flip rule of a consistent lifting
perturbation, so flipping always terminates.
"""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.spatial import Delaunay, QhullError

from zerobench.core.errors import DegenerateInputError
from zerobench.spatial.pattern import PlanarPointSet
from zerobench.spatial.predicates import Point, incircle, orient2d

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Triangle:
    """Counterclockwise triangle with its circumcircle and longest edge."""

    vertices: tuple[int, int, int]
    circumcenter: tuple[float, float]
    circumradius: float
    max_edge: float


@dataclass(frozen=True)
class Triangulation:
    """Triangles over a point set, stored column-wise."""

    points: PlanarPointSet
    simplices: NDArray[np.int64]
    circumcenters: NDArray[np.float64]
    circumradii: NDArray[np.float64]
    max_edges: NDArray[np.float64]

    def __len__(self) -> int:
        return int(self.simplices.shape[0])

    @property
    def triangles(self) -> list[Triangle]:
        return [
            Triangle(
                vertices=(int(s[0]), int(s[1]), int(s[2])),
                circumcenter=(float(c[0]), float(c[1])),
                circumradius=float(r),
                max_edge=float(e),
            )
            for s, c, r, e in zip(
                self.simplices, self.circumcenters, self.circumradii, self.max_edges, strict=True
            )
        ]


def _coords(points: NDArray[np.float64]) -> list[Point]:
    return [(float(u), float(v)) for u, v in points]


def _check_nondegenerate(coords: list[Point]) -> None:
    if len(coords) < 3:
        raise DegenerateInputError(f"Delaunay triangulation needs >= 3 points, got {len(coords)}")
    first = coords[0]
    other = next((p for p in coords[1:] if p != first), None)
    if other is None or all(orient2d(first, other, p) == 0 for p in coords):
        raise DegenerateInputError("All points are collinear")


def _lex_key(coords: list[Point], index: int) -> tuple[float, float, int]:
    return (coords[index][0], coords[index][1], index)


class _Legalizer:
    """Lawson flip loop over a mutable triangle list."""

    def __init__(self, coords: list[Point], simplices: list[list[int]]) -> None:
        self.coords = coords
        self.tris = simplices
        self.edges: dict[tuple[int, int], list[int]] = {}
        for ti in range(len(self.tris)):
            self._register(ti)

    @staticmethod
    def _edge(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    def _register(self, ti: int) -> None:
        a, b, c = self.tris[ti]
        for e in ((a, b), (b, c), (c, a)):
            self.edges.setdefault(self._edge(*e), []).append(ti)

    def _unregister(self, ti: int) -> None:
        a, b, c = self.tris[ti]
        for e in ((a, b), (b, c), (c, a)):
            self.edges[self._edge(*e)].remove(ti)

    def _rotate(self, ti: int, a: int, b: int) -> list[int]:
        """Vertices of triangle ti listed so that the edge {a, b} comes first."""
        t = self.tris[ti]
        for shift in range(3):
            rotated = t[shift:] + t[:shift]
            if {rotated[0], rotated[1]} == {a, b}:
                return rotated
        raise AssertionError(f"Edge ({a}, {b}) not in triangle {t}")

    def _should_flip(self, a: int, b: int, c: int, d: int) -> bool:
        p = self.coords
        side = incircle(p[a], p[b], p[c], p[d])
        if side != 0:
            return side > 0
        smallest = min((a, b, c, d), key=lambda i: _lex_key(p, i))
        return smallest in (c, d)

    def run(self) -> int:
        flips = 0
        stack = list(self.edges)
        while stack:
            key = stack.pop()
            owners = self.edges.get(key, [])
            if len(owners) != 2:
                continue
            t1, t2 = owners
            a, b, c = self._rotate(t1, *key)
            d = self._rotate(t2, a, b)[2]
            if not self._should_flip(a, b, c, d):
                continue
            self._unregister(t1)
            self._unregister(t2)
            self.tris[t1] = [a, d, c]
            self.tris[t2] = [d, b, c]
            self._register(t1)
            self._register(t2)
            stack.extend(self._edge(*e) for e in ((a, d), (d, b), (b, c), (c, a)))
            flips += 1
        return flips


def _circumcircles(
    points: NDArray[np.float64], simplices: NDArray[np.int64]
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    a = points[simplices[:, 0]]
    b = points[simplices[:, 1]] - a
    c = points[simplices[:, 2]] - a
    d = 2.0 * (b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0])
    b2 = np.sum(b**2, axis=1)
    c2 = np.sum(c**2, axis=1)
    ux = (c[:, 1] * b2 - b[:, 1] * c2) / d
    uy = (b[:, 0] * c2 - c[:, 0] * b2) / d
    centers = a + np.column_stack([ux, uy])
    radii = np.hypot(ux, uy)
    return centers, radii


def delaunay(pts: PlanarPointSet) -> Triangulation:
    """Triangulate a point set.

    Args:
        pts: Points to triangulate (duplicates are not allowed).

    Returns:
        Delaunay triangulation with counterclockwise triangles.

    Raises:
        DegenerateInputError: If there are fewer than 3 points or all points are collinear.
    """
    coords = _coords(pts.points)
    _check_nondegenerate(coords)

    try:
        initial = Delaunay(pts.points).simplices
    except QhullError as e:
        raise DegenerateInputError(f"Triangulation failed: {e}") from e

    simplices: list[list[int]] = []
    for s in initial:
        a, b, c = (int(i) for i in s)
        turn = orient2d(coords[a], coords[b], coords[c])
        if turn == 0:
            continue
        simplices.append([a, b, c] if turn > 0 else [a, c, b])

    flips = _Legalizer(coords, simplices).run()
    if flips:
        logger.debug(f"Legalized triangulation of {len(coords)} points with {flips} flips")

    tri = np.array(simplices, dtype=np.int64).reshape(-1, 3)
    centers, radii = _circumcircles(pts.points, tri)
    corners = pts.points[tri]
    edges = np.stack(
        [
            np.linalg.norm(corners[:, 1] - corners[:, 0], axis=1),
            np.linalg.norm(corners[:, 2] - corners[:, 1], axis=1),
            np.linalg.norm(corners[:, 0] - corners[:, 2], axis=1),
        ],
        axis=1,
    )
    return Triangulation(
        points=pts,
        simplices=tri,
        circumcenters=centers,
        circumradii=radii,
        max_edges=edges.max(axis=1) if len(tri) else np.empty(0),
    )
