"""Brute-force shadow volumes that never touch a closed-form formula.

Two routes: the exact area of a 2-d shadow (monotone-chain hull plus shoelace),
and a Monte-Carlo estimate for 3- to 6-dimensional shadows whose hit test is a
convex-combination feasibility LP in shadow coordinates.
"""
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .linalg import COMPOUND_TOL, as_pair, substream

CUBE_VERTEX_CAP = 20
MEMBERSHIP_TOL = 1e-9
BOX_PAD = 1e-9
MC_CHUNK = 1 << 15


@dataclass(frozen=True, eq=False)
class VPolytope:
    vertices: np.ndarray
    tag: str = ""

    def __post_init__(self):
        V = np.array(self.vertices, dtype=float)
        if V.ndim != 2 or not np.isfinite(V).all():
            raise ValueError("vertices must be a finite 2-d array")
        if len(V) == 0:
            raise ValueError("a polytope needs at least one vertex")
        V.setflags(write=False)
        object.__setattr__(self, "vertices", V)

    @property
    def dim(self):
        return self.vertices.shape[1]


@dataclass(frozen=True, eq=False)
class Polygon2:
    """Convex polygon, vertices counterclockwise without the closing repeat."""

    vertices: np.ndarray
    convex: bool = True

    def __post_init__(self):
        V = np.array(self.vertices, dtype=float).reshape(-1, 2)
        if self.convex and len(V) >= 3 and shoelace(V) < 0:
            raise ValueError("polygon vertices must be ordered counterclockwise")
        V.setflags(write=False)
        object.__setattr__(self, "vertices", V)

    def __len__(self):
        return len(self.vertices)

    def scaled(self, lam):
        return Polygon2(lam * self.vertices, self.convex)


@dataclass(frozen=True)
class McEstimate:
    value: float
    stderr: float
    samples: int
    seed: int
    box_volume: float
    hits: int = field(default=0)


def standard_body(tag, n):
    if n < 2:
        raise ValueError("bodies need n >= 2")
    if tag == "simplex":
        return VPolytope(np.eye(n + 1), "simplex")
    if tag == "simplex_centered":
        return VPolytope(np.eye(n + 1) - 1.0 / (n + 1), "simplex_centered")
    if tag == "cube":
        if n > CUBE_VERTEX_CAP:
            raise ValueError(f"cube vertex enumeration capped at n <= {CUBE_VERTEX_CAP}")
        return VPolytope(np.array(list(itertools.product((-0.5, 0.5), repeat=n))), "cube")
    if tag == "cross":
        eye = np.eye(n)
        return VPolytope(np.vstack([eye, -eye]), "cross")
    raise ValueError(f"unknown body {tag!r}")


def standard_bodies(n):
    return {tag: standard_body(tag, n) for tag in ("simplex", "simplex_centered", "cube", "cross")}


def shadow_vertices(P, basis):
    B = np.atleast_2d(np.asarray(basis, dtype=float))
    if np.abs(B @ B.T - np.eye(len(B))).max() > COMPOUND_TOL:
        raise ValueError("shadow basis is not orthonormal")
    V = P.vertices if isinstance(P, VPolytope) else np.asarray(P, dtype=float)
    return V @ B.T


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points, tol=1e-12):
    """Monotone chain; returns hull vertices counterclockwise, collinear points dropped."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) < 1:
        raise ValueError("hull of an empty point set")
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = np.any(np.diff(pts, axis=0) != 0, axis=1)
    pts = pts[keep]
    if len(pts) < 3:
        return pts

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= tol:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


def shoelace(vertices):
    V = np.asarray(vertices, dtype=float)
    if len(V) < 3:
        return 0.0
    x, y = V[:, 0], V[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def hull_area_2d(points):
    hull = convex_hull_2d(points)
    if len(hull) < 3:
        return 0.0, Polygon2(hull, convex=False)
    return abs(shoelace(hull)), Polygon2(hull)


def shadow_area_2d(P, pair):
    p = as_pair(pair)
    if p.n != P.dim:
        raise ValueError(f"pair lives in R^{p.n}, body in R^{P.dim}")
    return hull_area_2d(shadow_vertices(P, p.as_matrix()))[0]


def membership_in_hull(q, points, tol=MEMBERSHIP_TOL):
    """True iff q is (within tol) a convex combination of the points."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    q = np.asarray(q, dtype=float).reshape(1, -1)
    if q.shape[1] != pts.shape[1]:
        raise ValueError("query and points differ in dimension")
    res, status = kernels.hull_residuals(pts, q)
    if status[0] != kernels.LP_OK:
        raise RuntimeError(
            f"membership LP did not converge: {len(pts)} points in R^{pts.shape[1]}, "
            f"query {q[0].tolist()}, residual {res[0]!r}"
        )
    return bool(res[0] <= tol)


def shadow_volume_mc(P, basis, samples, seed=0, tol=MEMBERSHIP_TOL):
    B = np.atleast_2d(np.asarray(basis, dtype=float))
    k = len(B)
    if not 3 <= k <= 6:
        raise ValueError(f"Monte-Carlo shadows need 3 <= k <= 6, got k={k}")
    pts = shadow_vertices(P, B)
    lo = pts.min(axis=0) - BOX_PAD
    hi = pts.max(axis=0) + BOX_PAD
    box = float(np.prod(hi - lo))
    hits = 0
    for c, start in enumerate(range(0, samples, MC_CHUNK)):
        size = min(MC_CHUNK, samples - start)
        q = lo + (hi - lo) * substream(seed, c).random((size, k))
        res, status = kernels.hull_residuals(pts, q)
        if np.any(status != kernels.LP_OK):
            bad = int(np.argmax(status != kernels.LP_OK))
            raise RuntimeError(f"membership LP did not converge at sample {start + bad}: {q[bad].tolist()}")
        hits += int(np.count_nonzero(res <= tol))
    r = hits / samples
    return McEstimate(box * r, box * math.sqrt(r * (1 - r) / samples), samples, int(seed), box, hits)
