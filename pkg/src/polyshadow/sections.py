"""Planar sections of the cross-polytope, polar polygons and Mahler products."""
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import as_pair
from .oracle import Polygon2, convex_hull_2d, shadow_vertices, shoelace, standard_body
from .report import VerificationReport

ANGLE_TOL = 1e-12
TWO_PI = 2 * math.pi


@dataclass(frozen=True, eq=False)
class SectionPolygon:
    polygon: Polygon2
    pair: object
    breakpoints: np.ndarray

    @property
    def k(self):
        return len(self.polygon) // 2


def section_norm(pair, s, t):
    """||s u + t v||_1, which is the gauge of the section in (s, t) coordinates."""
    return float(np.abs(s * pair.u + t * pair.v).sum())


def cross_section_polygon(pair):
    """The section of B_1^n by span{u, v} as a polygon in (s, t) coordinates."""
    p = as_pair(pair)
    if p.n < 2:
        raise ValueError("need n >= 2")
    live = (p.u != 0) | (p.v != 0)
    u, v = p.u[live], p.v[live]
    # N(s,t) = sum |s u_i + t v_i| kinks where (s,t) is parallel to (v_i, -u_i)
    base = np.mod(np.arctan2(-u, v), math.pi)
    angles = np.sort(np.concatenate([base, base + math.pi]))
    keep = [angles[0]]
    for a in angles[1:]:
        if a - keep[-1] > ANGLE_TOL:
            keep.append(a)
    if TWO_PI - (keep[-1] - keep[0]) <= ANGLE_TOL:
        keep.pop()
    angles = np.array(keep)
    if len(angles) < 4:
        raise ValueError("degenerate section: fewer than two distinct kink lines")
    dirs = np.column_stack([np.cos(angles), np.sin(angles)])
    norms = np.abs(np.outer(dirs[:, 0], p.u) + np.outer(dirs[:, 1], p.v)).sum(axis=1)
    verts = dirs / norms[:, None]
    return SectionPolygon(Polygon2(verts), p, angles)


def polygon_area(P):
    V = P.vertices if isinstance(P, Polygon2) else np.asarray(P, dtype=float)
    if len(V) < 3:
        warnings.warn("degenerate polygon, area taken as 0", RuntimeWarning, stacklevel=2)
        return 0.0
    return abs(shoelace(V))


def _edge_offsets(V):
    """Signed distance from the origin to each edge line (positive: origin inside)."""
    W = np.roll(V, -1, axis=0)
    cross = V[:, 0] * W[:, 1] - V[:, 1] * W[:, 0]
    return cross / np.linalg.norm(W - V, axis=1)


def polar_polygon(P):
    V = P.vertices if isinstance(P, Polygon2) else np.asarray(P, dtype=float)
    if len(V) < 3:
        raise ValueError("polar needs a polygon with at least 3 vertices")
    if _edge_offsets(V).min() <= 1e-10:
        raise ValueError("origin not interior: polar is unbounded")
    W = np.roll(V, -1, axis=0)
    # y with <y, V_j> = <y, W_j> = 1, solved by Cramer's rule per edge
    det = V[:, 0] * W[:, 1] - V[:, 1] * W[:, 0]
    y = np.column_stack([(W[:, 1] - V[:, 1]) / det, (V[:, 0] - W[:, 0]) / det])
    return Polygon2(y)


def mahler_product(P):
    return polygon_area(P) * polygon_area(polar_polygon(P))


def _point_segment_dist(q, a, b):
    ab = b - a
    t = np.clip(((q - a) @ ab) / (ab @ ab), 0.0, 1.0)
    return float(np.linalg.norm(q - (a + t * ab)))


def _dist_to_convex(q, V, tol=1e-15):
    W = np.roll(V, -1, axis=0)
    cross = (W[:, 0] - V[:, 0]) * (q[1] - V[:, 1]) - (W[:, 1] - V[:, 1]) * (q[0] - V[:, 0])
    if np.all(cross >= -tol):
        return 0.0
    return min(_point_segment_dist(q, V[i], W[i]) for i in range(len(V)))


def hausdorff(P, Q):
    """Symmetric Hausdorff distance between two convex polygons."""
    A = P.vertices if isinstance(P, Polygon2) else np.asarray(P, dtype=float)
    B = Q.vertices if isinstance(Q, Polygon2) else np.asarray(Q, dtype=float)
    d1 = max(_dist_to_convex(a, B) for a in A)
    d2 = max(_dist_to_convex(b, A) for b in B)
    return max(d1, d2)


def _cube_shadow_polygon(pair):
    return Polygon2(convex_hull_2d(shadow_vertices(standard_body("cube", pair.n), pair.as_matrix())))


def shadow_section_duality_check(pair, seed=0):
    """Compare polar(B_1^n cap H) with 2 Proj_H Q_n in the pair's own (s, t) frame."""
    p = as_pair(pair)
    polar = polar_polygon(cross_section_polygon(p).polygon)
    shadow = _cube_shadow_polygon(p).scaled(2.0)
    dist = hausdorff(polar, shadow)
    diam = float(np.linalg.norm(shadow.vertices[:, None] - shadow.vertices[None], axis=2).max())
    rep = VerificationReport("duality", seed)
    rep.add({"n": p.n, "u": p.u, "v": p.v}, dist, 0.0, 1e-8 * (1 + diam))
    return rep


def nazarov_bound(n):
    """Lower bound on the area of any central planar section of B_1^n."""
    if n < 3:
        raise ValueError("the section bound is stated for n >= 3")
    x = math.pi / (2 * n)
    return n * n * math.sin(x) ** 3 / math.cos(x)


def _sin_ratio(k):
    return k * k * math.sin(math.pi / (2 * k)) ** 2


def mahler_chain_check(pair, seed=0):
    """Check  A*S <= k^2 sin^2(pi/2k) <= n^2 sin^2(pi/2n)  and  S <= cot(pi/2n)."""
    p = as_pair(pair)
    n = p.n
    sec = cross_section_polygon(p)
    A = polygon_area(sec.polygon)
    S = polygon_area(_cube_shadow_polygon(p))
    k = sec.k
    rep = VerificationReport("mahler-chain", seed)
    inputs = {"n": n, "k": k, "u": p.u, "v": p.v}
    rep.add(dict(inputs, step="A*S<=k^2sin^2"), A * S, _sin_ratio(k), 1e-9, "le")
    rep.add(dict(inputs, step="k^2sin^2<=n^2sin^2"), _sin_ratio(k), _sin_ratio(n), 1e-9, "le")
    rep.add(dict(inputs, step="S<=cot"), S, 1 / math.tan(math.pi / (2 * n)), 1e-9, "le")
    return rep
