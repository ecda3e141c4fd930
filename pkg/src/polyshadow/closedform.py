"""Closed-form shadow volumes and widths of the simplex, cube and cross-polytope.

Conventions: the simplex is conv{e_1, ..., e_{n+1}} in R^{n+1} (side sqrt 2),
the cube is Q_n = [-1/2, 1/2]^n, the cross-polytope is conv{+-e_j}.
"""
import math
from dataclasses import dataclass

import numpy as np

from .linalg import as_coords, as_pair, project_zero_sum

CROSS_FACET_CAP = 20
BODY_TAGS = ("cube", "cross", "simplex_centered")


def factorial(k):
    """k! as a float; exact through 20!, log-gamma above."""
    if k < 0:
        raise ValueError("factorial of a negative number")
    if k <= 20:
        return float(math.factorial(k))
    return math.exp(math.lgamma(k + 1))


@dataclass(frozen=True)
class BodyVolumeConstants:
    n: int
    simplex_volume: float
    simplex_facet_volume: float
    cross_facet_volume: float


def body_volume_constants(n):
    if n < 1:
        raise ValueError("dimension must be positive")
    facet = math.sqrt(n) / factorial(n - 1)
    return BodyVolumeConstants(n, math.sqrt(n + 1) / factorial(n), facet, facet)


@dataclass(frozen=True, eq=False)
class FacetData:
    normals: np.ndarray
    volumes: np.ndarray
    body_tag: str

    def __post_init__(self):
        N = np.array(self.normals, dtype=float)
        w = np.array(self.volumes, dtype=float)
        N.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "normals", N)
        object.__setattr__(self, "volumes", w)
        if N.ndim != 2 or w.shape != (N.shape[0],):
            raise ValueError("need one volume per facet normal")
        if np.abs(np.linalg.norm(N, axis=1) - 1).max() > 1e-12:
            raise ValueError("facet normals must be unit vectors")
        if np.abs(w @ N).max() > 1e-10:
            raise ValueError("facet data is not closed: sum vol(F) n(F) != 0")

    @property
    def dim(self):
        return self.normals.shape[1]


def facet_data(body_tag, n):
    if body_tag not in BODY_TAGS:
        raise ValueError(f"unsupported body tag {body_tag!r}; expected one of {BODY_TAGS}")
    if n < 2:
        raise ValueError("facet data needs n >= 2")
    if body_tag == "cube":
        eye = np.eye(n)
        return FacetData(np.vstack([eye, -eye]), np.ones(2 * n), body_tag)
    if body_tag == "cross":
        if n > CROSS_FACET_CAP:
            raise ValueError(f"cross-polytope facet enumeration capped at n <= {CROSS_FACET_CAP}")
        bits = (np.arange(2 ** n)[:, None] >> np.arange(n)) & 1
        normals = (1.0 - 2.0 * bits) / math.sqrt(n)
        return FacetData(normals, np.full(2 ** n, math.sqrt(n) / factorial(n - 1)), body_tag)
    # facet opposite vertex i of the centred simplex in R^{n+1}
    normals = np.ones((n + 1, n + 1)) - (n + 1) * np.eye(n + 1)
    normals /= math.sqrt(n * (n + 1))
    return FacetData(normals, np.full(n + 1, math.sqrt(n) / factorial(n - 1)), body_tag)


def simplex_hyperplane_shadow(a, project=False):
    """(n-1)-volume of the simplex's shadow on a^perp within its own hyperplane."""
    if project:
        a = project_zero_sum(np.asarray(a, dtype=float))
    c = as_coords(a, zero_sum=True)
    n = c.size - 1
    if n < 2:
        raise ValueError("simplex shadow needs n >= 2 (direction of length >= 3)")
    return 0.5 * math.sqrt(n + 1) / factorial(n - 1) * float(np.abs(c).sum())


def cube_hyperplane_shadow(a):
    return float(np.abs(as_coords(a)).sum())


def minor_sum(u, v):
    """sum_{i<j} |u_i v_j - u_j v_i|."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    M = np.outer(u, v) - np.outer(v, u)
    return float(np.abs(M[np.triu_indices(u.size, 1)]).sum())


def cube_planar_shadow(pair):
    """Area of the cube's shadow on span{u, v}; equals the (n-2)-shadow on the complement."""
    p = as_pair(pair)
    if p.n < 2:
        raise ValueError("planar shadow needs n >= 2")
    return minor_sum(p.u, p.v)


def simplex_width(a):
    c = as_coords(a, zero_sum=True)
    return float(c.max() - c.min())


def simplex_gauge_diff_body(a):
    """Gauge of a in the difference body of the simplex."""
    return 0.5 * float(np.abs(as_coords(a, zero_sum=True)).sum())


def cauchy_shadow(facets, a):
    c = as_coords(a, zero_sum=facets.body_tag == "simplex_centered")
    if c.size != facets.dim:
        raise ValueError(f"dimension mismatch: direction has {c.size} coords, body lives in R^{facets.dim}")
    return 0.5 * float(facets.volumes @ np.abs(facets.normals @ c))


def width_projection_ratio(a):
    """Shadow volume over difference-body gauge; constant sqrt(n+1)/(n-1)! on the zero-sum sphere."""
    return simplex_hyperplane_shadow(a) / simplex_gauge_diff_body(a)
