"""Support functions of L_p projection bodies of the cube, cross-polytope and simplex.

Every function here returns h^p, the p-th power of the support function,
because that is the quantity with a clean closed form. Use :func:`lp_support`
to take the root.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .closedform import factorial
from .linalg import as_coords, substream

EXACT_CAP = 20
MC_CHUNK = 1 << 14


def _check_p(p):
    p = float(p)
    if not p >= 1:
        raise ValueError(f"L_p order must satisfy p >= 1, got {p!r}")
    return p


@dataclass(frozen=True)
class SignAverage:
    value: float
    method: str
    samples: int = 0
    stderr: float = 0.0


def lp_support(hp, p):
    return hp ** (1.0 / _check_p(p))


def lp_cube_support_p(a, p):
    p = _check_p(p)
    return 2.0 ** (p - 1) * float(np.sum(np.abs(as_coords(a)) ** p))


def rademacher_moment(a, p, mode="exact", samples=100_000, seed=0):
    """E|sum_j a_j eps_j|^p over independent uniform signs."""
    p = _check_p(p)
    c = np.asarray(as_coords(a))
    n = c.size
    if mode == "exact":
        if n > EXACT_CAP:
            raise ValueError(f"enumeration too large: 2^{n} sign vectors (cap n <= {EXACT_CAP})")
        return SignAverage(kernels.sign_moment_exact(c, p), "exact_enumeration")
    if mode not in ("mc", "monte_carlo"):
        raise ValueError(f"unknown mode {mode!r}")
    if samples < 2:
        raise ValueError("Monte-Carlo mode needs at least 2 samples")
    total = 0.0
    total_sq = 0.0
    for chunk, start in enumerate(range(0, samples, MC_CHUNK)):
        size = min(MC_CHUNK, samples - start)
        eps = 1.0 - 2.0 * substream(seed, chunk).integers(0, 2, size=(size, n))
        vals = np.abs(eps @ c) ** p
        total += vals.sum()
        total_sq += (vals * vals).sum()
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    return SignAverage(mean, "monte_carlo", samples, math.sqrt(var / samples))


def lp_cross_support_p(a, p, mode="exact", samples=100_000, seed=0):
    n = len(as_coords(a))
    moment = rademacher_moment(a, p, mode, samples, seed)
    return 2.0 ** (n - 1) / factorial(n - 1) * moment.value


def lp_simplex_support_p(a, p):
    p = _check_p(p)
    c = as_coords(a, zero_sum=True)
    n = c.size - 1
    if n < 2:
        raise ValueError("simplex needs n >= 2")
    coef = (n + 1) ** ((2 * p - 1) / 2) / (2 * factorial(n - 1))
    return coef * float(np.sum(np.abs(c) ** p))


def support_values(facets, vertices):
    """h_P at each facet normal, as the max over vertices of <x, normal>."""
    return (np.asarray(vertices, dtype=float) @ facets.normals.T).max(axis=0)


def lp_support_via_facets(facets, support_values, a, p):
    """Facet sum  1/2 sum_F vol(F) |<a, n_F>|^p h_P(n_F)^(1-p)."""
    p = _check_p(p)
    h = np.asarray(support_values, dtype=float)
    if h.shape != facets.volumes.shape:
        raise ValueError("need one support value per facet")
    if np.any(h <= 0):
        raise ValueError("origin not interior: nonpositive support value")
    c = as_coords(a, zero_sum=facets.body_tag == "simplex_centered")
    if c.size != facets.dim:
        raise ValueError("dimension mismatch between direction and facets")
    return 0.5 * float(np.sum(facets.volumes * np.abs(facets.normals @ c) ** p * h ** (1 - p)))
