"""Extremal directions: closed-form extremizers and a numeric search that rediscovers them."""
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .closedform import factorial
from .linalg import Direction, OrthoPair, rng_from

MAJ_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ExtremalResult:
    value: float
    argument: object
    kind: str
    certified: bool
    meta: dict = field(default_factory=dict)


def canonicalize(a):
    """Representative of a modulo permutations and a -> -a.

    Coordinates sorted in decreasing order; of the two signs, the one whose
    sorted vector is lexicographically larger wins.
    """
    a = np.asarray(a, dtype=float)
    s1 = np.sort(a)[::-1]
    s2 = np.sort(-a)[::-1]
    for x, y in zip(s1, s2):
        if x != y:
            return s1 if x > y else s2
    return s1


def l1_min_zero_sum(m):
    if m < 2:
        raise ValueError("need m >= 2")
    arg = np.zeros(m)
    arg[0], arg[1] = 1 / math.sqrt(2), -1 / math.sqrt(2)
    return ExtremalResult(math.sqrt(2), Direction(arg, True), "min", True)


def _split_vector(m, k):
    """Zero-sum unit vector with k equal positive and m-k equal negative entries."""
    pos = math.sqrt((m - k) / (m * k))
    neg = -math.sqrt(k / (m * (m - k)))
    return np.array([pos] * k + [neg] * (m - k))


def l1_max_zero_sum(m):
    if m < 2:
        raise ValueError("need m >= 2")
    if m % 2 == 0:
        arg = _split_vector(m, m // 2)
        return ExtremalResult(math.sqrt(m), Direction(arg, True), "max", True)
    arg = _split_vector(m, (m - 1) // 2)
    # k and m-k positives give the same value; we report k = (m-1)/2
    meta = {"positives": (m - 1) // 2, "degenerate_k": [(m - 1) // 2, (m + 1) // 2]}
    return ExtremalResult(math.sqrt((m * m - 1) / m), Direction(arg, True), "max", True, meta)


def simplex_extremal_volumes(n):
    if n < 2:
        raise ValueError("need n >= 2")
    scale = 0.5 * math.sqrt(n + 1) / factorial(n - 1)
    lo, hi = l1_min_zero_sum(n + 1), l1_max_zero_sum(n + 1)
    return (
        ExtremalResult(scale * lo.value, lo.argument, "min", True),
        ExtremalResult(scale * hi.value, hi.argument, "max", True, hi.meta),
    )


def simplex_extremal_widths(n):
    """Width extremes; the roles of the two l1 extremizers are swapped."""
    if n < 2:
        raise ValueError("need n >= 2")
    lo, hi = l1_min_zero_sum(n + 1), l1_max_zero_sum(n + 1)
    if n % 2:
        wmin = 2 / math.sqrt(n + 1)
    else:
        wmin = 2 * math.sqrt((n + 1) / (n * (n + 2)))
    return (
        ExtremalResult(wmin, hi.argument, "min", True, hi.meta),
        ExtremalResult(math.sqrt(2), lo.argument, "max", True),
    )


def trig_pair(n):
    """The pair whose cube shadow is a regular 2n-gon."""
    if n < 2:
        raise ValueError("need n >= 2")
    theta = np.arange(n) * math.pi / n
    c = math.sqrt(2 / n)
    u, v = c * np.cos(theta), c * np.sin(theta)
    # clean the O(1e-16) drift so the pair passes the 1e-12 invariants for large n
    u /= np.linalg.norm(u)
    v -= (u @ v) * u
    return OrthoPair(u, v / np.linalg.norm(v))


def planar_cube_bounds(n):
    if n < 2:
        raise ValueError("need n >= 2")
    eye = np.eye(n)
    lower = ExtremalResult(1.0, OrthoPair(eye[0], eye[1]), "min", True)
    upper = ExtremalResult(1 / math.tan(math.pi / (2 * n)), trig_pair(n), "max", True)
    return lower, upper


def fp(a, p):
    return float(np.sum(np.abs(np.asarray(a, dtype=float)) ** p))


def fp_extrema_sphere(m, p):
    if m < 2:
        raise ValueError("need m >= 2")
    p = float(p)
    if p == 2:
        raise ValueError("F_2 is identically 1 on the sphere, no extremal problem")
    if p < 1:
        raise ValueError("need p >= 1")
    e1 = Direction(np.eye(m)[0])
    flat = Direction(np.full(m, 1 / math.sqrt(m)))
    at_flat = m ** (1 - p / 2)
    if p < 2:
        return ExtremalResult(1.0, e1, "min", True), ExtremalResult(at_flat, flat, "max", True)
    return ExtremalResult(at_flat, flat, "min", True), ExtremalResult(1.0, e1, "max", True)


def majorizes(x, y, tol=MAJ_TOL):
    """True iff x is majorized by y (x < y in the majorization order)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("majorization needs vectors of equal length")
    if abs(x.sum() - y.sum()) > tol:
        return False
    px = np.cumsum(np.sort(x)[::-1])
    py = np.cumsum(np.sort(y)[::-1])
    return bool(np.all(px <= py + tol))


def abs_power(p):
    return lambda t: np.abs(t) ** p


def karamata_gap(x, y, f):
    """sum f(y) - sum f(x) for x majorized by y; nonnegative when f is convex."""
    if not majorizes(x, y):
        raise ValueError("x is not majorized by y")
    return float(np.sum(f(np.asarray(y, dtype=float))) - np.sum(f(np.asarray(x, dtype=float))))


_OBJECTIVES = {
    "l1": kernels.OBJ_L1,
    "fp": kernels.OBJ_FP,
    "width": kernels.OBJ_WIDTH,
    "minor_sum": kernels.OBJ_MINOR_SUM,
}
_CONSTRAINTS = {
    "unit_sphere": kernels.CON_SPHERE,
    "zero_sum_unit_sphere": kernels.CON_ZERO_SUM,
    "orthonormal_pair": kernels.CON_PAIR,
}


def numeric_search(objective, m, constraint, kind, restarts=200, seed=0, p=1.0,
                   max_iter=10_000, min_step=1e-10):
    """Best of ``restarts`` projected (sub)gradient runs from seeded random starts.

    ``objective`` is one of ``l1``, ``fp`` (uses ``p``), ``width`` or
    ``minor_sum``; the last one requires ``constraint='orthonormal_pair'`` and
    ``m`` is then the ambient dimension of the pair.
    """
    if objective not in _OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    if constraint not in _CONSTRAINTS:
        raise ValueError(f"unknown constraint {constraint!r}")
    if (objective == "minor_sum") != (constraint == "orthonormal_pair"):
        raise ValueError("minor_sum goes with orthonormal_pair and only with it")
    if kind not in ("min", "max"):
        raise ValueError("kind must be 'min' or 'max'")
    if restarts < 1:
        raise ValueError("need at least one restart")
    if m < 2:
        raise ValueError("need m >= 2")
    width = 2 * m if constraint == "orthonormal_pair" else m
    starts = rng_from(seed).standard_normal((restarts, width))
    sense = 1.0 if kind == "max" else -1.0
    values, points, iters = kernels.projected_search(
        starts, _OBJECTIVES[objective], _CONSTRAINTS[constraint], m, sense, p,
        max_iter=max_iter, min_step=min_step)
    best = int(np.argmax(sense * values))
    x = points[best]
    if constraint == "orthonormal_pair":
        arg = OrthoPair(x[:m], x[m:])
    else:
        arg = Direction.of(x)
    meta = {"restart": best, "iterations": int(iters[best]), "seed": int(seed), "restarts": restarts}
    return ExtremalResult(float(values[best]), arg, kind, False, meta)

