"""Unit directions, orthonormal pairs and seeded sampling on constrained spheres."""
from dataclasses import dataclass

import numpy as np

UNIT_TOL = 1e-12
COMPOUND_TOL = 1e-10


def rng_from(seed):
    """A PCG64 generator for an integer seed; generators pass through untouched."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def substream(seed, *key):
    """Independent generator for ``(seed, key)``; same key, same stream."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True, eq=False)
class Direction:
    coords: np.ndarray
    zero_sum: bool = False

    def __post_init__(self):
        c = np.array(self.coords, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("direction must be a non-empty 1-d vector")
        if abs(np.linalg.norm(c) - 1.0) > UNIT_TOL:
            raise ValueError(f"direction is not a unit vector (norm {np.linalg.norm(c)!r})")
        if self.zero_sum and abs(c.sum()) > UNIT_TOL:
            raise ValueError(f"zero_sum flag set but coordinates sum to {c.sum()!r}")

    @classmethod
    def of(cls, coords):
        """Wrap an already-unit vector, setting ``zero_sum`` from the data."""
        c = np.asarray(coords, dtype=float)
        return cls(c, bool(abs(c.sum()) <= UNIT_TOL))

    def __len__(self):
        return self.coords.size

    def __array__(self, dtype=None, copy=None):
        return self.coords if dtype is None else self.coords.astype(dtype)

    def __neg__(self):
        return Direction(-self.coords, self.zero_sum)

    def __eq__(self, other):
        if not isinstance(other, Direction):
            return NotImplemented
        return self.zero_sum == other.zero_sum and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash((self.coords.tobytes(), self.zero_sum))


@dataclass(frozen=True, eq=False)
class OrthoPair:
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = np.array(self.u, dtype=float)
        v = np.array(self.v, dtype=float)
        u.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        if u.shape != v.shape or u.ndim != 1:
            raise ValueError("pair vectors must be 1-d and of equal length")
        if abs(np.linalg.norm(u) - 1) > UNIT_TOL or abs(np.linalg.norm(v) - 1) > UNIT_TOL:
            raise ValueError("pair vectors must be unit vectors")
        if abs(u @ v) > UNIT_TOL:
            raise ValueError(f"pair vectors are not orthogonal (<u,v> = {u @ v!r})")

    @property
    def n(self):
        return self.u.size

    def as_matrix(self):
        return np.vstack([self.u, self.v])


def as_coords(a, zero_sum=False):
    """Coordinates of a Direction (or raw unit vector), checking the zero-sum flag if asked."""
    d = a if isinstance(a, Direction) else Direction.of(a)
    if zero_sum and not d.zero_sum:
        raise ValueError("direction must lie in the zero-sum hyperplane H'")
    return d.coords


def as_pair(pair):
    if isinstance(pair, OrthoPair):
        return pair
    u, v = pair
    return OrthoPair(u, v)


def normalize(x):
    x = np.asarray(x, dtype=float)
    nrm = np.linalg.norm(x)
    if not nrm > 0 or not np.isfinite(nrm):
        raise ValueError("degenerate direction")
    c = x / nrm
    zero = abs(x.sum()) / nrm <= UNIT_TOL
    if zero:
        # the flag promises |sum| <= 1e-12 of the stored coords too
        c = c - c.mean()
        c = c / np.linalg.norm(c)
    return Direction(c, bool(zero))


def project_zero_sum(x):
    x = np.asarray(x, dtype=float)
    y = x - x.mean()
    scale = max(np.linalg.norm(x), 1.0)
    if np.linalg.norm(y) <= UNIT_TOL * scale:
        raise ValueError("direction collapses: vector is proportional to the all-ones vector")
    y /= np.linalg.norm(y)
    y -= y.mean()
    return Direction(y / np.linalg.norm(y), True)


def orthonormal_pair(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    nx = np.linalg.norm(x)
    if not nx > 0:
        raise ValueError("degenerate plane: first vector is zero")
    u = x / nx
    r = y - (y @ u) * u
    if np.linalg.norm(r) < 1e-10 * np.linalg.norm(y) or not np.linalg.norm(y) > 0:
        raise ValueError("degenerate plane: vectors are linearly dependent")
    r = r / np.linalg.norm(r)
    r = r - (r @ u) * u  # second sweep keeps |<u,v>| at rounding level
    return OrthoPair(u, r / np.linalg.norm(r))


def sample_directions(count, m, zero_sum=False, seed=0):
    """``count`` uniform points of the (zero-sum) unit sphere in R^m, one per row."""
    if m < 2:
        raise ValueError("sampling needs m >= 2")
    g = rng_from(seed).standard_normal((count, m))
    if zero_sum:
        g -= g.mean(axis=1, keepdims=True)
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    if zero_sum:
        g -= g.mean(axis=1, keepdims=True)
        g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g


def sample_direction(m, zero_sum=False, seed=0):
    return Direction(sample_directions(1, m, zero_sum, seed)[0], zero_sum)


def sample_pairs(count, n, seed=0):
    """``count`` random orthonormal pairs as an array of shape (count, 2, n)."""
    g = rng_from(seed).standard_normal((count, 2, n))
    u = g[:, 0] / np.linalg.norm(g[:, 0], axis=1, keepdims=True)
    v = g[:, 1] - (g[:, 1] * u).sum(axis=1, keepdims=True) * u
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    v -= (v * u).sum(axis=1, keepdims=True) * u
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return np.stack([u, v], axis=1)


def orthobasis_of_complement(vectors, n=None):
    """Orthonormal basis (rows) of the orthogonal complement of the given orthonormal rows."""
    V = np.atleast_2d(np.asarray(vectors, dtype=float))
    if n is None:
        n = V.shape[1]
    if V.size == 0:
        return np.eye(n)
    k = V.shape[0]
    if V.shape[1] != n:
        raise ValueError("vector length does not match the ambient dimension")
    if np.abs(V @ V.T - np.eye(k)).max() > COMPOUND_TOL:
        raise ValueError("input vectors are not orthonormal")
    _, _, Vt = np.linalg.svd(V)
    B = Vt[k:]
    # one projection sweep against the inputs, then re-orthonormalize
    B = B - (B @ V.T) @ V
    Q, _ = np.linalg.qr(B.T)
    return Q.T
