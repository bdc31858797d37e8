"""Finitely representable forecast distributions and linear pooling.

Two concrete representations cover everything downstream scoring needs:
categorical probability vectors over labeled outcomes, and weighted
empirical samples over real vectors.  Both are immutable after
construction; the linear pool of empirical components is the exact finite
mixture (concatenated support with rescaled weights), never a resample.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SUM_TOL",
    "OutcomeSpace",
    "CategoricalDist",
    "EmpiricalDist",
    "PoolSpec",
    "linear_pool",
    "mean_and_variance",
    "point_mass",
]

# Maximum deviation of a probability/weight vector's sum from 1 that is
# repaired by normalization; anything larger is rejected as data corruption.
SUM_TOL = 1e-9

REAL_LINE = "real-line"
REAL_VECTOR = "real-vector"
UNORDERED_CATEGORIES = "unordered-categories"
ORDERED_CATEGORIES = "ordered-categories"

_KINDS = (REAL_LINE, REAL_VECTOR, UNORDERED_CATEGORIES, ORDERED_CATEGORIES)


@dataclass(frozen=True)
class OutcomeSpace:
    """Where outcomes live: the real line, a real vector space, or a finite
    set of k categories (with or without an ordinal interpretation).

    Attributes:
        kind: one of {real-line, real-vector, unordered-categories,
            ordered-categories}.
        dim: coordinates per outcome (real kinds only; real-line has dim 1).
        n_categories: number of categories k (categorical kinds only).
    """

    kind: str
    dim: int = 0
    n_categories: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown outcome-space kind {self.kind!r}")
        if self.kind == REAL_LINE and self.dim != 1:
            raise ValueError("real-line space has dim 1")
        if self.kind == REAL_VECTOR and self.dim < 1:
            raise ValueError("real-vector space needs dim >= 1")
        if self.is_categorical and self.n_categories < 2:
            raise ValueError("categorical space needs at least 2 categories")

    @classmethod
    def real_line(cls) -> OutcomeSpace:
        return cls(REAL_LINE, dim=1)

    @classmethod
    def real_vector(cls, dim: int) -> OutcomeSpace:
        return cls(REAL_VECTOR, dim=int(dim))

    @classmethod
    def unordered(cls, k: int) -> OutcomeSpace:
        return cls(UNORDERED_CATEGORIES, n_categories=int(k))

    @classmethod
    def ordered(cls, k: int) -> OutcomeSpace:
        return cls(ORDERED_CATEGORIES, n_categories=int(k))

    @property
    def is_real(self) -> bool:
        return self.kind in (REAL_LINE, REAL_VECTOR)

    @property
    def is_categorical(self) -> bool:
        return self.kind in (UNORDERED_CATEGORIES, ORDERED_CATEGORIES)


def _as_probability_vector(values, length: int | None, what: str) -> np.ndarray:
    """Validate and exactly normalize a nonnegative vector summing to ~1.

    Deviations of the sum from 1 beyond SUM_TOL are rejected rather than
    silently rescaled.
    """
    v = np.array(values, dtype=float).reshape(-1)
    if length is not None and v.size != length:
        raise ValueError(f"{what} must have length {length}, got {v.size}")
    if v.size == 0:
        raise ValueError(f"{what} must be non-empty")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{what} contains non-finite entries")
    if np.any(v < 0):
        raise ValueError(f"{what} contains negative entries")
    s = float(v.sum())
    if abs(s - 1.0) > SUM_TOL:
        raise ValueError(f"{what} sums to {s!r}, outside 1 +/- {SUM_TOL}")
    v /= s
    v.flags.writeable = False
    return v


@dataclass(frozen=True, eq=False)
class CategoricalDist:
    """Probability vector over the categories of a finite outcome space.

    Args:
        space: an unordered-categories or ordered-categories space.
        probs: nonnegative vector of length k summing to 1 (within
            ``SUM_TOL``; normalized exactly on construction).
    """

    space: OutcomeSpace
    probs: np.ndarray

    def __post_init__(self) -> None:
        if not self.space.is_categorical:
            raise ValueError("CategoricalDist requires a categorical space")
        p = _as_probability_vector(self.probs, self.space.n_categories, "probs")
        object.__setattr__(self, "probs", p)

    @classmethod
    def point_mass(cls, space: OutcomeSpace, category: int) -> CategoricalDist:
        """Distribution with all mass on one category index (0-based)."""
        k = space.n_categories
        if not 0 <= int(category) < k:
            raise ValueError(f"category {category} outside 0..{k - 1}")
        p = np.zeros(k)
        p[int(category)] = 1.0
        return cls(space, p)

    @property
    def support_size(self) -> int:
        return self.space.n_categories

    def cumulative(self) -> np.ndarray:
        """Cumulative probabilities P_l over category order (ordinal use)."""
        return np.cumsum(self.probs)


@dataclass(frozen=True, eq=False)
class EmpiricalDist:
    """Weighted finite sample over the real line or a real vector space.

    A single point with weight 1 represents a point mass.  Duplicate points
    are permitted and are not merged.

    Args:
        space: real-line or real-vector space.
        points: (m, dim) array of support points; 1-D input is accepted for
            real-line and reshaped to (m, 1).
        weights: nonnegative vector of length m summing to 1; None means
            equal weights 1/m.
    """

    space: OutcomeSpace
    points: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self) -> None:
        if not self.space.is_real:
            raise ValueError("EmpiricalDist requires a real outcome space")
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise ValueError("points must be a non-empty (m, dim) array")
        if pts.shape[1] != self.space.dim:
            raise ValueError(
                f"points have dimension {pts.shape[1]}, space has {self.space.dim}"
            )
        if not np.all(np.isfinite(pts)):
            raise ValueError("points contain non-finite entries")
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        m = pts.shape[0]
        if self.weights is None:
            w = np.full(m, 1.0 / m)
            w.flags.writeable = False
        else:
            w = _as_probability_vector(self.weights, m, "weights")
        object.__setattr__(self, "weights", w)

    @property
    def support_size(self) -> int:
        return self.points.shape[0]

    def scalar_points(self) -> np.ndarray:
        """Support as a flat (m,) array; real-line distributions only."""
        if self.space.kind != REAL_LINE:
            raise ValueError("scalar support requires a real-line space")
        return self.points[:, 0]


ForecastDistribution = CategoricalDist | EmpiricalDist


def point_mass(value, space: OutcomeSpace | None = None) -> EmpiricalDist:
    """Degenerate empirical distribution at a single real outcome.

    With no space given, a scalar maps to the real line and a vector to a
    real-vector space of its length.
    """
    v = np.atleast_1d(np.asarray(value, dtype=float))
    if space is None:
        space = OutcomeSpace.real_line() if v.size == 1 else OutcomeSpace.real_vector(v.size)
    return EmpiricalDist(space, v.reshape(1, -1), np.array([1.0]))


@dataclass(frozen=True, eq=False)
class PoolSpec:
    """Components of a linear pool plus their combination weights.

    Args:
        components: n >= 1 forecast distributions over one shared space.
        weights: nonnegative vector of length n summing to 1; None means
            equal weights 1/n.  Zero weights are allowed.
    """

    components: tuple
    weights: np.ndarray | None = None

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        if len(comps) == 0:
            raise ValueError("pool needs at least one component")
        space = comps[0].space
        for c in comps[1:]:
            if c.space != space:
                raise ValueError("pool components must share one outcome space")
        object.__setattr__(self, "components", comps)
        if self.weights is None:
            w = np.full(len(comps), 1.0 / len(comps))
            w.flags.writeable = False
        else:
            w = _as_probability_vector(self.weights, len(comps), "weights")
        object.__setattr__(self, "weights", w)

    @property
    def space(self) -> OutcomeSpace:
        return self.components[0].space

    @property
    def size(self) -> int:
        return len(self.components)


def linear_pool(pool: PoolSpec) -> ForecastDistribution:
    """Mixture distribution sum_i w_i F^i of the pool's components.

    Categorical components mix their probability vectors.  Empirical
    components concatenate their supports, each block carrying its
    component's weights scaled by the combination weight; the result is the
    exact finite mixture.
    """
    comps = pool.components
    w = pool.weights
    if isinstance(comps[0], CategoricalDist):
        probs = np.zeros(pool.space.n_categories)
        for wi, c in zip(w, comps):
            probs += wi * c.probs
        return CategoricalDist(pool.space, probs / probs.sum())
    points = np.concatenate([c.points for c in comps], axis=0)
    weights = np.concatenate([wi * c.weights for wi, c in zip(w, comps)])
    return EmpiricalDist(pool.space, points, weights / weights.sum())


def mean_and_variance(dist: ForecastDistribution, bin_values=None):
    """Weighted mean and population (co)variance of a distribution.

    Categorical distributions need numeric ``bin_values`` (one per
    category); empirical distributions must not be given any.  Real-line
    and categorical cases return ``(float, float)``; real-vector cases
    return ``(mean vector, covariance matrix)``.  No bias correction is
    applied: these are exact moments of an exactly known distribution,
    not sample estimates.
    """
    if isinstance(dist, CategoricalDist):
        if bin_values is None:
            raise ValueError("categorical distributions need bin_values")
        x = np.asarray(bin_values, dtype=float).reshape(-1)
        if x.size != dist.space.n_categories:
            raise ValueError(
                f"bin_values must have length {dist.space.n_categories}, got {x.size}"
            )
        w = dist.probs
    else:
        if bin_values is not None:
            raise ValueError("bin_values only apply to categorical distributions")
        x = dist.points
        w = dist.weights
        if dist.space.kind == REAL_LINE:
            x = x[:, 0]
    if x.ndim == 1:
        mean = float(w @ x)
        return mean, float(w @ (x - mean) ** 2)
    mean = w @ x
    centered = x - mean
    cov = centered.T @ (centered * w[:, None])
    return mean, cov
