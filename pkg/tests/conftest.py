"""Shared helpers: random domain generation and independent dense-grid
oracles (matplotlib path membership + raw numpy distances, so the oracle
shares no decision code with the library's certifier)."""

from __future__ import annotations

import numpy as np
import pytest
from matplotlib.path import Path as MplPath

from mdpkit.geom import Domain


def star_ring(rng: np.random.Generator, center=(0.0, 0.0), n_lo=6, n_hi=12,
              r_lo=0.5, r_hi=1.2) -> list[tuple[float, float]]:
    """A random star-shaped (hence simple) polygon around `center`: evenly
    spaced jittered angles keep the center strictly inside."""
    n = int(rng.integers(n_lo, n_hi + 1))
    angles = 2.0 * np.pi * (np.arange(n) + rng.uniform(0.0, 0.8, n)) / n
    radii = rng.uniform(r_lo, r_hi, n)
    cx, cy = center
    return [(cx + r * np.cos(a), cy + r * np.sin(a)) for r, a in zip(radii, angles)]


def random_domain(rng: np.random.Generator, hole_prob: float = 0.3) -> Domain:
    boundary = star_ring(rng)
    holes = []
    if rng.random() < hole_prob:
        holes.append(star_ring(rng, n_lo=4, n_hi=7, r_lo=0.08, r_hi=0.2))
    return Domain(boundary, holes)


def oracle_membership(domain: Domain, pts: np.ndarray) -> np.ndarray:
    """Domain membership via matplotlib (independent of mdpkit's ray caster)."""
    inside = MplPath(np.asarray(domain.boundary)).contains_points(pts)
    for hole in domain.holes:
        inside &= ~MplPath(np.asarray(hole)).contains_points(pts)
    return inside


def oracle_grid_points(domain: Domain, spacing: float) -> np.ndarray:
    """All grid points of pitch `spacing` that the oracle places inside E."""
    x0, y0, x1, y1 = domain.bbox
    xs = np.arange(x0, x1 + spacing, spacing)
    ys = np.arange(y0, y1 + spacing, spacing)
    gx, gy = np.meshgrid(xs, ys)
    pts = np.stack([gx.ravel(), gy.ravel()], axis=1)
    return pts[oracle_membership(domain, pts)]


def oracle_min_dist_to_points(pts: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Min distance from each pt to the center set, by raw broadcasting."""
    d2 = ((pts[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    return np.sqrt(d2.min(axis=1))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20250810)
