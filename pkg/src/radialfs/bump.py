"""Smooth compactly supported templates used for atoms, cutoffs and partitions.

All shapes derive from the standard ``exp(-1/(1-u^2))`` bump and the
``exp(-1/u)`` smoothstep, so every template is C-infinity with explicitly
known support.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["bump", "bump_derivative_sup", "smoothstep", "psi_cutoff",
           "annulus_shape", "plateau_window"]


def bump(u):
    """C^inf bump on (-1, 1), normalized to bump(0) = 1, zero outside."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1.0
    ui = u[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - ui * ui))
    return out


@lru_cache(maxsize=None)
def bump_derivative_sup(n: int, resolution: int = 200001) -> float:
    """sup |bump^(n)| measured once on a dense grid (finite differences)."""
    u = np.linspace(-1.0, 1.0, resolution)
    v = bump(u)
    h = u[1] - u[0]
    for _ in range(n):
        v = np.gradient(v, h)
    return float(np.max(np.abs(v)))


def smoothstep(u):
    """C^inf monotone step: 0 for u <= 0, 1 for u >= 1."""
    u = np.asarray(u, dtype=float)

    def side(x):
        out = np.zeros_like(x)
        pos = x > 0.0
        out[pos] = np.exp(-1.0 / x[pos])
        return out

    a = side(u)
    b = side(1.0 - u)
    return a / (a + b)


def psi_cutoff(t):
    """The radial cut-off: 1 for |t| <= 1, 0 for |t| >= 3/2, smooth between."""
    t = np.abs(np.asarray(t, dtype=float))
    return smoothstep((1.5 - t) / 0.5)


def annulus_shape(t):
    """Even C^inf shape with support [-2,-1/2] u [1/2,2] and value 1 at |t| = 1.

    Plateau equal to 1 on 0.75 <= |t| <= 1.5, so collocation at |t| = 1 is exact.
    """
    t = np.abs(np.asarray(t, dtype=float))
    return smoothstep((t - 0.5) / 0.25) * smoothstep((2.0 - t) / 0.5)


def plateau_window(t, inner: float, outer: float, margin: float):
    """Even window: 1 on [inner, outer], 0 outside [inner-margin, outer+margin]."""
    t = np.abs(np.asarray(t, dtype=float))
    rising = smoothstep((t - (inner - margin)) / margin) if inner > 0 else 1.0
    falling = smoothstep(((outer + margin) - t) / margin)
    return rising * falling
