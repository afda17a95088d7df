"""Grids, radial profiles, weighted quadrature and the radial differential operator.

Everything here works on even scalar functions sampled on a symmetric 1-D grid.
The half-line weight ``|t|**(d-1)`` is evaluated analytically at the nodes, so
no singular quadrature rule is needed (the weight is continuous for d >= 2).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import EvennessError, InvalidParameterError, ResolutionError

__all__ = [
    "Grid1D",
    "RadialProfile",
    "RadialField",
    "sphere_area",
    "ball_volume",
    "weighted_lp_norm",
    "lp_norm_rd",
    "radial_laplacian",
    "radial_gradient_identity_check",
    "GradientIdentityReport",
]


def sphere_area(d: int) -> float:
    """Surface area of the unit sphere in R^d (omega_{d-1} = 2 pi^{d/2}/Gamma(d/2))."""
    if d < 1:
        raise InvalidParameterError(f"dimension must be >= 1, got {d}")
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def ball_volume(d: int) -> float:
    """Volume of the unit ball in R^d."""
    return sphere_area(d) / d


def _trapezoid(y: np.ndarray, x: np.ndarray) -> float:
    f = getattr(np, "trapezoid", None) or np.trapz
    return float(f(y, x))


@dataclass(frozen=True)
class Grid1D:
    """Strictly increasing 1-D node set, symmetric about 0 when ``even`` is set.

    ``kind`` is a tag in {"uniform-dyadic", "log-spaced", "composite"}; it
    records how the grid was generated and is round-tripped through the
    textual descriptor format.
    """

    nodes: np.ndarray
    kind: str = "composite"
    even: bool = True
    descriptor: str = field(default="", compare=False)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        if nodes.ndim != 1 or nodes.size < 2:
            raise InvalidParameterError("grid needs at least 2 nodes")
        if not np.all(np.diff(nodes) > 0):
            raise InvalidParameterError("grid nodes must be strictly increasing")
        if self.even:
            if not np.array_equal(nodes, -nodes[::-1]):
                raise EvennessError("even-flagged grid must be closed under negation")

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    @property
    def positive(self) -> np.ndarray:
        """Nodes with t >= 0."""
        return self.nodes[self.nodes >= 0.0]

    def spacing_near(self, t: float) -> float:
        i = int(np.searchsorted(self.nodes, t))
        i = min(max(i, 1), self.size - 1)
        return float(self.nodes[i] - self.nodes[i - 1])

    @staticmethod
    def uniform(h: float, T: float) -> "Grid1D":
        """Uniform symmetric grid on [-T, T] with spacing h (node at 0)."""
        if h <= 0 or T <= 0:
            raise InvalidParameterError("need h > 0 and T > 0")
        n = int(round(T / h))
        half = np.arange(1, n + 1) * h
        nodes = np.concatenate([-half[::-1], [0.0], half])
        return Grid1D(nodes, kind="uniform-dyadic",
                      descriptor=f"uniform:h={h:g},T={T:g}")

    @staticmethod
    def log_spaced(a: float, b: float, n: int) -> "Grid1D":
        """Geometrically spaced nodes on [a, b] mirrored to [-b, -a]; no node at 0."""
        if not (0 < a < b) or n < 2:
            raise InvalidParameterError("need 0 < a < b and n >= 2")
        half = np.geomspace(a, b, n)
        nodes = np.concatenate([-half[::-1], half])
        return Grid1D(nodes, kind="log-spaced",
                      descriptor=f"log:a={a:g},b={b:g},n={n}")

    @staticmethod
    def composite(J: int = 10, h: float = 0.01, T: float = 8.0,
                  n_per: int = 16) -> "Grid1D":
        """Dyadic refinement on (0, 1] (levels j = 0..J) plus a uniform tail on [1, T].

        Level j places ``n_per`` nodes on (2^{-j-1}, 2^{-j}], so the local
        spacing tracks the dyadic scale; the phenomena at the origin stay
        resolved while the tail keeps a fixed budget.
        """
        if J < 0 or n_per < 2 or h <= 0 or T < 1:
            raise InvalidParameterError("bad composite grid parameters")
        parts = [np.array([0.0, 2.0 ** (-J - 1)])]
        for j in range(J, -1, -1):
            lo, hi = 2.0 ** (-j - 1), 2.0 ** (-j)
            parts.append(np.linspace(lo, hi, n_per + 1)[1:])
        if T > 1:
            n_tail = int(round((T - 1) / h))
            parts.append(1.0 + np.arange(1, n_tail + 1) * h)
        half = np.unique(np.concatenate(parts))
        nodes = np.concatenate([-half[:0:-1], half])
        return Grid1D(nodes, kind="composite",
                      descriptor=f"dyadic:J={J};uniform:h={h:g},T={T:g}")

    @staticmethod
    def from_descriptor(desc: str) -> "Grid1D":
        """Regenerate a grid from a descriptor like "dyadic:J=10;uniform:h=0.01,T=256"."""
        desc = desc.strip()
        kv = dict(re.findall(r"([A-Za-z_]+)=([0-9.eE+-]+)", desc))
        if desc.startswith("dyadic:") and "uniform" in desc:
            return Grid1D.composite(J=int(kv["J"]), h=float(kv["h"]), T=float(kv["T"]),
                                    n_per=int(kv.get("n_per", 16)))
        if desc.startswith("uniform:"):
            return Grid1D.uniform(h=float(kv["h"]), T=float(kv["T"]))
        if desc.startswith("log:"):
            return Grid1D.log_spaced(a=float(kv["a"]), b=float(kv["b"]), n=int(kv["n"]))
        raise InvalidParameterError(f"cannot parse grid descriptor {desc!r}")


@dataclass(frozen=True)
class RadialProfile:
    """An even scalar function sampled on an even-flagged grid.

    This is the object the trace and extension operators act on; it also
    carries the optional dimension context for the weight ``|t|**(d-1)``.
    """

    grid: Grid1D
    values: np.ndarray
    dim_context: Optional[int] = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.shape != self.grid.nodes.shape:
            raise InvalidParameterError("values must align with grid nodes")
        if not np.all(np.isfinite(values)):
            raise InvalidParameterError("profile values must be finite")
        if self.grid.even and not np.array_equal(values, values[::-1]):
            raise EvennessError("profile values must be even across paired nodes")

    @staticmethod
    def from_callable(f: Callable[[np.ndarray], np.ndarray], grid: Grid1D,
                      d: Optional[int] = None) -> "RadialProfile":
        """Sample ``f`` at |nodes| (evaluation through |t| keeps evenness exact)."""
        vals = np.asarray(f(np.abs(grid.nodes)), dtype=float)
        return RadialProfile(grid, vals, dim_context=d)

    def __call__(self, t):
        """Piecewise-linear evaluation at |t| (zero outside the grid)."""
        t = np.abs(np.asarray(t, dtype=float))
        return np.interp(t, self.grid.nodes, self.values, left=0.0, right=0.0)

    def scaled(self, c: float) -> "RadialProfile":
        return replace(self, values=c * self.values)

    def __add__(self, other: "RadialProfile") -> "RadialProfile":
        if other.grid is not self.grid and not np.array_equal(
                other.grid.nodes, self.grid.nodes):
            raise InvalidParameterError("profiles live on different grids")
        return replace(self, values=self.values + other.values)

    def __sub__(self, other: "RadialProfile") -> "RadialProfile":
        return self + other.scaled(-1.0)

    def restrict_dim(self, d: int) -> "RadialProfile":
        return replace(self, dim_context=d)

    def to_csv(self, path) -> None:
        arr = np.column_stack([self.grid.nodes, self.values])
        np.savetxt(path, arr, delimiter=",", header="t,value", comments="")

    @staticmethod
    def from_csv(path, d: Optional[int] = None) -> "RadialProfile":
        arr = np.loadtxt(path, delimiter=",", skiprows=1)
        grid = Grid1D(arr[:, 0])
        return RadialProfile(grid, arr[:, 1], dim_context=d)


@dataclass(frozen=True)
class RadialField:
    """A rotation-invariant function on R^d realized as profile-composed-with-norm."""

    profile: RadialProfile
    d: int
    evaluator: Optional[Callable[[np.ndarray], np.ndarray]] = None
    provenance: str = "profile"

    def __post_init__(self):
        if self.d < 2:
            raise InvalidParameterError(f"dimension must be >= 2, got {self.d}")

    def __call__(self, x: np.ndarray) -> np.ndarray:
        """Evaluate at points of shape (..., d)."""
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        if self.evaluator is not None:
            return self.evaluator(r)
        return self.profile(r)

    def check_rotation_invariance(self, rng=None, n: int = 100,
                                  tol: float = 0.0) -> float:
        """Max |f(Qx) - f(x)| over random rotations Q and random points x."""
        rng = np.random.default_rng(rng)
        radius = float(self.profile.grid.nodes[-1])
        pts = rng.uniform(-radius, radius, size=(n, self.d))
        worst = 0.0
        for _ in range(n):
            q, _ = np.linalg.qr(rng.standard_normal((self.d, self.d)))
            diff = np.abs(self(pts @ q.T) - self(pts))
            worst = max(worst, float(diff.max()))
        if tol and worst > tol:
            raise EvennessError(f"rotation invariance violated: {worst:g} > {tol:g}")
        return worst


def _resolve_dim(g: RadialProfile, d: Optional[int]) -> int:
    if d is None:
        d = g.dim_context
    if d is None:
        raise InvalidParameterError("dimension d required (profile has no dim_context)")
    if d < 1:
        raise InvalidParameterError(f"dimension must be >= 1, got {d}")
    return int(d)


def weighted_lp_norm(g: RadialProfile, p: float, d: Optional[int] = None) -> float:
    """(integral_R |g(t)|^p |t|^{d-1} dt)^{1/p} by composite trapezoid on the grid.

    p = inf returns max over nodes (the weight is ignored there); this is a
    lower bound of the true essential sup.
    """
    d = _resolve_dim(g, d)
    if not p > 0:
        raise InvalidParameterError(f"p must be > 0, got {p}")
    if math.isinf(p):
        return float(np.max(np.abs(g.values)))
    t = g.grid.nodes
    integrand = np.abs(g.values) ** p * np.abs(t) ** (d - 1)
    return _trapezoid(integrand, t) ** (1.0 / p)


def lp_norm_rd(f: RadialField, p: float) -> float:
    """L_p(R^d) norm of a radial field via the exact half-line reduction.

    Uses ||f||_p^p = omega_{d-1} * integral_0^inf |g(r)|^p r^{d-1} dr; no
    d-dimensional quadrature is performed.
    """
    if not p > 0 or math.isinf(p):
        raise InvalidParameterError("p must be finite and > 0")
    if f.d < 2:
        raise InvalidParameterError("dimension must be >= 2")
    w = weighted_lp_norm(f.profile, p, f.d)
    return (sphere_area(f.d) / 2.0) ** (1.0 / p) * w


def _derivatives_123(t: np.ndarray, v: np.ndarray):
    """First and second derivatives by 3-point nonuniform finite differences."""
    n = t.size
    d1 = np.empty(n)
    d2 = np.empty(n)
    hm = t[1:-1] - t[:-2]
    hp = t[2:] - t[1:-1]
    d1[1:-1] = (v[2:] * hm ** 2 - v[:-2] * hp ** 2
                + v[1:-1] * (hp ** 2 - hm ** 2)) / (hm * hp * (hm + hp))
    d2[1:-1] = 2.0 * (v[2:] * hm + v[:-2] * hp - v[1:-1] * (hm + hp)) \
        / (hm * hp * (hm + hp))
    d1[0], d1[-1] = d1[1], d1[-2]
    d2[0], d2[-1] = d2[1], d2[-2]
    return d1, d2


def radial_laplacian(g: RadialProfile, d: Optional[int] = None) -> RadialProfile:
    """The radial Laplacian g'' + (d-1)/r * g' as an even profile.

    At r = 0 the even reflection forces g'(0) = 0 and the singular term is
    assigned its limit (d-1) * g''(0), so the value at the origin is d * g''(0).
    """
    d = _resolve_dim(g, d)
    t = g.grid.nodes
    if t.size < 3:
        raise ResolutionError("need at least 3 nodes to differentiate twice")
    d1, d2 = _derivatives_123(t, g.values)
    out = np.empty_like(d1)
    nz = t != 0.0
    out[nz] = d2[nz] + (d - 1) * d1[nz] / t[nz]
    if np.any(~nz):
        out[~nz] = d * d2[~nz]
    if g.grid.even:
        out = 0.5 * (out + out[::-1])
    return RadialProfile(g.grid, out, dim_context=d)


@dataclass(frozen=True)
class GradientIdentityReport:
    lhs_tensor: float
    rhs_radial: float

    @property
    def ratio(self) -> float:
        if self.lhs_tensor == 0.0 and self.rhs_radial == 0.0:
            return 1.0
        return self.lhs_tensor / self.rhs_radial


def radial_gradient_identity_check(g: RadialProfile, p: float, d: Optional[int] = None,
                                   evaluator: Optional[Callable] = None,
                                   n_grid: Optional[int] = None,
                                   fd_step: float = 1e-5) -> GradientIdentityReport:
    """Compare ||grad f||_{L_p(R^d)} computed two independent ways.

    lhs: tensor-grid quadrature of the finite-difference gradient of
    f = ext g (the d-dimensional route).  rhs: the exact radial reduction
    c_d * ||g'||_{L_p(|t|^{d-1})}.  For compactly supported smooth g the
    ratio must be 1 up to discretization error.

    When ``evaluator`` (a callable on radii) is supplied both routes
    differentiate it directly, which keeps the comparison at quadrature
    accuracy instead of interpolation accuracy.
    """
    d = _resolve_dim(g, d)
    if p < 1:
        raise InvalidParameterError("p >= 1 required (Sobolev regime)")
    if d not in (2, 3):
        raise InvalidParameterError("tensor oracle implemented for d in {2, 3}")
    if n_grid is None:
        n_grid = 1000 if d == 2 else 240

    t = g.grid.nodes
    if evaluator is None:
        d1, _ = _derivatives_123(t, g.values)
        gprime = 0.5 * (np.abs(d1) + np.abs(d1[::-1]))
    else:
        r = np.abs(t)
        gprime = np.abs(evaluator(r + fd_step) - evaluator(np.maximum(r - fd_step, 0.0))
                        ) / (2.0 * fd_step)
        gprime = 0.5 * (gprime + gprime[::-1])
    gp = RadialProfile(g.grid, gprime, dim_context=d)
    rhs = (sphere_area(d) / 2.0) ** (1.0 / p) * weighted_lp_norm(gp, p, d)

    support = np.abs(t[np.abs(g.values) > 1e-13])
    if support.size == 0:
        return GradientIdentityReport(0.0, 0.0)
    feval = evaluator if evaluator is not None else g
    T = float(support.max()) * 1.05 + 0.25
    axis = np.linspace(-T, T, n_grid)
    h = axis[1] - axis[0]

    # Slab over the first coordinate to bound memory at n^(d-1) per step.
    mesh_rest = np.meshgrid(*([axis] * (d - 1)), indexing="ij")
    rest_sq = sum(m ** 2 for m in mesh_rest)
    total = 0.0
    for x1 in axis:
        r0 = np.sqrt(x1 ** 2 + rest_sq)
        grad_sq = ((feval(np.sqrt((x1 + fd_step) ** 2 + rest_sq))
                    - feval(np.sqrt((x1 - fd_step) ** 2 + rest_sq)))
                   / (2.0 * fd_step)) ** 2
        for i, m in enumerate(mesh_rest):
            other = rest_sq - m ** 2
            di = (feval(np.sqrt(x1 ** 2 + other + (m + fd_step) ** 2))
                  - feval(np.sqrt(x1 ** 2 + other + (m - fd_step) ** 2))
                  ) / (2.0 * fd_step)
            grad_sq += di ** 2
        total += float(np.sum(np.sqrt(grad_sq) ** p))
    lhs = (total * h ** d) ** (1.0 / p)
    return GradientIdentityReport(float(lhs), float(rhs))
