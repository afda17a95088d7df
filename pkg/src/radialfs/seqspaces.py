"""The four adapted sequence-space quasi-norms on doubly indexed coefficients.

Coefficients s_{j,k} carry level/annulus semantics: level j sets the dyadic
scale 2^{-j}, annulus k selects 2^{-j}k <= |t| <= 2^{-j}(k+1).

The b-norms are the displayed weighted ell-space formulas.  The f-norms are
realized with mass-normalized annulus indicators: the indicator of annulus
(j, k) is scaled so that its weighted measure is exactly 2^{-jd} (1+k)^{d-1}
(the b-space weight) instead of the geometric value (2/d) 2^{-jd}
((k+1)^d - k^d).  The two differ by factors bounded between 1/2 and d, so
this is an equivalent quasi-norm, and it makes the identity b_{p,p,d} =
f_{p,p,d} exact rather than merely up-to-constants.  Outer sums over levels
are accumulated in log-space, so large-J sweeps with big 2^{j(s-d/p)q}
factors cannot overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from scipy.special import logsumexp

from .core import Grid1D, ball_volume
from .errors import InvalidParameterError, ResolutionError
from .spaces import SpaceParams

__all__ = ["CoefficientGrid", "AnnulusIndicator",
           "seq_norm_bspqd", "seq_norm_fspqd",
           "seq_norm_bpqd", "seq_norm_fpqd"]

LN2 = math.log(2.0)


@dataclass
class CoefficientGrid:
    """Sparse storage for coefficients s_{j,k}, j >= 0, k >= 0; absent = 0."""

    data: Dict[Tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (j, k), v in self.data.items():
            if j < 0 or k < 0:
                raise InvalidParameterError("indices must satisfy j >= 0, k >= 0")
            if v != 0.0:
                clean[(int(j), int(k))] = float(v)
        self.data = clean

    @staticmethod
    def single(j: int, k: int, value: float = 1.0) -> "CoefficientGrid":
        return CoefficientGrid({(j, k): value})

    @staticmethod
    def from_dense(arr: np.ndarray) -> "CoefficientGrid":
        arr = np.asarray(arr, dtype=float)
        js, ks = np.nonzero(arr)
        return CoefficientGrid({(int(j), int(k)): float(arr[j, k])
                                for j, k in zip(js, ks)})

    @staticmethod
    def random(rng, J: int, K: int, density: float = 0.3,
               scale: float = 1.0) -> "CoefficientGrid":
        mask = rng.random((J + 1, K + 1)) < density
        vals = rng.standard_normal((J + 1, K + 1)) * scale
        return CoefficientGrid.from_dense(np.where(mask, vals, 0.0))

    def get(self, j: int, k: int) -> float:
        return self.data.get((j, k), 0.0)

    def set(self, j: int, k: int, value: float) -> None:
        if value == 0.0:
            self.data.pop((j, k), None)
        else:
            self.data[(int(j), int(k))] = float(value)

    @property
    def J(self) -> int:
        return max((j for j, _ in self.data), default=0)

    @property
    def K(self) -> int:
        return max((k for _, k in self.data), default=0)

    def items(self) -> Iterable[Tuple[Tuple[int, int], float]]:
        return self.data.items()

    def __len__(self) -> int:
        return len(self.data)

    def scaled(self, c: float) -> "CoefficientGrid":
        return CoefficientGrid({jk: c * v for jk, v in self.data.items()})

    def level_weighted(self, factor) -> "CoefficientGrid":
        """New grid with entries multiplied by factor(j)."""
        return CoefficientGrid({(j, k): factor(j) * v
                                for (j, k), v in self.data.items()})

    def truncated(self, J0: int) -> "CoefficientGrid":
        return CoefficientGrid({(j, k): v for (j, k), v in self.data.items()
                                if j <= J0})

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("j,k,value\n")
            for (j, k), v in sorted(self.data.items()):
                fh.write(f"{j},{k},{v!r}\n")

    @staticmethod
    def from_csv(path) -> "CoefficientGrid":
        out = {}
        with open(path) as fh:
            next(fh)
            for line in fh:
                j, k, v = line.strip().split(",")
                out[(int(j), int(k))] = float(v)
        return CoefficientGrid(out)


@dataclass(frozen=True)
class AnnulusIndicator:
    """chi^#_{j,k} on R (1-D) and the characteristic function of P_{j,k} (d-dim)."""

    j: int
    k: int

    @property
    def lo(self) -> float:
        return 2.0 ** (-self.j) * self.k

    @property
    def hi(self) -> float:
        return 2.0 ** (-self.j) * (self.k + 1)

    def chi_sharp(self, t) -> np.ndarray:
        """1 iff 2^{-j} k <= |t| <= 2^{-j}(k+1) (closed annulus in R)."""
        a = np.abs(np.asarray(t, dtype=float))
        return ((a >= self.lo) & (a <= self.hi)).astype(float)

    def chi_tilde(self, x) -> np.ndarray:
        """1 iff 2^{-j} k <= |x| < 2^{-j}(k+1) for points x in R^d."""
        r = np.linalg.norm(np.asarray(x, dtype=float), axis=-1)
        return ((r >= self.lo) & (r < self.hi)).astype(float)


def _check_pq(p: float, q: float, allow_p_inf: bool) -> None:
    if not (p > 0 and q > 0):
        raise InvalidParameterError("p and q must be > 0")
    if math.isinf(p) and not allow_p_inf:
        raise InvalidParameterError("p = inf not supported for this norm")


def _log_inner_lp(entries, p: float, d: int) -> Dict[int, float]:
    """Per-level log of (sum_k (1+k)^{d-1} |s_{j,k}|^p); p=inf gives log sup."""
    per_level: Dict[int, list] = {}
    for (j, k), v in entries:
        per_level.setdefault(j, []).append((k, abs(v)))
    out = {}
    for j, lst in per_level.items():
        if math.isinf(p):
            m = max(a for _, a in lst)
            out[j] = math.log(m) if m > 0 else -math.inf
        else:
            logs = [p * math.log(a) + (d - 1) * math.log1p(k)
                    for k, a in lst if a > 0]
            out[j] = logsumexp(logs) if logs else -math.inf
    return out


def _combine_levels(log_terms: Dict[int, float], q: float) -> float:
    """(sum_j exp(log_terms[j] * q))^{1/q} in log space; q=inf gives sup."""
    vals = [v for v in log_terms.values() if v > -math.inf]
    if not vals:
        return 0.0
    if math.isinf(q):
        return math.exp(max(vals))
    return math.exp(logsumexp([q * v for v in vals]) / q)


def seq_norm_bspqd(c: CoefficientGrid, params: SpaceParams) -> float:
    """(sum_j 2^{j(s-d/p)q} (sum_k (1+k)^{d-1} |s_{j,k}|^p)^{q/p})^{1/q}."""
    s, p, q, d = params.s, params.p, params.q, params.d
    _check_pq(p, q, allow_p_inf=True)
    inner = _log_inner_lp(c.items(), p, d)
    ip = 0.0 if math.isinf(p) else 1.0 / p
    log_terms = {j: j * (s - d * ip) * LN2 + ip * v if not math.isinf(p)
                 else j * s * LN2 + v
                 for j, v in inner.items()}
    return _combine_levels(log_terms, q)


def seq_norm_bpqd(c: CoefficientGrid, p: float, q: float, d: int) -> float:
    """As seq_norm_bspqd but without the 2^{j(s-d/p)} level weight."""
    _check_pq(p, q, allow_p_inf=True)
    inner = _log_inner_lp(c.items(), p, d)
    ip = 0.0 if math.isinf(p) else 1.0 / p
    log_terms = {j: ip * v if not math.isinf(p) else v for j, v in inner.items()}
    return _combine_levels(log_terms, q)


def _mass_ratio_log(j: int, k: int, d: int) -> float:
    """log of [2^{-jd}(1+k)^{d-1}] / [the geometric weighted annulus measure].

    Geometric measure of {2^{-j}k <= |t| <= 2^{-j}(k+1)} under |t|^{d-1} dt
    (both signs) is (2/d) 2^{-jd} ((k+1)^d - k^d).
    """
    geo = (2.0 / d) * ((k + 1.0) ** d - float(k) ** d)
    return (d - 1) * math.log1p(k) - math.log(geo)


def _f_norm_exact(entries, level_log_weight, p: float, q: float, d: int,
                  mass_log_extra: float) -> float:
    """Exact piecewise evaluation of an f-type norm.

    Integrand: (sum_{j,k} exp(q * level_log_weight(j)) shat_{j,k}^q chi_{j,k})^{p/q}
    against the weighted measure, with shat the mass-normalized coefficients.
    ``mass_log_extra`` shifts the log-measure of every elementary interval
    (used for the d-dimensional volume constant).
    """
    ent = [((j, k), abs(v)) for (j, k), v in entries if v != 0.0]
    if not ent:
        return 0.0
    los = np.array([2.0 ** (-j) * k for (j, k), _ in ent])
    his = np.array([2.0 ** (-j) * (k + 1) for (j, k), _ in ent])
    # shat in log space: |s| * (mass / geometric mass)^{1/p}
    log_shat = np.array([math.log(a) + _mass_ratio_log(j, k, d) / p
                         for (j, k), a in ent])
    log_lvl = np.array([level_log_weight(j) for (j, k), _ in ent])

    bps = np.unique(np.concatenate([los, his]))
    mids = 0.5 * (bps[:-1] + bps[1:])
    # membership matrix: interval i belongs to entry e
    member = (mids[:, None] >= los[None, :]) & (mids[:, None] <= his[None, :])
    # geometric weighted mass of each elementary interval: (2/d)(b^d - a^d)
    log_mass = np.log(2.0 / d) + np.log(bps[1:] ** d - bps[:-1] ** d) + mass_log_extra

    log_piece = np.where(member, log_lvl[None, :] + log_shat[None, :], -np.inf)
    if math.isinf(q):
        log_inner = np.max(log_piece, axis=1)
    else:
        log_inner = logsumexp(q * log_piece, axis=1) / q
    keep = log_inner > -np.inf
    if not np.any(keep):
        return 0.0
    log_total = logsumexp(p * log_inner[keep] + log_mass[keep])
    return math.exp(log_total / p)


def seq_norm_fspqd(c: CoefficientGrid, params: SpaceParams,
                   grid: Optional[Grid1D] = None) -> float:
    """|| (sum_j 2^{jsq} sum_k s_{j,k}^q chi^#_{j,k})^{1/q} | L_p(R, |t|^{d-1}) ||.

    Evaluated exactly on the elementary-interval lattice of the annuli
    present (the inner function is piecewise constant there); ``grid``, when
    given, is only checked for resolution, it is not used for quadrature.
    """
    s, p, q, d = params.s, params.p, params.q, params.d
    _check_pq(p, q, allow_p_inf=False)
    if grid is not None and len(c):
        finest = 2.0 ** (-c.J)
        if grid.spacing_near(0.0) > finest / 2.0:
            raise ResolutionError(
                f"grid spacing must be <= 2^-(J+1) = {finest / 2:g} to resolve level {c.J}")
    return _f_norm_exact(c.items(), lambda j: j * s * LN2, p, q, d, 0.0)


def seq_norm_fpqd(c: CoefficientGrid, p: float, q: float, d: int,
                  grid: Optional[Grid1D] = None) -> float:
    """|| (sum_j sum_k s_{j,k}^q 2^{jdq/p} chi~_{j,k})^{1/q} | L_p(R^d) ||.

    The d-dimensional L_p norm is realized by the exact radial reduction; the
    annulus volumes carry the mass normalization and the unit-ball constant.
    """
    _check_pq(p, q, allow_p_inf=False)
    if grid is not None and len(c):
        finest = 2.0 ** (-c.J)
        if grid.spacing_near(0.0) > finest / 2.0:
            raise ResolutionError(
                f"grid spacing must be <= 2^-(J+1) = {finest / 2:g} to resolve level {c.J}")
    return _f_norm_exact(c.items(), lambda j: j * (d / p) * LN2, p, q, d,
                         math.log(ball_volume(d)))
