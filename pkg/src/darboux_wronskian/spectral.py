"""
Dirichlet eigenvalues of singular Schrodinger potentials on a finite interval.

The primary method is two-sided Numerov shooting.  Each side starts a small
offset away from its wall with the recessive power law ``d**a`` read off the
centrifugal coefficient ``lambda = a(a-1)`` of the potential, so strongly
singular walls (``lambda > 3/4``) behave like Dirichlet conditions without any
special casing.  Eigenvalues are bracketed with a Sturm count (nodes of the
two half-solutions plus one matching term) and polished with Brent's method
on the discrete Casoratian, which vanishes exactly at eigenvalues of the
Numerov recurrence.

A dense finite-difference matrix route is kept as a lower-accuracy second
opinion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numba
import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

__all__ = [
    "SolverConfig",
    "SpectralResult",
    "IsospectralReport",
    "SpectralError",
    "solve_dirichlet",
    "check_isospectral",
    "node_positions",
    "richardson_check",
    "wall_exponent",
]


class SpectralError(RuntimeError):
    """Eigenvalue search failed to converge."""


@dataclass(frozen=True)
class SolverConfig:
    grid_points: int = 20000
    interval: tuple = (0.0, math.pi / 2)
    wall_offset: float | None = None
    method: str = "numerov"
    eigen_count: int = 4
    tolerance: float = 1e-6
    wall_exponents: tuple | None = None
    max_iter: int = 200

    def __post_init__(self):
        lo, hi = self.interval
        if not hi > lo:
            raise ValueError("interval must have hi > lo")
        if self.grid_points < 1000:
            raise ValueError("grid_points must be >= 1000")
        if self.method not in ("numerov", "fd"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.eigen_count < 1:
            raise ValueError("eigen_count must be >= 1")
        eps = self.epsilon
        if not 0 < eps < 100 * (hi - lo) / self.grid_points:
            raise ValueError("wall_offset must satisfy 0 < eps < 100 (hi - lo) / grid_points")

    @property
    def epsilon(self) -> float:
        lo, hi = self.interval
        if self.wall_offset is None:
            return 4.0 * (hi - lo) / self.grid_points
        return float(self.wall_offset)

    def to_dict(self) -> dict:
        return {
            "grid_points": self.grid_points,
            "interval": [float(self.interval[0]), float(self.interval[1])],
            "wall_offset": self.epsilon,
            "method": self.method,
            "eigen_count": self.eigen_count,
            "tolerance": self.tolerance,
            "wall_exponents": list(self.wall_exponents) if self.wall_exponents else None,
        }


@dataclass
class SpectralResult:
    eigenvalues: list
    node_counts: list
    residuals: list
    config_echo: SolverConfig
    wall_exponents: tuple = ()

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(e) for e in self.eigenvalues],
            "node_counts": [int(n) for n in self.node_counts],
            "residuals": [float(r) for r in self.residuals],
            "wall_exponents": [float(a) for a in self.wall_exponents],
            "config": self.config_echo.to_dict(),
        }


# -- Numerov kernels ------------------------------------------------------


@numba.njit(cache=True)
def _numerov_sweep(f, h2, y0, y1, start, stop, step):
    """Integrate psi'' = f psi from indices start, start+step towards stop (inclusive)."""
    n = f.shape[0]
    y = np.zeros(n)
    y[start] = y0
    y[start + step] = y1
    c = h2 / 12.0
    i = start + step
    while i != stop:
        nxt = i + step
        prv = i - step
        y[nxt] = (2.0 * (1.0 + 5.0 * c * f[i]) * y[i] - (1.0 - c * f[prv]) * y[prv]) / (1.0 - c * f[nxt])
        if abs(y[nxt]) > 1e250:
            # renormalise the partial solution; only shape and sign matter
            j = start
            while j != nxt + step:
                y[j] *= 1e-250
                j += step
        i = nxt
    return y


@numba.njit(cache=True)
def _sign_changes(y, lo, hi):
    count = 0
    last = 0.0
    for i in range(lo, hi + 1):
        v = y[i]
        if v != 0.0:
            if last != 0.0 and (v > 0.0) != (last > 0.0):
                count += 1
            last = v
    return count


@dataclass
class _Shooter:
    x: np.ndarray
    v: np.ndarray
    h: float
    match: int
    left: tuple   # (a, lambda, v0) power-law data at each wall
    right: tuple
    lo: float
    hi: float

    @classmethod
    def build(cls, potential: Callable, cfg: SolverConfig) -> "_Shooter":
        lo, hi = cfg.interval
        eps = cfg.epsilon
        x = np.linspace(lo + eps, hi - eps, cfg.grid_points)
        v = np.asarray(potential(x), dtype=float)
        if not np.all(np.isfinite(v)):
            raise SpectralError("potential is not finite on [lo + eps, hi - eps]")
        h = x[1] - x[0]
        exps = cfg.wall_exponents or (None, None)
        left = _wall_data(potential, lo, +1, eps, exps[0])
        right = _wall_data(potential, hi, -1, eps, exps[1])
        return cls(x, v, h, cfg.grid_points // 2, left, right, lo, hi)

    def _start(self, wall, d0, d1, energy):
        a, _, v0 = wall
        c2 = (v0 - energy) / (4.0 * a + 2.0)
        return d0 ** a * (1 + c2 * d0 * d0), d1 ** a * (1 + c2 * d1 * d1)

    def sweeps(self, energy: float):
        f = self.v - energy
        n = self.x.shape[0]
        d = self.x[0] - self.lo
        y0, y1 = self._start(self.left, d, d + self.h, energy)
        yl = _numerov_sweep(f, self.h * self.h, y0, y1, 0, self.match + 1, 1)
        d = self.hi - self.x[-1]
        z0, z1 = self._start(self.right, d, d + self.h, energy)
        yr = _numerov_sweep(f, self.h * self.h, z0, z1, n - 1, self.match, -1)
        return f, yl, yr

    def count_and_mismatch(self, energy: float):
        f, yl, yr = self.sweeps(energy)
        j = self.match
        c = self.h * self.h / 12.0
        cj, cj1 = 1.0 - c * f[j], 1.0 - c * f[j + 1]
        ul0, ul1 = cj * yl[j], cj1 * yl[j + 1]
        ur0, ur1 = cj * yr[j], cj1 * yr[j + 1]
        cas = ul1 * ur0 - ul0 * ur1
        n_left = _sign_changes(yl, 0, j)
        n_right = _sign_changes(yr, j, self.x.shape[0] - 1)
        theta = 1 if cas * ul0 * ur0 < 0 else 0
        scale = (abs(ul0) + abs(ul1)) * (abs(ur0) + abs(ur1))
        return n_left + n_right + theta, cas / scale

    def eigenfunction(self, energy: float) -> np.ndarray:
        _, yl, yr = self.sweeps(energy)
        j = self.match
        k = j if abs(yr[j]) >= abs(yr[j + 1]) else j + 1
        psi = np.empty_like(yl)
        psi[: j + 1] = yl[: j + 1]
        psi[j + 1:] = yr[j + 1:] * (yl[k] / yr[k])
        return psi / np.max(np.abs(psi))


def _wall_data(potential, wall, direction, eps, exponent):
    d1, d2 = eps, 2 * eps
    v1 = float(potential(np.array([wall + direction * d1]))[0])
    v2 = float(potential(np.array([wall + direction * d2]))[0])
    lam = (v1 - v2) / (1 / d1 ** 2 - 1 / d2 ** 2)
    v0 = v1 - lam / d1 ** 2
    if exponent is None:
        exponent = wall_exponent(lam)
    return float(exponent), lam, v0


def wall_exponent(centrifugal: float) -> float:
    """Recessive exponent ``a`` with ``a(a-1) = lambda``."""
    if centrifugal < -0.25:
        raise SpectralError("attractive wall singularity stronger than -1/(4 d^2) is not supported")
    return 0.5 + math.sqrt(0.25 + centrifugal)


def _numerov_shooter(potential, cfg):
    return _Shooter.build(potential, cfg)


def _find_level(sh: _Shooter, index: int, e_lo: float, e_hi: float, cfg: SolverConfig):
    n_lo, _ = sh.count_and_mismatch(e_lo)
    if n_lo > index:
        raise SpectralError(f"lower bracket {e_lo} already above level {index}")
    a, b = e_lo, e_hi
    for _ in range(cfg.max_iter):
        mid = 0.5 * (a + b)
        n_mid, _ = sh.count_and_mismatch(mid)
        if n_mid <= index:
            a = mid
        else:
            b = mid
        na, fa = sh.count_and_mismatch(a)
        nb, fb = sh.count_and_mismatch(b)
        if na == index and nb == index + 1 and fa * fb < 0:
            break
        if b - a < 1e-13 * max(1.0, abs(b)):
            break
    else:
        raise SpectralError(f"no bracket for level {index} in [{e_lo}, {e_hi}] "
                            f"(counts {n_lo}..{sh.count_and_mismatch(e_hi)[0]})")
    fa = sh.count_and_mismatch(a)[1]
    fb = sh.count_and_mismatch(b)[1]
    if fa * fb > 0:
        return 0.5 * (a + b), (a, b)
    root = brentq(lambda e: sh.count_and_mismatch(e)[1], a, b, xtol=1e-14, rtol=1e-15, maxiter=200)
    return root, (a, b)


def _solve_numerov(potential, cfg: SolverConfig) -> SpectralResult:
    sh = _numerov_shooter(potential, cfg)
    e_lo = float(np.min(sh.v)) - 1.0
    count_lo = sh.count_and_mismatch(e_lo)[0]
    if count_lo != 0:
        raise SpectralError(f"Sturm count {count_lo} below the potential minimum")
    span = max(1.0, abs(e_lo))
    e_hi = e_lo + span
    for _ in range(cfg.max_iter):
        if sh.count_and_mismatch(e_hi)[0] >= cfg.eigen_count:
            break
        span *= 2.0
        e_hi = e_lo + span
    else:
        raise SpectralError(f"could not bracket {cfg.eigen_count} levels below {e_hi}")
    eigenvalues, nodes, residuals = [], [], []
    lower = e_lo
    for i in range(cfg.eigen_count):
        e, _ = _find_level(sh, i, lower, e_hi, cfg)
        psi = sh.eigenfunction(e)
        eigenvalues.append(e)
        nodes.append(int(_sign_changes(psi, 0, psi.shape[0] - 1)))
        residuals.append(abs(sh.count_and_mismatch(e)[1]))
        lower = e
    for i, n in enumerate(nodes):
        if n != i:
            raise SpectralError(f"oscillation theorem violated: level {i} has {n} nodes")
    return SpectralResult(eigenvalues, nodes, residuals, cfg, (sh.left[0], sh.right[0]))


def _solve_fd(potential, cfg: SolverConfig) -> SpectralResult:
    lo, hi = cfg.interval
    n = cfg.grid_points
    x = np.linspace(lo, hi, n + 1)[1:-1]
    h = (hi - lo) / n
    v = np.asarray(potential(x), dtype=float)
    diag = 2.0 / h ** 2 + v
    off = np.full(x.shape[0] - 1, -1.0 / h ** 2)
    vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, cfg.eigen_count - 1))
    nodes = [int(_sign_changes(vecs[:, i].copy(), 0, x.shape[0] - 1)) for i in range(cfg.eigen_count)]
    res = []
    for i in range(cfg.eigen_count):
        u = vecs[:, i]
        hu = diag * u
        hu[1:] += off * u[:-1]
        hu[:-1] += off * u[1:]
        res.append(float(np.linalg.norm(hu - vals[i] * u)))
    return SpectralResult(list(vals), nodes, res, cfg, ())


def solve_dirichlet(potential: Callable, config: SolverConfig | None = None) -> SpectralResult:
    """Lowest ``config.eigen_count`` Dirichlet eigenvalues of ``-d2/dx2 + V``."""
    cfg = config or SolverConfig()
    if cfg.method == "fd":
        return _solve_fd(potential, cfg)
    return _solve_numerov(potential, cfg)


def richardson_check(potential: Callable, config: SolverConfig) -> float:
    """Largest eigenvalue change when the grid step is halved."""
    a = solve_dirichlet(potential, config).eigenvalues
    fine = replace(config, grid_points=2 * config.grid_points,
                   wall_offset=None if config.wall_offset is None else config.wall_offset)
    b = solve_dirichlet(potential, fine).eigenvalues
    return float(np.max(np.abs(np.subtract(a, b))))


def node_positions(potential: Callable, eigen_index: int, config: SolverConfig) -> list:
    """Interior zeros of the ``eigen_index``-th eigenfunction."""
    if not 0 <= eigen_index < config.eigen_count:
        raise ValueError("eigen_index must be < eigen_count")
    result = _solve_numerov(potential, replace(config, method="numerov"))
    sh = _numerov_shooter(potential, config)
    psi = sh.eigenfunction(result.eigenvalues[eigen_index])
    x = sh.x
    out = []
    for i in range(len(psi) - 1):
        a, b = psi[i], psi[i + 1]
        if a != 0 and b != 0 and (a > 0) != (b > 0):
            out.append(float(x[i] - a * (x[i + 1] - x[i]) / (b - a)))
    return out


@dataclass
class IsospectralReport:
    pairs: list
    max_discrepancy: float
    count_mismatch: bool
    deleted_levels: int
    shift: float
    within_tolerance: bool = False

    def to_dict(self) -> dict:
        return {
            "pairs": [[float(a), float(b)] for a, b in self.pairs],
            "max_discrepancy": float(self.max_discrepancy),
            "count_mismatch": self.count_mismatch,
            "deleted_levels": self.deleted_levels,
            "shift": float(self.shift),
            "within_tolerance": self.within_tolerance,
        }


def check_isospectral(pot_a: Callable, pot_b: Callable, shift: float = 0.0,
                      config: SolverConfig | None = None, delete_levels: int = 1,
                      config_b: SolverConfig | None = None) -> IsospectralReport:
    """Pair levels of A (after deleting its lowest ``delete_levels``) with ``B + shift``."""
    cfg = config or SolverConfig()
    cfg_b = config_b or cfg
    ra = solve_dirichlet(pot_a, replace(cfg, eigen_count=cfg.eigen_count + delete_levels))
    rb = solve_dirichlet(pot_b, cfg_b)
    ea = ra.eigenvalues[delete_levels:]
    eb = [e + shift for e in rb.eigenvalues]
    k = min(len(ea), len(eb))
    pairs = list(zip(ea[:k], eb[:k]))
    disc = max((abs(a - b) for a, b in pairs), default=0.0)
    return IsospectralReport(pairs, disc, len(ea) != len(eb), delete_levels, shift,
                             disc <= max(cfg.tolerance, cfg_b.tolerance))
