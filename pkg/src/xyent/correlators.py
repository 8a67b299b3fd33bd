"""Thermodynamic-limit spin correlators of the XY chain in a transverse field.

Everything is built from one family of fermionic contractions

    G_k = <A_l B_{l+k}>
        = (1/pi) int_0^pi [cos(k phi)(cos phi - h) - gamma sin(k phi) sin phi]
                           * tanh(Lambda / 2t) / Lambda  dphi,

    Lambda(phi) = sqrt(gamma^2 sin^2 phi + (h - cos phi)^2),

and every nonvanishing one-, two- and three-point correlator is a signed
determinant of a submatrix of ``g(l, m) = G_{m-l}`` (see ``SHAPES``).
The same shapes applied to a finite, non-Toeplitz contraction matrix give the
open-chain correlators used by :mod:`xyent.oracle`.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, fields
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .params import DEFAULT_QUAD, ModelParams, QuadratureConfig, TripleGeometry
from .quadrature import integrate_family

log = logging.getLogger(__name__)

CONDITION_WARN = 1e12

TWO_POINT_KINDS = ("XX", "YY", "ZZ")
THREE_POINT_KINDS = ("ZZZ", "XXZ", "ZXX", "XZX", "YYZ", "ZYY", "YZY")


def dispersion(phi, params: ModelParams):
    """Single-particle energy ``Lambda(phi)``; accepts scalars or arrays."""
    phi = np.asarray(phi, dtype=float)
    lam = np.hypot(params.gamma * np.sin(phi), params.h - np.cos(phi))
    return lam if lam.ndim else float(lam)


def _thermal_weight(phi: np.ndarray, params: ModelParams) -> np.ndarray:
    lam = dispersion(phi, params)
    out = np.zeros_like(lam)
    nz = lam > 0
    if params.t == 0:
        out[nz] = 1.0 / lam[nz]
    else:
        # lam / 2t overflows for subnormal t; tanh saturates to 1 either way.
        with np.errstate(over="ignore"):
            out[nz] = np.tanh(lam[nz] / (2.0 * params.t)) / lam[nz]
        out[~nz] = 1.0 / (2.0 * params.t)
    return out


def _g_family(ks: np.ndarray, params: ModelParams, quad: QuadratureConfig) -> np.ndarray:
    ks = np.asarray(ks, dtype=float)
    h, gamma = params.h, params.gamma

    def integrand(phi):
        w = _thermal_weight(phi, params) / math.pi
        kphi = np.outer(ks, phi)
        return (np.cos(kphi) * (np.cos(phi) - h) - gamma * np.sin(kphi) * np.sin(phi)) * w

    kmax = int(np.max(np.abs(ks))) if ks.size else 0
    # cos(k phi) has k half-periods on [0, pi]; start with a few panels per lobe.
    initial = max(16, 2 * kmax)
    values, _ = integrate_family(integrand, 0.0, math.pi, quad.abs_tol,
                                 max_panels=quad.max_subdivisions + initial,
                                 initial_panels=initial)
    return values


def g_k(k: int, params: ModelParams, quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Contraction ``G_k = <A_l B_{l+k}>`` of the infinite chain."""
    return float(_g_family(np.array([k]), params, quad)[0])


class GTable:
    """Values ``G_k`` for ``-kmax <= k <= kmax`` from one quadrature pass."""

    def __init__(self, params: ModelParams, kmax: int, values: np.ndarray):
        self.params = params
        self.kmax = kmax
        self.values = values
        self.values.setflags(write=False)

    def __getitem__(self, k: int) -> float:
        if abs(k) > self.kmax:
            raise KeyError(f"G_{k} outside table range +-{self.kmax}")
        return float(self.values[k + self.kmax])

    def contraction(self, a_sites: Sequence[int], b_sites: Sequence[int]) -> np.ndarray:
        """Matrix ``[<A_a B_b>] = [G_{b - a}]`` for the given site lists."""
        idx = np.subtract.outer(np.asarray(b_sites), np.asarray(a_sites)).T + self.kmax
        if idx.size and (idx.min() < 0 or idx.max() >= self.values.size):
            raise KeyError("requested contraction outside table range")
        return self.values[idx]


@lru_cache(maxsize=512)
def _cached_table(key: tuple, kmax: int, quad: QuadratureConfig) -> np.ndarray:
    h, gamma, t = (float.fromhex(x) for x in key)
    params = ModelParams(h, gamma, t)
    return _g_family(np.arange(-kmax, kmax + 1), params, quad)


def g_table(params: ModelParams, kmax: int,
            quad: QuadratureConfig = DEFAULT_QUAD) -> GTable:
    """Cached table of ``G_k`` for ``|k| <= kmax``.

    The cache is keyed by the exact bit patterns of ``(h, gamma, t)``; cached
    arrays are read-only so sharing them across threads is safe.
    """
    key = (float(params.h).hex(), float(params.gamma).hex(), float(params.t).hex())
    return GTable(params, kmax, _cached_table(key, kmax, quad))


# --- determinant shapes -----------------------------------------------------

Contraction = Callable[[Sequence[int], Sequence[int]], np.ndarray]


def _rng(a: int, b: int) -> list[int]:
    return list(range(a, b))


def shape(kind: str, sites: Sequence[int]) -> tuple[int, list[int], list[int]]:
    """Sign and A/B site lists such that ``<kind> = sign * det[<A_r B_c>]``.

    ``sites`` are absolute, strictly increasing chain positions. XXZ, YYZ, XZX
    and YZY follow the appendix matrices; the overall signs are the ones
    consistent with ``sigma^x_l = prod_{s<l} sigma^z_s A_l``.
    """
    kind = kind.upper()
    if kind == "Z":
        (i,) = sites
        return -1, [i], [i]
    if len(kind) == 2:
        i, j = sites
        if kind == "ZZ":
            return 1, [i, j], [i, j]
        if kind == "XX":
            return 1, _rng(i + 1, j + 1), _rng(i, j)
        if kind == "YY":
            return 1, _rng(i, j), _rng(i + 1, j + 1)
    if len(kind) == 3:
        i, j, k = sites
        if kind == "ZZZ":
            return -1, [i, j, k], [i, j, k]
        if kind == "XXZ":
            return -1, _rng(i + 1, j + 1) + [k], _rng(i, j) + [k]
        if kind == "YYZ":
            return -1, _rng(i, j) + [k], _rng(i + 1, j + 1) + [k]
        if kind == "ZXX":
            return -1, [i] + _rng(j + 1, k + 1), [i] + _rng(j, k)
        if kind == "ZYY":
            return -1, [i] + _rng(j, k), [i] + _rng(j + 1, k + 1)
        if kind == "XZX":
            return 1, [s for s in _rng(i + 1, k + 1) if s != j], [s for s in _rng(i, k) if s != j]
        if kind == "YZY":
            return 1, [s for s in _rng(i, k) if s != j], [s for s in _rng(i + 1, k + 1) if s != j]
    raise ValueError(f"unsupported correlator {kind!r} on sites {tuple(sites)}")


def determinant(m: np.ndarray) -> float:
    """LU determinant (LAPACK getrf, partial pivoting) with a conditioning note."""
    if m.shape == (0, 0):
        return 1.0
    if log.isEnabledFor(logging.DEBUG) and m.shape[0] > 1:
        cond = np.linalg.cond(m)
        if cond > CONDITION_WARN:
            log.debug("ill-conditioned %dx%d correlator matrix (cond %.3g)", *m.shape, cond)
    return float(np.linalg.det(m))


def evaluate(kind: str, sites: Sequence[int], contraction: Contraction) -> float:
    sign, rows, cols = shape(kind, sites)
    return sign * determinant(contraction(rows, cols))


# --- public correlator API --------------------------------------------------

def magnetization(params: ModelParams, quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """``<sigma^z> = -G_0``."""
    return -g_table(params, 0, quad)[0]


def two_point(kind: str, d: int, params: ModelParams,
              quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """``<sigma^a_i sigma^a_{i+d}>`` for ``kind`` in XX, YY, ZZ."""
    kind = kind.upper()
    if kind not in TWO_POINT_KINDS:
        raise ValueError(f"kind must be one of {TWO_POINT_KINDS}, got {kind!r}")
    if d < 1:
        raise ValueError(f"distance must be >= 1, got {d}")
    table = g_table(params, d + 1, quad)
    return evaluate(kind, (0, d), table.contraction)


def three_point(kind: str, geom: TripleGeometry, params: ModelParams,
                quad: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Three-spin correlator on sites ``(0, alpha, alpha + beta)``.

    ZXX and ZYY are taken from XXZ and YYZ with the distances swapped, using
    the reflection symmetry of the infinite chain.
    """
    kind = kind.upper()
    if kind not in THREE_POINT_KINDS:
        raise ValueError(f"kind must be one of {THREE_POINT_KINDS}, got {kind!r}")
    table = g_table(params, geom.gamma_dist + 1, quad)
    return _three_point(kind, geom, table.contraction)


def _three_point(kind: str, geom: TripleGeometry, contraction: Contraction) -> float:
    if kind in ("ZXX", "ZYY"):
        mirrored = TripleGeometry(geom.beta, geom.alpha)
        return evaluate(kind[1:] + "Z", mirrored.sites, contraction)
    return evaluate(kind, geom.sites, contraction)


@dataclass(frozen=True)
class CorrelatorSet:
    """All correlators of three spins that survive the parity symmetry.

    Two-point fields are labelled by the distance they span: ``alpha``
    (i, j), ``beta`` (j, k) and ``gamma`` (i, k).
    """

    z: float
    zz_alpha: float
    zz_beta: float
    zz_gamma: float
    xx_alpha: float
    xx_beta: float
    xx_gamma: float
    yy_alpha: float
    yy_beta: float
    yy_gamma: float
    zzz: float
    xxz: float
    zxx: float
    xzx: float
    yyz: float
    zyy: float
    yzy: float
    # Per-site magnetizations; equal to ``z`` for a translation-invariant chain.
    z_j: float | None = None
    z_k: float | None = None

    def __post_init__(self):
        if self.z_j is None:
            object.__setattr__(self, "z_j", self.z)
        if self.z_k is None:
            object.__setattr__(self, "z_k", self.z)

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def max_abs(self) -> float:
        return max(abs(v) for v in self.as_dict().values())

    @classmethod
    def zeros(cls) -> "CorrelatorSet":
        return cls(*([0.0] * 17))

    @classmethod
    def polarized(cls) -> "CorrelatorSet":
        up = dict.fromkeys(("z", "zz_alpha", "zz_beta", "zz_gamma", "zzz"), 1.0)
        return cls(**{f.name: up.get(f.name, 0.0) for f in fields(cls)[:17]})


def correlators_from(sites: Sequence[int], contraction: Contraction,
                     reflect: bool = False) -> CorrelatorSet:
    """Evaluate every field of a :class:`CorrelatorSet` on absolute ``sites``.

    With ``reflect`` the ZXX/ZYY entries use the mirrored XXZ/YYZ shapes,
    which is only valid for a reflection-symmetric (infinite) chain.
    """
    i, j, k = sites
    pairs = {"alpha": (i, j), "beta": (j, k), "gamma": (i, k)}
    out = {"z": evaluate("Z", (i,), contraction),
           "z_j": evaluate("Z", (j,), contraction),
           "z_k": evaluate("Z", (k,), contraction)}
    for label, pair in pairs.items():
        for kind in TWO_POINT_KINDS:
            out[f"{kind.lower()}_{label}"] = evaluate(kind, pair, contraction)
    for kind in THREE_POINT_KINDS:
        if reflect and kind in ("ZXX", "ZYY"):
            mirrored = (0, k - j, k - i)
            out[kind.lower()] = evaluate(kind[1:] + "Z", mirrored, contraction)
        else:
            out[kind.lower()] = evaluate(kind, sites, contraction)
    return CorrelatorSet(**out)


def correlator_set(geom: TripleGeometry, params: ModelParams,
                   quad: QuadratureConfig = DEFAULT_QUAD) -> CorrelatorSet:
    """All nonvanishing correlators of sites ``(0, alpha, alpha + beta)``.

    Every determinant draws on a single table of ``G_k`` for
    ``|k| <= alpha + beta + 1``.
    """
    table = g_table(params, geom.gamma_dist + 1, quad)
    return correlators_from(geom.sites, table.contraction, reflect=True)
