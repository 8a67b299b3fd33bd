"""Parameter containers shared by all engines."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ModelParams:
    """A point of the XY phase diagram.

    ``h`` is the reduced transverse field (critical at 1), ``gamma`` the
    anisotropy (1 is the Ising chain) and ``t`` the reduced temperature, in
    the same units as the single-particle dispersion. ``t = 0`` selects the
    ground state.
    """

    h: float
    gamma: float
    t: float = 0.0

    def __post_init__(self):
        for name in ("h", "gamma", "t"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.h < 0:
            raise ValueError(f"h must be >= 0, got {self.h}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")
        if self.t < 0:
            raise ValueError(f"t must be >= 0, got {self.t}")

    def with_t(self, t: float) -> "ModelParams":
        return ModelParams(self.h, self.gamma, t)

    def with_h(self, h: float) -> "ModelParams":
        return ModelParams(h, self.gamma, self.t)


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    max_subdivisions: int = 2048

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be > 0, got {self.abs_tol}")
        if self.max_subdivisions < 16:
            raise ValueError(
                f"max_subdivisions must be >= 16, got {self.max_subdivisions}")


@dataclass(frozen=True)
class TripleGeometry:
    """Three sites i < j < k with ``alpha = j - i`` and ``beta = k - j``."""

    alpha: int
    beta: int

    def __post_init__(self):
        if int(self.alpha) != self.alpha or int(self.beta) != self.beta:
            raise ValueError("alpha and beta must be integers")
        if self.alpha < 1 or self.beta < 1:
            raise ValueError(
                f"alpha and beta must be >= 1, got ({self.alpha}, {self.beta})")

    @property
    def gamma_dist(self) -> int:
        """Distance between the outer spins, k - i."""
        return self.alpha + self.beta

    @property
    def sites(self) -> tuple[int, int, int]:
        return (0, self.alpha, self.alpha + self.beta)


DEFAULT_QUAD = QuadratureConfig()
