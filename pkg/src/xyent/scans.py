"""Parameter sweeps, entanglement range and thermal death temperatures."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from functools import partial
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .entanglement import CONC_TOL, NEG_TOL, Cut, analyze_triple, concurrence
from .errors import BisectionFailure, NoBracket, XYEntError
from .params import DEFAULT_QUAD, ModelParams, QuadratureConfig, TripleGeometry
from .state import reduced_pair

log = logging.getLogger(__name__)

BRACKET_WIDTH = 1e-4
SCOUT_POINTS = 200
DEFAULT_H_POINTS = 400


@dataclass(frozen=True)
class FigureConfig:
    """``a``: spin against an adjacent pair at distance ``d`` (alpha=d, beta=1);
    ``b``: symmetric triple (alpha=beta=d)."""

    kind: str
    d: int

    def __post_init__(self):
        if self.kind not in ("a", "b"):
            raise ValueError(f"configuration must be 'a' or 'b', got {self.kind!r}")
        if self.d < 1:
            raise ValueError(f"distance must be >= 1, got {self.d}")

    @property
    def geometry(self) -> TripleGeometry:
        return TripleGeometry(self.d, 1 if self.kind == "a" else self.d)

    @classmethod
    def parse(cls, text: str) -> "FigureConfig":
        kind, _, d = text.partition(":")
        if not d:
            raise ValueError(f"expected a:<d> or b:<d>, got {text!r}")
        return cls(kind.strip().lower(), int(d))


def factorizing_field(gamma: float) -> float:
    """Field ``sqrt(1 - gamma^2)`` at which the ground state factorizes."""
    if not 0.0 < gamma <= 1.0:
        raise ValueError(f"factorizing field needs 0 < gamma <= 1, got {gamma}")
    return math.sqrt(1.0 - gamma * gamma)


class PairRange(NamedTuple):
    value: int
    capped: bool


def pair_range(params: ModelParams, d_max: int,
               quad: QuadratureConfig = DEFAULT_QUAD, tol: float = CONC_TOL) -> PairRange:
    """Largest distance ``d <= d_max`` with pair concurrence above ``tol``.

    Every distance is inspected because the concurrence need not decrease
    monotonically with ``d`` near the factorizing field. ``capped`` is set
    when the pair at ``d_max`` is still entangled.
    """
    if d_max < 1:
        raise ValueError(f"d_max must be >= 1, got {d_max}")
    alive = [d for d in range(1, d_max + 1)
             if concurrence(reduced_pair(d, params, quad)) > tol]
    r = max(alive, default=0)
    return PairRange(r, r == d_max)


@dataclass(frozen=True)
class SweepRow:
    h: float
    t: float
    alpha: int
    beta: int
    neg_first: float
    neg_middle: float
    neg_last: float
    conc_ij: float
    conc_jk: float
    conc_ik: float
    class_label: str

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def as_dict(self) -> dict:
        return asdict(self)


def evaluate_point(params: ModelParams, geom: TripleGeometry,
                   quad: QuadratureConfig = DEFAULT_QUAD) -> SweepRow:
    """One sweep row; named numerical failures are recorded, not raised."""
    try:
        r = analyze_triple(params, geom, quad)
    except XYEntError as exc:
        log.warning("point h=%g t=%g failed: %s", params.h, params.t, exc)
        nan = float("nan")
        return SweepRow(params.h, params.t, geom.alpha, geom.beta,
                        nan, nan, nan, nan, nan, nan, f"error:{type(exc).__name__}")
    return SweepRow(
        params.h, params.t, geom.alpha, geom.beta,
        r.neg[Cut.FIRST].value, r.neg[Cut.MIDDLE].value, r.neg[Cut.LAST].value,
        r.conc["ij"], r.conc["jk"], r.conc["ik"], r.classification.value)


def _run_grid(fn: Callable, points: Sequence, workers: int | None):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, points))
    return [fn(p) for p in points]


def _sweep_point(h: float, gamma: float, t: float, geom: TripleGeometry,
                 quad: QuadratureConfig) -> SweepRow:
    return evaluate_point(ModelParams(h, gamma, t), geom, quad)


def sweep_field(gamma: float, t: float, config: FigureConfig, h_grid: Sequence[float],
                quad: QuadratureConfig = DEFAULT_QUAD, workers: int | None = None) -> list[SweepRow]:
    """Entanglement of one configuration along a field grid.

    Rows come back in grid order whatever the evaluation order.
    """
    h_grid = [float(h) for h in h_grid]
    if not h_grid:
        raise ValueError("h grid is empty")
    if any(b < a for a, b in zip(h_grid, h_grid[1:])):
        raise ValueError("h grid must be ordered")
    fn = partial(_sweep_point, gamma=gamma, t=t, geom=config.geometry, quad=quad)
    return _run_grid(fn, h_grid, workers)


def label_windows(rows: Sequence[SweepRow]) -> list[tuple[str, float, float]]:
    """Contiguous runs of equal class labels as ``(label, h_first, h_last)``."""
    out: list[tuple[str, float, float]] = []
    for row in rows:
        if out and out[-1][0] == row.class_label:
            out[-1] = (row.class_label, out[-1][1], row.h)
        else:
            out.append((row.class_label, row.h, row.h))
    return out


# --- thermal thresholds -------------------------------------------------------

THRESHOLD_QUANTITIES = ("t_c2", "t_c1", "t_n_ext", "t_n_centr")


@dataclass(frozen=True)
class Threshold:
    value: float
    half_width: float
    fallback: bool = False


@dataclass(frozen=True)
class ThresholdSet:
    """Death temperatures of the adjacent triple (alpha = beta = 1).

    ``t_c2``: outer-pair concurrence, ``t_c1``: adjacent-pair concurrence,
    ``t_n_ext`` / ``t_n_centr``: negativity of an outer / the central spin
    against the other two. ``None`` means the quantity is zero already at
    ``t = 0``.
    """

    gamma: float
    h: float
    t_c2: Threshold | None
    t_c1: Threshold | None
    t_n_ext: Threshold | None
    t_n_centr: Threshold | None

    def values(self) -> list[Threshold | None]:
        return [getattr(self, q) for q in THRESHOLD_QUANTITIES]

    def all_present(self) -> bool:
        return all(v is not None for v in self.values())

    def ordered(self) -> bool:
        """Whether present thresholds obey t_c2 <= t_c1 <= t_n_ext <= t_n_centr."""
        present = [v for v in self.values() if v is not None]
        return all(a.value - a.half_width <= b.value + b.half_width
                   for a, b in zip(present, present[1:]))

    def bound_window(self) -> tuple[float, float] | None:
        """Open interval where only the central cut is NPT, if nonempty.

        PPT entanglement is invisible to negativity, so the true bound
        region may extend above this window.
        """
        if self.t_n_ext is None or self.t_n_centr is None:
            return None
        lo = self.t_n_ext.value + self.t_n_ext.half_width
        hi = self.t_n_centr.value - self.t_n_centr.half_width
        return (lo, hi) if hi > lo else None

    def as_row(self) -> dict:
        row = {"gamma": self.gamma, "h": self.h}
        for q in THRESHOLD_QUANTITIES:
            v = getattr(self, q)
            row[q] = float("nan") if v is None else v.value
            row[f"{q}_halfwidth"] = float("nan") if v is None else v.half_width
            row[f"{q}_fallback"] = bool(v is not None and v.fallback)
        window = self.bound_window()
        row["be_window"] = window is not None
        return row


def threshold_quantities(params: ModelParams, quad: QuadratureConfig = DEFAULT_QUAD) -> dict[str, float]:
    """The four scalars whose zero crossings define the thresholds."""
    r = analyze_triple(params, TripleGeometry(1, 1), quad)
    return {"t_c2": r.conc["ik"], "t_c1": r.conc["ij"],
            "t_n_ext": r.neg[Cut.FIRST].value, "t_n_centr": r.neg[Cut.MIDDLE].value}


def _bisect(alive: Callable[[float], bool], lo: float, hi: float, width: float) -> tuple[float, float]:
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if alive(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


def locate_threshold(alive: Callable[[float], bool], grid: np.ndarray,
                     samples: Sequence[bool], width: float = BRACKET_WIDTH) -> Threshold | None:
    """Death temperature of a quantity sampled as ``samples`` on ``grid``.

    Returns ``None`` if the quantity is dead at ``grid[0]``. Raises
    :class:`NoBracket` if it is still alive at ``grid[-1]``. When the quantity
    revives after its first death the last alive grid cell is reported with
    ``fallback=True``.
    """
    samples = np.asarray(samples, dtype=bool)
    if not samples[0]:
        return None
    if samples[-1]:
        raise NoBracket(f"quantity still nonzero at t_max={grid[-1]:g}")
    first_dead = int(np.argmin(samples))
    if samples[first_dead:].any():
        last_alive = int(np.nonzero(samples)[0][-1])
        lo, hi = grid[last_alive], grid[last_alive + 1]
        log.warning("non-monotone threshold quantity; grid fallback in [%g, %g]", lo, hi)
        try:
            lo, hi = _checked_bisect(alive, lo, hi, width)
        except BisectionFailure:
            pass
        return Threshold(0.5 * (lo + hi), 0.5 * (hi - lo), fallback=True)
    lo, hi = grid[first_dead - 1], grid[first_dead]
    try:
        lo, hi = _checked_bisect(alive, lo, hi, width)
    except BisectionFailure:
        return Threshold(0.5 * (lo + hi), 0.5 * (hi - lo), fallback=True)
    return Threshold(0.5 * (lo + hi), 0.5 * (hi - lo))


def _checked_bisect(alive, lo, hi, width):
    if not alive(lo) or alive(hi):
        raise BisectionFailure(f"sign pattern lost on [{lo:g}, {hi:g}]")
    return _bisect(alive, lo, hi, width)


def thermal_thresholds(gamma: float, h: float, t_max: float,
                       quad: QuadratureConfig = DEFAULT_QUAD,
                       scout_points: int = SCOUT_POINTS,
                       width: float = BRACKET_WIDTH) -> ThresholdSet:
    """Locate the four death temperatures of the adjacent triple at ``(gamma, h)``."""
    if not t_max > 0:
        raise ValueError("t_max must be positive")
    grid = np.linspace(0.0, t_max, scout_points)
    base = ModelParams(h, gamma, 0.0)
    scouted = [threshold_quantities(base.with_t(float(t)), quad) for t in grid]
    tol = {"t_c2": CONC_TOL, "t_c1": CONC_TOL, "t_n_ext": NEG_TOL, "t_n_centr": NEG_TOL}
    found = {}
    for q in THRESHOLD_QUANTITIES:
        def alive(t, q=q):
            return threshold_quantities(base.with_t(float(t)), quad)[q] > tol[q]
        samples = [s[q] > tol[q] for s in scouted]
        found[q] = locate_threshold(alive, grid, samples, width)
    result = ThresholdSet(gamma, h, **found)
    if not result.ordered():
        log.warning("threshold ordering violated at gamma=%g h=%g", gamma, h)
    return result


def _threshold_point(h: float, gamma: float, t_max: float, quad: QuadratureConfig,
                     scout_points: int) -> ThresholdSet:
    return thermal_thresholds(gamma, h, t_max, quad, scout_points)


def thermal_scan(gamma: float, h_grid: Sequence[float], t_max: float,
                 quad: QuadratureConfig = DEFAULT_QUAD, scout_points: int = SCOUT_POINTS,
                 workers: int | None = None) -> list[ThresholdSet]:
    """:func:`thermal_thresholds` along a field grid, in grid order."""
    fn = partial(_threshold_point, gamma=gamma, t_max=t_max, quad=quad,
                 scout_points=scout_points)
    return _run_grid(fn, [float(h) for h in h_grid], workers)
