"""Negativity, concurrence and free/bound classification of three-spin states."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .correlators import correlator_set
from .errors import ShapeViolation
from .linalg import jacobi_eigvalsh
from .params import DEFAULT_QUAD, ModelParams, QuadratureConfig, TripleGeometry
from .state import Rho2, Rho3, assemble_rho3, partial_trace

NEG_TOL = 1e-9
CONC_TOL = 1e-9
X_SHAPE_TOL = 1e-9


class Cut(enum.Enum):
    """Bipartition of a single spin against the other two."""

    FIRST = 0   # A|BC
    MIDDLE = 1  # B|AC
    LAST = 2    # C|AB

    @property
    def label(self) -> str:
        return {0: "first", 1: "middle", 2: "last"}[self.value]


class EntanglementClass(enum.Enum):
    ALL_PPT = "AllPpt"
    BOUND_BY_SINGLE_NPT_CUT = "BoundBySingleNptCut"
    NPT_MULTI_CUT = "NptMultiCut"
    PAIRWISE_ENTANGLED = "PairwiseEntangled"

    @property
    def description(self) -> str:
        return _DESCRIPTIONS[self]


_DESCRIPTIONS = {
    EntanglementClass.ALL_PPT:
        "PPT across every cut: separable or undetected PPT (bound) entanglement",
    EntanglementClass.BOUND_BY_SINGLE_NPT_CUT:
        "one NPT cut, two PPT cuts, no pair entanglement: bound entangled",
    EntanglementClass.NPT_MULTI_CUT:
        "several NPT cuts without pair entanglement: multiparticle entanglement",
    EntanglementClass.PAIRWISE_ENTANGLED:
        "at least one pair has nonzero concurrence",
}

PAIRS = ("ij", "jk", "ik")
# Spin traced out to obtain each pair.
_PAIR_TRACE = {"ij": "last", "jk": "first", "ik": "middle"}


@dataclass(frozen=True)
class NegativityResult:
    value: float
    negative_eigenvalues: tuple[float, ...] = ()

    @property
    def is_npt(self) -> bool:
        return bool(self.negative_eigenvalues)


@dataclass(frozen=True)
class EntanglementReport:
    neg: dict
    conc: dict
    classification: EntanglementClass
    npt_cuts: frozenset
    neg_tol: float = NEG_TOL
    conc_tol: float = CONC_TOL
    rho: Rho3 | None = field(default=None, repr=False, compare=False)


def partial_transpose(rho: Rho3 | np.ndarray, cut: Cut) -> np.ndarray:
    """Transpose the indices of the single spin singled out by ``cut``."""
    m = rho.m if isinstance(rho, Rho3) else np.asarray(rho)
    t = m.reshape([2] * 6)
    axes = list(range(6))
    s = Cut(cut).value
    axes[s], axes[s + 3] = s + 3, s
    return t.transpose(axes).reshape(8, 8)


def negativity(rho: Rho3 | np.ndarray, cut: Cut, tol: float = NEG_TOL) -> NegativityResult:
    """Sum of ``|mu|`` over partial-transpose eigenvalues ``mu < -tol``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    eigs = jacobi_eigvalsh(partial_transpose(rho, cut))
    neg = tuple(float(e) for e in eigs if e < -tol)
    return NegativityResult(float(-sum(neg)), neg)


def _check_x_shape(m: np.ndarray) -> None:
    mask = np.ones((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = False
    mask[np.arange(4), 3 - np.arange(4)] = False
    worst = np.max(np.abs(m[mask]))
    if worst > X_SHAPE_TOL:
        raise ShapeViolation(f"two-spin state has off-X entry {worst:.3g}")


def concurrence(rho: Rho2 | np.ndarray) -> float:
    """Concurrence of an X-shaped two-qubit state (closed form)."""
    m = rho.m if isinstance(rho, Rho2) else np.asarray(rho)
    _check_x_shape(m)
    d = np.clip(np.diag(m), 0.0, None)
    c = 2.0 * max(0.0,
                  abs(m[0, 3]) - np.sqrt(d[1] * d[2]),
                  abs(m[1, 2]) - np.sqrt(d[0] * d[3]))
    return float(min(c, 1.0))


def wootters_concurrence(rho: Rho2 | np.ndarray) -> float:
    """General Wootters concurrence of any two-qubit density matrix.

    With ``rho = V V^dagger`` the Wootters numbers are the singular values of
    ``V^T (Y x Y) V``, which avoids square roots of a near-singular product.
    """
    m = rho.m if isinstance(rho, Rho2) else np.asarray(rho)
    m = np.asarray(m, dtype=complex)
    yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]]).real
    w, u = np.linalg.eigh(0.5 * (m + m.conj().T))
    v = u * np.sqrt(np.clip(w, 0.0, None))
    lam = np.linalg.svd(v.T @ yy @ v, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def classify(npt_cuts, concurrences, tol: float = CONC_TOL) -> EntanglementClass:
    """Label a three-spin state from its NPT cuts and pair concurrences."""
    if any(c > tol for c in concurrences):
        return EntanglementClass.PAIRWISE_ENTANGLED
    n_npt = len(set(npt_cuts))
    if n_npt == 0:
        return EntanglementClass.ALL_PPT
    if n_npt == 1:
        return EntanglementClass.BOUND_BY_SINGLE_NPT_CUT
    return EntanglementClass.NPT_MULTI_CUT


def report_for(rho: Rho3, neg_tol: float = NEG_TOL, conc_tol: float = CONC_TOL) -> EntanglementReport:
    neg = {cut: negativity(rho, cut, neg_tol) for cut in Cut}
    conc = {pair: concurrence(partial_trace(rho, _PAIR_TRACE[pair])) for pair in PAIRS}
    npt = frozenset(cut for cut, r in neg.items() if r.is_npt)
    label = classify(npt, conc.values(), conc_tol)
    return EntanglementReport(neg, conc, label, npt, neg_tol, conc_tol, rho)


def analyze_triple(params: ModelParams, geom: TripleGeometry,
                   quad: QuadratureConfig = DEFAULT_QUAD,
                   neg_tol: float = NEG_TOL, conc_tol: float = CONC_TOL) -> EntanglementReport:
    """Negativity across all three cuts plus all pair concurrences."""
    rho = assemble_rho3(correlator_set(geom, params, quad))
    return report_for(rho, neg_tol, conc_tol)
