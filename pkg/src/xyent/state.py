"""Three- and two-spin reduced density matrices.

Basis convention: spin up is 0 and the leftmost site is the most significant
bit, so the row index of ``|a b c>`` is ``4a + 2b + c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .correlators import CorrelatorSet, evaluate, g_table
from .errors import NotPositive
from .params import DEFAULT_QUAD, ModelParams, QuadratureConfig

PAULI = {
    "i": np.eye(2),
    "x": np.array([[0.0, 1.0], [1.0, 0.0]]),
    "y": np.array([[0.0, -1j], [1j, 0.0]]),
    "z": np.diag([1.0, -1.0]),
}

SYMMETRY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-9
NOT_POSITIVE_TOL = 1e-6

SITE_INDEX = {"first": 0, "middle": 1, "last": 2}

# Pauli strings entering the three-spin expansion and the CorrelatorSet field
# that carries each expectation value.
RHO3_TERMS = {
    "zii": "z", "izi": "z_j", "iiz": "z_k",
    "zzi": "zz_alpha", "izz": "zz_beta", "ziz": "zz_gamma",
    "xxi": "xx_alpha", "ixx": "xx_beta", "xix": "xx_gamma",
    "yyi": "yy_alpha", "iyy": "yy_beta", "yiy": "yy_gamma",
    "zzz": "zzz", "xxz": "xxz", "zxx": "zxx", "xzx": "xzx",
    "yyz": "yyz", "zyy": "zyy", "yzy": "yzy",
}


def pauli_string(label: str) -> np.ndarray:
    """Real matrix of a Pauli string such as ``"xzx"`` (only even numbers of ``y``)."""
    m = reduce(np.kron, [PAULI[c] for c in label])
    if np.any(np.abs(m.imag) > 0):
        raise ValueError(f"{label!r} is not a real operator")
    return m.real


_RHO3_BASIS = {label: pauli_string(label) for label in RHO3_TERMS}


@dataclass(frozen=True)
class Rho3:
    m: np.ndarray

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.m)[0])


@dataclass(frozen=True)
class Rho2:
    m: np.ndarray


def _check_density(m: np.ndarray, name: str) -> None:
    if np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
        raise ValueError(f"{name} is not symmetric")
    if abs(np.trace(m) - 1.0) > TRACE_TOL:
        raise ValueError(f"{name} trace {np.trace(m)!r} differs from 1")
    lowest = np.linalg.eigvalsh(m)[0]
    if lowest < -NOT_POSITIVE_TOL:
        raise NotPositive(f"{name} has eigenvalue {lowest:.3g}")


def assemble_rho3(cset: CorrelatorSet, check: bool = True) -> Rho3:
    """Build ``rho = (1/8) sum <s^p s^q s^r> s^p (x) s^q (x) s^r``.

    Raises
    ------
    NotPositive
        If ``check`` is set and the smallest eigenvalue is below ``-1e-6``,
        which indicates mutually inconsistent correlators.
    """
    values = cset.as_dict()
    m = np.eye(8)
    for label, name in RHO3_TERMS.items():
        m = m + values[name] * _RHO3_BASIS[label]
    m = 0.5 * (m + m.T) / 8.0
    if check:
        _check_density(m, "rho3")
    return Rho3(m)


def correlators_of(rho: Rho3) -> dict[str, float]:
    """Expectation values ``Tr(rho P)`` for every term of the expansion."""
    return {name: float(np.sum(rho.m * _RHO3_BASIS[label]))
            for label, name in RHO3_TERMS.items()}


def partial_trace(rho: Rho3, site) -> Rho2:
    """Trace out one spin (``"first"``, ``"middle"``, ``"last"`` or 0/1/2)."""
    idx = SITE_INDEX.get(site, site)
    if idx not in (0, 1, 2):
        raise ValueError(f"unknown site {site!r}")
    t = rho.m.reshape([2] * 6)
    keep = [s for s in range(3) if s != idx]
    letters = "abcdef"
    ket = [letters[s] for s in range(3)]
    bra = [letters[s + 3] for s in range(3)]
    bra[idx] = ket[idx]
    out = "".join(ket[s] for s in keep) + "".join(bra[s] for s in keep)
    m = np.einsum("".join(ket) + "".join(bra) + "->" + out, t)
    return Rho2(m.reshape(4, 4))


def pair_state(z1: float, z2: float, zz: float, xx: float, yy: float) -> Rho2:
    """X-shaped two-spin state from its nonvanishing correlators."""
    p = PAULI
    zi = np.kron(p["z"], p["i"])
    iz = np.kron(p["i"], p["z"])
    m = (np.eye(4) + z1 * zi + z2 * iz + zz * np.kron(p["z"], p["z"])
         + xx * np.kron(p["x"], p["x"]) + yy * np.kron(p["y"], p["y"]).real) / 4.0
    return Rho2(m)


def reduced_pair(d: int, params: ModelParams,
                 quad: QuadratureConfig = DEFAULT_QUAD) -> Rho2:
    """Two-spin state of sites at distance ``d`` in the infinite chain."""
    if d < 1:
        raise ValueError(f"distance must be >= 1, got {d}")
    table = g_table(params, d + 1, quad)
    z = evaluate("Z", (0,), table.contraction)
    zz, xx, yy = (evaluate(k, (0, d), table.contraction) for k in ("ZZ", "XX", "YY"))
    rho = pair_state(z, z, zz, xx, yy)
    _check_density(rho.m, "rho2")
    return rho


def single_site(z: float) -> np.ndarray:
    return np.diag([(1 + z) / 2, (1 - z) / 2])
