"""Brute-force validators on finite open chains.

Two independent routes to the same reduced density matrices:

* exact diagonalization of the ``2**N`` dimensional Hamiltonian, and
* the finite-chain free-fermion contraction matrix fed through the same
  determinant shapes as the thermodynamic engine.

The Hamiltonian is normalized so that its bulk single-particle energies are
exactly ``Lambda(phi)``:

    H = -1/2 sum_l [(1+gamma)/2 X_l X_{l+1} + (1-gamma)/2 Y_l Y_{l+1}]
        - h/2 sum_l Z_l
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

from .correlators import CorrelatorSet, correlator_set, correlators_from
from .errors import EigenNonConvergence, SizeLimit
from .params import DEFAULT_QUAD, ModelParams, QuadratureConfig, TripleGeometry
from .state import assemble_rho3

MAX_SITES = 14
DEGENERACY_WINDOW = 1e-10

_Z = np.diag([1.0, -1.0])


@dataclass(frozen=True)
class FiniteChain:
    n_sites: int
    params: ModelParams

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError(f"a chain needs at least 2 sites, got {self.n_sites}")

    def bulk_sites(self) -> range:
        """Sites at least ``N/4`` away from either open edge."""
        margin = self.n_sites // 4
        return range(margin, self.n_sites - margin)


@dataclass(frozen=True)
class GMatrix:
    """Contractions ``g[l, m] = <A_l B_m>`` of an open chain."""

    g: np.ndarray

    def contraction(self, a_sites: Sequence[int], b_sites: Sequence[int]) -> np.ndarray:
        return self.g[np.ix_(list(a_sites), list(b_sites))]


def _site_op(n: int, ops: dict[int, np.ndarray]) -> np.ndarray:
    eye = np.eye(2)
    return reduce(np.kron, [ops.get(s, eye) for s in range(n)])


def build_hamiltonian(chain: FiniteChain) -> np.ndarray:
    """Dense real Hamiltonian of the open chain (site 0 most significant)."""
    n = chain.n_sites
    if n > MAX_SITES:
        raise SizeLimit(f"N={n} exceeds the dense limit of {MAX_SITES} sites")
    p = chain.params
    dim = 2 ** n
    # Work on the diagonal and bit-flip structure directly instead of krons.
    states = np.arange(dim)
    bits = (states[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    spin = 1 - 2 * bits  # +1 for up (bit 0)
    h = np.zeros((dim, dim))
    h[states, states] = -0.5 * p.h * spin.sum(axis=1)
    cxx = 0.25 * (1 + p.gamma)
    cyy = 0.25 * (1 - p.gamma)
    for l in range(n - 1):
        mask = (1 << (n - 1 - l)) | (1 << (n - 2 - l))
        flipped = states ^ mask
        # Y|s> = i s |flipped s> per site, so Y_l Y_{l+1} carries -s_l s_{l+1}.
        yy = -spin[:, l] * spin[:, l + 1]
        h[flipped, states] += -cxx - cyy * yy
    return h


def parity_operator(n: int) -> np.ndarray:
    return _site_op(n, {s: _Z for s in range(n)})


def thermal_state(hamiltonian: np.ndarray, t: float) -> np.ndarray:
    """Gibbs state at reduced temperature ``t``.

    At ``t = 0`` this is the equal mixture over every eigenvector within
    ``DEGENERACY_WINDOW`` of the ground energy.
    """
    if t < 0:
        raise ValueError("temperature must be >= 0")
    if not np.all(np.isfinite(hamiltonian)):
        raise EigenNonConvergence("non-finite Hamiltonian entries")
    try:
        energies, vecs = np.linalg.eigh(hamiltonian)
    except np.linalg.LinAlgError as exc:
        raise EigenNonConvergence(str(exc)) from exc
    if t == 0:
        weights = (energies <= energies[0] + DEGENERACY_WINDOW).astype(float)
    else:
        weights = np.exp(-(energies - energies[0]) / t)
    weights /= weights.sum()
    return (vecs * weights) @ vecs.T


def reduce_to_sites(rho_full: np.ndarray, sites: Sequence[int]) -> np.ndarray:
    """Partial trace keeping ``sites`` (strictly increasing), in that order."""
    n = int(round(np.log2(rho_full.shape[0])))
    sites = list(sites)
    if any(b <= a for a, b in zip(sites, sites[1:])) or sites[0] < 0 or sites[-1] >= n:
        raise ValueError(f"sites {sites} must be increasing and inside the chain")
    others = [s for s in range(n) if s not in sites]
    tensor = rho_full.reshape([2] * (2 * n))
    perm = sites + others + [n + s for s in sites] + [n + s for s in others]
    tensor = tensor.transpose(perm)
    k = len(sites)
    tensor = tensor.reshape(2 ** k, 2 ** (n - k), 2 ** k, 2 ** (n - k))
    return np.einsum("aibi->ab", tensor)


def _majorana_hamiltonian(chain: FiniteChain) -> np.ndarray:
    """Antisymmetric ``M`` with ``H = (i/4) w^T M w``, ``w = (A_1..A_N, iB_1..iB_N)``."""
    n = chain.n_sites
    p = chain.params
    m = np.zeros((2 * n, 2 * n))

    def add(a, b, c):
        m[a, b] += 2 * c
        m[b, a] -= 2 * c

    for l in range(n):
        add(l, n + l, -0.5 * p.h)
    for l in range(n - 1):
        add(n + l, l + 1, -0.25 * (1 + p.gamma))
        add(l, n + l + 1, 0.25 * (1 - p.gamma))
    return m


def single_particle_energies(chain: FiniteChain) -> np.ndarray:
    """Nonnegative Bogoliubov energies of the open chain, ascending."""
    k = 1j * _majorana_hamiltonian(chain)
    lam = np.linalg.eigvalsh(k)
    return np.sort(lam[lam.size // 2:])


def finite_g_matrix(chain: FiniteChain) -> GMatrix:
    """Thermal contractions ``<A_l B_m>`` from the single-particle problem."""
    n = chain.n_sites
    k = 1j * _majorana_hamiltonian(chain)
    try:
        lam, u = np.linalg.eigh(k)
    except np.linalg.LinAlgError as exc:
        raise EigenNonConvergence(str(exc)) from exc
    t = chain.params.t
    if t == 0:
        occ = np.where(np.abs(lam) <= DEGENERACY_WINDOW, 0.0, np.sign(lam))
    else:
        occ = np.tanh(lam / (2.0 * t))
    # <w w^T> = 1 + tanh(K / 2t); <A_l B_m> = -i <w_l w_{N+m}>.
    f = (u * occ) @ u.conj().T
    g = np.real(-1j * f[:n, n:])
    return GMatrix(np.clip(g, -1.0, 1.0))


def finite_correlators(g: GMatrix, sites: Sequence[int]) -> CorrelatorSet:
    """Correlators of an open chain from the same determinant shapes."""
    return correlators_from(tuple(sites), g.contraction, reflect=False)


@dataclass
class Comparison:
    """Max-abs Rho3 deviations between the three engines at one point."""

    ed_vs_fermion: float
    fermion_vs_thermo: float | None
    ed_vs_thermo: float | None
    per_correlator: dict[str, float] = field(default_factory=dict)

    def as_row(self) -> dict:
        row = {"ed_vs_fermion": self.ed_vs_fermion,
               "fermion_vs_thermo": self.fermion_vs_thermo,
               "ed_vs_thermo": self.ed_vs_thermo}
        row.update({f"d_{k}": v for k, v in self.per_correlator.items()})
        return row


def compare(params: ModelParams, n_sites: int, sites: Sequence[int],
            quad: QuadratureConfig = DEFAULT_QUAD) -> Comparison:
    """Run ED, finite fermions and (when translation-equivalent) the infinite engine."""
    chain = FiniteChain(n_sites, params)
    sites = tuple(sites)
    rho_ed = reduce_to_sites(thermal_state(build_hamiltonian(chain), params.t), sites)
    cset_ff = finite_correlators(finite_g_matrix(chain), sites)
    rho_ff = assemble_rho3(cset_ff, check=False).m
    geom = TripleGeometry(sites[1] - sites[0], sites[2] - sites[1])
    cset_th = correlator_set(geom, params, quad)
    rho_th = assemble_rho3(cset_th, check=False).m
    per = {name: abs(a - b) for (name, a), b in
           zip(cset_ff.as_dict().items(), cset_th.as_dict().values())}
    return Comparison(
        ed_vs_fermion=float(np.max(np.abs(rho_ed - rho_ff))),
        fermion_vs_thermo=float(np.max(np.abs(rho_ff - rho_th))),
        ed_vs_thermo=float(np.max(np.abs(rho_ed - rho_th))),
        per_correlator=per,
    )
