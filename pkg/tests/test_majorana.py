"""The determinant shapes against an explicit Jordan-Wigner construction."""

import itertools
from functools import reduce

import numpy as np
import pytest

from xyent.correlators import THREE_POINT_KINDS, shape
from xyent.majorana import reduce_string
from xyent.oracle import FiniteChain, build_hamiltonian, thermal_state
from xyent.params import ModelParams
from xyent.state import PAULI


def _op(n, ops):
    return reduce(np.kron, [ops.get(s, PAULI["i"]) for s in range(n)])


def _majoranas(n):
    a, b = [], []
    for l in range(n):
        string = _op(n, {s: PAULI["z"] for s in range(l)})
        a.append((string @ _op(n, {l: PAULI["x"]})).real)
        b.append(np.real(1j * string @ _op(n, {l: PAULI["y"]})))
    return a, b


def test_majorana_algebra():
    a, b = _majoranas(4)
    eye = np.eye(16)
    for l, m in itertools.product(range(4), repeat=2):
        if l != m:
            assert np.allclose(a[l] @ a[m], -a[m] @ a[l])
            assert np.allclose(b[l] @ b[m], -b[m] @ b[l])
        assert np.allclose(a[l] @ b[m], -b[m] @ a[l])
    for l in range(4):
        assert np.allclose(a[l] @ a[l], eye)
        assert np.allclose(b[l] @ b[l], -eye)
        assert np.allclose(-a[l] @ b[l], _op(4, {l: PAULI["z"]}))


@pytest.mark.parametrize("h,gamma,t", [(0.7, 0.4, 0.3), (1.3, 1.0, 0.0), (0.2, 0.25, 1.0)])
def test_reducer_reproduces_ed_expectations(h, gamma, t):
    n = 6
    rho = thermal_state(build_hamiltonian(FiniteChain(n, ModelParams(h, gamma, t))), t)
    a, b = _majoranas(n)
    g = np.array([[np.trace(rho @ a[l] @ b[m]) for m in range(n)] for l in range(n)])
    for paulis in ["z", "zz", "xx", "yy", "xy", "zzz", "xxz", "zxx", "xzx",
                   "yyz", "zyy", "yzy", "xyz", "xxx"]:
        for sites in itertools.combinations(range(n), len(paulis)):
            recipe = reduce_string(paulis, sites)
            value = 0.0
            if recipe.coef:
                value = recipe.coef * np.linalg.det(g[np.ix_(recipe.a_sites, recipe.b_sites)])
            direct = np.real(np.trace(rho @ _op(n, {s: PAULI[p] for p, s in zip(paulis, sites)})))
            assert value == pytest.approx(direct, abs=1e-12)


def test_real_state_has_no_like_contractions():
    n = 5
    rho = thermal_state(build_hamiltonian(FiniteChain(n, ModelParams(0.6, 0.7, 0.2))), 0.2)
    a, b = _majoranas(n)
    for l, m in itertools.combinations(range(n), 2):
        assert abs(np.trace(rho @ a[l] @ a[m])) < 1e-14
        assert abs(np.trace(rho @ b[l] @ b[m])) < 1e-14


@pytest.mark.parametrize("alpha,beta", [(1, 1), (1, 4), (3, 1), (2, 3), (4, 4)])
def test_shape_table_equals_reducer(alpha, beta):
    sites = (2, 2 + alpha, 2 + alpha + beta)
    for kind in THREE_POINT_KINDS:
        recipe = reduce_string(kind.lower(), sites)
        assert shape(kind, sites) == (recipe.coef, list(recipe.a_sites), list(recipe.b_sites))
    for kind in ("XX", "YY", "ZZ"):
        recipe = reduce_string(kind.lower(), sites[:2])
        assert shape(kind, sites[:2]) == (recipe.coef, list(recipe.a_sites), list(recipe.b_sites))


def test_printed_shapes_with_corrected_signs():
    # Index sets read off the appendix matrices; entry (r, c) is G_{c - r}.
    for alpha, beta in itertools.product(range(1, 5), repeat=2):
        g = alpha + beta
        printed = {
            "XXZ": (list(range(1, alpha + 1)) + [g], list(range(alpha)) + [g], (-1) ** (alpha + 1)),
            "YYZ": (list(range(alpha)) + [g], list(range(1, alpha + 1)) + [g], (-1) ** (alpha + 1)),
            "XZX": ([r for r in range(1, g + 1) if r != alpha],
                    [c for c in range(g) if c != alpha], (-1) ** (alpha + beta)),
            "YZY": ([r for r in range(g) if r != alpha],
                    [c for c in range(1, g + 1) if c != alpha], (-1) ** (alpha + beta)),
        }
        corrected = {"XXZ": -1, "YYZ": -1, "XZX": 1, "YZY": 1}
        for kind, (rows, cols, printed_sign) in printed.items():
            sign, a_sites, b_sites = shape(kind, (0, alpha, g))
            assert (a_sites, b_sites) == (rows, cols)
            assert sign == corrected[kind]
            assert sign * printed_sign == (-1) ** (alpha if kind in ("XXZ", "YYZ") else g)


def test_odd_transverse_strings_vanish():
    assert reduce_string("xz", (0, 3)).coef == 0
    assert reduce_string("xy", (0, 1)).coef == 0
