"""Reduction of Pauli strings to determinants of Majorana contractions.

With the Jordan-Wigner convention used throughout the package

    sigma^z_l = -A_l B_l,   sigma^x_l = P_l A_l,   sigma^y_l = -i P_l B_l,
    P_l = prod_{s<l} sigma^z_s,

``A_l`` is Hermitian with ``A_l**2 = 1`` and ``B_l`` anti-Hermitian with
``B_l**2 = -1``; all Majoranas anticommute. In a real, parity-symmetric
Gaussian state only the contractions ``<A_l B_m>`` survive, and Wick's theorem
turns any Pauli string into ``coef * det[<A_{a_r} B_{b_c}>]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

_A, _B = 0, 1


@dataclass(frozen=True)
class Recipe:
    """``<string> = coef * det[g(a_sites[r], b_sites[c])]`` (zero if ``coef == 0``)."""

    coef: int
    a_sites: tuple[int, ...]
    b_sites: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.a_sites)


def _expand(pauli: str, site: int, base: int):
    """Majorana word and complex coefficient of one Pauli operator."""
    if pauli == "z":
        return -1, [(site, _A), (site, _B)]
    string = []
    for s in range(base, site):
        string += [(s, _A), (s, _B)]
    sign = (-1) ** (site - base)
    if pauli == "x":
        return sign, string + [(site, _A)]
    if pauli == "y":
        return -1j * sign, string + [(site, _B)]
    raise ValueError(f"unknown Pauli label {pauli!r}")


def _canonicalize(word):
    """Bubble-sort a Majorana word by (site, kind), cancelling squares."""
    word = list(word)
    coef = 1
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(word) - 1:
            left, right = word[i], word[i + 1]
            if left == right:
                coef *= 1 if left[1] == _A else -1
                del word[i:i + 2]
                changed = True
                continue
            if left > right:
                word[i], word[i + 1] = right, left
                coef = -coef
                changed = True
            i += 1
    return coef, word


@lru_cache(maxsize=4096)
def reduce_string(paulis: str, sites: tuple[int, ...]) -> Recipe:
    """Determinant recipe for ``<prod_n sigma^{paulis[n]}_{sites[n]}>``.

    ``sites`` must be strictly increasing; ``paulis`` uses the letters
    ``x``, ``y`` and ``z``.
    """
    if len(paulis) != len(sites):
        raise ValueError("one Pauli label per site is required")
    if any(b <= a for a, b in zip(sites, sites[1:])):
        raise ValueError(f"sites must be strictly increasing, got {sites}")
    n_transverse = sum(p in "xy" for p in paulis)
    if n_transverse % 2:
        return Recipe(0, (), ())

    base = sites[0]
    coef = 1
    word = []
    for p, s in zip(paulis, sites):
        c, w = _expand(p, s, base)
        coef *= c
        word += w
    sign, word = _canonicalize(word)
    coef *= sign

    a_sites = [s for s, kind in word if kind == _A]
    b_sites = [s for s, kind in word if kind == _B]
    if len(a_sites) != len(b_sites):
        return Recipe(0, (), ())
    # Sign of reordering the canonical word into (A ... A B ... B).
    inversions = 0
    seen_b = 0
    for _, kind in word:
        if kind == _B:
            seen_b += 1
        else:
            inversions += seen_b
    n = len(a_sites)
    coef *= (-1) ** inversions * (-1) ** (n * (n - 1) // 2)
    if isinstance(coef, complex):
        if coef.imag != 0 or coef.real == 0:
            raise AssertionError(f"non-real coefficient {coef} for {paulis}")
        coef = coef.real
    return Recipe(int(round(coef)), tuple(a_sites), tuple(b_sites))
