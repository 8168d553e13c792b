"""Exact arithmetic in cyclotomic integers for character sums.

A character sum over a finite abelian group of exponent N lives in Z[zeta_N].
Values are kept as integer coordinate vectors in the power basis
1, zeta, ..., zeta^(phi(N)-1) after reduction modulo the N-th cyclotomic
polynomial, so equality of sums is equality of vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .groups import AbelianGroup, GroupElement


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int):
    """Coefficients of Phi_n, ascending degree, as a tuple of ints."""
    if n == 1:
        return (-1, 1)
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact division
    poly = [0] * (n + 1)
    poly[0] = -1
    poly[n] = 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _poly_divide_exact(num, den):
    num = list(num)
    den = list(den)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        coeff = num[shift + len(den) - 1]
        assert coeff % den[-1] == 0
        q = coeff // den[-1]
        out[shift] = q
        for i, c in enumerate(den):
            num[shift + i] -= q * c
    assert not any(num)
    return out


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> np.ndarray:
    """(n, phi(n)) matrix: row k = coordinates of zeta_n^k in the power basis."""
    phi_coeffs = cyclotomic_polynomial(n)
    deg = len(phi_coeffs) - 1
    rows = np.zeros((n, deg), dtype=np.int64)
    for i in range(min(n, deg)):
        rows[i, i] = 1
    # zeta^k for k >= deg: reduce with zeta^deg = -(lower coefficients)
    top = np.array(phi_coeffs[:deg], dtype=np.int64)
    for k in range(deg, n):
        prev = rows[k - 1]
        shifted = np.zeros(deg, dtype=np.int64)
        shifted[1:] = prev[:-1]
        rows[k] = shifted - prev[-1] * top
    return rows


@dataclass(frozen=True)
class CycloValue:
    """An element of Z[zeta_N] in canonical power-basis coordinates."""

    N: int
    coords: tuple

    @staticmethod
    def from_exponents(N: int, counts) -> "CycloValue":
        """Value sum_k counts[k] * zeta_N^k, reduced to canonical coordinates."""
        table = _reduction_table(N)
        counts = np.asarray(counts, dtype=np.int64)
        return CycloValue(N, tuple(int(v) for v in counts @ table))

    @staticmethod
    def integer(N: int, value: int) -> "CycloValue":
        counts = [0] * N
        counts[0] = value
        return CycloValue.from_exponents(N, counts)

    def __add__(self, other: "CycloValue") -> "CycloValue":
        assert self.N == other.N
        return CycloValue(
            self.N, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def is_integer(self) -> bool:
        return not any(self.coords[1:])


def char_exponent(G: AbelianGroup, y: int, x: int) -> int:
    """Exponent k with chi_y(x) = zeta_N^k for the standard pairing."""
    N = G.exponent
    total = 0
    for n, s in zip(G.factors, G.strides):
        total += (N // n) * ((x // s) % n) * ((y // s) % n)
    return total % N


def char_exponent_table(G: AbelianGroup) -> np.ndarray:
    """(order, order) table of pairing exponents, chi_y(x) = zeta^table[y, x]."""
    N = G.exponent
    c = G.coords
    table = np.zeros((G.order, G.order), dtype=np.int64)
    for col, n in enumerate(G.factors):
        table += (N // n) * c[:, None, col] * c[None, :, col]
    return table % N


def char_value(G: AbelianGroup, y, X) -> CycloValue:
    """chi_y(X) = sum over x in X of zeta_N^(pairing exponent), canonical form."""
    y_idx = y.index if isinstance(y, GroupElement) else int(y)
    N = G.exponent
    counts = [0] * N
    for x in X:
        x_idx = x.index if isinstance(x, GroupElement) else int(x)
        counts[char_exponent(G, y_idx, x_idx)] += 1
    return CycloValue.from_exponents(N, counts)
