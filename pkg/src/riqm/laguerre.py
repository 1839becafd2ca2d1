"""Associated Laguerre polynomials with exact coefficients, plus angular functions.

Convention: ``L_m^(alpha)(x) = sum_j (-1)**j / j! * C(m + alpha, m - j) * x**j``,
so ``L_1^(alpha)(x) = alpha + 1 - x``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from riqm.coeff import frac_str


@dataclass(frozen=True)
class LaguerrePoly:
    alpha: int
    degree: int
    coeffs: tuple  # Fractions a_0 .. a_m

    def __call__(self, x):
        return eval_poly(self, x)

    def ratio_law_holds(self) -> bool:
        a, m = self.coeffs, self.degree
        return all(a[j + 1] == a[j] * Fraction(j - m, (j + 1) * (self.alpha + j + 1))
                   for j in range(m))

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "degree": self.degree,
                "coeffs": [frac_str(c) for c in self.coeffs]}


@lru_cache(maxsize=None)
def laguerre(alpha: int, m: int) -> LaguerrePoly:
    if alpha < 0 or m < 0:
        raise ValueError("laguerre needs alpha >= 0 and m >= 0")
    coeffs = tuple(Fraction((-1) ** j * math.comb(m + alpha, m - j), math.factorial(j))
                   for j in range(m + 1))
    return LaguerrePoly(alpha, m, coeffs)


def eval_poly(poly: LaguerrePoly, x, exact: bool = False):
    """Horner evaluation; pass ``exact=True`` with a rational ``x`` for an exact result."""
    if exact:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(poly.coeffs):
            acc = acc * x + c
        return acc
    acc = 0.0
    for c in reversed(poly.coeffs):
        acc = acc * x + float(c)
    return acc


def angular_eigenfunction_2d(m: int, phi: float) -> complex:
    return cmath.exp(1j * m * phi) / math.sqrt(2 * math.pi)


def _assoc_legendre(l: int, m: int, x: float) -> float:
    """``P_l^m(x)`` for ``m >= 0`` with the Condon-Shortley phase."""
    pmm = 1.0
    if m:
        s = math.sqrt(max(0.0, (1 - x) * (1 + x)))
        fact = 1.0
        for _ in range(m):
            pmm *= -fact * s
            fact += 2.0
    if l == m:
        return pmm
    pmm1 = x * (2 * m + 1) * pmm
    if l == m + 1:
        return pmm1
    for ll in range(m + 2, l + 1):
        pll = (x * (2 * ll - 1) * pmm1 - (ll + m - 1) * pmm) / (ll - m)
        pmm, pmm1 = pmm1, pll
    return pmm1


def spherical_harmonic(l: int, m: int, theta: float, phi: float) -> complex:
    """Orthonormal ``Y_lm`` with the Condon-Shortley phase."""
    if l < 0 or abs(m) > l:
        raise ValueError(f"invalid (l, m) = ({l}, {m})")
    am = abs(m)
    norm = math.sqrt((2 * l + 1) / (4 * math.pi) * math.factorial(l - am) / math.factorial(l + am))
    y = norm * _assoc_legendre(l, am, math.cos(theta)) * cmath.exp(1j * am * phi)
    if m < 0:
        y = (-1) ** am * y.conjugate()
    return y
