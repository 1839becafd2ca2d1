"""Closed-form Coulomb bound-state wavefunctions assembled from ladder output.

Radial parts are stored exactly as

    R(x) = sqrt(root) * a0**(-dim/2) * sum_p c_p (x/a0)**p * exp(-x/(nu a0))

with rational ``c_p`` for ``p = sector .. n-1``.  Numeric evaluation uses
``a0 = 1``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from riqm.coeff import A0, INV_A0, UnitCoeff, frac_str, sqrt_rational
from riqm.ladder import SectorError, compute_norm, run_chain
from riqm.laguerre import angular_eigenfunction_2d, laguerre, spherical_harmonic
from riqm.radial import nu


class RouteMismatch(AssertionError):
    """The ladder route and the Laguerre closed form produced different coefficients."""


@dataclass(frozen=True)
class Wavefunction:
    dim: int
    n: int
    sector: int  # l in 3D, |m| in 2D
    m: int
    root: int
    radial_coeffs: tuple  # Fractions for powers sector .. n-1

    @property
    def nu(self) -> Fraction:
        return nu(self.n, self.dim)

    @property
    def decay_rate(self) -> Fraction:
        """Exponential rate in units of 1/a0."""
        return 1 / self.nu

    @property
    def a0_power(self) -> Fraction:
        return Fraction(-self.dim, 2)

    @property
    def powers(self) -> range:
        return range(self.sector, self.sector + len(self.radial_coeffs))

    def float_terms(self) -> list[tuple[float, int]]:
        """``(coefficient, power)`` pairs of the prefactor polynomial, root included."""
        s = math.sqrt(self.root)
        return [(s * float(c), p) for p, c in zip(self.powers, self.radial_coeffs)]

    def poly_part(self, x):
        out = 0.0
        for c, p in self.float_terms():
            out = out + c * x ** p
        return out

    def radial(self, x):
        """Radial factor at ``x`` (a0 = 1); accepts floats or numpy arrays."""
        return self.poly_part(x) * _exp(-x * float(self.decay_rate))

    def angular(self, *angles) -> complex:
        if self.dim == 3:
            theta, phi = angles
            return spherical_harmonic(self.sector, self.m, theta, phi)
        (phi,) = angles
        return angular_eigenfunction_2d(self.m, phi)

    def descriptor(self) -> dict:
        return {
            "dim": self.dim, "n": self.n, "sector": self.sector, "m": self.m,
            "norm": {"sqrt": self.root, "a0_power": frac_str(self.a0_power)},
            "radial_coeffs": [{"power": p, "coeff": frac_str(c)}
                              for p, c in zip(self.powers, self.radial_coeffs)],
            "decay_rate": frac_str(self.decay_rate),
            "angular": ({"l": self.sector, "m": self.m} if self.dim == 3 else {"m": self.m}),
            "closed_form": self.text(),
        }

    def text(self) -> str:
        var = "r" if self.dim == 3 else "rho"
        terms = " + ".join(f"({frac_str(c)})*({var}/a0)^{p}"
                           for p, c in zip(self.powers, self.radial_coeffs))
        return (f"sqrt({self.root})*a0^({frac_str(self.a0_power)})*[{terms}]"
                f"*exp(-{frac_str(self.decay_rate)}*{var}/a0)")


def _exp(x):
    try:
        return math.exp(x)
    except TypeError:
        import numpy as np
        return np.exp(x)


def _canonical(values: dict) -> tuple[int, tuple]:
    """Turn ``{power: (rational, root)}`` into a common root and rational coefficients."""
    roots = {t for q, t in values.values() if q}
    if len(roots) > 1:
        raise ArithmeticError(f"radial coefficients carry different square roots {roots}")
    root = roots.pop() if roots else 1
    return root, tuple(values[p][0] for p in sorted(values))


def _check(n: int, sector: int, m: int, dim: int):
    if dim not in (2, 3):
        raise SectorError(f"dim must be 2 or 3, got {dim}")
    if n < 1 or not 0 <= sector <= n - 1:
        raise SectorError(f"sector {sector} out of range for n={n}")
    if dim == 3 and abs(m) > sector:
        raise SectorError(f"|m| = {abs(m)} exceeds l = {sector}")
    if dim == 2 and abs(m) != sector:
        raise SectorError("in 2D the radial sector is |m|")


def top_state(n: int, dim: int) -> Wavefunction:
    """Normalized ``<x|n, n-1>``: a single power ``x**(n-1)`` times the exponential."""
    v = nu(n, dim)
    if dim == 3:
        q, t = sqrt_rational((2 / v) ** (2 * n + 1) / math.factorial(2 * n))
    else:
        q, t = sqrt_rational((2 / v) ** (2 * n) / math.factorial(2 * n - 1))
    return Wavefunction(dim, n, n - 1, n - 1, t, (q,))


def closed_form(n: int, sector: int, m: int, dim: int) -> Wavefunction:
    """Laguerre closed form of the normalized wavefunction."""
    _check(n, sector, m, dim)
    k = n - sector - 1
    v = nu(n, dim)
    f = math.factorial
    if dim == 3:
        lag = laguerre(2 * sector + 1, k)
        q, t = sqrt_rational((2 / v) ** 3 * Fraction(f(k), 2 * n * f(n + sector)))
        lead = [(2 / v) ** (sector + j) for j in range(k + 1)]
    else:
        lag = laguerre(2 * sector, k)
        q, t = sqrt_rational(Fraction(f(k), (2 * n - 1) * f(n + sector - 1)))
        lead = [(2 / v) ** (sector + 1 + j) for j in range(k + 1)]
    values = {sector + j: (q * lead[j] * a, t) for j, a in enumerate(lag.coeffs)}
    root, coeffs = _canonical(values)
    return Wavefunction(dim, n, sector, m, root, coeffs)


def _top_coeff(n: int, dim: int) -> UnitCoeff:
    top = top_state(n, dim)
    c = UnitCoeff(top.radial_coeffs[0], root=top.root)
    if dim == 3:
        return c * INV_A0 ** n * INV_A0.sqrt()
    return c * INV_A0 ** n


def ladder_route(n: int, sector: int, m: int, dim: int) -> Wavefunction:
    """``C * (chain polynomial) * top state`` with the ``(-i)**k`` phase removed."""
    _check(n, sector, m, dim)
    chain = run_chain(dim, n, sector)
    k = n - sector - 1
    pref = compute_norm(dim, n, sector).value * UnitCoeff(i_power=k) * _top_coeff(n, dim)
    half_dim = A0.sqrt() if dim == 3 else UnitCoeff.scalar(1)
    values = {}
    for c, e in chain.state.poly.terms():
        p = e + n - 1
        u = c * pref * A0 ** (p + dim // 2) * half_dim
        if not u.is_unitless() or u.i_power:
            raise ArithmeticError(f"ladder route left units or a phase on x^{p}: {u}")
        values[p] = (u.rational, u.root)
    for p in range(sector, n):
        values.setdefault(p, (Fraction(0), 1))
    root, coeffs = _canonical(values)
    return Wavefunction(dim, n, sector, m, root, coeffs)


@lru_cache(maxsize=None)
def full_wavefunction(n: int, sector: int, m: int = 0, dim: int = 3) -> Wavefunction:
    wf = closed_form(n, sector, m, dim)
    alt = ladder_route(n, sector, m, dim)
    if alt != wf:
        raise RouteMismatch(f"ladder route {alt.text()} differs from closed form {wf.text()}")
    return wf


def evaluate(wf: Wavefunction, point) -> complex:
    """Value at ``(r, theta, phi)`` in 3D or ``(rho, phi)`` in 2D, with a0 = 1."""
    x, *angles = point
    return complex(wf.radial(x)) * wf.angular(*angles)


def sample_csv(wf: Wavefunction, points) -> str:
    buf = io.StringIO()
    buf.write("# " + json.dumps(wf.descriptor(), sort_keys=True) + "\n")
    cols = ["r", "theta", "phi"] if wf.dim == 3 else ["rho", "phi"]
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols + ["re_psi", "im_psi"])
    for pt in points:
        v = evaluate(wf, pt)
        writer.writerow([repr(float(c)) for c in pt] + [repr(v.real), repr(v.imag)])
    return buf.getvalue()
