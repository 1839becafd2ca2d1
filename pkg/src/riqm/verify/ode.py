"""Radial eigenvalue-equation residuals and node counts in the position representation.

Units: a0 = 1 and e**2/a0 = 1, so hbar = mu = e = 1.  Functions of the form
``sum_p c_p x**s_p exp(-beta x)`` are differentiated analytically.

3D:  -(1/2)(R'' + 2 R'/r) + (l(l+1)/(2 r**2) - 1/r) R
2D:  -(1/2)(R'' + R'/rho) + (m**2/(2 rho**2) - 1/rho) R          (on R)
     -(1/2) u'' + ((m**2 - 1/4)/(2 rho**2) - 1/rho) u,  u = sqrt(rho) R
"""

from __future__ import annotations

import numpy as np
import sympy

from riqm.ladder import energy, energy_in_rydberg_units
from riqm.verify.report import ODE_TOL, ResidualReport
from riqm.wavefn import Wavefunction


def _derivs(terms, beta: float, x):
    """Value, first and second derivative of ``sum c x**s exp(-beta x)``."""
    f = np.zeros_like(x)
    d1 = np.zeros_like(x)
    d2 = np.zeros_like(x)
    for c, s in terms:
        f += c * x ** s
        d1 += c * (s * x ** (s - 1) - beta * x ** s)
        d2 += c * (s * (s - 1) * x ** (s - 2) - 2 * beta * s * x ** (s - 1) + beta ** 2 * x ** s)
    e = np.exp(-beta * x)
    return f * e, d1 * e, d2 * e


def default_grid(wf: Wavefunction, points: int = 2000):
    return np.linspace(0.1, 30.0 * float(wf.nu), points)


def ode_residuals(wf: Wavefunction, energy_factor: float = 1.0, grid=None) -> dict:
    """Relative residuals ``max|H f - E f| / max|E f|`` for each operator form."""
    x = default_grid(wf) if grid is None else np.asarray(grid, dtype=float)
    e = float(energy_in_rydberg_units(energy(wf.dim, wf.n))) * energy_factor
    beta = float(wf.decay_rate)
    terms = wf.float_terms()
    out = {}
    if wf.dim == 3:
        l = wf.sector
        f, d1, d2 = _derivs(terms, beta, x)
        h = -0.5 * (d2 + 2 * d1 / x) + (l * (l + 1) / (2 * x ** 2) - 1 / x) * f
        out["radial"] = float(np.max(np.abs(h - e * f)) / np.max(np.abs(e * f)))
        return out
    m = wf.sector
    f, d1, d2 = _derivs(terms, beta, x)
    h = -0.5 * (d2 + d1 / x) + (m * m / (2 * x ** 2) - 1 / x) * f
    out["radial"] = float(np.max(np.abs(h - e * f)) / np.max(np.abs(e * f)))
    u_terms = [(c, s + 0.5) for c, s in terms]
    u, _, u2 = _derivs(u_terms, beta, x)
    hu = -0.5 * u2 + ((m * m - 0.25) / (2 * x ** 2) - 1 / x) * u
    out["sqrt_rho"] = float(np.max(np.abs(hu - e * u)) / np.max(np.abs(e * u)))
    return out


def ode_residual(wf: Wavefunction, energy_factor: float = 1.0, grid=None,
                 tolerance: float = ODE_TOL) -> ResidualReport:
    res = ode_residuals(wf, energy_factor, grid)
    case = f"ode/{wf.dim}d/n{wf.n}/s{wf.sector}"
    return ResidualReport(case, max(res.values()), tolerance, res)


def node_count_exact(wf: Wavefunction) -> int:
    """Number of distinct positive roots of the radial prefactor polynomial."""
    x = sympy.Symbol("x")
    poly = sum(sympy.Rational(c.numerator, c.denominator) * x ** (p - wf.sector)
               for p, c in zip(wf.powers, wf.radial_coeffs))
    poly = sympy.Poly(poly, x)
    if poly.degree() == 0:
        return 0
    return sum(1 for r in sympy.real_roots(poly) if r > 0)


def node_count_grid(wf: Wavefunction, points: int = 20000) -> int:
    """Sign changes of the prefactor polynomial over a fine grid on (0, X]."""
    top = 2 * float(wf.nu) * (4 * wf.n + 10)
    x = np.linspace(1e-6, top, points)
    v = wf.poly_part(x)
    s = np.sign(v)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))
