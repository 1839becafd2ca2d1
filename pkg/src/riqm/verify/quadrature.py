"""Radial overlaps by Gauss-Laguerre or adaptive quadrature, with a doubling error estimate."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy import integrate

from riqm.verify.report import OVERLAP_TOL, QuadratureSpec, ResidualReport
from riqm.wavefn import Wavefunction, full_wavefunction

ROUNDOFF_FLOOR = 1e-13


@lru_cache(maxsize=None)
def _nodes(n: int):
    return np.polynomial.laguerre.laggauss(n)


def _overlap_once(a: Wavefunction, b: Wavefunction, spec: QuadratureSpec) -> float:
    dim = a.dim
    if spec.kind == "gauss-laguerre":
        # substitute t = s x so the weight e^{-t} absorbs both exponentials
        s = float(a.decay_rate + b.decay_rate)
        t, w = _nodes(spec.nodes)
        x = t / s
        return float(np.sum(w * a.poly_part(x) * b.poly_part(x) * x ** (dim - 1)) / s)
    val, _ = integrate.quad(lambda x: a.radial(x) * b.radial(x) * x ** (dim - 1), 0, np.inf,
                            epsabs=1e-14, epsrel=1e-13, limit=400)
    return float(val)


def radial_overlap(a: Wavefunction, b: Wavefunction, spec: QuadratureSpec | None = None):
    """``(value, error_estimate)`` for the radial overlap with measure ``x**(dim-1) dx``."""
    spec = spec or QuadratureSpec()
    if a.dim != b.dim:
        raise ValueError("overlap of wavefunctions in different dimensions")
    v1 = _overlap_once(a, b, spec)
    v2 = _overlap_once(a, b, spec.doubled())
    # the doubling difference alone can undershoot once both rules sit at roundoff
    return v2, abs(v2 - v1) + ROUNDOFF_FLOOR * max(1.0, abs(v2))


def _wf(dim: int, n: int, sector: int) -> Wavefunction:
    return full_wavefunction(n, sector, sector if dim == 2 else 0, dim)


def orthonormality_matrix(dim: int, sector: int, n_max: int, spec: QuadratureSpec | None = None):
    """Gram matrix of radial states ``n = sector+1 .. n_max`` and the largest error estimate."""
    ns = list(range(sector + 1, n_max + 1))
    wfs = [_wf(dim, n, sector) for n in ns]
    gram = np.zeros((len(ns), len(ns)))
    err = 0.0
    for i, a in enumerate(wfs):
        for j in range(i, len(wfs)):
            v, e = radial_overlap(a, wfs[j], spec)
            gram[i, j] = gram[j, i] = v
            err = max(err, e)
    return gram, err


def orthonormality_report(dim: int, sector: int, n_max: int, spec: QuadratureSpec | None = None,
                          tolerance: float = OVERLAP_TOL) -> ResidualReport:
    gram, err = orthonormality_matrix(dim, sector, n_max, spec)
    dev = float(np.max(np.abs(gram - np.eye(len(gram))))) if len(gram) else 0.0
    return ResidualReport(f"gram/{dim}d/s{sector}/nmax{n_max}", dev, tolerance,
                          {"error_estimate": err, "size": len(gram)})
