import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st
from scipy import special

from riqm.laguerre import (angular_eigenfunction_2d, eval_poly, laguerre, spherical_harmonic)


def test_examples():
    assert laguerre(3, 1).coeffs == (4, -1)
    assert laguerre(7, 0).coeffs == (1,)
    assert laguerre(0, 2).coeffs == (1, -2, Fraction(1, 2))


def test_eval_examples():
    assert eval_poly(laguerre(5, 0), 3.7) == 1.0
    assert eval_poly(laguerre(3, 1), 4, exact=True) == 0
    assert eval_poly(laguerre(3, 1), 0, exact=True) == 4
    assert laguerre(3, 1)(4.0) == 0.0


def test_negative_inputs():
    with pytest.raises(ValueError):
        laguerre(-1, 2)
    with pytest.raises(ValueError):
        laguerre(1, -2)


@pytest.mark.parametrize("alpha", range(0, 6))
@pytest.mark.parametrize("m", range(0, 6))
def test_matches_sympy_expansion(alpha, m):
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.expand(sympy.assoc_laguerre(m, alpha, x)), x)
    want = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    assert list(laguerre(alpha, m).coeffs) == want


def test_ratio_law_up_to_25():
    for alpha in range(26):
        for m in range(26):
            assert laguerre(alpha, m).ratio_law_holds()


@given(st.integers(0, 12), st.integers(0, 12), st.fractions(-20, 20, max_denominator=50))
def test_exact_eval_matches_sympy(alpha, m, x):
    want = sympy.assoc_laguerre(m, alpha, sympy.Rational(x.numerator, x.denominator))
    got = eval_poly(laguerre(alpha, m), x, exact=True)
    assert got == Fraction(int(sympy.fraction(want)[0]), int(sympy.fraction(want)[1]))


@pytest.mark.parametrize("alpha", [0, 1, 3, 6])
def test_orthogonality(alpha):
    t, w = special.roots_genlaguerre(40, alpha)
    for m in range(9):
        for k in range(9):
            a = np.array([eval_poly(laguerre(alpha, m), v) for v in t])
            b = np.array([eval_poly(laguerre(alpha, k), v) for v in t])
            h = [math.gamma(j + alpha + 1) / math.factorial(j) for j in (m, k)]
            val = float(np.sum(w * a * b)) / math.sqrt(h[0] * h[1])
            assert abs(val - (m == k)) < 1e-10


def test_float_eval_matches_scipy():
    for alpha in range(6):
        for m in range(8):
            for x in (0.0, 0.3, 2.5, 9.0):
                poly = laguerre(alpha, m)
                scale = sum(abs(float(c)) * x ** j for j, c in enumerate(poly.coeffs))
                diff = abs(eval_poly(poly, x) - special.eval_genlaguerre(m, alpha, x))
                assert diff <= 1e-13 * scale


# angular functions ----------------------------------------------------------------

def test_planar_angular():
    assert math.isclose(angular_eigenfunction_2d(0, 1.3).real, 1 / math.sqrt(2 * math.pi))
    assert angular_eigenfunction_2d(1, 0.0) == pytest.approx(1 / math.sqrt(2 * math.pi))


@given(st.integers(-6, 6), st.floats(-10, 10))
def test_planar_modulus(m, phi):
    assert math.isclose(abs(angular_eigenfunction_2d(m, phi)) ** 2, 1 / (2 * math.pi))


def test_harmonic_examples():
    assert spherical_harmonic(0, 0, 0.7, 2.0) == pytest.approx(1 / math.sqrt(4 * math.pi))
    assert spherical_harmonic(1, 0, 0.0, 1.0) == pytest.approx(math.sqrt(3 / (4 * math.pi)))
    with pytest.raises(ValueError):
        spherical_harmonic(1, 2, 0.0, 0.0)


def _sphere_gram(lm_list, nodes=40):
    # Gauss-Legendre in cos(theta), trapezoid in phi: exact for band-limited integrands
    xs, ws = np.polynomial.legendre.leggauss(nodes)
    phis = np.linspace(0, 2 * math.pi, 2 * nodes, endpoint=False)
    dphi = 2 * math.pi / len(phis)
    vals = {}
    for lm in lm_list:
        vals[lm] = np.array([[spherical_harmonic(*lm, math.acos(x), p) for p in phis] for x in xs])
    gram = {}
    for a in lm_list:
        for b in lm_list:
            gram[a, b] = complex(np.sum(ws[:, None] * vals[a].conj() * vals[b]) * dphi)
    return gram


def test_harmonic_norm_y10():
    g = _sphere_gram([(1, 0)])
    assert abs(g[(1, 0), (1, 0)] - 1) < 1e-12


def test_harmonic_orthonormality():
    lms = [(l, m) for l in range(4) for m in range(-l, l + 1)]
    g = _sphere_gram(lms)
    for a in lms:
        for b in lms:
            assert abs(g[a, b] - (1 if a == b else 0)) < 1e-12


def test_harmonics_match_scipy():
    for l in range(5):
        for m in range(-l, l + 1):
            for th, ph in ((0.4, 1.1), (2.0, -0.7)):
                want = special.sph_harm_y(l, m, th, ph)
                assert cmath.isclose(spherical_harmonic(l, m, th, ph), want, abs_tol=1e-13)
