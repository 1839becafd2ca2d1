import csv
import io
import json
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from scipy import integrate
from sympy.physics.hydrogen import R_nl

from riqm.ladder import SectorError
from riqm.wavefn import (closed_form, evaluate, full_wavefunction, ladder_route, sample_csv,
                         top_state)


def test_top_state_3d_n1():
    wf = top_state(1, 3)
    assert wf.radial_coeffs == (2,) and wf.root == 1 and wf.decay_rate == 1


def test_top_state_2d_n1():
    wf = top_state(1, 2)
    assert wf.radial_coeffs == (4,) and wf.root == 1 and wf.decay_rate == 2


@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("n", range(1, 7))
def test_top_state_normalized(dim, n):
    wf = top_state(n, dim)
    val, _ = integrate.quad(lambda x: wf.radial(x) ** 2 * x ** (dim - 1), 0, np.inf,
                            epsabs=1e-13, epsrel=1e-13)
    assert abs(val - 1) < 1e-10


def test_ground_state_at_origin():
    wf = full_wavefunction(1, 0, 0, 3)
    assert evaluate(wf, (0.0, 0.3, 1.0)) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)


def test_planar_ground_state():
    wf = full_wavefunction(1, 0, 0, 2)
    assert wf.radial_coeffs == (4,) and wf.decay_rate == 2
    assert evaluate(wf, (0.0, 0.5)) == pytest.approx(4 / math.sqrt(2 * math.pi))


def test_2p_state():
    wf = full_wavefunction(2, 1, 0, 3)
    assert wf.powers == range(1, 2)
    assert wf.root == 6 and wf.radial_coeffs == (Fraction(1, 12),)
    assert evaluate(wf, (0.0, 0.4, 0.0)) == 0
    for m in (-1, 1):
        assert evaluate(full_wavefunction(2, 1, m, 3), (0.0, 0.4, 0.0)) == 0


@pytest.mark.parametrize("n", range(1, 8))
def test_matches_sympy_hydrogen(n):
    r = sympy.Symbol("r", positive=True)
    for l in range(n):
        wf = full_wavefunction(n, l, 0, 3)
        want = sympy.lambdify(r, R_nl(n, l, r, 1))
        for x in (0.05, 0.7, 3.0, 11.0, 30.0):
            assert math.isclose(wf.radial(x), float(want(x)), rel_tol=1e-12, abs_tol=1e-300)


@pytest.mark.parametrize("dim", [2, 3])
def test_two_routes_agree_exactly(dim):
    for n in range(1, 9):
        for s in range(n):
            m = s if dim == 2 else 0
            assert ladder_route(n, s, m, dim) == closed_form(n, s, m, dim)


def test_decay_at_large_radius():
    for dim in (2, 3):
        for n in range(1, 7):
            for s in range(n):
                wf = full_wavefunction(n, s, s if dim == 2 else 0, dim)
                grid = np.linspace(0, 4 * n * n + 10, 4000)
                peak = np.max(np.abs(wf.radial(grid)))
                far = abs(wf.radial(50 * float(wf.nu)))
                assert far < 1e-12 * peak


def test_negative_m_shares_the_radial_part():
    a = full_wavefunction(3, 2, -2, 2)
    b = full_wavefunction(3, 2, 2, 2)
    assert a.radial_coeffs == b.radial_coeffs
    z = evaluate(a, (1.0, 0.3)) - evaluate(b, (1.0, 0.3)).conjugate()
    assert abs(z) < 1e-15


@pytest.mark.parametrize("args", [(2, 2, 0, 3), (2, 1, 2, 3), (3, 1, 0, 2), (0, 0, 0, 3)])
def test_out_of_range(args):
    with pytest.raises(SectorError):
        full_wavefunction(*args)


def test_descriptor_and_csv():
    wf = full_wavefunction(2, 0, 0, 3)
    d = wf.descriptor()
    assert d["decay_rate"] == "1/2" and d["norm"]["a0_power"] == "-3/2"
    text = sample_csv(wf, [(0.0, 0.0, 0.0), (1.5, 0.2, 0.3)])
    head, body = text.split("\n", 1)
    assert json.loads(head[2:]) == json.loads(json.dumps(d, sort_keys=True))
    rows = list(csv.reader(io.StringIO(body)))
    assert rows[0] == ["r", "theta", "phi", "re_psi", "im_psi"]
    assert float(rows[1][3]) == pytest.approx(evaluate(wf, (0.0, 0.0, 0.0)).real)


def test_text_form():
    assert full_wavefunction(2, 1, 0, 3).text() == \
        "sqrt(6)*a0^(-3/2)*[(1/12)*(r/a0)^1]*exp(-1/2*r/a0)"
