"""Position-representation oracle for the operator identity catalog.

Every symbol of an identity tree is realized as an operator on sympy
expressions in ``x, y, z``: positions multiply, ``p_a = -i hbar d/da``, and the
curvilinear momenta use their textbook differential forms, e.g.
``p_r = -i hbar (d/dr + 1/r)``.  None of this shares code with the exact
engine.  Both sides act on random test functions ``P(x, y, z) r**s rho**t`` and
are compared at random points away from the z axis.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import sympy
from sympy import I, Rational, sqrt

from riqm.coeff import UnitCoeff
from riqm.opcore.identities import IH, get_identity
from riqm.opcore.tree import Node, evaluate, num, sym
from riqm.verify.report import COMMUTATOR_TOL, ResidualReport

X, Y, Z = sympy.symbols("x y z", real=True)
R = sqrt(X ** 2 + Y ** 2 + Z ** 2)
RHO = sqrt(X ** 2 + Y ** 2)

# generic unit values so that no accidental cancellation hides an error
HBAR = Rational(83, 100)
MU = Rational(13, 10)
ECH = Rational(7, 10)


@dataclass(frozen=True)
class Op:
    act: object  # callable on sympy expressions
    mult: object = None  # sympy expression when the operator is multiplication

    def __call__(self, f):
        return self.act(f)


def mult(g) -> Op:
    return Op(lambda f: g * f, g)


def _mom(v) -> Op:
    return Op(lambda f: -I * HBAR * sympy.diff(f, v))


def _dr(f):
    return (X * sympy.diff(f, X) + Y * sympy.diff(f, Y) + Z * sympy.diff(f, Z)) / R


def _dtheta(f):
    return Z / RHO * (X * sympy.diff(f, X) + Y * sympy.diff(f, Y)) - RHO * sympy.diff(f, Z)


def _dphi(f):
    return X * sympy.diff(f, Y) - Y * sympy.diff(f, X)


def _drho(f):
    return (X * sympy.diff(f, X) + Y * sympy.diff(f, Y)) / RHO


def _angular():
    lx = Op(lambda f: -I * HBAR * (Y * sympy.diff(f, Z) - Z * sympy.diff(f, Y)))
    ly = Op(lambda f: -I * HBAR * (Z * sympy.diff(f, X) - X * sympy.diff(f, Z)))
    lz = Op(lambda f: -I * HBAR * _dphi(f))
    return lx, ly, lz


def leaves() -> dict:
    lx, ly, lz = _angular()
    cot = Z / RHO
    return {
        "rx": mult(X), "ry": mult(Y), "rz": mult(Z),
        "r": mult(R), "r_inv": mult(1 / R), "rho": mult(RHO), "rho_inv": mult(1 / RHO),
        "px": _mom(X), "py": _mom(Y), "pz": _mom(Z),
        "cos_theta": mult(Z / R), "sin_theta": mult(RHO / R),
        "cos_phi": mult(X / RHO), "sin_phi": mult(Y / RHO), "cot_theta": mult(cot),
        "p_r": Op(lambda f: -I * HBAR * (_dr(f) + f / R)),
        "p_theta": Op(lambda f: -I * HBAR / R * (_dtheta(f) + cot * f / 2)),
        "p_phi": Op(lambda f: -I * HBAR / RHO * _dphi(f)),
        "p_rho": Op(lambda f: -I * HBAR * (_drho(f) + f / (2 * RHO))),
        "p_phi_2d": Op(lambda f: -I * HBAR / RHO * _dphi(f)),
        "Lx": lx, "Ly": ly, "Lz": lz,
        "L2": Op(lambda f: lx(lx(f)) + ly(ly(f)) + lz(lz(f))),
        "L_dot_e_phi": Op(lambda f: -lx(Y / RHO * f) + ly(X / RHO * f)),
    }


def scalar_value(c: UnitCoeff):
    v = Rational(c.rational.numerator, c.rational.denominator) * sqrt(c.root)
    v *= HBAR ** _rat(c.hbar) * MU ** _rat(c.mu) * ECH ** _rat(c.e)
    return I * v if c.i_power else v


def _rat(q):
    return Rational(q.numerator, q.denominator)


def _add(a: Op, b: Op) -> Op:
    m = a.mult + b.mult if a.mult is not None and b.mult is not None else None
    return Op(lambda f: a(f) + b(f), m)


def _mul(a: Op, b: Op) -> Op:
    m = a.mult * b.mult if a.mult is not None and b.mult is not None else None
    return Op(lambda f: a(b(f)), m)


def _invert(a: Op) -> Op:
    if a.mult is None:
        raise ValueError("only multiplication operators can be inverted")
    return mult(1 / a.mult)


def _bracket(a: Op, b: Op) -> Op:
    return Op(lambda f: a(b(f)) - b(a(f)), 0 if a.mult is not None and b.mult is not None else None)


def realize(tree: Node) -> Op:
    table = leaves()
    return evaluate(tree, leaf=lambda name: table[name], scalar=lambda c: mult(scalar_value(c)),
                    add=_add, mul=_mul, invert=_invert, bracket=_bracket)


def test_functions(rng: random.Random, dim: int, count: int):
    out = []
    for _ in range(count):
        deg = rng.randint(0, 2)
        poly = 0
        gens = (X, Y, Z) if dim == 3 else (X, Y)
        for _ in range(3):
            mono = 1
            for g in gens:
                mono *= g ** rng.randint(0, deg)
            poly += rng.randint(-4, 4) * mono
        poly = poly if poly != 0 else 1 + X
        s = rng.randint(-3, 3) if dim == 3 else 0
        t = rng.randint(-3, 3)
        out.append(poly * R ** s * RHO ** t if dim == 3 else poly * RHO ** t)
    return out


def sample_points(rng: random.Random, dim: int, count: int):
    pts = []
    for _ in range(count):
        r = rng.uniform(0.5, 2.0)
        phi = rng.uniform(0, 2 * math.pi)
        theta = rng.uniform(0.3, math.pi - 0.3) if dim == 3 else math.pi / 2
        pts.append((mpmath.mpf(r * math.sin(theta) * math.cos(phi)),
                    mpmath.mpf(r * math.sin(theta) * math.sin(phi)),
                    mpmath.mpf(r * math.cos(theta)) if dim == 3 else mpmath.mpf(0)))
    return pts


@lru_cache(maxsize=None)
def differential_commutator_oracle(key: str, seed: int = 0, corrupt: bool = False,
                                   functions: int = 2, points: int = 3,
                                   tolerance: float = COMMUTATOR_TOL) -> ResidualReport:
    """Relative residual of ``lhs - rhs`` acting on sampled test functions.

    With ``corrupt=True`` the right-hand side becomes ``-rhs + i hbar / r`` (a sign
    flip plus a shift that also breaks identities whose right side vanishes).
    """
    ident = get_identity(key)
    rhs_tree = ident.rhs
    if corrupt:
        rhs_tree = num(-1) * rhs_tree + IH * sym("r_inv")
    lhs, rhs = realize(ident.lhs), realize(rhs_tree)
    rng = random.Random(f"{seed}:{key}")
    worst, scale = 0.0, 0.0
    for f in test_functions(rng, ident.dim, functions):
        fn = sympy.lambdify([X, Y, Z], [lhs(f), rhs(f), f], "mpmath")
        for pt in sample_points(rng, ident.dim, points):
            with mpmath.workdps(30):
                a, b, fv = (complex(v) for v in fn(*pt))
            fv = abs(fv)
            worst = max(worst, abs(a - b))
            scale = max(scale, abs(a), abs(b), fv * float(HBAR))
    rel = worst / scale if scale else worst
    return ResidualReport(f"oracle/{key}" + ("/corrupt" if corrupt else ""), rel, tolerance,
                          {"dim": ident.dim, "seed": seed})
