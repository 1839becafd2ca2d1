"""Coulomb factorization ladders in three and two dimensions.

In both cases the sector Hamiltonian is
``H = p**2/(2 mu) + hbar**2 k (k - 1)/(2 mu x**2) - e**2/x`` with ``k = l + 1``
(3D) or ``k = m + 1/2`` (2D), and factorizes as ``B^dag B + E`` with
``B = (p - i hbar (1/(k a0) - k/x)) / sqrt(2 mu)`` and ``E = -e**2/(2 k**2 a0)``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from riqm.coeff import (A0, E_CHARGE, HBAR, INV_A0, INV_SQRT_2MU, I_HBAR, MU, UnitCoeff,
                        frac_str)
from riqm.laguerre import LaguerrePoly, laguerre
from riqm.radial import Laurent, RadialOp, RadialState, nu, reference_state

E2_OVER_A0 = E_CHARGE * E_CHARGE * INV_A0


class SectorError(ValueError):
    pass


def kappa(dim: int, sector: int) -> Fraction:
    if dim == 3:
        if sector < 0:
            raise SectorError("3D sectors are l >= 0")
        return Fraction(sector + 1)
    if dim == 2:
        return Fraction(2 * sector + 1, 2)
    raise SectorError(f"dim must be 2 or 3, got {dim}")


def ground_energy(dim: int, sector: int) -> UnitCoeff:
    """``E_sector = -e**2 / (2 k**2 a0)``."""
    k = kappa(dim, sector)
    return E2_OVER_A0 * (-1 / (2 * k * k))


def energy(dim: int, n: int) -> UnitCoeff:
    """Energy of the shell with principal quantum number ``n`` (``E_{n-1}``)."""
    if n < 1:
        raise SectorError("n must be at least 1")
    return ground_energy(dim, n - 1)


def energy_in_rydberg_units(c: UnitCoeff) -> Fraction:
    """Rational value of an energy in units of ``e**2/a0``."""
    q = c / E2_OVER_A0
    if not q.is_unitless() or q.i_power or q.root != 1:
        raise ValueError(f"{c} is not a rational multiple of e^2/a0")
    return q.rational


@dataclass(frozen=True)
class SectorHamiltonian:
    dim: int
    sector: int
    op: RadialOp


@lru_cache(maxsize=None)
def sector_hamiltonian(dim: int, sector: int) -> SectorHamiltonian:
    k = kappa(dim, sector)
    inv_2mu = MU.inverse() * Fraction(1, 2)
    op = (RadialOp.p(2, inv_2mu)
          + RadialOp.x(-2, HBAR * HBAR * inv_2mu * (k * (k - 1)))
          - RadialOp.x(-1, E_CHARGE * E_CHARGE))
    return SectorHamiltonian(dim, sector, op)


@dataclass(frozen=True)
class LadderOp:
    dim: int
    sector: int
    lowering: RadialOp
    raising: RadialOp
    ground_energy: UnitCoeff


@lru_cache(maxsize=None)
def build_ladder(dim: int, sector: int) -> LadderOp:
    k = kappa(dim, sector)
    shift = RadialOp.scalar(INV_A0 * (1 / k)) - RadialOp.x(-1, UnitCoeff.scalar(k))
    lowering = (RadialOp.p() - shift.scale(I_HBAR)).scale(INV_SQRT_2MU)
    return LadderOp(dim, sector, lowering, lowering.adjoint(), ground_energy(dim, sector))


def check_factorization(dim: int, sector: int, energy_shift: UnitCoeff | None = None) -> RadialOp:
    """``H_s - (B^dag B + E_s)``; ``energy_shift`` perturbs ``E_s`` for fault injection."""
    lad = build_ladder(dim, sector)
    rhs = lad.raising * lad.lowering + RadialOp.scalar(lad.ground_energy)
    if energy_shift is not None:
        rhs = rhs + RadialOp.scalar(energy_shift)
    return sector_hamiltonian(dim, sector).op - rhs


@dataclass(frozen=True)
class IntertwiningReport:
    dim: int
    sector: int
    intertwining: RadialOp
    wrong_order: RadialOp

    @property
    def holds(self) -> bool:
        return self.intertwining.is_zero() and self.wrong_order.is_zero()


def check_intertwining(dim: int, sector: int) -> IntertwiningReport:
    """``H_s B^dag_s - B^dag_s H_{s+1}`` and ``B_s B^dag_s - (H_{s+1} - E_s)``."""
    lad = build_ladder(dim, sector)
    h0 = sector_hamiltonian(dim, sector).op
    h1 = sector_hamiltonian(dim, sector + 1).op
    inter = h0 * lad.raising - lad.raising * h1
    wrong = lad.lowering * lad.raising - (h1 - RadialOp.scalar(lad.ground_energy))
    return IntertwiningReport(dim, sector, inter, wrong)


# chains ---------------------------------------------------------------------

def chain_scale(dim: int, n: int, k: int) -> UnitCoeff:
    """``(2 i hbar / (sqrt(2 mu) nu a0))**k``."""
    base = I_HBAR * INV_SQRT_2MU * INV_A0 * (2 / nu(n, dim))
    return base ** k


@dataclass(frozen=True)
class ChainResult:
    dim: int
    n: int
    sector: int
    b_coeffs: tuple  # Fractions b_0 .. b_k
    scale: UnitCoeff
    state: RadialState = field(compare=False, repr=False)

    @property
    def degree(self) -> int:
        return self.n - self.sector - 1

    def to_json(self) -> dict:
        return {"dim": self.dim, "n": self.n, "sector": self.sector,
                "b_coeffs": [frac_str(b) for b in self.b_coeffs],
                "scale": self.scale.to_json(), "scale_text": str(self.scale)}


def _check_range(dim: int, n: int, sector: int):
    if n < 1:
        raise SectorError("n must be at least 1")
    if not 0 <= sector <= n - 1:
        raise SectorError(f"sector {sector} out of range 0..{n - 1} for n={n}")
    kappa(dim, sector)


def chain_state(dim: int, n: int, sector: int) -> RadialState:
    """``B^dag_sector ... B^dag_{n-2} |n, n-1>`` for any sector below ``n``."""
    state = reference_state(n, dim)
    for q in range(n - 2, sector - 1, -1):
        state = state.apply(build_ladder(dim, q).raising)
    return state


@lru_cache(maxsize=None)
def run_chain(dim: int, n: int, sector: int) -> ChainResult:
    _check_range(dim, n, sector)
    state = chain_state(dim, n, sector)
    k = n - sector - 1
    scale = chain_scale(dim, n, k)
    unit = INV_A0 * (2 / nu(n, dim))
    expected = set(range(-k, 1))
    extra = set(state.poly.exponents()) - expected
    if extra:
        raise ArithmeticError(f"chain produced unexpected powers x^{sorted(extra)}")
    b = []
    for j in range(k + 1):
        c = state.poly.single_coeff(j - k)
        if c.is_zero():
            b.append(Fraction(0))
            continue
        q = c / (scale * unit ** (j - k))
        if not q.is_unitless() or q.i_power or q.root != 1:
            raise ArithmeticError(f"b_{j} is not a rational number: {q}")
        b.append(q.rational)
    return ChainResult(dim, n, sector, tuple(b), scale, state)


def expected_ratio(dim: int, n: int, sector: int, j: int) -> Fraction:
    if dim == 3:
        return Fraction(j - n + sector + 1, (j + 1) * (j + 2 * sector + 2))
    return Fraction(j - n + sector + 1, (j + 1) * (j + 2 * sector + 1))


@dataclass(frozen=True)
class RatioReport:
    holds: bool
    ratios: tuple
    expected: tuple


def check_coefficient_ratios(chain: ChainResult) -> RatioReport:
    b = chain.b_coeffs
    got, want = [], []
    for j in range(len(b) - 1):
        got.append(b[j + 1] / b[j] if b[j] else None)
        want.append(expected_ratio(chain.dim, chain.n, chain.sector, j))
    return RatioReport(got == want, tuple(got), tuple(want))


# normalization --------------------------------------------------------------

def double_factorial(k: int) -> int:
    """``k!!`` with the convention ``(-1)!! = 0!! = 1``."""
    if k < -1:
        raise ValueError("double factorial defined here for k >= -1")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


@dataclass(frozen=True)
class NormConstant:
    dim: int
    n: int
    sector: int
    product_form: UnitCoeff  # prod (E_{n-1} - E_k)
    closed_form: UnitCoeff  # C**2 from the factorial expression

    @property
    def c_squared(self) -> UnitCoeff:
        return self.product_form.inverse()

    @property
    def value(self) -> UnitCoeff:
        return self.c_squared.sqrt()

    @property
    def forms_agree(self) -> bool:
        return self.c_squared == self.closed_form

    def to_json(self) -> dict:
        return {"dim": self.dim, "n": self.n, "sector": self.sector,
                "product_form": self.product_form.to_json(),
                "closed_form_c_squared": self.closed_form.to_json(),
                "C": self.value.to_json(), "C_text": str(self.value),
                "forms_agree": self.forms_agree}


def norm_product(dim: int, n: int, sector: int) -> UnitCoeff:
    e_top = energy(dim, n)
    out = UnitCoeff.scalar(1)
    for q in range(sector, n - 1):
        out = out * (e_top - ground_energy(dim, q))
    return out


def norm_closed_form(dim: int, n: int, sector: int) -> UnitCoeff:
    k = n - sector - 1
    f = math.factorial
    if dim == 3:
        l = sector
        base = A0 / (E_CHARGE * E_CHARGE) * (2 * n * n)
        ratio = Fraction(f(n + l) * f(n - 1) ** 2, f(2 * n - 1) * f(k) * f(l) ** 2)
    else:
        m = sector
        v = nu(n, dim)
        base = A0 / (E_CHARGE * E_CHARGE) * (v * v / 2)
        ratio = Fraction(f(n + m - 1) * double_factorial(2 * n - 3) ** 2,
                         f(2 * n - 2) * f(k) * double_factorial(2 * m - 1) ** 2)
    return base ** k * ratio


@lru_cache(maxsize=None)
def compute_norm(dim: int, n: int, sector: int) -> NormConstant:
    _check_range(dim, n, sector)
    return NormConstant(dim, n, sector, norm_product(dim, n, sector),
                        norm_closed_form(dim, n, sector))


# Laguerre identification ----------------------------------------------------

def laguerre_alpha(dim: int, sector: int) -> int:
    return 2 * sector + 1 if dim == 3 else 2 * sector


def c_prime_closed_form(dim: int, n: int, sector: int) -> Fraction:
    k = n - sector - 1
    f = math.factorial
    if dim == 3:
        l = sector
        return Fraction(-1, 2) ** k * Fraction(f(l) * f(k) * f(2 * n - 1), f(n + l) * f(n - 1))
    m = sector
    return (-1) ** k * Fraction(f(k) * f(2 * n - 2) * double_factorial(2 * m - 1),
                                f(n + m - 1) * double_factorial(2 * n - 3))


def b_top_closed_form(dim: int, n: int, sector: int) -> Fraction:
    """Top coefficient ``b_{n-sector-1}`` predicted from the constant terms of the chain."""
    k = n - sector - 1
    f = math.factorial
    if dim == 3:
        l = sector
        return Fraction(1, 2) ** k * Fraction(f(l) * f(2 * n - 1), f(n - 1) * f(n + l))
    m = sector
    return Fraction(f(2 * n - 2) * double_factorial(2 * m - 1),
                    f(n + m - 1) * double_factorial(2 * n - 3))


def b_top_product_form(dim: int, n: int, sector: int) -> Fraction:
    """Same coefficient from the product of constant terms, one per raising operator."""
    k = n - sector - 1
    v = nu(n, dim)
    prod = Fraction(1)
    for q in range(sector, n - 1):
        prod *= 1 / v + 1 / kappa(dim, q)
    return prod * (v / 2) ** k


@dataclass(frozen=True)
class LaguerreReport:
    dim: int
    n: int
    sector: int
    alpha: int
    degree: int
    c_prime: Fraction | None
    c_prime_expected: Fraction
    proportional: bool
    b_top: Fraction
    b_top_expected: Fraction
    b_top_product: Fraction
    mismatches: tuple = ()

    @property
    def holds(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "degree": self.degree,
                "c_prime": None if self.c_prime is None else frac_str(self.c_prime),
                "c_prime_expected": frac_str(self.c_prime_expected),
                "proportional": self.proportional, "b_top": frac_str(self.b_top),
                "b_top_expected": frac_str(self.b_top_expected),
                "mismatches": list(self.mismatches)}


def laguerre_identify(chain: ChainResult) -> LaguerreReport:
    alpha = laguerre_alpha(chain.dim, chain.sector)
    lag: LaguerrePoly = laguerre(alpha, chain.degree)
    b = chain.b_coeffs
    c_prime = b[0] / lag.coeffs[0] if lag.coeffs[0] else None
    proportional = c_prime is not None and all(bj == c_prime * aj for bj, aj in zip(b, lag.coeffs))
    args = (chain.dim, chain.n, chain.sector)
    expected = c_prime_closed_form(*args)
    top_expected = b_top_closed_form(*args)
    top_product = b_top_product_form(*args)
    mismatches = []
    if not proportional:
        mismatches.append("chain coefficients are not proportional to the Laguerre coefficients")
    if c_prime != expected:
        mismatches.append(f"C' = {c_prime} but the closed form gives {expected}")
    if b[-1] != top_expected:
        mismatches.append(f"top coefficient b_{chain.degree} = {b[-1]} but the closed form gives "
                          f"{top_expected}")
    if b[-1] != top_product:
        mismatches.append(f"top coefficient b_{chain.degree} = {b[-1]} but the constant-term "
                          f"product gives {top_product}")
    return LaguerreReport(chain.dim, chain.n, chain.sector, alpha, chain.degree, c_prime, expected,
                          proportional, b[-1], top_expected, top_product, tuple(mismatches))


# negative m -------------------------------------------------------------------

@dataclass(frozen=True)
class NegativeMReport:
    n: int
    m_abs: int
    operator_residual: RadialOp
    state_factor: UnitCoeff  # prod_k (E_{n-1} - E_k)
    state_residual: Laurent
    normalized_residual: Laurent

    @property
    def holds(self) -> bool:
        return (self.operator_residual.is_zero() and self.state_residual.is_zero()
                and self.normalized_residual.is_zero())


def negative_m_string(m_abs: int) -> RadialOp:
    """``B^dag_{-|m|} ... B^dag_{|m|-1}`` (leftmost factor has the lowest index)."""
    out = RadialOp.scalar(1)
    for q in range(-m_abs, m_abs):
        out = out * build_ladder(2, q).raising
    return out


def check_negative_m(n: int, m_abs: int) -> NegativeMReport:
    if not 0 <= m_abs <= n - 1:
        raise SectorError(f"|m| = {m_abs} out of range for n = {n}")
    h = sector_hamiltonian(2, m_abs).op
    rhs = RadialOp.scalar(1)
    for k in range(m_abs - 1, -1, -1):
        rhs = rhs * (h - RadialOp.scalar(ground_energy(2, k)))
    op_res = negative_m_string(m_abs) - rhs

    e_top = energy(2, n)
    factor = UnitCoeff.scalar(1)
    for k in range(m_abs):
        factor = factor * (e_top - ground_energy(2, k))
    neg = chain_state(2, n, -m_abs)
    pos = chain_state(2, n, m_abs)
    state_res = neg.poly - pos.poly.scale(factor)

    c_pos = compute_norm(2, n, m_abs).value
    neg_product = norm_product(2, n, -m_abs)
    c_neg = neg_product.inverse().sqrt()
    norm_res = neg.poly.scale(c_neg) - pos.poly.scale(c_pos)
    return NegativeMReport(n, m_abs, op_res, factor, state_res, norm_res)


# eigenstates ------------------------------------------------------------------

def check_eigenstate(dim: int, n: int, sector: int,
                     energy_shift: UnitCoeff | None = None) -> RadialState:
    """``(H_sector - E_{n-1})`` applied to the chain state; zero for an eigenstate."""
    chain = run_chain(dim, n, sector)
    e = energy(dim, n)
    if energy_shift is not None:
        e = e + energy_shift
    h = sector_hamiltonian(dim, sector).op
    return chain.state.apply(h) - chain.state.scale(e)


# tabulation ---------------------------------------------------------------------

def summary_rows(dim: int, n_max: int) -> list[dict]:
    rows = []
    for n in range(1, n_max + 1):
        for s in range(n):
            chain = run_chain(dim, n, s)
            norm = compute_norm(dim, n, s)
            rows.append({
                "n": n, "sector": s,
                "E": frac_str(energy_in_rydberg_units(energy(dim, n))),
                "C": str(norm.value),
                "b_coeffs": ";".join(frac_str(b) for b in chain.b_coeffs),
            })
    return rows


def summary_csv(dim: int, n_max: int) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["n", "sector", "E", "C", "b_coeffs"],
                            lineterminator="\n")
    writer.writeheader()
    writer.writerows(summary_rows(dim, n_max))
    return buf.getvalue()
