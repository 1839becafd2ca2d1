"""Trigonometric position operators, angular momentum and curvilinear momenta."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from riqm.coeff import I_HBAR
from riqm.opcore.expr import OpExpr, px, py, pz, r_inv, rho, rho_inv, rx, ry, rz


def cos_theta():
    return rz() * r_inv()


def sin_theta():
    return rho() * r_inv()


def cos_phi():
    return rx() * rho_inv()


def sin_phi():
    return ry() * rho_inv()


def cot_theta():
    return rz() * rho_inv()


def e_r():
    return (sin_theta() * cos_phi(), sin_theta() * sin_phi(), cos_theta())


def e_theta():
    return (cos_theta() * cos_phi(), cos_theta() * sin_phi(), -sin_theta())


def e_phi():
    return (-sin_phi(), cos_phi(), OpExpr.zero())


def e_rho():
    return (cos_phi(), sin_phi(), OpExpr.zero())


def momentum_vector(dim: int = 3):
    return (px(), py(), pz()) if dim == 3 else (px(), py(), OpExpr.zero())


def symmetrized_dot(unit, dim: int = 3) -> OpExpr:
    """``(e.p + p.e) / 2`` with operator-valued unit vector components."""
    p = momentum_vector(dim)
    total = OpExpr.zero()
    for e_a, p_a in zip(unit, p):
        total = total + e_a * p_a + p_a * e_a
    return total * Fraction(1, 2)


def angular_momentum():
    """``L_a = sum eps_abc r_b p_c``."""
    return (
        ry() * pz() - rz() * py(),
        rz() * px() - rx() * pz(),
        rx() * py() - ry() * px(),
    )


def l_squared() -> OpExpr:
    return sum((c * c for c in angular_momentum()), OpExpr.zero())


def l_dot_e_phi() -> OpExpr:
    """``L . e_phi`` with the angular momentum to the left."""
    lx, ly, _ = angular_momentum()
    return -(lx * sin_phi()) + ly * cos_phi()


class ConstructionError(AssertionError):
    """A symmetrized construction disagrees with its closed quantum-corrected form."""


# explicit quantum-corrected forms
def _explicit_radial():
    return (sin_theta() * cos_phi() * px() + sin_theta() * sin_phi() * py()
            + cos_theta() * pz() - r_inv().scale(I_HBAR))


def _explicit_theta():
    return (cos_theta() * cos_phi() * px() + cos_theta() * sin_phi() * py()
            - sin_theta() * pz() - (cot_theta() * r_inv()).scale(I_HBAR * Fraction(1, 2)))


def _explicit_phi():
    return -sin_phi() * px() + cos_phi() * py()


def _explicit_planar_radial():
    return cos_phi() * px() + sin_phi() * py() - rho_inv().scale(I_HBAR * Fraction(1, 2))


_SPHERICAL = {
    "radial": (e_r, _explicit_radial),
    "theta": (e_theta, _explicit_theta),
    "phi": (e_phi, _explicit_phi),
}

_PLANAR = {
    "radial": (e_rho, _explicit_planar_radial),
    "phi": (e_phi, _explicit_phi),
}


@lru_cache(maxsize=None)
def build_spherical_momentum(which: str) -> OpExpr:
    """p_r, p_theta or p_phi from the symmetrized dot product with the unit vector."""
    try:
        unit, explicit = _SPHERICAL[which]
    except KeyError:
        raise ValueError(f"unknown spherical component {which!r}") from None
    built = symmetrized_dot(unit(), 3)
    if built != explicit():
        raise ConstructionError(f"symmetrized p_{which} disagrees with its corrected form")
    return built


@lru_cache(maxsize=None)
def build_planar_momentum(which: str) -> OpExpr:
    """p_rho or p_phi in the plane (no z generators)."""
    try:
        unit, explicit = _PLANAR[which]
    except KeyError:
        raise ValueError(f"unknown planar component {which!r}") from None
    built = symmetrized_dot(unit(), 2)
    if built != explicit():
        raise ConstructionError(f"symmetrized planar p_{which} disagrees with its corrected form")
    return built


def quantum_correction(which: str, dim: int = 3) -> OpExpr:
    """The part of the symmetrized momentum beyond the position-left ``e.p`` product."""
    table = _SPHERICAL if dim == 3 else _PLANAR
    unit, _ = table[which]
    p = momentum_vector(dim)
    plain = sum((e_a * p_a for e_a, p_a in zip(unit(), p)), OpExpr.zero())
    build = build_spherical_momentum if dim == 3 else build_planar_momentum
    return build(which) - plain


def atoms() -> dict[str, OpExpr]:
    """Named derived operators available to identity trees."""
    lx, ly, lz = angular_momentum()
    return {
        "cos_theta": cos_theta(), "sin_theta": sin_theta(),
        "cos_phi": cos_phi(), "sin_phi": sin_phi(), "cot_theta": cot_theta(),
        "p_r": build_spherical_momentum("radial"),
        "p_theta": build_spherical_momentum("theta"),
        "p_phi": build_spherical_momentum("phi"),
        "p_rho": build_planar_momentum("radial"),
        "p_phi_2d": build_planar_momentum("phi"),
        "Lx": lx, "Ly": ly, "Lz": lz,
        "L2": l_squared(),
        "L_dot_e_phi": l_dot_e_phi(),
    }
