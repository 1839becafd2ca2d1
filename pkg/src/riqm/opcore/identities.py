"""Registry of operator identities checked by the exact engine.

Each identity is a pair of raw trees over generator and derived-operator
symbols.  ``check_identity`` normal-orders ``lhs - rhs`` and reports the
residual.  The differential oracle in ``riqm.verify.differential`` interprets
the very same trees with its own operator definitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from riqm.coeff import HBAR, I_HBAR
from riqm.opcore.expr import OpExpr
from riqm.opcore.spherical import atoms
from riqm.opcore.tree import Node, comm, normal_order, num, sym


class UnknownIdentity(KeyError):
    pass


@dataclass(frozen=True)
class Identity:
    key: str
    dim: int
    lhs: Node
    rhs: Node
    note: str = ""


@dataclass(frozen=True)
class IdentityReport:
    key: str
    holds: bool
    residual: OpExpr

    def to_json(self) -> dict:
        return {"id": self.key, "holds": self.holds, "residual": self.residual.to_json(),
                "residual_text": str(self.residual)}


S = sym
PX, PY, PZ = S("px"), S("py"), S("pz")
RX, RY, RZ = S("rx"), S("ry"), S("rz")
R, RI, RHO, RHOI = S("r"), S("r_inv"), S("rho"), S("rho_inv")
CT, ST, CP, SP, COT = S("cos_theta"), S("sin_theta"), S("cos_phi"), S("sin_phi"), S("cot_theta")
P_R, P_T, P_P = S("p_r"), S("p_theta"), S("p_phi")
P_RHO, P_P2 = S("p_rho"), S("p_phi_2d")
LX, LY, LZ, L2, LE = S("Lx"), S("Ly"), S("Lz"), S("L2"), S("L_dot_e_phi")

IH = num(I_HBAR)
HALF = num(Fraction(1, 2))
HBAR2 = num(HBAR * HBAR)
ZERO = num(0)
P = {"x": PX, "y": PY, "z": PZ}
RA = {"x": RX, "y": RY, "z": RZ}


def _pow(x, k):
    out = x
    for _ in range(k - 1):
        out = out * x
    return out


def _catalog() -> list[Identity]:
    out: list[Identity] = []

    def add(key, lhs, rhs, dim=3, note=""):
        out.append(Identity(key, dim, lhs, rhs, note))

    # canonical relation and commuting momenta
    for a in "xyz":
        for b in "xyz":
            add(f"ccr_{a}{b}", comm(RA[a], P[b]), IH if a == b else ZERO)
    for a, b in (("x", "y"), ("y", "z"), ("x", "z")):
        add(f"momenta_commute_{a}{b}", comm(P[a], P[b]), ZERO)

    r2_cart = RX * RX + RY * RY + RZ * RZ
    for a in "xyz":
        add(f"momentum_rsquared_{a}", comm(P[a], r2_cart), num(-2) * IH * RA[a])
        add(f"momentum_rsquared2_{a}", comm(P[a], R * R), num(-2) * IH * RA[a])
        add(f"momentum_r_comm_{a}", comm(P[a], R), -IH * RA[a] * RI)
        add(f"momentum_1/r_comm_{a}", comm(P[a], RI), IH * RA[a] * _pow(RI, 3))
        planar = a != "z"
        add(f"momentum_rho_comm_{a}", comm(P[a], RHO), -IH * RA[a] * RHOI if planar else ZERO)
        add(f"momentum_1/rho_comm_{a}", comm(P[a], RHOI),
            IH * RA[a] * _pow(RHOI, 3) if planar else ZERO)

    r3i = _pow(RI, 3)
    rho3i = _pow(RHOI, 3)
    add("momentum_costheta_comm_x", comm(PX, CT), IH * RX * RZ * r3i)
    add("momentum_costheta_comm_y", comm(PY, CT), IH * RY * RZ * r3i)
    add("momentum_costheta_comm_z", comm(PZ, CT), -IH * RHO * RHO * r3i)
    add("momentum_sintheta_comm_x", comm(PX, ST), -IH * RX * RZ * RZ * RHOI * r3i)
    add("momentum_sintheta_comm_y", comm(PY, ST), -IH * RY * RZ * RZ * RHOI * r3i)
    add("momentum_sintheta_comm_z", comm(PZ, ST), IH * RHO * RZ * r3i)
    add("momentum_cosphi_comm_x", comm(PX, CP), -IH * RY * RY * rho3i)
    add("momentum_cosphi_comm_y", comm(PY, CP), IH * RX * RY * rho3i)
    add("momentum_cosphi_comm_z", comm(PZ, CP), ZERO)
    add("momentum_sinphi_comm_x", comm(PX, SP), IH * RX * RY * rho3i)
    add("momentum_sinphi_comm_y", comm(PY, SP), -IH * RX * RX * rho3i)
    add("momentum_sinphi_comm_z", comm(PZ, SP), ZERO)
    add("trig_commute", comm(CT, SP) + comm(ST, CP) + comm(CT, R) + comm(SP, RHO), ZERO)

    # spherical momentum components
    add("radial_mom", P_R, ST * CP * PX + ST * SP * PY + CT * PZ - IH * RI,
        note="second Cartesian term uses p_y")
    add("theta_mom", P_T, CT * CP * PX + CT * SP * PY - ST * PZ - IH * COT * RI * HALF)
    add("phi_mom", P_P, -SP * PX + CP * PY)
    add("phi_mom_Lz", P_P, RHOI * LZ)

    add("radial_momentum_r_comm", comm(P_R, R), -IH)
    add("radial_momentum_rho_comm", comm(P_R, RHO), -IH * ST)
    for name, t in (("cos_theta", CT), ("sin_theta", ST), ("cos_phi", CP), ("sin_phi", SP)):
        add(f"radial_momentum_{name}_comm", comm(P_R, t), ZERO)
    add("theta_momentum_r_comm", comm(P_T, R), ZERO)
    add("theta_momentum_cos_phi_comm", comm(P_T, CP), ZERO)
    add("theta_momentum_sin_phi_comm", comm(P_T, SP), ZERO)
    add("theta_momentum_trig_comm_cos", comm(P_T, CT), IH * ST * RI)
    add("theta_momentum_trig_comm_sin", comm(P_T, ST), -IH * CT * RI)
    add("theta_mom_rho_comm", comm(P_T, RHO), -IH * CT)
    for name, t in (("cos_theta", CT), ("sin_theta", ST), ("r", R), ("rho", RHO)):
        add(f"phi_momentum_{name}_comm", comm(P_P, t), ZERO)
    add("phi_momentum_trig_com_cos", comm(P_P, CP), IH * SP * RHOI)
    add("phi_momentum_trig_com_sin", comm(P_P, SP), -IH * CP * RHOI)

    add("radial_momentum_theta_momentum_comm", comm(P_R, P_T), IH * RI * P_T)
    add("radial_momentum_phi_momentum_comm", comm(P_R, P_P), IH * RI * P_P)
    add("theta_momentum_phi_momentum_comm", comm(P_T, P_P), IH * COT * RI * P_P)

    # angular momentum
    for name, t in (("r", R), ("cos_theta", CT), ("sin_theta", ST), ("L_dot_e_phi", LE),
                    ("p_r", P_R)):
        add(f"Lz_commutes_{name}", comm(LZ, t), ZERO)
    for name, t in (("r", R), ("p_r", P_R)):
        for lname, l_op in (("Lx", LX), ("Ly", LY)):
            add(f"{lname}_commutes_{name}", comm(l_op, t), ZERO)
    add("Lz_commutes_pz", comm(LZ, PZ), ZERO)

    # decompositions
    add("pz_decomposition", PZ, (P_R - IH * HALF * RI) * CT - P_T * ST)
    add("ptheta_via_L", P_T, RI * (LE + IH * HALF * COT))
    add("translation_exponent_3d", (P_R - IH * HALF * RI) * CT - P_T * ST,
        (P_R - IH * RI) * CT - RI * LE * ST)

    rdotp = RX * PX + RY * PY + RZ * PZ
    add("radial_momentum_squared", P_R * P_R, RI * (rdotp - IH) * RI * (rdotp - IH))
    add("radial_momentum_squared_expanded", P_R * P_R,
        RI * RI * (RX * RX * PX * PX + RY * RY * PY * PY + RZ * RZ * PZ * PZ
                   + num(2) * RX * RY * PX * PY + num(2) * RY * RZ * PY * PZ
                   + num(2) * RZ * RX * PZ * PX - num(2) * IH * rdotp),
        note="cross term r_z r_x p_z p_x")
    add("angular_momentum_squared", RI * RI * L2,
        RI * RI * ((RY * RY + RZ * RZ) * PX * PX + (RX * RX + RZ * RZ) * PY * PY
                   + (RX * RX + RY * RY) * PZ * PZ
                   - num(2) * RX * RY * PX * PY - num(2) * RY * RZ * PY * PZ
                   - num(2) * RZ * RX * PZ * PX + num(2) * IH * rdotp),
        note="cross term r_z r_x p_z p_x")
    add("ke_3d", PX * PX + PY * PY + PZ * PZ, P_R * P_R + L2 * RI * RI)

    # plane polar
    add("radial_momentum_2d", P_RHO, CP * PX + SP * PY - IH * HALF * RHOI, dim=2)
    add("phi_momentum_2d", P_P2, -SP * PX + CP * PY, dim=2)
    add("radial_momentum_rho_com_2d", comm(P_RHO, RHO), -IH, dim=2)
    add("radial_momentum_cos_phi_2d", comm(P_RHO, CP), ZERO, dim=2)
    add("radial_momentum_sin_phi_2d", comm(P_RHO, SP), ZERO, dim=2)
    add("phi_momentum_trig_com_2d_cos", comm(P_P2, CP), IH * SP * RHOI, dim=2)
    add("phi_momentum_trig_com_2d_sin", comm(P_P2, SP), -IH * CP * RHOI, dim=2)
    add("phi_momentum_rho_2d", comm(P_P2, RHO), ZERO, dim=2)
    add("radial_momentum_phi_momentum_comm_2d", comm(P_RHO, P_P2), IH * RHOI * P_P2, dim=2)
    add("px_2d", PX, (P_RHO - IH * HALF * RHOI) * CP - P_P2 * SP, dim=2)
    add("py_2d", PY, (P_RHO - IH * HALF * RHOI) * SP + P_P2 * CP, dim=2)
    rdotp2 = RX * PX + RY * PY
    add("radial_momentum_squared_2d", P_RHO * P_RHO,
        RHOI * (rdotp2 - IH * HALF) * RHOI * (rdotp2 - IH * HALF), dim=2)
    add("radial_momentum_squared_2d_expanded", P_RHO * P_RHO,
        RHOI * RHOI * (RX * RX * PX * PX + RY * RY * PY * PY + num(2) * RX * RY * PX * PY
                       - IH * rdotp2 + HBAR2 * num(Fraction(1, 4))), dim=2)
    add("phi_momentum_squared_2d", RHOI * RHOI * LZ * LZ,
        RHOI * RHOI * (RY * RY * PX * PX + RX * RX * PY * PY - num(2) * RX * RY * PX * PY
                       + IH * rdotp2), dim=2)
    add("ke_2d", PX * PX + PY * PY,
        P_RHO * P_RHO + (LZ * LZ - HBAR2 * num(Fraction(1, 4))) * RHOI * RHOI, dim=2)
    return out


CATALOG: dict[str, Identity] = {ident.key: ident for ident in _catalog()}


def identity_keys() -> list[str]:
    return list(CATALOG)


def get_identity(key: str) -> Identity:
    try:
        return CATALOG[key]
    except KeyError:
        raise UnknownIdentity(f"no identity named {key!r}") from None


@lru_cache(maxsize=None)
def _atoms():
    return atoms()


def sides(key: str) -> tuple[OpExpr, OpExpr]:
    ident = get_identity(key)
    table = _atoms()
    return normal_order(ident.lhs, table), normal_order(ident.rhs, table)


@lru_cache(maxsize=None)
def check_identity(key: str) -> IdentityReport:
    lhs, rhs = sides(key)
    residual = lhs - rhs
    return IdentityReport(key, residual.is_zero(), residual)
