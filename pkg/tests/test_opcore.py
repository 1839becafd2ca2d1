import json

import pytest
from hypothesis import given, settings, strategies as st

from riqm.coeff import HBAR, I_HBAR, UnitCoeff
from riqm.opcore import (OpExpr, UnknownIdentity, UnsupportedExpression, build_planar_momentum,
                         build_spherical_momentum, check_identity, commutator, get_identity,
                         identity_keys, inv, normal_order, num, sym, to_json_text, to_text)
from riqm.opcore.identities import IH
from riqm.opcore.spherical import (atoms, cos_phi, cos_theta, cot_theta, quantum_correction,
                                   sin_phi, sin_theta)
from riqm.opcore.tree import comm, to_tree

GENS = ["rx", "ry", "rz", "r", "rho", "r_inv", "rho_inv", "px", "py", "pz"]
ATOMS = atoms()


def n(tree):
    return normal_order(tree, ATOMS)


def S(name):
    return n(sym(name))


# worked examples ---------------------------------------------------------------

def test_canonical_relation():
    assert n(sym("px") * sym("rx")) == n(sym("rx") * sym("px") - IH)


def test_momentum_past_inverse_radius():
    lhs = n(sym("px") * inv(sym("r")))
    rhs = n(sym("r_inv") * sym("px") + IH * sym("rx") * inv(sym("r") * sym("r") * sym("r")))
    assert lhs == rhs
    assert to_text(lhs) == "r^-1*px + i*hbar*rx*r^-3"


def test_additive_inverse_is_zero():
    t = sym("rx") * sym("px") + IH
    assert n(t - t).is_zero()


def test_pz_cos_theta():
    got = commutator(S("pz"), cos_theta())
    want = n(-IH * sym("rho") * sym("rho") * inv(sym("r") * sym("r") * sym("r")))
    assert got == want


def test_px_sin_phi():
    got = commutator(S("px"), sin_phi())
    want = n(IH * sym("rx") * sym("ry") * inv(sym("rho") * sym("rho") * sym("rho")))
    assert got == want


def test_momenta_commute():
    assert commutator(S("px"), S("py")).is_zero()


def test_radial_momentum_form():
    want = n(sym("sin_theta") * sym("cos_phi") * sym("px") + sym("sin_theta") * sym("sin_phi")
             * sym("py") + sym("cos_theta") * sym("pz") - IH * sym("r_inv"))
    assert build_spherical_momentum("radial") == want


def test_phi_momentum_has_no_correction():
    assert build_spherical_momentum("phi") == n(-sym("sin_phi") * sym("px")
                                                + sym("cos_phi") * sym("py"))
    assert quantum_correction("phi").is_zero()


def test_theta_correction():
    want = n(-IH * sym("cot_theta") * sym("r_inv") * num(UnitCoeff.scalar(1) / 2))
    assert quantum_correction("theta") == want


def test_planar_momenta():
    half = num(UnitCoeff.scalar(1) / 2)
    assert build_planar_momentum("radial") == n(
        sym("cos_phi") * sym("px") + sym("sin_phi") * sym("py") - IH * half * sym("rho_inv"))
    assert build_planar_momentum("phi") == n(-sym("sin_phi") * sym("px")
                                             + sym("cos_phi") * sym("py"))
    got = commutator(build_planar_momentum("radial"), build_planar_momentum("phi"))
    assert got == n(IH * sym("rho_inv") * sym("p_phi_2d"))


def test_cot_theta_is_rz_over_rho():
    assert cot_theta() == n(sym("rz") * sym("rho_inv"))


def test_trig_functions_square_to_one():
    assert (cos_theta() * cos_theta() + sin_theta() * sin_theta()) == OpExpr.scalar(1)
    assert (cos_phi() * cos_phi() + sin_phi() * sin_phi()) == OpExpr.scalar(1)


def test_only_r_and_rho_monomials_invert():
    with pytest.raises(UnsupportedExpression):
        normal_order(inv(sym("rx")))
    with pytest.raises(UnsupportedExpression):
        normal_order(inv(sym("r") + sym("rho")))
    with pytest.raises(UnsupportedExpression):
        normal_order(inv(sym("px")))


def test_unknown_symbol():
    with pytest.raises(UnsupportedExpression):
        normal_order(sym("q"))


# catalog --------------------------------------------------------------------------

@pytest.mark.parametrize("key", identity_keys())
def test_catalog_identity_holds(key):
    rep = check_identity(key)
    assert rep.holds, to_text(rep.residual)


def test_catalog_covers_named_entries():
    keys = set(identity_keys())
    for k in ("ke_3d", "ke_2d", "pz_decomposition", "radial_mom", "theta_mom", "phi_mom",
              "radial_momentum_phi_momentum_comm_2d", "momentum_r_comm_x", "px_2d", "py_2d"):
        assert any(key == k or key.startswith(k) for key in keys), k
    assert len(keys) >= 90


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        check_identity("no_such_identity")
    with pytest.raises(KeyError):
        get_identity("no_such_identity")


def test_radial_momentum_with_px_in_second_term_fails():
    wrong = n(sym("sin_theta") * sym("cos_phi") * sym("px") + sym("sin_theta") * sym("sin_phi")
              * sym("px") + sym("cos_theta") * sym("pz") - IH * sym("r_inv"))
    assert (build_spherical_momentum("radial") - wrong) != 0


def test_squared_expansion_with_px_px_cross_term_fails():
    ident = get_identity("radial_momentum_squared_expanded")
    rx, rz, px, pz = (sym(s) for s in ("rx", "rz", "px", "pz"))
    # replace the cross term r_z r_x p_z p_x by r_z r_x p_x p_x
    bad_rhs = ident.rhs + sym("r_inv") * sym("r_inv") * num(2) * (rz * rx * px * px
                                                                 - rz * rx * pz * px)
    assert not n(ident.lhs - bad_rhs).is_zero()


def test_report_json():
    data = check_identity("ke_3d").to_json()
    assert data["holds"] is True and data["id"] == "ke_3d"
    json.dumps(data)


def test_serialization_is_sorted_and_round_trips():
    e = n(sym("py") * sym("rx") * sym("r_inv") + sym("px") * sym("rho"))
    assert OpExpr.from_json(e.to_json()) == e
    assert to_json_text(e) == to_json_text(OpExpr.from_json(json.loads(to_json_text(e))))
    assert to_text(e) == to_text(n(sym("px") * sym("rho") + sym("py") * sym("rx") * sym("r_inv")))


def test_a0_is_expanded():
    from riqm.coeff import A0
    assert A0 == UnitCoeff(hbar=2, mu=-1, e=-2)
    assert HBAR * HBAR == UnitCoeff(hbar=2)
    assert I_HBAR * I_HBAR == UnitCoeff(-1, hbar=2)


# properties -------------------------------------------------------------------------

leaf = st.one_of(st.sampled_from(GENS).map(sym),
                 st.integers(-3, 3).map(num),
                 st.just(IH))


def _grow(children):
    return st.one_of(
        st.tuples(children, children).map(lambda t: t[0] + t[1]),
        st.tuples(children, children).map(lambda t: t[0] * t[1]),
        st.tuples(children, children).map(lambda t: comm(t[0], t[1])),
    )


trees = st.recursive(leaf, _grow, max_leaves=7)


@settings(max_examples=250, deadline=None)
@given(trees)
def test_normal_order_idempotent(t):
    once = normal_order(t)
    assert normal_order(to_tree(once)) == once


@settings(max_examples=100, deadline=None)
@given(trees, trees, st.integers(-3, 3))
def test_normal_order_linear(a, b, k):
    assert normal_order(a + num(k) * b) == normal_order(a) + normal_order(b).scale(k)


CATALOG_OPS = ["px", "py", "pz", "rx", "rz", "r_inv", "rho", "cos_theta", "sin_phi", "p_r",
               "p_phi", "Lz", "p_rho"]
ops = st.sampled_from(CATALOG_OPS).map(S)


@settings(max_examples=60, deadline=None)
@given(ops, ops)
def test_commutator_antisymmetric(a, b):
    assert (commutator(a, b) + commutator(b, a)).is_zero()


@settings(max_examples=40, deadline=None)
@given(ops, ops, ops)
def test_jacobi(a, b, c):
    total = (commutator(a, commutator(b, c)) + commutator(b, commutator(c, a))
             + commutator(c, commutator(a, b)))
    assert total.is_zero()


@settings(max_examples=40, deadline=None)
@given(ops, ops, ops)
def test_leibniz(a, b, c):
    assert commutator(a, b * c) == commutator(a, b) * c + b * commutator(a, c)
