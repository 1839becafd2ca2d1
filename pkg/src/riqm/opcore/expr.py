"""Normal-ordered operator expressions in Cartesian position and momentum."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb

from riqm.coeff import I_HBAR, UnitCoeff, frac_str, unit_json
from riqm.lincomb import LinComb
from riqm.opcore import position as pos
from riqm.opcore.position import Mono

Word = tuple  # (a, b, c) for p_x^a p_y^b p_z^c
NO_MOMENTUM: Word = (0, 0, 0)
AXIS_INDEX = {"x": 0, "y": 1, "z": 2}


class UnsupportedExpression(ValueError):
    """Raised for operations outside the representable operator algebra."""


@lru_cache(maxsize=None)
def _minus_ihbar_power(j: int) -> tuple:
    c = (-I_HBAR) ** j
    return c.key, c.rational


@lru_cache(maxsize=None)
def move_word(word: Word, m: Mono) -> tuple:
    """Rewrite ``word * m`` with positions on the left.

    Returns ``((J, mono, word'), Fraction)`` pairs meaning
    ``sum (-i hbar)**J * value * mono * word'``.  Uses
    ``p**k f = sum_j C(k, j) ad_p**j(f) p**(k-j)``.
    """
    items = {(0, m, NO_MOMENTUM): Fraction(1)}
    for axis in ("z", "y", "x"):
        ax = AXIS_INDEX[axis]
        k = word[ax]
        if not k:
            continue
        nxt: dict = {}
        for (J, mono, w), v in items.items():
            poly = {mono: Fraction(1)}
            for j in range(k + 1):
                if j:
                    poly = pos.bracket_poly(axis, poly)
                    if not poly:
                        break
                nw = list(w)
                nw[ax] += k - j
                nw = tuple(nw)
                c = v * comb(k, j)
                for mm, u in poly.items():
                    key = (J + j, mm, nw)
                    x = nxt.get(key, 0) + c * u
                    if x:
                        nxt[key] = x
                    else:
                        nxt.pop(key, None)
        items = nxt
    return tuple(sorted(items.items()))


@lru_cache(maxsize=200000)
def _mul_basis_cached(b1, b2) -> tuple:
    m1, w1 = b1
    m2, w2 = b2
    out: dict = {}
    for (J, mm, w), v in move_word(w1, m2):
        ck, f = _minus_ihbar_power(J)
        word = (w[0] + w2[0], w[1] + w2[1], w[2] + w2[2])
        for mono, s in pos.mono_mul(m1, mm):
            key = (ck, (mono, word))
            x = out.get(key, 0) + v * f * s
            if x:
                out[key] = x
            else:
                out.pop(key, None)
    return tuple(out.items())


class OpExpr(LinComb):
    """Exact operator in normal form: every term is ``coeff * position * momentum_word``."""

    __slots__ = ()

    def _one_basis(self):
        return (pos.ONE, NO_MOMENTUM)

    def _mul_basis(self, b1, b2):
        return dict(_mul_basis_cached(b1, b2))

    def _sort_key(self, key):
        ck, (mono, word) = key
        return (mono, word, ck)

    # constructors ------------------------------------------------------

    @classmethod
    def position(cls, mono: Mono, coeff=1):
        return cls.basis((mono, NO_MOMENTUM), coeff)

    @classmethod
    def momentum(cls, axis: str):
        w = [0, 0, 0]
        w[AXIS_INDEX[axis]] = 1
        return cls.basis((pos.ONE, tuple(w)))

    @classmethod
    def scalar(cls, c):
        return cls.basis((pos.ONE, NO_MOMENTUM), c)

    # queries -----------------------------------------------------------

    def is_position_only(self) -> bool:
        return all(word == NO_MOMENTUM for _, (_, word) in self._terms)

    def position_inverse(self) -> "OpExpr":
        """Inverse of a single-term operator ``c * r**i * rho**j``."""
        if len(self._terms) != 1:
            raise UnsupportedExpression("only monomials in r and rho can be inverted")
        ((ck, (mono, word)), v), = self._terms.items()
        a, b, c, i, j = mono
        if word != NO_MOMENTUM or a or b or c:
            raise UnsupportedExpression("only monomials in r and rho can be inverted")
        coeff = UnitCoeff.from_key(ck, v).inverse()
        return OpExpr.position((0, 0, 0, -i, -j), coeff)

    def adjoint(self) -> "OpExpr":
        """Hermitian adjoint: reverse each product and conjugate coefficients."""
        out = OpExpr.zero()
        for c, (mono, word) in self.terms():
            out = out + (OpExpr.basis((pos.ONE, word)) * OpExpr.position(mono)).scale(c.conjugate())
        return out

    def max_momentum_degree(self) -> int:
        return max((sum(w) for _, (_, w) in self._terms), default=0)

    # text / json -------------------------------------------------------

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"OpExpr({to_text(self)})"

    def to_json(self) -> list:
        return [
            {
                "coeff": frac_str(c.rational),
                "i_power": c.i_power,
                "sqrt": c.root,
                "units": unit_json(c.units),
                "position": list(mono),
                "momentum": list(word),
            }
            for c, (mono, word) in self.terms()
        ]

    @classmethod
    def from_json(cls, data: list) -> "OpExpr":
        out = cls.zero()
        for t in data:
            u = t["units"]
            c = UnitCoeff(Fraction(t["coeff"]), t["i_power"], t.get("sqrt", 1),
                          Fraction(u["hbar"]), Fraction(u["mu"]), Fraction(u["e"]))
            out = out + cls.basis((tuple(t["position"]), tuple(t["momentum"])), c)
        return out


def _word_str(w: Word) -> str:
    parts = []
    for name, k in zip(("px", "py", "pz"), w):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def to_text(expr: OpExpr) -> str:
    """Deterministic text form, terms sorted by position part then momentum word."""
    if expr.is_zero():
        return "0"
    chunks = []
    for c, (mono, word) in expr.terms():
        factors = [f for f in (pos.mono_str(mono) if mono != pos.ONE else "", _word_str(word)) if f]
        cs = str(c)
        if factors:
            if cs in ("1", "-1"):
                cs = cs[:-1]
                body = "*".join(factors)
            else:
                body = cs + "*" + "*".join(factors)
                cs = ""
            chunks.append(cs + body)
        else:
            chunks.append(cs)
    text = " + ".join(chunks)
    return text.replace("+ -", "- ")


def to_json_text(expr: OpExpr) -> str:
    return json.dumps(expr.to_json(), sort_keys=True)


def commutator(a, b):
    """Normal form of ``a*b - b*a``."""
    return a * b - b * a


# generators ---------------------------------------------------------------

def rx():
    return OpExpr.position(pos.RX)


def ry():
    return OpExpr.position(pos.RY)


def rz():
    return OpExpr.position(pos.RZ)


def r():
    return OpExpr.position(pos.R)


def rho():
    return OpExpr.position(pos.RHO)


def r_inv():
    return OpExpr.position(pos.R_INV)


def rho_inv():
    return OpExpr.position(pos.RHO_INV)


def px():
    return OpExpr.momentum("x")


def py():
    return OpExpr.momentum("y")


def pz():
    return OpExpr.momentum("z")


GENERATORS = {
    "rx": rx, "ry": ry, "rz": rz, "r": r, "rho": rho,
    "r_inv": r_inv, "rho_inv": rho_inv, "px": px, "py": py, "pz": pz,
}
