"""One-dimensional operator algebra in a radial coordinate and its momentum.

``RadialOp`` terms are ``c * x**a * p**b`` with ``a`` any integer.  Normal
ordering uses ``[p, x**k] = -i hbar k x**(k-1)``, so
``p**b x**c = sum_j C(b, j) (-i hbar)**j (c)_j x**(c-j) p**(b-j)`` with the
falling factorial ``(c)_j``.

``RadialState`` is a Laurent polynomial in ``x`` standing to the left of the
abstract reference ket ``|n, n-1>``.  Momentum factors reaching the ket are
removed with the subsidiary rule ``p|ref> = i hbar (1/(nu a0) - nu/x)|ref>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from riqm.coeff import INV_A0, I_HBAR, ONE_KEY, UnitCoeff, frac_str, unit_json
from riqm.lincomb import LinComb, accumulate
from riqm.opcore.expr import UnsupportedExpression
from riqm.opcore.tree import Node, evaluate


def falling(c: int, j: int) -> int:
    out = 1
    for t in range(j):
        out *= c - t
    return out


@lru_cache(maxsize=None)
def _mul_basis_cached(b1, b2) -> tuple:
    a, b = b1
    c, d = b2
    out: dict = {}
    for j in range(b + 1):
        f = falling(c, j)
        if not f:
            break
        ck = (-I_HBAR) ** j
        accumulate(out, (ck.key, (a + c - j, b - j + d)), ck.rational * comb(b, j) * f)
    return tuple(out.items())


class RadialOp(LinComb):
    """Normal-ordered (x left of p) operator in one radial dimension."""

    __slots__ = ()

    def _one_basis(self):
        return (0, 0)

    def _mul_basis(self, b1, b2):
        return dict(_mul_basis_cached(b1, b2))

    @classmethod
    def x(cls, k: int = 1, coeff=1):
        return cls.basis((k, 0), coeff)

    @classmethod
    def p(cls, k: int = 1, coeff=1):
        return cls.basis((0, k), coeff)

    @classmethod
    def scalar(cls, c):
        return cls.basis((0, 0), c)

    def adjoint(self) -> "RadialOp":
        out = RadialOp.zero()
        for c, (a, b) in self.terms():
            out = out + (RadialOp.p(b) * RadialOp.x(a)).scale(c.conjugate())
        return out

    def position_inverse(self) -> "RadialOp":
        if len(self._terms) != 1:
            raise UnsupportedExpression("only monomials in x can be inverted")
        ((ck, (a, b)), v), = self._terms.items()
        if b:
            raise UnsupportedExpression("only monomials in x can be inverted")
        return RadialOp.x(-a, UnitCoeff.from_key(ck, v).inverse())

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        chunks = []
        for c, (a, b) in self.terms():
            chunks.append(_term(c, [_pow("x", a), _pow("p", b)]))
        return " + ".join(chunks).replace("+ -", "- ")

    def __repr__(self):
        return f"RadialOp({self})"

    def to_json(self) -> list:
        return [dict(c.to_json(), x=a, p=b) for c, (a, b) in self.terms()]


def _term(c: UnitCoeff, factors: list) -> str:
    factors = [f for f in factors if f]
    cs = str(c)
    if factors and cs in ("1", "-1"):
        return cs[:-1] + "*".join(factors)
    return "*".join([cs] + factors)


def _pow(name: str, k: int) -> str:
    if k == 0:
        return ""
    return name if k == 1 else f"{name}^{k}"


RADIAL_GENERATORS = {
    "x": lambda: RadialOp.x(1),
    "x_inv": lambda: RadialOp.x(-1),
    "p": lambda: RadialOp.p(1),
}


def radial_normal_order(tree: Node) -> RadialOp:
    """Normal form of a raw tree over the symbols ``x``, ``x_inv`` and ``p``."""

    def leaf(name):
        try:
            return RADIAL_GENERATORS[name]()
        except KeyError:
            raise UnsupportedExpression(f"unknown radial symbol {name!r}") from None

    return evaluate(tree, leaf=leaf, scalar=RadialOp.scalar, add=lambda a, b: a + b,
                    mul=lambda a, b: a * b, invert=lambda a: a.position_inverse(),
                    bracket=lambda a, b: a * b - b * a)


class Laurent(LinComb):
    """Laurent polynomial in x with unit-tracked coefficients; basis key is the exponent."""

    __slots__ = ()

    def _one_basis(self):
        return 0

    def _mul_basis(self, b1, b2):
        return {(ONE_KEY, b1 + b2): Fraction(1)}

    @classmethod
    def monomial(cls, k: int, coeff=1):
        return cls.basis(k, coeff)

    def shift(self, k: int) -> "Laurent":
        return Laurent._raw({(ck, e + k): v for (ck, e), v in self._terms.items()})

    def derivative(self) -> "Laurent":
        out: dict = {}
        for (ck, e), v in self._terms.items():
            accumulate(out, (ck, e - 1), v * e)
        return Laurent._raw(out)

    def exponents(self) -> list[int]:
        return sorted({e for _, e in self._terms})

    def single_coeff(self, k: int) -> UnitCoeff:
        """The coefficient of ``x**k``; it must be a single unit monomial."""
        cs = self.coefficient(k)
        if not cs:
            return UnitCoeff.scalar(0)
        if len(cs) > 1:
            raise ValueError(f"coefficient of x^{k} mixes unit monomials")
        return cs[0]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        chunks = [_term(c, [_pow("x", k)]) for c, k in self.terms()]
        return " + ".join(chunks).replace("+ -", "- ")


def nu(n: int, dim: int) -> Fraction:
    if dim == 3:
        return Fraction(n)
    if dim == 2:
        return Fraction(2 * n - 1, 2)
    raise ValueError(f"dim must be 2 or 3, got {dim}")


@lru_cache(maxsize=None)
def subsidiary_factor(n: int, dim: int) -> Laurent:
    """``i hbar (1/(nu a0) - nu/x)``: the action of p on the reference ket."""
    v = nu(n, dim)
    return (Laurent.monomial(0, INV_A0 * (1 / v)) - Laurent.monomial(-1, v)).scale(I_HBAR)


@dataclass(frozen=True)
class RadialState:
    dim: int
    n: int
    poly: Laurent

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        nu(self.n, self.dim)

    def with_poly(self, poly: Laurent) -> "RadialState":
        return RadialState(self.dim, self.n, poly)

    def __add__(self, other):
        return self.with_poly(self.poly + other.poly)

    def __sub__(self, other):
        return self.with_poly(self.poly - other.poly)

    def scale(self, c) -> "RadialState":
        return self.with_poly(self.poly.scale(c))

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def apply_momentum(self) -> "RadialState":
        """``p (poly |ref>) = -i hbar poly' |ref> + poly p|ref>``."""
        poly = self.poly
        out = poly.derivative().scale(-I_HBAR) + poly * subsidiary_factor(self.n, self.dim)
        return self.with_poly(out)

    def apply(self, op: RadialOp) -> "RadialState":
        out = Laurent.zero()
        for c, (a, b) in op.terms():
            s = self
            for _ in range(b):
                s = s.apply_momentum()
            out = out + s.poly.shift(a).scale(c)
        return self.with_poly(out)

    def to_json(self) -> dict:
        coeffs = [[k, frac_str(c.rational), c.i_power, unit_json(c.units), c.root]
                  for c, k in self.poly.terms()]
        return {"dim": self.dim, "n": self.n, "coeffs": coeffs}

    @classmethod
    def from_json(cls, data: dict) -> "RadialState":
        poly = Laurent.zero()
        for k, q, i, units, root in data["coeffs"]:
            c = UnitCoeff(Fraction(q), i, root, Fraction(units["hbar"]), Fraction(units["mu"]),
                          Fraction(units["e"]))
            poly = poly + Laurent.monomial(k, c)
        return cls(data["dim"], data["n"], poly)

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def reference_state(n: int, dim: int) -> RadialState:
    return RadialState(dim, n, Laurent.monomial(0))


def apply_to_reference(op: RadialOp, n: int, dim: int) -> RadialState:
    """Eliminate every momentum factor of ``op`` acting on ``|n, n-1>``."""
    return reference_state(n, dim).apply(op)


@dataclass(frozen=True)
class EigenReport:
    n: int
    dim: int
    eigenvalue: UnitCoeff
    residual: Laurent

    @property
    def holds(self) -> bool:
        return self.residual.is_zero()


def shifted_momentum_eigencheck(n: int, dim: int) -> EigenReport:
    """``(p + i hbar c/x) x**-(n-1)|ref> = (i hbar/(nu a0)) x**-(n-1)|ref>``."""
    c = Fraction(1) if dim == 3 else Fraction(1, 2)
    op = RadialOp.p() + RadialOp.x(-1, I_HBAR * c)
    state = RadialState(dim, n, Laurent.monomial(-(n - 1)))
    eigen = I_HBAR * INV_A0 * (1 / nu(n, dim))
    residual = state.apply(op).poly - state.poly.scale(eigen)
    return EigenReport(n, dim, eigen, residual)
