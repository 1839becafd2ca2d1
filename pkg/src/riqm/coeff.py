"""Exact scalar coefficients carrying physical units.

A coefficient is ``rational * i**i_power * sqrt(root) * hbar**h * mu**m * e**q``.
The Bohr radius is never stored: ``a0 = hbar**2 / (mu * e**2)`` is expanded on
input and only re-factored when a coefficient is rendered as text.

Linear combinations throughout the package are dictionaries keyed by
``(coeff_key, structural_key)`` with :class:`~fractions.Fraction` values, where
``coeff_key`` is the ``(i_power, root, hbar, mu, e)`` part of a coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy

CoeffKey = tuple  # (i_power, root, hbar, mu, e)

ONE_KEY: CoeffKey = (0, 1, Fraction(0), Fraction(0), Fraction(0))


def frac_str(q: Fraction) -> str:
    """Serialize a rational as ``"num/den"``."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(text: str) -> Fraction:
    return Fraction(text)


@lru_cache(maxsize=None)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, t)`` with ``n == s*s*t`` and ``t`` squarefree."""
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    s, t = 1, 1
    for p, k in sympy.factorint(n).items():
        s *= p ** (k // 2)
        if k % 2:
            t *= p
    return s, t


def sqrt_rational(q: Fraction) -> tuple[Fraction, int]:
    """Write ``sqrt(q)`` as ``c * sqrt(t)`` with rational ``c`` and squarefree ``t``."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    if q == 0:
        return Fraction(0), 1
    s, t = squarefree_split(q.numerator * q.denominator)
    return Fraction(s, q.denominator), t


@lru_cache(maxsize=65536)
def mul_keys(k1: CoeffKey, k2: CoeffKey) -> tuple[CoeffKey, Fraction]:
    """Multiply two coefficient keys; returns the product key and a rational factor."""
    i = k1[0] + k2[0]
    factor = Fraction(1)
    if i >= 2:
        i -= 2
        factor = -factor
    g = gcd(k1[1], k2[1])
    root = (k1[1] // g) * (k2[1] // g)
    factor *= g
    return (i, root, k1[2] + k2[2], k1[3] + k2[3], k1[4] + k2[4]), factor


@dataclass(frozen=True)
class UnitCoeff:
    """A single unit-tracked monomial coefficient."""

    rational: Fraction = Fraction(1)
    i_power: int = 0
    root: int = 1
    hbar: Fraction = Fraction(0)
    mu: Fraction = Fraction(0)
    e: Fraction = Fraction(0)

    def __post_init__(self):
        q = Fraction(self.rational)
        i = self.i_power % 4
        if i >= 2:
            q, i = -q, i - 2
        root = self.root
        if root < 1:
            raise ValueError("root must be a positive integer")
        s, t = squarefree_split(root)
        q *= s
        object.__setattr__(self, "rational", q)
        object.__setattr__(self, "i_power", i)
        object.__setattr__(self, "root", t)
        for name in ("hbar", "mu", "e"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    # constructors -----------------------------------------------------

    @classmethod
    def from_key(cls, key: CoeffKey, rational=1) -> "UnitCoeff":
        i, root, h, m, q = key
        return cls(Fraction(rational), i, root, h, m, q)

    @classmethod
    def scalar(cls, value) -> "UnitCoeff":
        return cls(Fraction(value))

    @property
    def key(self) -> CoeffKey:
        return (self.i_power, self.root, self.hbar, self.mu, self.e)

    @property
    def units(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.hbar, self.mu, self.e)

    # arithmetic -------------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, UnitCoeff):
            return UnitCoeff(self.rational * Fraction(other), self.i_power, self.root, *self.units)
        key, f = mul_keys(self.key, other.key)
        return UnitCoeff.from_key(key, self.rational * other.rational * f)

    __rmul__ = __mul__

    def __add__(self, other: "UnitCoeff") -> "UnitCoeff":
        """Sum of two coefficients sharing the same unit, phase and root."""
        if self.rational == 0:
            return other
        if other.rational == 0:
            return self
        if self.key != other.key:
            raise ValueError(f"cannot add {self} and {other} as a single coefficient")
        return UnitCoeff.from_key(self.key, self.rational + other.rational)

    def __sub__(self, other: "UnitCoeff") -> "UnitCoeff":
        return self + (-other)

    def __neg__(self):
        return UnitCoeff(-self.rational, self.i_power, self.root, *self.units)

    def __truediv__(self, other):
        if not isinstance(other, UnitCoeff):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __pow__(self, k: int):
        result = UnitCoeff()
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result * base
        return result

    def inverse(self) -> "UnitCoeff":
        if self.rational == 0:
            raise ZeroDivisionError("inverse of a zero coefficient")
        # 1/(q i^k sqrt(t)) = sqrt(t) / (q t i^k); 1/i = -i
        q = 1 / (self.rational * self.root)
        if self.i_power == 1:
            q = -q
        return UnitCoeff(q, self.i_power, self.root, -self.hbar, -self.mu, -self.e)

    def conjugate(self) -> "UnitCoeff":
        q = -self.rational if self.i_power == 1 else self.rational
        return UnitCoeff(q, self.i_power, self.root, *self.units)

    def sqrt(self) -> "UnitCoeff":
        """Principal square root of a positive real coefficient."""
        if self.i_power != 0 or self.root != 1 or self.rational <= 0:
            raise ValueError(f"cannot take an exact square root of {self}")
        c, t = sqrt_rational(self.rational)
        return UnitCoeff(c, 0, t, self.hbar / 2, self.mu / 2, self.e / 2)

    def is_zero(self) -> bool:
        return self.rational == 0

    def is_unitless(self) -> bool:
        return self.hbar == 0 and self.mu == 0 and self.e == 0

    def to_complex(self, hbar=1.0, mu=1.0, e=1.0) -> complex:
        v = float(self.rational) * self.root ** 0.5
        v *= hbar ** float(self.hbar) * mu ** float(self.mu) * e ** float(self.e)
        return complex(0, v) if self.i_power else complex(v)

    # display ----------------------------------------------------------

    def a0_factored(self) -> tuple[Fraction, Fraction, Fraction, int]:
        """Exponents ``(hbar, mu, e, a0)`` with ``a0`` chosen to make the monomial shortest."""
        best = None
        for k in range(-24, 25):
            exps = (self.hbar - 2 * k, self.mu + k, self.e + 2 * k)
            cost = (sum(abs(x) for x in exps) + abs(k), abs(k), -k)
            if best is None or cost < best[0]:
                best = (cost, (*exps, k))
        return best[1]

    def __str__(self) -> str:
        return format_coeff(self)

    def to_json(self) -> dict:
        return {
            "rational": frac_str(self.rational),
            "i_power": self.i_power,
            "sqrt": self.root,
            "units": unit_json(self.units),
        }

    @classmethod
    def from_json(cls, data: dict) -> "UnitCoeff":
        u = data["units"]
        return cls(Fraction(data["rational"]), data["i_power"], data.get("sqrt", 1),
                   Fraction(u["hbar"]), Fraction(u["mu"]), Fraction(u["e"]))


def unit_json(units) -> dict:
    return {name: frac_str(x) for name, x in zip(("hbar", "mu", "e"), units)}


def _pow_str(name: str, k: Fraction) -> str:
    if k == 0:
        return ""
    if k == 1:
        return name
    return f"{name}^{k}" if k.denominator == 1 else f"{name}^({k})"


def format_coeff(c: UnitCoeff, show_one: bool = True) -> str:
    """Render a coefficient with the Bohr radius re-factored, e.g. ``-1/2*e^2*a0^-1``."""
    h, m, q, k = c.a0_factored()
    parts = [_pow_str("hbar", h), _pow_str("mu", m), _pow_str("e", q), _pow_str("a0", Fraction(k))]
    parts = [p for p in parts if p]
    if c.root != 1:
        parts.insert(0, f"sqrt({c.root})")
    if c.i_power:
        parts.insert(0, "i")
    mag = abs(c.rational)
    sign = "-" if c.rational < 0 else ""
    if mag != 1 or not parts:
        parts.insert(0, str(mag))
    return sign + "*".join(parts)


def key_str(key: CoeffKey, value: Fraction) -> str:
    return format_coeff(UnitCoeff.from_key(key, value))


# frequently used constants -------------------------------------------------

HBAR = UnitCoeff(hbar=1)
MU = UnitCoeff(mu=1)
E_CHARGE = UnitCoeff(e=1)
I = UnitCoeff(i_power=1)
A0 = UnitCoeff(hbar=2, mu=-1, e=-2)  # hbar^2 / (mu e^2)
INV_A0 = A0.inverse()
I_HBAR = I * HBAR
INV_SQRT_2MU = UnitCoeff(Fraction(1, 2), root=2, mu=Fraction(-1, 2))  # 1/sqrt(2 mu)
