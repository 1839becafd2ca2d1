"""Immutable sparse linear combinations with unit-tracked exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from riqm.coeff import UnitCoeff, mul_keys


def accumulate(target: dict, key, value) -> None:
    if not value:
        return
    v = target.get(key, 0) + value
    if v:
        target[key] = v
    else:
        target.pop(key, None)


class LinComb:
    """Sum of ``coefficient * basis_element`` terms.

    Terms are stored as ``{(coeff_key, basis_key): Fraction}``.  Subclasses
    supply the basis and the product of basis elements.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for k, v in (terms or {}).items():
            accumulate(clean, k, Fraction(v))
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def basis(cls, basis_key, coeff: UnitCoeff | Rational = 1):
        if not isinstance(coeff, UnitCoeff):
            coeff = UnitCoeff.scalar(coeff)
        if coeff.is_zero():
            return cls.zero()
        return cls._raw({(coeff.key, basis_key): coeff.rational})

    # structure ---------------------------------------------------------

    def _mul_basis(self, b1, b2) -> dict:
        """Return ``{(extra_coeff_key, basis_key): Fraction}`` for ``b1 * b2``."""
        raise NotImplementedError

    def terms(self):
        """Yield ``(UnitCoeff, basis_key)`` pairs in deterministic order."""
        for (ck, bk), v in sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0])):
            yield UnitCoeff.from_key(ck, v), bk

    def _sort_key(self, key):
        ck, bk = key
        return (bk, ck)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return type(self) is type(other) and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    # linear structure -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, UnitCoeff):
            return type(self).basis(self._one_basis(), other)
        if isinstance(other, (int, Fraction)):
            return type(self).basis(self._one_basis(), Fraction(other))
        return NotImplemented

    def _one_basis(self):
        raise NotImplementedError

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            accumulate(out, k, v)
        return type(self)._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: UnitCoeff | Rational):
        if not isinstance(c, UnitCoeff):
            c = UnitCoeff.scalar(c)
        if c.is_zero():
            return type(self).zero()
        out = {}
        for (ck, bk), v in self._terms.items():
            nk, f = mul_keys(ck, c.key)
            accumulate(out, (nk, bk), v * f * c.rational)
        return type(self)._raw(out)

    def __mul__(self, other):
        if isinstance(other, (UnitCoeff, int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for (c1, b1), v1 in self._terms.items():
            for (c2, b2), v2 in other._terms.items():
                ck, f = mul_keys(c1, c2)
                v = v1 * v2 * f
                for (xk, bk), w in self._mul_basis(b1, b2).items():
                    nk, g = mul_keys(ck, xk)
                    accumulate(out, (nk, bk), v * w * g)
        return type(self)._raw(out)

    def __rmul__(self, other):
        if isinstance(other, (UnitCoeff, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported for general operators")
        result = self._coerce(1)
        for _ in range(k):
            result = result * self
        return result

    def conjugate_coeffs(self):
        """Complex-conjugate every coefficient (i -> -i), basis untouched."""
        return type(self)._raw({(ck, bk): (-v if ck[0] else v) for (ck, bk), v in self._terms.items()})

    def coefficient(self, basis_key) -> list[UnitCoeff]:
        return [UnitCoeff.from_key(ck, v) for (ck, bk), v in self._terms.items() if bk == basis_key]

