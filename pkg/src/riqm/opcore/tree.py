"""Raw (unordered) operator expression trees and their normal ordering.

Trees are built from named symbols, exact scalars, sums, products, inverses and
commutators.  The same tree can be interpreted by more than one backend: the
exact engine here, and the differential-operator oracle in ``riqm.verify``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from riqm.coeff import UnitCoeff
from riqm.opcore.expr import GENERATORS, OpExpr, UnsupportedExpression
from riqm.opcore import position as pos


class Node:
    def __add__(self, other):
        return Add((self, wrap(other)))

    def __radd__(self, other):
        return Add((wrap(other), self))

    def __sub__(self, other):
        return Add((self, Mul((Num(UnitCoeff.scalar(-1)), wrap(other)))))

    def __rsub__(self, other):
        return wrap(other) - self

    def __neg__(self):
        return Mul((Num(UnitCoeff.scalar(-1)), self))

    def __mul__(self, other):
        return Mul((self, wrap(other)))

    def __rmul__(self, other):
        return Mul((wrap(other), self))


@dataclass(frozen=True)
class Sym(Node):
    name: str


@dataclass(frozen=True)
class Num(Node):
    value: UnitCoeff


@dataclass(frozen=True)
class Add(Node):
    args: tuple


@dataclass(frozen=True)
class Mul(Node):
    args: tuple


@dataclass(frozen=True)
class Inv(Node):
    arg: Node


@dataclass(frozen=True)
class Comm(Node):
    a: Node
    b: Node


def wrap(x) -> Node:
    if isinstance(x, Node):
        return x
    if isinstance(x, UnitCoeff):
        return Num(x)
    if isinstance(x, (int, Fraction)):
        return Num(UnitCoeff.scalar(x))
    raise TypeError(f"cannot use {x!r} in an operator tree")


def sym(name: str) -> Sym:
    return Sym(name)


def num(c) -> Num:
    return wrap(c)


def inv(x) -> Inv:
    return Inv(wrap(x))


def comm(a, b) -> Comm:
    return Comm(wrap(a), wrap(b))


def evaluate(tree: Node, leaf: Callable, scalar: Callable, add: Callable, mul: Callable,
             invert: Callable, bracket: Callable):
    """Generic fold over a tree; each backend supplies the primitive operations."""

    def go(t):
        if isinstance(t, Sym):
            return leaf(t.name)
        if isinstance(t, Num):
            return scalar(t.value)
        if isinstance(t, Add):
            vals = [go(a) for a in t.args]
            out = vals[0]
            for v in vals[1:]:
                out = add(out, v)
            return out
        if isinstance(t, Mul):
            vals = [go(a) for a in t.args]
            out = vals[0]
            for v in vals[1:]:
                out = mul(out, v)
            return out
        if isinstance(t, Inv):
            return invert(go(t.arg))
        if isinstance(t, Comm):
            return bracket(go(t.a), go(t.b))
        raise TypeError(f"unknown node {t!r}")

    return go(tree)


def normal_order(tree: Node, atoms: Mapping[str, OpExpr] | None = None) -> OpExpr:
    """Canonical :class:`OpExpr` equal to ``tree`` as an operator.

    Symbols resolve to the Cartesian generators, or to entries of ``atoms``
    (already normal-ordered derived operators).  Only monomials in ``r`` and
    ``rho`` may be inverted.
    """
    atoms = atoms or {}

    def leaf(name):
        if name in atoms:
            return atoms[name]
        if name in GENERATORS:
            return GENERATORS[name]()
        raise UnsupportedExpression(f"unknown symbol {name!r}")

    return evaluate(
        tree,
        leaf=leaf,
        scalar=OpExpr.scalar,
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        invert=lambda a: a.position_inverse(),
        bracket=lambda a, b: a * b - b * a,
    )


def to_tree(expr: OpExpr) -> Node:
    """Rebuild a raw tree (generators only) for a normal-form expression."""
    if expr.is_zero():
        return Num(UnitCoeff.scalar(0))
    terms = []
    names = ("rx", "ry", "rz")
    for c, (mono, word) in expr.terms():
        factors: list[Node] = [Num(c)]
        a, b, cz, i, j = mono
        for name, k in zip(names, (a, b, cz)):
            factors.extend([Sym(name)] * k)
        factors.extend([Sym("r" if i > 0 else "r_inv")] * abs(i))
        factors.extend([Sym("rho" if j > 0 else "rho_inv")] * abs(j))
        for name, k in zip(("px", "py", "pz"), word):
            factors.extend([Sym(name)] * k)
        terms.append(Mul(tuple(factors)))
    return Add(tuple(terms)) if len(terms) > 1 else terms[0]


__all__ = ["Node", "Sym", "Num", "Add", "Mul", "Inv", "Comm", "sym", "num", "inv", "comm",
           "normal_order", "to_tree", "evaluate", "pos"]
