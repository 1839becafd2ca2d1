"""Position parts: Laurent monomials in r and rho over the Cartesian generators.

A monomial ``(a, b, c, i, j)`` stands for ``rx**a * ry**b * rz**c * r**i * rho**j``.
The relations ``rho**2 = rx**2 + ry**2`` and ``r**2 = rho**2 + rz**2`` are used to
keep ``b`` and ``c`` in ``{0, 1}`` (``ry**2 -> rho**2 - rx**2`` and
``rz**2 -> r**2 - rho**2``).  With ``r`` and ``rho`` invertible this is a free basis
of the position algebra, so equal operators have identical expansions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

Mono = tuple  # (a, b, c, i, j)

ONE: Mono = (0, 0, 0, 0, 0)
RX: Mono = (1, 0, 0, 0, 0)
RY: Mono = (0, 1, 0, 0, 0)
RZ: Mono = (0, 0, 1, 0, 0)
R: Mono = (0, 0, 0, 1, 0)
RHO: Mono = (0, 0, 0, 0, 1)
R_INV: Mono = (0, 0, 0, -1, 0)
RHO_INV: Mono = (0, 0, 0, 0, -1)

AXES = ("x", "y", "z")


@lru_cache(maxsize=None)
def mono_mul(m1: Mono, m2: Mono) -> tuple[tuple[Mono, int], ...]:
    a, b, c, i, j = (x + y for x, y in zip(m1, m2))
    out = [((a, b, c, i, j), 1)]
    if b == 2:
        out = [((a, 0, c, i, j + 2), 1), ((a + 2, 0, c, i, j), -1)]
    if c == 2:
        reduced = []
        for (a_, b_, _, i_, j_), s in out:
            reduced.append(((a_, b_, 0, i_ + 2, j_), s))
            reduced.append(((a_, b_, 0, i_, j_ + 2), -s))
        out = reduced
    return tuple(out)


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for m1, v1 in p.items():
        for m2, v2 in q.items():
            for m, s in mono_mul(m1, m2):
                v = out.get(m, 0) + v1 * v2 * s
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return out


def poly_add(p: dict, q: dict, scale=1) -> dict:
    out = dict(p)
    for m, v in q.items():
        w = out.get(m, 0) + scale * v
        if w:
            out[m] = w
        else:
            out.pop(m, None)
    return out


# Base commutators.  Each entry gives [p_alpha, g] / (-i hbar) as a position
# polynomial; everything else follows from the Leibniz rule.
#   canonical relation   [p_a, r_b]    = -i hbar delta_ab
#   [p_a, r]      = -i hbar r_a / r
#   [p_a, 1/r]    =  i hbar r_a / r^3
#   [p_a, rho]    = -i hbar r_a / rho     (a in x, y; zero for z)
#   [p_a, 1/rho]  =  i hbar r_a / rho^3   (a in x, y; zero for z)
_AXIS_MONO = {"x": RX, "y": RY, "z": RZ}


def _base_rule(axis: str, gen: str) -> dict:
    ra = _AXIS_MONO[axis]
    if gen in ("rx", "ry", "rz"):
        return {ONE: Fraction(1)} if gen[1] == axis else {}
    if gen == "r":
        return poly_mul({ra: 1}, {R_INV: 1})
    if gen == "r_inv":
        return poly_mul({ra: -1}, {(0, 0, 0, -3, 0): 1})
    if axis == "z":
        return {}
    if gen == "rho":
        return poly_mul({ra: 1}, {RHO_INV: 1})
    if gen == "rho_inv":
        return poly_mul({ra: -1}, {(0, 0, 0, 0, -3): 1})
    raise KeyError(gen)


BASE_RULES = {(ax, g): _base_rule(ax, g)
              for ax in AXES for g in ("rx", "ry", "rz", "r", "r_inv", "rho", "rho_inv")}


def _factors(m: Mono):
    """Split a monomial into (generator, multiplicity, remaining monomial) triples."""
    a, b, c, i, j = m
    if a:
        yield "rx", a, (a - 1, b, c, i, j)
    if b:
        yield "ry", b, (a, b - 1, c, i, j)
    if c:
        yield "rz", c, (a, b, c - 1, i, j)
    if i > 0:
        yield "r", i, (a, b, c, i - 1, j)
    if i < 0:
        yield "r_inv", -i, (a, b, c, i + 1, j)
    if j > 0:
        yield "rho", j, (a, b, c, i, j - 1)
    if j < 0:
        yield "rho_inv", -j, (a, b, c, i, j + 1)


@lru_cache(maxsize=None)
def momentum_bracket(axis: str, m: Mono) -> tuple:
    """``[p_axis, m] / (-i hbar)`` as a sorted tuple of ``(mono, Fraction)``.

    Leibniz over the factors of ``m``; since ``[p, g]`` commutes with ``g``,
    ``[p, g**k] = k g**(k-1) [p, g]``.
    """
    out: dict = {}
    for gen, k, rest in _factors(m):
        base = BASE_RULES[(axis, gen)]
        if base:
            out = poly_add(out, poly_mul({rest: Fraction(k)}, base))
    return tuple(sorted(out.items()))


def bracket_poly(axis: str, p: dict) -> dict:
    out: dict = {}
    for m, v in p.items():
        for mm, w in momentum_bracket(axis, m):
            w = v * w
            x = out.get(mm, 0) + w
            if x:
                out[mm] = x
            else:
                out.pop(mm, None)
    return out


def mono_str(m: Mono) -> str:
    names = ("rx", "ry", "rz", "r", "rho")
    parts = []
    for name, k in zip(names, m):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts) or "1"
