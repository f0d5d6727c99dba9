"""Exact arithmetic on Heisenberg weights, conformal weights and phases.

Weights live on the rational ray through half the short lattice generator:
a weight is stored as the coordinate ``q`` with lambda = q * (alpha_minus/2).
In these coordinates the long generator alpha_plus has coordinate ``-2p``,
alpha_minus has coordinate ``2``, and the lattice memberships become
congruence conditions on ``q`` (integral q <=> dual lattice, q in 2pZ <=>
lattice itself).  Everything is a ``fractions.Fraction``; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import DomainError

__all__ = [
    "Params",
    "Weight",
    "UnitPhase",
    "alpha_coord",
    "h_rs",
    "conformal_weight",
    "is_typical",
    "contragredient_weight",
    "allowed_neighbor_weights",
    "h0_squared",
]


@dataclass(frozen=True)
class Params:
    """Family parameter ``p >= 2`` of the singlet algebra."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2:
            raise DomainError(f"p must be an integer >= 2, got {self.p!r}")

    @property
    def central_charge(self) -> Fraction:
        return 13 - 6 * Fraction(self.p) - 6 * Fraction(1, self.p)


@dataclass(frozen=True)
class Weight:
    """Coordinate ``q`` of the weight q*(alpha_minus/2), with its ``p``."""

    q: Fraction
    p: int

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))

    def __repr__(self):
        return f"Weight({self.q}, p={self.p})"


@dataclass(frozen=True)
class UnitPhase:
    """The root of unity exp(2*pi*i*e), stored as the exponent e in [0, 1).

    Phases multiply by adding exponents mod 1, so equality is exact.
    """

    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent) % 1)

    def __mul__(self, other: "UnitPhase") -> "UnitPhase":
        return UnitPhase(self.exponent + other.exponent)

    def inverse(self) -> "UnitPhase":
        return UnitPhase(-self.exponent)

    def __repr__(self):
        return f"UnitPhase({self.exponent})"


def alpha_coord(params: Params, r: int, s: int) -> Weight:
    """Coordinate of alpha_{r,s}: q = p(r-1) - (s-1).

    Periodic under (r, s) -> (r+1, s+p), so callers may normalize s freely.
    """
    return Weight(Fraction(params.p * (r - 1) - (s - 1)), params.p)


def h_rs(params: Params, r: int, s: int) -> Fraction:
    """Virasoro conformal weight h_{r,s} = ((pr - s)^2 - (p-1)^2) / 4p."""
    p = params.p
    return Fraction((p * r - s) ** 2 - (p - 1) ** 2, 4 * p)


def conformal_weight(w: Weight) -> Fraction:
    """Lowest conformal weight of the Fock module at ``w``.

    Equals (q^2 + 2q(p-1)) / 4p; for w = alpha_coord(r, s) with r >= 1 this
    is h_{r,s}.  Satisfies 4p*h + (p-1)^2 = (q+p-1)^2 exactly.
    """
    return Fraction(w.q * w.q + 2 * w.q * (w.p - 1), 4 * w.p)


def is_typical(w: Weight) -> bool:
    """True iff the weight lies off the dual lattice (q not an integer)."""
    return w.q.denominator != 1


def contragredient_weight(w: Weight) -> Weight:
    """Coordinate of the contragredient Fock module: q' = (2 - 2p) - q."""
    return Weight(2 - 2 * w.p - w.q, w.p)


def allowed_neighbor_weights(w: Weight, kind: str) -> frozenset[Fraction]:
    """Conformal weights reachable from ``w`` by a surjective degenerate
    intertwining operator.

    ``kind`` is ``"via12"`` (the weight-h_{1,2} degenerate field) or
    ``"via31"`` (the weight-h_{3,1} field).  The discriminant
    4p*h + (p-1)^2 is the perfect square (q+p-1)^2, so the sets are exact:

    * via12: { h + 1/4p +- |q+p-1|/2p }
    * via31: { h, h + p +- |q+p-1| }
    """
    p = w.p
    h = conformal_weight(w)
    root = abs(w.q + p - 1)
    if kind == "via12":
        return frozenset(
            {h + Fraction(1, 4 * p) + Fraction(sgn * root, 2 * p) for sgn in (1, -1)}
        )
    if kind == "via31":
        return frozenset({h, h + p + root, h + p - root})
    raise DomainError(f"kind must be 'via12' or 'via31', got {kind!r}")


def h0_squared(params: Params, h) -> Fraction:
    """Square of the zero-mode of the extra generator on a weight-h vector.

    Returns C_p * (h - h_{1,p}) * prod_{s=1}^{p-1} (h - h_{1,s})^2 with
    C_p = (4p)^(2p-1) / ((2p-1)!)^2.  Vanishes exactly at the h_{1,s}, which
    is what distinguishes the self-contragredient column of simple modules.
    """
    p = params.p
    h = Fraction(h)
    c_p = Fraction((4 * p) ** (2 * p - 1), factorial(2 * p - 1) ** 2)
    value = c_p * (h - h_rs(params, 1, p))
    for s in range(1, p):
        value *= (h - h_rs(params, 1, s)) ** 2
    return value
