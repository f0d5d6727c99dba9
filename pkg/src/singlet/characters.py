"""Exact truncated graded characters (q-series without the c/24 prefactor).

A :class:`QSeries` is a leading exponent plus an integer coefficient vector;
a :class:`CharacterSum` groups series by the fractional part of the leading
exponent, for expressions whose summands live in different weight cosets.

Characters of the atypical simples are Virasoro sums over the linear
embedding chains, truncated where the quadratic weight growth leaves the
window; Fock characters are shifted partition series.  Composite species use
their composition factors.  Everything is exact integer arithmetic.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .modules import FockTypical, ModuleExpr, as_expr, k_class, lowest_weight, normalize_atom
from .weights import Params, h_rs

__all__ = [
    "QSeries",
    "CharacterSum",
    "partition_numbers",
    "eta_inv_series",
    "ch_vir_irr",
    "ch_indec",
    "ch_expr",
    "check_character_identity",
]

_partitions = [1]
_partitions_lock = threading.Lock()


def partition_numbers(n: int) -> list[int]:
    """Partition numbers p(0)..p(n) by the pentagonal-number recurrence."""
    if n < 0:
        return []
    with _partitions_lock:
        while len(_partitions) <= n:
            target = len(_partitions)
            total = 0
            k = 1
            while True:
                g1 = k * (3 * k - 1) // 2
                g2 = k * (3 * k + 1) // 2
                if g1 > target:
                    break
                sign = 1 if k % 2 else -1
                total += sign * _partitions[target - g1]
                if g2 <= target:
                    total += sign * _partitions[target - g2]
                k += 1
            _partitions.append(total)
        return _partitions[: n + 1]


@dataclass(frozen=True)
class QSeries:
    """Truncated series sum_n coeffs[n] * q^(h0 + n)."""

    h0: Fraction
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "h0", Fraction(self.h0))
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        return f"q^({self.h0}) * {list(self.coeffs)}"


class CharacterSum:
    """Finite map from exponent-mod-1 cosets to truncated series."""

    __slots__ = ("_series",)

    def __init__(self, series):
        items = sorted(series.items() if isinstance(series, dict) else series, key=lambda kv: kv[1].h0)
        object.__setattr__(self, "_series", dict(items))

    def items(self):
        return list(self._series.items())

    def series(self):
        return list(self._series.values())

    def coset(self, key: Fraction):
        return self._series.get(Fraction(key) % 1)

    def __eq__(self, other):
        return isinstance(other, CharacterSum) and self._series == other._series

    def __str__(self):
        return "; ".join(str(s) for s in self.series()) or "0"

    def to_json(self) -> dict:
        return {
            "cosets": [{"h0": str(s.h0), "coeffs": list(s.coeffs)} for s in self.series()]
        }


def eta_inv_series(n: int) -> QSeries:
    """The partition generating series to order n (Verma graded dimension)."""
    if n < 0:
        raise DomainError(f"truncation order must be >= 0, got {n}")
    return QSeries(Fraction(0), partition_numbers(n))


def ch_vir_irr(params: Params, r: int, s: int, n: int) -> QSeries:
    """Character of the irreducible Virasoro module at (r, s), r >= 1.

    One embedding subtraction suffices: the numerator gap is r*s below the
    top of the chain (r*p in the boundary column s = p).
    """
    p = params.p
    if r < 1 or not 1 <= s <= p:
        raise DomainError(f"need r >= 1 and 1 <= s <= {p}, got (r,s)=({r},{s})")
    if n < 0:
        raise DomainError(f"truncation order must be >= 0, got {n}")
    gap = r * p if s == p else r * s
    part = partition_numbers(n)
    coeffs = [part[k] - (part[k - gap] if k >= gap else 0) for k in range(n + 1)]
    return QSeries(h_rs(params, r, s), coeffs)


def _add_atom_coeffs(params: Params, atom, mult: int, base: Fraction, acc: list):
    """Add the graded dimensions of ``atom`` into acc[k] ~ weight base + k."""
    depth = len(acc) - 1
    p = params.p
    for factor, fmult in k_class(params, atom).terms():
        fmult *= mult
        if isinstance(factor, FockTypical):
            off = lowest_weight(params, factor) - base
            if off > depth:
                continue
            assert off.denominator == 1 and off >= 0
            off = int(off)
            part = partition_numbers(depth - off)
            for k in range(off, depth + 1):
                acc[k] += fmult * part[k - off]
        else:
            r0 = max(factor.r, 2 - factor.r)
            s = factor.s
            i = 0
            while True:
                r = r0 + 2 * i
                off = h_rs(params, r, s) - base
                if off > depth:
                    break
                assert off.denominator == 1 and off >= 0
                off = int(off)
                gap = r * p if s == p else r * s
                part = partition_numbers(depth - off)
                for k in range(off, depth + 1):
                    j = k - off
                    acc[k] += fmult * (part[j] - (part[j - gap] if j >= gap else 0))
                i += 1


def ch_expr(params: Params, x, n: int) -> CharacterSum:
    """Character of a module expression, one series per weight coset.

    Each coset's series starts at the minimal weight among its summands and
    is exact to n orders above it.
    """
    if n < 0:
        raise DomainError(f"truncation order must be >= 0, got {n}")
    by_coset: dict = {}
    for atom, mult in as_expr(x).terms():
        atom = normalize_atom(params, atom)
        lw = lowest_weight(params, atom)
        by_coset.setdefault(lw % 1, []).append((atom, mult, lw))
    out = {}
    for key, atoms in by_coset.items():
        base = min(lw for _, _, lw in atoms)
        acc = [0] * (n + 1)
        for atom, mult, _ in atoms:
            _add_atom_coeffs(params, atom, mult, base, acc)
        out[key] = QSeries(base, acc)
    return CharacterSum(out)


def ch_indec(params: Params, atom, n: int) -> CharacterSum:
    """Character of a single indecomposable."""
    return ch_expr(params, ModuleExpr.of(atom), n)


def check_character_identity(params: Params, lhs, rhs, n: int) -> bool:
    """True iff both expressions have identical characters to order n on
    every coset."""
    return ch_expr(params, lhs, n) == ch_expr(params, rhs, n)
