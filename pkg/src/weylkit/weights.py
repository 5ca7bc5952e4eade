"""Weights, root data and sl2 characters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence


class NotIntegrable(ValueError):
    """Weight multiplicities that are not the character of an sl2-module."""


class InvalidRootData(ValueError):
    pass


@dataclass(frozen=True)
class WeightVector:
    coords: tuple

    def __init__(self, coords):
        if isinstance(coords, int):
            coords = (coords,)
        object.__setattr__(self, "coords", tuple(int(c) for c in coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a - b for a, b in zip(self.coords, other.coords)))


@dataclass(frozen=True)
class RootData:
    """Simple roots in the fundamental weight basis: row ``i`` is alpha_i."""

    cartan: tuple

    def __init__(self, cartan: Sequence[Sequence[int]]):
        cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        r = len(cartan)
        if any(len(row) != r for row in cartan):
            raise InvalidRootData("Cartan matrix must be square")
        if any(cartan[i][i] != 2 for i in range(r)):
            raise InvalidRootData("Cartan matrix must have 2 on the diagonal")
        object.__setattr__(self, "cartan", cartan)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @classmethod
    def sl2(cls) -> "RootData":
        return cls([[2]])

    @classmethod
    def a2(cls) -> "RootData":
        return cls([[2, -1], [-1, 2]])


def _solve(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve the square system ``a x = b`` exactly by Gauss-Jordan."""
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            raise InvalidRootData("singular Cartan matrix")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                fct = m[r][c]
                m[r] = [x - fct * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


def root_coordinates(w: WeightVector, rd: RootData) -> list[Fraction]:
    """Coefficients of ``w`` in the basis of simple roots."""
    if w.rank != rd.rank:
        raise ValueError("rank mismatch between weight and root data")
    # w = sum_i c_i alpha_i  <=>  cartan^T c = w
    at = [[Fraction(rd.cartan[i][j]) for i in range(rd.rank)] for j in range(rd.rank)]
    return _solve(at, [Fraction(x) for x in w.coords])


def leq_in_root_order(mu, la, rd: RootData | None = None) -> bool:
    """True iff ``mu <= la``, i.e. ``la - mu`` is a nonnegative rational
    combination of simple roots."""
    mu, la = WeightVector(mu), WeightVector(la)
    if rd is None:
        rd = RootData.sl2() if mu.rank == 1 else None
        if rd is None:
            raise ValueError("root data required for rank > 1")
    if mu.rank != la.rank:
        raise ValueError("rank mismatch")
    return all(c >= 0 for c in root_coordinates(la - mu, rd))


def lower_set(la: int) -> list[int]:
    """Dominant rank-1 weights below ``la``."""
    return list(range(0, la + 1))


def is_lower_set(omega) -> bool:
    omega = set(omega)
    return all(m in omega for top in omega for m in range(0, top + 1))


def decompose_sl2(dims: Mapping[int, int]) -> dict[int, int]:
    """Multiplicities ``{m: [V:L(m)]}`` from weight-space dimensions."""
    dims = {int(k): int(v) for k, v in dims.items() if v}
    for m, k in dims.items():
        if k < 0:
            raise NotIntegrable(f"negative dimension at weight {m}")
        if dims.get(-m, 0) != k:
            raise NotIntegrable(f"weight {m} and {-m} have different multiplicities")
    out = {}
    for m in range(0, max(dims, default=-1) + 1):
        mult = dims.get(m, 0) - dims.get(m + 2, 0)
        if mult < 0:
            raise NotIntegrable(f"weight dimensions not unimodal at {m}")
        if mult:
            out[m] = mult
    return out


def character(mults: Mapping[int, int]) -> dict[int, int]:
    """Weight dimensions of ``sum mult(m) L(m)``."""
    out: dict[int, int] = {}
    for m, k in mults.items():
        for w in range(-m, m + 1, 2):
            out[w] = out.get(w, 0) + k
    return out


def tensor_mults(a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
    """Clebsch-Gordan rule for sl2 modules given by multiplicities."""
    out: dict[int, int] = {}
    for m, x in a.items():
        for n, y in b.items():
            for k in range(abs(m - n), m + n + 1, 2):
                out[k] = out.get(k, 0) + x * y
    return out


def dim_of(mults: Mapping[int, int]) -> int:
    return sum((m + 1) * k for m, k in mults.items())
