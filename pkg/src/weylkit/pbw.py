"""Induced modules ``U(g) (x)_{U(sl2)} L(la)`` in a PBW basis."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .linalg import axpy
from .rep import GradedWeightedModule, sl2_irrep_action


def pbw_degree(g, key) -> int:
    """Degree of a key; for filtered algebras the level minus one."""
    return key[0] if g.graded else key[0] - 1


def _order(g, key):
    return (pbw_degree(g, key), -g.weight(key), key[1])


def complement_keys(g, i: int) -> list:
    """Keys of PBW degree ``i`` outside the sl2 triple."""
    sl2 = set(g.sl2.values())
    lv = i if g.graded else i + 1
    return [k for k in g.keys(lv) if k not in sl2]


def pbw_monomials(g, d: int, min_key=None) -> list[tuple]:
    """Weakly increasing tuples of complement keys with total degree ``d``."""
    if d == 0:
        return [()]
    out = []
    keys = sorted((k for i in range(1, d + 1) for k in complement_keys(g, i)),
                  key=lambda k: _order(g, k))
    for k in keys:
        if min_key is not None and _order(g, k) < _order(g, min_key):
            continue
        for rest in pbw_monomials(g, d - pbw_degree(g, k), k):
            out.append((k,) + rest)
    return out


def pbw_count(dims: dict[int, int], d: int) -> int:
    """Coefficient of ``t^d`` in ``prod_i (1 - t^i)^(-dims[i])``."""
    series = [1] + [0] * d
    for i, n in dims.items():
        if i < 1 or i > d:
            continue
        for _ in range(n):
            for k in range(i, d + 1):
                series[k] += series[k - i]
    return series[d]


class InducedModule:
    """``Ind(L(la))`` truncated at ``max_degree``, with straightening by commutators."""

    def __init__(self, g, la: int, max_degree: int):
        self.g = g
        self.la = la
        self.max_degree = max_degree
        self.sl2 = set(g.sl2.values())
        self._e, self._f, self._h = sl2_irrep_action(la)
        self.bases: dict[int, list] = {}
        self.index: dict[int, dict] = {}
        for d in range(max_degree + 1):
            elems = [(m, j) for m in pbw_monomials(g, d) for j in range(la + 1)]
            # stable sort: weight descending, then insertion order
            elems.sort(key=lambda mj: -self.weight_of(mj))
            self.bases[d] = elems
            self.index[d] = {mj: i for i, mj in enumerate(elems)}
        self._apply = lru_cache(maxsize=None)(self._apply_uncached)

    def weight_of(self, mj) -> int:
        m, j = mj
        return sum(self.g.weight(k) for k in m) + self.la - 2 * j

    def _sl2_on_vector(self, key, j) -> dict:
        g = self.g
        cols = {g.e: self._e, g.f: self._f, g.h: self._h}.get(key)
        if cols is None:
            raise ValueError(f"{key} is not in the sl2 triple")
        return {((), i): x for i, x in cols[j].items()}

    def degree_of(self, mj) -> int:
        return sum(pbw_degree(self.g, k) for k in mj[0])

    def _apply_uncached(self, key, m: tuple, j: int) -> dict:
        g = self.g
        if key[0] < (0 if g.graded else 1):
            raise ValueError("the unit is not handled; use the quotient by it")
        if not m:
            if key in self.sl2:
                return self._sl2_on_vector(key, j)
            return {((key,), j): Fraction(1)}
        m1, rest = m[0], m[1:]
        if key not in self.sl2 and _order(g, key) <= _order(g, m1):
            return {((key,) + m, j): Fraction(1)}
        # x m1 rest = m1 (x rest) + [x, m1] rest
        out: dict = {}
        for (m2, j2), c in self._apply(key, rest, j).items():
            axpy(out, c, self._apply(m1, m2, j2))
        rest_deg = sum(pbw_degree(g, x) for x in rest)
        for k, c in g.bracket(key, m1).items():
            if pbw_degree(g, k) + rest_deg <= self.max_degree:
                axpy(out, c, self._apply(k, rest, j))
        return out

    def apply_basis(self, key, mj) -> dict:
        """``key . (m (x) v_j)`` as a dict over basis pairs."""
        return self._apply(key, mj[0], mj[1])

    def apply_key(self, key, d: int, vec: dict) -> dict:
        """Action on a coordinate vector of the degree-``d`` piece (graded case)."""
        tgt = d + key[0]
        out: dict = {}
        if tgt > self.max_degree:
            return out
        basis, idx = self.bases[d], self.index[tgt]
        for i, x in vec.items():
            m, j = basis[i]
            for mj, c in self._apply(key, m, j).items():
                axpy(out, x * c, {idx[mj]: Fraction(1)})
        return out

    def module(self) -> GradedWeightedModule:
        def action(key, d):
            return [self.apply_key(key, d, {i: Fraction(1)}) for i in range(len(self.bases[d]))]

        weights = {d: [self.weight_of(mj) for mj in b] for d, b in self.bases.items()}
        return GradedWeightedModule(self.g, weights, action, name=f"Ind(L({self.la}))")


def induced_component(g, la: int, d: int) -> GradedWeightedModule:
    """Degrees ``0..d`` of the induced module; the degree-``d`` piece is the one asked for."""
    return InducedModule(g, la, d).module()


def pbw_oracle(g, la: int, om, max_degree: int):
    """``Ind(L(la)) / U(g) tau-bar(Ind)`` degree by degree, entirely inside the induced module.

    ``N_(d) = Bad_(d) + sum_i g_(i) N_(d-i)`` where ``Bad_(d)`` is the isotypic
    part of ``Ind_(d)`` with highest weights outside ``om``.  Returns the
    per-degree weight dimensions of the quotient.
    """
    from .linalg import Echelon
    from .rep import TruncationSet, truncate_isotypic

    om = om if isinstance(om, TruncationSet) else TruncationSet(om)
    ind = InducedModule(g, la, max_degree)
    mod = ind.module()
    split = truncate_isotypic(mod, om)
    N: dict[int, Echelon] = {}
    out = {}
    for d in range(max_degree + 1):
        ech = Echelon()
        for r in split[d][1].sparse_rows():
            ech.add(r)
        for i in range(1, d + 1):
            for x in g.keys(i):
                for r in N[d - i].rows():
                    ech.add(ind.apply_key(x, d - i, r))
        N[d] = ech
        piv = set(ech.pivots)
        wd: dict[int, int] = {}
        for c, w in enumerate(mod.weights(d)):
            if c not in piv:
                wd[w] = wd.get(w, 0) + 1
        out[d] = wd
    return out
