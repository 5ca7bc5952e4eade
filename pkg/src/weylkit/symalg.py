"""Truncated symmetric algebras ``S_om(V) = SV / (SV . tau-bar_om(SV))``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .lie import build_sl2
from .linalg import Echelon, axpy
from .rep import Decomposition, GradedWeightedModule, TruncationSet, sl2_irrep_action, truncate_isotypic
from .weights import decompose_sl2

DEFAULT_MAX_DEGREE = 64


def sl2_module(mults: dict[int, int], g=None) -> GradedWeightedModule:
    """``sum mult(m) L(m)`` in degree 0, basis ``f^k v`` per summand, weights descending
    within each summand."""
    g = g or build_sl2()
    weights, E, F = [], [], []
    for m in sorted(mults, reverse=True):
        for _ in range(mults[m]):
            off = len(weights)
            e, f, _h = sl2_irrep_action(m)
            weights.extend(m - 2 * k for k in range(m + 1))
            E.extend({off + i: x for i, x in c.items()} for c in e)
            F.extend({off + i: x for i, x in c.items()} for c in f)
    mats = {(g.e, 0): E, (g.f, 0): F,
            (g.h, 0): [({i: Fraction(w)} if w else {}) for i, w in enumerate(weights)]}

    def action(key, d):
        return [dict(c) for c in mats.get((key, d), [{} for _ in weights])]

    return GradedWeightedModule(g, {0: weights}, action,
                                name="+".join(f"L({m})" for m in sorted(mults, reverse=True)))


class SymmetricPowers:
    """``S^d V`` on sorted monomials, with the sl2 action by the Leibniz rule."""

    def __init__(self, V: GradedWeightedModule):
        self.V = V
        self.g = V.algebra
        self.n = V.dim(0)
        self._bases: dict[int, list] = {}
        self._index: dict[int, dict] = {}

    def basis(self, d: int) -> list[tuple]:
        b = self._bases.get(d)
        if b is None:
            w = self.V.weights(0)
            b = sorted(combinations_with_replacement(range(self.n), d),
                       key=lambda m: -sum(w[i] for i in m))
            self._bases[d] = b
            self._index[d] = {m: i for i, m in enumerate(b)}
        return b

    def index(self, d: int) -> dict:
        self.basis(d)
        return self._index[d]

    def weights(self, d: int) -> list[int]:
        w = self.V.weights(0)
        return [sum(w[i] for i in m) for m in self.basis(d)]

    def act(self, key, d: int, vec: dict) -> dict:
        cols = self.V.act(key, 0)
        basis, idx = self.basis(d), self.index(d)
        out: dict = {}
        for i, x in vec.items():
            m = basis[i]
            for pos, b in enumerate(m):
                for b2, y in cols[b].items():
                    nm = tuple(sorted(m[:pos] + (b2,) + m[pos + 1:]))
                    axpy(out, x * y, {idx[nm]: 1})
        return out

    def multiply(self, i: int, d: int, vec: dict) -> dict:
        """``v_i`` times a vector of ``S^d V``."""
        basis, idx = self.basis(d), self.index(d + 1)
        out: dict = {}
        for j, x in vec.items():
            axpy(out, x, {idx[tuple(sorted(basis[j] + (i,)))]: 1})
        return out

    def module(self, d: int) -> GradedWeightedModule:
        def action(key, dd):
            return [self.act(key, dd, {i: Fraction(1)}) for i in range(len(self.basis(dd)))]

        return GradedWeightedModule(self.g, {d: self.weights(d)}, action, name=f"S^{d}")


def sym_power(V: GradedWeightedModule, d: int) -> GradedWeightedModule:
    return SymmetricPowers(V).module(d)


@dataclass
class TruncatedSymAlgebra:
    omega: list
    dims: dict
    decomposition: Decomposition
    terminated: bool
    checks: dict = field(default_factory=dict)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def graded_dims(self) -> list[int]:
        return [self.dims[d] for d in sorted(self.dims)]

    def to_json(self) -> dict:
        out = self.decomposition.to_json()
        out["terminated"] = self.terminated
        return out


def truncated_sym_algebra(V: GradedWeightedModule, om, max_degree: int = DEFAULT_MAX_DEGREE,
                          check: bool = True) -> TruncatedSymAlgebra:
    """Degreewise ``A_(d) = S^d V / I_(d)`` with ``I_(d) = V . I_(d-1) + Bad_(d)``.

    ``Bad_(d)`` is the isotypic part of ``S^d V`` with labels outside ``om``;
    the recursion spans the ideal generated by all of them.
    """
    om = om if isinstance(om, TruncationSet) else TruncationSet(om)
    if 0 not in om:
        return TruncatedSymAlgebra(om.sorted(), {0: 0}, Decomposition({0: {}}), True,
                                   {"stable": True, "zero_propagation": True, "generated": True})
    S = SymmetricPowers(V)
    g = S.g
    dims = {0: 1}
    comps = {0: {0: 1}}
    prev = Echelon()
    stable = zero_prop = generated = True
    terminated = False
    for d in range(1, max_degree + 1):
        ech = Echelon()
        for r in prev.rows():
            for i in range(S.n):
                ech.add(S.multiply(i, d - 1, r))
        mod = S.module(d)
        bad = truncate_isotypic(mod, om)[d][1]
        for r in bad.sparse_rows():
            ech.add(r)
        wts = S.weights(d)
        piv = set(ech.pivots)
        wd: dict[int, int] = {}
        for c, w in enumerate(wts):
            if c not in piv:
                wd[w] = wd.get(w, 0) + 1
        dims[d] = len(wts) - ech.rank
        comps[d] = decompose_sl2(wd)
        if check:
            for key in (g.e, g.f):
                if any(not ech.contains(S.act(key, d, r)) for r in ech.rows()):
                    stable = False
            # A_1 . A_(d-1) spans A_(d)
            span = ech.copy()
            for c in prev.nonpivots(len(S.basis(d - 1))):
                for i in range(S.n):
                    span.add(S.multiply(i, d - 1, {c: Fraction(1)}))
            generated = generated and span.rank == len(wts)
            if dims[d - 1] == 0 and dims[d] != 0:
                zero_prop = False
        prev = ech
        if dims[d] == 0:
            terminated = True
            break
    dec = Decomposition({d: comps[d] for d in dims})
    return TruncatedSymAlgebra(om.sorted(), dims, dec, terminated,
                               {"stable": stable, "zero_propagation": zero_prop,
                                "generated": generated})
