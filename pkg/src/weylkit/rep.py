"""Graded weighted modules and their sl2 structure."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .linalg import Echelon, Subspace, axpy, sparse_kernel
from .weights import NotIntegrable, decompose_sl2, dim_of, is_lower_set

Key = tuple


class RankError(ValueError):
    pass


class DualityError(ValueError):
    pass


def key_degree(g, key: Key) -> int:
    """Degree shift of a basis element; filtered algebras act ungraded."""
    return key[0] if getattr(g, "graded", True) else 0


@dataclass
class Decomposition:
    """Per-degree sl2 multiplicities ``{degree: {m: mult}}``."""

    components: dict = field(default_factory=dict)

    def __getitem__(self, d):
        return self.components.get(d, {})

    def degrees(self) -> list[int]:
        return sorted(self.components)

    def dim(self, d) -> int:
        return dim_of(self[d])

    @property
    def total_dim(self) -> int:
        return sum(self.dim(d) for d in self.components)

    def weights(self) -> set[int]:
        return {m for c in self.components.values() for m in c}

    def trimmed(self) -> "Decomposition":
        """Drop trailing empty degrees."""
        degs = [d for d in self.degrees() if self.components[d]]
        if not degs:
            return Decomposition({min(self.components, default=0): {}})
        lo, hi = min(self.degrees()), max(degs)
        return Decomposition({d: dict(self.components.get(d, {})) for d in range(lo, hi + 1)})

    def to_json(self) -> dict:
        comps = []
        for d in self.degrees():
            m = self.components[d]
            comps.append({"degree": d,
                          "mults": {str(k): m[k] for k in sorted(m, reverse=True)},
                          "dim": dim_of(m)})
        return {"components": comps, "total_dim": self.total_dim}

    @classmethod
    def from_json(cls, data: dict) -> "Decomposition":
        return cls({int(c["degree"]): {int(k): int(v) for k, v in c["mults"].items()}
                    for c in data["components"]})

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        a = {d: m for d, m in self.components.items() if m}
        b = {d: m for d, m in other.components.items() if m}
        return a == b


@dataclass(frozen=True)
class TruncationSet:
    omega: frozenset

    def __init__(self, omega: Iterable[int]):
        om = frozenset(int(m) for m in omega)
        if any(m < 0 for m in om):
            raise ValueError("truncation weights must be dominant")
        object.__setattr__(self, "omega", om)

    def __contains__(self, m):
        return m in self.omega

    @property
    def top(self) -> int:
        return max(self.omega, default=-1)

    @property
    def is_lower(self) -> bool:
        return is_lower_set(self.omega)

    @classmethod
    def below(cls, la: int) -> "TruncationSet":
        return cls(range(0, la + 1))

    def sorted(self) -> list[int]:
        return sorted(self.omega)


class GradedWeightedModule:
    """Finite pieces ``V_(d)`` with a weight per basis vector and an action oracle.

    ``action(key, d)`` returns the matrix of ``key`` from ``V_(d)`` as a list of
    sparse columns indexed by the basis of the target piece.
    """

    def __init__(self, algebra, weights: Mapping[int, list[int]],
                 action: Callable[[Key, int], list] | None = None, name: str = ""):
        self.algebra = algebra
        self._weights = {int(d): list(w) for d, w in weights.items()}
        self._action = action
        self.name = name
        self._cache: dict = {}

    def __repr__(self):
        return f"<module {self.name or '?'} dims={self.dims()}>"

    def degrees(self) -> list[int]:
        return sorted(self._weights)

    def weights(self, d: int) -> list[int]:
        return self._weights.get(d, [])

    def dim(self, d: int) -> int:
        return len(self.weights(d))

    def dims(self) -> dict[int, int]:
        return {d: self.dim(d) for d in self.degrees()}

    @property
    def total_dim(self) -> int:
        return sum(self.dims().values())

    @property
    def top_degree(self) -> int:
        nz = [d for d in self.degrees() if self.dim(d)]
        return max(nz) if nz else min(self.degrees(), default=0)

    def slice(self, d: int, mu: int) -> list[int]:
        return [i for i, w in enumerate(self.weights(d)) if w == mu]

    def weight_dims(self, d: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for w in self.weights(d):
            out[w] = out.get(w, 0) + 1
        return out

    def target(self, key: Key, d: int) -> int:
        return d + key_degree(self.algebra, key)

    def act(self, key: Key, d: int) -> list[dict]:
        ck = (key, d)
        m = self._cache.get(ck)
        if m is None:
            if self.target(key, d) not in self._weights or self._action is None:
                m = [{} for _ in range(self.dim(d))]
            else:
                m = self._action(key, d)
            self._cache[ck] = m
        return m

    def apply(self, key: Key, d: int, vec: Mapping) -> dict:
        cols = self.act(key, d)
        out: dict = {}
        for i, x in vec.items():
            axpy(out, x, cols[i])
        return out

    def apply_elem(self, elem: Mapping, d: int, vec: Mapping) -> dict:
        """Action of a linear combination of homogeneous basis elements."""
        out: dict = {}
        for k, c in elem.items():
            axpy(out, c, self.apply(k, d, vec))
        return out

    def decomposition(self) -> Decomposition:
        return Decomposition({d: decompose_sl2(self.weight_dims(d)) for d in self.degrees()})

    def e(self, d, vec):
        return self.apply(self.algebra.e, d, vec)

    def f(self, d, vec):
        return self.apply(self.algebra.f, d, vec)


def explicit_module(algebra, weights: Mapping[int, list[int]], matrices: Mapping,
                    name: str = "") -> GradedWeightedModule:
    """Module from stored matrices ``{(key, d): columns}``; missing ones act by 0."""

    def action(key, d):
        m = matrices.get((key, d))
        return [dict(c) for c in m] if m is not None else [{} for _ in weights[d]]

    return GradedWeightedModule(algebra, weights, action, name)


def sl2_irrep_action(la: int):
    """Columns of e, f, h on ``L(la)`` in the basis ``v_k = f^k v_0``."""
    n = la + 1
    e = [({k - 1: Fraction(k * (la - k + 1))} if k else {}) for k in range(n)]
    f = [({k + 1: Fraction(1)} if k < la else {}) for k in range(n)]
    h = [({k: Fraction(la - 2 * k)} if la != 2 * k else {}) for k in range(n)]
    return e, f, h


def irreducible(g, la: int, degree: int = 0) -> GradedWeightedModule:
    """``L(la)`` placed in one degree, positive degrees acting by zero."""
    if la < 0:
        raise ValueError("highest weight must be dominant")
    e, f, h = sl2_irrep_action(la)
    mats = {(g.e, degree): e, (g.f, degree): f, (g.h, degree): h}
    return explicit_module(g, {degree: [la - 2 * k for k in range(la + 1)]}, mats,
                           name=f"L({la})")


def require_rank1(g):
    if getattr(g, "rank", 1) != 1:
        raise RankError("sl2 decompositions are implemented for rank 1 only")


def highest_weight_vectors(V: GradedWeightedModule, d: int, m: int) -> Subspace:
    """``ker e`` on the weight-``m`` slice of ``V_(d)``."""
    require_rank1(V.algebra)
    idx = V.slice(d, m)
    cols = V.act(V.algebra.e, d)
    ker = sparse_kernel([cols[i] for i in idx], len(idx))
    return Subspace(V.dim(d), ({idx[j]: x for j, x in v.items()} for v in ker))


def sl2_closure_echelon(V: GradedWeightedModule, d: int, seeds: Iterable[Mapping]) -> Echelon:
    ech = Echelon()
    queue = []
    for s in seeds:
        if ech.add(s):
            queue.append(dict(s))
    while queue:
        v = queue.pop()
        for w in (V.e(d, v), V.f(d, v)):
            if w and ech.add(w):
                queue.append(w)
    return ech


def sl2_submodule_closure(V: GradedWeightedModule, d: int, seeds: Iterable) -> Subspace:
    """Smallest e, f, h stable subspace of ``V_(d)`` containing the seeds."""
    seeds = [s if isinstance(s, Mapping) else {i: Fraction(x) for i, x in enumerate(s) if x}
             for s in seeds]
    return Subspace.from_echelon(V.dim(d), sl2_closure_echelon(V, d, seeds))


def truncate_isotypic(V: GradedWeightedModule, om) -> dict[int, tuple[Subspace, Subspace]]:
    """Split each piece into the isotypic parts with labels in/outside ``om``."""
    om = om if isinstance(om, TruncationSet) else TruncationSet(om)
    if not om.is_lower:
        warnings.warn("truncation set is not a lower set", stacklevel=2)
    out = {}
    for d in V.degrees():
        kept, disc = [], []
        for m in sorted({w for w in V.weights(d) if w >= 0}):
            hw = highest_weight_vectors(V, d, m).sparse_rows()
            (kept if m in om else disc).extend(hw)
        out[d] = (sl2_submodule_closure(V, d, kept), sl2_submodule_closure(V, d, disc))
    return out


def restrict_to_subspace(V: GradedWeightedModule, d: int, sub: Subspace, key: Key) -> list[dict]:
    """Matrix of ``key`` on an invariant subspace, in the subspace's basis."""
    ech = Echelon()
    for r in sub.sparse_rows():
        ech.add(r)
    out = []
    for r in sub.sparse_rows():
        img = V.apply(key, d, r)
        # coordinates w.r.t. the RREF basis are the pivot entries
        red = ech.reduce(img)
        if red:
            raise ValueError("subspace is not invariant")
        out.append({i: img[p] for i, p in enumerate(sub.pivots) if p in img})
    return out


def shift(V: GradedWeightedModule, n: int) -> GradedWeightedModule:
    """``V[n]`` with ``V[n]_(i) = V_(i-n)``."""
    if n == 0:
        return V
    return GradedWeightedModule(
        V.algebra, {d + n: V.weights(d) for d in V.degrees()},
        lambda key, d: V.act(key, d - n), name=f"{V.name}[{n}]")


def twisted_dual(V: GradedWeightedModule, sigma: Callable[[Key], dict]) -> GradedWeightedModule:
    """Contragredient twisted by ``sigma``, with degrees negated.

    ``x`` acts on a functional ``phi`` by ``-phi(sigma(x) .)``; the dual basis
    vector of a weight-``mu`` vector keeps weight ``mu`` because ``sigma`` is
    ``-1`` on the Cartan element.
    """
    if not V.degrees():
        raise DualityError("module has no graded pieces")
    g = V.algebra

    def action(key, d):
        # source (DV)_(d) = V_(-d)^*, target (DV)_(d+i) = V_(-d-i)^*
        i = key_degree(g, key)
        src = -d - i
        n_out = V.dim(-d)
        cols = [dict() for _ in range(n_out)]
        for k2, c in sigma(key).items():
            m = V.act(k2, src)
            # entry (r, s) of rho(sigma x): V_(src) -> V_(-d); transpose and negate
            for s_idx, col in enumerate(m):
                for r_idx, x in col.items():
                    axpy(cols[r_idx], -c * x, {s_idx: Fraction(1)})
        return cols

    return GradedWeightedModule(g, {-d: V.weights(d) for d in V.degrees()}, action,
                                name=f"Dbar({V.name})")


def equivariance_defects(V: GradedWeightedModule, pairs: Iterable[tuple[Key, Key]]) -> list:
    """Pairs ``(x, y, d)`` where ``[rho(x), rho(y)] != rho([x, y])`` on ``V_(d)``."""
    g = V.algebra
    bad = []
    for x, y in pairs:
        br = g.bracket(x, y)
        for d in V.degrees():
            for i in range(V.dim(d)):
                v = {i: Fraction(1)}
                dx, dy = key_degree(g, x), key_degree(g, y)
                lhs = V.apply(x, d + dy, V.apply(y, d, v))
                axpy(lhs, -1, V.apply(y, d + dx, V.apply(x, d, v)))
                rhs = V.apply_elem(br, d, v)
                if lhs != rhs:
                    bad.append((x, y, d))
                    break
    return bad


def integrable_check(V: GradedWeightedModule) -> bool:
    """Weight dimensions form an sl2 character in every degree."""
    try:
        V.decomposition()
    except NotIntegrable:
        return False
    return True
