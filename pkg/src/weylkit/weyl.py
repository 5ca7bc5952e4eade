"""Truncated induction: global and local Weyl modules degree by degree.

Each degree ``d`` is built from the lower ones.  Candidates are the tensors
``x (x) w`` with ``x`` in ``g_(i)`` and ``w`` a basis vector of ``W_(d-i)``;
the straightening relations, the isotypic parts of weight outside ``om`` and,
for the local module, the ``h-bar`` images of the generator are killed.  The
surviving candidate columns form the basis of ``W_(d)``.

Only the weight slices ``[-M, M+2]`` (``M = max om``) are ever built: every
weight of ``W_(d)`` lies in ``[-M, M]``, and the slices at ``M+1`` and ``M+2``
carry all the isotypic parts of larger highest weight.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .lie import AlgebraError
from .linalg import Echelon, axpy
from .rep import (Decomposition, GradedWeightedModule, TruncationSet, highest_weight_vectors,
                  irreducible, sl2_closure_echelon)
from .weights import decompose_sl2

HARD_CAP = 256


class NonDominant(ValueError):
    """Raised for a negative highest weight: such Weyl modules vanish."""


class CapReached(RuntimeError):
    pass


def check_engine_algebra(g) -> None:
    if getattr(g, "rank", 1) != 1:
        raise AlgebraError("Weyl modules are computed for rank 1 only")
    if not getattr(g, "graded", True):
        raise AlgebraError("the graded engine needs a graded algebra; use the filtered engine")
    if g.dim(0) != 3:
        raise AlgebraError(
            f"degree 0 of {g.name} has dimension {g.dim(0)}; it must be the sl2 triple")


def stopping_threshold(g, om) -> int:
    """Largest degree ``i >= 1`` whose piece contains some ``L(m)`` with ``m <= 2 max om``.

    Pieces beyond it act by zero on any quotient bounded by ``om``.  The scan
    stops at the algebra's top degree or once ``hw_floor`` exceeds the bound
    (``hw_floor`` must be nondecreasing).
    """
    om = om if isinstance(om, TruncationSet) else TruncationSet(om)
    bound = 2 * om.top
    if bound < 0:
        return 0
    t = 0
    i = 1
    while i <= g.max_degree:
        floor = g.hw_floor(i)
        if floor is not None and floor > bound:
            break
        if floor is None and math.isinf(g.max_degree):
            raise AlgebraError("cannot bound the stopping threshold: algebra has no hw_floor")
        if any(m <= bound for m in g.decompose(i)):
            t = i
        i += 1
    return t


class _Level:
    """One degree of the computed module."""

    __slots__ = ("degree", "cands", "cand_index", "kill", "basis_cols", "pos", "weights",
                 "E", "F", "_proj", "cand_weights")

    def __init__(self, degree):
        self.degree = degree
        self.cands: list = []          # (key, wk)
        self.cand_weights: list = []
        self.cand_index: dict = {}
        self.kill = Echelon()
        self.basis_cols: list = []
        self.pos: dict = {}
        self.weights: list = []
        self.E: list = []
        self.F: list = []
        self._proj: dict = {}

    def project(self, vec: dict) -> dict:
        """Coordinates in ``W_(d)`` of a candidate vector."""
        red = self.kill.reduce(vec)
        pos = self.pos
        out = {}
        for c, x in red.items():
            p = pos.get(c)
            if p is None:
                raise AssertionError(f"column {c} survived outside the basis in degree {self.degree}")
            out[p] = x
        return out

    def project_col(self, c: int) -> dict:
        r = self._proj.get(c)
        if r is None:
            r = self._proj[c] = self.project({c: Fraction(1)})
        return r


@dataclass
class WeylModuleResult:
    kind: str
    algebra: str
    omega: list
    la: int | None
    module: GradedWeightedModule
    decomposition: Decomposition
    termination: dict
    levels: dict = field(default_factory=dict, repr=False)
    T: int = 0

    @property
    def total_dim(self) -> int:
        return self.decomposition.total_dim

    @property
    def certified(self) -> bool:
        return self.termination["rule"] == "threshold"

    @property
    def top_degree(self) -> int:
        return self.termination["top_degree"]

    def dims(self) -> dict[int, int]:
        return {d: self.decomposition.dim(d) for d in self.decomposition.degrees()}

    def weight_slice(self, d: int, mu: int) -> list[int]:
        return self.module.slice(d, mu)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "algebra": self.algebra}
        if self.kind == "bind":
            out["omega"] = sorted(self.omega)
        else:
            out["lambda"] = self.la
        dec = self.decomposition.to_json()
        out["components"] = dec["components"]
        out["total_dim"] = dec["total_dim"]
        out["termination"] = dict(self.termination)
        return out


def _degree_zero(V0: GradedWeightedModule, om: TruncationSet) -> _Level:
    """``tau_om(V0)`` with a weight-ordered basis and its sl2 matrices."""
    g = V0.algebra
    lev = _Level(0)
    kept = []
    for m in sorted({w for w in V0.weights(0) if w >= 0}, reverse=True):
        if m in om:
            kept.extend(highest_weight_vectors(V0, 0, m).sparse_rows())
    ech = sl2_closure_echelon(V0, 0, kept)
    wts = V0.weights(0)
    rows = sorted(ech.rows(), key=lambda r: -wts[min(r)])
    lev.weights = [wts[min(r)] for r in rows]
    pivots = [min(r) for r in rows]

    def coords(v):
        red = ech.reduce(v)
        if red:
            raise AssertionError("truncation of the degree 0 piece is not sl2-stable")
        return {i: v[p] for i, p in enumerate(pivots) if v.get(p)}

    lev.E = [coords(V0.apply(g.e, 0, r)) for r in rows]
    lev.F = [coords(V0.apply(g.f, 0, r)) for r in rows]
    lev.basis_cols = list(range(len(rows)))
    return lev


class BindEngine:
    """State of the degree recursion for ``Bind_om(V0)``."""

    def __init__(self, g, V0: GradedWeightedModule, om, local: bool = False):
        check_engine_algebra(g)
        self.g = g
        self.om = om if isinstance(om, TruncationSet) else TruncationSet(om)
        if not self.om.is_lower:
            warnings.warn("truncation set is not a lower set", stacklevel=3)
        self.M = self.om.top
        self.T = stopping_threshold(g, self.om)
        self.local = local
        self.levels: dict[int, _Level] = {0: _degree_zero(V0, self.om)}
        if local and (not self.levels[0].weights or self.levels[0].weights[0] != self.M):
            raise ValueError("local Weyl modules need a highest weight generator of weight max(om)")

    # -- actions on computed levels ------------------------------------

    def act_col(self, key, d: int, wk: int) -> dict:
        """``key . w_k`` for ``w_k`` in ``W_(d)``, as coordinates in ``W_(d+i)``."""
        i = key[0]
        if i == 0:
            lev = self.levels[d]
            if key == self.g.e:
                return lev.E[wk]
            if key == self.g.f:
                return lev.F[wk]
            w = lev.weights[wk]
            return {wk: Fraction(w)} if w else {}
        tgt = self.levels.get(d + i)
        if tgt is None or i > self.T:
            return {}
        c = tgt.cand_index.get((key, wk))
        return tgt.project_col(c) if c is not None else {}

    def _in_range(self, w: int) -> bool:
        return -self.M <= w <= self.M + 2

    def _sl2_cand(self, lev: _Level, key, vec: dict) -> dict:
        """sl2 element acting on candidates: ``a(x w) = [a, x] w + x (a w)``."""
        g = self.g
        out: dict = {}
        idx = lev.cand_index
        for c, coeff in vec.items():
            x, wk = lev.cands[c]
            i = x[0]
            for z, b in g.bracket(key, x).items():
                t = idx.get((z, wk))
                if t is not None:
                    out[t] = out.get(t, 0) + coeff * b
            for wj, b in self.act_col(key, lev.degree - i, wk).items():
                t = idx.get((x, wj))
                if t is not None:
                    out[t] = out.get(t, 0) + coeff * b
        return {k: v for k, v in out.items() if v}

    # -- one degree ---------------------------------------------------------

    def step(self, d: int) -> _Level:
        g, M, T = self.g, self.M, self.T
        lev = _Level(d)
        cands = []
        for i in range(1, min(d, T) + 1):
            low = self.levels[d - i]
            for x in g.keys(i):
                wx = g.weight(x)
                for wk, ww in enumerate(low.weights):
                    if self._in_range(wx + ww):
                        cands.append((-(wx + ww), -i, x[1], wk, x))
        cands.sort(key=lambda t: t[:4])
        for c, (nw, _, _, wk, x) in enumerate(cands):
            lev.cands.append((x, wk))
            lev.cand_weights.append(-nw)
            lev.cand_index[(x, wk)] = c
        idx = lev.cand_index
        kill = lev.kill

        # straightening relations x(yw) - y(xw) - [x,y]w
        for i in range(1, min(d, T) + 1):
            for j in range(i, min(d - i, T) + 1):
                low = self.levels[d - i - j]
                for x in g.keys(i):
                    for y in g.keys(j):
                        if i == j and y[1] <= x[1]:
                            continue
                        wxy = g.weight(x) + g.weight(y)
                        br = g.bracket(x, y) if i + j <= T else {}
                        for wk, ww in enumerate(low.weights):
                            if not self._in_range(wxy + ww):
                                continue
                            rel: dict = {}
                            for c, b in self.act_col(y, d - i - j, wk).items():
                                axpy(rel, b, {idx[(x, c)]: 1})
                            for c, b in self.act_col(x, d - i - j, wk).items():
                                axpy(rel, -b, {idx[(y, c)]: 1})
                            for z, b in br.items():
                                axpy(rel, -b, {idx[(z, wk)]: 1})
                            if rel:
                                kill.add(rel)

        # isotypic parts of weight outside om
        n = len(lev.cands)
        by_weight: dict[int, list[int]] = {}
        for c in kill.nonpivots(n):
            by_weight.setdefault(lev.cand_weights[c], []).append(c)
        seeds = []
        for top in (M + 1, M + 2):
            seeds.extend({c: Fraction(1)} for c in by_weight.get(top, []))
        for m in range(0, M + 1):
            if m not in self.om and by_weight.get(m):
                seeds.extend(self._hw_in_quotient(lev, m, by_weight))
        for s in seeds:
            v = s
            w = lev.cand_weights[min(s)]
            while True:
                kill.add(v)
                w -= 2
                if w < -M:
                    break
                v = kill.reduce(self._sl2_cand(lev, g.f, v))
                if not v:
                    break

        if self.local and d <= T:
            gens = [{idx[(x, 0)]: Fraction(1)} for x in g.weight_zero_keys(d) if (x, 0) in idx]
            self._close_and_kill(lev, gens)

        # surviving columns, weight descending
        for c in kill.nonpivots(n):
            w = lev.cand_weights[c]
            if w > M:
                raise AssertionError(f"weight {w} survived truncation in degree {d}")
            lev.pos[c] = len(lev.basis_cols)
            lev.basis_cols.append(c)
            lev.weights.append(w)
        self.levels[d] = lev
        lev.E = [self._project_in(lev, self._sl2_cand(lev, g.e, {c: Fraction(1)})) for c in lev.basis_cols]
        lev.F = [self._project_in(lev, self._sl2_cand(lev, g.f, {c: Fraction(1)})) for c in lev.basis_cols]
        return lev

    def _project_in(self, lev: _Level, vec: dict) -> dict:
        vec = {c: x for c, x in vec.items() if lev.cand_weights[c] <= self.M}
        return lev.project(vec)

    def _hw_in_quotient(self, lev: _Level, m: int, by_weight) -> list[dict]:
        """Highest weight vectors of weight ``m`` in candidates modulo the relations."""
        g = self.g
        cols = by_weight[m]
        images = [lev.kill.reduce(self._sl2_cand(lev, g.e, {c: Fraction(1)})) for c in cols]
        from .linalg import sparse_kernel
        return [{cols[j]: x for j, x in v.items()} for v in sparse_kernel(images, len(cols))]

    def _close_and_kill(self, lev: _Level, seeds: list[dict]) -> None:
        g, M = self.g, self.M
        kill = lev.kill
        queue = []
        for s in seeds:
            if kill.add(s):
                queue.append(s)
        while queue:
            v = queue.pop()
            for key in (g.e, g.f):
                img = {c: x for c, x in self._sl2_cand(lev, key, v).items()
                       if -M <= lev.cand_weights[c] <= M}
                img = kill.reduce(img)
                if img and kill.add(img):
                    queue.append(img)

    # -- driver ----------------------------------------------------------------

    def run(self, max_degree: int | None = None) -> dict:
        cap = HARD_CAP if max_degree is None else min(max_degree, HARD_CAP)
        T = self.T
        if not self.levels[0].weights:
            return {"rule": "threshold", "T": T, "top_degree": 0}
        if T == 0:
            return {"rule": "threshold", "T": 0, "top_degree": 0}
        d = 0
        zeros = 0
        while d < cap:
            d += 1
            lev = self.step(d)
            zeros = zeros + 1 if not lev.weights else 0
            if zeros >= T:
                top = d - zeros
                for k in range(top + 1, d + 1):
                    del self.levels[k]
                return {"rule": "threshold", "T": T, "top_degree": top}
        top = max(k for k, lv in self.levels.items() if lv.weights or k == 0)
        return {"rule": "cap", "T": T, "top_degree": top}

    def module(self, name: str) -> GradedWeightedModule:
        weights = {d: lv.weights for d, lv in sorted(self.levels.items())}

        def action(key, d):
            return [dict(self.act_col(key, d, wk)) for wk in range(len(weights[d]))]

        return GradedWeightedModule(self.g, weights, action, name=name)


def _result(engine: BindEngine, kind: str, term: dict, la, name: str) -> WeylModuleResult:
    mod = engine.module(name)
    dec = Decomposition({d: decompose_sl2(mod.weight_dims(d)) for d in mod.degrees()})
    for d, m in dec.components.items():
        bad = [w for w in m if w not in engine.om]
        if bad:
            raise AssertionError(f"degree {d} carries weights {bad} outside the truncation set")
    return WeylModuleResult(kind, engine.g.name, engine.om.sorted(), la, mod, dec, term,
                            engine.levels, engine.T)


def compute_bind(g, V0: GradedWeightedModule, om, max_degree: int | None = None) -> WeylModuleResult:
    eng = BindEngine(g, V0, om)
    term = eng.run(max_degree)
    return _result(eng, "bind", term, None, f"Bind({V0.name})")


def _dominant(la) -> int:
    if isinstance(la, Fraction) and la.denominator != 1:
        raise ValueError("highest weight must be an integer")
    la = int(la)
    if la < 0:
        raise NonDominant(f"lambda = {la} is not dominant, so W(lambda) = 0")
    return la


def compute_global_weyl(g, la: int, max_degree: int | None = None) -> WeylModuleResult:
    la = _dominant(la)
    eng = BindEngine(g, irreducible(g, la), TruncationSet.below(la))
    term = eng.run(max_degree)
    return _result(eng, "global", term, la, f"W({la})")


def compute_local_weyl(g, la: int, max_degree: int | None = None) -> WeylModuleResult:
    la = _dominant(la)
    eng = BindEngine(g, irreducible(g, la), TruncationSet.below(la), local=True)
    term = eng.run(max_degree)
    return _result(eng, "local", term, la, f"Wpi({la})")
