"""Global Weyl modules over filtered algebras by saturation inside the induced module.

The induced module carries the PBW filtration ``F_E`` (a key of level ``l``
has degree ``l - 1``; this is an algebra filtration once
``[F_M, F_N] <= F_(M+N-1)``).  For growing ``E`` the engine collects a
subspace ``K`` of ``F_E`` that certainly lies in ``U(g) tau-bar(Ind)``:
every vector of weight outside ``[-M, M]``, the ``f``-strings from the slices
``M+1`` and ``M+2``, and the closure of all that under the generators.
Columns are ordered by degree descending, so that the non-pivot columns of
``K`` span a complement in which low degrees are preferred.

Fixpoint test at ``E``: the surviving columns all have degree ``<= D`` with
``E - D >= 2(G - 1)``; then every generator and every bracket of two
generators acts on ``F_D / (K cap F_D)``, and these actions are checked to
satisfy the bracket relations.  The quotient is then a bounded module
generated by ``v_la`` which every bounded cyclic module maps onto.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .lie import AlgebraError, BasisElement
from .linalg import Echelon, axpy
from .pbw import InducedModule, pbw_degree
from .rep import Decomposition
from .sl_lambda import FilteredLieAlgebra
from .weights import decompose_sl2


@dataclass
class FilteredWeylResult:
    algebra: str
    la: int
    status: str                     # "fixpoint" | "cap"
    iterations: int
    layers: Decomposition           # associated graded by PBW degree
    weights: list = field(default_factory=list)
    actions: dict = field(default_factory=dict, repr=False)

    @property
    def total_dim(self) -> int:
        return self.layers.total_dim

    @property
    def certified(self) -> bool:
        return self.status == "fixpoint"

    @property
    def decomposition(self) -> dict[int, int]:
        wd: dict[int, int] = {}
        for w in self.weights:
            wd[w] = wd.get(w, 0) + 1
        return decompose_sl2(wd)

    def to_json(self) -> dict:
        dec = self.layers.to_json()
        return {"kind": "filtered", "algebra": self.algebra, "lambda": self.la,
                "components": dec["components"], "total_dim": dec["total_dim"],
                "sl2": {str(m): k for m, k in sorted(self.decomposition.items(), reverse=True)},
                "termination": {"rule": self.status, "iterations": self.iterations}}


def as_filtered(g, max_level: int) -> FilteredLieAlgebra:
    """A graded algebra seen as filtered: degree ``d`` becomes level ``d + 1``."""

    def basis(n):
        return [BasisElement(b.name, b.weight) for b in g.basis(n - 1)] if n >= 1 else []

    def bracket(x, y):
        return {(k[0] + 1, k[1]): c for k, c in g.bracket((x[0] - 1, x[1]), (y[0] - 1, y[1])).items()}

    sl2 = {k: (v[0] + 1, v[1]) for k, v in g.sl2.items()}
    return FilteredLieAlgebra(f"{g.name}/filtered", basis, bracket, sl2=sl2,
                              max_level=max_level, max_degree=g.max_degree + 1)


def generator_keys(g, G: int) -> list:
    return [k for lv in range(1, G + 1) for k in g.keys(lv)]


def generation_check(g, G: int, up_to: int) -> bool:
    """Brackets of generators of level ``<= G`` span ``F_up_to``."""
    gens = generator_keys(g, G)
    target = [k for lv in range(1, up_to + 1) for k in g.keys(lv)]
    pos = {k: i for i, k in enumerate(target)}
    ech = Echelon()
    frontier = []
    for k in gens:
        if k[0] <= up_to and ech.add({pos[k]: Fraction(1)}):
            frontier.append({k: Fraction(1)})
    while frontier and ech.rank < len(target):
        new = []
        for v in frontier:
            lv = max(k[0] for k in v)
            for x in gens:
                if lv + x[0] - 1 > up_to:
                    continue
                w = g.bracket_vec({x: Fraction(1)}, v)
                row = {pos[k]: c for k, c in w.items()}
                if ech.add(row):
                    new.append(w)
        frontier = new
    return ech.rank == len(target)


def compute_global_weyl_filtered(g, la: int, max_iterations: int = 50,
                                 G: int = 2) -> FilteredWeylResult:
    if la < 0:
        from .weyl import NonDominant
        raise NonDominant(f"lambda = {la} is not dominant")
    if g.graded:
        raise AlgebraError("expected a filtered algebra")
    if sorted(g.keys(1)) != sorted(g.sl2.values()):
        raise AlgebraError("level 1 must be exactly the sl2 triple")
    M = la
    gens = generator_keys(g, G)
    gen_deg = {x: pbw_degree(g, x) for x in gens}
    reach = max(abs(g.weight(x)) for x in gens)
    slack = 2 * (G - 1)
    for E in range(0, max_iterations + 1):
        ind = InducedModule(g, la, E)
        cols = []
        for d in range(E, -1, -1):
            for mj in ind.bases[d]:
                if abs(ind.weight_of(mj)) <= M + reach:
                    cols.append((d, mj))
        index = {mj: i for i, (d, mj) in enumerate(cols)}
        deg = [d for d, _ in cols]
        wt = [ind.weight_of(mj) for _, mj in cols]

        def vec_of(images: dict) -> dict:
            out = {}
            for mj, c in images.items():
                i = index.get(mj)
                if i is not None:
                    out[i] = out.get(i, 0) + c
            return {k: v for k, v in out.items() if v}

        col_cache: dict = {}

        def act(x, v: dict) -> dict:
            out: dict = {}
            for i, c in v.items():
                img = col_cache.get((x, i))
                if img is None:
                    img = col_cache[(x, i)] = vec_of(ind.apply_basis(x, cols[i][1]))
                axpy(out, c, img)
            return out

        K = Echelon()
        for i, w in enumerate(wt):
            if abs(w) > M:
                K.add({i: Fraction(1)})
        for i, w in enumerate(wt):
            if w in (M + 1, M + 2):
                v = {i: Fraction(1)}
                for _ in range((w + M) // 2):
                    v = act(g.f, v)
                    if not v:
                        break
                    K.add(v)
        # close under the generators, respecting the filtration
        while True:
            before = K.rank
            for r in list(K.rows()):
                dr = deg[min(r)]
                for x in gens:
                    if dr + gen_deg[x] <= E:
                        K.add(act(x, r))
            if K.rank == before:
                break
        survivors = K.nonpivots(len(cols))
        if not survivors:
            return FilteredWeylResult(g.name, la, "fixpoint", E, Decomposition({0: {}}))
        D = max(deg[c] for c in survivors)
        if E - D < slack:
            continue
        result = _check_module(g, la, E, D, cols, deg, wt, survivors, K, act, gens)
        if result is not None:
            return result
    return FilteredWeylResult(g.name, la, "cap", max_iterations, Decomposition({0: {}}))


def _check_module(g, la, E, D, cols, deg, wt, survivors, K, act, gens):
    pos = {c: n for n, c in enumerate(survivors)}

    def rho(x, n: int) -> dict:
        red = K.reduce(act(x, {survivors[n]: Fraction(1)}))
        return {pos[c]: v for c, v in red.items()}

    n = len(survivors)
    cache: dict = {}

    def mat(x):
        if x not in cache:
            cache[x] = [rho(x, i) for i in range(n)]
        return cache[x]

    def apply(x, v):
        out: dict = {}
        for i, c in v.items():
            axpy(out, c, mat(x)[i])
        return out

    for a_i, x in enumerate(gens):
        for y in gens[a_i + 1:]:
            br = g.bracket(x, y)
            for i in range(n):
                u = {i: Fraction(1)}
                lhs = apply(x, apply(y, u))
                axpy(lhs, -1, apply(y, apply(x, u)))
                for z, c in br.items():
                    axpy(lhs, -c, apply(z, u))
                if lhs:
                    return None
    layers: dict[int, dict] = {}
    for c in survivors:
        layers.setdefault(deg[c], {})
        layers[deg[c]][wt[c]] = layers[deg[c]].get(wt[c], 0) + 1
    dec = Decomposition({d: decompose_sl2(layers.get(d, {})) for d in range(0, D + 1)})
    actions = {x: mat(x) for x in gens}
    return FilteredWeylResult(g.name, la, "fixpoint", E, dec, [wt[c] for c in survivors], actions)
