"""The algebra A_la = W(la)_la, restriction to it, the Weyl functor and socles."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Echelon, axpy, sparse_kernel
from .rep import Decomposition, GradedWeightedModule, key_degree
from .weights import decompose_sl2


class SurjectivityError(RuntimeError):
    """Words in h-bar did not span a weight slice of W(la)."""


class PreconditionError(ValueError):
    pass


def _apply_word(V: GradedWeightedModule, word: tuple, d: int, vec: dict) -> tuple[int, dict]:
    """``x_1 (x_2 (... x_k vec))`` for a word ``(x_1, ..., x_k)``."""
    for x in reversed(word):
        vec = V.apply(x, d, vec)
        d += key_degree(V.algebra, x)
        if not vec:
            break
    return d, vec


def hbar_keys(g, top: int) -> list:
    return [k for i in range(1, top + 1) for k in g.weight_zero_keys(i)]


@dataclass
class EndomorphismAlgebra:
    la: int
    basis: list                    # (degree, index in W_(degree))
    degrees: list
    representatives: list          # {word: coeff}
    words: list                    # spanning words picked in each degree
    mult: dict = field(repr=False)  # (i, j) -> {k: c}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def graded_dims(self) -> list[int]:
        top = max(self.degrees, default=0)
        out = [0] * (top + 1)
        for d in self.degrees:
            out[d] += 1
        return out

    def product(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, x in u.items():
            for j, y in v.items():
                axpy(out, x * y, self.mult.get((i, j), {}))
        return out

    def is_associative(self) -> bool:
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = self.mult.get((i, j), {})
                for k in range(n):
                    lhs = self.product(ij, {k: 1})
                    rhs = self.product({i: 1}, self.mult.get((j, k), {}))
                    if lhs != rhs:
                        return False
        return True

    def is_unital(self) -> bool:
        return all(self.mult.get((0, j)) == {j: 1} and self.mult.get((j, 0)) == {j: 1}
                   for j in range(self.dim))

    def nilpotency_order(self) -> int:
        """Smallest ``k`` with ``A_+^k = 0``."""
        pos = [i for i, d in enumerate(self.degrees) if d > 0]
        span = [{i: Fraction(1)} for i in pos]
        k = 1
        while span:
            ech = Echelon()
            for u in span:
                for p in pos:
                    ech.add(self.product(u, {p: 1}))
            span = ech.rows()
            k += 1
        return k

    def structure_json(self) -> dict:
        from .linalg import format_rational
        return {
            "lambda": self.la,
            "graded_dims": self.graded_dims(),
            "basis": [{"degree": d, "index": s} for d, s in self.basis],
            "representatives": [[{"word": [list(k) for k in w], "coeff": format_rational(c)}
                                 for w, c in rep.items()] for rep in self.representatives],
            "products": [{"left": i, "right": j,
                          "value": {str(k): format_rational(c) for k, c in v.items()}}
                         for (i, j), v in sorted(self.mult.items()) if v],
        }


def compute_A_lambda(g, la: int, weyl) -> EndomorphismAlgebra:
    """Basis, word representatives and structure constants of ``A_la``."""
    if weyl.kind != "global" or not weyl.certified:
        raise PreconditionError("A_lambda needs a certified global Weyl module")
    W = weyl.module
    top = weyl.top_degree
    hb = hbar_keys(g, top)
    # lexicographic order on words uses the fixed order of h-bar keys
    basis, degrees, reps, chosen = [], [], [], []
    images: dict = {(): (0, {0: Fraction(1)})}
    words_by_degree: dict[int, list[tuple]] = {0: [()]}
    for d in range(0, top + 1):
        if d > 0:
            ws = []
            for x in hb:
                i = x[0]
                for w in words_by_degree.get(d - i, []):
                    ws.append((x,) + w)
            ws.sort(key=lambda w: [(k[0], k[1]) for k in w])
            words_by_degree[d] = ws
        slice_idx = W.slice(d, la)
        if not slice_idx:
            continue
        pos = {s: n for n, s in enumerate(slice_idx)}
        target = len(slice_idx)
        span = Echelon()
        sel: list[tuple] = []
        sel_rows = []
        for w in words_by_degree[d]:
            if w not in images:
                d0, prev = images[w[1:]]
                images[w] = (d, W.apply(w[0], d0, prev) if prev else {})
            row = {pos[s]: x for s, x in images[w][1].items()}
            if span.add(row):
                sel.append(w)
                sel_rows.append(row)
                if span.rank == target:
                    break
        if span.rank < target:
            raise SurjectivityError(f"words of degree {d} do not span W({la})_{la}")
        # invert: RREF of [image | marker] has rows e_p + sum_j c_j marker_j
        aug = Echelon()
        for j, row in enumerate(sel_rows):
            r = dict(row)
            r[target + j] = Fraction(1)
            aug.add(r)
        chosen.extend(sel)
        for r in aug.rows():
            p = min(r)
            basis.append((d, slice_idx[p]))
            degrees.append(d)
            reps.append({sel[c - target]: x for c, x in r.items() if c >= target})
    index = {b: n for n, b in enumerate(basis)}
    mult = {}
    for i, rep in enumerate(reps):
        for j, (dj, sj) in enumerate(basis):
            out: dict = {}
            for w, c in rep.items():
                dd, vec = _apply_word(W, w, dj, {sj: Fraction(1)})
                for s, x in vec.items():
                    axpy(out, c * x, {index[(dd, s)]: 1})
            if out:
                mult[(i, j)] = out
    return EndomorphismAlgebra(la, basis, degrees, reps, chosen, mult)


# ---------------------------------------------------------------------------
# graded A-modules


@dataclass
class AModule:
    """Graded left module over ``A``: ``act[(i, k)]`` is the matrix of ``a_i`` on ``M_k``."""

    A: EndomorphismAlgebra
    dims: dict
    act: dict = field(repr=False)

    def apply(self, i: int, k: int, vec: dict) -> tuple[int, dict]:
        cols = self.act.get((i, k))
        tgt = k + self.A.degrees[i]
        out: dict = {}
        if cols is not None:
            for t, x in vec.items():
                axpy(out, x, cols[t])
        return tgt, out

    def graded_dims(self) -> dict[int, int]:
        return {k: n for k, n in sorted(self.dims.items()) if n}

    def check(self) -> None:
        """Unit acts by 1 and ``a_i (a_j m) = (a_i a_j) m``."""
        A = self.A
        for k, n in self.dims.items():
            for t in range(n):
                if self.apply(0, k, {t: Fraction(1)})[1] != {t: 1}:
                    raise PreconditionError("unit does not act as the identity")
                for j in range(A.dim):
                    kj, mj = self.apply(j, k, {t: Fraction(1)})
                    for i in range(A.dim):
                        _, lhs = self.apply(i, kj, mj)
                        rhs: dict = {}
                        for c, x in A.mult.get((i, j), {}).items():
                            axpy(rhs, x, self.apply(c, k, {t: Fraction(1)})[1])
                        if lhs != rhs:
                            raise PreconditionError(f"action of a_{i} a_{j} is not associative")


def regular_module(A: EndomorphismAlgebra, shift: int = 0) -> AModule:
    pos: dict = {}
    dims: dict = {}
    for n, d in enumerate(A.degrees):
        pos[n] = dims.get(d + shift, 0)
        dims[d + shift] = pos[n] + 1
    act = {}
    for i in range(A.dim):
        for k in dims:
            cols = []
            for j in range(A.dim):
                if A.degrees[j] + shift != k:
                    continue
                cols.append({pos[c]: x for c, x in A.mult.get((i, j), {}).items()})
            act[(i, k)] = cols
    return AModule(A, dims, act)


def trivial_module(A: EndomorphismAlgebra, shift: int = 0) -> AModule:
    """``C_la[shift]``: positive degrees act by zero."""
    act = {(0, shift): [{0: Fraction(1)}]}
    return AModule(A, {shift: 1}, act)


def restriction_R_lambda(V: GradedWeightedModule, la: int, A: EndomorphismAlgebra) -> AModule:
    """Weight-``la`` slices of ``V`` with ``A`` acting through word representatives."""
    for d in V.degrees():
        if any(m > la for m in decompose_sl2(V.weight_dims(d))):
            raise PreconditionError(f"degree {d} has a highest weight above {la}")
    slices = {d: V.slice(d, la) for d in V.degrees()}
    pos = {d: {s: n for n, s in enumerate(sl)} for d, sl in slices.items()}
    dims = {d: len(sl) for d, sl in slices.items()}
    act = {}
    for i, rep in enumerate(A.representatives):
        for d, sl in slices.items():
            cols = []
            for s in sl:
                out: dict = {}
                for w, c in rep.items():
                    dd, vec = _apply_word(V, w, d, {s: Fraction(1)})
                    for t, x in vec.items():
                        axpy(out, c * x, {pos[dd][t]: 1})
                cols.append(out)
            act[(i, d)] = cols
    return AModule(A, dims, act)


# ---------------------------------------------------------------------------
# right action of A on W(la) and the Weyl functor


class RightAction:
    """``phi_a(u v_la) = u a v_la`` on the basis of ``W(la)``."""

    def __init__(self, weyl, A: EndomorphismAlgebra):
        self.weyl = weyl
        self.A = A
        self.W = weyl.module
        self._cache: dict = {}

    def apply(self, a: int, d: int, wk: int) -> dict:
        ck = (a, d, wk)
        r = self._cache.get(ck)
        if r is not None:
            return r
        W = self.W
        g = W.algebra
        da, sa = self.A.basis[a]
        if d == 0:
            # v_k = f^k v_la
            vec = {sa: Fraction(1)}
            dd = da
            for _ in range(wk):
                vec = W.apply(g.f, dd, vec)
            r = vec
        else:
            lev = self.weyl.levels[d]
            x, wj = lev.cands[lev.basis_cols[wk]]
            d0 = d - x[0]
            r = W.apply(x, d0 + da, self.apply_vec(a, d0, {wj: Fraction(1)}))
        self._cache[ck] = r
        return r

    def apply_vec(self, a: int, d: int, vec: dict) -> dict:
        out: dict = {}
        for k, x in vec.items():
            axpy(out, x, self.apply(a, d, k))
        return out


def weyl_functor_apply(weyl, A: EndomorphismAlgebra, M: AModule,
                       phi: RightAction | None = None) -> Decomposition:
    """Per-degree decomposition of ``W(la) (x)_A M``."""
    M.check()
    phi = phi or RightAction(weyl, A)
    W = weyl.module
    wdeg = [d for d in W.degrees() if W.dim(d)]
    mdeg = [k for k, n in M.dims.items() if n]
    totals = sorted({d + k for d in wdeg for k in mdeg})
    comps = {}
    for n in totals:
        wdims: dict[int, int] = {}
        weights = sorted({w for d in wdeg if 0 <= n - d for w in W.weights(d)}, reverse=True)
        for mu in weights:
            cols = {}
            for d in wdeg:
                k = n - d
                if k not in M.dims:
                    continue
                for s in W.slice(d, mu):
                    for t in range(M.dims[k]):
                        cols[(d, s, k, t)] = len(cols)
            if not cols:
                continue
            ech = Echelon()
            for d in wdeg:
                for s in W.slice(d, mu):
                    for a in range(A.dim):
                        p = A.degrees[a]
                        k = n - d - p
                        if k not in M.dims:
                            continue
                        img = phi.apply(a, d, s)
                        for t in range(M.dims[k]):
                            rel: dict = {}
                            for s2, x in img.items():
                                axpy(rel, x, {cols[(d + p, s2, k, t)]: 1})
                            kk, mv = M.apply(a, k, {t: Fraction(1)})
                            for t2, x in mv.items():
                                axpy(rel, -x, {cols[(d, s, kk, t2)]: 1})
                            if rel:
                                ech.add(rel)
            dim = len(cols) - ech.rank
            if dim:
                wdims[mu] = dim
        comps[n] = decompose_sl2(wdims)
    return Decomposition(comps)


# ---------------------------------------------------------------------------
# socles, intertwiners and freeness


def compute_socle(V: GradedWeightedModule) -> Decomposition:
    """Common kernel of all positive-degree basis elements, decomposed over sl2."""
    g = V.algebra
    degs = V.degrees()
    top = max(degs, default=0)
    comps = {}
    for d in degs:
        keys = [k for i in range(1, top - d + 1) for k in g.keys(i)]
        wdims: dict[int, int] = {}
        for mu in sorted(set(V.weights(d)), reverse=True):
            sl = V.slice(d, mu)
            columns = []
            for s in sl:
                col: dict = {}
                base = 0
                for k in keys:
                    for t, x in V.apply(k, d, {s: Fraction(1)}).items():
                        col[base + t] = x
                    base += V.dim(d + k[0])
                columns.append(col)
            ker = sparse_kernel(columns, len(sl))
            if ker:
                wdims[mu] = len(ker)
        comps[d] = decompose_sl2(wdims)
    return Decomposition(comps)


def hom_dim(V: GradedWeightedModule, U: GradedWeightedModule) -> dict[int, int]:
    """Dimensions of ``Hom_g(V, U)`` by degree shift."""
    g = V.algebra
    vdeg = [d for d in V.degrees() if V.dim(d)]
    udeg = [d for d in U.degrees() if U.dim(d)]
    top = max(udeg, default=0)
    gens = [g.e, g.f] + [k for i in range(1, top - min(vdeg, default=0) + 1) for k in g.keys(i)]
    out = {}
    for s in sorted({b - a for a in vdeg for b in udeg}):
        var = {}
        for d in vdeg:
            for mu in set(V.weights(d)):
                for a in V.slice(d, mu):
                    for b in U.slice(d + s, mu):
                        var[(d, a, b)] = len(var)
        if not var:
            continue
        ech = Echelon()
        for x in gens:
            i = key_degree(g, x)
            for d in vdeg:
                for a in range(V.dim(d)):
                    # phi(x v_a) - x phi(v_a) = 0 in U_(d+i+s), one equation per coordinate
                    rows: dict = {}
                    for c, y in V.apply(x, d, {a: Fraction(1)}).items():
                        for b in U.slice(d + i + s, V.weights(d + i)[c]):
                            axpy(rows.setdefault(b, {}), y, {var[(d + i, c, b)]: 1})
                    for b in U.slice(d + s, V.weights(d)[a]):
                        n = var[(d, a, b)]
                        for t, y in U.apply(x, d + s, {b: Fraction(1)}).items():
                            axpy(rows.setdefault(t, {}), -y, {n: 1})
                    for r in rows.values():
                        if r:
                            ech.add(r)
        dim = len(var) - ech.rank
        if dim:
            out[s] = dim
    return out


def _divide(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Power series division truncated at ``len(num)``; returns quotient and remainder."""
    q = [0] * len(num)
    r = list(num)
    for k in range(len(num)):
        c = r[k] // den[0] if den[0] else 0
        q[k] = c
        for j, x in enumerate(den):
            if k + j < len(r):
                r[k + j] -= c * x
    return q, r


def freeness_report(weyl, A: EndomorphismAlgebra) -> dict:
    """Compare weight-slice Hilbert series of ``W(la)`` with multiples of that of ``A``.

    A free graded right ``A``-module has every weight series equal to
    ``G(t) H_A(t)`` with ``G`` having nonnegative coefficients.
    """
    W = weyl.module
    ha = A.graded_dims()
    top = max(W.degrees())
    per_weight = {}
    free = True
    for mu in sorted({w for d in W.degrees() for w in W.weights(d)}, reverse=True):
        series = [len(W.slice(d, mu)) for d in range(top + 1)]
        q, r = _divide(series, ha)
        # remainder must vanish and the generating series be nonnegative,
        # also past the top degree where W has nothing left
        tail = [sum(q[max(0, k - j)] * ha[j] for j in range(len(ha)) if 0 <= k - j < len(q))
                for k in range(top + 1, top + len(ha))]
        ok = all(x == 0 for x in r) and all(x >= 0 for x in q) and not any(tail)
        per_weight[mu] = {"series": series, "quotient": q, "ok": ok}
        free = free and ok
    total = weyl.total_dim
    return {
        "lambda": A.la,
        "dim_W": total,
        "dim_A": A.dim,
        "divisible": total % A.dim == 0,
        "free": free,
        "per_weight": per_weight,
    }
