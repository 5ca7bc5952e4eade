"""Graded Lie algebras containing sl2 in degree zero.

A basis element is addressed by a key ``(degree, index)``.  Brackets are
sparse dicts ``{key: Fraction}``.  The same interface serves filtered
algebras, where the first key entry is the filtration level of the element
and brackets may land in several levels.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .linalg import axpy, format_rational, parse_rational
from .weights import decompose_sl2

Key = tuple


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class BasisElement:
    name: str
    weight: int


class GradedLieAlgebra:
    """Lie algebra with finite-dimensional graded pieces and a bracket oracle.

    ``basis_fn(d)`` returns the ordered basis of the degree-``d`` piece and
    ``bracket_fn(a, b)`` the bracket of two keys.  Brackets are memoized.
    """

    graded = True

    def __init__(self, name: str, basis_fn: Callable[[int], list], bracket_fn: Callable,
                 sl2: dict, max_degree: float = math.inf,
                 hw_floor: Callable[[int], int] | None = None):
        self.name = name
        self.rank = 1
        self._basis_fn = basis_fn
        self._bracket_fn = bracket_fn
        self.sl2 = dict(sl2)
        self.max_degree = max_degree
        self._hw_floor = hw_floor
        self._basis_cache: dict[int, list[BasisElement]] = {}
        self._bracket_cache: dict = {}

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"

    @property
    def e(self) -> Key:
        return self.sl2["e"]

    @property
    def f(self) -> Key:
        return self.sl2["f"]

    @property
    def h(self) -> Key:
        return self.sl2["h"]

    def basis(self, d: int) -> list[BasisElement]:
        if d < 0 or d > self.max_degree:
            return []
        b = self._basis_cache.get(d)
        if b is None:
            b = self._basis_cache[d] = list(self._basis_fn(d))
        return b

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def keys(self, d: int) -> list[Key]:
        return [(d, k) for k in range(self.dim(d))]

    def weight(self, key: Key) -> int:
        return self.basis(key[0])[key[1]].weight

    def name_of(self, key: Key) -> str:
        return self.basis(key[0])[key[1]].name

    def bracket(self, a: Key, b: Key) -> dict:
        ck = (a, b)
        r = self._bracket_cache.get(ck)
        if r is None:
            r = {k: Fraction(v) for k, v in self._bracket_fn(a, b).items() if v}
            self._bracket_cache[ck] = r
        return r

    def bracket_vec(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for a, x in u.items():
            for b, y in v.items():
                axpy(out, x * y, self.bracket(a, b))
        return out

    def hw_floor(self, d: int) -> int | None:
        """Lower bound on the highest weights occurring in degree ``d``."""
        return self._hw_floor(d) if self._hw_floor else None

    def weight_dims(self, d: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for b in self.basis(d):
            out[b.weight] = out.get(b.weight, 0) + 1
        return out

    def decompose(self, d: int) -> dict[int, int]:
        """sl2 isotypic multiplicities of the degree-``d`` piece."""
        return decompose_sl2(self.weight_dims(d))

    def weight_zero_keys(self, d: int) -> list[Key]:
        return [(d, k) for k, b in enumerate(self.basis(d)) if b.weight == 0]


# ---------------------------------------------------------------------------
# L_0(H_2): Hamiltonians x^{a+1} y^{b+1}, a, b >= -1, a + b >= 0.

# degree-0 basis is rescaled so that it is literally the sl2 triple
_H2_SCALE = {(1, -1): Fraction(1, 2), (0, 0): Fraction(-1), (-1, 1): Fraction(-1, 2)}
_H2_NAMES0 = {(1, -1): "e", (0, 0): "h", (-1, 1): "f"}


def h2_exponents(d: int) -> list[tuple[int, int]]:
    """Index pairs ``(a, b)`` of the degree-``d`` basis, weight descending."""
    return [(a, d - a) for a in range(d + 1, -2, -1)]


def _h2_basis(d):
    out = []
    for a, b in h2_exponents(d):
        name = _H2_NAMES0.get((a, b)) if d == 0 else None
        out.append(BasisElement(name or f"e[{a},{b}]", a - b))
    return out


def _h2_bracket(p, q):
    (d1, k1), (d2, k2) = p, q
    a, b = h2_exponents(d1)[k1]
    c, e = h2_exponents(d2)[k2]
    coeff = (a + 1) * (e + 1) - (b + 1) * (c + 1)
    ra, rb = a + c, b + e
    if coeff == 0 or ra < -1 or rb < -1:
        return {}
    s = _H2_SCALE.get((a, b), 1) * _H2_SCALE.get((c, e), 1) / _H2_SCALE.get((ra, rb), 1)
    d = ra + rb
    return {(d, h2_exponents(d).index((ra, rb))): coeff * Fraction(s)}


def build_h2() -> GradedLieAlgebra:
    """L_0(H_2) with degree-``i`` piece isomorphic to L(i+2)."""
    return GradedLieAlgebra(
        "h2", _h2_basis, _h2_bracket,
        sl2={"e": (0, 0), "h": (0, 1), "f": (0, 2)},
        hw_floor=lambda d: d + 2,
    )


def h2_polynomial(key: Key) -> dict:
    """The Hamiltonian polynomial of a basis element as ``{(i, j): coeff}``."""
    d, k = key
    a, b = h2_exponents(d)[k]
    return {(a + 1, b + 1): Fraction(_H2_SCALE.get((a, b), 1))}


def poisson_bracket(f: dict, g: dict) -> dict:
    """``f_x g_y - f_y g_x`` for polynomials ``{(i, j): coeff}``."""
    out: dict = {}
    for (i1, j1), c1 in f.items():
        for (i2, j2), c2 in g.items():
            c = c1 * c2 * (i1 * j2 - j1 * i2)
            if c:
                axpy(out, 1, {(i1 + i2 - 1, j1 + j2 - 1): c})
    return out


def sigma_h2(g: GradedLieAlgebra):
    """The automorphism induced by ``(x, y) -> (y, -x)``, as a key map."""

    def sigma(key: Key) -> dict:
        d, k = key
        a, b = h2_exponents(d)[k]
        # on Hamiltonians: x^{a+1} y^{b+1} -> (-1)^{b+1} x^{b+1} y^{a+1}
        c = Fraction((-1) ** (b + 1)) * _H2_SCALE.get((a, b), 1) / _H2_SCALE.get((b, a), 1)
        return {(d, h2_exponents(d).index((b, a))): c}

    return sigma


def apply_map(phi: Callable, v: dict) -> dict:
    out: dict = {}
    for k, x in v.items():
        axpy(out, x, phi(k))
    return out


# ---------------------------------------------------------------------------
# L_0(W_2): vector fields x^a y^b d_x, x^a y^b d_y with a + b = d + 1.
# Fields are dicts {(i, j, var): coeff}, var 0 for d_x and 1 for d_y.

def _w2_monomials(d):
    out = []
    for a in range(d + 1, -1, -1):
        b = d + 1 - a
        out.append((a, b, 0))
        out.append((a, b, 1))
    # weight of x^a y^b d_x is a - b - 1, of x^a y^b d_y is a - b + 1
    out.sort(key=lambda t: -(t[0] - t[1] + (1 if t[2] else -1)))
    return out


# degree 0: e = x d_y, h = x d_x - y d_y, Euler = x d_x + y d_y, f = y d_x
_W2_DEG0 = [
    ("e", {(1, 0, 1): Fraction(1)}, 2),
    ("h", {(1, 0, 0): Fraction(1), (0, 1, 1): Fraction(-1)}, 0),
    ("E", {(1, 0, 0): Fraction(1), (0, 1, 1): Fraction(1)}, 0),
    ("f", {(0, 1, 0): Fraction(1)}, -2),
]


def _w2_field(key):
    d, k = key
    if d == 0:
        return _W2_DEG0[k][1]
    return {_w2_monomials(d)[k]: Fraction(1)}


def vector_field_bracket(X: dict, Y: dict) -> dict:
    """Lie bracket of polynomial vector fields."""
    out: dict = {}
    # [X, Y] = X(Y^k) d_k - Y(X^k) d_k
    for (i1, j1, v1), c1 in X.items():
        for (i2, j2, v2), c2 in Y.items():
            # X-term x^i1 y^j1 d_{v1} applied to coefficient x^i2 y^j2 of d_{v2}
            if v1 == 0 and i2:
                axpy(out, 1, {(i1 + i2 - 1, j1 + j2, v2): c1 * c2 * i2})
            if v1 == 1 and j2:
                axpy(out, 1, {(i1 + i2, j1 + j2 - 1, v2): c1 * c2 * j2})
            if v2 == 0 and i1:
                axpy(out, 1, {(i1 + i2 - 1, j1 + j2, v1): -c1 * c2 * i1})
            if v2 == 1 and j1:
                axpy(out, 1, {(i1 + i2, j1 + j2 - 1, v1): -c1 * c2 * j1})
    return out


def _w2_express(field: dict) -> dict:
    """Coordinates of a homogeneous vector field in the L_0(W_2) basis."""
    if not field:
        return {}
    i, j, _ = next(iter(field))
    d = i + j - 1
    if d == 0:
        a = field.get((1, 0, 0), 0)
        dd = field.get((0, 1, 1), 0)
        out = {(0, 0): field.get((1, 0, 1), 0), (0, 3): field.get((0, 1, 0), 0),
               (0, 1): Fraction(a - dd) / 2, (0, 2): Fraction(a + dd) / 2}
        return {k: Fraction(v) for k, v in out.items() if v}
    mons = _w2_monomials(d)
    return {(d, mons.index(m)): c for m, c in field.items()}


def _w2_basis(d):
    if d == 0:
        return [BasisElement(n, w) for n, _, w in _W2_DEG0]
    out = []
    for a, b, v in _w2_monomials(d):
        w = a - b + (1 if v else -1)
        out.append(BasisElement(f"x^{a}y^{b}d{'y' if v else 'x'}", w))
    return out


def build_l0w2() -> GradedLieAlgebra:
    """Vector fields vanishing at the origin; contains the Euler field."""
    return GradedLieAlgebra(
        "l0w2", _w2_basis,
        lambda a, b: _w2_express(vector_field_bracket(_w2_field(a), _w2_field(b))),
        sl2={"e": (0, 0), "h": (0, 1), "f": (0, 3)},
        hw_floor=lambda d: d,
    )


_SL2_TABLE = {
    ((0, 1), (0, 0)): {(0, 0): 2},
    ((0, 1), (0, 2)): {(0, 2): -2},
    ((0, 0), (0, 2)): {(0, 1): 1},
}


def _sl2_bracket(a, b):
    if (a, b) in _SL2_TABLE:
        return _SL2_TABLE[(a, b)]
    if (b, a) in _SL2_TABLE:
        return {k: -v for k, v in _SL2_TABLE[(b, a)].items()}
    return {}


def build_sl2() -> GradedLieAlgebra:
    """sl2 alone, concentrated in degree 0 (no positive part)."""
    basis = [BasisElement("e", 2), BasisElement("h", 0), BasisElement("f", -2)]
    return GradedLieAlgebra("sl2", lambda d: basis if d == 0 else [], _sl2_bracket,
                            sl2={"e": (0, 0), "h": (0, 1), "f": (0, 2)}, max_degree=0)


# ---------------------------------------------------------------------------
# algebras from files


def algebra_from_dict(data: dict, name: str = "file", validate_degree: bool = True) -> GradedLieAlgebra:
    try:
        rank = data.get("rank", 1)
        if rank != 1:
            raise AlgebraError("only rank 1 algebras are supported")
        comps = {}
        for comp in data["components"]:
            d = int(comp["degree"])
            if d < 0:
                raise AlgebraError("negative degree")
            if d in comps:
                raise AlgebraError(f"degree {d} listed twice")
            basis = []
            for b in comp["basis"]:
                w = b["weight"]
                w = w[0] if isinstance(w, list) else w
                basis.append(BasisElement(str(b["name"]), int(w)))
            comps[d] = basis
        top = max(comps) if comps else 0
        table: dict = {}
        for br in data.get("brackets", []):
            left = tuple(int(x) for x in br["left"])
            right = tuple(int(x) for x in br["right"])
            val = {}
            for d, k, c in br["value"]:
                c = parse_rational(c)
                if c:
                    val[(int(d), int(k))] = val.get((int(d), int(k)), 0) + c
            for key in (left, right, *val):
                if key[0] not in comps or not 0 <= key[1] < len(comps[key[0]]):
                    raise AlgebraError(f"bracket references unknown element {list(key)}")
            if right in table.get(left, {}) or left in table.get(right, {}):
                raise AlgebraError(f"bracket {list(left)},{list(right)} given twice")
            table.setdefault(left, {})[right] = val
        sl2 = {k: tuple(int(x) for x in data["sl2"][k]) for k in ("e", "f", "h")}
    except (KeyError, TypeError, IndexError) as exc:
        raise AlgebraError(f"malformed algebra description: {exc!r}") from exc
    except ValueError as exc:
        if isinstance(exc, AlgebraError):
            raise
        raise AlgebraError(f"malformed algebra description: {exc}") from exc

    for k in sl2.values():
        if k[0] != 0 or not 0 <= k[1] < len(comps.get(0, [])):
            raise AlgebraError("sl2 triple must lie in degree 0")

    def bracket(a, b):
        if a in table and b in table[a]:
            return table[a][b]
        if b in table and a in table[b]:
            return {k: -v for k, v in table[b][a].items()}
        return {}

    g = GradedLieAlgebra(name, lambda d: comps.get(d, []), bracket, sl2=sl2, max_degree=top)
    if validate_degree:
        report = validate(g, top)
        if report.violations:
            raise AlgebraError("validation failed: " + "; ".join(report.violations[:5]))
    return g


def build_from_file(path) -> GradedLieAlgebra:
    p = Path(path)
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"cannot parse {p}: {exc}") from exc
    return algebra_from_dict(data, name=p.stem)


def algebra_to_dict(g: GradedLieAlgebra, max_degree: int) -> dict:
    """Serialize the first ``max_degree`` pieces in the file format."""
    comps = []
    for d in range(max_degree + 1):
        comps.append({"degree": d, "basis": [{"name": b.name, "weight": [b.weight]}
                                             for b in g.basis(d)]})
    brackets = []
    keys = [k for d in range(max_degree + 1) for k in g.keys(d)]
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            if a[0] + b[0] > max_degree:
                continue
            v = g.bracket(a, b)
            if v:
                brackets.append({"left": list(a), "right": list(b),
                                 "value": [[k[0], k[1], format_rational(c)]
                                           for k, c in sorted(v.items())]})
    return {"rank": 1, "components": comps, "brackets": brackets,
            "sl2": {k: list(v) for k, v in g.sl2.items()}}


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    max_degree: int
    checked_triples: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _served_keys(g, max_degree):
    return [k for d in range(0, max_degree + 1) for k in g.keys(d)]


def validate(g, max_degree: int) -> ValidationReport:
    """Check antisymmetry, Jacobi, weight additivity, ad(h) and the sl2 triple."""
    rep = ValidationReport(max_degree)
    v = rep.violations
    e, f, h = g.e, g.f, g.h

    def nm(k):
        return f"{g.name_of(k)}{list(k)}"

    def check_rel(lhs, rhs, label):
        if lhs != {k: Fraction(c) for k, c in rhs.items() if c}:
            v.append(f"sl2 relation {label} violated")

    check_rel(g.bracket(h, e), {e: 2}, "[h,e]=2e")
    check_rel(g.bracket(h, f), {f: -2}, "[h,f]=-2f")
    check_rel(g.bracket(e, f), {h: 1}, "[e,f]=h")

    level_offset = 0 if g.graded else 1
    keys = _served_keys(g, max_degree) if g.graded else [
        k for lv in range(1, max_degree + 1) for k in g.keys(lv)]

    def lv(k):
        return k[0] - level_offset

    for a in keys:
        ha = g.bracket(h, a)
        wa = g.weight(a)
        if ha != ({a: Fraction(wa)} if wa else {}):
            v.append(f"ad(h) not diagonal with declared weight on {nm(a)}")

    for i, a in enumerate(keys):
        for b in keys[i:]:
            if lv(a) + lv(b) > max_degree:
                continue
            ab, ba = g.bracket(a, b), g.bracket(b, a)
            if a == b and ab:
                v.append(f"[x,x] != 0 for {nm(a)}")
            if {k: -c for k, c in ba.items()} != ab:
                v.append(f"antisymmetry fails for ({nm(a)}, {nm(b)})")
            w = g.weight(a) + g.weight(b)
            for k in ab:
                if g.weight(k) != w:
                    v.append(f"weight additivity fails for ({nm(a)}, {nm(b)})")
                    break
                if g.graded and k[0] != a[0] + b[0]:
                    v.append(f"degree additivity fails for ({nm(a)}, {nm(b)})")
                    break

    for a, b, c in itertools.combinations(keys, 3):
        if lv(a) + lv(b) + lv(c) > max_degree:
            continue
        rep.checked_triples += 1
        tot: dict = {}
        axpy(tot, 1, g.bracket_vec({a: 1}, g.bracket(b, c)))
        axpy(tot, 1, g.bracket_vec({b: 1}, g.bracket(c, a)))
        axpy(tot, 1, g.bracket_vec({c: 1}, g.bracket(a, b)))
        if tot:
            v.append(f"Jacobi fails for ({nm(a)}, {nm(b)}, {nm(c)})")
    return rep


def ad_nilpotency(g, d: int, key: Key) -> int | None:
    """Smallest ``n`` with ad(key)^n = 0 on the degree-``d`` piece (sl2 keys only)."""
    vecs = [{k: Fraction(1)} for k in g.keys(d)]
    bound = 2 * max((abs(b.weight) for b in g.basis(d)), default=0) + 1
    for n in range(0, bound + 2):
        if not any(vecs):
            return n
        vecs = [g.bracket_vec({key: 1}, x) for x in vecs]
    return None


@dataclass
class ThinReport:
    max_degree: int
    per_degree: dict
    cumulative: dict
    thin: bool

    def lines(self) -> list[str]:
        from .report import render_mults
        out = [f"degree {d}: {render_mults(m)}" for d, m in sorted(self.per_degree.items())]
        mults = ", ".join(f"L({m}) x{k}" for m, k in sorted(self.cumulative.items()))
        out.append(f"cumulative: {mults}")
        out.append(("thin" if self.thin else "not thin") + f" up to degree {self.max_degree}")
        out.append("note: finiteness of all multiplicities is not decidable from a finite prefix")
        return out


def check_thin(g: GradedLieAlgebra, max_degree: int) -> ThinReport:
    """L(0) multiplicities of each graded piece, with running totals.

    The sl2 triple itself is excluded from the degree-0 count of the
    centralizer condition only through its own L(2).
    """
    per = {}
    cum: dict[int, int] = {}
    thin = True
    for d in range(0, int(min(max_degree, g.max_degree)) + 1):
        m = g.decompose(d)
        per[d] = m
        if m.get(0):
            thin = False
        for w, k in m.items():
            cum[w] = cum.get(w, 0) + k
    return ThinReport(max_degree, per, cum, thin)
