"""gl(la) = U(sl2)/(Casimir - c) and sl(la) = gl(la)/C1 by normal forms.

Normal monomials are ``f^a h^b e^c`` with ``a`` and ``c`` not both positive.
Internally an element is a dict ``{(a, c): poly}`` where ``poly`` is a tuple
of coefficients of a polynomial in ``h``.  Level ``N`` of the filtration is
spanned by the monomials of total degree ``N``; a key ``(N, i)`` addresses the
level-``N`` monomial of weight ``2N - 2i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lie import BasisElement, GradedLieAlgebra
from .linalg import parse_rational

# -- polynomials in h -----------------------------------------------------------


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def padd(p, q, s=1):
    n = max(len(p), len(q))
    return _trim((p[i] if i < len(p) else 0) + s * (q[i] if i < len(q) else 0) for i in range(n))


def pmul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return _trim(out)


@lru_cache(maxsize=None)
def _binomial_row(n):
    return [math.comb(n, k) for k in range(n + 1)]


def pshift(p, s):
    """``P(h + s)``."""
    out = [Fraction(0)] * len(p)
    for n, x in enumerate(p):
        if x:
            row = _binomial_row(n)
            for k in range(n + 1):
                out[k] += x * row[k] * Fraction(s) ** (n - k)
    return _trim(out)


@dataclass(frozen=True)
class SlLambdaParams:
    la: Fraction

    def __init__(self, la):
        object.__setattr__(self, "la", parse_rational(la) if isinstance(la, str) else Fraction(la))

    @property
    def casimir(self) -> Fraction:
        return (self.la ** 2 - 1) / 2


# -- normal form algebra ------------------------------------------------------------


class GlLambda:
    """Multiplication of normal forms in ``U(sl2)/(Casimir - c)``."""

    def __init__(self, params: SlLambdaParams):
        self.params = params
        c = params.casimir
        # f e = (c - h - h^2/2)/2
        self.fe = (c / 2, Fraction(-1, 2), Fraction(-1, 4))
        self._ecf: dict = {}

    def add_term(self, out: dict, a: int, p: tuple, c: int, s=1) -> None:
        """Add ``s f^a P(h) e^c`` in normal form."""
        while a > 0 and c > 0 and p:
            p = pmul(pshift(p, 2), self.fe)
            a -= 1
            c -= 1
        if not p:
            return
        q = padd(out.get((a, c), ()), p, s)
        if q:
            out[(a, c)] = q
        else:
            out.pop((a, c), None)

    def e_times(self, x: dict) -> dict:
        """``e . x`` using ``e f^a = f^a e + a f^(a-1) (h - a + 1)``."""
        out: dict = {}
        for (a, c), p in x.items():
            self.add_term(out, a, pshift(p, -2), c + 1)
            if a:
                self.add_term(out, a - 1, pmul((Fraction(1 - a), Fraction(1)), p), c, a)
        return out

    def e_pow_f_pow(self, c: int, b: int) -> dict:
        """Normal form of ``e^c f^b``."""
        key = (c, b)
        r = self._ecf.get(key)
        if r is None:
            if c == 0:
                r = {(b, 0): (Fraction(1),)}
            else:
                r = self.e_times(self.e_pow_f_pow(c - 1, b))
            self._ecf[key] = r
        return r

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for (a, c), p in x.items():
            for (b, d), q in y.items():
                # f^a P e^c f^b Q e^d
                for (b2, c2), r in self.e_pow_f_pow(c, b).items():
                    poly = pmul(pmul(pshift(p, -2 * b2), r), pshift(q, -2 * c2))
                    self.add_term(out, a + b2, poly, c2 + d)
        return out

    # conversion between normal forms and level keys

    @staticmethod
    def monomial(level: int, i: int) -> tuple[int, int, int]:
        """``(a, b, c)`` exponents of key ``(level, i)``."""
        if i < level:
            return 0, i, level - i
        return i - level, 2 * level - i, 0

    def element(self, key) -> dict:
        a, b, c = self.monomial(*key)
        return {(a, c): tuple([Fraction(0)] * b + [Fraction(1)])}

    @staticmethod
    def to_keys(x: dict) -> dict:
        out = {}
        for (a, c), p in x.items():
            for b, coef in enumerate(p):
                if coef:
                    n = a + b + c
                    i = n - c if c else n + a
                    out[(n, i)] = coef
        return out

    def product_keys(self, k1, k2) -> dict:
        return self.to_keys(self.mul(self.element(k1), self.element(k2)))


def _monomial_name(a, b, c):
    parts = [f"f^{a}" if a > 1 else "f" if a else "",
             f"h^{b}" if b > 1 else "h" if b else "",
             f"e^{c}" if c > 1 else "e" if c else ""]
    return "".join(parts) or "1"


class FilteredLieAlgebra(GradedLieAlgebra):
    """Same interface as a graded algebra; ``key[0]`` is the filtration level."""

    graded = False

    def __init__(self, *args, max_level: int, min_level: int = 1, **kw):
        super().__init__(*args, **kw)
        self.max_level = max_level
        self.min_level = min_level

    def level_keys(self, n: int) -> list:
        """Keys of all levels up to ``n``."""
        return [k for lv in range(self.min_level, n + 1) for k in self.keys(lv)]

    def filtration_defects(self, max_level: int) -> list:
        """Pairs whose bracket leaves ``F_(M+N-1)``."""
        bad = []
        keys = self.level_keys(max_level)
        for i, x in enumerate(keys):
            for y in keys[i:]:
                if x[0] + y[0] - 1 > max_level:
                    continue
                if any(k[0] > x[0] + y[0] - 1 for k in self.bracket(x, y)):
                    bad.append((x, y))
        return bad


def build_gl_lambda(params, max_level: int, drop_unit: bool = False) -> FilteredLieAlgebra:
    if max_level < 1:
        raise ValueError("max_level must be at least 1")
    params = params if isinstance(params, SlLambdaParams) else SlLambdaParams(params)
    U = GlLambda(params)

    def basis(n):
        if drop_unit and n == 0:
            return []
        return [BasisElement(_monomial_name(*U.monomial(n, i)), 2 * n - 2 * i)
                for i in range(2 * n + 1)]

    def bracket(x, y):
        out = U.product_keys(x, y)
        for k, v in U.product_keys(y, x).items():
            out[k] = out.get(k, 0) - v
        if drop_unit:
            out.pop((0, 0), None)
        return {k: v for k, v in out.items() if v}

    name = f"{'sl' if drop_unit else 'gl'}_lambda:{params.la}"
    g = FilteredLieAlgebra(name, basis, bracket, sl2={"e": (1, 0), "h": (1, 1), "f": (1, 2)},
                           max_level=max_level, min_level=1 if drop_unit else 0)
    g.params = params
    g.normal_forms = U
    return g


def build_sl_lambda(params, max_level: int) -> FilteredLieAlgebra:
    return build_gl_lambda(params, max_level, drop_unit=True)


def filtration_dim(g: FilteredLieAlgebra, n: int) -> int:
    return sum(g.dim(lv) for lv in range(0, n + 1))


def adjoint_decomposition(g: FilteredLieAlgebra, n: int) -> dict[int, int]:
    """sl2 decomposition of ``F_n`` under ad, from highest weight vectors of ad(e)."""
    from .linalg import sparse_kernel
    keys = g.level_keys(n)
    pos = {k: i for i, k in enumerate(keys)}
    out: dict[int, int] = {}
    for m in sorted({g.weight(k) for k in keys if g.weight(k) >= 0}):
        sl = [k for k in keys if g.weight(k) == m]
        cols = []
        for k in sl:
            img = g.bracket(g.e, k)
            if any(t not in pos for t in img):
                raise ValueError("F_n is not ad(sl2)-stable")
            cols.append({pos[t]: x for t, x in img.items()})
        dim = len(sparse_kernel(cols, len(sl)))
        if dim:
            out[m] = dim
    return out


# -- independent rewriting on words -------------------------------------------------


class WordRewriter:
    """Rewriting of words in ``f, h, e`` towards ``f...h...e`` order.

    Rules: ``ef -> fe + h``, ``hf -> fh - 2f``, ``eh -> he - 2e``, and every
    factor ``f h^k e`` becomes ``(h+2)^k (c - h - h^2/2)/2``.  The position of
    the rewrite is chosen leftmost or rightmost, so comparing the two
    strategies checks confluence on the inputs tried.
    """

    def __init__(self, params: SlLambdaParams, strategy: str = "leftmost"):
        self.c = params.casimir
        self.strategy = strategy

    def _redex(self, w: str):
        spots = []
        for i in range(len(w) - 1):
            pair = w[i:i + 2]
            if pair in ("ef", "hf", "eh"):
                spots.append((i, i + 2))
        # f h^k e
        for i, ch in enumerate(w):
            if ch == "f":
                j = i + 1
                while j < len(w) and w[j] == "h":
                    j += 1
                if j < len(w) and w[j] == "e":
                    spots.append((i, j + 1))
        if not spots:
            return None
        spots.sort()
        return spots[0] if self.strategy == "leftmost" else spots[-1]

    def _rewrite(self, piece: str) -> dict:
        if piece == "ef":
            return {"fe": Fraction(1), "h": Fraction(1)}
        if piece == "hf":
            return {"fh": Fraction(1), "f": Fraction(-2)}
        if piece == "eh":
            return {"he": Fraction(1), "e": Fraction(-2)}
        k = len(piece) - 2
        # (h+2)^k (c - h - h^2/2)/2 expanded into words h^j
        poly = pmul(pshift(tuple([Fraction(0)] * k + [Fraction(1)]), 2),
                    (self.c / 2, Fraction(-1, 2), Fraction(-1, 4)))
        return {"h" * j: x for j, x in enumerate(poly) if x}

    def normal_form(self, word: str) -> dict:
        todo = {word: Fraction(1)}
        done: dict = {}
        steps = 0
        while todo:
            w, x = todo.popitem()
            if not x:
                continue
            r = self._redex(w)
            if r is None:
                done[w] = done.get(w, 0) + x
                continue
            i, j = r
            for piece, y in self._rewrite(w[i:j]).items():
                nw = w[:i] + piece + w[j:]
                todo[nw] = todo.get(nw, 0) + x * y
            steps += 1
            if steps > 10 ** 6:
                raise RuntimeError("rewriting did not terminate")
        return {w: x for w, x in done.items() if x}


def word_of_key(key) -> str:
    a, b, c = GlLambda.monomial(*key)
    return "f" * a + "h" * b + "e" * c


def words_to_normal(x: dict) -> dict:
    """Convert a normal-ordered word combination into the ``(a, c): poly`` form."""
    out: dict = {}
    for w, coef in x.items():
        a, b, c = w.count("f"), w.count("h"), w.count("e")
        if w != "f" * a + "h" * b + "e" * c or (a and c):
            raise ValueError(f"{w} is not a normal word")
        p = tuple([Fraction(0)] * b + [coef])
        out[(a, c)] = padd(out.get((a, c), ()), p)
    return {k: v for k, v in out.items() if v}


def confluence_check(params, max_level: int) -> list:
    """Products of level-``<=max_level`` monomials whose normal forms disagree.

    Both rewriting strategies and the closed-form multiplication are compared.
    """
    params = params if isinstance(params, SlLambdaParams) else SlLambdaParams(params)
    U = GlLambda(params)
    left = WordRewriter(params, "leftmost")
    right = WordRewriter(params, "rightmost")
    keys = [(n, i) for n in range(0, max_level + 1) for i in range(2 * n + 1)]
    bad = []
    for k1 in keys:
        for k2 in keys:
            if k1[0] + k2[0] > max_level:
                continue
            w = word_of_key(k1) + word_of_key(k2)
            a, b = left.normal_form(w), right.normal_form(w)
            closed = U.mul(U.element(k1), U.element(k2))
            if a != b or words_to_normal(a) != closed:
                bad.append((k1, k2))
    return bad
