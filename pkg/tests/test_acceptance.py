"""Exit criteria, one test per criterion.  Each prints a PASS/FAIL line and the
run ends with a summary of all of them."""

import functools
import random
import time
from fractions import Fraction


from checks import regular_iso_defects, weight_slice_series
from conftest import ACCEPTANCE, endo, h2, weyl
from reference_tables import GLOBAL, GLOBAL_DIMS, LOCAL, LOCAL_DIMS
from weylkit import report
from weylkit.cli import main
from weylkit.endo import (compute_socle, freeness_report, regular_module, restriction_R_lambda,
                          trivial_module, weyl_functor_apply)
from weylkit.filtered import as_filtered, compute_global_weyl_filtered
from weylkit.lie import build_from_file, build_l0w2, build_sl2, check_thin, validate
from weylkit.linalg import Matrix, Subspace, rref
from weylkit.pbw import induced_component, pbw_oracle
from weylkit.rep import Decomposition, TruncationSet, irreducible
from weylkit.report import render_table
from weylkit.sl_lambda import (SlLambdaParams, adjoint_decomposition, build_gl_lambda,
                               build_sl_lambda, filtration_dim)
from weylkit.symalg import sl2_module, truncated_sym_algebra
from weylkit.weights import RootData, leq_in_root_order

TABLE_TIME_LIMIT = 300.0


def criterion(n, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kw):
            try:
                fn(*args, **kw)
            except BaseException:
                ACCEPTANCE[n] = (False, title)
                print(f"criterion {n}: FAIL  {title}")
                raise
            ACCEPTANCE[n] = (True, title)
            print(f"criterion {n}: PASS  {title}")
        return run
    return wrap


@criterion(1, "global Weyl tables for la = 0..7")
def test_global_tables():
    start = time.perf_counter()
    results = [weyl("global", la) for la in range(8)]
    elapsed = time.perf_counter() - start
    for la, W in enumerate(results):
        assert render_table(W.decomposition).splitlines() == GLOBAL[la], la
        assert W.certified and W.termination["T"] == max(0, 2 * la - 2)
    assert [W.total_dim for W in results] == GLOBAL_DIMS
    assert [W.total_dim for W in results[:5]] == [1, 2, 5, 14, 31]
    assert elapsed < TABLE_TIME_LIMIT


@criterion(2, "local Weyl tables for la = 0..7")
def test_local_tables():
    results = [weyl("local", la) for la in range(8)]
    for la, W in enumerate(results):
        assert render_table(W.decomposition).splitlines() == LOCAL[la], la
        assert W.certified
    assert [W.total_dim for W in results] == LOCAL_DIMS
    assert render_table(results[3].decomposition) == "L(3)\nL(2)⊕L(0)\nL(1)"


@criterion(3, "endomorphism algebras, regular module, non-freeness at la = 4")
def test_endomorphism_algebras():
    A4 = endo(4)
    assert A4.dim == 2 and A4.graded_dims() == [1, 0, 1]
    A7 = endo(7)
    assert A7.graded_dims() == [1, 0, 1, 0, 2, 0, 1]
    assert A7.graded_dims() == weight_slice_series(weyl("global", 7).decomposition, 7)
    for la in range(8):
        A = endo(la)
        assert A.is_associative() and A.is_unital()
        R = restriction_R_lambda(weyl("global", la).module, la, A)
        assert regular_iso_defects(A, R) == [], la
    rep = freeness_report(weyl("global", 4), A4)
    assert rep["dim_W"] == 31 and not rep["divisible"] and not rep["free"]


@criterion(4, "socle of local Weyl modules is L(1); socle of a pullback is itself")
def test_socles():
    g = h2()
    for la in range(6):
        assert compute_socle(irreducible(g, la)) == Decomposition({0: {la: 1}})
    socles = {}
    for n in range(1, 8):
        soc = compute_socle(weyl("local", n).module)
        total: dict = {}
        for d in soc.degrees():
            for m, k in soc[d].items():
                total[m] = total.get(m, 0) + k
        socles[n] = total
    assert socles == {n: {1: 1} for n in range(1, 8)}, socles


@criterion(5, "induced module P(0) in degrees 0..2")
def test_induced_p0():
    dec = induced_component(h2(), 0, 2).decomposition()
    assert dec[0] == {0: 1}
    assert dec[1] == {3: 1}
    assert dec[2] == {6: 1, 4: 1, 2: 1}
    assert dec[2].get(0, 0) == 0


@criterion(6, "Weyl functor on regular and trivial modules, adjunction unit")
def test_functor_identities():
    for la in range(6):
        A = endo(la)
        W = weyl("global", la)
        reg = weyl_functor_apply(W, A, regular_module(A))
        triv = weyl_functor_apply(W, A, trivial_module(A))
        assert render_table(reg) == render_table(W.decomposition)
        assert render_table(triv) == render_table(weyl("local", la).decomposition)
        for M, out in ((regular_module(A), reg), (trivial_module(A), triv)):
            series = weight_slice_series(out, la)
            assert {d: n for d, n in enumerate(series) if n} == M.graded_dims()


@criterion(7, "recursion against induced-module quotient; filtered engine on h2")
def test_oracle_equivalence():
    g = h2()
    for la in range(4):
        W = weyl("global", la)
        oracle = pbw_oracle(g, la, TruncationSet.below(la), 3)
        for d in range(4):
            got = W.module.weight_dims(d) if d in W.module.degrees() else {}
            assert got == oracle[d], (la, d)
    hf = as_filtered(g, 64)
    for la in range(3):
        res = compute_global_weyl_filtered(hf, la)
        assert res.certified
        assert res.layers == weyl("global", la).decomposition


@criterion(8, "sl(lambda): filtration dims, adjoint decomposition, filtered Weyl module")
def test_sl_lambda():
    for la in (Fraction(1, 2), Fraction(3), Fraction(10, 3)):
        gl = build_gl_lambda(SlLambdaParams(la), 8)
        assert [filtration_dim(gl, n) for n in range(7)] == [(n + 1) ** 2 for n in range(7)]
        sl = build_sl_lambda(SlLambdaParams(la), 8)
        for n in range(1, 7):
            assert adjoint_decomposition(sl, n) == {2 * k: 1 for k in range(1, n + 1)}
    res = compute_global_weyl_filtered(build_sl_lambda(SlLambdaParams(Fraction(1, 2)), 64), 2)
    assert res.certified
    assert all(m <= 2 for m in res.decomposition)
    golden = report.golden_dir() / "derived" / "filtered_sl_lambda_1_2_weight_2.json"
    assert report.dumps(res.to_json()) == golden.read_text()


@criterion(9, "thinness of h2 to degree 20; l0w2 has L(0) in degree 0")
def test_thinness():
    rep = check_thin(h2(), 20)
    assert rep.thin and rep.max_degree == 20 and len(rep.per_degree) == 21
    w2 = check_thin(build_l0w2(), 20)
    assert not w2.thin
    assert w2.per_degree[0].get(0) == 1
    assert all(0 not in w2.per_degree[d] for d in range(1, 21))


@criterion(10, "truncated symmetric algebras")
def test_symmetric_algebras():
    runs = []
    a = truncated_sym_algebra(sl2_module({1: 1}), {0, 1})
    assert a.total_dim == 3 and a.terminated
    runs.append(a)
    b = truncated_sym_algebra(sl2_module({2: 1}), {0, 1, 2})
    assert b.terminated and b.total_dim < float("inf")
    runs.append(b)
    runs.append(truncated_sym_algebra(sl2_module({2: 2}), {0, 1, 2}))
    runs.append(truncated_sym_algebra(sl2_module({3: 1}), {0, 1, 2, 3}))
    for r in runs:
        assert r.checks["zero_propagation"] and r.checks["stable"]


@criterion(11, "weight order: sl3 instance, antisymmetry and transitivity")
def test_weight_order():
    a2 = RootData.a2()
    assert leq_in_root_order((1, 0), (3, -1), a2)
    rng = random.Random(20240611)
    for rank, rd in ((1, RootData.sl2()), (2, a2)):
        def sample():
            return tuple(rng.randint(-5, 5) for _ in range(rank))
        for _ in range(400):
            x, y, z = sample(), sample(), sample()
            if leq_in_root_order(x, y, rd) and leq_in_root_order(y, x, rd):
                assert x == y
            if leq_in_root_order(x, y, rd) and leq_in_root_order(y, z, rd):
                assert leq_in_root_order(x, z, rd)
        # chains built on purpose, so the implications are exercised
        for _ in range(100):
            x = sample()
            y = tuple(c + s for c, s in zip(x, _positive_root_combo(rng, rd)))
            z = tuple(c + s for c, s in zip(y, _positive_root_combo(rng, rd)))
            assert leq_in_root_order(x, y, rd) and leq_in_root_order(x, z, rd)
            assert leq_in_root_order(y, x, rd) == (x == y)


def _positive_root_combo(rng, rd):
    coeffs = [rng.randint(0, 3) for _ in range(rd.rank)]
    return tuple(sum(c * rd.cartan[i][j] for i, c in enumerate(coeffs)) for j in range(rd.rank))


@criterion(12, "RREF canonicality, Grassmann identity, Jacobi to degree 6, byte-stable tables")
def test_infrastructure(tmp_path):
    rng = random.Random(7)
    for _ in range(50):
        rows = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(4)]
        mixed = [list(r) for r in rows]
        i, j = rng.sample(range(4), 2)
        c = rng.randint(1, 3)
        mixed[i] = [a + c * b for a, b in zip(mixed[i], mixed[j])]
        mixed.reverse()
        assert rref(Matrix(rows)) == rref(Matrix(mixed))
        U = Subspace(5, [{k: Fraction(x) for k, x in enumerate(r) if x} for r in rows[:2]])
        V = Subspace(5, [{k: Fraction(x) for k, x in enumerate(r) if x} for r in rows[2:]])
        assert U.sum(V).dim + U.intersect(V).dim == U.dim + V.dim
    algebras = [h2(), build_l0w2(), build_sl2(),
                build_from_file(report.golden_dir() / "algebras" / "h2_mod3.json")]
    for g in algebras:
        assert validate(g, 6).ok, g.name
    for la in (Fraction(1, 2), Fraction(3), Fraction(10, 3)):
        assert validate(build_sl_lambda(SlLambdaParams(la), 8), 6).ok
    assert main(["report", "tables", "--out", str(tmp_path)]) == 0
    golden = report.golden_dir()
    names = sorted(p.relative_to(tmp_path) for p in tmp_path.rglob("*") if p.is_file())
    assert len(names) == 32
    for name in names:
        assert (tmp_path / name).read_bytes() == (golden / name).read_bytes()
