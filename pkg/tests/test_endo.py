
import pytest

from checks import regular_iso_defects, weight_slice_series
from conftest import endo, h2, weyl
from weylkit.endo import (PreconditionError, compute_A_lambda, compute_socle, freeness_report,
                          regular_module, restriction_R_lambda, trivial_module, weyl_functor_apply)
from weylkit.rep import Decomposition, irreducible
from weylkit.weyl import compute_global_weyl

GRADED_DIMS = {0: [1], 1: [1], 2: [1], 3: [1, 0, 1], 4: [1, 0, 1], 5: [1, 0, 1, 0, 1]}


@pytest.mark.parametrize("la", range(0, 6))
def test_algebra_structure(la):
    A = endo(la)
    assert A.graded_dims() == GRADED_DIMS[la]
    assert A.is_associative() and A.is_unital()
    # weight-zero elements are functions of xy, which Poisson-commute
    assert all(A.mult.get((i, j)) == A.mult.get((j, i)) for i in range(A.dim) for j in range(A.dim))
    assert A.graded_dims() == weight_slice_series(weyl("global", la).decomposition, la)


def test_a4_is_dual_numbers():
    A = endo(4)
    assert A.dim == 2 and A.degrees == [0, 2]
    assert A.nilpotency_order() == 2
    assert A.mult.get((1, 1)) is None


def test_representatives_are_words_in_hbar():
    g = h2()
    A = endo(5)
    hbar = {k for i in range(1, 5) for k in g.weight_zero_keys(i)}
    for rep in A.representatives:
        for word in rep:
            assert all(k in hbar for k in word)


@pytest.mark.parametrize("la", range(0, 6))
def test_restriction_of_weyl_module_is_regular(la):
    A = endo(la)
    R = restriction_R_lambda(weyl("global", la).module, la, A)
    R.check()
    assert regular_iso_defects(A, R) == []


def test_restriction_requires_bounded_module():
    A = endo(2)
    with pytest.raises(PreconditionError):
        restriction_R_lambda(weyl("global", 3).module, 2, A)


def test_a_lambda_needs_certified_module():
    W = compute_global_weyl(h2(), 3, max_degree=1)
    with pytest.raises(PreconditionError):
        compute_A_lambda(h2(), 3, W)


@pytest.mark.parametrize("la", range(0, 6))
def test_functor_on_regular_and_trivial(la):
    A = endo(la)
    W = weyl("global", la)
    assert weyl_functor_apply(W, A, regular_module(A)) == W.decomposition
    assert weyl_functor_apply(W, A, trivial_module(A)) == weyl("local", la).decomposition


@pytest.mark.parametrize("la", [3, 4])
def test_functor_commutes_with_shift(la):
    A = endo(la)
    W = weyl("global", la)
    shifted = weyl_functor_apply(W, A, trivial_module(A, 2))
    local = weyl("local", la).decomposition
    assert shifted == Decomposition({d + 2: m for d, m in local.components.items()})


@pytest.mark.parametrize("la", range(0, 6))
def test_adjunction_unit(la):
    A = endo(la)
    W = weyl("global", la)
    for M in (regular_module(A), trivial_module(A)):
        out = weyl_functor_apply(W, A, M)
        series = weight_slice_series(out, la)
        dims = M.graded_dims()
        assert {d: n for d, n in enumerate(series) if n} == dims


def test_freeness_report_l4():
    rep = freeness_report(weyl("global", 4), endo(4))
    assert rep["dim_W"] == 31 and rep["dim_A"] == 2
    assert not rep["divisible"] and not rep["free"]


def test_freeness_small_cases_free():
    for la in range(0, 3):
        assert freeness_report(weyl("global", la), endo(la))["free"]


def test_socle_of_pullback():
    g = h2()
    for la in range(6):
        assert compute_socle(irreducible(g, la)) == Decomposition({0: {la: 1}})


def test_socle_global_w4_dense_oracle():
    """Common kernel of the positive keys, rebuilt with dense matrices."""
    from weylkit.linalg import Matrix, kernel
    g = h2()
    W = weyl("global", 4).module
    top = max(W.degrees())
    soc = compute_socle(W)
    for d in W.degrees():
        n = W.dim(d)
        rows = []
        for i in range(1, top - d + 1):
            for x in g.keys(i):
                cols = W.act(x, d)
                for r in range(W.dim(d + i)):
                    rows.append([cols[c].get(r, 0) for c in range(n)])
        ker = kernel(Matrix(rows, n)) if rows else None
        kdim = ker.dim if ker is not None else n
        assert soc.dim(d) == kdim
    assert soc.trimmed() == Decomposition({3: {3: 1, 1: 2}})


def test_local_socle_contains_trivial_piece():
    """The degree-1 L(0) of the local module at 3 is annihilated by every positive key.

    g_(1) = L(3) maps it into L(3) (x) L(0) = L(3), which does not occur in
    degree 2 = L(1), and higher pieces land above the top degree.
    """
    W = weyl("local", 3).module
    assert W.decomposition()[1] == {2: 1, 0: 1}
    soc = compute_socle(W).trimmed()
    assert soc == Decomposition({1: {0: 1}, 2: {1: 1}})
    top = weyl("local", 3).top_degree
    assert soc[top] == {1: 1}
