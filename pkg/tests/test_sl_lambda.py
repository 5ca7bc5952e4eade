from fractions import Fraction

import pytest

from weylkit.sl_lambda import (GlLambda, SlLambdaParams, WordRewriter, adjoint_decomposition,
                               build_gl_lambda, build_sl_lambda, confluence_check, filtration_dim,
                               padd, words_to_normal)

PARAMS = [Fraction(1, 2), Fraction(3), Fraction(10, 3)]


@pytest.mark.parametrize("la", PARAMS)
def test_filtration_dims(la):
    g = build_gl_lambda(SlLambdaParams(la), 8)
    assert [filtration_dim(g, n) for n in range(7)] == [(n + 1) ** 2 for n in range(7)]


@pytest.mark.parametrize("la", PARAMS)
def test_adjoint_decomposition(la):
    g = build_sl_lambda(SlLambdaParams(la), 8)
    for n in range(1, 6):
        assert adjoint_decomposition(g, n) == {2 * k: 1 for k in range(1, n + 1)}


@pytest.mark.parametrize("la", PARAMS)
def test_filtration_is_respected(la):
    g = build_sl_lambda(SlLambdaParams(la), 8)
    assert g.filtration_defects(6) == []


@pytest.mark.parametrize("la", PARAMS)
def test_rewriting_is_confluent(la):
    assert confluence_check(SlLambdaParams(la), 4) == []


def test_casimir_acts_as_scalar():
    p = SlLambdaParams(3)
    U = GlLambda(p)
    e, f, h = U.element((1, 0)), U.element((1, 2)), U.element((1, 1))
    cas: dict = {}
    for x, y, s in ((e, f, 1), (f, e, 1), (h, h, Fraction(1, 2))):
        for k, poly in U.mul(x, y).items():
            cas[k] = padd(cas.get(k, ()), poly, s)
    assert {k: v for k, v in cas.items() if v} == {(0, 0): (p.casimir,)}
    assert p.casimir == 4


def test_ef_normal_form():
    p = SlLambdaParams(3)
    U = GlLambda(p)
    words = WordRewriter(p).normal_form("ef")
    assert words == {"": 2, "h": Fraction(1, 2), "hh": Fraction(-1, 4)}
    assert words_to_normal(words) == U.mul(U.element((1, 0)), U.element((1, 2)))


def test_sl2_triple():
    g = build_sl_lambda(SlLambdaParams(Fraction(1, 2)), 6)
    assert g.bracket(g.e, g.f) == {g.h: 1}
    assert g.bracket(g.h, g.e) == {g.e: 2}
    assert not g.graded
    assert [g.weight(k) for k in g.keys(2)] == [4, 2, 0, -2, -4]


def test_params_parse():
    assert SlLambdaParams("10/3").la == Fraction(10, 3)
    assert SlLambdaParams(Fraction(1, 2)).casimir == Fraction(-3, 8)
