import json
from fractions import Fraction
from importlib import resources

import pytest

from weylkit.lie import (AlgebraError, ad_nilpotency, algebra_from_dict, algebra_to_dict, apply_map,
                         build_from_file, build_h2, build_l0w2, build_sl2, check_thin, h2_polynomial,
                         poisson_bracket, sigma_h2, validate)
from weylkit.sl_lambda import SlLambdaParams, build_sl_lambda
from weylkit.weyl import check_engine_algebra

FILE_ALGEBRA = resources.files("weylkit") / "golden" / "algebras" / "h2_mod3.json"


def test_h2_pieces():
    g = build_h2()
    for d in range(8):
        assert g.dim(d) == d + 3
        assert g.decompose(d) == {d + 2: 1}
        assert g.hw_floor(d) == d + 2
    assert [g.name_of(k) for k in g.keys(0)] == ["e", "h", "f"]


@pytest.mark.parametrize("build", [build_h2, build_l0w2, build_sl2,
                                   lambda: build_from_file(FILE_ALGEBRA)])
def test_jacobi_builtins_to_degree_6(build):
    rep = validate(build(), 6)
    assert rep.ok, rep.violations[:3]


@pytest.mark.parametrize("la", [Fraction(1, 2), Fraction(3), Fraction(10, 3)])
def test_jacobi_sl_lambda_to_level_6(la):
    rep = validate(build_sl_lambda(SlLambdaParams(la), 8), 6)
    assert rep.ok, rep.violations[:3]
    assert rep.checked_triples > 0


def test_brackets_agree_with_poisson_bracket():
    g = build_h2()
    for d1 in range(4):
        for d2 in range(4):
            for a in g.keys(d1):
                for b in g.keys(d2):
                    lhs: dict = {}
                    for k, c in g.bracket(a, b).items():
                        for m, x in h2_polynomial(k).items():
                            lhs[m] = lhs.get(m, 0) + c * x
                    lhs = {m: x for m, x in lhs.items() if x}
                    assert lhs == poisson_bracket(h2_polynomial(a), h2_polynomial(b))


def test_sigma_is_an_automorphism():
    g = build_h2()
    sigma = sigma_h2(g)
    keys = [k for d in range(4) for k in g.keys(d)]
    for a in keys:
        for b in keys:
            if a[0] + b[0] > 4:
                continue
            lhs = apply_map(sigma, g.bracket(a, b))
            rhs = g.bracket_vec(sigma(a), sigma(b))
            assert lhs == rhs
    # sigma swaps e and f up to sign and negates h
    assert set(sigma(g.e)) == {g.f}
    assert sigma(g.h) == {g.h: -1}


def test_ad_nilpotency():
    g = build_h2()
    assert [ad_nilpotency(g, d, g.e) for d in range(4)] == [3, 4, 5, 6]
    assert [ad_nilpotency(g, d, g.f) for d in range(4)] == [3, 4, 5, 6]


def test_thinness():
    h2 = check_thin(build_h2(), 20)
    assert h2.thin and all(0 not in m for m in h2.per_degree.values())
    assert len(h2.per_degree) == 21
    w2 = check_thin(build_l0w2(), 4)
    assert not w2.thin
    assert w2.per_degree[0] == {2: 1, 0: 1}
    assert "not thin up to degree 4" in w2.lines()


def test_engine_rejects_euler_field():
    with pytest.raises(AlgebraError):
        check_engine_algebra(build_l0w2())


def test_file_round_trip():
    g = build_h2()
    data = algebra_to_dict(g, 3)
    g2 = algebra_from_dict(json.loads(json.dumps(data)))
    for d1 in range(4):
        for d2 in range(4 - d1):
            for a in g.keys(d1):
                for b in g.keys(d2):
                    assert g.bracket(a, b) == g2.bracket(a, b)
    assert algebra_to_dict(g2, 3) == data


def _sl2_file():
    return {
        "rank": 1,
        "components": [{"degree": 0, "basis": [{"name": "e", "weight": [2]},
                                                {"name": "h", "weight": [0]},
                                                {"name": "f", "weight": [-2]}]}],
        "brackets": [{"left": [0, 0], "right": [0, 2], "value": [[0, 1, "1"]]},
                     {"left": [0, 1], "right": [0, 0], "value": [[0, 0, "2"]]},
                     {"left": [0, 1], "right": [0, 2], "value": [[0, 2, "-2"]]}],
        "sl2": {"e": [0, 0], "h": [0, 1], "f": [0, 2]},
    }


def test_file_minimal_sl2():
    g = algebra_from_dict(_sl2_file())
    assert g.bracket((0, 2), (0, 0)) == {(0, 1): -1}


@pytest.mark.parametrize("mutate", [
    lambda s: s.pop("sl2"),
    lambda s: s["brackets"].append(dict(s["brackets"][0])),
    lambda s: s["brackets"][0].update(value=[[0, 1, "2"]]),
    lambda s: s["brackets"][0].update(right=[0, 7]),
    lambda s: s["components"][0].update(degree=-1),
    lambda s: s.update(rank=2),
    lambda s: s["brackets"][1].update(value=[[0, 0, "x"]]),
])
def test_file_rejects_malformed(mutate):
    data = _sl2_file()
    mutate(data)
    with pytest.raises(AlgebraError):
        algebra_from_dict(data)


def test_file_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(AlgebraError):
        build_from_file(p)
