from fractions import Fraction
from importlib import resources
from itertools import combinations_with_replacement

import pytest

from weylkit.linalg import Echelon, axpy
from weylkit.rep import Decomposition, truncate_isotypic
from weylkit.report import dumps
from weylkit.symalg import SymmetricPowers, sl2_module, sym_power, truncated_sym_algebra

GOLDEN = resources.files("weylkit") / "golden" / "derived"


def brute_force_dims(mults, om, top):
    """``I_(d) = sum_k S^(d-k) V . Bad_(k)`` spanned by all products, no recursion."""
    S = SymmetricPowers(sl2_module(mults))
    bad = {k: truncate_isotypic(S.module(k), om)[k][1].sparse_rows() for k in range(top + 1)}
    dims = {}
    for d in range(top + 1):
        ech = Echelon()
        idx = S.index(d)
        for k in range(d + 1):
            for mono in combinations_with_replacement(range(S.n), d - k):
                for r in bad[k]:
                    v: dict = {}
                    for j, x in r.items():
                        axpy(v, x, {idx[tuple(sorted(S.basis(k)[j] + mono))]: Fraction(1)})
                    ech.add(v)
        dims[d] = len(S.basis(d)) - ech.rank
    return dims


@pytest.mark.parametrize("mults,om,dims", [
    ({1: 1}, {0, 1}, [1, 2, 0]),
    ({2: 1}, {0, 1, 2}, [1, 3, 1, 0]),
    ({2: 2}, {0, 1, 2}, [1, 6, 6, 0]),
    ({3: 1}, {0, 1, 2, 3}, [1, 4, 3, 0]),
    ({2: 1, 4: 1}, {0, 1, 2, 3, 4}, [1, 8, 20, 16, 2, 0]),
])
def test_against_brute_force(mults, om, dims):
    res = truncated_sym_algebra(sl2_module(mults), om)
    assert res.terminated
    assert res.graded_dims() == dims
    assert brute_force_dims(mults, om, len(dims) - 1) == dict(enumerate(dims))
    assert all(res.checks.values())


def test_l1_total():
    res = truncated_sym_algebra(sl2_module({1: 1}), {0, 1})
    assert res.total_dim == 3 and res.terminated
    assert res.decomposition == Decomposition({0: {0: 1}, 1: {1: 1}})


def test_l2_golden():
    res = truncated_sym_algebra(sl2_module({2: 1}), {0, 1, 2})
    assert dumps(res.to_json()) == (GOLDEN / "symalg_L2_omega_0_1_2.json").read_text()


def test_without_trivial_label_the_algebra_vanishes():
    res = truncated_sym_algebra(sl2_module({2: 1}), {1, 2})
    assert res.total_dim == 0 and res.terminated


def test_degree_cap():
    res = truncated_sym_algebra(sl2_module({2: 1}), {0, 1, 2, 3, 4}, max_degree=2)
    assert not res.terminated


@pytest.mark.parametrize("mults,d,expected", [
    ({1: 1}, 2, {2: 1}),
    ({2: 1}, 2, {4: 1, 0: 1}),
    ({2: 1}, 3, {6: 1, 2: 1}),
    ({1: 1}, 0, {0: 1}),
])
def test_symmetric_powers(mults, d, expected):
    assert sym_power(sl2_module(mults), d).decomposition() == Decomposition({d: expected})
