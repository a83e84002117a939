import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gwalab.linalg import span_dimension
from gwalab.poly import POLYNOMIAL, MultiPoly, Ring, grlex_key
from gwalab.samples import random_poly
from gwalab.smc import (FilteredSubspace, case1_constant, case1_direct_sum_check, gr_subspace,
                        product_dims, smc_constant, smc_constant_recursive, verify_smc_instance)

P0, P1, P2 = (Ring(POLYNOMIAL, n) for n in range(3))
seeds = st.integers(0, 10 ** 6)


def test_constant_examples():
    assert smc_constant(0) == 1
    assert smc_constant(1) == Fraction(1, 10)
    assert smc_constant(2) == Fraction(1, 1000)
    assert case1_constant(1) == Fraction(1, 2)
    with pytest.raises(ValueError):
        smc_constant(-1)


@pytest.mark.parametrize("n", range(7))
def test_constant_recursion(n):
    assert smc_constant(n) == smc_constant_recursive(n)


def test_gr_examples():
    w = FilteredSubspace.spanned_by([P1.one(), P1.parse("z1")])
    assert gr_subspace(w).dim == 2
    w = FilteredSubspace.spanned_by([P1.parse("1 + z1"), P1.parse("z1")])
    g = gr_subspace(w)
    assert g.dim == 2
    assert {(0,): 1} in g and {(1,): 1} in g


def test_smc_examples():
    rep = verify_smc_instance(1, P1.one(), m_max=8)
    assert rep.all_pass and [r.dim for r in rep.rows] == list(range(2, 10))
    assert verify_smc_instance(2, P2.parse("z1")).all_pass
    rep = verify_smc_instance(2, P2.parse("z1 + z2^2"), [P2.parse("z1^3")])
    assert rep.all_pass and rep.to_json()["verdict"] == "all-pass"
    assert rep.first_failure is None


def test_smc_errors():
    with pytest.raises(ValueError):
        verify_smc_instance(2, P2.zero())
    with pytest.raises(ValueError):
        verify_smc_instance(2, P2.one(), m_max=1)
    with pytest.raises(ValueError):
        verify_smc_instance(1, P2.one())


def test_case1_examples():
    assert case1_direct_sum_check(1, [([P0.one()], 0), ([P0.one()], 1)], 8).all_pass
    v1 = [P1.one(), P1.parse("z1")]
    assert case1_direct_sum_check(2, [(v1, 0), (v1, 2)], 6).all_pass
    with pytest.raises(ValueError):
        case1_direct_sum_check(2, [(v1, 0)], 6)
    with pytest.raises(ValueError):
        case1_direct_sum_check(2, [(v1, 2), (v1, 1)], 6)


def test_product_dims_monomials():
    assert product_dims([P2.one(), P2.parse("z1"), P2.parse("z2")], 4) == [1, 3, 6, 10, 15]


def _random_w(rng, ring, count):
    return [random_poly(rng, ring, 2, 3, 3, nonzero=True) for _ in range(count)]


@given(seeds, st.integers(1, 3))
def test_gr_preserves_dimension(seed, n):
    rng = random.Random(seed)
    ring = Ring(POLYNOMIAL, n)
    polys = _random_w(rng, ring, rng.randint(1, 5))
    w = FilteredSubspace.spanned_by(polys)
    assert gr_subspace(w).dim == w.dim == span_dimension([dict(p.items()) for p in polys],
                                                         grlex_key)


@given(seeds)
def test_gr_submultiplicative(seed):
    rng = random.Random(seed)
    polys = _random_w(rng, P2, rng.randint(1, 3))
    w = FilteredSubspace.spanned_by(polys)
    gr = [MultiPoly(r, 2) for r in gr_subspace(w).rows]
    dw = product_dims(polys, 4)
    dg = product_dims(gr, 4)
    assert all(a >= b for a, b in zip(dw, dg))


@given(seeds, st.integers(1, 2))
def test_random_instances(seed, n):
    rng = random.Random(seed)
    ring = Ring(POLYNOMIAL, n)
    a = random_poly(rng, ring, 3, 3, 3, nonzero=True)
    extra = [random_poly(rng, ring, 3, 3, 3, nonzero=True) for _ in range(rng.randint(0, 2))]
    assert verify_smc_instance(n, a, extra, m_max=4).all_pass
