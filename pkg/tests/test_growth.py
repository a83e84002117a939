import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gwalab.growth import (ExponentialFit, PolynomialFit, classify_dims, degree_doubling_holds,
                           exponential_witness, filtered_dims, fit_exponent, growth_sequence,
                           is_exponential, is_sigma_stable, power_dims, sandwich_check,
                           triangular_stable_subspace)
from gwalab.gwa import GWASpec, make_heisenberg, make_weyl, span
from gwalab.plane import P2, PlaneEndo
from gwalab.samples import triangular_specs

seeds = st.integers(0, 10 ** 6)
QUAD = PlaneEndo.parse("z2", "z1 + z2^2")


def laurent_gens(spec):
    zs = spec.ring.gens()
    return [spec.one] + [spec.base(z) for z in zs] + [spec.base(z ** -1) for z in zs] + \
        [spec.x, spec.y]


def plane_gens(spec):
    return [spec.one, spec.base(P2.var(0)), spec.base(P2.var(1)), spec.x, spec.y]


def degree_le(spec, k):
    return span(spec, [spec.base(P2.monomial((i, j)))
                       for i in range(k + 1) for j in range(k + 1 - i)])


def test_weyl_fit():
    w = make_weyl()
    rep = growth_sequence(w, [w.one, w.base(w.ring.var(0)), w.x, w.y], 12)
    assert isinstance(rep.fit, PolynomialFit)
    assert abs(float(rep.fit.estimate) - 2) <= 0.35
    assert all(c.passed for c in rep.checks)
    assert rep.to_json()["fit"]["kind"] == "polynomial"


def test_heisenberg_h1_fit():
    h = make_heisenberg(1)
    rep = growth_sequence(h, laurent_gens(h), 12)
    assert abs(float(rep.fit.estimate) - 4) <= 0.35


def test_heisenberg_h0_fit():
    h = make_heisenberg(0)
    rep = growth_sequence(h, laurent_gens(h), 10)
    assert abs(float(rep.fit.estimate) - 3) <= 0.35


def test_exponential_small():
    spec = GWASpec(P2, QUAD, P2.one())
    dims = filtered_dims(spec, [spec.one, spec.base(P2.var(0)), spec.base(P2.var(1)), spec.x], 7)
    assert is_exponential(dims)
    assert isinstance(classify_dims(dims), ExponentialFit)


@given(seeds)
def test_graded_and_ungraded_elimination_agree(seed):
    # z1 + x is not homogeneous, which forces the single-echelon path
    spec = triangular_specs(random.Random(seed), 1)[0]
    z1 = spec.base(P2.var(0))
    graded = filtered_dims(spec, plane_gens(spec), 4)
    mixed = [spec.one, z1 + spec.x, spec.base(P2.var(1)), spec.x, spec.y]
    assert filtered_dims(spec, mixed, 4) == graded


def test_requires_one():
    w = make_weyl()
    with pytest.raises(ValueError):
        growth_sequence(w, [w.x, w.y], 4)


def test_short_range_has_no_fit():
    w = make_weyl()
    assert growth_sequence(w, [w.one, w.x, w.y], 5).fit is None


def test_classify_dims_on_sequences():
    assert isinstance(classify_dims([2 ** m for m in range(11)]), ExponentialFit)
    fit = classify_dims([(m + 1) ** 3 for m in range(13)])
    assert abs(float(fit.estimate) - 3) < 0.35
    # Lucas-like sequence: ratios stay above 1.3
    assert is_exponential([1, 3, 4, 7, 11, 18, 29, 47, 76, 123])
    assert not is_exponential([(m + 1) ** 2 for m in range(11)])


def test_monomial_counts():
    spec = GWASpec(P2, PlaneEndo.parse("z1 + z2", "z2"), P2.parse("z2"))
    v = [spec.one, spec.base(P2.var(0)), spec.base(P2.var(1))]
    assert filtered_dims(spec, v, 5) == [(m + 1) * (m + 2) // 2 for m in range(6)]
    assert power_dims(spec, v, 2)[2] == 6
    assert power_dims(spec, v[1:], 3) == [1, 2, 3, 4]


def test_sandwich_examples():
    weyl_like = GWASpec(P2, PlaneEndo.parse("z1 - 1", "z2"), P2.parse("z1"))
    checks = sandwich_check(weyl_like, degree_le(weyl_like, 2), 6)
    assert checks and all(c.passed for c in checks)
    tri = GWASpec(P2, PlaneEndo.parse("z1 + z2", "z2"), P2.parse("z2"))
    checks = sandwich_check(tri, degree_le(tri, 2), 6)
    assert {c.name for c in checks} == {"sandwich-lower", "sandwich-upper"}
    assert all(c.passed for c in checks)


def test_sandwich_preconditions():
    tri = GWASpec(P2, PlaneEndo.parse("z1 + z2^2", "z2"), P2.parse("z2"))
    unstable = span(tri, [tri.one, tri.base(P2.var(0)), tri.base(P2.var(1))])
    assert not is_sigma_stable(tri, unstable)
    with pytest.raises(ValueError):
        sandwich_check(tri, unstable, 2)
    with pytest.raises(ValueError):
        sandwich_check(tri, span(tri, [tri.one, tri.x]), 2)
    missing_a = GWASpec(P2, PlaneEndo.parse("z1 + z2", "z2"), P2.parse("z2^3"))
    with pytest.raises(ValueError):
        sandwich_check(missing_a, degree_le(missing_a, 2), 2)


def test_exponential_witness_examples():
    spec = GWASpec(P2, QUAD, P2.one())
    z2 = P2.var(1)
    assert exponential_witness(spec, z2, 0) == 2
    assert exponential_witness(spec, z2, 3) == 16
    assert degree_doubling_holds(spec, z2, 3)
    tri = GWASpec(P2, PlaneEndo.parse("z1 + z2^2", "z2"), P2.one())
    assert not degree_doubling_holds(tri, z2, 3)
    assert exponential_witness(tri, z2, 3) <= 16


@given(seeds)
def test_triangular_subspace_is_stable(seed):
    spec = triangular_specs(random.Random(seed), 1)[0]
    v = triangular_stable_subspace(spec, 4)
    assert is_sigma_stable(spec, v)


@given(seeds)
def test_dims_nondecreasing(seed):
    spec = triangular_specs(random.Random(seed), 1)[0]
    dims = filtered_dims(spec, plane_gens(spec), 4)
    assert all(a <= b for a, b in zip(dims, dims[1:]))
    assert dims[0] == 1 and dims[1] == 5


@given(st.integers(1, 4), st.integers(1, 5))
def test_fit_recovers_exact_powers(d, scale):
    dims = [scale * max(m, 1) ** d for m in range(13)]
    assert abs(fit_exponent(dims) - d) < 1e-9
