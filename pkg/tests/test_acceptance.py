"""Acceptance criteria 1-10.

Each test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary, and also when this file is run as a script.  Tolerances and
time limits are the stated ones; nothing here is loosened.
"""

import random
import time
from fractions import Fraction

import pytest

from gwalab import intmat
from gwalab.growth import (ExponentialFit, PolynomialFit, exponential_witness, growth_sequence,
                           sandwich_check, triangular_stable_subspace)
from gwalab.gwa import GWASpec, gwa_mul, make_heisenberg, make_weyl, verify_power_lemma
from gwalab.intmat import cyclotomic, max_finite_order, order_by_iteration
from gwalab.laurent import (AT_LEAST_N_PLUS_TWO, EXACTLY_N_PLUS_ONE, LaurentAuto, apply,
                            classify_gk_laurent, compose, inverse, order_verdict, power_mat)
from gwalab.plane import INFINITY, P2, THREE, PlaneEndo, classify_gk_plane, is_triangular
from gwalab.poly import LAURENT, POLYNOMIAL, Ring
from gwalab.samples import (companion, conjugate, random_conjugate, random_element,
                            random_lane, random_laurent_auto, random_poly, random_tame,
                            random_triangular, random_unimodular, triangular_specs)
from gwalab.smc import (FilteredSubspace, gr_subspace, smc_constant, smc_constant_recursive,
                        verify_smc_instance)

RESULTS = []
TOL = 0.35


def record(number, passed, detail):
    line = f"acceptance {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    return passed


def laurent_gens(spec):
    zs = spec.ring.gens()
    return [spec.one] + [spec.base(z) for z in zs] + [spec.base(z ** -1) for z in zs] + \
        [spec.x, spec.y]


def fit_value(report):
    return float(report.fit.estimate) if isinstance(report.fit, PolynomialFit) else None


def test_criterion_01_weyl_relations():
    start = time.perf_counter()
    w = make_weyl()
    ok = gwa_mul(w, w.y, w.x) - gwa_mul(w, w.x, w.y) == w.one
    secs = time.perf_counter() - start
    assert record(1, ok and secs < 1, f"yx - xy = 1 in the Weyl algebra ({secs:.3f} s)")


def test_criterion_02_power_lemma():
    start = time.perf_counter()
    specs = [make_weyl(), make_heisenberg(1)] + triangular_specs(random.Random(2), 20)
    failures = [(s.name, m) for s in specs for m in range(1, 5) if not verify_power_lemma(s, m)]
    secs = time.perf_counter() - start
    ok = not failures and secs < 30
    assert record(2, ok, f"power lemma m = 1..4 on {len(specs)} specs, "
                         f"{len(failures)} failures ({secs:.1f} s)")


def test_criterion_03_finite_order_family():
    start = time.perf_counter()
    ok = True
    for q in range(-3, 4):
        m = ((1 - q, q), (2 - q, q - 1))
        v = order_verdict(m)
        ok &= v.finite and v.order == 2
        ok &= classify_gk_laurent(LaurentAuto(m, (1, 1))).kind == EXACTLY_N_PLUS_ONE
    secs = time.perf_counter() - start
    assert record(3, ok and secs < 1, f"order 2 and gkdim 3 for q = -3..3 ({secs:.3f} s)")


def test_criterion_04_cyclotomic_conjugates():
    start = time.perf_counter()
    rng = random.Random(4)
    ok = True
    counts = {}
    for n, k in ((2, 6), (4, 12)):
        block = companion(cyclotomic(k))
        assert len(block) == n
        bound = max_finite_order(n)
        good = 0
        for _ in range(100):
            m = random_conjugate(rng, block, steps=8)
            v = order_verdict(m)
            # independent check: smallest power equal to the identity
            if v.finite and v.order == k == order_by_iteration(m, bound) and v.order <= bound:
                good += 1
        counts[n] = good
        ok &= good == 100
    secs = time.perf_counter() - start
    ok &= secs < 30
    assert record(4, ok, f"orders 6 (n=2) and 12 (n=4) on 100 conjugates each, "
                         f"correct {counts} ({secs:.1f} s)")


def test_criterion_05_triangularizable():
    start = time.perf_counter()
    rng = random.Random(5)
    certified = 0
    fits = []
    for k in range(30):
        tau = random_triangular(rng)
        delta = random_tame(rng, rng.randint(1, 3))
        sigma = conjugate(tau, delta)
        verdict = classify_gk_plane(sigma)
        cert = verdict.certificate
        if verdict.kind == THREE and cert.verify(sigma) and is_triangular(cert.normal_form()):
            certified += 1
        # growth is measured on the GWA of the certified triangular form
        a = P2.one() if k % 2 == 0 else P2.var(0)
        spec = GWASpec(P2, cert.normal_form(), a)
        gens = [spec.one, spec.base(P2.var(0)), spec.base(P2.var(1)), spec.x, spec.y]
        fits.append(fit_value(growth_sequence(spec, gens, 10)))
    secs = time.perf_counter() - start
    fit_ok = all(f is not None and abs(f - 3) <= TOL for f in fits)
    ok = certified == 30 and fit_ok and secs < 300
    lo = min(f for f in fits if f is not None)
    hi = max(f for f in fits if f is not None)
    assert record(5, ok, f"{certified}/30 certified gkdim 3, growth fits in "
                         f"[{lo:.2f}, {hi:.2f}] at M = 10 ({secs:.1f} s)")


def test_criterion_06_exponential():
    start = time.perf_counter()
    quad = PlaneEndo.parse("z2", "z1 + z2^2")
    rng = random.Random(6)
    sigmas = [quad] + [random_lane(rng, rng.randint(1, 3)) for _ in range(10)]
    infinite = 0
    for s in sigmas:
        v = classify_gk_plane(s)
        infinite += v.kind == INFINITY and v.certificate.verify(s)
    spec = GWASpec(P2, quad, P2.one())
    ranks = [exponential_witness(spec, P2.var(1), p) for p in range(5)]
    gens = [spec.one, spec.base(P2.var(0)), spec.base(P2.var(1)), spec.x]
    rep = growth_sequence(spec, gens, 9)
    secs = time.perf_counter() - start
    ok = (infinite == len(sigmas) and ranks == [2 ** (p + 1) for p in range(5)]
          and isinstance(rep.fit, ExponentialFit) and secs < 300)
    assert record(6, ok, f"{infinite}/{len(sigmas)} gkdim infinity, witness ranks {ranks}, "
                         f"M = 9 verdict {rep.fit.kind if rep.fit else None} ({secs:.1f} s)")


def _weight_bound(spec):
    """Smallest weight bound whose monomial span holds z1, z2, a and sigma(a)."""
    g = spec.sigma.f1 - P2.var(0) * spec.sigma.f1.coeff((1, 0))
    d = max(1, g.total_degree())
    return max([d] + [d * i + j for i, j in spec.a.monomials()])


def test_criterion_07_sandwich():
    start = time.perf_counter()
    specs = triangular_specs(random.Random(7), 10)
    failed = 0
    total = 0
    for spec in specs:
        v = triangular_stable_subspace(spec, _weight_bound(spec))
        checks = sandwich_check(spec, v, 5)
        total += len(checks)
        failed += sum(not c.passed for c in checks)
    secs = time.perf_counter() - start
    ok = failed == 0 and total == 10 * 2 * 5 and secs < 300
    assert record(7, ok, f"{total - failed}/{total} sandwich inequalities hold for m <= 5 "
                         f"({secs:.1f} s)")


def test_criterion_08_heisenberg():
    start = time.perf_counter()
    fits = {}
    for m in (0, 1, 2, -2):
        spec = make_heisenberg(m)
        fits[m] = fit_value(growth_sequence(spec, laurent_gens(spec), 12))
    kinds = {m: classify_gk_laurent(make_heisenberg(m).sigma).kind for m in (0, 1, 2, -2, 3)}
    secs = time.perf_counter() - start
    ok = abs(fits[0] - 3) <= TOL and all(abs(fits[m] - 4) <= TOL for m in (1, 2, -2))
    ok &= kinds[0] == EXACTLY_N_PLUS_ONE
    ok &= all(kinds[m] == AT_LEAST_N_PLUS_TWO for m in (1, 2, -2, 3))
    ok &= secs < 600
    shown = ", ".join(f"H{m}: {f:.2f}" for m, f in fits.items())
    assert record(8, ok, f"fits {shown}; verdicts match ({secs:.1f} s)")


def test_criterion_09_smc():
    start = time.perf_counter()
    ok = all(smc_constant(n) == smc_constant_recursive(n) for n in range(7))
    rng = random.Random(9)
    passed = 0
    for k in range(50):
        n = 1 + k % 2
        ring = Ring(POLYNOMIAL, n)
        a = random_poly(rng, ring, 3, 3, 3, nonzero=True)
        extra = [random_poly(rng, ring, 3, 3, 3, nonzero=True)
                 for _ in range(rng.randint(0, 2))]
        passed += verify_smc_instance(n, a, extra, m_max=6).all_pass
    secs = time.perf_counter() - start
    ok &= passed == 50 and secs < 600
    assert record(9, ok, f"constants match recursion for n <= 6, {passed}/50 instances "
                         f"pass at m_max = 6 ({secs:.1f} s)")


def _laurent_laws(rng):
    n = rng.randint(1, 3)
    s, t, u = (random_laurent_auto(rng, n) for _ in range(3))
    ident = LaurentAuto.identity(n)
    ok = compose(compose(s, t), u) == compose(s, compose(t, u))
    ok &= compose(inverse(s), s) == ident == compose(s, inverse(s))
    p = random_poly(rng, Ring(LAURENT, n), 2, 3, 4)
    ok &= apply(compose(t, s), p) == apply(t, apply(s, p))
    alpha = [Fraction(rng.randint(1, 6), rng.randint(1, 6)) for _ in range(n)]
    m, k = random_unimodular(rng, n), random_unimodular(rng, n)
    ok &= power_mat(power_mat(alpha, m), k) == power_mat(alpha, intmat.mat_mul(m, k))
    return ok


def _gwa_laws(rng, specs):
    spec = specs[rng.randrange(len(specs))]
    u, v, w = (random_element(rng, spec, 3, 2, components=2) for _ in range(3))
    ok = (u * v) * w == u * (v * w)
    i, j = rng.randint(-3, 3), rng.randint(-3, 3)
    d = random_poly(rng, spec.ring, 2, 3, 3, nonzero=True)
    e = random_poly(rng, spec.ring, 2, 3, 3, nonzero=True)
    ok &= set((spec.element({i: d}) * spec.element({j: e})).comps) <= {i + j}
    return ok


def _gr_dimension(rng):
    n = rng.randint(1, 3)
    ring = Ring(POLYNOMIAL, n)
    polys = [random_poly(rng, ring, 3, 3, 4, nonzero=True) for _ in range(rng.randint(1, 6))]
    w = FilteredSubspace.spanned_by(polys)
    return gr_subspace(w).dim == w.dim


def test_criterion_10_algebraic_laws():
    start = time.perf_counter()
    rng = random.Random(10)
    specs = [make_weyl(), make_heisenberg(1), make_heisenberg(-1, 2, 3, "1 + z1")] + \
        triangular_specs(random.Random(11), 3)
    cases = 200
    laurent_ok = sum(_laurent_laws(rng) for _ in range(cases))
    gwa_ok = sum(_gwa_laws(rng, specs) for _ in range(cases))
    gr_ok = sum(_gr_dimension(rng) for _ in range(cases))
    secs = time.perf_counter() - start
    ok = laurent_ok == gwa_ok == gr_ok == cases and secs < 300
    assert record(10, ok, f"laurent laws {laurent_ok}/{cases}, gwa associativity and grading "
                          f"{gwa_ok}/{cases}, gr dimension {gr_ok}/{cases} ({secs:.1f} s)")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
