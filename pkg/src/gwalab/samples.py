"""Random instances for property tests, acceptance runs and demos.

Every generator takes a ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Sequence

from . import intmat
from .gwa import GWAElement, GWASpec
from .laurent import LaurentAuto
from .plane import P2, PI, Z1, Z2, PlaneEndo, plane_compose, plane_inverse
from .poly import LAURENT, MultiPoly, Ring, as_scalar


def random_scalar(rng: random.Random, height: int = 3, nonzero: bool = True):
    while True:
        num = rng.randint(-height, height)
        den = rng.randint(1, height)
        if num or not nonzero:
            return as_scalar(Fraction(num, den))


def random_poly(rng: random.Random, ring: Ring, max_degree: int = 2, height: int = 3,
                terms: int = 3, nonzero: bool = False) -> MultiPoly:
    """Random element with up to ``terms`` terms of total degree <= max_degree
    (exponents in [-max_degree, max_degree] for Laurent rings)."""
    while True:
        out = {}
        for _ in range(rng.randint(1, terms)):
            if ring.kind == LAURENT:
                mono = tuple(rng.randint(-max_degree, max_degree) for _ in range(ring.n))
            else:
                budget = rng.randint(0, max_degree)
                mono = [0] * ring.n
                for _ in range(budget):
                    if ring.n:
                        mono[rng.randrange(ring.n)] += 1
                mono = tuple(mono)
            out[mono] = random_scalar(rng, height)
        p = MultiPoly(out, ring.n, ring.kind)
        if p or not nonzero:
            return p


def random_unimodular(rng: random.Random, n: int, steps: int = 6, bound: int = 2):
    """Product of random elementary integer row operations and sign flips."""
    m = [list(r) for r in intmat.identity(n)]
    for _ in range(steps):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        f = rng.randint(-bound, bound)
        m[i] = [a + f * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        k = rng.randrange(n)
        m[k] = [-v for v in m[k]]
    return intmat.as_matrix(m)


def companion(poly: Sequence[int]):
    """Companion matrix of a monic integer polynomial (lowest degree first)."""
    n = len(poly) - 1
    rows = []
    for i in range(n):
        row = [0] * n
        if i > 0:
            row[i - 1] = 1
        row[n - 1] = -poly[i]
        rows.append(row)
    return intmat.as_matrix(rows)


def random_conjugate(rng: random.Random, m, steps: int = 6):
    u = random_unimodular(rng, len(m), steps)
    return intmat.mat_mul(intmat.mat_mul(intmat.inverse_unimodular(u), m), u)


def random_laurent_auto(rng: random.Random, n: int, height: int = 3) -> LaurentAuto:
    return LaurentAuto(random_unimodular(rng, n, 4, 1),
                       tuple(random_scalar(rng, height) for _ in range(n)))


def random_univariate(rng: random.Random, degree: int, height: int = 3) -> MultiPoly:
    """Polynomial in z2 of exact degree ``degree``."""
    out = {(0, degree): random_scalar(rng, height)}
    for j in range(degree):
        if rng.random() < 0.6:
            out[(0, j)] = random_scalar(rng, height)
    return MultiPoly(out, 2)


def random_triangular(rng: random.Random, degrees=(2, 3), height: int = 3) -> PlaneEndo:
    """(l z1 + g(z2), m z2 + c) with deg g drawn from ``degrees``."""
    g = random_univariate(rng, rng.choice(list(degrees)), height)
    l1 = random_scalar(rng, height)
    l2 = random_scalar(rng, height)
    c = random_scalar(rng, height, nonzero=False)
    return PlaneEndo(Z1 * l1 + g, Z2 * l2 + c)


def random_affine(rng: random.Random, height: int = 2) -> PlaneEndo:
    while True:
        a, b, c, d = (random_scalar(rng, height, nonzero=False) for _ in range(4))
        if a * d - b * c != 0:
            break
    return PlaneEndo(Z1 * a + Z2 * b + random_scalar(rng, height, False),
                     Z1 * c + Z2 * d + random_scalar(rng, height, False))


def random_tame(rng: random.Random, factors: int = 3, height: int = 2,
                max_degree: int = 2) -> PlaneEndo:
    """Product of random affine, elementary and swap factors."""
    result = PlaneEndo(Z1, Z2)
    for _ in range(factors):
        kind = rng.choice(["affine", "elementary", "swap"])
        if kind == "affine":
            f = random_affine(rng, height)
        elif kind == "elementary":
            f = PlaneEndo(Z1 + random_univariate(rng, rng.randint(1, max_degree), height), Z2)
        else:
            f = PI
        result = plane_compose(result, f)
    return result


def conjugate(sigma: PlaneEndo, delta: PlaneEndo) -> PlaneEndo:
    """delta^-1 sigma delta."""
    return plane_compose(plane_compose(plane_inverse(delta), sigma), delta)


def random_lane(rng: random.Random, s: int, height: int = 2) -> PlaneEndo:
    """tau_1 pi ... tau_s pi with triangular tau_i of degree 2 or 3."""
    out = PlaneEndo(Z1, Z2)
    for _ in range(s):
        out = plane_compose(plane_compose(out, random_triangular(rng, (2, 3), height)), PI)
    return out


def random_element(rng: random.Random, spec: GWASpec, max_x_degree: int = 3,
                   coeff_degree: int = 2, height: int = 3, components: int = 2) -> GWAElement:
    comps = {}
    for _ in range(rng.randint(1, components)):
        i = rng.randint(-max_x_degree, max_x_degree)
        comps[i] = random_poly(rng, spec.ring, coeff_degree, height, 3)
    return spec.element(comps)


def triangular_specs(rng: random.Random, count: int, degrees=(2, 3)) -> List[GWASpec]:
    """GWAs over k[z1, z2] with random triangular sigma and a in {1, z1, z2, random}."""
    specs = []
    for _ in range(count):
        sigma = random_triangular(rng, degrees)
        a = rng.choice([P2.one(), Z1, Z2, random_poly(rng, P2, 2, 3, 3, nonzero=True)])
        specs.append(GWASpec(P2, sigma, a, name=f"triangular {sigma}"))
    return specs
