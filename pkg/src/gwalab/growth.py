"""Growth functions of finitely generated subspaces of a GWA.

For a subframe V (a finite-dimensional subspace containing 1) the growth
function is d_V(m) = dim(V^0 + V^1 + ... + V^m) = dim V^m.  Dimensions are
exact; only the final exponent fit uses floating point.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .gwa import (GWAElement, GWASpec, basis_elements, column_key, gwa_mul, span)
from .linalg import ColumnBasis, Echelon, Subspace
from .plane import PlaneEndo, degree_sequence, is_triangular
from .poly import MultiPoly

FIT_MIN_M = 6
RATIO_FLOOR = 1.3


@dataclass(frozen=True)
class Check:
    """A named inequality and whether it held."""

    name: str
    passed: bool
    m: Optional[int] = None
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        for k in ("m", "lhs", "rhs"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class PolynomialFit:
    """Least-squares slope of log d(m) against log m over the top half of the range."""

    estimate: Fraction
    increment_estimate: Optional[Fraction] = None

    kind = "polynomial"

    def to_json(self) -> dict:
        return {"kind": "polynomial", "exponent": f"{float(self.estimate):.2f}"}


@dataclass(frozen=True)
class ExponentialFit:
    """Dimensions grow faster than any fitted power; witness is the last dimension."""

    witness: int

    kind = "exponential"

    def to_json(self) -> dict:
        return {"kind": "exponential", "witness": self.witness}


@dataclass
class GrowthReport:
    dims: Tuple[int, ...]
    fit: Union[PolynomialFit, ExponentialFit, None]
    checks: Tuple[Check, ...] = ()
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"dims": list(self.dims),
                "fit": self.fit.to_json() if self.fit is not None else None,
                "checks": [c.to_json() for c in self.checks]}


def _as_elements(spec: GWASpec, gens) -> List[GWAElement]:
    if isinstance(gens, Subspace):
        return list(basis_elements(spec, gens))
    out = []
    for g in gens:
        if not isinstance(g, GWAElement):
            g = spec.base(g)
        if g.spec is not spec:
            raise ValueError("generator belongs to a different spec")
        out.append(g)
    return out


def filtered_dims(spec: GWASpec, gens, max_degree: int) -> List[int]:
    """dim V^m for m = 0..max_degree; V must contain 1, so V^m is increasing.

    V^m = V^(m-1) + N V where N are the basis vectors added at step m-1, so only
    new vectors are multiplied at each step.  Multiplying by 1 adds nothing.
    With homogeneous generators every product lies in a single X_i component
    and the components are eliminated separately, one batch per step.
    """
    elems = _as_elements(spec, gens)
    gen_space = span(spec, elems)
    if spec.one.to_vector() not in gen_space:
        raise ValueError("generating subspace must contain 1")
    gens_basis = _independent(spec, [spec.one] + elems)[1:]
    if all(g.is_homogeneous() for g in gens_basis):
        return _graded_dims(spec, gens_basis, max_degree)
    ech = Echelon(column_key)
    ech.add(spec.one.to_vector())
    dims = [1]
    fresh = [spec.one]
    for _ in range(max_degree):
        new = []
        for b in fresh:
            for g in gens_basis:
                p = gwa_mul(spec, b, g)
                if ech.add(p.to_vector()):
                    new.append(p)
        dims.append(ech.rank)
        fresh = new
    return dims


def _graded_dims(spec: GWASpec, gens_basis: Sequence[GWAElement], max_degree: int) -> List[int]:
    blocks = {0: ColumnBasis(column_key)}
    blocks[0].extend([spec.one.to_vector()])
    dims = [1]
    fresh = [spec.one]
    for _ in range(max_degree):
        batches = {}
        for b in fresh:
            for g in gens_basis:
                p = gwa_mul(spec, b, g)
                if not p.is_zero():
                    batches.setdefault(p.degrees()[0], []).append(p)
        new = []
        for i, batch in batches.items():
            basis = blocks.setdefault(i, ColumnBasis(column_key))
            keep = basis.extend([p.to_vector() for p in batch])
            new.extend(p for p, k in zip(batch, keep) if k)
        dims.append(dims[-1] + len(new))
        fresh = new
    return dims


def _independent(spec: GWASpec, elems: Sequence[GWAElement]) -> List[GWAElement]:
    ech = Echelon(column_key)
    out = []
    for e in elems:
        if ech.add(e.to_vector()):
            out.append(e)
    return out


def power_dims(spec: GWASpec, gens, max_degree: int) -> List[int]:
    """dim W^m for m = 0..max_degree without assuming 1 in W (W^0 = k)."""
    elems = _independent(spec, _as_elements(spec, gens))
    dims = [1]
    level = [spec.one]
    for _ in range(max_degree):
        ech = Echelon(column_key)
        nxt = []
        for b in level:
            for g in elems:
                p = gwa_mul(spec, b, g)
                if ech.add(p.to_vector()):
                    nxt.append(p)
        dims.append(ech.rank)
        level = nxt
    return dims


def _lstsq(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float, float]:
    """Slope, intercept and residual sum of squares of a least-squares line."""
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    icpt = my - slope * mx
    rss = sum((y - icpt - slope * x) ** 2 for x, y in zip(xs, ys))
    return slope, icpt, rss


def fit_window(max_degree: int) -> range:
    return range(max(1, math.ceil(max_degree / 2)), max_degree + 1)


def fit_exponent(dims: Sequence[int]) -> float:
    """Slope of log d(m) versus log m for m in [ceil(M/2), M]."""
    ms = [m for m in fit_window(len(dims) - 1) if dims[m] > 0]
    slope, _, _ = _lstsq([math.log(m) for m in ms], [math.log(dims[m]) for m in ms])
    return slope


def is_exponential(dims: Sequence[int]) -> bool:
    """Exponential when every ratio d(m+1)/d(m) in the top half is at least 1.3
    and log d(m) is fitted better by a line in m than by a line in log m."""
    big_m = len(dims) - 1
    ms = list(fit_window(big_m))
    if any(dims[m] < RATIO_FLOOR * dims[m - 1] for m in ms if m >= 1):
        return False
    logs = [math.log(dims[m]) for m in ms]
    _, _, rss_poly = _lstsq([math.log(m) for m in ms], logs)
    _, _, rss_exp = _lstsq([float(m) for m in ms], logs)
    return rss_exp < rss_poly


def classify_dims(dims: Sequence[int]):
    if len(dims) - 1 < FIT_MIN_M:
        return None
    if is_exponential(dims):
        return ExponentialFit(dims[-1])
    est = Fraction(fit_exponent(dims)).limit_denominator(1000)
    incs = [dims[0]] + [dims[m] - dims[m - 1] for m in range(1, len(dims))]
    inc = None
    if all(v > 0 for v in incs[1:]):
        inc = Fraction(fit_exponent(incs)).limit_denominator(1000)
    return PolynomialFit(est, inc)


def growth_sequence(spec: GWASpec, gens, max_degree: int = 10) -> GrowthReport:
    """Exact growth function of the subframe spanned by gens, with a fit."""
    start = time.perf_counter()
    dims = tuple(filtered_dims(spec, gens, max_degree))
    fit = classify_dims(dims)
    checks = [Check("dims-nondecreasing",
                    all(dims[m] <= dims[m + 1] for m in range(len(dims) - 1)))]
    if isinstance(fit, PolynomialFit) and fit.increment_estimate is not None:
        gap = fit.estimate - fit.increment_estimate
        checks.append(Check("increment-exponent-one-less", abs(gap - 1) <= Fraction(1, 2),
                            detail=f"fit {float(fit.estimate):.2f}, increments "
                                   f"{float(fit.increment_estimate):.2f}"))
    return GrowthReport(dims, fit, tuple(checks), time.perf_counter() - start)


# ---- sandwich bounds --------------------------------------------------------

def triangular_stable_subspace(spec: GWASpec, weight_bound: int) -> Subspace:
    """Span of z1^i z2^j with d i + j <= weight_bound, d = deg g for a
    triangular sigma = (l z1 + g(z2), m z2 + c); such spans are sigma-stable."""
    sigma = spec.sigma
    if not isinstance(sigma, PlaneEndo) or not is_triangular(sigma):
        raise ValueError("needs a triangular automorphism of k[z1, z2]")
    g = sigma.f1 - sigma.f1.ring.var(0) * sigma.f1.coeff((1, 0))
    d = max(1, g.total_degree() if not g.is_zero() else 1)
    elems = []
    for i in range(weight_bound // d + 1):
        for j in range(weight_bound - d * i + 1):
            elems.append(spec.base(spec.ring.monomial((i, j))))
    return span(spec, elems)


def is_sigma_stable(spec: GWASpec, v: Subspace) -> bool:
    images = [spec.base(spec.twist(e.component(0), 1)) for e in basis_elements(spec, v)]
    return span(spec, images) == v


def sandwich_check(spec: GWASpec, v: Subspace, max_m: int) -> List[Check]:
    """For sigma-stable V containing 1, a, sigma(a) and W = V + kx + ky check
    (m+1) dim V^m < dim W^(2m) and dim W^m <= (2m+1) dim V^m for 1 <= m <= max_m."""
    basis = basis_elements(spec, v)
    if any(set(e.comps) - {0} for e in basis):
        raise ValueError("V must lie in the base ring")
    if not is_sigma_stable(spec, v):
        raise ValueError("V is not sigma-stable")
    for name, d in (("1", spec.ring.one()), ("a", spec.a), ("sigma(a)", spec.twist(spec.a, 1))):
        if spec.base(d).to_vector() not in v:
            raise ValueError(f"V must contain {name}")
    v_dims = filtered_dims(spec, basis, max_m)
    w = list(basis) + [spec.x, spec.y]
    w_dims = filtered_dims(spec, w, 2 * max_m)
    checks = []
    for m in range(1, max_m + 1):
        checks.append(Check("sandwich-lower", (m + 1) * v_dims[m] < w_dims[2 * m], m,
                            (m + 1) * v_dims[m], w_dims[2 * m],
                            "(m+1) dim V^m < dim W^(2m)"))
        checks.append(Check("sandwich-upper", w_dims[m] <= (2 * m + 1) * v_dims[m], m,
                            w_dims[m], (2 * m + 1) * v_dims[m],
                            "dim W^m <= (2m+1) dim V^m"))
    return checks


# ---- exponential growth witness ------------------------------------------------

def exponential_words(spec: GWASpec, z: MultiPoly, p: int) -> List[GWAElement]:
    """All products z^e0 x z^e1 x ... x z^ep with e_j in {0, 1}."""
    zel = spec.base(z)
    x = spec.x
    words = [spec.one, zel]
    for _ in range(p):
        nxt = []
        for w in words:
            wx = gwa_mul(spec, w, x)
            nxt.append(wx)
            nxt.append(gwa_mul(spec, wx, zel))
        words = nxt
    return words


def exponential_witness(spec: GWASpec, z: MultiPoly, p: int) -> int:
    """Rank of the 2^(p+1) words z^e0 x z^e1 ... x z^ep."""
    words = exponential_words(spec, z, p)
    ech = Echelon(column_key)
    for w in words:
        ech.add(w.to_vector())
    return ech.rank


def degree_doubling_holds(spec: GWASpec, z: MultiPoly, p: int) -> bool:
    """deg sigma^(m+1)(z) >= 2 deg sigma^m(z) for m < p (advisory hypothesis)."""
    degs = [spec.twist(z, m).total_degree() for m in range(p + 1)]
    return all(degs[m + 1] >= 2 * degs[m] for m in range(p))
