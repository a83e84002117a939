"""Sensitive multiplicity condition for polynomial rings, checked on instances.

P_n satisfies dim(W^m) >= c_n dim(W) m^n for every finite-dimensional W
containing V_n a with V_n = k + k z1 + ... + k zn and a != 0, where
c_n = 1 / (2^n 5^(n(n+1)/2) n!).  The functions here compute both sides
exactly; a failing instance indicates a bug, not a counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import List, Optional, Sequence, Tuple

from .linalg import Echelon, Subspace
from .poly import POLYNOMIAL, MultiPoly, Ring, Scalar, grlex_key


def smc_constant(n: int) -> Fraction:
    """c_n = 1 / (2^n * 5^(n(n+1)/2) * n!)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return Fraction(1, 2 ** n * 5 ** (n * (n + 1) // 2) * factorial(n))


def smc_constant_recursive(n: int) -> Fraction:
    """c_0 = 1 and c_(k+1) = c_k / (2 (k+1) 5^(k+1))."""
    c = Fraction(1)
    for k in range(n):
        c = c / (2 * (k + 1) * 5 ** (k + 1))
    return c


def case1_constant(n: int) -> Fraction:
    """c' = c_(n-1) / (2n), the bound for sums W_1 z^p1 + ... + W_l z^pl in P_n."""
    return smc_constant(n - 1) / (2 * n)


def _vec(p: MultiPoly):
    return dict(p.items())


def _poly(vec, ring: Ring) -> MultiPoly:
    return MultiPoly(vec, ring.n, ring.kind)


def filtration_key(var: int):
    """Term order comparing the exponent of z_(var+1) first."""
    def key(mono):
        return (mono[var], sum(mono), mono)
    return key


@dataclass(frozen=True)
class FilteredSubspace:
    """A subspace of P_n with the filtration by degree in z_(var+1)."""

    ring: Ring
    space: Subspace
    var: int

    @classmethod
    def spanned_by(cls, polys: Sequence[MultiPoly], var: Optional[int] = None):
        if not polys:
            raise ValueError("need at least one polynomial")
        ring = polys[0].ring
        if ring.kind != POLYNOMIAL:
            raise ValueError("filtered subspaces live in a polynomial ring")
        var = ring.n - 1 if var is None else var
        return cls(ring, Subspace([_vec(p) for p in polys], filtration_key(var)), var)

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis(self) -> List[MultiPoly]:
        return [_poly(r, self.ring) for r in self.space.rows]


def gr_subspace(w: FilteredSubspace) -> Subspace:
    """Span of the top-filtration parts of an echelon basis of W.

    With a term order that compares the z-degree first, the pivots of an
    echelon basis have distinct leading monomials, so the top z-degree parts are
    independent and dim gr(W) = dim W.
    """
    ech = Echelon(filtration_key(w.var))
    for row in w.space.rows:
        ech.add(row)
    tops = []
    for row in ech.pivots.values():
        top = max(m[w.var] for m in row)
        tops.append({m: c for m, c in row.items() if m[w.var] == top})
    return Subspace(tops, grlex_key)


def product_dims(polys: Sequence[MultiPoly], m_max: int) -> List[int]:
    """dim W^m for m = 0..m_max (W^0 = k)."""
    ring = polys[0].ring
    ech = Echelon(grlex_key)
    gens = []
    for p in polys:
        if ech.add(_vec(p)):
            gens.append(p)
    dims = [1]
    level = [ring.one()]
    for _ in range(m_max):
        ech = Echelon(grlex_key)
        nxt = []
        for b in level:
            for g in gens:
                q = b * g
                if ech.add(_vec(q)):
                    nxt.append(q)
        dims.append(ech.rank)
        level = nxt
    return dims


@dataclass(frozen=True)
class SMCRow:
    m: int
    dim: int
    threshold: Fraction

    @property
    def margin(self) -> Fraction:
        return self.dim - self.threshold

    @property
    def passed(self) -> bool:
        return self.dim >= self.threshold


@dataclass(frozen=True)
class SMCReport:
    n: int
    m_max: int
    constant: Fraction
    dim_w: int
    rows: Tuple[SMCRow, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def first_failure(self) -> Optional[int]:
        return next((r.m for r in self.rows if not r.passed), None)

    def to_json(self) -> dict:
        return {"n": self.n, "m_max": self.m_max, "constant": str(self.constant),
                "dim_w": self.dim_w,
                "rows": [{"m": r.m, "dim": r.dim, "threshold": str(r.threshold),
                          "margin": str(r.margin), "pass": r.passed} for r in self.rows],
                "verdict": "all-pass" if self.all_pass else f"first failure at m = {self.first_failure}",
                "note": "instances of a proven inequality; a failure indicates a bug"}


def _report(n: int, polys: Sequence[MultiPoly], c: Fraction, m_max: int) -> SMCReport:
    dims = product_dims(polys, m_max)
    dim_w = dims[1]
    rows = tuple(SMCRow(m, dims[m], c * dim_w * m ** n) for m in range(1, m_max + 1))
    return SMCReport(n, m_max, c, dim_w, rows)


def verify_smc_instance(n: int, a: MultiPoly, extra: Sequence[MultiPoly] = (),
                        m_max: int = 6) -> SMCReport:
    """Check dim(W^m) >= c_n dim(W) m^n for W = V_n a + span(extra)."""
    ring = Ring(POLYNOMIAL, n)
    if a.ring != ring:
        raise ValueError(f"a must lie in k[z1..z{n}]")
    if a.is_zero():
        raise ValueError("a must be nonzero")
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    polys = [a] + [ring.var(i) * a for i in range(n)] + list(extra)
    return _report(n, polys, smc_constant(n), m_max)


def case1_direct_sum_check(n: int, parts: Sequence[Tuple[Sequence[MultiPoly], int]],
                           m_max: int) -> SMCReport:
    """W = W_1 z^p1 + ... + W_l z^pl in P_n with W_i in P_(n-1), l >= 2, p_i increasing;
    check dim(W^m) >= c_(n-1)/(2n) dim(W) m^n."""
    if n < 1:
        raise ValueError("n must be positive")
    if len(parts) < 2:
        raise ValueError("the direct-sum case needs at least two parts")
    ps = [p for _, p in parts]
    if any(b <= a for a, b in zip(ps, ps[1:])) or ps[0] < 0:
        raise ValueError("exponents must be non-negative and strictly increasing")
    ring = Ring(POLYNOMIAL, n)
    polys = []
    for w_i, p in parts:
        if not w_i:
            raise ValueError("each part needs at least one polynomial")
        for q in w_i:
            if q.ring != Ring(POLYNOMIAL, n - 1):
                raise ValueError(f"parts must lie in k[z1..z{n - 1}]")
            polys.append(MultiPoly({m + (p,): c for m, c in q.items()}, n, POLYNOMIAL))
    return _report(n, polys, case1_constant(n), m_max)
