"""Automorphisms of the Laurent polynomial ring L_n.

Every automorphism is sigma = (M, alpha) with M in GL_n(Z) and alpha a vector
of nonzero scalars, acting by z_i -> alpha_i * z^(column i of M).  For a scalar
vector alpha and an integer column b we write alpha^b = prod alpha_i^b_i, and
alpha^M is taken column by column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from . import intmat
from .intmat import IntMatrix, OrderVerdict
from .poly import LAURENT, MultiPoly, Ring, Scalar, as_scalar, substitute


def power_vec(alpha: Sequence[Scalar], b: Sequence[int]) -> Scalar:
    """alpha^b = alpha_1^b_1 * ... * alpha_n^b_n (exact, exponents may be negative)."""
    if len(alpha) != len(b):
        raise ValueError("length mismatch between scalars and exponent vector")
    out: Scalar = 1
    for a, e in zip(alpha, b):
        if a == 0:
            raise ValueError("scalar vector entries must be nonzero")
        if e:
            out = out * (Fraction(a) ** e if e < 0 else a ** e)
    return as_scalar(Fraction(out))


def power_mat(alpha: Sequence[Scalar], m: IntMatrix) -> Tuple[Scalar, ...]:
    """alpha^M: the vector (alpha^(column 1), ..., alpha^(column n))."""
    if len(m) != len(alpha):
        raise ValueError("dimension mismatch between scalars and matrix")
    return tuple(power_vec(alpha, intmat.column(m, j)) for j in range(len(m[0])))


def _vec_mul(u, v) -> Tuple[Scalar, ...]:
    return tuple(as_scalar(Fraction(a) * b) for a, b in zip(u, v))


@dataclass(frozen=True)
class LaurentAuto:
    """sigma = (M, alpha): z_i -> alpha_i * z^(M[-, i])."""

    matrix: IntMatrix
    alpha: Tuple[Scalar, ...]

    def __post_init__(self):
        m = intmat.as_matrix(self.matrix)
        alpha = tuple(as_scalar(a) for a in self.alpha)
        if len(alpha) != len(m):
            raise ValueError("alpha must have one entry per variable")
        if any(a == 0 for a in alpha):
            raise ValueError("alpha entries must be nonzero")
        d = intmat.det(m)
        if d not in (1, -1):
            raise ValueError(f"matrix is not unimodular (det = {d}); not an automorphism")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "alpha", alpha)

    @property
    def n(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, n: int) -> "LaurentAuto":
        return cls(intmat.identity(n), (1,) * n)

    def images(self) -> Tuple[MultiPoly, ...]:
        ring = Ring(LAURENT, self.n)
        return tuple(ring.monomial(intmat.column(self.matrix, i), self.alpha[i])
                     for i in range(self.n))

    def __call__(self, p: MultiPoly) -> MultiPoly:
        return apply(self, p)

    def to_json(self) -> dict:
        return {"n": self.n, "matrix": [list(r) for r in self.matrix],
                "alpha": [str(Fraction(a)) for a in self.alpha]}

    @classmethod
    def from_json(cls, obj: dict) -> "LaurentAuto":
        m = obj["matrix"]
        alpha = obj.get("alpha", ["1"] * len(m))
        auto = cls(m, tuple(as_scalar(Fraction(str(a))) for a in alpha))
        if "n" in obj and obj["n"] != auto.n:
            raise ValueError(f"declared n = {obj['n']} but matrix has size {auto.n}")
        return auto


def apply(sigma: LaurentAuto, p: MultiPoly) -> MultiPoly:
    """Image of a Laurent polynomial under sigma."""
    if p.n != sigma.n:
        raise ValueError(f"arity mismatch: automorphism of L_{sigma.n}, element of ring with {p.n} variables")
    if p.kind != LAURENT:
        p = p.as_laurent()
    return substitute(p, sigma.images())


def compose(tau: LaurentAuto, sigma: LaurentAuto) -> LaurentAuto:
    """tau*sigma = (N M, beta^M alpha), so that (tau sigma)(p) = tau(sigma(p))."""
    if tau.n != sigma.n:
        raise ValueError("arity mismatch in composition")
    return LaurentAuto(intmat.mat_mul(tau.matrix, sigma.matrix),
                       _vec_mul(power_mat(tau.alpha, sigma.matrix), sigma.alpha))


def inverse(sigma: LaurentAuto) -> LaurentAuto:
    """sigma^-1 = (M^-1, alpha^(-M^-1))."""
    minv = intmat.inverse_unimodular(sigma.matrix)
    beta = power_mat(sigma.alpha, minv)
    return LaurentAuto(minv, tuple(as_scalar(1 / Fraction(b)) for b in beta))


def iterate(sigma: LaurentAuto, m: int) -> LaurentAuto:
    """sigma^m in closed form: (M^m, alpha^(I + M + ... + M^(m-1))).

    Negative m iterates the inverse.
    """
    if m < 0:
        return iterate(inverse(sigma), -m)
    n = sigma.n
    total = tuple((0,) * n for _ in range(n))
    power = intmat.identity(n)
    for _ in range(m):
        total = intmat.mat_add(total, power)
        power = intmat.mat_mul(power, sigma.matrix)
    return LaurentAuto(power, power_mat(sigma.alpha, total))


def order_verdict(m: Sequence[Sequence[int]]) -> OrderVerdict:
    """Finite or infinite order of an integer matrix (see intmat.matrix_order)."""
    return intmat.matrix_order(m)


def is_locally_algebraic(sigma: LaurentAuto) -> bool:
    """A Laurent automorphism is locally algebraic iff its matrix has finite order."""
    return order_verdict(sigma.matrix).finite


EXACTLY_N_PLUS_ONE = "exactly_n_plus_one"
AT_LEAST_N_PLUS_TWO = "at_least_n_plus_two"


@dataclass(frozen=True)
class GKVerdictLaurent:
    """GK dimension of L_n(sigma, a): exactly n+1, or at least n+2."""

    kind: str
    n: int
    basis_verdict: OrderVerdict

    @property
    def gkdim_text(self) -> str:
        if self.kind == EXACTLY_N_PLUS_ONE:
            return f"gkdim = n+1 = {self.n + 1}"
        return f"gkdim >= n+2 = {self.n + 2}"

    def decision_path(self) -> Tuple[str, ...]:
        path = list(self.basis_verdict.decision_path)
        if self.kind == EXACTLY_N_PLUS_ONE:
            path.append("matrix has finite order, so sigma is locally algebraic and "
                        "GKdim = GKdim(L_n) + 1")
        else:
            path.append("matrix has infinite order, so sigma is not locally algebraic; "
                        "the sensitive multiplicity condition of L_n gives GKdim >= GKdim(L_n) + 2")
        return tuple(path)

    def to_json(self) -> dict:
        out = {"verdict": self.gkdim_text, "n": self.n}
        if self.basis_verdict.finite:
            out["order"] = self.basis_verdict.order
        else:
            out["witness"] = self.basis_verdict.witness
        return out


def classify_gk_laurent(sigma: LaurentAuto) -> GKVerdictLaurent:
    """GK-dimension verdict for L_n(sigma, a); only the matrix part matters."""
    verdict = order_verdict(sigma.matrix)
    kind = EXACTLY_N_PLUS_ONE if verdict.finite else AT_LEAST_N_PLUS_TWO
    return GKVerdictLaurent(kind, sigma.n, verdict)
