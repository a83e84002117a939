"""Exact integer matrices and the order test for GL_n(Z).

Matrices are tuples of row tuples of Python ints.  Univariate integer
polynomials (characteristic polynomials, cyclotomics) are coefficient lists,
lowest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

IntMatrix = Tuple[Tuple[int, ...], ...]

# Largest finite order of an element of GL_n(Z) for even n <= 20; the value for
# an odd n = 2p + 1 equals the value for 2p.
_MAX_ORDER_EVEN = {2: 6, 4: 12, 6: 30, 8: 60, 10: 120, 12: 210, 14: 420, 16: 840,
                   18: 1260, 20: 2520}


def max_finite_order(n: int) -> Optional[int]:
    """Largest finite order of an element of GL_n(Z), tabulated for n <= 20."""
    if n < 1 or n > 20:
        return None
    if n == 1:
        return 2
    return _MAX_ORDER_EVEN[n - (n % 2)]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    m = tuple(tuple(int(v) for v in row) for row in rows)
    if not m or any(len(row) != len(m) for row in m):
        raise ValueError("matrix must be square and non-empty")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch in matrix product")
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_add(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_pow(a: IntMatrix, k: int) -> IntMatrix:
    """a^k for k >= 0, or for k < 0 when a is unimodular."""
    if k < 0:
        return mat_pow(inverse_unimodular(a), -k)
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a))


def column(a: IntMatrix, j: int) -> Tuple[int, ...]:
    return tuple(row[j] for row in a)


def norm(a: IntMatrix) -> int:
    """Maximum absolute entry."""
    return max(abs(v) for row in a for v in row)


def det(a: IntMatrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse_unimodular(a: IntMatrix) -> IntMatrix:
    """Inverse of a matrix with determinant +-1 (Gauss-Jordan over Q)."""
    n = len(a)
    d = det(a)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det = {d})")
    m = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [v / p for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(int(v) for v in row[n:]) for row in m)


def charpoly(a: IntMatrix) -> List[int]:
    """Characteristic polynomial det(t I - a), monic, lowest degree first.

    Uses the Faddeev-LeVerrier recursion with exact rationals.
    """
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    am = [[Fraction(v) for v in row] for row in a]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum(am[i][t] * mk[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)]
        for i in range(n):
            prod[i][i] += c
        mk = prod
        am_mk = [[sum(am[i][t] * mk[t][j] for t in range(n)) for j in range(n)]
                 for i in range(n)]
        c = -sum(am_mk[i][i] for i in range(n)) / k
        coeffs[n - k] = c
    return [int(v) for v in coeffs]


# ---- univariate integer polynomials --------------------------------------

def _trim(p: List[int]) -> List[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def upoly_mul(p: Sequence[int], q: Sequence[int]) -> List[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def upoly_divmod(p: Sequence[int], q: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Division by a monic q; returns (quotient, remainder)."""
    if q[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(p)
    dq = len(q) - 1
    if len(r) - 1 < dq:
        return [0], _trim(r)
    quo = [0] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k]
        if c:
            quo[k - dq] = c
            for j in range(dq + 1):
                r[k - dq + j] -= c * q[j]
    return _trim(quo), _trim(r[:dq] or [0])


def euler_phi(k: int) -> int:
    result = k
    p = 2
    m = k
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


_CYCLOTOMIC_CACHE: Dict[int, List[int]] = {}


def cyclotomic(k: int) -> List[int]:
    """The k-th cyclotomic polynomial, t^k - 1 divided by Phi_d for d | k, d < k."""
    if k in _CYCLOTOMIC_CACHE:
        return _CYCLOTOMIC_CACHE[k]
    p = [-1] + [0] * (k - 1) + [1]
    for d in range(1, k):
        if k % d == 0:
            p, rem = upoly_divmod(p, cyclotomic(d))
            assert rem == [0]
    _CYCLOTOMIC_CACHE[k] = p
    return p


def cyclotomic_part(poly: Sequence[int]) -> Tuple[Dict[int, int], List[int]]:
    """Split a monic integer polynomial into cyclotomic factors and a residual.

    Returns (multiplicities, residual) with poly = prod Phi_k^m_k * residual.
    Only Phi_k with phi(k) <= deg(poly) can divide it.
    """
    n = len(poly) - 1
    rest = list(poly)
    mult: Dict[int, int] = {}
    k = 1
    # phi(k) >= sqrt(k/2), so k <= 2 n^2 bounds the search
    while k <= max(2, 2 * n * n):
        if euler_phi(k) <= len(rest) - 1:
            phi = cyclotomic(k)
            while len(rest) - 1 >= len(phi) - 1:
                q, r = upoly_divmod(rest, phi)
                if r != [0]:
                    break
                rest = q
                mult[k] = mult.get(k, 0) + 1
        k += 1
    return mult, rest


def lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


@dataclass(frozen=True)
class OrderVerdict:
    """Finite order (order set) or infinite order (witness explains why)."""

    finite: bool
    order: Optional[int] = None
    witness: Dict[str, object] = field(default_factory=dict)
    decision_path: Tuple[str, ...] = ()

    def to_json(self) -> dict:
        out = {"verdict": "finite" if self.finite else "infinite"}
        if self.finite:
            out["order"] = self.order
        else:
            out["witness"] = self.witness
        return out


def order_by_iteration(a: IntMatrix, cap: int) -> Optional[int]:
    """Smallest k <= cap with a^k = I, by repeated multiplication."""
    ident = identity(len(a))
    cur = a
    for k in range(1, cap + 1):
        if cur == ident:
            return k
        cur = mat_mul(cur, a)
    return None


def matrix_order(a: Sequence[Sequence[int]]) -> OrderVerdict:
    """Decide whether an integer matrix has finite multiplicative order.

    The characteristic polynomial must be a product of cyclotomic polynomials;
    the candidate order is the lcm of their indices and is confirmed by
    computing the power.  For n <= 20 the result is cross-checked against the
    tabulated maximal finite order.
    """
    a = as_matrix(a)
    n = len(a)
    path = []
    d = det(a)
    path.append(f"det = {d}")
    if d not in (1, -1):
        return OrderVerdict(False, None, {"reason": "determinant", "det": d}, tuple(path))
    cp = charpoly(a)
    path.append(f"charpoly = {cp}")
    mult, rest = cyclotomic_part(cp)
    path.append(f"cyclotomic factors = {dict(sorted(mult.items()))}, residual = {rest}")
    if rest != [1]:
        return OrderVerdict(False, None,
                            {"reason": "non_cyclotomic_factor", "factor": rest},
                            tuple(path))
    big_l = lcm(mult)
    path.append(f"candidate exponent lcm = {big_l}")
    power = mat_pow(a, big_l)
    ident = identity(n)
    cap = max_finite_order(n)
    if power != ident:
        i, j = next((i, j) for i in range(n) for j in range(n) if power[i][j] != ident[i][j])
        path.append("power at candidate exponent is not the identity (non-semisimple)")
        witness = {"reason": "unipotent_part", "exponent": big_l, "entry": [i, j],
                   "value": power[i][j]}
        if cap is not None:
            witness["max_finite_order"] = cap
        return OrderVerdict(False, None, witness, tuple(path))
    order = min(k for k in range(1, big_l + 1) if big_l % k == 0 and mat_pow(a, k) == ident)
    path.append(f"order = {order}")
    if cap is not None:
        if order > cap:
            raise AssertionError(f"order {order} exceeds the maximal finite order {cap}")
        if n <= 6 and order_by_iteration(a, cap) != order:
            raise AssertionError("iterated power disagrees with the cyclotomic test")
        path.append(f"order is within the maximal finite order {cap}")
    return OrderVerdict(True, order, {}, tuple(path))
