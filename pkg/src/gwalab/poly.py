"""Exact sparse multivariate polynomials and Laurent polynomials over Q.

A polynomial is a map from exponent tuples to rational coefficients.  Exponents
are non-negative for the polynomial ring P_n = k[z1..zn] and arbitrary integers
for the Laurent ring L_n = k[z1^±1..zn^±1].  Coefficients are ``int`` or
``fractions.Fraction``; zero coefficients are never stored.

Text format (used by the JSON interfaces)::

    expr   := term (('+'|'-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := 'z' index ('^' int)?
    coeff  := int ('/' posint)?

A leading sign is accepted and whitespace is ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction
from operator import add
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, NamedTuple, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]

POLYNOMIAL = "polynomial"
LAURENT = "laurent"
RING_KINDS = (POLYNOMIAL, LAURENT)


class RingMismatchError(ValueError):
    """Operands live in different rings (kind or number of variables)."""


class PolySyntaxError(ValueError):
    """A polynomial string does not follow the grammar."""

    def __init__(self, text: str, pos: int, msg: str):
        self.text = text
        self.pos = pos
        super().__init__(f"{msg} at position {pos} in {text!r}")


class _NegInfinity:
    """Degree of the zero polynomial; smaller than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInfinity()


def as_scalar(value) -> Scalar:
    """Coerce an int, Fraction or rational string to an exact scalar."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return as_scalar(Fraction(value))
    raise TypeError(f"not an exact scalar: {value!r}")


def grlex_key(mono: Monomial):
    """Sort key for the graded lexicographic order (larger key = larger monomial)."""
    return (sum(mono), mono)


class Ring(NamedTuple):
    """Ring descriptor: kind (polynomial or laurent) and number of variables."""

    kind: str
    n: int

    def zero(self) -> "MultiPoly":
        return MultiPoly({}, self.n, self.kind)

    def one(self) -> "MultiPoly":
        return MultiPoly({(0,) * self.n: 1}, self.n, self.kind)

    def const(self, c) -> "MultiPoly":
        return MultiPoly({(0,) * self.n: c}, self.n, self.kind)

    def var(self, i: int) -> "MultiPoly":
        """The variable z_{i+1} (0-based index i)."""
        if not 0 <= i < self.n:
            raise IndexError(f"variable index {i} out of range for {self.n} variables")
        mono = [0] * self.n
        mono[i] = 1
        return MultiPoly({tuple(mono): 1}, self.n, self.kind)

    def gens(self) -> Tuple["MultiPoly", ...]:
        return tuple(self.var(i) for i in range(self.n))

    def monomial(self, exps: Sequence[int], coeff=1) -> "MultiPoly":
        return MultiPoly({tuple(exps): coeff}, self.n, self.kind)

    def parse(self, text: str) -> "MultiPoly":
        return parse_poly(text, self)


class MultiPoly:
    """An element of P_n or L_n with exact rational coefficients.

    Instances are immutable and hashable.  Arithmetic with plain ints and
    Fractions is supported; mixing rings raises RingMismatchError.
    """

    __slots__ = ("_terms", "n", "kind", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None, n: int = 1,
                 kind: str = POLYNOMIAL):
        if kind not in RING_KINDS:
            raise ValueError(f"unknown ring kind {kind!r}")
        if n < 0:
            raise ValueError("number of variables must be non-negative")
        clean: Dict[Monomial, Scalar] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != n:
                raise ValueError(f"monomial {mono} has wrong length for {n} variables")
            if kind == POLYNOMIAL and any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in polynomial monomial {mono}")
            c = as_scalar(c)
            if c:
                c = clean.get(mono, 0) + c
                if c:
                    clean[mono] = c
                else:
                    clean.pop(mono, None)
        self._terms = clean
        self.n = n
        self.kind = kind
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Scalar], n: int, kind: str) -> "MultiPoly":
        # trusted constructor: terms already validated and zero-free
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.n = n
        obj.kind = kind
        obj._hash = None
        return obj

    # ---- basic accessors -------------------------------------------------

    @property
    def ring(self) -> Ring:
        return Ring(self.kind, self.n)

    @property
    def terms(self) -> Mapping[Monomial, Scalar]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, mono: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(mono), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.n in self._terms)

    def constant_term(self) -> Scalar:
        return self._terms.get((0,) * self.n, 0)

    def is_unit_monomial(self) -> bool:
        """True for c*z^v with c != 0 (a unit of the Laurent ring)."""
        return len(self._terms) == 1

    def monomials(self):
        """Monomials in decreasing graded lexicographic order."""
        return sorted(self._terms, key=grlex_key, reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=grlex_key)

    def leading_coeff(self) -> Scalar:
        return self._terms[self.leading_monomial()]

    def total_degree(self):
        """Total degree; NEG_INF for zero.  Polynomial ring only."""
        if self.kind != POLYNOMIAL:
            raise ValueError("total degree is only defined for the polynomial ring")
        if not self._terms:
            return NEG_INF
        return max(sum(m) for m in self._terms)

    def degree_in(self, i: int):
        """Largest exponent of z_{i+1} (NEG_INF for zero)."""
        if not self._terms:
            return NEG_INF
        return max(m[i] for m in self._terms)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly._raw({m: c for m, c in self._terms.items() if sum(m) == d},
                              self.n, self.kind)

    def leading_form(self) -> "MultiPoly":
        """Homogeneous component of top total degree."""
        d = self.total_degree()
        if d is NEG_INF:
            return self
        return self.homogeneous_part(d)

    def drop_variable_terms(self, i: int) -> "MultiPoly":
        """Terms in which z_{i+1} does not occur."""
        return MultiPoly._raw({m: c for m, c in self._terms.items() if m[i] == 0},
                              self.n, self.kind)

    def linear_coeffs(self) -> Tuple[Scalar, ...]:
        """Coefficients of z1..zn (degree-one monomials)."""
        out = []
        for i in range(self.n):
            mono = [0] * self.n
            mono[i] = 1
            out.append(self._terms.get(tuple(mono), 0))
        return tuple(out)

    def as_laurent(self) -> "MultiPoly":
        return MultiPoly._raw(dict(self._terms), self.n, LAURENT)

    def as_polynomial(self) -> "MultiPoly":
        if any(e < 0 for m in self._terms for e in m):
            raise ValueError("element has negative exponents")
        return MultiPoly._raw(dict(self._terms), self.n, POLYNOMIAL)

    # ---- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.n != self.n or other.kind != self.kind:
                raise RingMismatchError(
                    f"cannot combine {self.kind}[{self.n}] with {other.kind}[{other.n}]")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = as_scalar(other)
            return MultiPoly._raw({(0,) * self.n: c} if c else {}, self.n, self.kind)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                del out[m]
        return MultiPoly._raw(out, self.n, self.kind)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self._terms.items()}, self.n, self.kind)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "MultiPoly":
        c = as_scalar(c)
        if not c:
            return MultiPoly._raw({}, self.n, self.kind)
        return MultiPoly._raw({m: v * c for m, v in self._terms.items()}, self.n, self.kind)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return MultiPoly._raw(_mul_terms(self._terms, other._terms, self.n), self.n, self.kind)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if self.kind == LAURENT and self.is_unit_monomial():
                (m, c), = self._terms.items()
                inv = MultiPoly._raw({tuple(-e for e in m): Fraction(1, 1) / c}, self.n, self.kind)
                return inv ** (-k)
            raise ValueError("negative powers need a unit monomial in the Laurent ring")
        if len(self._terms) == 1:
            (m, c), = self._terms.items()
            return MultiPoly._raw({tuple(e * k for e in m): c ** k}, self.n, self.kind)
        result = MultiPoly._raw({(0,) * self.n: 1}, self.n, self.kind)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (self.n == other.n and self.kind == other.kind
                    and self._terms == other._terms)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = as_scalar(other)
            if not c:
                return not self._terms
            return self._terms == {(0,) * self.n: c}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, n={self.n}, kind={self.kind!r})"

    def __str__(self):
        return format_poly(self)


try:
    from gmpy2 import mpq as _fast
except ImportError:  # pragma: no cover
    _fast = None

try:
    Fraction(1, 2, _normalize=False)

    def _coprime(n: int, d: int) -> Fraction:
        return Fraction(n, d, _normalize=False)
except TypeError:  # pragma: no cover
    _coprime = Fraction


def _from_fast(c) -> Scalar:
    n, d = int(c.numerator), int(c.denominator)
    return n if d == 1 else _coprime(n, d)


def _mul_terms(a: Dict[Monomial, Scalar], b: Dict[Monomial, Scalar], n: int):
    if len(a) > len(b):
        a, b = b, a
    big = len(a) * len(b) > 64 and _fast is not None
    if big:
        # gmpy2 rationals are several times faster than Fraction in this loop
        a = {m: _fast(c) for m, c in a.items()}
        b = {m: _fast(c) for m, c in b.items()}
    out: Dict[Monomial, Scalar] = {}
    get = out.get
    if n == 2:
        for (p, q), c1 in a.items():
            for (r, s), c2 in b.items():
                m = (p + r, q + s)
                out[m] = get(m, 0) + c1 * c2
    elif n == 1:
        for (p,), c1 in a.items():
            for (r,), c2 in b.items():
                m = (p + r,)
                out[m] = get(m, 0) + c1 * c2
    else:
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(map(add, m1, m2))
                out[m] = get(m, 0) + c1 * c2
    if big:
        return {m: _from_fast(c) for m, c in out.items() if c}
    return {m: c for m, c in out.items() if c}


def substitute(p: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    """Ring map z_i -> images[i] applied to p.

    All images must share one target ring.  A negative exponent requires the
    corresponding image to be a unit monomial, and the result then lives in the
    Laurent ring.
    """
    if len(images) != p.n:
        raise ValueError(f"expected {p.n} images, got {len(images)}")
    if not images:
        return p
    target = images[0].ring
    for im in images:
        if im.ring != target:
            raise RingMismatchError("substitution images live in different rings")
    negative = any(e < 0 for m in p._terms for e in m)
    kind = LAURENT if negative else target.kind
    tn = target.n
    if negative:
        for i, im in enumerate(images):
            if any(m[i] < 0 for m in p._terms) and not im.is_unit_monomial():
                raise ValueError(f"image of z{i + 1} must be a unit monomial to invert it")

    if all(im.is_unit_monomial() for im in images):
        # monomial map: c z^u -> c * prod(c_j^u_j) z^(sum u_j v_j)
        vecs = []
        scal = []
        for im in images:
            (v, c), = im._terms.items()
            vecs.append(v)
            scal.append(c)
        out: Dict[Monomial, Scalar] = {}
        for u, c in p._terms.items():
            mono = [0] * tn
            coef = c
            for j, e in enumerate(u):
                if e:
                    vj = vecs[j]
                    for t in range(tn):
                        mono[t] += e * vj[t]
                    cj = scal[j]
                    if cj != 1:
                        coef = coef * (Fraction(cj) ** e if e < 0 else cj ** e)
            mono = tuple(mono)
            v = out.get(mono, 0) + coef
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return MultiPoly._raw(out, tn, kind)

    imgs = [im if im.kind == kind else im.as_laurent() for im in images]
    cache: Dict[Tuple[int, int], MultiPoly] = {}

    def power(j: int, e: int) -> MultiPoly:
        key = (j, e)
        hit = cache.get(key)
        if hit is None:
            if e == 1:
                hit = imgs[j]
            elif e < 0:
                hit = imgs[j] ** e
            else:
                half = power(j, e // 2)
                hit = half * half
                if e % 2:
                    hit = hit * imgs[j]
            cache[key] = hit
        return hit

    acc: Dict[Monomial, Scalar] = {}
    one = {(0,) * tn: 1}
    for u, c in p._terms.items():
        term = one
        for j, e in enumerate(u):
            if e:
                term = _mul_terms(term, power(j, e)._terms, tn)
        for m, v in term.items():
            w = acc.get(m, 0) + c * v
            if w:
                acc[m] = w
            else:
                acc.pop(m, None)
    return MultiPoly._raw(acc, tn, kind)


# ---- text format ---------------------------------------------------------

def _format_scalar(c: Scalar) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def _format_monomial(mono: Monomial) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 0:
            continue
        parts.append(f"z{i + 1}" if e == 1 else f"z{i + 1}^{e}")
    return "*".join(parts)


def format_poly(p: MultiPoly) -> str:
    """Canonical text form, terms in decreasing graded lexicographic order."""
    if not p._terms:
        return "0"
    pieces = []
    for mono in p.monomials():
        c = p._terms[mono]
        neg = c < 0
        a = -c if neg else c
        body = _format_monomial(mono)
        if not body:
            text = _format_scalar(a)
        elif a == 1:
            text = body
        else:
            text = f"{_format_scalar(a)}*{body}"
        if not pieces:
            pieces.append(("-" if neg else "") + text)
        else:
            pieces.append(("- " if neg else "+ ") + text)
    return " ".join(pieces)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>z(?P<idx>\d+))|(?P<op>[-+*/^]))")


def parse_poly(text: str, ring: Ring) -> MultiPoly:
    """Parse a polynomial string into the given ring."""
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(text, pos, "unexpected character")
        start = m.end() - len(m.group(0).lstrip())
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num")), start))
        elif m.group("var") is not None:
            tokens.append(("var", int(m.group("idx")), start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    tokens.append(("end", None, len(stripped)))
    i = 0

    def peek():
        return tokens[i]

    def expect_int(signed: bool) -> int:
        nonlocal i
        sign = 1
        kind, val, at = tokens[i]
        if signed and kind == "op" and val == "-":
            sign = -1
            i += 1
            kind, val, at = tokens[i]
        if kind != "num":
            raise PolySyntaxError(text, at, "expected an integer")
        i += 1
        return sign * val

    def factor(mono):
        nonlocal i
        kind, idx, at = tokens[i]
        if kind != "var":
            raise PolySyntaxError(text, at, "expected a variable")
        if not 1 <= idx <= ring.n:
            raise PolySyntaxError(text, at, f"variable z{idx} outside z1..z{ring.n}")
        i += 1
        e = 1
        if peek()[0] == "op" and peek()[1] == "^":
            i += 1
            e = expect_int(signed=True)
        if e < 0 and ring.kind == POLYNOMIAL:
            raise PolySyntaxError(text, at, "negative exponent in polynomial ring")
        mono[idx - 1] += e

    def term():
        nonlocal i
        mono = [0] * ring.n
        coef: Scalar = 1
        kind, val, at = peek()
        if kind == "num":
            num = expect_int(signed=False)
            coef = num
            if peek()[0] == "op" and peek()[1] == "/":
                i += 1
                den = expect_int(signed=False)
                if den == 0:
                    raise PolySyntaxError(text, tokens[i - 1][2], "zero denominator")
                coef = Fraction(num, den)
        elif kind == "var":
            factor(mono)
        else:
            raise PolySyntaxError(text, at, "expected a term")
        while peek()[0] == "op" and peek()[1] == "*":
            i += 1
            factor(mono)
        return tuple(mono), coef

    terms: Dict[Monomial, Scalar] = {}
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if peek()[1] == "-" else 1
        i += 1
    while True:
        mono, coef = term()
        terms[mono] = terms.get(mono, 0) + sign * coef
        kind, val, at = peek()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
            continue
        raise PolySyntaxError(text, at, "expected '+', '-' or end of input")
    return MultiPoly(terms, ring.n, ring.kind)


def poly_from_json(obj, ring: Ring) -> MultiPoly:
    """Accept either a polynomial string or a bare number."""
    if isinstance(obj, str):
        return parse_poly(obj, ring)
    if isinstance(obj, int) and not isinstance(obj, bool):
        return ring.const(obj)
    raise ValueError(f"expected a polynomial string, got {obj!r}")


def lift(p: MultiPoly, n: int, position: Iterable[int] | None = None) -> MultiPoly:
    """Embed p into a ring with n >= p.n variables (z_i -> z_i by default)."""
    pos = list(position) if position is not None else list(range(p.n))
    out = {}
    for m, c in p.items():
        mono = [0] * n
        for src, dst in zip(range(p.n), pos):
            mono[dst] = m[src]
        out[tuple(mono)] = c
    return MultiPoly(out, n, p.kind)
