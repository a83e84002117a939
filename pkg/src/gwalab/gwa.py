"""Generalized Weyl algebras D(sigma, a).

A = D(sigma, a) is generated over a commutative base D by x and y subject to

    x d = sigma(d) x,   y d = sigma^-1(d) y,   y x = a,   x y = sigma(a).

Every element has a unique normal form sum_i d_i X_i where X_i = x^i for i > 0,
X_i = y^-i for i < 0 and X_0 = 1.  Elements are stored as {i: d_i}.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from . import laurent, plane
from .laurent import LaurentAuto
from .linalg import Echelon, Subspace
from .plane import PlaneEndo
from .poly import (LAURENT, POLYNOMIAL, MultiPoly, Ring, Scalar, as_scalar,
                   poly_from_json, substitute)


@dataclass(frozen=True)
class LineAffine:
    """The automorphism z1 -> scale * z1 + shift of k[z1]."""

    scale: Scalar
    shift: Scalar = 0

    def __post_init__(self):
        object.__setattr__(self, "scale", as_scalar(self.scale))
        object.__setattr__(self, "shift", as_scalar(self.shift))
        if self.scale == 0:
            raise ValueError("scale must be nonzero")

    def images(self) -> Tuple[MultiPoly]:
        r = Ring(POLYNOMIAL, 1)
        return (r.var(0) * self.scale + self.shift,)

    def inverse(self) -> "LineAffine":
        s = Fraction(self.scale)
        return LineAffine(1 / s, -self.shift / s)

    def to_json(self) -> dict:
        return {"f": [str(self.images()[0])]}


Sigma = Union[LaurentAuto, PlaneEndo, LineAffine]

_CACHE_LIMIT = 200_000


class GWASpec:
    """Base ring, automorphism sigma (with its inverse) and the element a."""

    def __init__(self, ring: Ring, sigma: Sigma, a: MultiPoly,
                 sigma_inverse: Optional[Sigma] = None, name: str = ""):
        self.ring = Ring(*ring)
        self.sigma = sigma
        self.name = name
        if isinstance(sigma, LaurentAuto):
            if self.ring != Ring(LAURENT, sigma.n):
                raise ValueError("a Laurent automorphism needs a Laurent base of the same arity")
            inv = sigma_inverse or laurent.inverse(sigma)
            fwd_images, inv_images = sigma.images(), inv.images()
        elif isinstance(sigma, PlaneEndo):
            if self.ring != plane.P2:
                raise ValueError("a plane automorphism needs the base k[z1, z2]")
            inv = sigma_inverse or plane.plane_inverse(sigma)
            fwd_images, inv_images = sigma.coords, inv.coords
        elif isinstance(sigma, LineAffine):
            if self.ring != Ring(POLYNOMIAL, 1):
                raise ValueError("an affine map of the line needs the base k[z1]")
            inv = sigma_inverse or sigma.inverse()
            fwd_images, inv_images = sigma.images(), inv.images()
        else:
            raise TypeError(f"unsupported automorphism type {type(sigma).__name__}")
        self.sigma_inverse = inv
        for i in range(self.ring.n):
            z = self.ring.var(i)
            if substitute(substitute(z, inv_images), fwd_images) != z:
                raise ValueError("sigma_inverse is not inverse to sigma")
        if a.ring != self.ring:
            if a.n == self.ring.n and a.kind == POLYNOMIAL and self.ring.kind == LAURENT:
                a = a.as_laurent()
            else:
                raise ValueError("a must lie in the base ring")
        if a.is_zero():
            warnings.warn("a = 0: growth computations are valid, but domain and Noetherian "
                          "properties of the algebra need a != 0", stacklevel=2)
        self.a = a
        self._images: Dict[int, Tuple[MultiPoly, ...]] = {
            0: self.ring.gens(), 1: tuple(fwd_images), -1: tuple(inv_images)}
        self._twists: Dict[Tuple[MultiPoly, int], MultiPoly] = {}
        self._mixed: Dict[Tuple[int, int], MultiPoly] = {}

    # ---- twisting by powers of sigma ----------------------------------------

    def sigma_power_images(self, k: int) -> Tuple[MultiPoly, ...]:
        """Images of z1..zn under sigma^k."""
        hit = self._images.get(k)
        if hit is not None:
            return hit
        if isinstance(self.sigma, LaurentAuto):
            hit = laurent.iterate(self.sigma, k).images()
        else:
            step = 1 if k > 0 else -1
            prev = self.sigma_power_images(k - step)
            # sigma^k(z) = sigma^(k-1)(sigma(z))
            hit = tuple(substitute(f, prev) for f in self._images[step])
        self._images[k] = hit
        return hit

    def twist(self, d: MultiPoly, k: int) -> MultiPoly:
        """sigma^k(d)."""
        if k == 0 or d.is_constant():
            return d
        key = (d, k)
        hit = self._twists.get(key)
        if hit is None:
            hit = substitute(d, self.sigma_power_images(k))
            if len(self._twists) > _CACHE_LIMIT:
                self._twists.clear()
            self._twists[key] = hit
        return hit

    def mixed_coefficient(self, i: int, j: int) -> MultiPoly:
        """c with X_i X_j = c X_(i+j)."""
        if i >= 0 and j >= 0 or i <= 0 and j <= 0:
            return self.ring.one()
        key = (i, j)
        hit = self._mixed.get(key)
        if hit is not None:
            return hit
        out = self.ring.one()
        if i > 0:
            # x^i y^J = sigma^i(a) sigma^(i-1)(a) ... (t factors) X_(i-J)
            t = min(i, -j)
            for s in range(t):
                out = out * self.twist(self.a, i - s)
        else:
            # y^I x^j = sigma^-(I-1)(a) sigma^-(I-2)(a) ... (t factors) X_(j-I)
            big_i = -i
            t = min(big_i, j)
            for s in range(t):
                out = out * self.twist(self.a, -(big_i - 1 - s))
        self._mixed[key] = out
        return out

    # ---- element construction -----------------------------------------------

    def element(self, comps: Mapping[int, object]) -> "GWAElement":
        clean = {}
        for i, d in comps.items():
            d = self.coerce_base(d)
            if not d.is_zero():
                clean[int(i)] = d
        return GWAElement(self, clean)

    def coerce_base(self, d) -> MultiPoly:
        if isinstance(d, MultiPoly):
            if d.ring == self.ring:
                return d
            if d.n == self.ring.n and d.kind == POLYNOMIAL and self.ring.kind == LAURENT:
                return d.as_laurent()
            raise ValueError("coefficient does not lie in the base ring")
        if isinstance(d, str):
            return self.ring.parse(d)
        return self.ring.const(d)

    def base(self, d) -> "GWAElement":
        return self.element({0: d})

    @property
    def one(self) -> "GWAElement":
        return self.element({0: 1})

    @property
    def zero(self) -> "GWAElement":
        return GWAElement(self, {})

    @property
    def x(self) -> "GWAElement":
        return self.element({1: 1})

    @property
    def y(self) -> "GWAElement":
        return self.element({-1: 1})

    def mul(self, u: "GWAElement", v: "GWAElement") -> "GWAElement":
        return gwa_mul(self, u, v)

    # ---- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {"base": {"kind": self.ring.kind, "n": self.ring.n},
                "sigma": self.sigma.to_json(), "a": str(self.a)}

    @classmethod
    def from_json(cls, obj: dict) -> "GWASpec":
        base = obj["base"]
        ring = Ring(base["kind"], int(base["n"]))
        if ring.kind not in (POLYNOMIAL, LAURENT):
            raise ValueError(f"unknown base kind {ring.kind!r}")
        s = obj["sigma"]
        if ring.kind == LAURENT:
            sigma = LaurentAuto.from_json(s)
        elif ring.n == 2:
            sigma = PlaneEndo.from_json(s)
        elif ring.n == 1:
            f = poly_from_json(s["f"][0], ring)
            if f.total_degree() != 1:
                raise ValueError("an automorphism of k[z1] must have degree one")
            sigma = LineAffine(f.coeff((1,)), f.constant_term())
        else:
            raise ValueError("polynomial bases are supported for n = 1 and n = 2 only")
        a = poly_from_json(obj.get("a", "1"), ring)
        return cls(ring, sigma, a, name=obj.get("name", ""))

    def __repr__(self):
        return f"GWASpec({self.name or self.to_json()})"


class GWAElement:
    """sum_i d_i X_i; immutable, bound to its spec."""

    __slots__ = ("spec", "comps")

    def __init__(self, spec: GWASpec, comps: Dict[int, MultiPoly]):
        self.spec = spec
        self.comps = comps

    def _check(self, other: "GWAElement"):
        if other.spec is not self.spec:
            raise ValueError("elements belong to different GWA specs")

    def _lift(self, other) -> Optional["GWAElement"]:
        if isinstance(other, GWAElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, MultiPoly)) and not isinstance(other, bool):
            return self.spec.base(other)
        return None

    def component(self, i: int) -> MultiPoly:
        return self.comps.get(i, self.spec.ring.zero())

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(self.comps))

    def is_zero(self) -> bool:
        return not self.comps

    def is_homogeneous(self) -> bool:
        return len(self.comps) <= 1

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.comps)
        for i, d in other.comps.items():
            s = out[i] + d if i in out else d
            if s.is_zero():
                out.pop(i, None)
            else:
                out[i] = s
        return GWAElement(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return GWAElement(self.spec, {i: -d for i, d in self.comps.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "GWAElement":
        c = as_scalar(c)
        if not c:
            return self.spec.zero
        return GWAElement(self.spec, {i: d * c for i, d in self.comps.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return gwa_mul(self.spec, self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return gwa_mul(self.spec, other, self)

    def __pow__(self, k: int):
        out = self.spec.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GWAElement):
            return self.spec is other.spec and self.comps == other.comps
        lifted = self._lift(other)
        return lifted is not None and self.comps == lifted.comps

    def __hash__(self):
        return hash(frozenset(self.comps.items()))

    def to_vector(self) -> Dict[Tuple[int, tuple], Scalar]:
        return {(i, m): c for i, d in self.comps.items() for m, c in d.items()}

    def __str__(self):
        if not self.comps:
            return "0"
        parts = []
        for i in sorted(self.comps, reverse=True):
            d = str(self.comps[i])
            if i == 0:
                parts.append(d)
                continue
            g = "x" if i > 0 else "y"
            e = abs(i)
            mono = g if e == 1 else f"{g}^{e}"
            parts.append(mono if d == "1" else f"({d})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def gwa_mul(spec: GWASpec, u: GWAElement, v: GWAElement) -> GWAElement:
    """Normal form of u v.

    (d X_i)(e X_j) = d sigma^i(e) X_i X_j, and X_i X_j = c(i, j) X_(i+j) where
    c(i, j) = 1 for equal signs and is a product of twists of a otherwise.
    """
    if u.spec is not spec or v.spec is not spec:
        raise ValueError("elements belong to a different GWA spec")
    out: Dict[int, MultiPoly] = {}
    for i, d in u.comps.items():
        for j, e in v.comps.items():
            term = d * spec.twist(e, i)
            c = spec.mixed_coefficient(i, j)
            if c != 1:
                term = term * c
            k = i + j
            if k in out:
                s = out[k] + term
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            elif not term.is_zero():
                out[k] = term
    return GWAElement(spec, out)


def gwa_add(u: GWAElement, v: GWAElement) -> GWAElement:
    return u + v


def gwa_scale(u: GWAElement, c) -> GWAElement:
    return u.scale(c)


# ---- the x^m, y^m subalgebra ---------------------------------------------------

def power_subalgebra_defelt(spec: GWASpec, m: int) -> MultiPoly:
    """b = sigma^-(m-1)(a) ... sigma^-1(a) a, so that y^m x^m = b."""
    if m < 1:
        raise ValueError("m must be positive")
    out = spec.ring.one()
    for t in range(m):
        out = out * spec.twist(spec.a, -t)
    return out


def verify_power_lemma(spec: GWASpec, m: int) -> bool:
    """y^m x^m = b and x^m y^m = sigma^m(b), computed letter by letter."""
    b = power_subalgebra_defelt(spec, m)
    x, y = spec.x, spec.y
    ym = spec.one
    xm = spec.one
    for _ in range(m):
        ym = ym * y
        xm = xm * x
    lhs = ym
    for _ in range(m):
        lhs = lhs * x
    rhs = xm
    for _ in range(m):
        rhs = rhs * y
    return lhs == spec.base(b) and rhs == spec.base(spec.twist(b, m))


# ---- fixtures --------------------------------------------------------------------

def make_weyl() -> GWASpec:
    """First Weyl algebra as k[h](sigma, h) with sigma(h) = h - 1."""
    ring = Ring(POLYNOMIAL, 1)
    return GWASpec(ring, LineAffine(1, -1), ring.var(0), name="weyl")


def make_heisenberg(m: int, alpha1=1, alpha2=1, a=None) -> GWASpec:
    """L_2(sigma_m, a) with sigma_m(z1) = alpha1 z1, sigma_m(z2) = alpha2 z1^m z2."""
    if alpha1 == 0 or alpha2 == 0:
        raise ValueError("alpha values must be nonzero")
    ring = Ring(LAURENT, 2)
    sigma = LaurentAuto(((1, m), (0, 1)), (alpha1, alpha2))
    if a is None:
        a = ring.one()
    elif not isinstance(a, MultiPoly):
        a = ring.parse(str(a))
    return GWASpec(ring, sigma, a, name=f"heisenberg({m})")


# ---- subspaces of A ------------------------------------------------------------

def column_key(col):
    """Order on normal-form monomials (degree, base monomial)."""
    i, m = col
    return (i, sum(m), m)


def vector_to_element(spec: GWASpec, vec: Mapping) -> GWAElement:
    comps: Dict[int, Dict[tuple, Scalar]] = {}
    for (i, m), c in vec.items():
        comps.setdefault(i, {})[m] = c
    return GWAElement(spec, {i: MultiPoly(t, spec.ring.n, spec.ring.kind)
                             for i, t in comps.items() if t})


def span(spec: GWASpec, elements: Iterable[GWAElement]) -> Subspace:
    vecs = []
    for e in elements:
        if e.spec is not spec:
            raise ValueError("element belongs to a different spec")
        vecs.append(e.to_vector())
    return Subspace(vecs, column_key)


def basis_elements(spec: GWASpec, v: Subspace) -> Tuple[GWAElement, ...]:
    return tuple(vector_to_element(spec, r) for r in v.rows)


def subspace_sum(v: Subspace, w: Subspace) -> Subspace:
    return v + w


def subspace_product(spec: GWASpec, v: Subspace, w: Subspace) -> Subspace:
    """VW = span of all products of basis vectors."""
    ech = Echelon(column_key)
    left = basis_elements(spec, v)
    right = basis_elements(spec, w)
    for p in left:
        for q in right:
            ech.add(gwa_mul(spec, p, q).to_vector())
    return Subspace.from_echelon(ech)


def subspace_dim(v: Subspace) -> int:
    return v.dim
