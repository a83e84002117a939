"""Polynomial automorphisms of the plane k[z1, z2].

An endomorphism sigma = (f1, f2) is the ring map z1 -> f1, z2 -> f2.  Products
are products of ring maps: (tau sigma)(p) = tau(sigma(p)), so the coordinates of
tau sigma are f_i(g1, g2) where tau = (g1, g2).  A word [g1, ..., gk] stands for
the product g1 g2 ... gk.

The automorphism group is the amalgamated product of the affine group A and the
triangular group B = {(l z1 + g(z2), m z2 + c)} over C = A meet B.  A word is
cyclically reduced by conjugation; length <= 1 means sigma is conjugate to a
triangular map, an alternating word of length >= 2 is brought to the normal form
tau_1 pi tau_2 pi ... tau_s pi with pi = (z2, z1) and deg(tau_i) >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import isqrt
from typing import List, Optional, Sequence, Tuple, Union

from .poly import (NEG_INF, POLYNOMIAL, MultiPoly, Ring, Scalar, as_scalar,
                   parse_poly, substitute)

P2 = Ring(POLYNOMIAL, 2)
Z1 = P2.var(0)
Z2 = P2.var(1)


class NotAnAutomorphism(ValueError):
    """The input does not decompose into tame factors; carries the obstruction."""

    def __init__(self, message: str, obstruction: Optional[dict] = None):
        super().__init__(message)
        self.obstruction = obstruction or {}


@dataclass(frozen=True)
class PlaneEndo:
    """The ring endomorphism z1 -> f1, z2 -> f2 of k[z1, z2]."""

    f1: MultiPoly
    f2: MultiPoly

    def __post_init__(self):
        for f in (self.f1, self.f2):
            if not isinstance(f, MultiPoly) or f.ring != P2:
                raise ValueError("plane maps need coordinates in k[z1, z2]")

    @classmethod
    def parse(cls, f1: str, f2: str) -> "PlaneEndo":
        return cls(parse_poly(f1, P2), parse_poly(f2, P2))

    @classmethod
    def from_json(cls, obj: dict) -> "PlaneEndo":
        f = obj["f"]
        if len(f) != 2:
            raise ValueError("a plane map needs exactly two coordinates")
        return cls.parse(str(f[0]), str(f[1]))

    def to_json(self) -> dict:
        return {"f": [str(self.f1), str(self.f2)]}

    @property
    def coords(self) -> Tuple[MultiPoly, MultiPoly]:
        return (self.f1, self.f2)

    def degree(self) -> int:
        return max(self.f1.total_degree(), self.f2.total_degree())

    def __call__(self, p: MultiPoly) -> MultiPoly:
        return plane_apply(self, p)

    def __mul__(self, other: "PlaneEndo") -> "PlaneEndo":
        return plane_compose(self, other)

    def __str__(self):
        return f"({self.f1}, {self.f2})"


IDENTITY = PlaneEndo(Z1, Z2)
PI = PlaneEndo(Z2, Z1)


def plane_apply(sigma: PlaneEndo, p: MultiPoly) -> MultiPoly:
    """p(f1, f2)."""
    if p.ring != P2:
        raise ValueError("plane maps act on k[z1, z2]")
    return substitute(p, sigma.coords)


def plane_compose(tau: PlaneEndo, sigma: PlaneEndo) -> PlaneEndo:
    """The product tau sigma, i.e. p -> tau(sigma(p))."""
    return PlaneEndo(plane_apply(tau, sigma.f1), plane_apply(tau, sigma.f2))


def plane_power(sigma: PlaneEndo, m: int) -> PlaneEndo:
    out = IDENTITY
    for _ in range(m):
        out = plane_compose(out, sigma)
    return out


# ---- tame factors ---------------------------------------------------------

@dataclass(frozen=True)
class Affine:
    """z -> L z + shift with L an invertible 2x2 matrix (rows give f1, f2)."""

    matrix: Tuple[Tuple[Scalar, Scalar], Tuple[Scalar, Scalar]]
    shift: Tuple[Scalar, Scalar] = (0, 0)

    def __post_init__(self):
        m = tuple(tuple(as_scalar(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "shift", tuple(as_scalar(v) for v in self.shift))
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0:
            raise ValueError("affine factor has singular linear part")

    def endo(self) -> PlaneEndo:
        (a, b), (c, d) = self.matrix
        return PlaneEndo(Z1 * a + Z2 * b + self.shift[0], Z1 * c + Z2 * d + self.shift[1])

    def inverse(self) -> "Affine":
        (a, b), (c, d) = self.matrix
        det = Fraction(a * d - b * c)
        inv = ((d / det, -b / det), (-c / det, a / det))
        s1, s2 = self.shift
        shift = (-(inv[0][0] * s1 + inv[0][1] * s2), -(inv[1][0] * s1 + inv[1][1] * s2))
        return Affine(inv, shift)

    def is_identity(self) -> bool:
        return self.matrix == ((1, 0), (0, 1)) and self.shift == (0, 0)

    def to_json(self) -> dict:
        return {"affine": {"matrix": [[str(Fraction(v)) for v in r] for r in self.matrix],
                           "shift": [str(Fraction(v)) for v in self.shift]}}


@dataclass(frozen=True)
class Elementary:
    """(z1 + h(z2), z2) for a polynomial h in z2 alone."""

    h: MultiPoly

    def __post_init__(self):
        if self.h.ring != P2 or self.h.degree_in(0) not in (0, NEG_INF):
            raise ValueError("elementary factor needs h in k[z2]")

    def endo(self) -> PlaneEndo:
        return PlaneEndo(Z1 + self.h, Z2)

    def inverse(self) -> "Elementary":
        return Elementary(-self.h)

    def to_json(self) -> dict:
        return {"elementary": str(self.h)}


@dataclass(frozen=True)
class Swap:
    """pi = (z2, z1)."""

    def endo(self) -> PlaneEndo:
        return PI

    def inverse(self) -> "Swap":
        return self

    def to_json(self) -> dict:
        return {"swap": True}


Factor = Union[Affine, Elementary, Swap]


def _affine_of(endo: PlaneEndo) -> Affine:
    rows = []
    shift = []
    for f in endo.coords:
        rows.append(f.linear_coeffs())
        shift.append(f.constant_term())
    return Affine(tuple(rows), tuple(shift))


@dataclass(frozen=True)
class TameWord:
    """An ordered product of tame factors g1 g2 ... gk."""

    factors: Tuple[Factor, ...] = ()

    def compose(self) -> PlaneEndo:
        return reduce(plane_compose, (f.endo() for f in self.factors), IDENTITY)

    def inverse(self) -> "TameWord":
        return TameWord(tuple(f.inverse() for f in reversed(self.factors)))

    def __len__(self):
        return len(self.factors)

    def to_json(self) -> list:
        return [f.to_json() for f in self.factors]


def _simplify(factors: List[Factor]) -> Tuple[Factor, ...]:
    # merge neighbouring swaps and affine factors, drop identities
    out: List[Factor] = []
    for f in factors:
        out.append(f)
        while len(out) >= 2 and isinstance(out[-1], (Affine, Swap)) \
                and isinstance(out[-2], (Affine, Swap)):
            b = out.pop()
            a = out.pop()
            if isinstance(a, Swap) and isinstance(b, Swap):
                continue
            out.append(_affine_of(plane_compose(a.endo(), b.endo())))
        if out and isinstance(out[-1], Affine) and out[-1].is_identity():
            out.pop()
        elif out and isinstance(out[-1], Elementary) and out[-1].h.is_zero():
            out.pop()
    return tuple(out)


def _leading_ratio(big: MultiPoly, small: MultiPoly) -> Optional[Tuple[int, Scalar]]:
    # find (k, c) with lf(big) = c * lf(small)^k, or None
    db, ds = big.total_degree(), small.total_degree()
    if ds < 1 or db % ds:
        return None
    k = db // ds
    target = big.leading_form()
    power = small.leading_form() ** k
    lm = power.leading_monomial()
    c = Fraction(target.coeff(lm)) / power.coeff(lm)
    if c == 0 or target != power * c:
        return None
    return k, as_scalar(c)


def tame_decompose(sigma: PlaneEndo, max_steps: int = 64) -> TameWord:
    """Factor an automorphism into Affine, Elementary and Swap factors.

    Degree reduction: while a coordinate has degree > 1, the coordinate of
    larger degree must have leading form c * (leading form of the other)^k;
    subtracting c * other^k peels off an elementary factor.  The terminal map
    is affine with invertible linear part.  Raises NotAnAutomorphism otherwise.
    """
    tail: List[Factor] = []
    f1, f2 = sigma.f1, sigma.f2
    steps = 0
    while True:
        d1, d2 = f1.total_degree(), f2.total_degree()
        if d1 is NEG_INF or d2 is NEG_INF or d1 < 1 or d2 < 1:
            raise NotAnAutomorphism("a coordinate is constant",
                                    {"stage": steps, "f": [str(f1), str(f2)]})
        if max(d1, d2) <= 1:
            break
        steps += 1
        if steps > max_steps:
            raise NotAnAutomorphism(f"decomposition exceeded {max_steps} steps",
                                    {"f": [str(f1), str(f2)]})
        done = False
        if d1 >= d2:
            hit = _leading_ratio(f1, f2)
            if hit:
                k, c = hit
                # sigma = rho (z1 + c z2^k, z2)
                f1 = f1 - (f2 ** k) * c
                tail[:0] = [Elementary(P2.monomial((0, k), c))]
                done = True
        if not done and d2 >= d1:
            hit = _leading_ratio(f2, f1)
            if hit:
                k, c = hit
                # sigma = rho (z1, z2 + c z1^k) = rho pi (z1 + c z2^k, z2) pi
                f2 = f2 - (f1 ** k) * c
                tail[:0] = [Swap(), Elementary(P2.monomial((0, k), c)), Swap()]
                done = True
        if not done:
            raise NotAnAutomorphism(
                "leading forms are not proportional to a power of each other",
                {"stage": steps, "degrees": [d1, d2],
                 "leading_forms": [str(f1.leading_form()), str(f2.leading_form())]})
    try:
        head = _affine_of(PlaneEndo(f1, f2))
    except ValueError:
        raise NotAnAutomorphism("terminal affine map has singular linear part",
                                {"f": [str(f1), str(f2)]}) from None
    return TameWord(_simplify([head] + tail))


def plane_inverse(sigma: PlaneEndo) -> PlaneEndo:
    """Inverse automorphism, obtained by inverting each tame factor."""
    return tame_decompose(sigma).inverse().compose()


def is_automorphism(sigma: PlaneEndo) -> bool:
    try:
        tame_decompose(sigma)
    except NotAnAutomorphism:
        return False
    return True


# ---- amalgamated product structure ------------------------------------------

def is_affine(e: PlaneEndo) -> bool:
    return e.f1.total_degree() <= 1 and e.f2.total_degree() <= 1


def is_triangular(e: PlaneEndo) -> bool:
    """(l z1 + g(z2), m z2 + c) with l, m nonzero."""
    f1, f2 = e.f1, e.f2
    if f2.total_degree() > 1 or f2.coeff((1, 0)) != 0 or f2.coeff((0, 1)) == 0:
        return False
    rest = f1 - Z1 * f1.coeff((1, 0))
    return f1.coeff((1, 0)) != 0 and rest.degree_in(0) in (0, NEG_INF)


_A, _B, _C = "A", "B", "C"


def _group(e: PlaneEndo) -> Optional[str]:
    aff, tri = is_affine(e), is_triangular(e)
    if aff and tri:
        return _C
    if aff:
        return _A
    if tri:
        return _B
    return None


def _compatible(g: str, h: str) -> bool:
    return g == _C or h == _C or g == h


def _reduce_syllables(items: Sequence[PlaneEndo]) -> List[PlaneEndo]:
    # merge neighbours lying in a common factor group; afterwards no syllable is
    # in C (unless it is the only one) and consecutive syllables alternate A/B
    out: List[PlaneEndo] = []
    for e in items:
        out.append(e)
        while True:
            if out and out[-1] == IDENTITY:
                out.pop()
            if len(out) >= 2 and _compatible(_group(out[-2]), _group(out[-1])):
                b = out.pop()
                a = out.pop()
                out.append(plane_compose(a, b))
                continue
            break
    return out


def word_syllables(word: TameWord) -> List[PlaneEndo]:
    """The reduced amalgam word of a tame word."""
    return _reduce_syllables([f.endo() for f in word.factors])


@dataclass(frozen=True)
class TriangularAuto:
    """(lambda1 z1 + g1(z2), lambda2 z2 + g2)."""

    lambda1: Scalar
    lambda2: Scalar
    g1: MultiPoly
    g2: Scalar

    def __post_init__(self):
        if self.lambda1 == 0 or self.lambda2 == 0:
            raise ValueError("triangular map needs nonzero lambda entries")
        if self.g1.ring != P2 or self.g1.degree_in(0) not in (0, NEG_INF):
            raise ValueError("g1 must involve z2 only")

    @classmethod
    def from_endo(cls, e: PlaneEndo) -> "TriangularAuto":
        if not is_triangular(e):
            raise ValueError(f"{e} is not triangular")
        l1 = e.f1.coeff((1, 0))
        return cls(l1, e.f2.coeff((0, 1)), e.f1 - Z1 * l1, e.f2.constant_term())

    def endo(self) -> PlaneEndo:
        return PlaneEndo(Z1 * self.lambda1 + self.g1, Z2 * self.lambda2 + self.g2)

    def to_json(self) -> dict:
        return {"lambda1": str(Fraction(self.lambda1)), "lambda2": str(Fraction(self.lambda2)),
                "g1": str(self.g1), "g2": str(Fraction(self.g2))}


@dataclass(frozen=True)
class TriangularCertificate:
    """conjugator^-1 sigma conjugator is triangular (or an affine map).

    ``affine`` is set instead of ``triangular`` when sigma is affine but its
    linear part has no rational eigenvector; such maps are triangular only
    after extending scalars.
    """

    conjugator: PlaneEndo
    conjugator_word: TameWord
    triangular: Optional[TriangularAuto] = None
    affine: Optional[PlaneEndo] = None
    note: str = ""

    def normal_form(self) -> PlaneEndo:
        return self.triangular.endo() if self.triangular is not None else self.affine

    def verify(self, sigma: PlaneEndo) -> bool:
        # sigma c == c N avoids inverting the conjugator
        normal = self.normal_form()
        if plane_compose(sigma, self.conjugator) != plane_compose(self.conjugator, normal):
            return False
        return self.triangular is not None or is_affine(normal)

    def to_json(self) -> dict:
        out = {"conjugator": self.conjugator.to_json(),
               "conjugator_word": self.conjugator_word.to_json()}
        if self.triangular is not None:
            out["triangular"] = self.triangular.to_json()
        else:
            out["affine"] = self.affine.to_json()
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class LaneForm:
    """conjugator^-1 sigma conjugator = tau_1 pi tau_2 pi ... tau_s pi."""

    conjugator: PlaneEndo
    conjugator_word: TameWord
    taus: Tuple[TriangularAuto, ...]
    degrees: Tuple[int, ...] = field(default=())

    @property
    def s(self) -> int:
        return len(self.taus)

    def normal_form(self) -> PlaneEndo:
        out = IDENTITY
        for t in self.taus:
            out = plane_compose(plane_compose(out, t.endo()), PI)
        return out

    def verify(self, sigma: PlaneEndo) -> bool:
        normal = self.normal_form()
        return (plane_compose(sigma, self.conjugator) == plane_compose(self.conjugator, normal)
                and all(d >= 2 for d in self.degrees))

    def to_json(self) -> dict:
        return {"conjugator": self.conjugator.to_json(),
                "conjugator_word": self.conjugator_word.to_json(),
                "s": self.s, "taus": [t.to_json() for t in self.taus],
                "lane_degrees": list(self.degrees)}


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _triangularize_affine(e: PlaneEndo) -> Optional[PlaneEndo]:
    """A linear conjugator g with g^-1 e g triangular, if one exists over Q."""
    (a, b) = e.f1.linear_coeffs()
    (c, d) = e.f2.linear_coeffs()
    # left eigenvector (p, q) of L = [[a, b], [c, d]]: (p, q) L = mu (p, q)
    tr, det = Fraction(a + d), Fraction(a * d - b * c)
    root = _rational_sqrt(tr * tr - 4 * det)
    if root is None:
        return None
    mu = (tr + root) / 2
    if c != 0 or a != mu:
        p, q = Fraction(c), mu - a
    else:
        p, q = mu - d, Fraction(b)
    if p == 0 and q == 0:
        p, q = Fraction(0), Fraction(1)
    ell = Z1 * p + Z2 * q
    other = Z2 if p != 0 else Z1
    return PlaneEndo(other, ell)


def _conj(c: PlaneEndo, e: PlaneEndo, c_inv: Optional[PlaneEndo] = None) -> PlaneEndo:
    """c^-1 e c."""
    if c_inv is None:
        c_inv = plane_inverse(c)
    return plane_compose(plane_compose(c_inv, e), c)


def _bruhat(a: PlaneEndo) -> Tuple[PlaneEndo, PlaneEndo]:
    """Split an affine a outside C as a = c pi c' with c, c' in C."""
    p = a.f2.coeff((1, 0))
    t = Fraction(-a.f1.coeff((1, 0))) / p
    e = PlaneEndo(Z1 + Z2 * t, Z2)
    c_prime = PlaneEndo(Z1 - Z2 * t, Z2)
    c = plane_compose(plane_compose(a, e), PI)
    assert _group(c) == _C
    return c, c_prime


def cyclic_reduce(word: TameWord) -> Union[TriangularCertificate, LaneForm]:
    """Reduce the amalgam word of an automorphism up to conjugation.

    Returns a TriangularCertificate when the cyclically reduced word has length
    at most one, otherwise the Lane normal form.
    """
    syl = word_syllables(word)
    conj = IDENTITY
    while len(syl) >= 2 and _compatible(_group(syl[0]), _group(syl[-1])):
        first = syl[0]
        syl = _reduce_syllables(syl[1:] + [first])
        conj = plane_compose(conj, first)

    if len(syl) <= 1:
        e = syl[0] if syl else IDENTITY
        if is_triangular(e):
            return TriangularCertificate(conj, tame_decompose(conj), TriangularAuto.from_endo(e))
        g = _triangularize_affine(e)
        if g is not None:
            t = _conj(g, e)
            conj = plane_compose(conj, g)
            return TriangularCertificate(conj, tame_decompose(conj), TriangularAuto.from_endo(t))
        return TriangularCertificate(
            conj, tame_decompose(conj), None, e,
            "affine map without a rational eigenvector; triangular after extending scalars")

    if _group(syl[0]) == _A:
        conj = plane_compose(conj, syl[0])
        syl = syl[1:] + [syl[0]]
    bs = syl[0::2]
    as_ = syl[1::2]
    splits = [_bruhat(a) for a in as_]
    s = len(bs)
    last_cp = splits[-1][1]
    taus = []
    for i in range(s):
        left = last_cp if i == 0 else splits[i - 1][1]
        right = splits[i][0]
        taus.append(plane_compose(plane_compose(left, bs[i]), right))
    g = plane_inverse(last_cp)
    conj = plane_compose(conj, g)
    tri = tuple(TriangularAuto.from_endo(t) for t in taus)
    degrees = tuple(t.g1.total_degree() for t in tri)
    return LaneForm(conj, tame_decompose(conj), tri, degrees)


def is_triangularizable(sigma: PlaneEndo) -> Tuple[bool, Union[TriangularCertificate, LaneForm]]:
    """(True, certificate) if sigma is conjugate to a triangular map, else (False, Lane form)."""
    cert = cyclic_reduce(tame_decompose(sigma))
    return isinstance(cert, TriangularCertificate), cert


@dataclass(frozen=True)
class ExponentialWitness:
    variable: int
    degrees: Tuple[int, ...]
    ratios: Tuple[Fraction, ...]


@dataclass(frozen=True)
class Inconclusive:
    degrees: Tuple[Tuple[int, ...], ...]


def degree_sequence(sigma: PlaneEndo, i: int, m_max: int) -> Tuple[int, ...]:
    """deg sigma^m(z_{i+1}) for m = 0..m_max."""
    p = P2.var(i)
    out = [p.total_degree()]
    for _ in range(m_max):
        p = plane_apply(sigma, p)
        out.append(p.total_degree())
    return tuple(out)


def degree_growth_certificate(sigma: PlaneEndo, r=2, m_max: int = 4):
    """Check deg sigma^(m+1)(z) >= r deg sigma^m(z) for m < m_max on each variable.

    A finite scan; advisory only.
    """
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    r = Fraction(r)
    seqs = []
    for i in (1, 0):
        degs = degree_sequence(sigma, i, m_max)
        seqs.append(degs)
        if all(degs[m + 1] >= r * degs[m] for m in range(m_max)):
            ratios = tuple(Fraction(degs[m + 1], degs[m]) for m in range(m_max))
            return ExponentialWitness(i, degs, ratios)
    return Inconclusive((seqs[1], seqs[0]))


THREE = "three"
INFINITY = "infinity"


@dataclass(frozen=True)
class GKVerdictPlane:
    """GK dimension 3 (with triangularizing certificate) or infinity (Lane form)."""

    kind: str
    certificate: Union[TriangularCertificate, LaneForm]

    @property
    def gkdim_text(self) -> str:
        return "gkdim = 3" if self.kind == THREE else "gkdim = infinity"

    def decision_path(self) -> Tuple[str, ...]:
        path = ["tame decomposition", "cyclic reduction in the amalgamated product"]
        if self.kind == THREE:
            path.append("reduced word has length <= 1: sigma is conjugate to a triangular "
                        "map, hence locally algebraic, GKdim = GKdim(P2) + 1 = 3")
            if self.certificate.triangular is None:
                path.append("affine sigma without rational eigenvector: conjugate to a "
                            "triangular map over an extension field")
        else:
            path.append("reduced word alternates: conjugate to tau_1 pi ... tau_s pi with "
                        "deg(tau_i) >= 2, degrees of iterates grow exponentially, GKdim = infinity")
        path.append("conjugation is over the rationals")
        return tuple(path)

    def to_json(self) -> dict:
        out = {"verdict": self.gkdim_text, "certificate": self.certificate.to_json()}
        if self.kind == INFINITY:
            out["lane_degrees"] = list(self.certificate.degrees)
        return out


def classify_gk_plane(sigma: PlaneEndo) -> GKVerdictPlane:
    """GKdim of P2(sigma, a): 3 if sigma is triangularizable, infinity otherwise."""
    ok, cert = is_triangularizable(sigma)
    return GKVerdictPlane(THREE if ok else INFINITY, cert)
