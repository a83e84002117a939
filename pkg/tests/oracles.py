"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

from fractions import Fraction

import sympy

from gwalab.gwa import GWAElement, GWASpec
from gwalab.poly import MultiPoly, substitute


# ---- GWA: single-step rewriting on words -------------------------------------------

def _sigma_once(spec: GWASpec, d: MultiPoly, inverse: bool) -> MultiPoly:
    images = spec.sigma_power_images(-1 if inverse else 1)
    return substitute(d, images)


def rewrite_word(spec: GWASpec, word):
    """Normal form of a word over letters 'x', 'y' and base elements.

    Applies the leftmost applicable rule among
        x d -> sigma(d) x,  y d -> sigma^-1(d) y,  y x -> a,  x y -> sigma(a),
        d d' -> (d d')
    until none applies.  Returns (coefficient, degree).
    """
    word = list(word)
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            u, v = word[k], word[k + 1]
            if isinstance(u, MultiPoly) and isinstance(v, MultiPoly):
                word[k:k + 2] = [u * v]
            elif u == "x" and isinstance(v, MultiPoly):
                word[k:k + 2] = [_sigma_once(spec, v, False), "x"]
            elif u == "y" and isinstance(v, MultiPoly):
                word[k:k + 2] = [_sigma_once(spec, v, True), "y"]
            elif u == "y" and v == "x":
                word[k:k + 2] = [spec.a]
            elif u == "x" and v == "y":
                word[k:k + 2] = [_sigma_once(spec, spec.a, False)]
            else:
                continue
            changed = True
            break
    coef = spec.ring.one()
    degree = 0
    for letter in word:
        if isinstance(letter, MultiPoly):
            assert degree == 0, "coefficient to the right of a generator"
            coef = coef * letter
        elif letter == "x":
            assert degree >= 0
            degree += 1
        else:
            assert degree <= 0
            degree -= 1
    return coef, degree


def element_words(u: GWAElement):
    for i, d in u.comps.items():
        yield [d] + (["x"] * i if i > 0 else ["y"] * (-i))


def slow_mul(spec: GWASpec, u: GWAElement, v: GWAElement) -> GWAElement:
    out = spec.zero
    for wu in element_words(u):
        for wv in element_words(v):
            coef, deg = rewrite_word(spec, wu + wv)
            out = out + spec.element({deg: coef})
    return out


# ---- polynomials via sympy ----------------------------------------------------------

def to_sympy(p: MultiPoly):
    syms = sympy.symbols(f"z1:{p.n + 1}")
    expr = sympy.Integer(0)
    for mono, c in p.items():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for s, e in zip(syms, mono):
            term *= s ** e
        expr += term
    return sympy.expand(expr), syms


def from_sympy(expr, n: int, kind: str) -> MultiPoly:
    syms = sympy.symbols(f"z1:{n + 1}")
    expr = sympy.expand(expr)
    out = {}
    for term in sympy.Add.make_args(expr):
        if term == 0:
            continue
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict() if rest != 1 else {}
        mono = tuple(int(powers.get(s, 0)) for s in syms)
        out[mono] = out.get(mono, 0) + Fraction(int(coeff.p), int(coeff.q))
    return MultiPoly(out, n, kind)


def sympy_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    a, _ = to_sympy(p)
    b, _ = to_sympy(q)
    return from_sympy(a * b, p.n, p.kind)


def sympy_substitute(p: MultiPoly, images) -> MultiPoly:
    expr, syms = to_sympy(p)
    target = [to_sympy(im)[0] for im in images]
    new = sympy.symbols(f"w1:{len(syms) + 1}")
    expr = expr.subs(dict(zip(syms, new)), simultaneous=True)
    expr = expr.subs(dict(zip(new, target)), simultaneous=True)
    kind = images[0].kind if not any(e < 0 for m, _ in p.items() for e in m) else "laurent"
    return from_sympy(expr, images[0].n, kind)


def sympy_charpoly(m):
    t = sympy.Symbol("t")
    poly = sympy.Matrix(m).charpoly(t)
    return [int(c) for c in reversed(poly.all_coeffs())]
