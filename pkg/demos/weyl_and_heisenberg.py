"""Normal forms in generalized Weyl algebras and their growth.

Run: python demos/weyl_and_heisenberg.py
"""

from gwalab.growth import growth_sequence
from gwalab.gwa import gwa_mul, make_heisenberg, make_weyl, verify_power_lemma

# The Weyl algebra is D(sigma, a) over k[z1] with sigma(z1) = z1 - 1 and a = z1.
w = make_weyl()
x, y = w.x, w.y
print("yx =", gwa_mul(w, y, x))
print("xy =", gwa_mul(w, x, y))
print("yx - xy =", gwa_mul(w, y, x) - gwa_mul(w, x, y))

# Elements are sums d_i X_i; x^3 y^2 collapses to a polynomial times x.
print("x^3 y^2 =", x * x * x * y * y)

# x^m and y^m generate a copy of a GWA again, with defining element checked exactly.
print("power lemma m = 1..4:", [verify_power_lemma(w, m) for m in range(1, 5)])

# Growth of the subframe span{1, z1, x, y}: dims are exact, the exponent is a fit.
rep = growth_sequence(w, [w.one, w.base(w.ring.var(0)), x, y], 12)
print("Weyl dims:", rep.dims)
print("Weyl fitted exponent: %.2f" % float(rep.fit.estimate))

# Heisenberg-type algebras over k[z1^+-1, z2^+-1]: H_0 grows like m^3, H_m like m^4.
for m in (0, 1, 2, -2):
    h = make_heisenberg(m)
    zs = h.ring.gens()
    gens = [h.one] + [h.base(z) for z in zs] + [h.base(z ** -1) for z in zs] + [h.x, h.y]
    rep = growth_sequence(h, gens, 12)
    print(f"H{m}: fitted exponent {float(rep.fit.estimate):.2f}, last dims {rep.dims[-3:]}")
