"""Automorphisms of k[z1, z2]: triangularizable maps versus Lane normal forms.

Run: python demos/plane_dichotomy.py
"""

import random

from gwalab.gwa import GWASpec
from gwalab.growth import exponential_witness, growth_sequence
from gwalab.plane import P2, PlaneEndo, classify_gk_plane, plane_inverse, tame_decompose
from gwalab.samples import conjugate, random_tame, random_triangular

# A triangular map hidden by a tame conjugation.
rng = random.Random(3)
tau = random_triangular(rng)
delta = random_tame(rng, 2)
sigma = conjugate(tau, delta)
print("tau   =", tau)
print("sigma =", sigma, "degree", sigma.degree())
print("tame factors of sigma:", len(tame_decompose(sigma)))

v = classify_gk_plane(sigma)
cert = v.certificate
print("verdict:", v.gkdim_text)
print("normal form:", cert.normal_form())
print("certificate verifies:", cert.verify(sigma))
for step in v.decision_path():
    print("  -", step)

# Growth of the GWA of the normal form, with a = z1.
spec = GWASpec(P2, cert.normal_form(), P2.var(0))
rep = growth_sequence(spec, [spec.one, spec.base(P2.var(0)), spec.base(P2.var(1)),
                             spec.x, spec.y], 10)
print("dims:", rep.dims, "fit %.2f" % float(rep.fit.estimate))

# A Lane normal form: (z2, z1 + z2^2) is not conjugate to a triangular map.
quad = PlaneEndo.parse("z2", "z1 + z2^2")
v = classify_gk_plane(quad)
print("\n(z2, z1 + z2^2):", v.gkdim_text, v.to_json()["lane_degrees"])
print("inverse:", plane_inverse(quad))

# Words in x and z2 of length p give 2^(p+1) independent elements.
spec = GWASpec(P2, quad, P2.one())
print("witness ranks:", [exponential_witness(spec, P2.var(1), p) for p in range(5)])
rep = growth_sequence(spec, [spec.one, spec.base(P2.var(0)), spec.base(P2.var(1)), spec.x], 9)
print("dims:", rep.dims, "verdict", rep.fit.kind)
