"""Growth of D(sigma, a) for conjugated triangular sigma, in the natural frame.

For sigma = delta^-1 tau delta the base map can have high degree, which makes
direct computation in D(sigma, a) expensive.  With a certificate
phi^-1 sigma phi = N the map d -> phi^-1(d), x -> x, y -> y is an isomorphism
D(sigma, a) -> D(N, phi^-1(a)).  It carries span{1, z1, z2, x, y} to
span{1, phi^-1(z1), phi^-1(z2), x, y}, so the growth dimensions below are
exactly those of D(sigma, a) with its natural generating subframe.

Run: python demos/triangular_growth_natural_frame.py [cases] [max_degree]
The full 30 cases at max_degree 10 take several minutes.
"""

import random
import sys
import time

from gwalab.growth import growth_sequence
from gwalab.gwa import GWASpec
from gwalab.plane import P2, classify_gk_plane, plane_apply, plane_inverse
from gwalab.samples import conjugate, random_tame, random_triangular

cases = int(sys.argv[1]) if len(sys.argv) > 1 else 4
max_degree = int(sys.argv[2]) if len(sys.argv) > 2 else 8

rng = random.Random(5)
start = time.perf_counter()
fits = []
for k in range(cases):
    tau = random_triangular(rng)
    delta = random_tame(rng, rng.randint(1, 3))
    sigma = conjugate(tau, delta)
    cert = classify_gk_plane(sigma).certificate
    back = plane_inverse(cert.conjugator)
    a = P2.one() if k % 2 == 0 else P2.var(0)
    spec = GWASpec(P2, cert.normal_form(), plane_apply(back, a))
    gens = [spec.one, spec.base(plane_apply(back, P2.var(0))),
            spec.base(plane_apply(back, P2.var(1))), spec.x, spec.y]
    t = time.perf_counter()
    rep = growth_sequence(spec, gens, max_degree)
    fit = float(rep.fit.estimate) if rep.fit is not None and rep.fit.kind == "polynomial" else None
    fits.append(fit)
    shown = "none" if fit is None else f"{fit:.2f}"
    print(f"case {k:2}: deg sigma {sigma.degree():2}, dim V^{max_degree} = {rep.dims[-1]:5},"
          f" fit {shown} ({time.perf_counter() - t:.1f} s)", flush=True)
known = [f for f in fits if f is not None]
if known:
    print(f"fits in [{min(known):.2f}, {max(known):.2f}], total {time.perf_counter() - start:.1f} s")
