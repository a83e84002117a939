"""Finite order of unimodular matrices and the GK dimension of Laurent GWAs.

Run: python demos/laurent_orders.py
"""

from gwalab.intmat import cyclotomic, max_finite_order, order_by_iteration
from gwalab.laurent import LaurentAuto, classify_gk_laurent, order_verdict
from gwalab.samples import companion, random_conjugate
import random

# A one-parameter family of order-2 matrices.
for q in (-2, 0, 3):
    m = ((1 - q, q), (2 - q, q - 1))
    v = order_verdict(m)
    print(q, m, "order", v.order, "|", classify_gk_laurent(LaurentAuto(m, (1, 1))).gkdim_text)

# The order comes from the cyclotomic factors of the characteristic polynomial,
# and never exceeds the largest finite order available in GL_n(Z).
rng = random.Random(1)
for n, k in ((2, 6), (4, 12)):
    m = random_conjugate(rng, companion(cyclotomic(k)))
    v = order_verdict(m)
    print(f"n = {n}: order {v.order}, by iteration {order_by_iteration(m, max_finite_order(n))},"
          f" bound {max_finite_order(n)}")

# Infinite order: a unipotent block, and a matrix with a non-cyclotomic factor.
for m in (((1, 1), (0, 1)), ((2, 1), (1, 1))):
    v = order_verdict(m)
    print(m, v.to_json())
    print("  ", classify_gk_laurent(LaurentAuto(m, (1, 1))).gkdim_text)
