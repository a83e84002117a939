"""Lower bounds dim(W^m) >= c_n dim(W) m^n for subspaces of polynomial rings.

Run: python demos/smc_bounds.py
"""

from gwalab.poly import POLYNOMIAL, Ring
from gwalab.smc import smc_constant, smc_constant_recursive, verify_smc_instance

for n in range(5):
    print(f"c_{n} = {smc_constant(n)} (recursion gives {smc_constant_recursive(n)})")

ring = Ring(POLYNOMIAL, 2)
a = ring.parse("z1^2*z2 + 3*z2 - 1")
rep = verify_smc_instance(2, a, [ring.parse("z1*z2^2")], m_max=6)
print("dim W =", rep.dim_w)
for row in rep.rows:
    print(f"m = {row.m}: dim W^m = {row.dim} >= {row.threshold} ({'ok' if row.passed else 'FAIL'})")
