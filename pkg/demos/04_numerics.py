"""
Quadrature checks on heisenberg3 and unipotent4
===============================================
"""

import numpy as np

from cascadekit.planchnum import (Heisenberg, ModelRep, gaussian_coefficient, hermite_function,
                                  verify_inversion, verify_orthogonality, verify_stepwise_norm)

h0, h1 = hermite_function(0), hermite_function(1)

# matrix coefficient against the closed form
rep = ModelRep(Heisenberg(1), 1.5)
g = (0.3, -0.4, 0.2)
print("coefficient:", rep.coefficient(h0, h0, g), "closed form:", gaussian_coefficient(1.5, g))

# orthogonality relations; the measured formal degree should be |lambda|
for lam in (1.0, 2.0, -1.5):
    r = verify_orthogonality(lam, [h0, h1])
    print(f"lam={lam:5.1f}  measured d={r['formal_degree_measured']:.10f}  rel err={r['max_rel_error']:.1e}")

# Fourier inversion: f(x) = 2 * int Theta_gamma(r_x f) |gamma| d gamma
inv = verify_inversion()
for row in inv["rows"][:5]:
    print("f({}) = {:.8f}  recovered {:.8f}".format(np.round(row["point"], 2), row["value"], row["recovered"]))
print("constant spread:", inv["constant_spread"])

# the stepwise coefficient norm on unipotent4
for lam in ((1.0, 1.0), (2.0, 1.0)):
    r = verify_stepwise_norm(lam)
    print(f"lam={lam}  ||f||^2={r['value']:.12f}  expected {r['expected']:.12f}")
