"""
Pfaffians, densities and the semi-invariant symbol
==================================================
"""


from cascadekit import (build_nilradical, dp_symbol, formal_degree, layer_decomposition,
                        plancherel_density, quasicenter_det, semiinvariance_check)
from cascadekit.pfaff import b_lambda_matrix, variable_labels

D = layer_decomposition(build_nilradical("sl(4,R)"))

# The form b_lambda on v_1, with lambda1 the coordinate dual to g_{e1-e4}
for row in b_lambda_matrix(D, 1):
    print(["%6s" % x.format() for x in row])

P = plancherel_density(D)
print("P =", P.format(), " variables:", variable_labels(D))
print("formal degree at (2, 7):", formal_degree(D, (2, 7)))

# P(t lambda) = t^{sum d} P(lambda)
print("P(3*lambda) == 9 P(lambda):", P.scale_vars([3, 3]) == P * 9)

# Pf * Det carries the modular weight
for name in ["sl(4,R)", "su(2,1)", "sl(3,H)", "so(2,5)", "split-G2"]:
    D = layer_decomposition(build_nilradical(name))
    sym, meta = dp_symbol(D)
    rep = semiinvariance_check(D)
    print(f"{name:9s} P={plancherel_density(D).format():28s} Det={quasicenter_det(D).format():14s}"
          f" deg(Pf*Det)={meta['degree']} ok={rep['ok']}")

# Integer values at lattice points
D = layer_decomposition(build_nilradical("split-A(3)"))
P = plancherel_density(D)
print([(lam, int(P.evaluate(lam))) for lam in [(1, 0), (2, 5), (-3, 1)]])
