"""
Layers relative to a parabolic subalgebra
=========================================

Bit i of the mask marks simple root psi_{i+1} as lying in Phi.
"""

from cascadekit import build_nilradical, layer_decomposition
from cascadekit.parabolic import parabolic_report

N = build_nilradical("sl(4,R)")
D = layer_decomposition(N)

print(" mask  dim n_Phi  layers        density   ok")
for mask in range(8):
    rep = parabolic_report(N, D, mask)
    I = [x["I_j"] for x in rep["layers"]]
    print(f"{mask:05b}  {rep['dim_n_phi']:8d}  {str(I):12s}  {rep['density']:8s}  {rep['ok']}")

# so(3,4) has Phi choices where some layer roots restrict like beta itself
N = build_nilradical("so(3,4)")
D = layer_decomposition(N)
for mask in range(8):
    rep = parabolic_report(N, D, mask)
    if any(rep["J_dprime"][r] for r in range(len(rep["J_dprime"]))):
        print("so(3,4)", bin(mask), "J'' =", rep["J_dprime"], "invariance:", rep["checks"]["invariance"])
