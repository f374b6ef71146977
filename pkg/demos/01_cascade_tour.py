"""
Strongly orthogonal roots and layer decompositions
==================================================

Walk through the cascade of a few real forms and look at the layers.
"""

from cascadekit import (build_nilradical, check_setup, kostant_cascade, layer_decomposition,
                        layer_sets, restricted_datum, sigma_involution)
from cascadekit.rootkit import root_label

# A3: two cascade roots, the second layer is just g_{e2-e3}
R = restricted_datum("sl(4,R)")
betas = kostant_cascade(R)
print("betas:", [root_label(b) for b in betas])
for r, lay in enumerate(layer_sets(R, betas), start=1):
    print(f"  layer {r}:", sorted(root_label(a) for a in lay))

# sigma pairs the roots of a layer so that a + sigma(a) = beta
for a, b in sigma_involution(R, betas, 1).items():
    print(f"  {root_label(a):6s} <-> {root_label(b)}")

# su(2,4) has restricted roots of type BC2; e2 sits alone in layer 2 and is fixed by sigma
R = restricted_datum("su(2,4)")
betas = kostant_cascade(R)
print("\nsu(2,4) betas:", [root_label(b) for b in betas], "mult:",
      {root_label(a): R.mult[a] for a in R.positive_roots})
print("  sigma_2:", {root_label(a): root_label(b) for a, b in sigma_involution(R, betas, 2).items()})

# Decompositions and the setup check
for name in ["sl(4,R)", "so(3,4)", "sl(3,H)", "split-G2"]:
    D = layer_decomposition(build_nilradical(name))
    rep = check_setup(D)
    print(f"\n{name}: dims {D.dims()}  d={D.d}  c={D.c}  setup ok={rep.ok}")
