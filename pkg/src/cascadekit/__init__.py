"""Exact cascade decompositions and Plancherel densities for parabolic nilradicals.

Modules
-------
rootkit    restricted root systems with multiplicities, catalog of real forms
liealg     nilradicals with exact structure constants (Chevalley or matrix backend)
cascade    Kostant cascade, layers, setup verification
pfaff      sparse polynomials, Pfaffians, density and modular weights
parabolic  general parabolics, Phi-layers, invariance surrogate
lattice    rational structure and dual-lattice multiplicities
planchnum  quadrature checks on Heisenberg groups and unipotent4
cli        ``python -m cascadekit``
"""
from .rootkit import (CatalogError, RealFormSpec, RestrictedRootDatum, build_root_system,
                      catalog, inner, parse_spec, restricted_datum)
from .liealg import (BasisVector, NilpotentAlgebra, bracket_span, build_nilradical, center,
                     chevalley_nilradical, lower_central_series)
from .cascade import (CascadeDecomposition, SetupReport, check_setup, heisenberg_pairing_check,
                      kostant_cascade, layer_decomposition, layer_sets, sigma_involution)
from .poly import SparsePoly
from .pfaff import (a_diamond, ad_trace_weights, b_lambda_matrix, dp_symbol, formal_degree,
                    pfaffian, plancherel_density, quasicenter_det, semiinvariance_check)
from .parabolic import (build_parabolic, check_intersection_lemmas, check_phi_setup,
                        invariance_class, phi_layers, phi_plancherel_density)
from .lattice import LatticeSpec, multiplicities, rationality_check

__version__ = "0.1.0"
SCHEMA_VERSION = 1
