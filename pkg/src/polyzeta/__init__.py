"""Exact engine for geodesic-walk zeta polynomials, linking pairings and
finite-cover L2 invariants on N-regular polyhedral complexes."""

from .complex_core import (Chain, ComplexFormatError, GeneratorError,
                           PolyComplex, ValidationReport, complex_hash,
                           cube_torus, emit_chain, emit_complex, generate,
                           grid_torus, inner_product, octahedron,
                           parse_chain, parse_complex, parse_rational,
                           simplex_boundary, validate)
from .dual_hodge import (DualComplex, DualConstructionError, adjoint_boundary,
                         build_dual, coboundary_chain, emit_dual_complex,
                         star)
from .geodesics import (ClosedGeodesic, OrthoGeodesic, closed_geodesics,
                        orthogeodesic_length_sums, orthogeodesics,
                        signed_length_spectrum)
from .homology import (HodgeDecomposition, NullHomologyError, betti,
                       hodge_decomposition, linking_oracle,
                       pseudo_inverse_apply)
from .l2 import (CoverData, CoverError, NonEquivariantError, SpectralDensity,
                 assemble_cover, build_cyclic_cover, emit_permutations,
                 fk_det, fk_zeta_asymptotic_check, heat_trace, l2_betti,
                 load_cover, parse_permutations, psi_series,
                 quotient_complex, spectral_density, trivial_cover,
                 trivial_holonomy_signed_counts, vn_trace,
                 vn_transfer_traces)
from .linking import (EtaEvaluation, InternalCheckError, SingularSystemError,
                      eta_exact, eta_partial_sum, tail_bound,
                      transfer_length_sums)
from .spectral import (LaplacianMatrix, TransferOperator,
                       check_laplacian_identity, laplacian,
                       spectral_radius_bound, transfer_operator)
from .zeta import (ZetaPolynomial, vanishing_order, zeta_from_geodesics,
                   zeta_of_complex, zeta_polynomial)

__version__ = "0.1.0"
