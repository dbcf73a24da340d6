"""polinv: exact-arithmetic toolkit for polarizations of group invariants,
graded comparison against full invariant algebras, and Hilbert-Mumford
nullcone certificates."""

from ._version import __version__
from .limits import Caps, CapExceededError, DEFAULT_CAPS, DEFAULT_SEED
from .linalg import Matrix, rref, solve_in_span, strict_positive_functional
from .poly import (Poly, VariableLayout, homogeneous_bivariate_gcd, parse_poly,
                   poly_to_string)
from .groups import (DiagonalAction, MatrixGroup, act, builtin_family,
                     enumerate_group, invariant_dimension, reynolds, same_orbit)
from .polarization import (GeneratorSet, GradedSpan, certificate_combination,
                           certify_dm, classical_generators, compare_graded_dims,
                           copies_layout, embed_in_copies, graded_span_basis,
                           membership, polarization_generators, polarize,
                           separation_test, wallach_operator)
from .nullcone import (BinaryForm, ProbeVerdict, SubspaceSpec, WeightSystem,
                       binary_form_nullcone_member, binary_nullcone_witness,
                       brute_box_functional, certify_torus, matrix_nilpotent,
                       span_probe_nullcone, subspace_in_common_vgamma,
                       torus_nullcone_member, v_gamma)
from .liealg import (LieAlgebraBasis, LieSubspace, bracket, certify_sl2_r1,
                     certify_sl3, certify_so5, generic_orbit_dimension,
                     jacobian_rank, sl, sl2_invariant_dimension, so5,
                     so5_pol2_generators, so5_trace_invariants,
                     subalgebra_closure)
from .reports import render_structured, render_text
