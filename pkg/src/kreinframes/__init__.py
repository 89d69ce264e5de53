"""J-frames in finite-dimensional Krein spaces.

A Krein space here is ``C^n`` with a fundamental symmetry ``J`` (a Hermitian
involution) and the indefinite product ``[x, y] = <Jx, y>``.  The package
detects and builds J-frames, computes their bounds, J-frame operator and
canonical dual, measures angles to the neutral cone, and checks the
operator-level characterizations against user-supplied witnesses.
"""

from .characterization import (OperatorCertificate, construct_j_frame_from_operator,
                               is_j_frame_operator, is_jframe_synthesis, kernel_splits,
                               positive_image_test, projection_in_Q, projection_split_test,
                               reordering_projection_test, search_j_frame_operator,
                               split_from_projection, unitary_reordering_test)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (ClassificationError, DimensionError, GeometryError, KreinError,
                     NeutralVectorError, NotAFrameError, NotAJFrameError, NotSurjectiveError,
                     OperatorError, PreconditionError, SymmetryError)
from .hilbert import FrameBounds, VectorFamily, canonical_dual, frame_bounds, frame_operator, is_frame
from .jframes import (JFrameBounds, JFrameReport, SignPartition, bound_attainers,
                      build_from_maximal_pair, canonical_dual_j_frame, crude_j_frame_bounds,
                      frame_inequality_constants, index_signature, indefinite_reconstruct,
                      is_j_frame, j_frame_bounds, j_frame_decomposition, j_frame_operator,
                      j_frame_operator_by_sum, j_frame_via_inequalities,
                      literal_bound_expressions, partition_by_sign,
                      transition_operator_criterion)
from .krein import (KreinSpace, SubspaceBasis, SubspaceClassification, classify_subspace,
                    definiteness_bound, degenerate_part, friedrichs_angle, gramian,
                    gramian_modulus, indefinite_inner, intersection, is_uniformly_definite,
                    j_adjoint, j_orthogonal_companion, j_selfadjoint_projection,
                    oblique_projection, orthogonal_complement, reduced_min_modulus)
from .neutral import (AngularOperator, ConeAngleReport, angular_operator, cone_correlation,
                      cone_correlation_oracle, cone_cosine, j_frame_by_partition)

__version__ = "0.1.0"
