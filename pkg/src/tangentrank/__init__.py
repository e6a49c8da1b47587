"""Exact-arithmetic certification of dominance and first-order relations for
morphisms parameterized by syzygy matrices of rational curves.
"""

__version__ = "0.1.0"

from .errors import (AllTrialsDegenerate, BothZero, BudgetExceeded,
                     DegenerateParameters, DegreeMismatch, DegreeZero,
                     DimensionMismatch, InconsistentDiagram, NonExactDivision,
                     NonzeroMinor, NotDivisible, NotSquare, OutOfScope,
                     ParseError, ShapeMismatch, TangentRankError)
from .homogpoly import HomogPoly, parse_poly
from .parampoly import ParamPoly, ParamPolyRing
from .pipeline import (Curve, MorphismFH, ProblemDims, SyzygyParams, build_lp,
                       compute_dims, curve_from_params, extract_fh,
                       param_names, pipeline_stages, psi, sample_params,
                       st_jacobian)
from .polymatrix import PolyMatrix
from .rank import (Certificate, FirstOrderRelationProof, JacobianMatrix,
                   RelationMatrix, certify_dominance, detect_first_order_relation,
                   detect_relation, exact_rank, prove_first_order_relation,
                   psi_jacobian, relation_matrix, relation_symbolic)
from .scalars import QQ, Jet, JetRing, PrimeField, PrimeFieldElem, is_prime

__all__ = [name for name in dir() if not name.startswith("_")]
