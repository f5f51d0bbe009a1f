"""Numerical verification toolkit for contact stationary Legendrian geometry.

Layered, bottom to top:

- jets: exact value/gradient/Hessian arithmetic for immersion components
- contact: the ambient sphere's contact structure (Reeb field, J, residuals)
- geom: frames, induced metric, second fundamental form, Gauss-equation Ricci
- identities: residuals for the differential/algebraic identities
- pinch: pinching thresholds and the hypothesis classifier
- zoo: built-in immersion families with closed-form oracles
- verify / cli: grid runners and the command-line front end
"""

from .errors import (CslGeoError, DegenerateMetric, EmptySampleSet,
                     InvalidParams, NonpositiveEpsilon, NoOracle, OffSphere,
                     WrongDimension, ZeroMeanCurvature)
from .jets import Jet2, Jet2Scalar, exp_imag, fd_partial, jet_const, jet_var, jet_vars
from .contact import apply_j, check_on_sphere, contact_alpha, legendrian_residual, real_inner, reeb
from .geom import (FrameData, FundamentalData, build_frame, fundamental_forms,
                   fundamental_from_sigma, gauss_curvature, induced_metric)
from .identities import (EqualityCaseFit, b2_relation_residual, bochner_quantity,
                         cdk_matrix_bound, codazzi_symmetry_residual, csl_residual,
                         dmu_residual, equality_case_fit, main0_chain,
                         principal_determinant_sum, reeb_component_residual,
                         ricci_lower_bound, simons_rhs, surface_f)
from .pinch import (GapReport, ThresholdMargin, classify, reference_constants,
                    threshold_basic, threshold_eps, threshold_main,
                    threshold_main1, threshold_main3, threshold_tg)
from .zoo import (FamilySpec, ImmersionFamily, OracleData, calabi_product,
                  calabi_torus, clifford_torus, family_from_spec, oracle,
                  totally_geodesic, validate_spec)
from .verify import RunConfig, run_scan, run_verify

__version__ = "0.1.0"
