"""Spectral verification of conformal sphere metrics and lightcone geometry."""

__version__ = "0.1.0"

from .fields import AmbientVector, Covector, ScalarField, SymTensor, Vector
from .sphere import (
    CompatibilityError,
    ShCoeffs,
    SphereGrid,
    build_grid,
    curl_sphere,
    div_sphere,
    div_sym,
    grad_sphere,
    integrate,
    l2_norm,
    laplacian_sphere,
    poisson_solve_sphere,
    random_bandlimited,
    sh_analyze,
    sh_synthesize,
    ylm_field,
)
from .conformal import (
    ConformalMetric,
    NotConformalKillingError,
    ckv_fields,
    conformal_killing_residual,
    deformation_scalar,
    gauss_curvature,
    grad_g,
    integrate_g,
    rotation_fields,
)
from .cone import (
    EmbeddedSurface,
    ExtrinsicData,
    GaussCodazziResiduals,
    embed,
    extrinsic_package,
    gauss_codazzi_residuals,
    null_frame,
)
from .gauge import (
    GaugeFunction,
    adjoint_identity_check,
    curl_invariance_check,
    divergence_free_gauge,
    integrability_residual,
    normalize_trchi,
    rescale_frame,
)
from .kazdan_warner import (
    KWReport,
    kw_integral,
    kw_integral_general,
    verify_proof_chain,
)
from .funcspecs import FunctionSpec, build_field, parse_function_spec
from .suites import SuiteReport, convergence_study, run_suite
