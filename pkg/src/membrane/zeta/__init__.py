from .completed import (
    ZetaRequest,
    ZetaResult,
    completed_oracle,
    completed_zeta,
    log_form,
    membrane_M,
    multiple_completed_dedekind_2d,
    multiple_completed_zeta_path,
    path_word_integral,
)
from .dirichlet import catalan, dedekind_zeta_convolution, dedekind_zeta_oracle, quadratic_L, riemann_zeta
from .fields import NumberFieldSpec, kronecker
from .oracles import nested_path_oracle, unfolding_oracle
from .theta import (
    RealTheta,
    TruncationPolicy,
    theta_imag_quadratic,
    theta_minus_one_imag,
    theta_minus_one_rational,
    theta_rational,
    theta_real_quadratic,
)

__all__ = [
    "ZetaRequest",
    "ZetaResult",
    "completed_oracle",
    "completed_zeta",
    "log_form",
    "membrane_M",
    "multiple_completed_dedekind_2d",
    "multiple_completed_zeta_path",
    "path_word_integral",
    "catalan",
    "dedekind_zeta_convolution",
    "dedekind_zeta_oracle",
    "quadratic_L",
    "riemann_zeta",
    "NumberFieldSpec",
    "kronecker",
    "nested_path_oracle",
    "unfolding_oracle",
    "RealTheta",
    "TruncationPolicy",
    "theta_imag_quadratic",
    "theta_minus_one_imag",
    "theta_minus_one_rational",
    "theta_rational",
    "theta_real_quadratic",
]
