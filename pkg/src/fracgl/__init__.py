"""Grunwald-Letnikov derivatives in one and several variables.

Also provides the exact translation-operator ring behind the GL weights,
Riemann-Liouville values of power products and the characteristic equation
of the ``h = q x / N`` linkage.
"""

from .characteristic import (
    CharEqProblem,
    CharForm,
    LinkageReport,
    char_lhs_univariate,
    char_residual,
    char_rhs_univariate,
    solve_q,
    verify_gl_rl_linkage,
    verify_polynomial_linkage,
)
from .errors import (
    CharacteristicZeroError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    FracGLError,
    NumericError,
    PoleError,
    TermCapError,
)
from .gl_engine import (
    GLScheme,
    SampledFunction,
    gl_factorized,
    gl_multivariate,
    gl_univariate,
    polynomial_function,
    power_function,
)
from .rl_principal import PowerExponents, rl_power_value
from .special_functions import (
    binomial_real,
    gauss_2f1,
    log_gamma,
    reflection_factor,
)

__version__ = "0.1.0"
