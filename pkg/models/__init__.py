"""
Modelos numéricos del toolkit Appell F2
Funciones especiales, cuadratura, tablas corregidas y evaluación de F2
"""

from .errors import (
    AppellError,
    DomainError,
    PoleError,
    ParamError,
    DomainEmpty,
    ParseError,
    EvalError,
    CorpusFormatError
)
from .special import (
    HypParams2F1,
    HypParams3F2,
    SeriesResult,
    pochhammer,
    ln_pochhammer_ratio,
    hypergeometric_pfq_series,
    gauss2f1_series,
    clausen3f2_series,
    gauss2f1_euler
)
from .quadrature import QuadratureResult, adaptive_gauss_legendre, beta_kernel_integral
from .tables import table1_closed_forms, table2_closed_form, table1_rows, table1_oracle
from .appell import (
    F2Params,
    EvalPoint,
    F2Method,
    F2Result,
    FamilyId,
    f2_series,
    f2_single_integral,
    f2_double_integral,
    f2_theorem1_shift,
    f2_theorem1_log,
    swap_args,
    transform_x,
    transform_xy,
    f1_series,
    f1_via_f2,
    f2_family_closed,
    match_family,
    f2_evaluate
)

__all__ = [
    'AppellError', 'DomainError', 'PoleError', 'ParamError', 'DomainEmpty',
    'ParseError', 'EvalError', 'CorpusFormatError',
    'HypParams2F1', 'HypParams3F2', 'SeriesResult',
    'pochhammer', 'ln_pochhammer_ratio', 'hypergeometric_pfq_series',
    'gauss2f1_series', 'clausen3f2_series', 'gauss2f1_euler',
    'QuadratureResult', 'adaptive_gauss_legendre', 'beta_kernel_integral',
    'table1_closed_forms', 'table2_closed_form', 'table1_rows', 'table1_oracle',
    'F2Params', 'EvalPoint', 'F2Method', 'F2Result', 'FamilyId',
    'f2_series', 'f2_single_integral', 'f2_double_integral',
    'f2_theorem1_shift', 'f2_theorem1_log',
    'swap_args', 'transform_x', 'transform_xy',
    'f1_series', 'f1_via_f2', 'f2_family_closed', 'match_family', 'f2_evaluate'
]

__version__ = '1.0.0'
