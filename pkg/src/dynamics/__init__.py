"""Planar systems, linearizability quantities, Darboux certificates, period constants and bifurcations."""
from .systems import (COMPLEX_STATE, RICCATI_PARAMETERS, STATE, ComplexSystem, PlanarSystem,
                      PolynomialField, analysis_ring, complexify, general_family, linear_system,
                      riccati_family)
from .conditions import (CENTER_CAVEAT, CenterCondition, center_condition, center_conditions,
                         linearizability_components, linearizability_ideal)
from .linquant import (LinTransform, LinearizabilityComputer, QuantityList,
                       linearizability_quantities, pair_scales, real_pair, span_agreement,
                       transform_residual)
from .darboux import (CertificateReport, DarbouxFactor, FactorSearch, LinearizationCertificate,
                      cofactor_of, expand_linearization, linearization_residual, search_factors,
                      verify_certificate)
from .period import (PeriodCoefficients, PeriodComputer, PolarForm, RadialSeries,
                     matches_up_to_positive_constant, period_coefficients, reference_scales,
                     solve_vk, to_polar)
from .numeric import PeriodOracle, numeric_period
from .bifurcation import (BifurcationAnalyzer, Restriction, SignSearchResult, WeakCenterReport,
                          alternating_sign_search, residual_I6, restrict, verify_obstruction_poly,
                          weak_center_order)

__all__ = [
    'COMPLEX_STATE', 'RICCATI_PARAMETERS', 'STATE', 'ComplexSystem', 'PlanarSystem',
    'PolynomialField', 'analysis_ring', 'complexify', 'general_family', 'linear_system',
    'riccati_family', 'CENTER_CAVEAT', 'CenterCondition', 'center_condition', 'center_conditions',
    'linearizability_components', 'linearizability_ideal', 'LinTransform',
    'LinearizabilityComputer', 'QuantityList', 'linearizability_quantities', 'pair_scales', 'real_pair',
    'span_agreement', 'transform_residual', 'CertificateReport', 'DarbouxFactor', 'FactorSearch',
    'LinearizationCertificate', 'cofactor_of', 'expand_linearization', 'linearization_residual',
    'search_factors', 'verify_certificate', 'PeriodCoefficients', 'PeriodComputer', 'PolarForm',
    'RadialSeries', 'matches_up_to_positive_constant', 'period_coefficients', 'reference_scales',
    'solve_vk', 'to_polar', 'PeriodOracle', 'numeric_period', 'BifurcationAnalyzer', 'Restriction',
    'SignSearchResult', 'WeakCenterReport', 'alternating_sign_search', 'residual_I6', 'restrict',
    'verify_obstruction_poly', 'weak_center_order',
]
