"""Spherical analysis of the Olshanski pair (SL(inf), SU(inf)) at desk scale.

Class-B functions and their parameter space, the densities behind them,
finite-rank group elements and spherical functions, Gram-matrix
certification of positive/negative type, and Bochner-type synthesis.
"""
from .params import (
    EMPTY,
    Alpha,
    NonRealSpectrumError,
    elementary_from_power_sums,
    make_alpha,
    param_distance,
    power_sum,
    roots_from_elementary,
    shifted_power_sum,
)
from .classb import (
    ClassBSamples,
    OrderAmbiguousError,
    SeriesDivergentError,
    classb_sup_distance,
    compactness_bounds,
    log_derivative,
    log_derivative_series,
    pi_abs2,
    pi_eval,
    recover_alpha,
    recover_alpha_from_samples,
    recover_order,
    sample,
)
from .measures import (
    DensityGrid,
    char_function,
    convolve,
    density_eval,
    density_grid,
    weak_convergence_check,
)
from .group import (
    GroupElement,
    cartan_profile,
    diag_element,
    embed,
    g0,
    identity,
    random_sl,
    random_su,
    cartan_profiles,
    spherical_eval,
    spherical_from_profiles,
    spherical_limit_test,
)
from .kernels import (
    GramReport,
    gram_matrix,
    negtype_check,
    pair_profiles,
    psd_check,
    schoenberg_check,
)
from .bochner import (
    DiscreteParamMeasure,
    boundedness_check,
    design_elements,
    fit_measure,
    negative_from_profiles,
    positive_from_profiles,
    synth_negative,
    synth_positive,
)

__version__ = "0.1.0"
