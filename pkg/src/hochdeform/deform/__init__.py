"""Truncated formal deformations: residuals, obstructions, extension, gauge."""

from .series import DeformationSeries, ProductFamilySeries, TruncatedElement
from .sphere import (
    CheckResult,
    Extension,
    check_sdgen,
    cocycle_check,
    derivations,
    exp_series,
    extend,
    extend_step,
    extract_obstruction,
    formula_obstruction,
    gauge_class_check,
    gauge_transform,
    obstruction,
    s3_obstruction,
    sdgen_residual,
)
from .tertiary import (
    check_family_conditions,
    check_tertass,
    cochain_family,
    epsilon_from_family,
    extract_tert_obstruction,
    formula_tert_obstruction,
    tert_cocycle_check,
    tert_extend,
    tert_extend_step,
    tert_gauge_check,
    tert_gauge_transform,
    tert_obstruction,
    tertass_residual,
    trivial_family,
)

__all__ = [name for name in dir() if not name.startswith("_")]
