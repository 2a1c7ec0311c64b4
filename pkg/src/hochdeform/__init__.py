"""Exact workbench for sphere-indexed and tertiary Hochschild deformations."""

from .algebra import AlgebraMorphism, FiniteAlgebra, Quintuple, validate_algebra, validate_quintuple
from .cochains import Cochain, CochainSpace, Coboundary, delta_d_operator, gimel_operator
from .cohomology import sphere_cohomology_dims, tertiary_cohomology_dims
from .deform import DeformationSeries, ProductFamilySeries
from .errors import ConsistencyError, PreconditionError, SchemaError, ValidationError
from .fields import GF, QQ, field_from_name
from .presets import preset_algebra, preset_quintuple

__version__ = "0.1.0"
