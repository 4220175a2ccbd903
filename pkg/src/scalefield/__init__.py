"""Scaled number structures, relativized operations, bundle fields and
scale-covariant derivatives on lattices."""

from .bundle import (
    AnalyticField,
    ConnectionField,
    Lattice,
    ScalingField,
    Section,
    VectorField,
    build_lattice,
    catalog_field,
    group_act,
    level_of,
)
from .covariant import (
    curl_check,
    d_product_section,
    d_scalar_continuum,
    d_scalar_discrete,
    d_section_continuum,
    d_section_discrete,
    d_section_level_continuum,
    d_section_level_discrete,
    d_section_pos_continuum,
    d_section_pos_discrete,
    d_vector_continuum,
    d_vector_discrete,
)
from .gauge import (
    Couplings,
    GaugeConfig,
    covariance_residual,
    full_covariant_derivative,
    reduce_to_standard,
    su2_transform,
    u1_transform,
)
from .scalars import (
    BaseNumber,
    RelOps,
    RelStructure,
    ScaledValue,
    canonical,
    rel_ops,
    revaluate,
    struct_add,
    struct_scale,
    valuate,
    w_map,
    z_compose,
)
from .vectors import ScaledVector, rel_vector_ops, revaluate_vector, valuate_vector, wsv_map

__version__ = "0.1.0"

__all__ = [
    "AnalyticField",
    "BaseNumber",
    "ConnectionField",
    "Couplings",
    "GaugeConfig",
    "Lattice",
    "RelOps",
    "RelStructure",
    "ScaledValue",
    "ScaledVector",
    "ScalingField",
    "Section",
    "VectorField",
    "build_lattice",
    "canonical",
    "catalog_field",
    "covariance_residual",
    "curl_check",
    "d_product_section",
    "d_scalar_continuum",
    "d_scalar_discrete",
    "d_section_continuum",
    "d_section_discrete",
    "d_section_level_continuum",
    "d_section_level_discrete",
    "d_section_pos_continuum",
    "d_section_pos_discrete",
    "d_vector_continuum",
    "d_vector_discrete",
    "full_covariant_derivative",
    "group_act",
    "level_of",
    "reduce_to_standard",
    "rel_ops",
    "rel_vector_ops",
    "revaluate",
    "revaluate_vector",
    "struct_add",
    "struct_scale",
    "su2_transform",
    "u1_transform",
    "valuate",
    "valuate_vector",
    "w_map",
    "wsv_map",
    "z_compose",
]
