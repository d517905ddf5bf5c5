"""Model file schemas, parsing and JSON conversion of results."""

from riemann_bands.serialize.models import (
    curve_of,
    jsonable,
    parse_coefficients,
    parse_model,
    parse_payload,
    parse_target,
    read_json,
    serialize_model,
    validate_payload,
)
from riemann_bands.serialize.schemas import (
    SCHEMA_MAP,
    BiPolyModel,
    DesignTargetModel,
    HamiltonianModel,
    ModelType,
    TwoBandModel,
    json_pointer,
)

__all__ = [
    "SCHEMA_MAP",
    "BiPolyModel",
    "DesignTargetModel",
    "HamiltonianModel",
    "ModelType",
    "TwoBandModel",
    "curve_of",
    "json_pointer",
    "jsonable",
    "parse_coefficients",
    "parse_model",
    "parse_payload",
    "parse_target",
    "read_json",
    "serialize_model",
    "validate_payload",
]
