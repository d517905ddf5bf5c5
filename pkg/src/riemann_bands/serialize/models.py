"""Read and write model files.

``parse_payload`` validates a decoded JSON document against the model
schemas and returns the domain object; ``serialize_model`` is its inverse.
``jsonable`` turns analysis results (numpy scalars and arrays, complex
numbers, dataclasses, enums) into plain JSON values.
"""

from __future__ import annotations

import dataclasses
import json
import logging
from enum import Enum
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from riemann_bands.design.coefficients import NAMES, TwoBandCoefficients
from riemann_bands.design.solver import DesignTarget
from riemann_bands.errors import ModelInvalid, ParseError, SchemaViolation
from riemann_bands.lattice import BlochHamiltonian, TwoBandNN, char_poly
from riemann_bands.polyalg import BiPoly
from riemann_bands.serialize.schemas import (
    MODEL_ADAPTER,
    BiPolyModel,
    CoefficientSet,
    DesignTargetModel,
    HamiltonianModel,
    TwoBandModel,
    json_pointer,
    to_complex,
    to_pair,
)

logger = logging.getLogger(__name__)

Model = BlochHamiltonian | BiPoly | TwoBandCoefficients


def read_json(path: Path) -> dict:
    """Decode a JSON file.

    Raises
    ------
    ParseError
        If the file is missing, unreadable or not a JSON object.
    """
    path = Path(path)
    try:
        with open(path) as f:
            data = json.load(f)
    except FileNotFoundError as exc:
        raise ParseError(f"Model file not found: {path}") from exc
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"Cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be a JSON object, got {type(data).__name__}")
    return data


def _raise_first(exc: ValidationError, tag: str | None) -> None:
    first = exc.errors()[0]
    raise SchemaViolation(json_pointer(tuple(first["loc"]), tag), first["msg"]) from exc


def validate_payload(data: dict) -> HamiltonianModel | BiPolyModel | TwoBandModel:
    """Schema-validate a decoded model document.

    Raises
    ------
    SchemaViolation
        With a JSON pointer to the first offending field.
    """
    tag = data.get("type") if isinstance(data, dict) else None
    try:
        model = MODEL_ADAPTER.validate_python(data)
    except ValidationError as exc:
        _raise_first(exc, tag)
    problems = model.violations()
    if problems:
        pointer, message = problems[0]
        raise SchemaViolation(pointer, message)
    return model


def _coefficients(cs: CoefficientSet) -> TwoBandCoefficients:
    return TwoBandCoefficients(**{n: to_complex(getattr(cs, n)) for n in NAMES})


def to_domain(model: HamiltonianModel | BiPolyModel | TwoBandModel) -> Model:
    """Domain object for a validated document."""
    try:
        if isinstance(model, HamiltonianModel):
            return BlochHamiltonian.from_hoppings(
                model.r, {(h.m, h.n, h.s): to_complex(h.t) for h in model.hoppings}
            )
        if isinstance(model, BiPolyModel):
            coeffs = np.array([[to_complex(c) for c in row] for row in model.coeffs])
            return BiPoly.from_coeffs(coeffs, z_shift=model.z_shift)
        return _coefficients(model.coefficients)
    except ModelInvalid:
        raise
    except ValueError as exc:
        raise ModelInvalid(str(exc)) from exc


def parse_payload(data: dict) -> Model:
    return to_domain(validate_payload(data))


def curve_of(model: Model) -> BiPoly:
    """Characteristic curve of any parsed model."""
    if isinstance(model, BlochHamiltonian):
        return char_poly(model)
    if isinstance(model, TwoBandCoefficients):
        return model.to_bipoly()
    return model


def parse_model(path: Path) -> BlochHamiltonian | BiPoly:
    """Parse a model file into a Hamiltonian or a cleared curve.

    Two-band coefficient files come back as their curve. Degrees are logged.

    Parameters
    ----------
    path : Path
        JSON model file.

    Returns
    -------
    BlochHamiltonian or BiPoly

    Raises
    ------
    ParseError
        If the file cannot be read.
    SchemaViolation
        If it does not match a model schema.
    """
    model = parse_payload(read_json(path))
    if isinstance(model, TwoBandCoefficients):
        model = model.to_bipoly()
    if isinstance(model, BlochHamiltonian):
        logger.info("Parsed Hamiltonian r=%d, p=%d, q=%d from %s", model.r, model.p, model.q, path)
    else:
        logger.info("Parsed curve r=%d, u=%d, z_shift=%d from %s", model.r, model.u, model.z_shift, path)
    return model


def parse_coefficients(data: dict) -> TwoBandCoefficients:
    """Two-band coefficients from a ``two_band`` document or a curve of that shape."""
    model = parse_payload(data)
    if isinstance(model, TwoBandCoefficients):
        return model
    return TwoBandCoefficients.from_bipoly(curve_of(model))


def parse_target(data: dict):
    """Design target from a decoded ``{"targets": [...], "anchor": ...}`` document."""
    try:
        model = DesignTargetModel.model_validate(data)
    except ValidationError as exc:
        _raise_first(exc, None)
    try:
        return DesignTarget(tuple(to_complex(t) for t in model.targets), to_complex(model.anchor))
    except ValueError as exc:
        raise SchemaViolation("/targets", str(exc)) from exc


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------


def serialize_model(model: Model | TwoBandNN, name: str | None = None) -> dict:
    """JSON document for a model; ``parse_payload`` reads it back unchanged."""
    if isinstance(model, TwoBandNN):
        model = model.to_hamiltonian()
    if isinstance(model, BlochHamiltonian):
        doc = HamiltonianModel(
            r=model.r,
            hoppings=[
                {"m": m, "n": n, "s": s, "t": to_pair(t)}
                for (m, n, s), t in sorted(model.hoppings.items())
                if t != 0
            ],
        )
    elif isinstance(model, BiPoly):
        doc = BiPolyModel(
            coeffs=[[to_pair(c) for c in row] for row in model.coeffs],
            z_shift=model.z_shift,
        )
    elif isinstance(model, TwoBandCoefficients):
        doc = TwoBandModel(
            coefficients=CoefficientSet(**{n: to_pair(getattr(model, n)) for n in NAMES})
        )
    else:
        raise TypeError(f"Cannot serialize {type(model).__name__}")
    out = doc.model_dump(mode="json", exclude_none=True)
    if name is not None:
        out["name"] = name
    return out


def jsonable(value):
    """Plain JSON value for results: complex → ``[re, im]``, arrays → lists."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return to_pair(value)
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if hasattr(value, "one_line"):
        return value.one_line()
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        if hasattr(value, "to_dict"):
            return jsonable(value.to_dict())
        return {f.name: jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [jsonable(v) for v in value]
    if value is None or isinstance(value, str):
        return value
    return str(value)
