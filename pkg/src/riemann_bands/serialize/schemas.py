"""Pydantic schemas for model, coefficient and target files.

Complex numbers are accepted as a bare number, a string such as
``"0.5-1j"``, a ``[re, im]`` pair or a ``{"re": .., "im": ..}`` mapping,
and are always written back as ``[re, im]``. Model files carry a ``type``
tag selecting one of three shapes:

- ``hamiltonian``: band count and a list of hoppings ``(m, n, s, t)``;
- ``bipoly``: the curve's coefficient array (rows ω powers, columns z
  powers) and the z power the Laurent form was multiplied by;
- ``two_band``: the seven coefficients of ``zω² + ω Σ A_s z^s + Σ B_s z^s``.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Annotated, Literal, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, TypeAdapter

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Complex values
# ---------------------------------------------------------------------------


def _as_pair(value) -> tuple[float, float]:
    if isinstance(value, dict):
        if set(value) - {"re", "im"}:
            raise ValueError(f"complex mapping takes only 're' and 'im', got {sorted(value)}")
        return float(value.get("re", 0.0)), float(value.get("im", 0.0))
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex pair needs 2 entries, got {len(value)}")
        return float(value[0]), float(value[1])
    if isinstance(value, bool):
        raise ValueError("booleans are not complex numbers")
    if isinstance(value, (int, float, complex, str)):
        try:
            c = complex(value.replace(" ", "")) if isinstance(value, str) else complex(value)
        except ValueError as exc:
            raise ValueError(f"cannot read {value!r} as a complex number") from exc
        return c.real, c.imag
    raise ValueError(f"cannot read {type(value).__name__} as a complex number")


ComplexValue = Annotated[tuple[float, float], BeforeValidator(_as_pair)]


def to_complex(pair: tuple[float, float]) -> complex:
    return complex(pair[0], pair[1])


def to_pair(value: complex) -> list[float]:
    c = complex(value)
    return [float(c.real), float(c.imag)]


# ---------------------------------------------------------------------------
# Model file schemas
# ---------------------------------------------------------------------------


class ModelType(str, Enum):
    """Model file ``type`` tags."""

    HAMILTONIAN = "hamiltonian"
    BIPOLY = "bipoly"
    TWO_BAND = "two_band"


class HoppingEntry(BaseModel):
    """One hopping ``t_{mn,s}`` with 1-based band indices."""

    model_config = ConfigDict(extra="forbid")

    m: int = Field(ge=1)
    n: int = Field(ge=1)
    s: int
    t: ComplexValue


class HamiltonianModel(BaseModel):
    """Bloch Hamiltonian file.

    Parameters
    ----------
    r : int
        Band count.
    hoppings : list[HoppingEntry]
        Nonempty hopping list; ranges ``p, q`` are inferred.
    """

    model_config = ConfigDict(extra="forbid")

    type: Literal["hamiltonian"] = "hamiltonian"
    name: str | None = None
    description: str | None = None
    r: int = Field(ge=1, le=6)
    hoppings: list[HoppingEntry] = Field(min_length=1)

    def violations(self) -> list[tuple[str, str]]:
        """Cross-field problems as ``(json_pointer, message)`` pairs."""
        out = []
        for k, h in enumerate(self.hoppings):
            if h.m > self.r:
                out.append((f"/hoppings/{k}/m", f"band index {h.m} exceeds r={self.r}"))
            if h.n > self.r:
                out.append((f"/hoppings/{k}/n", f"band index {h.n} exceeds r={self.r}"))
        if all(to_complex(h.t) == 0 for h in self.hoppings):
            out.append(("/hoppings", "all hoppings vanish"))
        return out


class BiPolyModel(BaseModel):
    """Curve file: ``coeffs[i][j]`` multiplies ``ω^i z^(j − z_shift)``."""

    model_config = ConfigDict(extra="forbid")

    type: Literal["bipoly"] = "bipoly"
    name: str | None = None
    description: str | None = None
    coeffs: list[list[ComplexValue]] = Field(min_length=2)
    z_shift: int = 0

    def violations(self) -> list[tuple[str, str]]:
        width = len(self.coeffs[0])
        out = []
        for i, row in enumerate(self.coeffs):
            if len(row) != width:
                out.append((f"/coeffs/{i}", f"row has {len(row)} entries, expected {width}"))
        if width < 2:
            out.append(("/coeffs/0", "need at least two z powers"))
        return out


class CoefficientSet(BaseModel):
    """Two-band coefficients; missing entries are zero."""

    model_config = ConfigDict(extra="forbid")

    A0: ComplexValue = (0.0, 0.0)
    A1: ComplexValue = (0.0, 0.0)
    A2: ComplexValue = (0.0, 0.0)
    B0: ComplexValue = (0.0, 0.0)
    B1: ComplexValue = (0.0, 0.0)
    B2: ComplexValue = (0.0, 0.0)
    B3: ComplexValue = (0.0, 0.0)


class TwoBandModel(BaseModel):
    """Two-band coefficient file."""

    model_config = ConfigDict(extra="forbid")

    type: Literal["two_band"] = "two_band"
    name: str | None = None
    description: str | None = None
    coefficients: CoefficientSet

    def violations(self) -> list[tuple[str, str]]:
        c = self.coefficients
        if to_complex(c.A2) == 0 and to_complex(c.B3) == 0:
            return [("/coefficients", "A2 and B3 both vanish")]
        return []


ModelFile = Annotated[
    Union[HamiltonianModel, BiPolyModel, TwoBandModel],
    Field(discriminator="type"),
]

MODEL_ADAPTER: TypeAdapter = TypeAdapter(ModelFile)


# ---------------------------------------------------------------------------
# Design inputs
# ---------------------------------------------------------------------------


class DesignTargetModel(BaseModel):
    """Design target file: six ω locations and the A₂ gauge anchor."""

    model_config = ConfigDict(extra="forbid")

    targets: list[ComplexValue] = Field(min_length=6, max_length=6)
    anchor: ComplexValue = (2 ** (-1 / 3), 0.0)


# ---------------------------------------------------------------------------
# Schema lookup
# ---------------------------------------------------------------------------

SCHEMA_MAP: dict[str, type[BaseModel]] = {
    ModelType.HAMILTONIAN.value: HamiltonianModel,
    ModelType.BIPOLY.value: BiPolyModel,
    ModelType.TWO_BAND.value: TwoBandModel,
    "design_target": DesignTargetModel,
}


def json_pointer(loc: tuple, tag: str | None = None) -> str:
    """JSON pointer for a pydantic error location, dropping the union tag.

    Examples
    --------
    >>> json_pointer(("hamiltonian", "hoppings", 0, "m"), tag="hamiltonian")
    '/hoppings/0/m'
    """
    parts = list(loc)
    if tag is not None and parts and parts[0] == tag:
        parts = parts[1:]
    # BeforeValidator wrappers show up as trailing function tags
    parts = [p for p in parts if not (isinstance(p, str) and p.startswith("function-"))]
    return "/" + "/".join(str(p) for p in parts) if parts else "/"
