"""Tests for riemann_bands.serialize."""

from __future__ import annotations

import json
from enum import Enum

import numpy as np
import pytest
from pydantic import ValidationError

from riemann_bands.design import TwoBandCoefficients
from riemann_bands.errors import ParseError, SchemaViolation
from riemann_bands.lattice import BlochHamiltonian, TwoBandNN, char_poly
from riemann_bands.polyalg import BiPoly
from riemann_bands.riemann import Permutation
from riemann_bands.serialize import (
    SCHEMA_MAP,
    HamiltonianModel,
    ModelType,
    curve_of,
    json_pointer,
    jsonable,
    parse_coefficients,
    parse_model,
    parse_payload,
    parse_target,
    read_json,
    serialize_model,
    validate_payload,
)
from riemann_bands.serialize.schemas import HoppingEntry

SSH_DOC = {
    "type": "hamiltonian",
    "r": 2,
    "hoppings": [
        {"m": 1, "n": 2, "s": 0, "t": 2.0},
        {"m": 1, "n": 2, "s": -1, "t": 1.0},
        {"m": 2, "n": 1, "s": 0, "t": 2.0},
        {"m": 2, "n": 1, "s": 1, "t": 1.0},
    ],
}


# ---- Complex values ----


class TestComplexValue:
    @pytest.mark.parametrize(
        "raw, expected",
        [
            (1.5, (1.5, 0.0)),
            ("0.5-1j", (0.5, -1.0)),
            ("0.5 - 1j", (0.5, -1.0)),
            ([1, 2], (1.0, 2.0)),
            ({"re": 1, "im": 2}, (1.0, 2.0)),
            ({"im": 3}, (0.0, 3.0)),
        ],
    )
    def test_accepted_forms(self, raw, expected):
        assert HoppingEntry(m=1, n=1, s=0, t=raw).t == expected

    @pytest.mark.parametrize("raw", [[1, 2, 3], True, "abc", {"re": 1, "phase": 2}])
    def test_rejected_forms(self, raw):
        with pytest.raises(ValidationError):
            HoppingEntry(m=1, n=1, s=0, t=raw)


# ---- Model files ----


class TestModelType:
    def test_string_equality(self):
        assert ModelType.HAMILTONIAN == "hamiltonian"
        assert ModelType.TWO_BAND == "two_band"

    def test_schema_map_covers_types(self):
        assert {t.value for t in ModelType} <= set(SCHEMA_MAP)
        assert SCHEMA_MAP["hamiltonian"] is HamiltonianModel


class TestValidatePayload:
    def test_valid_hamiltonian(self):
        model = validate_payload(SSH_DOC)
        assert isinstance(model, HamiltonianModel)
        assert len(model.hoppings) == 4

    def test_band_index_above_r(self):
        doc = json.loads(json.dumps(SSH_DOC))
        doc["hoppings"][2]["m"] = 3
        with pytest.raises(SchemaViolation, match="exceeds r=2") as info:
            validate_payload(doc)
        assert info.value.pointer == "/hoppings/2/m"

    def test_band_index_below_one(self):
        doc = json.loads(json.dumps(SSH_DOC))
        doc["hoppings"][0]["n"] = 0
        with pytest.raises(SchemaViolation) as info:
            validate_payload(doc)
        assert info.value.pointer == "/hoppings/0/n"

    def test_vanishing_hoppings(self):
        doc = {"type": "hamiltonian", "r": 1, "hoppings": [{"m": 1, "n": 1, "s": 1, "t": 0}]}
        with pytest.raises(SchemaViolation, match="vanish"):
            validate_payload(doc)

    def test_unknown_type(self):
        with pytest.raises(SchemaViolation):
            validate_payload({"type": "tensor", "r": 2})

    def test_extra_field(self):
        with pytest.raises(SchemaViolation):
            validate_payload({**SSH_DOC, "colour": "blue"})

    def test_ragged_curve(self):
        doc = {"type": "bipoly", "coeffs": [[1, 0, 1], [0, 1]]}
        with pytest.raises(SchemaViolation) as info:
            validate_payload(doc)
        assert info.value.pointer == "/coeffs/1"

    def test_two_band_needs_degree(self):
        doc = {"type": "two_band", "coefficients": {"A0": 1, "B1": 1}}
        with pytest.raises(SchemaViolation) as info:
            validate_payload(doc)
        assert info.value.pointer == "/coefficients"

    def test_json_pointer(self):
        assert json_pointer(("bipoly", "coeffs", 1), tag="bipoly") == "/coeffs/1"
        assert json_pointer(()) == "/"


class TestParsePayload:
    def test_ssh(self, ssh):
        assert parse_payload(SSH_DOC) == ssh

    def test_curve_of_hamiltonian(self, ssh):
        curve = curve_of(parse_payload(SSH_DOC))
        assert np.array_equal(curve.coeffs, char_poly(ssh).coeffs)
        assert curve.z_shift == 1

    def test_two_band(self, registry, hexagon_coeffs):
        model = parse_payload(registry.payload("hexagon"))
        assert isinstance(model, TwoBandCoefficients)
        assert model.allclose(hexagon_coeffs, 1e-12)

    def test_parse_coefficients_from_curve(self, hexagon_coeffs):
        doc = serialize_model(hexagon_coeffs.to_bipoly())
        assert parse_coefficients(doc).allclose(hexagon_coeffs, 1e-14)


# ---- Writing ----


class TestSerializeModel:
    def test_hamiltonian_reads_back(self, ssh):
        doc = serialize_model(ssh, name="ssh")
        assert doc["type"] == "hamiltonian"
        assert doc["name"] == "ssh"
        assert parse_payload(doc) == ssh

    def test_curve_reads_back(self, three_band_curve):
        back = parse_payload(serialize_model(three_band_curve))
        assert isinstance(back, BiPoly)
        assert np.array_equal(back.coeffs, three_band_curve.coeffs)
        assert back.z_shift == three_band_curve.z_shift

    def test_coefficients_read_back(self, bent_coeffs):
        doc = serialize_model(bent_coeffs)
        assert doc["coefficients"]["A1"] == [0.0, 0.0]
        assert parse_payload(doc) == bent_coeffs

    def test_lattice_written_as_hamiltonian(self):
        lattice = TwoBandNN(1, 0, 0.5, 0.2, 0, 1, 0.3)
        doc = serialize_model(lattice)
        assert doc["type"] == "hamiltonian"
        assert parse_payload(doc) == BlochHamiltonian.from_hoppings(2, lattice.to_hamiltonian().hoppings)

    def test_unknown_object(self):
        with pytest.raises(TypeError):
            serialize_model("ssh")


class TestJsonable:
    def test_numbers(self):
        assert jsonable(np.float64(0.5)) == 0.5
        assert jsonable(np.int64(3)) == 3
        assert jsonable(np.bool_(True)) is True
        assert jsonable(1 - 2j) == [1.0, -2.0]

    def test_containers(self):
        value = {"a": np.array([1j, 2]), 3: (None, "x")}
        assert jsonable(value) == {"a": [[0.0, 1.0], [2.0, 0.0]], "3": [None, "x"]}

    def test_enum_and_permutation(self):
        class Colour(Enum):
            RED = "red"

        assert jsonable(Colour.RED) == "red"
        assert jsonable(Permutation.from_cycles(3, [(1, 2)])) == [2, 1, 3]

    def test_dataclass(self, hexagon_coeffs):
        out = jsonable(hexagon_coeffs)
        assert out["A1"] == [0.0, 0.0]
        json.dumps(out)


# ---- Files ----


class TestFiles:
    def test_read_json_missing(self, tmp_path):
        with pytest.raises(ParseError, match="not found"):
            read_json(tmp_path / "nope.json")

    def test_read_json_garbage(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ParseError):
            read_json(path)

    def test_read_json_needs_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        with pytest.raises(ParseError, match="JSON object"):
            read_json(path)

    def test_parse_model_returns_curve_for_coefficients(self, tmp_path, hexagon_coeffs):
        path = tmp_path / "hexagon.json"
        path.write_text(json.dumps(serialize_model(hexagon_coeffs)))
        curve = parse_model(path)
        assert isinstance(curve, BiPoly)
        assert curve.r == 2

    def test_parse_model_keeps_hamiltonian(self, tmp_path, ssh):
        path = tmp_path / "ssh.json"
        path.write_text(json.dumps(SSH_DOC))
        assert parse_model(path) == ssh


class TestParseTarget:
    def test_roots_of_unity(self):
        doc = {"targets": [[np.cos(np.pi * k / 3), np.sin(np.pi * k / 3)] for k in range(1, 7)]}
        target = parse_target(doc)
        assert len(target.targets) == 6
        assert target.anchor == pytest.approx(2 ** (-1 / 3))

    def test_count(self):
        with pytest.raises(SchemaViolation):
            parse_target({"targets": [1, 2, 3, 4, 5]})

    def test_duplicates(self):
        with pytest.raises(SchemaViolation) as info:
            parse_target({"targets": [1, 1, 2, 3, 4, 5]})
        assert info.value.pointer == "/targets"
