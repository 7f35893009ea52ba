import copy
import json
from importlib import resources

import pytest

from densewire.config import load_design_config, parse_design_config, set_parameter
from densewire.errors import ConfigInvalid, UnknownParameter


@pytest.fixture(scope="module")
def default_raw():
    text = resources.files("densewire").joinpath("data/default_config.json").read_text("utf-8")
    return json.loads(text)


@pytest.fixture()
def raw(default_raw):
    return copy.deepcopy(default_raw)


def test_default_config_parses(raw, catalog):
    cfg = parse_design_config(raw, catalog)
    assert cfg.qubit_array.chip_side == pytest.approx(0.2)
    assert len(cfg.wiring) == 2
    assert cfg.sweeps


def test_bond_geometry_derives_wire_pitch(raw, catalog):
    cfg = parse_design_config(raw, catalog)
    lateral = cfg.lateral()
    assert lateral.provenance == "derived_from_bond_geometry"
    assert lateral.wire_pitch == pytest.approx(56e-6, rel=1e-12)


def test_auto_pin_core_and_derived_coax(raw, catalog):
    cfg = parse_design_config(raw, catalog)
    assert cfg.pin_stack.core_diameter == pytest.approx(178e-6, rel=1e-9)
    assert cfg.coax.inner_diameter == pytest.approx(200e-6, rel=1e-9)
    assert cfg.coax.outer_diameter == pytest.approx(300e-6, rel=1e-12)
    assert cfg.coax.eps_r == pytest.approx(3.0)
    assert cfg.coax.dielectric == "STYCAST-1266"


def test_explicit_coax_override(raw, catalog):
    raw["coax"] = {"inner_diameter": "100um", "outer_diameter": "200um", "eps_r": 2.1}
    cfg = parse_design_config(raw, catalog)
    assert cfg.coax.inner_diameter == pytest.approx(100e-6)
    assert cfg.coax.eps_r == 2.1


def test_unknown_key_names_field(raw, catalog):
    raw["layout"]["hole_diamater"] = "300um"
    with pytest.raises(ConfigInvalid) as err:
        parse_design_config(raw, catalog)
    assert "layout.hole_diamater" in str(err.value)


def test_missing_field_names_field(raw, catalog):
    del raw["layout"]["channel_width"]
    with pytest.raises(ConfigInvalid) as err:
        parse_design_config(raw, catalog)
    assert "layout.channel_width" in str(err.value)


def test_bad_unit_names_field(raw, catalog):
    raw["qubit_array"]["qubit_pitch"] = "500GHz"
    with pytest.raises(ConfigInvalid) as err:
        parse_design_config(raw, catalog)
    assert "qubit_array.qubit_pitch" in str(err.value)


def test_unknown_stage_reference(raw, catalog):
    raw["thermal"]["controllers"][0]["stage"] = "4K"
    with pytest.raises(ConfigInvalid) as err:
        parse_design_config(raw, catalog)
    assert "thermal.controllers[0].stage" in str(err.value)


def test_unknown_material_reference(raw, catalog):
    raw["thermal"]["paths"][0]["material"] = "unobtainium"
    with pytest.raises(ConfigInvalid):
        parse_design_config(raw, catalog)


def test_sweep_declaration_validation(raw, catalog):
    raw["sweeps"] = [{"parameter": "layout.hole_diameter", "start": "200um",
                      "stop": "300um", "steps": 0}]
    with pytest.raises(ConfigInvalid) as err:
        parse_design_config(raw, catalog)
    assert "sweeps[0].steps" in str(err.value)


def test_notes_keys_are_ignored(raw, catalog):
    raw["layout"]["notes"] = "hand-tuned"
    raw["_review"] = {"status": "ok"}
    parse_design_config(raw, catalog)


def test_load_from_file(tmp_path, raw, catalog):
    path = tmp_path / "design.json"
    path.write_text(json.dumps(raw))
    cfg = load_design_config(path, catalog)
    assert cfg.layout.array_side_count == raw["layout"]["array_side_count"]


def test_load_rejects_bad_json(tmp_path, catalog):
    path = tmp_path / "design.json"
    path.write_text("{nope")
    with pytest.raises(ConfigInvalid):
        load_design_config(path, catalog)


class TestSetParameter:
    def test_sets_nested_value(self, raw):
        out = set_parameter(raw, "layout.hole_diameter", 250e-6)
        assert out["layout"]["hole_diameter"] == 250e-6
        assert raw["layout"]["hole_diameter"] == "300um"  # original untouched

    def test_list_index_path(self, raw):
        out = set_parameter(raw, "wiring.1.wire_pitch", 450e-6)
        assert out["wiring"][1]["wire_pitch"] == 450e-6

    def test_unknown_path(self, raw):
        with pytest.raises(UnknownParameter):
            set_parameter(raw, "layout.nope", 1.0)
        with pytest.raises(UnknownParameter):
            set_parameter(raw, "wiring.7.wire_pitch", 1.0)
