from __future__ import annotations

import copy
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hvlab.fuzzy import IVIFS
from hvlab.generators import GenConfig, all_maps, generate_hv_modules, one_point_module, random_ivifs
from hvlab.homomorphisms import ModuleMap
from hvlab.intervals import make_interval
from hvlab.io import (
    StructureFileError,
    dump_structure,
    dump_structure_file,
    fixture_path,
    load_structure,
    parse_structure,
    parse_structure_file,
)


def z2_data() -> dict:
    return json.loads(fixture_path("z2_module.json").read_text())


def test_bundled_z2_fixture(z2):
    m = z2.module
    assert m.carrier.labels == ("0", "1") and m.zero == 0
    assert m.add.table == ((0b01, 0b10), (0b10, 0b01))
    assert z2.fuzzy["A"].M[0] == make_interval("0.8", "0.9")
    assert set(z2.fuzzy) == {"A", "B", "C"} and set(z2.maps) == {"id", "zero"}


def test_bundled_fixtures_parse():
    for name in ("z2_module.json", "m2tot.json", "z2_ordinary.json"):
        assert load_structure(name).module.size == 2


@pytest.mark.parametrize(
    ("mutate", "message"),
    [
        (lambda d: d["module"]["add"][0].__setitem__(1, []), "empty hyperoperation cell at module.add[0][1]"),
        (lambda d: d["module"]["add"][1].__setitem__(0, ["x"]), "unknown label 'x' at module.add[1][0]"),
        (lambda d: d["fuzzy"]["A"]["M"].__setitem__("1", ["0.3", "zz"]), "malformed rational 'zz' at fuzzy.A.M[1]"),
        (lambda d: d["fuzzy"]["A"]["M"].__setitem__("1", ["0.3", 0.4]), "refusing non-exact rational 0.4 at fuzzy.A.M[1]"),
        (
            lambda d: d["fuzzy"]["A"].update(M={"0": ["0.5", "0.7"], "1": ["0.3", "0.4"]}, N={"0": ["0.2", "0.4"], "1": ["0", "0"]}),
            "Atanassov constraint violated (sup M + sup N > 1 at 0) at fuzzy.A[0]",
        ),
        (lambda d: d.__setitem__("version", 2), "unsupported format version 2 at version"),
        (lambda d: d["module"].__setitem__("zero", "7"), "unknown label '7' at module.zero"),
        (lambda d: d["action"].pop(), "expected 2 rows at action"),
        (lambda d: d["maps"]["zero"]["map"].__setitem__("1", "q"), "at maps.zero.map"),
        (lambda d: d.pop("ring"), "missing key 'ring' at <root>"),
    ],
)
def test_located_errors(mutate, message):
    d = z2_data()
    mutate(d)
    with pytest.raises(StructureFileError) as exc:
        parse_structure(d)
    assert message in str(exc.value)


def test_json_syntax_errors_carry_line_and_column():
    with pytest.raises(StructureFileError, match=r"invalid JSON: .* at line 2 column"):
        parse_structure_file('{\n  "ring": ,\n}')
    with pytest.raises(StructureFileError, match="not UTF-8"):
        parse_structure_file(b"\xff\xfe")


def test_structure_errors_are_value_errors():
    with pytest.raises(ValueError):
        parse_structure([])


def test_decimal_rationals_are_normalized():
    st_ = parse_structure(z2_data())
    assert st_.fuzzy["A"].to_json()["N"]["0"] == ["1/20", "1/10"]


@pytest.mark.parametrize("name", ["z2_module.json", "m2tot.json", "z2_ordinary.json"])
def test_fixture_round_trip(name):
    first = load_structure(name)
    text = dump_structure_file(first)
    second = parse_structure_file(text)
    assert dump_structure_file(second) == text
    assert second.module.add.table == first.module.add.table
    assert second.fuzzy == first.fuzzy
    assert {k: f.mapping for k, f in second.maps.items()} == {k: f.mapping for k, f in first.maps.items()}
    assert second.target_fuzzy == first.target_fuzzy


def test_map_target_survives_round_trip(m2tot):
    text = dump_structure_file(m2tot)
    again = parse_structure_file(text)
    assert again.maps["collapse"].target.carrier.labels == ("ω",)
    assert again.target_fuzzy["collapse"]["K"] == m2tot.target_fuzzy["collapse"]["K"]


MODULES = list(generate_hv_modules(GenConfig(3, 2, seed=3, budget=30, mode="random")))


@given(st.integers(0, len(MODULES) - 1), st.integers(0, 2**32 - 1))
def test_generated_round_trip(i, seed):
    m = MODULES[i]
    rng = random.Random(seed)
    a = random_ivifs(rng, m.carrier)
    t = one_point_module(m.ring)
    maps = {"c": ModuleMap(m, t, next(iter(all_maps(m, t)))), "self": ModuleMap(m, m, tuple(range(m.size)))}
    data = dump_structure(m, {"A": a}, maps)
    back = parse_structure(copy.deepcopy(data))
    assert dump_structure(back.module, back.fuzzy, back.maps) == data
    assert back.fuzzy["A"] == a and isinstance(back.fuzzy["A"], IVIFS)


def test_load_prefers_real_paths(tmp_path):
    p = tmp_path / "z2_module.json"
    d = z2_data()
    del d["fuzzy"]
    p.write_text(json.dumps(d))
    assert load_structure(p).fuzzy == {}
    assert load_structure("z2_module.json").fuzzy
