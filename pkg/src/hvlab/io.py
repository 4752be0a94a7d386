"""The JSON structure-file format.

A file holds one H_v-module, optionally with named fuzzy sets and named
maps::

    {
      "version": 1,
      "ring":   {"labels": ["0", "1"], "add": [[["0"], ["1"]], ...], "mul": [...]},
      "module": {"labels": ["0", "1"], "add": [...], "zero": "0"},
      "action": [[["0"], ["0"]], [["0"], ["1"]]],
      "fuzzy":  {"A": {"M": {"0": ["4/5", "9/10"], ...}, "N": {...}}},
      "maps":   {"f": {"map": {"0": "0", "1": "0"}, "target": {...}}}
    }

Tables are nested arrays of label lists; rationals are strings. A map's
``target`` (a ``module`` + ``action`` section, optionally with its own
``fuzzy``) defaults to the file's module itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .fuzzy import IVIFS, IVFuzzySet, read_interval, validate_ivifs
from .homomorphisms import ModuleMap
from .hyperstructures import Carrier, ExternalOp, HvModule, HvRing, HyperOp
from .report import ConstructionError, HvlabError

FORMAT_VERSION = 1


class StructureFileError(HvlabError, ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{message} at {where}" if where else message)
        self.where = where


@dataclass
class Structure:
    module: HvModule
    fuzzy: dict[str, IVIFS] = field(default_factory=dict)
    maps: dict[str, ModuleMap] = field(default_factory=dict)
    target_fuzzy: dict[str, dict[str, IVIFS]] = field(default_factory=dict)


def _require(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise StructureFileError(where, f"missing key {key!r}")
    return obj[key]


def _carrier(section: Any, where: str) -> Carrier:
    labels = _require(section, "labels", where)
    if not isinstance(labels, list) or not all(isinstance(x, (str, int)) for x in labels):
        raise StructureFileError(f"{where}.labels", "labels must be a list of strings")
    try:
        return Carrier(tuple(str(x) for x in labels))
    except ConstructionError as exc:
        raise StructureFileError(f"{where}.labels", str(exc)) from None


def _table(raw: Any, rows: Carrier, cols: Carrier, universe: Carrier, where: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(raw, list) or len(raw) != rows.size:
        raise StructureFileError(where, f"expected {rows.size} rows")
    out = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != cols.size:
            raise StructureFileError(f"{where}[{i}]", f"expected {cols.size} cells")
        cells = []
        for j, cell in enumerate(row):
            loc = f"{where}[{i}][{j}]"
            if isinstance(cell, (str, int)):
                cell = [cell]
            if not isinstance(cell, list):
                raise StructureFileError(loc, "cell must be a list of labels")
            if not cell:
                raise StructureFileError(loc, "empty hyperoperation cell")
            mask = 0
            for lab in cell:
                try:
                    mask |= 1 << universe.index(str(lab))
                except KeyError:
                    raise StructureFileError(loc, f"unknown label {lab!r}") from None
            cells.append(mask)
        out.append(tuple(cells))
    return tuple(out)


def _module(data: dict, ring: HvRing, where: str = "") -> HvModule:
    pre = f"{where}." if where else ""
    msec = _require(data, "module", where or "<root>")
    mc = _carrier(msec, f"{pre}module")
    add = HyperOp(mc, _table(_require(msec, "add", f"{pre}module"), mc, mc, mc, f"{pre}module.add"), "module.add")
    act = _table(_require(data, "action", where or "<root>"), ring.carrier, mc, mc, f"{pre}action")
    zero = None
    if msec.get("zero") is not None:
        try:
            zero = mc.index(str(msec["zero"]))
        except KeyError:
            raise StructureFileError(f"{pre}module.zero", f"unknown label {msec['zero']!r}") from None
    return HvModule(ring, mc, add, ExternalOp(ring.carrier, mc, act), zero)


def _fuzzy(raw: Any, carrier: Carrier, where: str) -> dict[str, IVIFS]:
    if not isinstance(raw, dict):
        raise StructureFileError(where, "fuzzy section must be an object of named sets")
    out = {}
    for name, body in raw.items():
        loc = f"{where}.{name}"
        parts = []
        for part in ("M", "N"):
            values = _require(body, part, loc)
            if not isinstance(values, dict):
                raise StructureFileError(f"{loc}.{part}", "expected an object keyed by labels")
            for lab, v in values.items():
                try:
                    read_interval(v)
                except ConstructionError as exc:
                    raise StructureFileError(f"{loc}.{part}[{lab}]", str(exc)) from None
            try:
                parts.append(IVFuzzySet.from_labels(carrier, values))
            except ConstructionError as exc:
                raise StructureFileError(f"{loc}.{part}", str(exc)) from None
        a = IVIFS(*parts)
        report = validate_ivifs(a)
        if not report.ok:
            x = report.witness["x"]
            raise StructureFileError(f"{loc}[{x}]", f"Atanassov constraint violated (sup M + sup N > 1 at {x})")
        out[name] = a
    return out


def parse_structure(data: Any) -> Structure:
    if not isinstance(data, dict):
        raise StructureFileError("<root>", "top level must be an object")
    version = data.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise StructureFileError("version", f"unsupported format version {version!r}")
    rsec = _require(data, "ring", "<root>")
    rc = _carrier(rsec, "ring")
    ring = HvRing(
        rc,
        HyperOp(rc, _table(_require(rsec, "add", "ring"), rc, rc, rc, "ring.add"), "ring.add"),
        HyperOp(rc, _table(_require(rsec, "mul", "ring"), rc, rc, rc, "ring.mul"), "ring.mul"),
    )
    module = _module(data, ring)
    st = Structure(module)
    if "fuzzy" in data:
        st.fuzzy = _fuzzy(data["fuzzy"], module.carrier, "fuzzy")
    for name, body in (data.get("maps") or {}).items():
        loc = f"maps.{name}"
        target = module
        if isinstance(body, dict) and "target" in body:
            target = _module(body["target"], ring, f"{loc}.target")
            if "fuzzy" in body["target"]:
                st.target_fuzzy[name] = _fuzzy(body["target"]["fuzzy"], target.carrier, f"{loc}.target.fuzzy")
        raw = _require(body, "map", loc)
        if not isinstance(raw, dict):
            raise StructureFileError(f"{loc}.map", "expected an object from source to target labels")
        for k in raw:
            if k not in module.carrier.labels:
                raise StructureFileError(f"{loc}.map", f"unknown label {k!r}")
        try:
            st.maps[name] = ModuleMap.from_labels(module, target, {k: str(v) for k, v in raw.items()})
        except (ConstructionError, KeyError) as exc:
            raise StructureFileError(f"{loc}.map", str(exc).strip("'\"")) from None
    return st


def parse_structure_file(raw: bytes | str) -> Structure:
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise StructureFileError(f"byte {exc.start}", "file is not UTF-8") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise StructureFileError(f"line {exc.lineno} column {exc.colno}", f"invalid JSON: {exc.msg}") from None
    return parse_structure(data)


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("hvlab") / "fixtures" / name))


def load_structure(path: str | Path) -> Structure:
    """Load a file; a bare name that does not exist falls back to the bundled fixtures."""
    p = Path(path)
    if not p.exists() and fixture_path(p.name).exists():
        p = fixture_path(p.name)
    return parse_structure_file(p.read_bytes())


# -- serialization ------------------------------------------------------------


def _table_json(table, universe: Carrier) -> list:
    return [[universe.labels_of(c) for c in row] for row in table]


def module_json(m: HvModule) -> dict:
    msec: dict[str, Any] = {"labels": list(m.carrier.labels), "add": _table_json(m.add.table, m.carrier)}
    if m.zero is not None:
        msec["zero"] = m.carrier.label(m.zero)
    return {"module": msec, "action": _table_json(m.action.table, m.carrier)}


def dump_structure(
    m: HvModule,
    fuzzy: dict[str, IVIFS] | None = None,
    maps: dict[str, ModuleMap] | None = None,
    target_fuzzy: dict[str, IVIFS] | None = None,
    map_fuzzy: dict[str, dict[str, IVIFS]] | None = None,
) -> dict:
    """Inverse of :func:`parse_structure`.

    ``target_fuzzy`` attaches to every map target other than ``m`` itself;
    ``map_fuzzy`` gives per-map target fuzzy sets and takes precedence.
    """
    r = m.ring
    out: dict[str, Any] = {
        "version": FORMAT_VERSION,
        "ring": {
            "labels": list(r.carrier.labels),
            "add": _table_json(r.add.table, r.carrier),
            "mul": _table_json(r.mul.table, r.carrier),
        },
        **module_json(m),
    }
    if fuzzy:
        out["fuzzy"] = {k: v.to_json() for k, v in fuzzy.items()}
    if maps:
        out["maps"] = {}
        for name, f in maps.items():
            body: dict[str, Any] = {"map": f.to_json()}
            if f.target is not m:
                body["target"] = module_json(f.target)
                tf = (map_fuzzy or {}).get(name, target_fuzzy)
                if tf:
                    body["target"]["fuzzy"] = {k: v.to_json() for k, v in tf.items()}
            out["maps"][name] = body
    elif target_fuzzy:
        out.setdefault("fuzzy", {}).update({k: v.to_json() for k, v in target_fuzzy.items()})
    return out


def dump_structure_file(st: Structure) -> str:
    data = dump_structure(st.module, st.fuzzy or None, st.maps or None, map_fuzzy=st.target_fuzzy)
    return json.dumps(data, indent=2, ensure_ascii=False)
