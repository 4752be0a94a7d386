"""Command-line entry point: ``hvlab check|cuts|quotient|verify|gen|hunt``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error,
3 every check was skipped because its preconditions did not hold.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Iterable, TextIO

from .fundamental import build_fundamental_quotient, quotient_ivifs, verify_quotient_transfer
from .fuzzy import IVIFS, cut_families, validate_ivifs
from .generators import PRODUCT_NORMS, THEOREMS, WEAKENINGS, GenConfig, generate_hv_modules, generate_ivifs, hunt_counterexamples
from .homomorphisms import ModuleMap, classify_map, verify_image_transfer, verify_preimage_submodule, verify_preimage_transfer
from .hyperstructures import (
    HvModule,
    build_example_24,
    check_hv_module,
    check_hv_ring,
    check_hv_submodule,
    check_module_group,
    hv_submodules,
)
from .intervals import MIN_MAX
from .io import Structure, StructureFileError, dump_structure, load_structure
from .report import CheckReport, ConsistencyError, HvlabError, PreconditionError, Status, passed
from .submodules import check_st_hv_submodule, verify_cut_equivalence

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_SKIP = 0, 1, 2, 3

NORMS = {"min-max": MIN_MAX, "product": PRODUCT_NORMS}


class UsageError(HvlabError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(f"{self.prog}: {message}")


def exit_code(reports: Iterable[CheckReport]) -> int:
    reports = list(reports)
    if any(r.failed for r in reports):
        return EXIT_FAIL
    if reports and all(r.skipped for r in reports):
        return EXIT_SKIP
    return EXIT_PASS


# -- rendering -------------------------------------------------------------------


def _fmt(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ",".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict):
        return "(" + " ".join(f"{k}={_fmt(x)}" for k, x in v.items()) + ")"
    return str(v)


def render_report(r: CheckReport, label: str | None = None) -> str:
    head = r.check if label is None else f"{r.check}[{label}]"
    line = f"{r.status.value.upper():4} {head}"
    if r.condition:
        line += f": {r.condition}"
    extras = [f"{k}={v}" for k, v in r.info.items() if isinstance(v, (str, int, bool))]
    if extras:
        line += "  " + " ".join(extras)
    if r.witness:
        line += "  " + " ".join(f"{k}={_fmt(v)}" for k, v in r.witness.items())
    return line


def _table_lines(title: str, rows: list[str], cols: list[str], cell) -> list[str]:
    width = max([len(c) for c in cols] + [len(str(cell(i, j))) for i in range(len(rows)) for j in range(len(cols))] + [1])
    rw = max(len(r) for r in rows)
    out = [f"{title}:", " " * (rw + 3) + " ".join(c.rjust(width) for c in cols)]
    for i, r in enumerate(rows):
        out.append(f"  {r.rjust(rw)} " + " ".join(str(cell(i, j)).rjust(width) for j in range(len(cols))))
    return out


class Output:
    """Collects reports and prose; prints text lines or one JSON document."""

    def __init__(self, command: str, as_json: bool, stream: TextIO):
        self.doc: dict[str, Any] = {"command": command}
        self.reports: list[CheckReport] = []
        self.json_reports: list[dict] = []
        self.as_json = as_json
        self.stream = stream

    def say(self, text: str) -> None:
        if not self.as_json:
            print(text, file=self.stream)

    def add(self, r: CheckReport, label: str | None = None) -> None:
        self.reports.append(r)
        d = r.to_dict()
        if label is not None:
            d = {"subject": label, **d}
        self.json_reports.append(d)
        self.say(render_report(r, label))

    def finish(self, code: int | None = None) -> int:
        code = exit_code(self.reports) if code is None else code
        if self.as_json:
            self.doc["reports"] = self.json_reports
            self.doc["exit"] = code
            print(json.dumps(self.doc, indent=2, ensure_ascii=False), file=self.stream)
        return code


# -- helpers ---------------------------------------------------------------------


def _load(path: str) -> Structure:
    try:
        return load_structure(path)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None


def _pick_fuzzy(st: Structure, names: list[str] | None) -> dict[str, IVIFS]:
    if not names:
        return dict(st.fuzzy)
    out = {}
    for n in names:
        if n not in st.fuzzy:
            raise UsageError(f"no fuzzy set named {n!r} (have {sorted(st.fuzzy)})")
        out[n] = st.fuzzy[n]
    return out


def _pick_map(st: Structure, name: str | None) -> tuple[str, ModuleMap]:
    if name is None:
        if len(st.maps) != 1:
            raise UsageError(f"choose a map with --map (have {sorted(st.maps)})")
        name = next(iter(st.maps))
    if name not in st.maps:
        raise UsageError(f"no map named {name!r} (have {sorted(st.maps)})")
    return name, st.maps[name]


def _subset(m: HvModule, spec: str) -> int:
    mask = 0
    for lab in (s.strip() for s in spec.split(",")):
        if not lab:
            continue
        try:
            mask |= 1 << m.carrier.index(lab)
        except KeyError:
            raise UsageError(f"unknown label {lab!r} in subset") from None
    if not mask:
        raise UsageError("subset must be nonempty")
    return mask


def _labels(specs: list[str] | None) -> list[str]:
    """Labels from repeated and/or comma-separated flag values."""
    return [s.strip() for spec in specs or () for s in spec.split(",") if s.strip()]


def _config(args: argparse.Namespace, mode: str | None = None) -> GenConfig:
    try:
        return GenConfig(args.max_m, args.max_r, args.seed, args.budget, mode or args.mode, args.grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands -----------------------------------------------------------------


def cmd_check(args: argparse.Namespace, out: Output) -> int:
    st = _load(args.file)
    m = st.module
    out.doc["file"] = args.file
    out.add(check_hv_ring(m.ring))
    out.add(check_module_group(m))
    out.add(check_hv_module(m))
    module_ok = out.reports[-1].ok
    for spec in args.subset or []:
        out.add(check_hv_submodule(m, _subset(m, spec)), spec)
    for name, a in _pick_fuzzy(st, args.fuzzy).items():
        v = validate_ivifs(a)
        out.add(v, name)
        if v.ok and module_ok:
            out.add(check_st_hv_submodule(m, a, NORMS[args.norm], strict=not args.lenient), name)
    for name, f in st.maps.items():
        cls, rep = classify_map(f)
        out.add(rep, name)
    return out.finish()


def cmd_cuts(args: argparse.Namespace, out: Output) -> int:
    st = _load(args.file)
    m = st.module
    out.doc["file"] = args.file
    out.doc["cuts"] = {}
    for name, a in _pick_fuzzy(st, args.fuzzy).items():
        v = validate_ivifs(a)
        if not v.ok:
            out.add(v, name)
            continue
        uppers, lowers = cut_families(a)
        rows = []
        out.say(f"{name}:")
        for kind, fam in (("U(M)", uppers), ("L(N)", lowers)):
            for mask, th in sorted(fam.items(), key=lambda kv: (kv[1].lo, kv[1].hi)):
                elems = m.carrier.labels_of(mask)
                if mask:
                    rep = check_hv_submodule(m, mask)
                    out.reports.append(rep)
                    verdict = "submodule" if rep.ok else f"not a submodule ({rep.condition})"
                else:
                    verdict = "empty"
                rows.append({"cut": kind, "threshold": th.to_json(), "set": elems, "verdict": verdict})
                out.say(f"  {kind} at {th}: {{{','.join(elems)}}} {verdict}")
        out.doc["cuts"][name] = rows
    return out.finish()


def cmd_quotient(args: argparse.Namespace, out: Output) -> int:
    st = _load(args.file)
    m = st.module
    out.doc["file"] = args.file
    rep = check_hv_module(m)
    if not rep.ok:
        out.add(rep)
        return out.finish()
    try:
        q = build_fundamental_quotient(m)
    except ConsistencyError as exc:
        out.add(CheckReport("fundamental-quotient", Status.FAIL, "consistency", {"error": str(exc), **exc.witness}))
        return out.finish()
    out.doc["quotient"] = q.to_json()
    mp, rp = q.module_partition, q.ring_partition
    ml, rl = mp.labels(), rp.labels()
    out.say("ε* classes: " + " ".join(ml))
    out.say("γ* classes: " + " ".join(rl))
    for line in _table_lines("⊕ on M/ε*", ml, ml, lambda i, j: ml[q.add_table[i][j]]):
        out.say(line)
    for line in _table_lines("+ on R/γ*", rl, rl, lambda i, j: rl[q.ring_add_table[i][j]]):
        out.say(line)
    for line in _table_lines("· on R/γ*", rl, rl, lambda i, j: rl[q.ring_mul_table[i][j]]):
        out.say(line)
    for line in _table_lines("⊙ : R/γ* × M/ε*", rl, ml, lambda i, j: ml[q.action_table[i][j]]):
        out.say(line)
    out.say(f"ω_M = {ml[q.zero_class]}")
    out.doc["fuzzy"] = {}
    for name, a in _pick_fuzzy(st, args.fuzzy).items():
        if not validate_ivifs(a).ok:
            out.add(validate_ivifs(a), name)
            continue
        aq = quotient_ivifs(a, q, override=not args.no_override)
        out.doc["fuzzy"][name] = aq.to_json()
        out.say(f"{name}/ε*:")
        for i, lab in enumerate(ml):
            out.say(f"  {lab}: M={aq.M[i]} N={aq.N[i]}")
    out.add(passed("fundamental-quotient", classes=len(mp), ring_classes=len(rp), commutator_merges=q.commutator_merges))
    return out.finish()


def cmd_verify(args: argparse.Namespace, out: Output) -> int:
    st = _load(args.file)
    m = st.module
    key = THEOREMS[args.theorem]
    out.doc["file"] = args.file
    out.doc["theorem"] = key
    norms = NORMS[args.norm]
    strict = not args.lenient
    if key == "cut-equivalence":
        for name, a in _pick_fuzzy(st, args.fuzzy).items():
            out.add(verify_cut_equivalence(m, a, norms, strict), name)
    elif key == "quotient-transfer":
        for name, a in _pick_fuzzy(st, args.fuzzy).items():
            out.add(verify_quotient_transfer(m, a, norms, strict), name)
    elif key == "preimage-submodule":
        mname, f = _pick_map(st, args.map)
        subsets = [_subset(f.target, s) for s in args.subset] if args.subset else hv_submodules(f.target)
        for N in subsets:
            out.add(verify_preimage_submodule(f, N), f"{mname}:{{{','.join(f.target.carrier.labels_of(N))}}}")
    else:
        mname, f = _pick_map(st, args.map)
        for name, a in _pick_fuzzy(st, args.fuzzy).items():
            out.add(verify_image_transfer(f, a, norms, strict), f"{mname}:{name}")
        tf = st.target_fuzzy.get(mname, {}) if f.target is not m else st.fuzzy
        wanted = args.target_fuzzy or list(tf)
        for name in wanted:
            if name not in tf:
                raise UsageError(f"no target fuzzy set named {name!r} for map {mname!r}")
            out.add(verify_preimage_transfer(f, tf[name], norms, strict), f"{mname}:{name}")
    if not out.reports:
        raise UsageError("nothing to verify: the file has no matching fuzzy sets or maps")
    return out.finish()


def cmd_gen_example24(args: argparse.Namespace, out: Output) -> int:
    st = _load(args.file)
    m = st.module
    try:
        om = m.as_ordinary()
    except PreconditionError as exc:
        raise UsageError(f"example24 needs an ordinary module: {exc}") from None
    if args.variant in ("c", "PstarPlus"):
        if args.P1 is None or args.P2 is None:
            raise UsageError("variant c needs --P1 and --P2")
        P1, P2 = _labels(args.P1), _labels(args.P2)
    else:
        if args.P is None and args.P1 is None:
            raise UsageError("variants a and b need --P")
        P1, P2 = _labels(args.P if args.P is not None else args.P1), None
    try:
        p1 = [(m.carrier if args.variant == "b" else m.ring.carrier).index(x) for x in P1]
        p2 = None if P2 is None else [m.carrier.index(x) for x in P2]
    except KeyError as exc:
        raise UsageError(f"unknown label {exc.args[0]!r}") from None
    try:
        built = build_example_24(om, args.variant, p1, p2)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    rep = check_hv_module(built)
    out.doc["structure"] = dump_structure(built)
    if out.as_json:
        out.add(rep)
    else:
        print(json.dumps(out.doc["structure"], indent=2, ensure_ascii=False), file=out.stream)
        out.reports.append(rep)
        print(render_report(rep), file=sys.stderr)
    return out.finish()


def cmd_gen_modules(args: argparse.Namespace, out: Output) -> int:
    cfg = _config(args)
    out.doc["seed"] = cfg.seed
    out.doc["config"] = cfg.to_json()
    structures = [dump_structure(m) for m in generate_hv_modules(cfg)]
    out.doc["count"] = len(structures)
    out.doc["structures"] = structures
    if not out.as_json:
        print(json.dumps({"seed": cfg.seed, "config": cfg.to_json(), "count": len(structures), "structures": structures}, indent=2, ensure_ascii=False), file=out.stream)
    return out.finish(EXIT_PASS)


def cmd_gen_fuzzy(args: argparse.Namespace, out: Output) -> int:
    st = _load(args.file)
    cfg = _config(args, "random")
    out.doc["seed"] = cfg.seed
    sets = {f"G{i}": a for i, a in enumerate(generate_ivifs(st.module, cfg, args.target, args.count))}
    doc = dump_structure(st.module, sets)
    if out.as_json:
        out.doc["structure"] = doc
    else:
        print(json.dumps({"seed": cfg.seed, **doc}, indent=2, ensure_ascii=False), file=out.stream)
    return out.finish(EXIT_PASS)


def cmd_hunt(args: argparse.Namespace, out: Output) -> int:
    cfg = _config(args)
    key = THEOREMS[args.theorem]
    if args.weaken not in WEAKENINGS[key]:
        raise UsageError(f"--weaken {args.weaken!r} does not apply to {args.theorem}; choose from {sorted(WEAKENINGS[key])}")
    result = hunt_counterexamples(key, args.weaken, cfg)
    out.doc["seed"] = cfg.seed
    out.doc["hunt"] = result
    out.say(f"seed: {cfg.seed}")
    out.say(f"hunt {key} weaken={args.weaken} mode={cfg.mode}: {result['checks']} checks, {result['skips']} skipped")
    if result["found"]:
        rep = result["counterexample"]["report"]
        out.say("counterexample found:")
        out.say("  " + " ".join(f"{k}={_fmt(v)}" for k, v in rep.items() if k not in ("classes", "quotient_fuzzy", "image", "preimage")))
        out.say(json.dumps(result["counterexample"]["structure"], ensure_ascii=False))
        return out.finish(EXIT_FAIL)
    out.say("no counterexample (search exhausted)")
    return out.finish(EXIT_PASS)


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one machine-readable JSON report")

    fuzzy = _Parser(add_help=False)
    fuzzy.add_argument("--fuzzy", action="append", metavar="NAME", help="fuzzy set to use (repeatable; default all)")
    fuzzy.add_argument("--lenient", action="store_true", help="let the two solvability inequalities use different witnesses")
    fuzzy.add_argument("--norm", choices=sorted(NORMS), default="min-max", help="t-norm/s-norm pair")

    gen = _Parser(add_help=False)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--max-m", type=int, default=2, help="largest module carrier")
    gen.add_argument("--max-r", type=int, default=1, help="largest ring carrier")
    gen.add_argument("--budget", type=int, default=100, help="instances in random mode")
    gen.add_argument("--grid", type=int, default=9, help="endpoint grid denominator")
    gen.add_argument("--mode", choices=("enumerate", "random"), default="enumerate")

    p = _Parser(prog="hvlab", description="Check H_v-modules and their interval-valued intuitionistic fuzzy submodules.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common, fuzzy], help="axioms, submodules, fuzzy predicates, map classes")
    c.add_argument("file")
    c.add_argument("--subset", action="append", metavar="LABELS", help="comma-separated subset to test as a submodule")
    c.set_defaults(run=cmd_check)

    c = sub.add_parser("cuts", parents=[common], help="every distinct level cut with its submodule verdict")
    c.add_argument("file")
    c.add_argument("--fuzzy", action="append", metavar="NAME")
    c.set_defaults(run=cmd_cuts)

    c = sub.add_parser("quotient", parents=[common], help="fundamental relations and the quotient module")
    c.add_argument("file")
    c.add_argument("--fuzzy", action="append", metavar="NAME")
    c.add_argument("--no-override", action="store_true", help="do not force the core class to ([1,1],[0,0])")
    c.set_defaults(run=cmd_quotient)

    c = sub.add_parser("verify", parents=[common, fuzzy], help="run a theorem verifier on a file")
    c.add_argument("theorem", choices=("thm32", "lemma35", "thm36", "thm39"))
    c.add_argument("file")
    c.add_argument("--map", metavar="NAME", help="map to use for lemma35/thm36 (optional when the file has one)")
    c.add_argument("--subset", action="append", metavar="LABELS", help="target submodule for lemma35 (default all)")
    c.add_argument("--target-fuzzy", action="append", metavar="NAME", help="fuzzy set on the map target for thm36")
    c.set_defaults(run=cmd_verify)

    g = sub.add_parser("gen", help="build or sample structures")
    gsub = g.add_subparsers(dest="what", required=True, parser_class=_Parser)
    c = gsub.add_parser("example24", parents=[common], help="hyperize an ordinary module through a subset P")
    c.add_argument("file", help="ordinary module (singleton tables)")
    c.add_argument("--variant", choices=("a", "b", "c"), required=True)
    c.add_argument("--P", metavar="LABELS", action="append", help="subset P (ring labels for a, module labels for b)")
    c.add_argument("--P1", metavar="LABELS", action="append", help="ring subset P1 for variant c")
    c.add_argument("--P2", metavar="LABELS", action="append", help="module subset P2 for variant c")
    c.set_defaults(run=cmd_gen_example24)
    c = gsub.add_parser("modules", parents=[common, gen], help="enumerate or sample valid H_v-modules")
    c.set_defaults(run=cmd_gen_modules)
    c = gsub.add_parser("fuzzy", parents=[common, gen], help="sample fuzzy sets on a module")
    c.add_argument("file")
    c.add_argument("--target", choices=("passing", "unconstrained"), default="unconstrained")
    c.add_argument("--count", type=int, default=5)
    c.set_defaults(run=cmd_gen_fuzzy)

    c = sub.add_parser("hunt", parents=[common, gen], help="search for counterexamples, optionally with a hypothesis dropped")
    c.add_argument("theorem", choices=sorted(THEOREMS))
    c.add_argument("--weaken", default="none", choices=sorted({w for ws in WEAKENINGS.values() for w in ws}))
    c.set_defaults(run=cmd_hunt)
    return p


def main(argv: list[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    out = Output(" ".join([args.command] + ([args.what] if getattr(args, "what", None) else [])), args.json, stdout)
    try:
        return args.run(args, out)
    except (UsageError, StructureFileError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except HvlabError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
