"""Maps between H_v-modules over a common ring, and the transfer verifiers built on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .fuzzy import IVIFS, image_ivifs, preimage_ivifs, validate_ivifs
from .hyperstructures import HvModule, check_hv_module, check_hv_submodule, members
from .intervals import MIN_MAX, IntervalNormPair
from .report import CheckReport, ConstructionError, Status, failed, passed, skipped
from .submodules import check_st_hv_submodule

CLASSES = ("none", "weak", "inclusion", "strong")


@dataclass(frozen=True)
class ModuleMap:
    source: HvModule
    target: HvModule
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        mapping = tuple(int(v) for v in self.mapping)
        object.__setattr__(self, "mapping", mapping)
        if len(mapping) != self.source.size:
            raise ConstructionError("map must be total on the source carrier")
        if any(not 0 <= v < self.target.size for v in mapping):
            raise ConstructionError("map sends an element outside the target carrier")
        if self.source.ring is not self.target.ring and self.source.ring != self.target.ring:
            raise ConstructionError("source and target must be modules over the same ring")

    @classmethod
    def from_labels(cls, source: HvModule, target: HvModule, data: Mapping[str, str]) -> ModuleMap:
        missing = [x for x in source.carrier.labels if x not in data]
        if missing:
            raise ConstructionError(f"map is not total: no image for {missing}")
        return cls(source, target, tuple(target.carrier.index(data[x]) for x in source.carrier.labels))

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def image(self, mask: int) -> int:
        out = 0
        for x in members(mask):
            out |= 1 << self.mapping[x]
        return out

    def preimage(self, mask: int) -> int:
        out = 0
        for x, y in enumerate(self.mapping):
            if mask >> y & 1:
                out |= 1 << x
        return out

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.size

    def to_json(self) -> dict[str, str]:
        s, t = self.source.carrier.labels, self.target.carrier.labels
        return {s[x]: t[y] for x, y in enumerate(self.mapping)}


def identity_map(m: HvModule) -> ModuleMap:
    return ModuleMap(m, m, tuple(range(m.size)))


def classify_map(f: ModuleMap) -> tuple[str, CheckReport]:
    """Return the strongest of none/weak/inclusion/strong that ``f`` satisfies.

    The report's witness explains why the next class up fails.
    """
    src, tgt = f.source, f.target
    sl, rl = src.carrier.labels, src.ring.carrier.labels
    weak = inclusion = strong = True
    why: dict[str, dict] = {}
    for x in range(src.size):
        for y in range(src.size):
            lhs = f.image(src.add(x, y))
            rhs = tgt.add(f(x), f(y))
            if weak and not lhs & rhs:
                weak = False
                why.setdefault("weak", {"x": sl[x], "y": sl[y], "op": "+"})
            if inclusion and lhs & ~rhs:
                inclusion = False
                why.setdefault("inclusion", {"x": sl[x], "y": sl[y], "op": "+"})
            if strong and lhs != rhs:
                strong = False
                why.setdefault("strong", {"x": sl[x], "y": sl[y], "op": "+"})
    for r in range(src.ring.size):
        for x in range(src.size):
            lhs = f.image(src.action(r, x))
            rhs = tgt.action(r, f(x))
            if weak and not lhs & rhs:
                weak = False
                why.setdefault("weak", {"r": rl[r], "x": sl[x], "op": "·"})
            if inclusion and lhs & ~rhs:
                inclusion = False
                why.setdefault("inclusion", {"r": rl[r], "x": sl[x], "op": "·"})
            if strong and lhs != rhs:
                strong = False
                why.setdefault("strong", {"r": rl[r], "x": sl[x], "op": "·"})
    # strong implies inclusion implies weak, since images are nonempty
    assert not strong or inclusion, "strong map failed inclusion"
    assert not inclusion or weak, "inclusion map failed weak"
    cls = "strong" if strong else "inclusion" if inclusion else "weak" if weak else "none"
    nxt = {"none": "weak", "weak": "inclusion", "inclusion": "strong"}.get(cls)
    witness = why.get(nxt) if nxt else None
    return cls, CheckReport("map-class", Status.PASS, None, witness, {"class": cls, "surjective": f.is_surjective()})


def at_least(cls: str, required: str) -> bool:
    return CLASSES.index(cls) >= CLASSES.index(required)


def verify_preimage_submodule(f: ModuleMap, N: int, require: str = "strong", require_onto: bool = True) -> CheckReport:
    """The preimage of an H_v-submodule under a strong epimorphism is an H_v-submodule.

    Precondition failures (map class, surjectivity, ``N`` not a submodule)
    give SKIP. ``require``/``require_onto`` exist so hypothesis-weakening
    searches can relax them.
    """
    name = "preimage-submodule"
    if not check_hv_module(f.source).ok or not check_hv_module(f.target).ok:
        return skipped(name, "source or target is not an H_v-module")
    cls, _ = classify_map(f)
    if not at_least(cls, require):
        return skipped(name, f"map is {cls}, not {require}")
    if require_onto and not f.is_surjective():
        return skipped(name, "map is not surjective")
    if not N or not check_hv_submodule(f.target, N).ok:
        return skipped(name, "N is not an H_v-submodule of the target")
    pre = f.preimage(N)
    info = {"N": f.target.carrier.labels_of(N), "preimage": f.source.carrier.labels_of(pre), "class": cls}
    if not pre:
        return failed(name, "nonempty", {"N": info["N"]}, **info)
    report = check_hv_submodule(f.source, pre)
    if report.ok:
        return passed(name, **info)
    return failed(name, report.condition, report.witness, **info)


def verify_image_transfer(
    f: ModuleMap, a: IVIFS, norms: IntervalNormPair = MIN_MAX, strict: bool = True, require: str = "strong"
) -> CheckReport:
    """Pushing an (S,T)-fuzzy H_v-submodule forward along a strong homomorphism keeps the property."""
    name = "image-transfer"
    pre = _transfer_preconditions(f, a, f.source, norms, strict, require, name)
    if pre is not None:
        return pre
    img = image_ivifs(f.mapping, a, f.target.carrier)
    report = check_st_hv_submodule(f.target, img, norms, strict)
    info = {"image": img.to_json()}
    if not validate_ivifs(img).ok:
        return failed(name, "image-validity", validate_ivifs(img).witness, **info)
    if report.ok:
        return passed(name, **info)
    return failed(name, report.condition, report.witness, **info)


def verify_preimage_transfer(
    f: ModuleMap, b: IVIFS, norms: IntervalNormPair = MIN_MAX, strict: bool = True, require: str = "strong"
) -> CheckReport:
    """Pulling an (S,T)-fuzzy H_v-submodule back along a strong homomorphism keeps the property."""
    name = "preimage-transfer"
    pre = _transfer_preconditions(f, b, f.target, norms, strict, require, name)
    if pre is not None:
        return pre
    back = preimage_ivifs(f.mapping, b, f.source.carrier)
    report = check_st_hv_submodule(f.source, back, norms, strict)
    info = {"preimage": back.to_json()}
    if report.ok:
        return passed(name, **info)
    return failed(name, report.condition, report.witness, **info)


def _transfer_preconditions(f, a, home, norms, strict, require, name) -> CheckReport | None:
    if not check_hv_module(f.source).ok or not check_hv_module(f.target).ok:
        return skipped(name, "source or target is not an H_v-module")
    cls, _ = classify_map(f)
    if not at_least(cls, require):
        return skipped(name, f"map is {cls}, not {require}")
    if a.carrier != home.carrier:
        raise ConstructionError("fuzzy set lives on the wrong carrier")
    if not validate_ivifs(a).ok:
        return skipped(name, "fuzzy set violates the sup-sum constraint")
    if not check_st_hv_submodule(home, a, norms, strict).ok:
        return skipped(name, "fuzzy set is not an (S,T)-fuzzy H_v-submodule")
    return None

