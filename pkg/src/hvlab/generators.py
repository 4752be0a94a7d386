"""Instance generators for property tests and counterexample hunts.

Two module sources:

* ``enumerate`` walks every assignment of nonempty cells for the requested
  sizes and keeps the valid H_v-modules (practical for carriers of size 2).
* ``random`` draws either raw random tables (repaired for reproduction and
  filtered by the axioms) or inflations of a random ordinary module, whose
  enlarged cells keep every weak axiom true by construction.

Streams are deterministic functions of the config seed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .fuzzy import IVIFS, validate_ivifs
from .hyperstructures import (
    Carrier,
    ExternalOp,
    HvModule,
    HvRing,
    HyperOp,
    OrdinaryModule,
    check_action_axioms,
    check_hv_group,
    check_hv_module,
    check_hv_ring,
    check_hv_semigroup,
    check_module_group,
    check_ordinary_module,
    check_ordinary_ring,
    hv_submodules,
    max_carrier,
    members,
)
from .intervals import MIN_MAX, PRODUCT_T, PROBSUM_S, Interval, IntervalNormPair, lift_norm
from .report import HvlabError


@dataclass(frozen=True)
class GenConfig:
    max_module_size: int = 2
    max_ring_size: int = 1
    seed: int = 0
    budget: int = 100
    mode: str = "enumerate"
    grid: int = 9

    def __post_init__(self) -> None:
        cap = max_carrier()
        if not 1 <= self.max_module_size <= cap or not 1 <= self.max_ring_size <= cap:
            raise ValueError(f"sizes must lie in 1..{cap}")
        if self.mode not in ("enumerate", "random"):
            raise ValueError(f"mode must be 'enumerate' or 'random', not {self.mode!r}")
        if self.grid < 1:
            raise ValueError("grid denominator must be positive")

    def to_json(self) -> dict:
        return {
            "max_module_size": self.max_module_size,
            "max_ring_size": self.max_ring_size,
            "seed": self.seed,
            "budget": self.budget,
            "mode": self.mode,
            "grid": self.grid,
        }


# -- catalog of small ordinary structures --------------------------------------


def _cyclic(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple((x + y) % n for y in range(n)) for x in range(n))


@lru_cache(maxsize=None)
def abelian_groups(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Addition tables of the abelian groups of order ``n`` (n <= 4), zero = 0."""
    groups = [_cyclic(n)]
    if n == 4:
        groups.append(tuple(tuple(x ^ y for y in range(4)) for x in range(4)))
    if n > 4:
        raise ValueError("catalog covers groups of order at most 4")
    return tuple(groups)


@lru_cache(maxsize=None)
def ordinary_rings(n: int) -> tuple[tuple[tuple, tuple], ...]:
    """All (add, mul) ring tables on {0..n-1} whose additive group is in the catalog."""
    out = []
    for add in abelian_groups(n):
        for flat in itertools.product(range(n), repeat=n * n):
            mul = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
            if check_ordinary_ring(add, mul, n).ok:
                out.append((add, mul))
    return tuple(out)


def _endomorphisms(add: tuple) -> list[tuple[int, ...]]:
    n = len(add)
    return [
        phi
        for phi in itertools.product(range(n), repeat=n)
        if all(phi[add[x][y]] == add[phi[x]][phi[y]] for x in range(n) for y in range(n))
    ]


@lru_cache(maxsize=None)
def ordinary_modules(nr: int, nm: int, commutative_only: bool = False) -> tuple[OrdinaryModule, ...]:
    """Every module in the catalog with ring order ``nr`` and module order ``nm``.

    An action is an assignment of group endomorphisms to ring elements; the
    assignments are filtered by the module axioms.
    """
    rc, mc = Carrier.of_size(nr), Carrier.of_size(nm)
    out = []
    for radd, rmul in ordinary_rings(nr):
        if commutative_only and any(rmul[x][y] != rmul[y][x] for x in range(nr) for y in range(nr)):
            continue
        for madd in abelian_groups(nm):
            endos = _endomorphisms(madd)
            for choice in itertools.product(endos, repeat=nr):
                om = OrdinaryModule(rc, radd, rmul, mc, madd, tuple(choice), 0)
                if check_ordinary_module(om).ok:
                    out.append(om)
    return tuple(out)


# -- exhaustive enumeration ----------------------------------------------------


def _all_tables(rows: int, cols: int, universe: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    for flat in itertools.product(range(1, universe + 1), repeat=rows * cols):
        yield tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows))


@lru_cache(maxsize=None)
def enumerate_hv_rings(n: int) -> tuple[HvRing, ...]:
    c = Carrier.of_size(n)
    adds = [HyperOp(c, t, "ring.add") for t in _all_tables(n, n, c.full)]
    adds = [op for op in adds if check_hv_group(c, op).ok]
    muls = [HyperOp(c, t, "ring.mul") for t in _all_tables(n, n, c.full)]
    muls = [op for op in muls if check_hv_semigroup(op).ok]
    return tuple(r for a in adds for mu in muls if check_hv_ring(r := HvRing(c, a, mu)).ok)


@lru_cache(maxsize=None)
def enumerate_module_groups(n: int) -> tuple[HyperOp, ...]:
    c = Carrier.of_size(n)
    out = []
    for t in _all_tables(n, n, c.full):
        op = HyperOp(c, t, "module.add")
        rep = check_hv_group(c, op)
        if rep.ok and rep.info["weak_commutative"]:
            out.append(op)
    return tuple(out)


def enumerate_hv_modules(nm: int, nr: int, ring: HvRing | None = None) -> Iterator[HvModule]:
    """Every valid H_v-module with the given carrier sizes (fixed labels 0..n-1)."""
    mc = Carrier.of_size(nm)
    rings = (ring,) if ring is not None else enumerate_hv_rings(nr)
    for r in rings:
        for add in enumerate_module_groups(nm):
            for t in _all_tables(r.size, nm, mc.full):
                m = HvModule(r, mc, add, ExternalOp(r.carrier, mc, t))
                if check_action_axioms(m).ok:
                    yield m


# -- random sampling -----------------------------------------------------------


def _random_cell(rng: random.Random, n: int, density: float) -> int:
    mask = 0
    while not mask:
        mask = sum(1 << i for i in range(n) if rng.random() < density)
    return mask


def _repair_reproduction(table: list[list[int]], n: int) -> None:
    full = (1 << n) - 1
    for a in range(n):
        row = 0
        for u in range(n):
            row |= table[a][u]
        for h in members(full & ~row):
            table[a][0] |= 1 << h
        col = 0
        for u in range(n):
            col |= table[u][a]
        for h in members(full & ~col):
            table[0][a] |= 1 << h


def _random_table(rng: random.Random, rows: int, cols: int, density: float) -> list[list[int]]:
    return [[_random_cell(rng, cols, density) for _ in range(cols)] for _ in range(rows)]


def _raw_random_module(rng: random.Random, nm: int, nr: int, ring: HvRing | None, tries: int = 40) -> HvModule | None:
    rc, mc = Carrier.of_size(nr), Carrier.of_size(nm)
    density = rng.choice((0.35, 0.5, 0.65))
    for _ in range(tries):
        r = ring
        if r is None:
            add = _random_table(rng, nr, nr, density)
            _repair_reproduction(add, nr)
            r = HvRing(rc, HyperOp(rc, add, "ring.add"), HyperOp(rc, _random_table(rng, nr, nr, density), "ring.mul"))
            if not check_hv_ring(r).ok:
                continue
        madd = _random_table(rng, nm, nm, density)
        _repair_reproduction(madd, nm)
        act = _random_table(rng, r.size, nm, density)
        m = HvModule(r, mc, HyperOp(mc, madd, "module.add"), ExternalOp(r.carrier, mc, act))
        if check_module_group(m).ok and check_action_axioms(m).ok:
            return m
    return None


def _inflate(rng: random.Random, table, n: int, p: float) -> list[list[int]]:
    out = []
    for row in table:
        new = []
        for c in row:
            for i in range(n):
                if rng.random() < p:
                    c |= 1 << i
            new.append(c)
        out.append(new)
    return out


def _inflated_module(rng: random.Random, nm: int, nr: int, ring: HvRing | None) -> HvModule:
    """Enlarge the cells of a random ordinary module (relabelled by random permutations)."""
    om = rng.choice(ordinary_modules(nr if ring is None else ring.size, nm))
    base = om.as_hv_module()
    pm = list(range(nm))
    rng.shuffle(pm)
    p = rng.choice((0.0, 0.15, 0.3, 0.5))
    mc = Carrier.of_size(nm)

    def perm_op(t, perm, n):
        out = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                out[perm[x]][perm[y]] = sum(1 << perm[v] for v in members(t[x][y]))
        return out

    madd = _inflate(rng, perm_op(base.add.table, pm, nm), nm, p)
    if ring is None:
        pr = list(range(nr))
        rng.shuffle(pr)
        rc = Carrier.of_size(nr)
        ring = HvRing(
            rc,
            HyperOp(rc, _inflate(rng, perm_op(base.ring.add.table, pr, nr), nr, p), "ring.add"),
            HyperOp(rc, _inflate(rng, perm_op(base.ring.mul.table, pr, nr), nr, p), "ring.mul"),
        )
        act_src = base.action.table
        act = [[0] * nm for _ in range(nr)]
        for r in range(nr):
            for x in range(nm):
                act[pr[r]][pm[x]] = sum(1 << pm[v] for v in members(act_src[r][x]))
    else:
        # The given ring need not be ordinary; the trivial action r·x = {0} always works
        # because (M,+) is a group containing the ordinary sums.
        zero = pm[om.zero]
        act = [[1 << zero] * nm for _ in range(ring.size)]
    act = _inflate(rng, act, nm, p)
    zero = pm[om.zero] if rng.random() < 0.5 else None
    return HvModule(ring, mc, HyperOp(mc, madd, "module.add"), ExternalOp(ring.carrier, mc, act), zero)


def random_hv_module(rng: random.Random, nm: int, nr: int, ring: HvRing | None = None) -> HvModule:
    """One valid H_v-module; raw tables when the sampler gets lucky, else an inflation."""
    if nm <= 4 and (ring is not None or nr <= 3) and rng.random() < 0.5:
        m = _raw_random_module(rng, nm, nr, ring)
        if m is not None:
            return m
    if nm > 4 or (ring is None and nr > 3):
        raise ValueError("random sampling supports |M| <= 4 and |R| <= 3")
    m = _inflated_module(rng, nm, nr, ring)
    assert check_hv_module(m).ok, "inflation produced an invalid module"
    return m


def generate_hv_modules(cfg: GenConfig, ring: HvRing | None = None) -> Iterator[HvModule]:
    """Valid H_v-modules per ``cfg``.

    ``enumerate`` yields every valid structure for all sizes up to the
    maxima (the budget is ignored); ``random`` yields ``cfg.budget``
    samples with sizes drawn uniformly.
    """
    if cfg.mode == "enumerate":
        for nr in range(1, cfg.max_ring_size + 1):
            if ring is not None and ring.size != nr:
                continue
            for nm in range(1, cfg.max_module_size + 1):
                yield from enumerate_hv_modules(nm, nr, ring)
        return
    rng = random.Random(cfg.seed)
    for _ in range(cfg.budget):
        nm = rng.randint(1, cfg.max_module_size)
        nr = ring.size if ring is not None else rng.randint(1, cfg.max_ring_size)
        yield random_hv_module(rng, nm, nr, ring)


# -- fuzzy sets ------------------------------------------------------------------


def _grid_value(rng: random.Random, grid: int, lo: Fraction = Fraction(0), hi: Fraction = Fraction(1)) -> Fraction:
    a = int(lo * grid) + (0 if lo * grid == int(lo * grid) else 1)
    b = int(hi * grid)
    return Fraction(rng.randint(a, b), grid)


def random_ivifs(rng: random.Random, carrier: Carrier, grid: int = 9) -> IVIFS:
    """Independent values per element on the grid, respecting the sup-sum constraint."""
    Ms, Ns = [], []
    for _ in range(carrier.size):
        mhi = _grid_value(rng, grid)
        mlo = _grid_value(rng, grid, hi=mhi)
        nhi = _grid_value(rng, grid, hi=1 - mhi)
        nlo = _grid_value(rng, grid, hi=nhi)
        Ms.append(Interval(mlo, mhi))
        Ns.append(Interval(nlo, nhi))
    return IVIFS.from_values(carrier, Ms, Ns)


def layered_ivifs(carrier: Carrier, chain: list[int], Ms: list[Interval], Ns: list[Interval]) -> IVIFS:
    """Constant values on the layers of a chain ``S1 ⊂ S2 ⊂ ... ⊂ M``."""
    mv, nv = [None] * carrier.size, [None] * carrier.size
    prev = 0
    for S, m, n in zip(chain, Ms, Ns):
        for x in members(S & ~prev):
            mv[x], nv[x] = m, n
        prev = S
    return IVIFS.from_values(carrier, mv, nv)


def chain_ivifs(rng: random.Random, m: HvModule, grid: int = 9) -> IVIFS:
    """Membership decreasing and non-membership increasing along a random chain of submodules."""
    subs = hv_submodules(m)
    chain = [m.carrier.full]
    while rng.random() < 0.7:
        inner = [S for S in subs if S != chain[0] and S & ~chain[0] == 0]
        if not inner:
            break
        chain.insert(0, rng.choice(inner))
    k = len(chain)
    his = sorted((_grid_value(rng, grid) for _ in range(k)), reverse=True)
    Ms, Ns = [], []
    lo_prev = Fraction(1)
    nhi_prev = nlo_prev = Fraction(0)
    for h in his:
        lo = min(_grid_value(rng, grid, hi=h), lo_prev)
        nhi = max(_grid_value(rng, grid, hi=1 - h), nhi_prev)
        nlo = max(_grid_value(rng, grid, hi=nhi), nlo_prev)
        Ms.append(Interval(lo, h))
        Ns.append(Interval(nlo, nhi))
        lo_prev, nhi_prev, nlo_prev = lo, nhi, nlo
    return layered_ivifs(m.carrier, chain, Ms, Ns)


def generate_ivifs(
    m: HvModule,
    cfg: GenConfig,
    target: str = "unconstrained",
    count: int | None = None,
    rng: random.Random | None = None,
    norms: IntervalNormPair = MIN_MAX,
) -> Iterator[IVIFS]:
    """``count`` (default ``cfg.budget``) fuzzy sets on ``m``.

    ``passing`` draws chain-layered candidates and keeps those that satisfy
    the (S,T) predicate; ``unconstrained`` draws independent values.
    """
    from .submodules import check_st_hv_submodule

    if target not in ("passing", "unconstrained"):
        raise ValueError(f"target must be 'passing' or 'unconstrained', not {target!r}")
    rng = rng or random.Random(cfg.seed)
    count = cfg.budget if count is None else count
    produced = attempts = 0
    while produced < count and attempts < 20 * count + 20:
        attempts += 1
        if target == "unconstrained":
            a = random_ivifs(rng, m.carrier, cfg.grid)
        else:
            a = chain_ivifs(rng, m, cfg.grid)
            if not check_st_hv_submodule(m, a, norms).ok:
                continue
        assert validate_ivifs(a).ok
        produced += 1
        yield a


def all_maps(source: HvModule, target: HvModule) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(target.size), repeat=source.size)


def one_point_module(ring: HvRing) -> HvModule:
    c = Carrier(("ω",))
    return HvModule(ring, c, HyperOp(c, ((1,),), "module.add"), ExternalOp(ring.carrier, c, tuple((1,) for _ in range(ring.size))), 0)


# -- counterexample hunts ----------------------------------------------------------

THEOREMS = {
    "thm32": "cut-equivalence",
    "cut-equivalence": "cut-equivalence",
    "lemma35": "preimage-submodule",
    "preimage-submodule": "preimage-submodule",
    "thm36": "homomorphism-transfer",
    "homomorphism-transfer": "homomorphism-transfer",
    "thm39": "quotient-transfer",
    "quotient-transfer": "quotient-transfer",
}

WEAKENINGS = {
    "cut-equivalence": {"none", "product-norm"},
    "preimage-submodule": {"none", "inclusion-map", "weak-map", "not-onto"},
    "homomorphism-transfer": {"none", "inclusion-map", "weak-map"},
    "quotient-transfer": {"none", "product-norm", "no-core-override"},
}

PRODUCT_NORMS = IntervalNormPair(lift_norm(PRODUCT_T), lift_norm(PROBSUM_S))


def _maps_for(m: HvModule, rng: random.Random, others: list[HvModule]) -> Iterator[tuple[HvModule, tuple[int, ...]]]:
    from .fundamental import build_fundamental_quotient

    targets = [m, one_point_module(m.ring)] + [o for o in others if o.ring == m.ring]
    try:
        targets.append(build_fundamental_quotient(m).over_source_ring())
    except HvlabError:
        # quotient tables not single-valued: no projection target for this module
        pass
    for t in targets:
        if t.size ** m.size <= 256:
            for f in all_maps(m, t):
                yield t, f
        else:
            for _ in range(64):
                yield t, tuple(rng.randrange(t.size) for _ in range(m.size))


def hunt_counterexamples(theorem: str, weaken: str = "none", cfg: GenConfig | None = None, fuzzy_per_module: int = 6) -> dict:
    """Search generated instances for one where the (possibly weakened) claim fails.

    Returns a JSON-ready report: the config and seed, how many checks ran
    and how many were skipped, and the first counterexample found (if any).
    """
    from .fundamental import verify_quotient_transfer
    from .homomorphisms import ModuleMap, verify_image_transfer, verify_preimage_submodule, verify_preimage_transfer
    from .io import dump_structure
    from .submodules import verify_cut_equivalence

    cfg = cfg or GenConfig()
    try:
        key = THEOREMS[theorem]
    except KeyError:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {sorted(THEOREMS)}") from None
    if weaken not in WEAKENINGS[key]:
        raise ValueError(f"unknown weakening {weaken!r} for {key}; choose from {sorted(WEAKENINGS[key])}")
    rng = random.Random(cfg.seed + 1)
    norms = PRODUCT_NORMS if weaken == "product-norm" else MIN_MAX
    require = {"inclusion-map": "inclusion", "weak-map": "weak"}.get(weaken, "strong")
    checks = skips = 0
    seen: list[HvModule] = []

    def found(module, report, **extra):
        return {
            "theorem": key,
            "weaken": weaken,
            "config": cfg.to_json(),
            "checks": checks,
            "skips": skips,
            "found": True,
            "counterexample": {"structure": dump_structure(module, **extra), "report": report.to_dict()},
        }

    for m in generate_hv_modules(cfg):
        fuzz = list(generate_ivifs(m, cfg, "passing", fuzzy_per_module // 2, rng, norms=MIN_MAX))
        fuzz += list(generate_ivifs(m, cfg, "unconstrained", fuzzy_per_module - len(fuzz), rng))
        if key == "cut-equivalence":
            for a in fuzz:
                rep = verify_cut_equivalence(m, a, norms, validate_norms=weaken == "none")
                checks += 1
                skips += rep.skipped
                if rep.failed:
                    return found(m, rep, fuzzy={"A": a})
        elif key == "quotient-transfer":
            for a in fuzz:
                rep = verify_quotient_transfer(m, a, norms, override=weaken != "no-core-override")
                checks += 1
                skips += rep.skipped
                if rep.failed:
                    return found(m, rep, fuzzy={"A": a})
        else:
            for t, mapping in _maps_for(m, rng, seen[-8:]):
                f = ModuleMap(m, t, mapping)
                if key == "preimage-submodule":
                    for N in hv_submodules(t):
                        rep = verify_preimage_submodule(f, N, require, require_onto=weaken != "not-onto")
                        checks += 1
                        skips += rep.skipped
                        if rep.failed:
                            return found(m, rep, maps={"f": f})
                    continue
                for a in fuzz:
                    rep = verify_image_transfer(f, a, norms, require=require)
                    checks += 1
                    skips += rep.skipped
                    if rep.failed:
                        return found(m, rep, fuzzy={"A": a}, maps={"f": f})
                for b in generate_ivifs(t, cfg, "passing", 2, rng):
                    rep = verify_preimage_transfer(f, b, norms, require=require)
                    checks += 1
                    skips += rep.skipped
                    if rep.failed:
                        return found(m, rep, maps={"f": f}, target_fuzzy={"B": b})
        seen.append(m)
    return {
        "theorem": key,
        "weaken": weaken,
        "config": cfg.to_json(),
        "checks": checks,
        "skips": skips,
        "found": False,
        "counterexample": None,
    }
