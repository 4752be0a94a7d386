"""Fundamental relations of an H_v-module and the quotient module they induce.

The relation on ``M`` is the transitive closure of "both elements lie in a
common achievable set", where achievable sets are the least family
containing the singletons and closed under the (subset-extended)
hyperoperations. The ring relation is computed the same way from ring
expressions.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .fuzzy import IVIFS, validate_ivifs
from .homomorphisms import ModuleMap
from .hyperstructures import (
    Carrier,
    ExternalOp,
    HvModule,
    HvRing,
    HyperOp,
    OrdinaryModule,
    check_hv_module,
    check_ordinary_module,
    check_ordinary_ring,
    members,
    subset_product,
)
from .intervals import BOTTOM, MIN_MAX, TOP, IntervalNormPair, inf_set, sup_set
from .report import CheckReport, ConsistencyError, failed, passed, skipped
from .submodules import check_st_hv_submodule, check_st_submodule_ordinary


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return True

    def union_mask(self, mask: int) -> bool:
        elems = members(mask)
        changed = False
        for y in elems[1:]:
            changed |= self.union(elems[0], y)
        return changed


@dataclass(frozen=True)
class Partition:
    """Classes are ordered by their lowest element; ``class_of[x]`` indexes into ``classes``."""

    carrier: Carrier
    class_of: tuple[int, ...]
    classes: tuple[int, ...]

    @classmethod
    def from_union_find(cls, carrier: Carrier, uf: UnionFind) -> Partition:
        n = carrier.size
        roots: dict[int, int] = {}
        masks: list[int] = []
        class_of = []
        for x in range(n):
            r = uf.find(x)
            if r not in roots:
                roots[r] = len(masks)
                masks.append(0)
            masks[roots[r]] |= 1 << x
            class_of.append(roots[r])
        return cls(carrier, tuple(class_of), tuple(masks))

    def __len__(self) -> int:
        return len(self.classes)

    def is_identity(self) -> bool:
        return len(self.classes) == self.carrier.size

    def class_label(self, i: int) -> str:
        return "{" + ",".join(self.carrier.labels_of(self.classes[i])) + "}"

    def labels(self) -> tuple[str, ...]:
        return tuple(self.class_label(i) for i in range(len(self.classes)))

    def classes_hit(self, mask: int) -> set[int]:
        return {self.class_of[x] for x in members(mask)}

    def to_json(self) -> list[list[str]]:
        return [self.carrier.labels_of(c) for c in self.classes]


@dataclass(frozen=True)
class ExpressionFamily:
    ring_sets: frozenset[int]
    module_sets: frozenset[int]
    rounds: int = 0


def _close(seeds: Iterable[int], binary: list[Callable[[int, int], int]], unary: list[Callable[[int], int]] = ()) -> tuple[list[int], int]:
    """Least family containing ``seeds`` and closed under the given set operations.

    Worklist over bitsets; each unordered pair is combined once, when the
    later of its two members is dequeued. Returns the family in discovery
    order and the number of worklist generations.
    """
    order: list[int] = []
    seen: set[int] = set()
    work: deque[tuple[int, int]] = deque()
    for s in seeds:
        if s not in seen:
            seen.add(s)
            order.append(s)
            work.append((s, 0))
    rounds = 0
    while work:
        s, gen = work.popleft()
        rounds = max(rounds, gen)
        out = []
        for t in order:
            for op in binary:
                out.append(op(s, t))
                out.append(op(t, s))
        for op in unary:
            out.append(op(s))
        for u in out:
            if u not in seen:
                seen.add(u)
                order.append(u)
                work.append((u, gen + 1))
    return order, rounds


def ring_expression_sets(r: HvRing) -> tuple[list[int], int]:
    seeds = [1 << i for i in range(r.size)]
    add, mul = r.add, r.mul
    return _close(seeds, [lambda s, t: subset_product(add, s, t), lambda s, t: subset_product(mul, s, t)])


def achievable_sets(m: HvModule) -> ExpressionFamily:
    """Ring and module sets obtainable from finite expressions in the hyperoperations.

    Module sets are closed under ``+`` and under ``S·A`` for every ring set
    ``S``. Memoized on the module.
    """
    cached = m._cache.get("family")
    if cached is not None:
        return cached
    ring_sets, r_rounds = ring_expression_sets(m.ring)
    add, act = m.add, m.action
    unary = [lambda A, S=S: act.apply(S, A) for S in ring_sets]
    mod_sets, m_rounds = _close([1 << i for i in range(m.size)], [lambda s, t: subset_product(add, s, t)], unary)
    fam = ExpressionFamily(frozenset(ring_sets), frozenset(mod_sets), r_rounds + m_rounds)
    m._cache["family"] = fam
    return fam


def epsilon_star(m: HvModule, fam: ExpressionFamily | None = None) -> Partition:
    fam = fam or achievable_sets(m)
    uf = UnionFind(m.size)
    for u in fam.module_sets:
        uf.union_mask(u)
    return Partition.from_union_find(m.carrier, uf)


def gamma_star(r: HvRing, ring_sets: Iterable[int] | None = None) -> Partition:
    return _gamma(r, ring_sets)[0]


def _gamma(r: HvRing, ring_sets: Iterable[int] | None = None) -> tuple[Partition, int]:
    """Smallest equivalence on ``R`` whose quotient is a ring.

    Starts from co-membership in ring expressions. Because ``(R,+)`` need
    not be weak commutative, classes of ``x+y`` and ``y+x`` are then merged
    and the partition re-closed under both operations until stable. The
    final quotient is checked against the ring axioms. Also returns the
    number of commutator merges that were needed.
    """
    if ring_sets is None:
        ring_sets, _ = ring_expression_sets(r)
    n = r.size
    uf = UnionFind(n)
    for u in ring_sets:
        uf.union_mask(u)
    merges = 0
    changed = True
    while changed:
        changed = False
        part = Partition.from_union_find(r.carrier, uf)
        for X, Y in itertools.product(part.classes, repeat=2):
            for op in (r.add, r.mul):
                changed |= uf.union_mask(subset_product(op, X, Y))
        if changed:
            continue
        for X, Y in itertools.product(part.classes, repeat=2):
            xy, yx = subset_product(r.add, X, Y), subset_product(r.add, Y, X)
            if uf.union(members(xy)[0], members(yx)[0]):
                merges += 1
                changed = True
    part = Partition.from_union_find(r.carrier, uf)
    add_t, mul_t = _class_table(r.add, part, "ring.add"), _class_table(r.mul, part, "ring.mul")
    report = check_ordinary_ring(add_t, mul_t, len(part))
    if not report.ok:
        raise ConsistencyError(f"R/γ* is not a ring ({report.condition})", report.witness)
    return part, merges


def _class_table(op: HyperOp, part: Partition, where: str) -> tuple[tuple[int, ...], ...]:
    k = len(part)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            hit = part.classes_hit(subset_product(op, part.classes[i], part.classes[j]))
            if len(hit) != 1:
                raise ConsistencyError(
                    f"{where} is not single-valued on classes",
                    {"left": part.class_label(i), "right": part.class_label(j), "classes": sorted(part.class_label(c) for c in hit)},
                )
            row.append(hit.pop())
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class FundamentalQuotient:
    source: HvModule
    module_partition: Partition
    ring_partition: Partition
    add_table: tuple[tuple[int, ...], ...]
    ring_add_table: tuple[tuple[int, ...], ...]
    ring_mul_table: tuple[tuple[int, ...], ...]
    action_table: tuple[tuple[int, ...], ...]
    zero_class: int
    neg: tuple[int, ...]
    commutator_merges: int = 0
    _derived: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.module_partition)

    @property
    def core(self) -> int:
        """Bitset of the zero class of the quotient group."""
        return self.module_partition.classes[self.zero_class]

    def module_carrier(self) -> Carrier:
        return Carrier(self.module_partition.labels())

    def ring_carrier(self) -> Carrier:
        return Carrier(self.ring_partition.labels())

    def to_ordinary(self) -> OrdinaryModule:
        om = self._derived.get("ordinary")
        if om is None:
            om = OrdinaryModule(
                self.ring_carrier(),
                self.ring_add_table,
                self.ring_mul_table,
                self.module_carrier(),
                self.add_table,
                self.action_table,
                self.zero_class,
            )
            self._derived["ordinary"] = om
        return om

    def over_source_ring(self) -> HvModule:
        """The quotient as a single-valued module over the original ring ``R``.

        ``r`` acts through its class, which makes the canonical projection a
        strong epimorphism of H_v-modules over ``R``.
        """
        carrier = self.module_carrier()
        ring = self.source.ring
        gamma = self.ring_partition.class_of
        add = HyperOp.singleton(carrier, self.add_table, "module.add")
        act = ExternalOp(ring.carrier, carrier, tuple(tuple(1 << v for v in self.action_table[gamma[r]]) for r in range(ring.size)))
        return HvModule(ring, carrier, add, act, self.zero_class)

    def canonical_projection(self) -> ModuleMap:
        return ModuleMap(self.source, self.over_source_ring(), self.module_partition.class_of)

    def to_json(self) -> dict:
        ml, rl = self.module_partition.labels(), self.ring_partition.labels()
        return {
            "epsilon": self.module_partition.to_json(),
            "gamma": self.ring_partition.to_json(),
            "add": [[ml[c] for c in row] for row in self.add_table],
            "ring_add": [[rl[c] for c in row] for row in self.ring_add_table],
            "ring_mul": [[rl[c] for c in row] for row in self.ring_mul_table],
            "action": [[ml[c] for c in row] for row in self.action_table],
            "core": ml[self.zero_class],
            "negation": {ml[i]: ml[j] for i, j in enumerate(self.neg)},
        }


def build_fundamental_quotient(m: HvModule) -> FundamentalQuotient:
    """Build M/ε* over R/γ*, checking well-definedness instead of assuming it.

    Raises :class:`ConsistencyError` if a class operation is multi-valued,
    no additive identity exists, the designated zero does not land in the
    identity class, or the result fails the classical module axioms.
    """
    cached = m._cache.get("quotient")
    if cached is not None:
        return cached
    fam = achievable_sets(m)
    eps = epsilon_star(m, fam)
    gam, merges = _gamma(m.ring, fam.ring_sets)
    add_t = _class_table(m.add, eps, "module.add")
    radd_t = _class_table(m.ring.add, gam, "ring.add")
    rmul_t = _class_table(m.ring.mul, gam, "ring.mul")
    act_rows = []
    for g in range(len(gam)):
        row = []
        for x in range(len(eps)):
            hit = eps.classes_hit(m.action.apply(gam.classes[g], eps.classes[x]))
            if len(hit) != 1:
                raise ConsistencyError(
                    "external product is not single-valued on classes",
                    {"ring_class": gam.class_label(g), "module_class": eps.class_label(x), "classes": sorted(eps.class_label(c) for c in hit)},
                )
            row.append(hit.pop())
        act_rows.append(tuple(row))
    k = len(eps)
    zero = next((z for z in range(k) if all(add_t[z][x] == x == add_t[x][z] for x in range(k))), None)
    if zero is None:
        raise ConsistencyError("quotient group has no identity class")
    if m.zero is not None and eps.class_of[m.zero] != zero:
        raise ConsistencyError(
            "designated zero is not in the core",
            {"zero": m.carrier.label(m.zero), "core": eps.class_label(zero)},
        )
    neg = []
    for x in range(k):
        inv = [y for y in range(k) if add_t[x][y] == zero]
        if len(inv) != 1:
            raise ConsistencyError("quotient class lacks a unique inverse", {"class": eps.class_label(x)})
        neg.append(inv[0])
    if m.zero is not None:
        for x in range(m.size):
            for y in range(m.size):
                if m.add(x, y) >> m.zero & 1 and eps.class_of[y] != neg[eps.class_of[x]]:
                    raise ConsistencyError(
                        "class of a negative is not the negative class",
                        {"x": m.carrier.label(x), "y": m.carrier.label(y)},
                    )
    q = FundamentalQuotient(
        m, eps, gam, add_t, radd_t, rmul_t, tuple(act_rows), zero, tuple(neg), merges
    )
    report = check_ordinary_module(q.to_ordinary())
    if not report.ok:
        raise ConsistencyError(f"quotient is not a module ({report.condition})", report.witness)
    m._cache["quotient"] = q
    return q


def quotient_ivifs(a: IVIFS, q: FundamentalQuotient, override: bool = True) -> IVIFS:
    """Induced fuzzy set on M/ε*: sup of M and inf of N over each class.

    The core class gets ([1,1], [0,0]) unless ``override`` is off.
    """
    carrier = q.module_carrier()
    Ms, Ns = [], []
    for i, cls in enumerate(q.module_partition.classes):
        elems = members(cls)
        if override and i == q.zero_class:
            Ms.append(TOP)
            Ns.append(BOTTOM)
        else:
            Ms.append(sup_set(a.M[x] for x in elems))
            Ns.append(inf_set(a.N[x] for x in elems))
    return IVIFS.from_values(carrier, Ms, Ns)


def negation_monotone(q: FundamentalQuotient, aq: IVIFS) -> CheckReport:
    """``M(X) <= M(-X)`` and ``N(X) >= N(-X)`` on every quotient class."""
    for x, nx in enumerate(q.neg):
        if not (aq.M[x] <= aq.M[nx] and aq.N[x] >= aq.N[nx]):
            return failed("negation-monotone", "negation", {"class": aq.carrier.label(x), "negative": aq.carrier.label(nx)})
    return passed("negation-monotone")


def verify_quotient_transfer(
    m: HvModule,
    a: IVIFS,
    norms: IntervalNormPair = MIN_MAX,
    strict: bool = True,
    override: bool = True,
    require_predicate: bool = True,
) -> CheckReport:
    """The induced fuzzy set of an (S,T)-fuzzy H_v-submodule is an (S,T)-fuzzy submodule of M/ε*."""
    name = "quotient-transfer"
    if not check_hv_module(m).ok:
        return skipped(name, "not an H_v-module")
    if not validate_ivifs(a).ok:
        return skipped(name, "fuzzy set violates the sup-sum constraint")
    if require_predicate and not check_st_hv_submodule(m, a, norms, strict).ok:
        return skipped(name, "fuzzy set is not an (S,T)-fuzzy H_v-submodule")
    try:
        q = build_fundamental_quotient(m)
    except ConsistencyError as exc:
        return failed(name, "quotient-consistency", {"error": str(exc), **exc.witness})
    aq = quotient_ivifs(a, q, override)
    report = check_st_submodule_ordinary(q.to_ordinary(), aq, norms)
    info = {"classes": q.module_partition.to_json(), "core": q.module_partition.class_label(q.zero_class), "quotient_fuzzy": aq.to_json()}
    if report.ok:
        return passed(name, **info)
    return failed(name, report.condition, report.witness, **info)
