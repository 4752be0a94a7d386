"""Finite hyperstructures stored as bitset tables, and their axiom checkers.

Subsets of a carrier of size ``n`` are Python ints used as bitsets: element
``i`` is a member iff bit ``i`` is set. Every checker scans tuples in
lexicographic order and reports the first violation, so witnesses are
reproducible.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .report import (
    CheckReport,
    ConstructionError,
    PreconditionError,
    failed,
    passed,
)

DEFAULT_MAX_CARRIER = 16


def max_carrier() -> int:
    raw = os.environ.get("HVLAB_MAX_CARRIER")
    return int(raw) if raw else DEFAULT_MAX_CARRIER


# -- bitset helpers ---------------------------------------------------------


def bit(i: int) -> int:
    return 1 << i


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for i in elements:
        m |= 1 << i
    return m


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# -- carriers and tables -----------------------------------------------------


@dataclass(frozen=True)
class Carrier:
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ConstructionError("carrier must be nonempty")
        if len(set(labels)) != len(labels):
            raise ConstructionError(f"duplicate labels in carrier {labels}")
        if len(labels) > max_carrier():
            raise ConstructionError(
                f"carrier of size {len(labels)} exceeds the cap {max_carrier()} (set HVLAB_MAX_CARRIER)"
            )

    @classmethod
    def of_size(cls, n: int) -> Carrier:
        return cls(tuple(str(i) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return full_mask(len(self.labels))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"unknown label {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in members(mask)]

    def mask(self, labels: Iterable[str]) -> int:
        return mask_of(self.index(x) for x in labels)


def _freeze_table(table: Sequence[Sequence[int]], rows: int, cols: int, universe: int, where: str) -> tuple:
    if len(table) != rows or any(len(row) != cols for row in table):
        raise ConstructionError(f"{where}: table must be {rows}x{cols}")
    out = []
    for i, row in enumerate(table):
        for j, cell in enumerate(row):
            if cell == 0:
                raise ConstructionError(f"empty hyperoperation cell at {where}[{i}][{j}]")
            if cell & ~universe:
                raise ConstructionError(f"cell {where}[{i}][{j}] leaves the carrier")
        out.append(tuple(int(c) for c in row))
    return tuple(out)


@dataclass(frozen=True)
class HyperOp:
    """A hyperoperation ``H x H -> P*(H)`` as a table of nonempty bitsets."""

    carrier: Carrier
    table: tuple[tuple[int, ...], ...]
    name: str = "op"

    def __post_init__(self) -> None:
        n = self.carrier.size
        object.__setattr__(self, "table", _freeze_table(self.table, n, n, self.carrier.full, self.name))

    @classmethod
    def from_function(cls, carrier: Carrier, fn, name: str = "op") -> HyperOp:
        n = carrier.size
        return cls(carrier, tuple(tuple(mask_of(fn(x, y)) for y in range(n)) for x in range(n)), name)

    @classmethod
    def singleton(cls, carrier: Carrier, table: Sequence[Sequence[int]], name: str = "op") -> HyperOp:
        return cls(carrier, tuple(tuple(1 << v for v in row) for row in table), name)

    @classmethod
    def total(cls, carrier: Carrier, name: str = "op") -> HyperOp:
        n = carrier.size
        return cls(carrier, tuple((carrier.full,) * n for _ in range(n)), name)

    def __call__(self, x: int, y: int) -> int:
        return self.table[x][y]

    def product(self, A: int, B: int) -> int:
        return subset_product(self, A, B)

    def is_single_valued(self) -> bool:
        return all(c & (c - 1) == 0 for row in self.table for c in row)


def subset_product(op: HyperOp, A: int, B: int) -> int:
    """``A·B``: the union of ``a·b`` over ``a`` in ``A`` and ``b`` in ``B``."""
    if not A or not B:
        raise ValueError("subset product needs nonempty operands")
    table = op.table
    bs = members(B)
    out = 0
    for a in members(A):
        row = table[a]
        for b in bs:
            out |= row[b]
    return out


@dataclass(frozen=True)
class ExternalOp:
    """Hyperaction ``R x M -> P*(M)``; rows indexed by ring elements."""

    ring_carrier: Carrier
    module_carrier: Carrier
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "table",
            _freeze_table(self.table, self.ring_carrier.size, self.module_carrier.size, self.module_carrier.full, "action"),
        )

    def __call__(self, r: int, x: int) -> int:
        return self.table[r][x]

    def apply(self, S: int, A: int) -> int:
        """``S·A`` for a ring subset ``S`` and module subset ``A``."""
        if not S or not A:
            raise ValueError("external product needs nonempty operands")
        out = 0
        xs = members(A)
        for r in members(S):
            row = self.table[r]
            for x in xs:
                out |= row[x]
        return out

    def is_single_valued(self) -> bool:
        return all(c & (c - 1) == 0 for row in self.table for c in row)


@dataclass(frozen=True)
class HvRing:
    carrier: Carrier
    add: HyperOp
    mul: HyperOp

    @property
    def size(self) -> int:
        return self.carrier.size

    def is_single_valued(self) -> bool:
        return self.add.is_single_valued() and self.mul.is_single_valued()


@dataclass(frozen=True)
class HvModule:
    """An H_v-module ``M`` over an H_v-ring ``R``.

    ``zero`` optionally designates an element ``0`` with ``x ∈ 0+x`` and
    ``x ∈ x+0`` for every ``x`` (checked by :func:`check_hv_module`).
    """

    ring: HvRing
    carrier: Carrier
    add: HyperOp
    action: ExternalOp
    zero: int | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        if self.add.carrier != self.carrier:
            raise ConstructionError("module addition is on a different carrier")
        if self.action.ring_carrier != self.ring.carrier or self.action.module_carrier != self.carrier:
            raise ConstructionError("action table does not match ring/module carriers")
        if self.zero is not None and not 0 <= self.zero < self.carrier.size:
            raise ConstructionError(f"designated zero {self.zero} outside the carrier")

    @property
    def size(self) -> int:
        return self.carrier.size

    def is_single_valued(self) -> bool:
        return self.ring.is_single_valued() and self.add.is_single_valued() and self.action.is_single_valued()

    def as_ordinary(self) -> OrdinaryModule:
        """Read singleton tables back as an ordinary module (zero located if not designated)."""
        if not self.is_single_valued():
            raise PreconditionError("module has multi-valued cells; not an ordinary module")

        def single(t):
            return tuple(tuple(lowest(c) for c in row) for row in t)

        add = single(self.add.table)
        zero = self.zero
        if zero is None:
            n = self.size
            zero = next((z for z in range(n) if all(add[z][x] == x == add[x][z] for x in range(n))), None)
            if zero is None:
                raise PreconditionError("no additive identity in the module")
        om = OrdinaryModule(
            self.ring.carrier,
            single(self.ring.add.table),
            single(self.ring.mul.table),
            self.carrier,
            add,
            single(self.action.table),
            zero,
        )
        report = check_ordinary_module(om)
        if not report.ok:
            raise PreconditionError(f"singleton tables are not a module: {report.condition} {report.witness}")
        return om


# -- ordinary (single-valued) structures ------------------------------------


@dataclass(frozen=True)
class OrdinaryModule:
    """A classical module over a classical ring (no unity assumed)."""

    ring_carrier: Carrier
    ring_add: tuple[tuple[int, ...], ...]
    ring_mul: tuple[tuple[int, ...], ...]
    carrier: Carrier
    add: tuple[tuple[int, ...], ...]
    action: tuple[tuple[int, ...], ...]
    zero: int

    @property
    def size(self) -> int:
        return self.carrier.size

    def neg(self, x: int) -> int:
        for y in range(self.size):
            if self.add[x][y] == self.zero:
                return y
        raise ConstructionError(f"element {self.carrier.label(x)} has no additive inverse")

    def sub(self, x: int, y: int) -> int:
        return self.add[x][self.neg(y)]

    def ring_zero(self) -> int:
        n = self.ring_carrier.size
        for z in range(n):
            if all(self.ring_add[z][x] == x for x in range(n)):
                return z
        raise ConstructionError("ring has no additive identity")

    def center(self) -> list[int]:
        n = self.ring_carrier.size
        mul = self.ring_mul
        return [p for p in range(n) if all(mul[p][r] == mul[r][p] for r in range(n))]

    def as_hv_module(self) -> HvModule:
        ring = HvRing(
            self.ring_carrier,
            HyperOp.singleton(self.ring_carrier, self.ring_add, "ring.add"),
            HyperOp.singleton(self.ring_carrier, self.ring_mul, "ring.mul"),
        )
        return HvModule(
            ring,
            self.carrier,
            HyperOp.singleton(self.carrier, self.add, "module.add"),
            ExternalOp(self.ring_carrier, self.carrier, tuple(tuple(1 << v for v in row) for row in self.action)),
            self.zero,
        )


def _check_abelian_group(table, n: int, name: str) -> CheckReport:
    for x, y, z in itertools.product(range(n), repeat=3):
        if table[table[x][y]][z] != table[x][table[y][z]]:
            return failed(name, "associativity", {"x": x, "y": y, "z": z})
    for x, y in itertools.product(range(n), repeat=2):
        if table[x][y] != table[y][x]:
            return failed(name, "commutativity", {"x": x, "y": y})
    zero = next((z for z in range(n) if all(table[z][x] == x for x in range(n))), None)
    if zero is None:
        return failed(name, "identity")
    for x in range(n):
        if all(table[x][y] != zero for y in range(n)):
            return failed(name, "inverse", {"x": x})
    return passed(name, zero=zero)


def check_ordinary_ring(add, mul, n: int) -> CheckReport:
    report = _check_abelian_group(add, n, "ring.add")
    if not report.ok:
        return report
    for x, y, z in itertools.product(range(n), repeat=3):
        if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
            return failed("ring", "mul.associativity", {"x": x, "y": y, "z": z})
        if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]]:
            return failed("ring", "left-distributivity", {"x": x, "y": y, "z": z})
        if mul[add[x][y]][z] != add[mul[x][z]][mul[y][z]]:
            return failed("ring", "right-distributivity", {"x": x, "y": y, "z": z})
    return passed("ring")


def check_ordinary_module(m: OrdinaryModule) -> CheckReport:
    """Classical module axioms, checked exhaustively (indices in witnesses)."""
    nr, nm = m.ring_carrier.size, m.size
    report = check_ordinary_ring(m.ring_add, m.ring_mul, nr)
    if not report.ok:
        return report
    report = _check_abelian_group(m.add, nm, "module.add")
    if not report.ok:
        return report
    if any(m.add[m.zero][x] != x for x in range(nm)):
        return failed("module", "zero", {"zero": m.zero})
    act, add, radd, rmul = m.action, m.add, m.ring_add, m.ring_mul
    for r in range(nr):
        for x, y in itertools.product(range(nm), repeat=2):
            if act[r][add[x][y]] != add[act[r][x]][act[r][y]]:
                return failed("module", "scalar-distributivity", {"r": r, "x": x, "y": y})
    for r, s in itertools.product(range(nr), repeat=2):
        for x in range(nm):
            if act[radd[r][s]][x] != add[act[r][x]][act[s][x]]:
                return failed("module", "ring-distributivity", {"r": r, "s": s, "x": x})
            if act[rmul[r][s]][x] != act[r][act[s][x]]:
                return failed("module", "compatibility", {"r": r, "s": s, "x": x})
    return passed("module")


# -- H_v axiom checkers -------------------------------------------------------


def _labels(carrier: Carrier, **idx: int) -> dict[str, str]:
    return {k: carrier.label(v) for k, v in idx.items()}


def check_hv_semigroup(op: HyperOp, name: str = "hv-semigroup") -> CheckReport:
    t = op.table
    n = op.carrier.size
    for x in range(n):
        for y in range(n):
            xy = t[x][y]
            for z in range(n):
                left = subset_product(op, 1 << x, t[y][z])
                right = subset_product(op, xy, 1 << z)
                if not left & right:
                    return failed(name, "weak-associativity", _labels(op.carrier, x=x, y=y, z=z))
    return passed(name)


def is_weak_commutative(op: HyperOp) -> tuple[bool, tuple[int, int] | None]:
    t = op.table
    n = op.carrier.size
    for x in range(n):
        for y in range(x + 1, n):
            if not t[x][y] & t[y][x]:
                return False, (x, y)
    return True, None


def check_hv_group(carrier: Carrier, op: HyperOp, name: str = "hv-group") -> CheckReport:
    """Weak associativity plus reproduction ``a·H = H·a = H``.

    ``info["weak_commutative"]`` reports the weak-commutativity flag.
    """
    if op.carrier != carrier:
        raise ConstructionError("operation is defined on a different carrier")
    report = check_hv_semigroup(op, name)
    if not report.ok:
        return report
    full = carrier.full
    t = op.table
    n = carrier.size
    for a in range(n):
        row = 0
        col = 0
        for u in range(n):
            row |= t[a][u]
            col |= t[u][a]
        if row != full:
            return failed(name, "left-reproduction", {"a": carrier.label(a), "aH": carrier.labels_of(row)})
        if col != full:
            return failed(name, "right-reproduction", {"a": carrier.label(a), "Ha": carrier.labels_of(col)})
    wc, pair = is_weak_commutative(op)
    info = {"weak_commutative": wc}
    if pair is not None:
        info["noncommuting"] = [carrier.label(pair[0]), carrier.label(pair[1])]
    return passed(name, **info)


def check_hv_ring(r: HvRing) -> CheckReport:
    report = check_hv_group(r.carrier, r.add, "ring.add")
    if not report.ok:
        return failed("hv-ring", f"add.{report.condition}", report.witness)
    report = check_hv_semigroup(r.mul, "ring.mul")
    if not report.ok:
        return failed("hv-ring", f"mul.{report.condition}", report.witness)
    add, mul = r.add, r.mul
    n = r.size
    for x, y, z in itertools.product(range(n), repeat=3):
        left = subset_product(mul, 1 << x, add(y, z))
        right = subset_product(add, mul(x, y), mul(x, z))
        if not left & right:
            return failed("hv-ring", "left-weak-distributivity", _labels(r.carrier, x=x, y=y, z=z))
        left = subset_product(mul, add(x, y), 1 << z)
        right = subset_product(add, mul(x, z), mul(y, z))
        if not left & right:
            return failed("hv-ring", "right-weak-distributivity", _labels(r.carrier, x=x, y=y, z=z))
    return passed("hv-ring")


def check_module_group(m: HvModule) -> CheckReport:
    """(M,+) must be a weak commutative H_v-group (plus the zero law if designated)."""
    report = check_hv_group(m.carrier, m.add, "module.add")
    if not report.ok:
        return failed("hv-module", f"add.{report.condition}", report.witness)
    if not report.info["weak_commutative"]:
        a, b = report.info["noncommuting"]
        return failed("hv-module", "add.weak-commutativity", {"x": a, "y": b})
    if m.zero is not None:
        z = m.zero
        for x in range(m.size):
            if not (m.add(z, x) >> x) & 1 or not (m.add(x, z) >> x) & 1:
                return failed("hv-module", "zero", {"zero": m.carrier.label(z), "x": m.carrier.label(x)})
    return passed("module.add")


def check_action_axioms(m: HvModule) -> CheckReport:
    act, add, radd, rmul = m.action, m.add, m.ring.add, m.ring.mul
    nr, nm = m.ring.size, m.size
    rl, ml = m.ring.carrier.labels, m.carrier.labels
    for a in range(nr):
        for x in range(nm):
            for y in range(nm):
                left = act.apply(1 << a, add(x, y))
                right = subset_product(add, act(a, x), act(a, y))
                if not left & right:
                    return failed("hv-module", "scalar-distributivity", {"a": rl[a], "x": ml[x], "y": ml[y]})
    for a in range(nr):
        for b in range(nr):
            for x in range(nm):
                left = act.apply(radd(a, b), 1 << x)
                right = subset_product(add, act(a, x), act(b, x))
                if not left & right:
                    return failed("hv-module", "ring-distributivity", {"a": rl[a], "b": rl[b], "x": ml[x]})
    for a in range(nr):
        for b in range(nr):
            for x in range(nm):
                left = act.apply(rmul(a, b), 1 << x)
                right = act.apply(1 << a, act(b, x))
                if not left & right:
                    return failed("hv-module", "compatibility", {"a": rl[a], "b": rl[b], "x": ml[x]})
    return passed("hv-module")


def check_hv_module(m: HvModule) -> CheckReport:
    """Full H_v-module check: ring axioms, (M,+) axioms, then the three action axioms."""
    cached = m._cache.get("module")
    if cached is not None:
        return cached
    report = check_hv_ring(m.ring)
    if not report.ok:
        report = failed("hv-module", f"ring.{report.condition}", report.witness)
    else:
        report = check_module_group(m)
        if report.ok:
            report = check_action_axioms(m)
    m._cache["module"] = report
    return report


def check_hv_submodule(m: HvModule, S: int) -> CheckReport:
    """Is the nonempty subset ``S`` an H_v-submodule of ``m``?

    Checks closure ``x+y ⊆ S``, reproduction ``a+S = S = S+a`` for ``a`` in
    ``S``, then ``R·S ⊆ S``. Results are memoized per module.
    """
    cache = m._cache.setdefault("sub", {})
    hit = cache.get(S)
    if hit is not None:
        return hit
    report = _check_hv_submodule(m, S)
    cache[S] = report
    return report


def _check_hv_submodule(m: HvModule, S: int) -> CheckReport:
    name = "hv-submodule"
    if not S:
        return failed(name, "nonempty", {"S": []})
    labels = m.carrier.labels
    t = m.add.table
    elems = members(S)
    for x in elems:
        for y in elems:
            if t[x][y] & ~S:
                return failed(
                    name,
                    "closure",
                    {"x": labels[x], "y": labels[y], "sum": m.carrier.labels_of(t[x][y]), "S": m.carrier.labels_of(S)},
                )
    for a in elems:
        left = right = 0
        for s in elems:
            left |= t[a][s]
            right |= t[s][a]
        if left != S:
            return failed(name, "left-reproduction", {"a": labels[a], "aS": m.carrier.labels_of(left), "S": m.carrier.labels_of(S)})
        if right != S:
            return failed(name, "right-reproduction", {"a": labels[a], "Sa": m.carrier.labels_of(right), "S": m.carrier.labels_of(S)})
    act = m.action.table
    for r in range(m.ring.size):
        for x in elems:
            if act[r][x] & ~S:
                return failed(
                    name,
                    "action-closure",
                    {"r": m.ring.carrier.label(r), "x": labels[x], "rx": m.carrier.labels_of(act[r][x])},
                )
    return passed(name)


def hv_submodules(m: HvModule) -> list[int]:
    """All H_v-submodules of ``m`` as bitsets, in increasing mask order."""
    return [S for S in range(1, m.carrier.full + 1) if check_hv_submodule(m, S).ok]


# -- constructions ------------------------------------------------------------

VARIANTS = {"a": "Pstar", "b": "Pplus", "c": "PstarPlus", "Pstar": "Pstar", "Pplus": "Pplus", "PstarPlus": "PstarPlus"}


def build_example_24(m: OrdinaryModule, variant: str, P1: Iterable[int], P2: Iterable[int] | None = None) -> HvModule:
    """Turn an ordinary module into an H_v-module by inflating the scalar action.

    * ``Pstar`` (a), ``P ⊆ R``:  ``r∘x = (rP)x``
    * ``Pplus`` (b), ``P ⊆ M``:  ``r∘x = r(P+x)``
    * ``PstarPlus`` (c), ``P1 ⊆ R``, ``P2 ⊆ M``:  ``r∘x = (rP1)(P2+x)``

    Raises :class:`PreconditionError` naming the failed hypothesis.
    """
    try:
        kind = VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}") from None
    P1 = sorted(set(P1))
    P2 = sorted(set(P2)) if P2 is not None else None
    mul, act, add = m.ring_mul, m.action, m.add
    nr, nm = m.ring_carrier.size, m.size
    center = set(m.center())

    if kind == "Pstar":
        if not P1 or any(not 0 <= p < nr for p in P1):
            raise PreconditionError("hypothesis (a) fails: P must be a nonempty subset of R")
        if not any(p in center and mul[p][p] in P1 for p in P1):
            raise PreconditionError("hypothesis (a) fails: no p in P ∩ Z(R) with p² in P")
        cell = lambda r, x: {act[mul[r][p]][x] for p in P1}
    elif kind == "Pplus":
        P = P1
        if not P or any(not 0 <= p < nm for p in P):
            raise PreconditionError("hypothesis (b) fails: P must be a nonempty subset of M")
        if m.zero not in P:
            raise PreconditionError("hypothesis (b) fails: 0 ∉ P")
        cell = lambda r, x: {act[r][add[p][x]] for p in P}
    else:
        if P2 is None:
            raise PreconditionError("hypothesis (c) fails: variant c needs both P1 ⊆ R and P2 ⊆ M")
        if not P1 or not P2:
            raise PreconditionError("hypothesis (c) fails: P1 and P2 must be nonempty")
        idem = [p for p in P1 if p in center and mul[p][p] == p]
        if not idem:
            raise PreconditionError("hypothesis (c) fails: no p1 in P1 ∩ Z(R) with p1² = p1")
        if not any(act[p1][p2] == m.zero for p1 in idem for p2 in P2):
            raise PreconditionError("hypothesis (c) fails: no central idempotent p1 in P1 and p2 in P2 with p1·p2 = 0")
        cell = lambda r, x: {act[mul[r][p1]][add[p2][x]] for p1 in P1 for p2 in P2}

    base = m.as_hv_module()
    table = tuple(tuple(mask_of(cell(r, x)) for x in range(nm)) for r in range(nr))
    return HvModule(base.ring, base.carrier, base.add, ExternalOp(m.ring_carrier, m.carrier, table), m.zero)


def iter_subsets(n: int, nonempty: bool = True) -> Iterator[int]:
    return iter(range(1 if nonempty else 0, 1 << n))
