"""Interval numbers on [0, 1] with exact rational endpoints, and idempotent norms.

Endpoints are :class:`fractions.Fraction` throughout; floats are rejected so
that level-cut thresholds compare exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .report import CheckReport, ConstructionError, failed, passed

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value: object) -> Fraction:
    """Coerce ``value`` to a Fraction in [0, 1].

    Accepts Fractions, ints and strings such as ``"2/5"`` or ``"0.4"``.
    Floats are refused: their binary expansion is not the number the user
    meant.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ConstructionError(f"refusing non-exact rational {value!r}")
    if isinstance(value, Fraction):
        q = value
    elif isinstance(value, int):
        q = Fraction(value)
    elif isinstance(value, str):
        try:
            q = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ConstructionError(f"malformed rational {value!r}") from None
    else:
        raise ConstructionError(f"cannot read {value!r} as a rational")
    if not ZERO <= q <= ONE:
        raise ConstructionError(f"rational {value!r} outside [0,1]")
    return q


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True, slots=True)
class Interval:
    """A closed interval [lo, hi] inside [0, 1].

    Comparison operators implement the componentwise partial order, so two
    intervals can be incomparable (``a <= b`` and ``b <= a`` both false).
    Do not feed intervals to the builtin ``min``/``max``; use
    :func:`inf_set` / :func:`sup_set`.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if not (ZERO <= self.lo <= self.hi <= ONE):
            raise ConstructionError(f"invalid interval [{self.lo}, {self.hi}]")

    def __le__(self, other: Interval) -> bool:
        return self.lo <= other.lo and self.hi <= other.hi

    def __ge__(self, other: Interval) -> bool:
        return self.lo >= other.lo and self.hi >= other.hi

    def __lt__(self, other: Interval) -> bool:
        return self <= other and self != other

    def __gt__(self, other: Interval) -> bool:
        return self >= other and self != other

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"

    def to_json(self) -> list[str]:
        return [format_rational(self.lo), format_rational(self.hi)]


BOTTOM = Interval(ZERO, ZERO)
TOP = Interval(ONE, ONE)

# [t, s] thresholds for level cuts are just interval numbers.
Threshold = Interval


def make_interval(lo: object, hi: object | None = None) -> Interval:
    """Build ``[lo, hi]``; a single argument gives the degenerate interval."""
    lo_q = to_rational(lo)
    hi_q = lo_q if hi is None else to_rational(hi)
    if lo_q > hi_q:
        raise ConstructionError(f"lower endpoint {lo_q} exceeds upper endpoint {hi_q}")
    return Interval(lo_q, hi_q)


def interval_leq(a: Interval, b: Interval) -> bool:
    return a.lo <= b.lo and a.hi <= b.hi


def inf_set(xs: Iterable[Interval]) -> Interval:
    xs = list(xs)
    if not xs:
        raise ValueError("infimum of an empty collection of intervals")
    return Interval(min(x.lo for x in xs), min(x.hi for x in xs))


def sup_set(xs: Iterable[Interval]) -> Interval:
    xs = list(xs)
    if not xs:
        raise ValueError("supremum of an empty collection of intervals")
    return Interval(max(x.lo for x in xs), max(x.hi for x in xs))


def scale(k: object, a: Interval) -> Interval:
    kq = to_rational(k)
    return Interval(kq * a.lo, kq * a.hi)


class UndefinedNormValue(KeyError):
    pass


class ScalarNorm:
    """A binary operation on [0,1] claimed to be an idempotent t-norm or s-norm.

    Either wraps a rule (any callable on Fractions) or a finite table. A
    table norm raises :class:`UndefinedNormValue` outside its domain.
    """

    def __init__(self, kind: str, fn: Callable[[Fraction, Fraction], Fraction], name: str = ""):
        if kind not in ("t", "s"):
            raise ValueError(f"norm kind must be 't' or 's', not {kind!r}")
        self.kind = kind
        self.fn = fn
        self.name = name or getattr(fn, "__name__", "norm")
        # validation verdicts keyed by value set; the rule is assumed pure
        self._verdicts: dict[tuple[frozenset, int], CheckReport] = {}

    @classmethod
    def from_table(cls, kind: str, table: Mapping[tuple[object, object], object], name: str = "table") -> ScalarNorm:
        data = {(to_rational(x), to_rational(y)): to_rational(z) for (x, y), z in table.items()}

        def lookup(x: Fraction, y: Fraction) -> Fraction:
            try:
                return data[x, y]
            except KeyError:
                raise UndefinedNormValue((x, y)) from None

        norm = cls(kind, lookup, name)
        norm.table = data
        return norm

    def __call__(self, x: Fraction, y: Fraction) -> Fraction:
        return self.fn(x, y)

    def __repr__(self) -> str:
        return f"ScalarNorm({self.kind!r}, {self.name!r})"


MIN_T = ScalarNorm("t", min, "min")
MAX_S = ScalarNorm("s", max, "max")
PRODUCT_T = ScalarNorm("t", lambda x, y: x * y, "product")
PROBSUM_S = ScalarNorm("s", lambda x, y: x + y - x * y, "probabilistic-sum")


def norm_closure(n: ScalarNorm, values: Iterable[object], limit: int = 256) -> tuple[list[Fraction], tuple | None]:
    """Close ``values`` ∪ {0, 1} under ``n``.

    Returns ``(closure, problem)``; ``problem`` is ``None`` on success, else a
    tuple describing why the closure could not be completed (an undefined
    table entry, an out-of-range value, or growth past ``limit``).
    """
    seen = {ZERO, ONE} | {to_rational(v) for v in values}
    frontier = list(seen)
    while frontier:
        new = []
        current = sorted(seen)
        for x in frontier:
            for y in current:
                for a, b in ((x, y), (y, x)):
                    try:
                        z = n(a, b)
                    except UndefinedNormValue:
                        return sorted(seen), ("undefined", a, b)
                    if not isinstance(z, Fraction) or not ZERO <= z <= ONE:
                        return sorted(seen), ("range", a, b, z)
                    if z not in seen:
                        seen.add(z)
                        new.append(z)
                        if len(seen) > limit:
                            return sorted(seen), ("unbounded", a, b, z)
        frontier = new
    return sorted(seen), None


def validate_idempotent_norm(n: ScalarNorm, values: Iterable[object], limit: int = 256) -> CheckReport:
    """Exhaustively check the idempotent norm axioms on the closure of ``values``.

    Idempotency, commutativity and the boundary law are first checked on the
    supplied values themselves, so a norm such as the product fails with a
    witness from the user's own set instead of an unbounded-closure report.
    """
    base = sorted({ZERO, ONE} | {to_rational(v) for v in values})
    key = (frozenset(base), limit)
    report = n._verdicts.get(key)
    if report is None:
        report = n._verdicts[key] = _validate(n, base, limit)
    return report


def _validate(n: ScalarNorm, base: list[Fraction], limit: int) -> CheckReport:
    name = f"{n.kind}-norm"

    def w(**kw: Fraction) -> dict[str, str]:
        return {k: format_rational(v) for k, v in kw.items()}

    def axioms(vals: list[Fraction]) -> CheckReport | None:
        try:
            for x in vals:
                if n(x, x) != x:
                    return failed(name, "idempotency", w(x=x, value=n(x, x)))
            for x, y in itertools.combinations(vals, 2):
                if n(x, y) != n(y, x):
                    return failed(name, "commutativity", w(x=x, y=y, xy=n(x, y), yx=n(y, x)))
            for x in vals:
                if n.kind == "t" and n(x, ONE) != x:
                    return failed(name, "boundary", w(x=x, value=n(x, ONE)))
                if n.kind == "s" and n(x, ZERO) != x:
                    return failed(name, "boundary", w(x=x, value=n(x, ZERO)))
            if n.kind == "s" and n(ONE, ONE) != ONE:
                return failed(name, "boundary", w(x=ONE, value=n(ONE, ONE)))
        except UndefinedNormValue as exc:
            x, y = exc.args[0]
            return failed(name, "closure", {"reason": "undefined", "x": format_rational(x), "y": format_rational(y)})
        return None

    report = axioms(base)
    if report is not None:
        return report
    closure, problem = norm_closure(n, base, limit)
    if problem is not None:
        return failed(name, "closure", {"reason": problem[0], **w(x=problem[1], y=problem[2])})
    report = axioms(closure)
    if report is not None:
        return report
    # the closure is closed under n, so an index table covers every composite
    k = len(closure)
    pos = {q: i for i, q in enumerate(closure)}
    tab = [[pos[n(x, y)] for y in closure] for x in closure]
    rng = range(k)
    for x, y, z in itertools.product(rng, repeat=3):
        if tab[tab[x][y]][z] != tab[x][tab[y][z]]:
            return failed(name, "associativity", w(x=closure[x], y=closure[y], z=closure[z]))
    # closure is sorted, so index order is value order
    for x, u, v in itertools.product(rng, repeat=3):
        if u <= v and not (tab[x][u] <= tab[x][v] and tab[u][x] <= tab[v][x]):
            return failed(name, "monotonicity", w(x=closure[x], u=closure[u], w=closure[v]))
    return passed(name, closure=[format_rational(q) for q in closure])


class IntervalNorm:
    """Componentwise lift of a scalar norm to interval numbers."""

    def __init__(self, scalar: ScalarNorm):
        self.scalar = scalar
        self.kind = scalar.kind

    def __call__(self, a: Interval, b: Interval) -> Interval:
        d = self.scalar.fn
        return Interval(d(a.lo, b.lo), d(a.hi, b.hi))

    def __repr__(self) -> str:
        return f"IntervalNorm({self.scalar.name})"


def lift_norm(n: ScalarNorm) -> IntervalNorm:
    return IntervalNorm(n)


@dataclass(frozen=True)
class IntervalNormPair:
    T: IntervalNorm
    S: IntervalNorm

    def __post_init__(self) -> None:
        if self.T.kind != "t" or self.S.kind != "s":
            raise ConstructionError("norm pair needs a t-norm first and an s-norm second")

    @property
    def name(self) -> str:
        return f"{self.T.scalar.name}/{self.S.scalar.name}"

    def validate(self, values: Iterable[object]) -> CheckReport:
        values = list(values)
        for part in (self.T, self.S):
            report = validate_idempotent_norm(part.scalar, values)
            if not report.ok:
                return report
        return passed("norm-pair")


MIN_MAX = IntervalNormPair(lift_norm(MIN_T), lift_norm(MAX_S))
