"""Interval-valued (intuitionistic) fuzzy sets on finite carriers and their level cuts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .hyperstructures import Carrier
from .intervals import BOTTOM, ONE, TOP, ZERO, Interval, Threshold, inf_set, make_interval, sup_set
from .report import CheckReport, ConstructionError, failed, passed


@dataclass(frozen=True)
class IVFuzzySet:
    carrier: Carrier
    values: tuple[Interval, ...]

    def __post_init__(self) -> None:
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.carrier.size:
            raise ConstructionError("fuzzy set must assign a value to every element")

    def __getitem__(self, x: int) -> Interval:
        return self.values[x]

    @classmethod
    def constant(cls, carrier: Carrier, value: Interval) -> IVFuzzySet:
        return cls(carrier, (value,) * carrier.size)

    @classmethod
    def from_labels(cls, carrier: Carrier, data: Mapping[str, object]) -> IVFuzzySet:
        missing = [x for x in carrier.labels if x not in data]
        if missing:
            raise ConstructionError(f"fuzzy set has no value for {missing}")
        extra = [x for x in data if x not in carrier.labels]
        if extra:
            raise ConstructionError(f"fuzzy set names unknown labels {extra}")
        return cls(carrier, tuple(read_interval(data[x]) for x in carrier.labels))

    def to_json(self) -> dict[str, list[str]]:
        return {lab: v.to_json() for lab, v in zip(self.carrier.labels, self.values)}


def read_interval(v: object) -> Interval:
    if isinstance(v, Interval):
        return v
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return make_interval(v[0], v[1])
    return make_interval(v)


@dataclass(frozen=True)
class IVIFS:
    """A pair (membership M, non-membership N) of interval-valued fuzzy sets.

    Construction does not enforce the constraint ``M(x).hi + N(x).hi <= 1``;
    use :func:`validate_ivifs`.
    """

    M: IVFuzzySet
    N: IVFuzzySet

    def __post_init__(self) -> None:
        if self.M.carrier != self.N.carrier:
            raise ConstructionError("membership and non-membership live on different carriers")

    @property
    def carrier(self) -> Carrier:
        return self.M.carrier

    @classmethod
    def from_values(cls, carrier: Carrier, M: Sequence[Interval], N: Sequence[Interval]) -> IVIFS:
        return cls(IVFuzzySet(carrier, tuple(M)), IVFuzzySet(carrier, tuple(N)))

    @classmethod
    def constant(cls, carrier: Carrier, m: Interval, n: Interval) -> IVIFS:
        return cls(IVFuzzySet.constant(carrier, m), IVFuzzySet.constant(carrier, n))

    def to_json(self) -> dict:
        return {"M": self.M.to_json(), "N": self.N.to_json()}


def validate_ivifs(a: IVIFS) -> CheckReport:
    for x, (m, n) in enumerate(zip(a.M.values, a.N.values)):
        if m.hi + n.hi > ONE:
            return failed(
                "ivifs",
                "sup-sum",
                {"x": a.carrier.label(x), "M": m.to_json(), "N": n.to_json()},
            )
    return passed("ivifs")


def upper_cut(f: IVFuzzySet, th: Threshold) -> int:
    """Bitset of ``{x : f(x) >= [t, s]}``."""
    t, s = th.lo, th.hi
    mask = 0
    for x, v in enumerate(f.values):
        if v.lo >= t and v.hi >= s:
            mask |= 1 << x
    return mask


def lower_cut(f: IVFuzzySet, th: Threshold) -> int:
    """Bitset of ``{x : f(x) <= [t, s]}``."""
    t, s = th.lo, th.hi
    mask = 0
    for x, v in enumerate(f.values):
        if v.lo <= t and v.hi <= s:
            mask |= 1 << x
    return mask


def endpoint_grid(a: IVIFS) -> list[Fraction]:
    pts = {ZERO, ONE}
    for v in a.M.values + a.N.values:
        pts.add(v.lo)
        pts.add(v.hi)
    return sorted(pts)


def attained_thresholds(a: IVIFS) -> list[Threshold]:
    """Every ``[t, s]`` with ``t <= s`` drawn from {0, 1} and the attained endpoints.

    Cuts only change when a threshold crosses an attained endpoint, so this
    finite family realizes every distinct upper and lower cut.
    """
    pts = endpoint_grid(a)
    return [Interval(t, s) for i, t in enumerate(pts) for s in pts[i:]]


def cut_families(a: IVIFS) -> tuple[dict[int, Threshold], dict[int, Threshold]]:
    """Distinct upper cuts of M and lower cuts of N, each with a first threshold realizing it.

    Uses per-endpoint masks so a cut costs one AND instead of a scan.
    """
    pts = endpoint_grid(a)
    M, N = a.M.values, a.N.values
    up_lo = [_mask(v.lo >= t for v in M) for t in pts]
    up_hi = [_mask(v.hi >= s for v in M) for s in pts]
    dn_lo = [_mask(v.lo <= t for v in N) for t in pts]
    dn_hi = [_mask(v.hi <= s for v in N) for s in pts]
    uppers: dict[int, tuple[int, int]] = {}
    lowers: dict[int, tuple[int, int]] = {}
    k = len(pts)
    for i in range(k):
        for h in range(i, k):
            u = up_lo[i] & up_hi[h]
            if u not in uppers:
                uppers[u] = (i, h)
            l = dn_lo[i] & dn_hi[h]
            if l not in lowers:
                lowers[l] = (i, h)
    return (
        {u: Interval(pts[i], pts[h]) for u, (i, h) in uppers.items()},
        {l: Interval(pts[i], pts[h]) for l, (i, h) in lowers.items()},
    )


def _mask(bits) -> int:
    m = 0
    for i, b in enumerate(bits):
        if b:
            m |= 1 << i
    return m


def image_ivifs(f: Sequence[int], a: IVIFS, y_carrier: Carrier) -> IVIFS:
    """Push ``a`` forward along ``f``: sup of M and inf of N over each fibre.

    Elements with an empty fibre get M = [0,0] and N = [1,1].
    """
    if len(f) != a.carrier.size:
        raise ConstructionError("map must be total on the source carrier")
    fibres: list[list[int]] = [[] for _ in range(y_carrier.size)]
    for x, y in enumerate(f):
        fibres[y].append(x)
    M = tuple(sup_set(a.M[x] for x in fib) if fib else BOTTOM for fib in fibres)
    N = tuple(inf_set(a.N[x] for x in fib) if fib else TOP for fib in fibres)
    return IVIFS.from_values(y_carrier, M, N)


def preimage_ivifs(f: Sequence[int], b: IVIFS, x_carrier: Carrier) -> IVIFS:
    if len(f) != x_carrier.size:
        raise ConstructionError("map must be total on the source carrier")
    return IVIFS.from_values(x_carrier, [b.M[y] for y in f], [b.N[y] for y in f])
