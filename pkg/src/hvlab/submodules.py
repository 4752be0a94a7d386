"""Fuzzy submodule predicates and the level-cut equivalence verifier.

Condition names used in witnesses:

* ``sum``: the norm of the values at ``x`` and ``y`` is dominated by every
  value on ``x+y`` (membership) / dominates it (non-membership);
* ``left-solvable`` / ``right-solvable``: some ``y`` with ``x ∈ a+y``
  (resp. ``x ∈ y+a``) carries a value at least the norm of ``x`` and ``a``;
* ``action``: values do not drop along ``r·x``;
* ``zero`` / ``difference``: the ordinary-module variants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .fuzzy import IVIFS, cut_families, endpoint_grid, validate_ivifs
from .hyperstructures import HvModule, OrdinaryModule, check_hv_module, check_hv_submodule, members
from .intervals import BOTTOM, MIN_MAX, TOP, Interval, IntervalNormPair, format_rational
from .report import CheckReport, Status, failed, passed, skipped


def _tables(m: HvModule):
    """Cell member lists and left/right solution lists, memoized on the module."""
    cached = m._cache.get("tables")
    if cached is not None:
        return cached
    n = m.size
    add = m.add.table
    cells = [[members(add[x][y]) for y in range(n)] for x in range(n)]
    # left[a][x] = [y : x in a+y], right[a][x] = [z : x in z+a]
    left = [[[y for y in range(n) if add[a][y] >> x & 1] for x in range(n)] for a in range(n)]
    right = [[[z for z in range(n) if add[z][a] >> x & 1] for x in range(n)] for a in range(n)]
    acts = [[members(c) for c in row] for row in m.action.table]
    out = (cells, left, right, acts)
    m._cache["tables"] = out
    return out


def _j(v: Interval) -> list[str]:
    return v.to_json()


def _encode(a: IVIFS, norms: IntervalNormPair):
    """Values as endpoint pairs plus the lifted norms acting on them.

    For min/max only the order of endpoints matters, so they are replaced by
    integer ranks; any other norm works on the exact rationals.
    """
    t, s = norms.T.scalar.fn, norms.S.scalar.fn
    if t is min and s is max:
        pts = endpoint_grid(a)
        pos = {q: i for i, q in enumerate(pts)}
        M = [(pos[v.lo], pos[v.hi]) for v in a.M.values]
        N = [(pos[v.lo], pos[v.hi]) for v in a.N.values]

        def decode(p):
            return [format_rational(pts[p[0]]), format_rational(pts[p[1]])]

    else:
        M = [(v.lo, v.hi) for v in a.M.values]
        N = [(v.lo, v.hi) for v in a.N.values]

        def decode(p):
            return [format_rational(p[0]), format_rational(p[1])]

    def T(p, q):
        return (t(p[0], q[0]), t(p[1], q[1]))

    def S(p, q):
        return (s(p[0], q[0]), s(p[1], q[1]))

    return M, N, T, S, decode


def _le(p, q) -> bool:
    return p[0] <= q[0] and p[1] <= q[1]


def check_st_hv_submodule(m: HvModule, a: IVIFS, norms: IntervalNormPair = MIN_MAX, strict: bool = True) -> CheckReport:
    """Is ``a`` an interval-valued intuitionistic (S,T)-fuzzy H_v-submodule of ``m``?

    With ``strict`` (the default) the solvability conditions need one
    element serving the membership and non-membership inequalities at once;
    otherwise each inequality may use its own element.
    """
    name = "st-hv-submodule"
    M, N, T, S, j = _encode(a, norms)
    lab = m.carrier.labels
    cells, left, right, acts = _tables(m)
    n = m.size

    for x in range(n):
        for y in range(n):
            tm = T(M[x], M[y])
            sn = S(N[x], N[y])
            for al in cells[x][y]:
                if not _le(tm, M[al]):
                    return failed(name, "sum", {"x": lab[x], "y": lab[y], "alpha": lab[al], "part": "M", "norm": j(tm), "value": j(M[al])})
                if not _le(N[al], sn):
                    return failed(name, "sum", {"x": lab[x], "y": lab[y], "alpha": lab[al], "part": "N", "norm": j(sn), "value": j(N[al])})

    for cond, sols in (("left-solvable", left), ("right-solvable", right)):
        for x in range(n):
            for ai in range(n):
                tm = T(M[x], M[ai])
                sn = S(N[x], N[ai])
                cands = sols[ai][x]
                if strict:
                    ok = any(_le(tm, M[y]) and _le(N[y], sn) for y in cands)
                else:
                    ok = any(_le(tm, M[y]) for y in cands) and any(_le(N[y], sn) for y in cands)
                if not ok:
                    return failed(
                        name,
                        cond,
                        {"x": lab[x], "a": lab[ai], "candidates": [lab[y] for y in cands], "T": j(tm), "S": j(sn)},
                    )

    rlab = m.ring.carrier.labels
    for x in range(n):
        for r in range(m.ring.size):
            for al in acts[r][x]:
                if not _le(M[x], M[al]):
                    return failed(name, "action", {"r": rlab[r], "x": lab[x], "alpha": lab[al], "part": "M", "value_x": j(M[x]), "value": j(M[al])})
                if not _le(N[al], N[x]):
                    return failed(name, "action", {"r": rlab[r], "x": lab[x], "alpha": lab[al], "part": "N", "value_x": j(N[x]), "value": j(N[al])})
    return passed(name, strict=strict)


def check_fuzzy_hv_submodule(m: HvModule, mu: Sequence[Fraction]) -> CheckReport:
    """Scalar fuzzy H_v-submodule test for a map ``mu: M -> [0,1]``."""
    name = "fuzzy-hv-submodule"
    lab = m.carrier.labels
    cells, left, right, acts = _tables(m)
    n = m.size
    for x in range(n):
        for y in range(n):
            lo = min(mu[x], mu[y])
            for al in cells[x][y]:
                if mu[al] < lo:
                    return failed(name, "sum", {"x": lab[x], "y": lab[y], "alpha": lab[al], "min": str(lo), "value": str(mu[al])})
    for cond, sols in (("left-solvable", left), ("right-solvable", right)):
        for x in range(n):
            for a in range(n):
                lo = min(mu[a], mu[x])
                if not any(mu[y] >= lo for y in sols[a][x]):
                    return failed(name, cond, {"x": lab[x], "a": lab[a], "min": str(lo)})
    rlab = m.ring.carrier.labels
    for x in range(n):
        for r in range(m.ring.size):
            for al in acts[r][x]:
                if mu[x] > mu[al]:
                    return failed(name, "action", {"r": rlab[r], "x": lab[x], "alpha": lab[al], "value_x": str(mu[x]), "value": str(mu[al])})
    return passed(name)


def check_st_submodule_ordinary(m: OrdinaryModule, a: IVIFS, norms: IntervalNormPair = MIN_MAX) -> CheckReport:
    """Interval-valued intuitionistic (S,T)-fuzzy submodule of an ordinary module."""
    name = "st-submodule"
    T, S = norms.T, norms.S
    M, N = a.M.values, a.N.values
    lab = m.carrier.labels
    z = m.zero
    if M[z] != TOP or N[z] != BOTTOM:
        return failed(name, "zero", {"zero": lab[z], "M": _j(M[z]), "N": _j(N[z])})
    n = m.size
    neg = [m.neg(y) for y in range(n)]
    for x in range(n):
        for y in range(n):
            d = m.add[x][neg[y]]
            tm = T(M[x], M[y])
            if not tm <= M[d]:
                return failed(name, "difference", {"x": lab[x], "y": lab[y], "x-y": lab[d], "part": "M", "norm": _j(tm), "value": _j(M[d])})
            sn = S(N[x], N[y])
            if not sn >= N[d]:
                return failed(name, "difference", {"x": lab[x], "y": lab[y], "x-y": lab[d], "part": "N", "norm": _j(sn), "value": _j(N[d])})
    rlab = m.ring_carrier.labels
    for x in range(n):
        for r in range(m.ring_carrier.size):
            rx = m.action[r][x]
            if not M[x] <= M[rx]:
                return failed(name, "action", {"r": rlab[r], "x": lab[x], "rx": lab[rx], "part": "M", "value_x": _j(M[x]), "value": _j(M[rx])})
            if not N[x] >= N[rx]:
                return failed(name, "action", {"r": rlab[r], "x": lab[x], "rx": lab[rx], "part": "N", "value_x": _j(N[x]), "value": _j(N[rx])})
    return passed(name)


def cut_condition(m: HvModule, a: IVIFS) -> tuple[bool, dict | None]:
    """True iff every nonempty upper cut of M and lower cut of N is an H_v-submodule.

    On failure also returns a witness naming the cut, its threshold and why
    it is not a submodule.
    """
    uppers, lowers = cut_families(a)
    for kind, fam in (("upper", uppers), ("lower", lowers)):
        for mask, th in fam.items():
            if not mask:
                continue
            sub = check_hv_submodule(m, mask)
            if not sub.ok:
                return False, {
                    "cut": kind,
                    "threshold": th.to_json(),
                    "set": m.carrier.labels_of(mask),
                    "condition": sub.condition,
                    "detail": sub.witness,
                }
    return True, None


def verify_cut_equivalence(
    m: HvModule,
    a: IVIFS,
    norms: IntervalNormPair = MIN_MAX,
    strict: bool = True,
    validate_norms: bool = True,
) -> CheckReport:
    """Check that the (S,T) predicate holds exactly when every nonempty level cut is a submodule.

    Passes when both sides agree, whatever their common value. SKIP when the
    module, the fuzzy set or (unless ``validate_norms`` is off) the norms
    are invalid.
    """
    name = "cut-equivalence"
    if not check_hv_module(m).ok:
        return skipped(name, "not an H_v-module")
    if not validate_ivifs(a).ok:
        return skipped(name, "not a valid interval-valued intuitionistic fuzzy set")
    if validate_norms:
        report = norms.validate(endpoint_grid(a))
        if not report.ok:
            return skipped(name, f"norm fails validation: {report.condition}", norm_witness=report.witness)
    pred = check_st_hv_submodule(m, a, norms, strict)
    cuts_ok, cut_witness = cut_condition(m, a)
    equivalent = pred.ok == cuts_ok
    info = {"predicate": pred.ok, "cuts": cuts_ok, "equivalent": equivalent, "strict": strict}
    witness = {}
    if not pred.ok:
        witness["predicate"] = {"condition": pred.condition, **pred.witness}
    if cut_witness is not None:
        witness["cut"] = cut_witness
    if equivalent:
        return CheckReport(name, Status.PASS, None, witness or None, info)
    return failed(name, "equivalence", witness, **info)
