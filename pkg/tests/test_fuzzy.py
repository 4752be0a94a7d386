from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import oracles
import pytest
from builders import iv
from hypothesis import given
from hypothesis import strategies as st

from hvlab.fuzzy import (
    IVIFS,
    IVFuzzySet,
    attained_thresholds,
    cut_families,
    endpoint_grid,
    image_ivifs,
    lower_cut,
    preimage_ivifs,
    upper_cut,
    validate_ivifs,
)
from hvlab.generators import random_ivifs
from hvlab.hyperstructures import Carrier, iter_subsets
from hvlab.intervals import BOTTOM, TOP, Interval, interval_leq
from hvlab.report import ConstructionError

C2 = Carrier.of_size(2)


def z2_A() -> IVIFS:
    return IVIFS.from_values(C2, [iv("0.8", "0.9"), iv("0.3", "0.4")], [iv("0.05", "0.1"), iv("0.4", "0.5")])


def test_validate_examples():
    assert validate_ivifs(IVIFS.constant(C2, iv("0.8", "0.9"), iv("0.05", "0.1"))).ok
    r = validate_ivifs(IVIFS.constant(C2, iv("0.5", "0.7"), iv("0.2", "0.4")))
    assert r.failed and r.witness["x"] == "0"
    assert validate_ivifs(IVIFS.constant(C2, TOP, BOTTOM)).ok


def test_ivfuzzyset_must_be_total():
    with pytest.raises(ConstructionError):
        IVFuzzySet(C2, (iv(0),))
    with pytest.raises(ConstructionError):
        IVFuzzySet.from_labels(C2, {"0": ["0", "1"]})


def test_upper_cut_examples():
    f = IVFuzzySet.constant(C2, iv("0.6", "0.8"))
    assert upper_cut(f, iv("0.5", "0.7")) == 0b11
    assert upper_cut(f, iv("0.7", "0.9")) == 0
    assert upper_cut(z2_A().M, iv("0.5", "0.5")) == 0b01


def test_lower_cut_examples():
    assert lower_cut(IVFuzzySet.constant(C2, iv("0.1", "0.2")), iv("0.2", "0.3")) == 0b11
    assert lower_cut(z2_A().N, iv("0.1", "0.2")) == 0b01
    assert lower_cut(z2_A().M, TOP) == 0b11


def test_attained_thresholds_examples():
    a = IVIFS.constant(C2, iv("0.6", "0.8"), iv("0.1", "0.2"))
    assert endpoint_grid(a) == [F(0), F(1, 10), F(1, 5), F(3, 5), F(4, 5), F(1)]
    assert len(attained_thresholds(a)) == 6 * 7 // 2
    zero = IVIFS.constant(C2, BOTTOM, BOTTOM)
    assert endpoint_grid(zero) == [F(0), F(1)]


def test_z2_grid_has_45_ordered_pairs():
    # nine endpoints give 45 pairs with t <= s, degenerate thresholds included
    a = z2_A()
    assert [str(p) for p in endpoint_grid(a)] == ["0", "1/20", "1/10", "3/10", "2/5", "1/2", "4/5", "9/10", "1"]
    ths = attained_thresholds(a)
    assert len(ths) == 45 and all(t.lo <= t.hi for t in ths)
    assert sum(t.lo < t.hi for t in ths) == 36
    ups, downs = cut_families(a)
    assert set(ups) == {0b11, 0b01, 0}
    assert set(downs) == {0b11, 0b01, 0}


def test_cut_families_thresholds_realize_their_cuts():
    a = z2_A()
    ups, downs = cut_families(a)
    for mask, th in ups.items():
        assert upper_cut(a.M, th) == mask
    for mask, th in downs.items():
        assert lower_cut(a.N, th) == mask


def test_cut_families_match_dense_sweep():
    """Attained-grid cuts equal the cuts over a grid fine enough to hit every endpoint."""
    rng = random.Random(7)
    for _ in range(200):
        c = Carrier.of_size(rng.randint(1, 4))
        a = random_ivifs(rng, c, grid=6)
        ups, downs = cut_families(a)
        M = [(v.lo, v.hi) for v in a.M.values]
        N = [(v.lo, v.hi) for v in a.N.values]
        # 6 divides 12 and 12 adds intermediate points between every pair of endpoints
        sweep_up, sweep_down = oracles.cuts_by_sweep(M, N, 12)
        assert {frozenset(i for i in range(c.size) if u >> i & 1) for u in ups} == sweep_up
        assert {frozenset(i for i in range(c.size) if d >> i & 1) for d in downs} == sweep_down


@st.composite
def ivifs_on(draw, n=3, denom=10):
    c = Carrier.of_size(n)
    Ms, Ns = [], []
    for _ in range(n):
        mhi = F(draw(st.integers(0, denom)), denom)
        mlo = F(draw(st.integers(0, int(mhi * denom))), denom)
        nhi = F(draw(st.integers(0, denom - int(mhi * denom))), denom)
        nlo = F(draw(st.integers(0, int(nhi * denom))), denom)
        Ms.append(Interval(mlo, mhi))
        Ns.append(Interval(nlo, nhi))
    return IVIFS.from_values(c, Ms, Ns)


thresholds = st.tuples(st.fractions(0, 1, max_denominator=10), st.fractions(0, 1, max_denominator=10)).map(
    lambda p: Interval(min(p), max(p))
)


@given(ivifs_on(), thresholds, thresholds)
def test_cuts_are_antitone_and_monotone(a, t1, t2):
    if not interval_leq(t1, t2):
        t1, t2 = Interval(min(t1.lo, t2.lo), min(t1.hi, t2.hi)), Interval(max(t1.lo, t2.lo), max(t1.hi, t2.hi))
    assert upper_cut(a.M, t2) & ~upper_cut(a.M, t1) == 0
    assert lower_cut(a.N, t1) & ~lower_cut(a.N, t2) == 0
    full = a.carrier.full
    assert upper_cut(a.M, BOTTOM) == full and lower_cut(a.N, TOP) == full


@given(ivifs_on(), st.integers(4, 30))
def test_finer_grids_add_no_cuts(a, grid):
    ups, downs = cut_families(a)
    M = [(v.lo, v.hi) for v in a.M.values]
    N = [(v.lo, v.hi) for v in a.N.values]
    sweep_up, sweep_down = oracles.cuts_by_sweep(M, N, grid)
    n = a.carrier.size
    assert sweep_up <= {frozenset(i for i in range(n) if u >> i & 1) for u in ups}
    assert sweep_down <= {frozenset(i for i in range(n) if d >> i & 1) for d in downs}


def test_image_examples():
    a = z2_A()
    assert image_ivifs((0, 1), a, C2) == a
    b = IVIFS.from_values(C2, [iv("0.2", "0.3"), iv("0.4", "0.5")], [iv("0.1", "0.2"), iv("0.3", "0.5")])
    img = image_ivifs((0, 0), b, C2)
    assert img.M.values == (iv("0.4", "0.5"), BOTTOM)
    assert img.N.values == (iv("0.1", "0.2"), TOP)


def test_image_takes_componentwise_sup():
    b = IVIFS.from_values(C2, [iv("0.2", "0.6"), iv("0.3", "0.4")], [iv("0.1", "0.2"), iv("0", "0.3")])
    img = image_ivifs((0, 0), b, Carrier(("y",)))
    assert img.M.values == (iv("0.3", "0.6"),)
    assert img.N.values == (iv("0", "0.2"),)


def test_preimage_examples():
    a = z2_A()
    assert preimage_ivifs((0, 1), a, C2) == a
    pre = preimage_ivifs((0, 0, 0), a, Carrier.of_size(3))
    assert set(pre.M.values) == {a.M[0]} and set(pre.N.values) == {a.N[0]}
    with pytest.raises(ConstructionError):
        preimage_ivifs((0,), a, Carrier.of_size(3))


def test_bijection_round_trip_is_exhaustive_on_small_carriers():
    rng = random.Random(3)
    for n in range(1, 5):
        c = Carrier.of_size(n)
        for perm in itertools.permutations(range(n)):
            a = random_ivifs(rng, c)
            assert preimage_ivifs(perm, image_ivifs(perm, a, c), c) == a


@given(ivifs_on(n=3), st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_image_and_preimage_stay_valid(a, f):
    y = Carrier.of_size(4)
    img = image_ivifs(f, a, y)
    assert validate_ivifs(img).ok
    assert validate_ivifs(preimage_ivifs(f, img, a.carrier)).ok


def test_iter_subsets_covers_all_nonempty():
    assert sorted(iter_subsets(3)) == list(range(1, 8))
