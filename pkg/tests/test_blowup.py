"""Blow-up operator laws, component extraction, and the inclusion lemma."""

import random
from fractions import Fraction as F

import pytest

from porosity_lab.blowup import (
    blocks_subset,
    blocks_within,
    blow_up_block,
    blow_up_chain,
    cc1_components,
    check_inclusion_lemma,
    find_covering_blowup,
)
from porosity_lab.tailset import (
    Chain,
    ExplicitChain,
    GeometricLadder,
    Interval,
    Point,
    SuperGeometricLadder,
    block_inf,
    block_sup,
    expand,
)


def random_point_chain(rng, max_len=12):
    """Strictly descending points with random rational step ratios."""
    pts = []
    x = F(rng.randint(1, 8), rng.randint(1, 4))
    for _ in range(rng.randint(2, max_len)):
        pts.append(Point(x))
        x *= F(rng.randint(1, 30), 31)
    return Chain(tuple(pts), upper=pts[0].x, horizon=pts[-1].x)


def random_mixed_chain(rng, max_len=10):
    """Descending mix of points and intervals."""
    blocks = []
    x = F(rng.randint(1, 8), rng.randint(1, 4))
    for _ in range(rng.randint(1, max_len)):
        if rng.random() < 0.4:
            blocks.append(Point(x))
        else:
            lo = x * F(rng.randint(1, 20), 21)
            blocks.append(Interval(lo, x))
            x = lo
        x *= F(rng.randint(1, 20), 21)
    horizon = x if rng.random() < 0.5 else F(0)
    return Chain(tuple(blocks), upper=blocks[0].x if isinstance(blocks[0], Point) else blocks[0].hi, horizon=horizon)


def random_q(rng):
    return F(rng.randint(5, 25), 4)


def test_blow_up_block_frozen():
    assert blow_up_block(Point(1), 2) == Interval(F(1, 2), 2)
    assert blow_up_block(Interval(F(1, 4), F(1, 3)), 2) == Interval(F(1, 8), F(2, 3))
    with pytest.raises(ValueError):
        blow_up_block(Point(1), 1)


def test_blow_up_block_covers_bounded_set():
    # anything inside (a, b) blown by q >= b/a lands in one interval
    # containing (a, b)
    a, b = F(1, 3), F(1, 2)
    q = b / a
    pts = Chain((Point(F(12, 25)), Point(F(2, 5)), Point(F(7, 20))), upper=1, horizon=F(7, 20))
    blown = blow_up_chain(pts, q)
    assert len(blown.blocks) == 1
    comp = blown.blocks[0]
    assert comp.lo <= a and b <= comp.hi


def test_blow_up_chain_merges_close_points():
    c = Chain((Point(1), Point(F(1, 2))), upper=1, horizon=F(1, 2))
    blown = blow_up_chain(c, 2)
    assert blown.blocks == (Interval(F(1, 4), 2),)
    assert blown.upper == 2
    assert blown.horizon == F(1, 4)


def test_blow_up_chain_keeps_far_points_apart():
    c = Chain((Point(1), Point(F(1, 100))), upper=1, horizon=F(1, 100))
    blown = blow_up_chain(c, 2)
    assert blown.blocks == (Interval(F(1, 2), 2), Interval(F(1, 200), F(1, 50)))


def test_blow_up_chain_touching_components_stay_separate():
    # q x2 == x1/q exactly: open intervals share an endpoint only
    c = Chain((Point(1), Point(F(1, 4))), upper=1, horizon=F(1, 4))
    blown = blow_up_chain(c, 2)
    assert blown.blocks == (Interval(F(1, 2), 2), Interval(F(1, 8), F(1, 2)))


def test_set_grows_under_blow_up():
    rng = random.Random(5)
    for _ in range(200):
        c = random_mixed_chain(rng)
        q = random_q(rng)
        blown = blow_up_chain(c, q)
        assert blocks_subset(c.blocks, blown.blocks)


def test_blow_up_monotone_in_set_and_in_q():
    rng = random.Random(6)
    for _ in range(200):
        c = random_mixed_chain(rng)
        keep = tuple(b for b in c.blocks if rng.random() < 0.7)
        sub = Chain(keep, upper=c.upper, horizon=c.horizon)
        q1 = random_q(rng)
        q2 = q1 + F(rng.randint(1, 8), 4)
        assert blocks_subset(blow_up_chain(sub, q1).blocks, blow_up_chain(c, q1).blocks)
        assert blocks_subset(blow_up_chain(c, q1).blocks, blow_up_chain(c, q2).blocks)


def test_double_blow_up_contains_product_blow_up():
    rng = random.Random(8)
    for _ in range(100):
        c = random_mixed_chain(rng)
        q1, q2 = random_q(rng), random_q(rng)
        twice = blow_up_chain(blow_up_chain(c, q1), q2)
        product = blow_up_chain(c, q1 * q2)
        assert blocks_subset(product.blocks, twice.blocks)


def test_blown_point_components_have_wide_ratio():
    rng = random.Random(9)
    for _ in range(200):
        c = random_point_chain(rng)
        q = random_q(rng)
        for comp in blow_up_chain(c, q).blocks:
            assert comp.hi / comp.lo >= q * q


def test_component_count_bound():
    # K components of Cc1 above a force a * q^(2K) <= 1: each has width
    # ratio >= q^2 and the gaps only stretch the product further
    rng = random.Random(10)
    for _ in range(100):
        c = random_point_chain(rng)
        q = random_q(rng)
        comps = cc1_components(blow_up_chain(c, q))
        for a in (F(1, 10), F(1, 100), F(1, 10000)):
            k = sum(1 for comp in comps if comp.lo >= a)
            assert a * q ** (2 * k) <= 1


def test_cc1_components_filter_and_order():
    c = Chain(
        (Interval(F(1, 2), 2), Interval(F(1, 8), F(1, 4))),
        upper=2,
        horizon=F(1, 8),
    )
    assert cc1_components(c) == (Interval(F(1, 8), F(1, 4)),)
    with pytest.raises(ValueError):
        cc1_components(Chain((Point(1),), upper=1, horizon=0))


def test_blocks_within_open_window():
    blocks = (Interval(F(1, 2), 1), Point(F(1, 4)), Interval(F(1, 16), F(1, 8)))
    assert blocks_within(blocks, F(1, 4), F(3, 4)) == (Interval(F(1, 2), F(3, 4)),)
    assert blocks_within(blocks, F(1, 8), 1) == (Interval(F(1, 2), 1), Point(F(1, 4)))
    assert blocks_within(blocks, 0, F(1, 8)) == (Interval(F(1, 16), F(1, 8)),)


def test_blocks_subset_edge_cases():
    outer = (Interval(F(1, 4), 1),)
    assert blocks_subset((Interval(F(1, 4), 1),), outer)
    assert blocks_subset((Point(F(1, 2)),), outer)
    assert not blocks_subset((Point(F(1, 4)),), outer)  # open endpoint
    assert not blocks_subset((Interval(F(1, 8), F(1, 2)),), outer)
    assert blocks_subset((), outer)


def test_inclusion_lemma_trivial_and_random():
    rng = random.Random(12)
    a = GeometricLadder(1, F(1, 2))
    report = check_inclusion_lemma(a, a, t=F(1, 2), q=2, depth=16)
    assert report.precondition_holds and report.conclusion_holds and report.passed
    for _ in range(300):
        base = random_mixed_chain(rng)
        keep = tuple(b for b in base.blocks if rng.random() < 0.6)
        sub = Chain(keep, upper=base.upper, horizon=base.horizon)
        q = F(rng.choice((3, 4, 10)), 2)
        t = base.upper * F(rng.randint(1, 4), 4)
        report = check_inclusion_lemma(
            ExplicitChain(base), ExplicitChain(sub), t=t, q=q, depth=4
        )
        assert report.precondition_holds
        assert report.passed


def test_inclusion_lemma_reports_failed_precondition():
    a = ExplicitChain(Chain((), upper=1, horizon=0))
    b = ExplicitChain(Chain((Point(F(1, 2)),), upper=1, horizon=0))
    report = check_inclusion_lemma(a, b, t=1, q=2, depth=4)
    assert not report.precondition_holds
    assert report.conclusion_holds is None
    assert not report.passed


def test_inclusion_lemma_scale_is_exact():
    # B occupies [t, upper], A is empty; below t they agree, but blown B
    # reaches down to t/q, so any window wider than (0, t/q) catches it
    t, h = F(1, 2), F(4)
    b = ExplicitChain(Chain((Interval(t, h), Point(t)), upper=h, horizon=0))
    a = ExplicitChain(Chain((), upper=h, horizon=0))
    q = F(2)
    ok = check_inclusion_lemma(a, b, t=t, q=q, depth=4)
    assert ok.passed
    for scale in (1 / q + F(1, 1000), F(3, 4), F(1)):
        bad = check_inclusion_lemma(a, b, t=t, q=q, depth=4, scale=scale)
        assert bad.precondition_holds
        assert bad.conclusion_holds is False
        assert not bad.passed


def test_find_covering_blowup_geometric():
    q, t = find_covering_blowup(GeometricLadder(1, F(1, 2)), depth=20)
    assert (q, t) == (4, 1)
    # the blown chain really is gap-free from q*horizon up to t
    chain = expand(GeometricLadder(1, F(1, 2)), 20)
    blown = blow_up_chain(chain, q)
    assert any(
        block_inf(b) <= q * chain.horizon and t <= block_sup(b) for b in blown.blocks
    )


def test_find_covering_blowup_refuses_porous_families():
    assert find_covering_blowup(SuperGeometricLadder(1, F(1, 2)), depth=20) is None


def test_find_covering_blowup_full_interval():
    eps = F(1, 1000)
    f = ExplicitChain(Chain((Interval(eps, 1),), upper=1, horizon=eps))
    q, t = find_covering_blowup(f, depth=4)
    assert q == 2
    assert t == 1
