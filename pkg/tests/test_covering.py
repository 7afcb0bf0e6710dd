import pytest

from arknit.covering import (
    BoundaryEffect,
    IntervalTooLong,
    LineCover,
    OutOfWindow,
    SupportTouchesEdge,
    WindowTooSmall,
    interval_module,
    orbit_algebra,
    push_down,
    push_down_morph,
    shift,
    verify_ar_preservation,
    verify_precovering,
    verify_stabilizer,
    verify_translation_cover,
)
from arknit.fdalg import find_algebra_isomorphism, nakayama
from arknit.fdmod import (
    almost_split_ending_at,
    hom_space,
    identity_map,
    is_indecomposable,
    is_isomorphic,
    is_projective,
    regular_module,
    simple_module,
    zero_map,
    zero_module,
)
from arknit.morphcat import MorphObject, ar_seq_trivial_H

from test_fdmod import hom_dim_oracle


def interval_hom(a, b, c, d):
    """dim Hom([a,b], [c,d]) on the line with arrows i -> i+1."""
    return 1 if c <= a <= d <= b else 0


def zero_to(m):
    z = zero_module(m.algebra)
    return MorphObject(z, m, zero_map(z, m))


def test_orbit_algebra_examples():
    a = orbit_algebra(LineCover(1, 2))
    assert a.dim == 2 and find_algebra_isomorphism(a, nakayama(1, 2)) is not None
    assert orbit_algebra(LineCover(2, 2)).dim == 4
    for n in (1, 2, 3):
        for t in (2, 3, 4):
            assert orbit_algebra(LineCover(n, t)).dim == n * t


def test_interval_module_examples():
    c = LineCover(1, 3)
    s = interval_module(c, 0, 0)
    assert s.dim == 1 and is_indecomposable(s).status == "yes"
    p = interval_module(c, 0, 2)
    assert is_projective(p)
    with pytest.raises(IntervalTooLong):
        interval_module(c, 0, 3)
    with pytest.raises(OutOfWindow):
        interval_module(c, c.hi, c.hi + 1)


def test_window_guard():
    with pytest.raises(WindowTooSmall):
        LineCover(1, 3, 0, 5)


def test_push_down_examples():
    c = LineCover(1, 2)
    lam = c.orbit
    m = push_down(c, interval_module(c, 0, 1))
    assert m.dim == 2 and is_isomorphic(m, regular_module(lam))
    assert is_isomorphic(push_down(c, interval_module(c, 0, 0)), simple_module(lam, 0))
    with pytest.raises(SupportTouchesEdge):
        push_down(c, interval_module(c, c.lo, c.lo))


def test_push_down_preserves_dimension_and_indecomposability():
    for n, t in ((1, 3), (2, 2), (2, 3), (3, 2)):
        c = LineCover(n, t)
        for i in range(-t, n + t):
            for j in range(i, i + t):
                m = interval_module(c, i, j)
                pm = push_down(c, m)
                assert pm.dim == m.dim
                assert is_indecomposable(pm).status == "yes"
                if 0 <= i < n:
                    assert is_isomorphic(pm, push_down(c, shift(c, m, 1)))
                    assert is_isomorphic(pm, push_down(c, shift(c, m, -1)))


def test_push_down_morph_examples():
    c = LineCover(1, 2)
    lam = c.orbit
    m = interval_module(c, 0, 1)
    x = push_down_morph(c, zero_to(m))
    assert x.A.dim == 0 and is_isomorphic(x.B, regular_module(lam))
    y = push_down_morph(c, MorphObject(m, m, identity_map(m)))
    assert y.f.is_iso()
    s = interval_module(c, 1, 1)
    (inc,) = hom_space(s, m)
    z = push_down_morph(c, MorphObject(s, m, inc))
    assert z.is_mono


def test_precovering_examples():
    c = LineCover(1, 2)
    r = verify_precovering(c, interval_module(c, 0, 0), interval_module(c, 0, 0))
    assert r.left == 1 and r.right == 1 and r.terms[0] == 1 and r.passed
    c = LineCover(1, 3)
    r = verify_precovering(c, interval_module(c, 0, 1), interval_module(c, 1, 2))
    assert r.left == r.right == 2 and r.passed
    c = LineCover(2, 2)
    r = verify_precovering(c, interval_module(c, 0, 0), interval_module(c, 1, 1))
    assert r.left == r.right == 0


def test_precovering_matches_interval_oracle():
    for n, t in ((1, 2), (1, 3), (2, 2), (2, 3)):
        c = LineCover(n, t)
        ints = [(i, j) for i in range(0, n) for j in range(i, i + t)]
        targets = [(i, j) for i in range(-t, n + t) for j in range(i, i + t)]
        for a, b in ints:
            m = interval_module(c, a, b)
            for p, q in targets:
                nn = interval_module(c, p, q)
                r = verify_precovering(c, m, nn)
                expect = sum(interval_hom(a, b, p + g * n, q + g * n) for g in range(-4 * t, 4 * t))
                assert r.right == expect
                assert r.left == hom_dim_oracle(push_down(c, m), push_down(c, nn))
                assert r.passed


def test_precovering_for_morphism_objects():
    c = LineCover(1, 2)
    m = interval_module(c, 0, 1)
    s = interval_module(c, 1, 1)
    x = zero_to(m)
    y = MorphObject(s, s, identity_map(s))
    r = verify_precovering(c, x, y)
    assert r.passed


def test_precovering_needs_enough_shifts():
    c = LineCover(1, 2)
    with pytest.raises(WindowTooSmall):
        verify_precovering(c, interval_module(c, 0, 0), interval_module(c, 0, 0), shift_range=[1])


def test_stabilizer_examples():
    for n, t in ((1, 2), (1, 3), (2, 3)):
        c = LineCover(n, t)
        m = interval_module(c, 0, t - 2)
        assert verify_stabilizer(c, 0, 0, m)
        assert verify_stabilizer(c, 1, -1, m)
        assert verify_stabilizer(c, 1, 1, m)
        for g in (-1, 0, 1):
            for h in (-1, 0, 1):
                assert verify_stabilizer(c, g, h, m)
    c = LineCover(1, 2)
    with pytest.raises(WindowTooSmall):
        verify_stabilizer(c, 20, 0, interval_module(c, 0, 0))


def test_ar_preservation_examples():
    c = LineCover(1, 2, -3, 4)
    r = verify_ar_preservation(c, interval_module(c, 1, 1))
    assert r.passed
    ses = r.pushed_sequence
    assert (ses.A.dim, ses.B.dim, ses.C.dim) == (1, 2, 1)
    assert is_isomorphic(ses.B, regular_module(c.orbit))
    c = LineCover(2, 2)
    assert verify_ar_preservation(c, interval_module(c, 1, 1)).passed
    with pytest.raises(BoundaryEffect):
        verify_ar_preservation(c, interval_module(c, c.lo + 1, c.lo + 1))


def test_ar_preservation_all_interior_intervals():
    for n, t in ((1, 3), (2, 3)):
        c = LineCover(n, t)
        for i in range(n):
            for j in range(i, i + t):
                m = interval_module(c, i, j)
                if is_projective(m):
                    continue
                assert verify_ar_preservation(c, m).passed


def test_ar_preservation_for_zero_to_c():
    c = LineCover(1, 2)
    x = zero_to(interval_module(c, 1, 1))
    r = verify_ar_preservation(c, x)
    assert r.passed
    lam = c.orbit
    expected = ar_seq_trivial_H(1, almost_split_ending_at(simple_module(lam, 0))).to_t2()
    got = r.pushed_sequence
    assert is_isomorphic(got.A, expected.A)
    assert is_isomorphic(got.B, expected.B)
    assert is_isomorphic(got.C, expected.C)


def test_translation_cover_examples():
    r = verify_translation_cover(LineCover(1, 2))
    assert r.passed and set(r.axioms) == {"1", "2", "3", "4", "5", "6"}
    assert r.label == "fragment-verified"
    r = verify_translation_cover(LineCover(2, 2), level="morph")
    assert r.passed
    with pytest.raises(BoundaryEffect):
        verify_translation_cover(LineCover(1, 3, 0, 8))
