"""Double-double arithmetic against exact rational arithmetic, and the
series reference against closed forms."""

from fractions import Fraction

import numpy as np
import pytest

from graceful import RootSet, eval_series, poly_from_roots
from graceful._extprec import (
    _two_prod,
    _two_sum,
    cdd,
    cdd_mul,
    cdd_to_complex,
    dd,
    dd_add,
    dd_div_scalar,
    dd_mul,
    poly_from_roots_dd,
    series_reference,
)

E = 2.7182818284590452354


def test_two_sum_is_exact():
    rng = np.random.default_rng(51)
    for _ in range(200):
        a, b = rng.uniform(-1e6, 1e6, 2)
        s, e = _two_sum(a, b)
        assert Fraction(s) + Fraction(e) == Fraction(a) + Fraction(b)


def test_two_prod_is_exact():
    rng = np.random.default_rng(52)
    for _ in range(200):
        a, b = rng.uniform(-1e3, 1e3, 2)
        p, e = _two_prod(a, b)
        assert Fraction(p) + Fraction(e) == Fraction(a) * Fraction(b)


def _dd_vs_fraction(x, want):
    got = Fraction(x[0]) + Fraction(x[1])
    if want == 0:
        return abs(got) < Fraction(1, 10 ** 30)
    return abs(got - want) / abs(want) < Fraction(1, 10 ** 29)


def test_dd_add_mul_accuracy():
    rng = np.random.default_rng(53)
    for _ in range(100):
        a, b, c = rng.uniform(-2, 2, 3)
        fa, fb, fc = Fraction(a), Fraction(b), Fraction(c)
        assert _dd_vs_fraction(dd_add(dd(a), dd(b)), fa + fb)
        assert _dd_vs_fraction(dd_mul(dd(a), dd(b)), fa * fb)
        # chain: (a*b + c) * a
        chained = dd_mul(dd_add(dd_mul(dd(a), dd(b)), dd(c)), dd(a))
        assert _dd_vs_fraction(chained, (fa * fb + fc) * fa)


def test_dd_div_scalar_accuracy():
    rng = np.random.default_rng(54)
    for _ in range(100):
        a = rng.uniform(-2, 2)
        b = float(rng.integers(1, 1000))
        assert _dd_vs_fraction(dd_div_scalar(dd(a), b), Fraction(a) / Fraction(b))


def test_cdd_mul_matches_complex():
    rng = np.random.default_rng(55)
    for _ in range(50):
        a = complex(*rng.uniform(-2, 2, 2))
        b = complex(*rng.uniform(-2, 2, 2))
        got = cdd_to_complex(cdd_mul(cdd(a), cdd(b)))
        assert abs(got - a * b) <= 1e-15 * max(1.0, abs(a * b))


def test_poly_from_roots_dd_matches_double_path():
    roots = (1.0, 1.0 + 1e-7, -0.5 + 0.25j)
    dd_coeffs = poly_from_roots_dd(roots)
    dbl = poly_from_roots(RootSet(roots)).coeffs
    for got_dd, want in zip(dd_coeffs, dbl):
        got = cdd_to_complex(got_dd)
        assert abs(got - want) <= 1e-15 * max(1.0, abs(want))


def test_reference_matches_confluent_closed_form():
    # double root at 1: ((1-x)e^x, x e^x)
    values = series_reference((1.0, 1.0), 1.0)
    assert abs(values[0]) < 1e-25
    assert abs(values[1] - E) < 1e-20


def test_reference_at_zero():
    assert series_reference((2.0, 3.0, 4.0), 0.0) == (1.0, 0.0, 0.0)


def test_reference_self_consistency_with_double_series():
    # at comfortable separations the double-precision series backend must
    # agree with the extended-precision reference to >= 10 digits
    for eps in (1e-2, 0.1, 0.5):
        roots = (1.0, 1.0 + eps)
        ref = series_reference(roots, 1.0)
        dbl = eval_series(poly_from_roots(RootSet(roots)), 1.0).values
        scale = max(1.0, max(abs(v) for v in ref))
        assert max(abs(a - b) for a, b in zip(dbl, ref)) < 1e-10 * scale


def test_reference_beats_double_precision_near_collision():
    roots = (1.0, 1.0 + 1e-13)
    ref = series_reference(roots, 1.0)
    confluent = series_reference((1.0, 1.0), 1.0)
    # the reference resolves the O(eps) drift from the confluent limit
    drift = max(abs(a - b) for a, b in zip(ref, confluent))
    assert 1e-15 < drift < 1e-11


def test_reference_rejects_empty():
    with pytest.raises(ValueError):
        series_reference((), 1.0)
