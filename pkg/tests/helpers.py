"""Shared sampling and comparison helpers for the test suite."""

import numpy as np

from graceful import RootSet


def draw_rootset(rng, m, min_sep=0.05, max_abs=3.0):
    """Rejection-sample m roots in the disc with at least the given separation."""
    while True:
        pts = rng.uniform(-1.0, 1.0, (m, 2)) * (max_abs / np.sqrt(2.0))
        rs = RootSet(tuple(complex(a, b) for a, b in pts))
        if rs.max_abs() <= max_abs and rs.min_separation() >= min_sep:
            return rs


def pairwise_err(a, b):
    """Componentwise gap normalised so abs and rel agreement both count."""
    return max(abs(x - y) / max(1.0, abs(x), abs(y)) for x, y in zip(a, b))


def rel_err(got, expected, floor=1.0):
    """|got - expected| relative to max(floor, |expected|)."""
    return abs(got - expected) / max(floor, abs(expected))
