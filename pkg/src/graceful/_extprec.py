"""Double-double complex arithmetic and the extended-precision series reference.

Error-free transformations (two_sum / two_prod with Dekker splitting) give a
fixed ~2x mantissa, which is all the stability sweep needs from its oracle;
this is deliberately not arbitrary precision.  A double-double value is a
``(hi, lo)`` float pair, a complex one a pair of those.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import SeriesNotConverged

_SPLITTER = 134217729.0  # 2**27 + 1

DD = tuple[float, float]
CDD = tuple[DD, DD]


def _two_sum(a: float, b: float) -> DD:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float) -> DD:
    s = a + b
    return s, b - (s - a)


def _two_prod(a: float, b: float) -> DD:
    p = a * b
    c = _SPLITTER * a
    ahi = c - (c - a)
    alo = a - ahi
    c = _SPLITTER * b
    bhi = c - (c - b)
    blo = b - bhi
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def dd(a: float) -> DD:
    return (float(a), 0.0)


def dd_add(x: DD, y: DD) -> DD:
    s, e = _two_sum(x[0], y[0])
    t, f = _two_sum(x[1], y[1])
    e += t
    s, e = _quick_two_sum(s, e)
    e += f
    return _quick_two_sum(s, e)


def dd_neg(x: DD) -> DD:
    return (-x[0], -x[1])


def dd_sub(x: DD, y: DD) -> DD:
    return dd_add(x, dd_neg(y))


def dd_mul(x: DD, y: DD) -> DD:
    p, e = _two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    return _quick_two_sum(p, e)


def dd_div_scalar(x: DD, b: float) -> DD:
    q1 = x[0] / b
    p1, p2 = _two_prod(q1, b)
    s, e = _two_sum(x[0], -p1)
    e += x[1] - p2
    q2 = (s + e) / b
    return _quick_two_sum(q1, q2)


def dd_to_float(x: DD) -> float:
    return x[0] + x[1]


def cdd(z: complex) -> CDD:
    return (dd(z.real), dd(z.imag))


def cdd_add(x: CDD, y: CDD) -> CDD:
    return (dd_add(x[0], y[0]), dd_add(x[1], y[1]))


def cdd_neg(x: CDD) -> CDD:
    return (dd_neg(x[0]), dd_neg(x[1]))


def cdd_mul(x: CDD, y: CDD) -> CDD:
    re = dd_sub(dd_mul(x[0], y[0]), dd_mul(x[1], y[1]))
    im = dd_add(dd_mul(x[0], y[1]), dd_mul(x[1], y[0]))
    return (re, im)


def cdd_div_scalar(x: CDD, b: float) -> CDD:
    return (dd_div_scalar(x[0], b), dd_div_scalar(x[1], b))


def cdd_to_complex(x: CDD) -> complex:
    return complex(dd_to_float(x[0]), dd_to_float(x[1]))


def cdd_abs(x: CDD) -> float:
    return abs(cdd_to_complex(x))


def poly_from_roots_dd(roots: Sequence[complex]) -> list[CDD]:
    """Monic coefficients of prod(t - a_j), ascending, in double-double."""
    coeffs = [cdd(1.0 + 0j)]
    for a in roots:
        a_dd = cdd(complex(a))
        nxt = [cdd(0j) for _ in range(len(coeffs) + 1)]
        for k, c in enumerate(coeffs):
            nxt[k + 1] = cdd_add(nxt[k + 1], c)
            nxt[k] = cdd_add(nxt[k], cdd_neg(cdd_mul(a_dd, c)))
        coeffs = nxt
    return coeffs


def series_reference(roots: Sequence[complex], x: complex,
                     max_terms: int = 4000, tail_tol: float = 1e-32) -> tuple[complex, ...]:
    """Basis values by the Taylor recurrence carried in double-double.

    Same term convention as the double-precision series backend (summands
    b_n = f^(n)(0) x^n / n!), but with the polynomial coefficients expanded
    from the roots in double-double as well, so collision templates like
    (a, a + eps) lose nothing to coefficient rounding.  Rising factorials are
    divided out one exact integer at a time.  This is the designated sweep
    oracle.
    """
    roots = [complex(r) for r in roots]
    m = len(roots)
    x = complex(x)
    if m < 1:
        raise ValueError("need at least one root")
    if x == 0:
        return tuple(1.0 + 0j if i == 0 else 0j for i in range(m))

    coeffs = poly_from_roots_dd(roots)[:m]
    x_dd = cdd(x)
    x_powers = []
    for k in range(m):
        pw = cdd(1.0 + 0j)
        for _ in range(m - k):
            pw = cdd_mul(pw, x_dd)
        x_powers.append(cdd_mul(coeffs[k], pw))  # premultiplied c_k * x^(m-k)

    root_bound = max(abs(r) for r in roots)
    min_index = m + int(math.ceil(root_bound * abs(x)))

    # window[k][i] = b_{n+k} for basis element i+1; initially diag(x^k / k!)
    window: list[list[CDD]] = [[cdd(0j) for _ in range(m)] for _ in range(m)]
    term = cdd(1.0 + 0j)
    for k in range(m):
        window[k][k] = term
        term = cdd_div_scalar(cdd_mul(term, x_dd), k + 1)
    totals = [cdd(0j) for _ in range(m)]
    for k in range(m):
        for i in range(m):
            totals[i] = cdd_add(totals[i], window[k][i])
    prev_window_max = max(cdd_abs(window[k][i]) for k in range(m) for i in range(m))

    for q in range(m, max_terms):
        n = q - m
        new_row = []
        for i in range(m):
            acc = cdd(0j)
            for k in range(m):
                term = cdd_mul(x_powers[k], window[k][i])
                for j in range(n + k + 1, n + m + 1):
                    term = cdd_div_scalar(term, float(j))
                acc = cdd_add(acc, term)
            acc = cdd_neg(acc)
            totals[i] = cdd_add(totals[i], acc)
            new_row.append(acc)
        window = window[1:] + [new_row]

        window_max = max(cdd_abs(window[k][i]) for k in range(m) for i in range(m))
        if window_max == 0.0:
            break
        if q >= min_index and window_max < prev_window_max:
            ratio = window_max / prev_window_max
            tail = window_max * ratio / (1.0 - ratio)
            scale = max(1.0, max(cdd_abs(t) for t in totals))
            if tail < tail_tol * scale:
                break
        prev_window_max = window_max
    else:
        raise SeriesNotConverged(
            f"extended-precision tail bound not reached within {max_terms} terms",
            terms=max_terms)
    return tuple(cdd_to_complex(t) for t in totals)
