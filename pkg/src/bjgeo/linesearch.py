"""Bracketed golden-section search for convex / unimodal maps of one variable."""

import math

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f, lo, hi, iterations=200):
    """Minimize a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(argmin, min_value)``. The endpoints are compared against the
    interior estimate so a minimizer sitting on the bracket edge is returned
    exactly.
    """
    a, b = float(lo), float(hi)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if b - a <= 4 * math.ulp(max(abs(a), abs(b), 1e-300)):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x, fx = (c, fc) if fc <= fd else (d, fd)
    flo, fhi = f(lo), f(hi)
    if flo < fx:
        x, fx = float(lo), flo
    if fhi < fx:
        x, fx = float(hi), fhi
    return x, fx
