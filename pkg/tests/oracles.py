"""Independent numeric and combinatorial oracles used by the test suite.

These are deliberately implemented without the package's exact kernels:
the grid tracer works on floats, and the random generators only use the
public MPoly constructors. Nothing here is part of the shipped library.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
from scipy import ndimage

from curvefam.polycore import MPoly


def dense_xy_coeffs(f, x="x", y="y"):
    """Float coefficient matrix c[i][j] of x^i y^j."""
    dx = int(max(f.degree(x), 0))
    dy = int(max(f.degree(y), 0))
    c = np.zeros((dx + 1, dy + 1))
    ix = f.vars.index(x)
    iy = f.vars.index(y)
    for e, v in f.terms.items():
        c[e[ix], e[iy]] += float(v)
    return c


def grid_component_count(f, x="x", y="y", window=None, resolution=512):
    """Connected components of the zero set inside a window, numerically.

    Marks every grid cell whose corner values change sign (or hit zero)
    and counts 8-connected components of the marked mask. Returns
    (count, flagged): `flagged` is True when a recount at doubled
    resolution disagrees, signalling resolution instability.
    """
    if window is None:
        window = _auto_window(f, x, y)

    def count_at(res):
        xmin, xmax, ymin, ymax = window
        xs = np.linspace(xmin, xmax, res)
        ys = np.linspace(ymin, ymax, res)
        c = dense_xy_coeffs(f, x, y)
        vals = np.zeros((res, res))
        ypow = np.vander(ys, c.shape[1], increasing=True)  # res x (dy+1)
        for i in range(c.shape[0]):
            vals += np.outer(xs**i, ypow @ c[i])
        sign = np.sign(vals)
        a = sign[:-1, :-1]
        mask = (a * sign[1:, :-1] <= 0) | (a * sign[:-1, 1:] <= 0) | (a * sign[1:, 1:] <= 0)
        _labels, n = ndimage.label(mask, structure=np.ones((3, 3)))
        return n

    n1 = count_at(resolution)
    n2 = count_at(2 * resolution)
    return n2, (n1 != n2)


def _auto_window(f, x, y):
    """A float window expected to contain every feature of the curve."""
    c = dense_xy_coeffs(f, x, y)
    big = float(np.max(np.abs(c))) or 1.0
    # Cauchy-style bound in each direction from the leading rows/columns
    lead_x = np.max(np.abs(c[-1])) or 1.0
    lead_y = np.max(np.abs(c[:, -1])) or 1.0
    bx = 2.0 + big / lead_x
    by = 2.0 + big / lead_y
    b = float(min(64.0, max(4.0, bx, by)))
    return (-b, b, -b, b)


def random_mpoly(rng, variables, max_deg, n_terms, coeff=9):
    d = {}
    for _ in range(n_terms):
        e = tuple(rng.randint(0, max_deg) for _ in variables)
        d[e] = d.get(e, 0) + rng.randint(-coeff, coeff)
    return MPoly(tuple(variables), d)


def random_total_degree_curve(rng, max_total=4, coeff=5):
    """Random dense-ish bivariate curve of bounded total degree."""
    d = {}
    for i in range(max_total + 1):
        for j in range(max_total + 1 - i):
            if rng.random() < 0.7:
                v = rng.randint(-coeff, coeff)
                if v:
                    d[(i, j)] = v
    return MPoly(("x", "y"), d)
