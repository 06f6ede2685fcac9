"""One-parameter engine: critical sets and the induced partition of a line.

For a family F(x, y, t) the double discriminant R(t) = D_x(sqrt(D_y F))
bounds the parameter values where the topology type can change; the
degenerate dispatch (R identically zero by degree collapse) falls back to
D_x(F) or to M itself. Used directly for one-parameter requests and by the
two-parameter engine for vertical lines, the G-family, and the R = 0 cases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .polycore import MPoly, derivative, normalize
from .elim import content, exact_div, is_squarefree, resultant, squarefree_part
from .realalg import SortedRootList, isolate_real_roots


class HypothesisError(ValueError):
    """The input family violates a hypothesis the theory requires."""


SOURCE_R = "roots_of_R"
SOURCE_DX_F = "roots_of_Dx_F"
SOURCE_M = "roots_of_M"


@dataclass
class CriticalSet1D:
    points: SortedRootList
    source: str
    M: MPoly
    R: MPoly


@dataclass
class Cell1D:
    kind: str  # "point" | "interval"
    sample: object  # AlgebraicNumber for points, Fraction for intervals
    lower: object = None  # bounding roots (AlgebraicNumber or None)
    upper: object = None


def _check_hypotheses(F, x, y, t):
    if F.is_zero:
        raise HypothesisError("the zero polynomial defines no family")
    if not (F.depends_on(x) or F.depends_on(y)):
        raise HypothesisError("family polynomial must involve a curve variable")
    if not is_squarefree(F):
        raise HypothesisError("family polynomial must be square-free")
    param_only = F
    for v in (x, y):
        if param_only.depends_on(v):
            param_only = content(param_only, v)
    if param_only.depends_on(t):
        raise HypothesisError(f"family has a parameter-only factor: {param_only}")
    if F.degree(y) >= 1:
        lc = F.coeffs_in(y)[-1]
        if lc.depends_on(x):
            raise HypothesisError("leading y-coefficient must not depend on x")


def critical_set(F, curve_vars=("x", "y"), param="t"):
    """A critical set of the one-parameter family F = 0.

    Dispatch: R != 0 gives the real roots of R; with R forced to zero by
    degree collapse, families without y use D_x(F) and families whose M is
    parameter-only use M itself. Hypothesis violations raise, they are not
    repaired here.
    """
    x, y = curve_vars
    _check_hypotheses(F, x, y, param)
    zero = MPoly.zero(F.vars)
    if F.degree(y) >= 1:
        M = squarefree_part(resultant(F, derivative(F, y), y), (x, param))
    else:
        M = zero  # convention: M := 0 when deg_y(F) = 0
    if M.is_zero:
        DxF = resultant(F, derivative(F, x), x) if F.degree(x) >= 1 else MPoly.const(1, F.vars)
        if DxF.depends_on(param):
            points = isolate_real_roots(squarefree_part(DxF, (param,)), param)
        else:
            points = SortedRootList(())
        return CriticalSet1D(points, SOURCE_DX_F, zero, zero)
    if M.degree(x) == 0:
        # convention: R := 0 when deg_x(M) = 0; M = M(param) is the critical polynomial
        if M.depends_on(param):
            points = isolate_real_roots(M, param)
        else:
            points = SortedRootList(())
        return CriticalSet1D(points, SOURCE_M, M, zero)
    R = resultant(M, derivative(M, x), x)
    assert not R.is_zero, "square-free M cannot have a vanishing x-discriminant"
    if R.depends_on(param):
        points = isolate_real_roots(squarefree_part(R, (param,)), param)
    else:
        points = SortedRootList(())
    return CriticalSet1D(points, SOURCE_R, M, R)


def partition_line(cset):
    """Alternating interval/point cells covering the parameter line."""
    cells = []
    roots = cset.points.roots
    gaps = cset.points.gaps
    bounds = [None, *roots, None]
    for i in range(len(roots) + 1):
        cells.append(Cell1D("interval", gaps[i], bounds[i], bounds[i + 1]))
        if i < len(roots):
            cells.append(Cell1D("point", roots[i], roots[i], roots[i]))
    return cells
