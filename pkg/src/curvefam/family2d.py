"""Two-parameter engine: discriminants and the parameter-plane decomposition.

From F(x, y, t, s) the pipeline computes M = sqrt(D_y F), the double
discriminant R = sqrt(D_x M), the eliminant G (univariate-in-t factors
removed from sqrt(Res_s(F, R))), the special value set on the t-axis, and
the full cell decomposition of the (t, s) plane: 0-cells on degenerate
fibers of the parameter curve, 1-cells (vertical segments and analytic
branch arcs), and 2-cells (bands between consecutive branches, merged into
plane regions when no 1-cell separates them). The degenerate dispatch
(R identically zero) runs the same region builder on P = sqrt(D_x F) or on
M(t, s) with the auxiliary one-parameter families J and K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .polycore import MPoly, derivative, normalize, specialize
from .elim import (
    content,
    exact_div,
    is_squarefree,
    remove_univariate_factors,
    resultant,
    squarefree_part,
)
from .family1d import CriticalSet1D, HypothesisError, critical_set
from .curvetopo import ShearRecord, apply_shear, curve_topology
from .realalg import (
    AlgebraicNumber,
    SortedRootList,
    cmp_to_rational,
    compare_algebraic,
    isolate_real_roots,
    merge_root_sets,
    roots_at_algebraic_fiber,
    sign_at,
    simplest_between_algebraic,
    sturm_chain,
    sturm_count,
)

BRANCH_GENERIC = "generic_R"
BRANCH_UNIVARIATE_T = "R_univariate_t"
BRANCH_UNIVARIATE_S = "R_univariate_s"
BRANCH_ZERO_M_ZERO = "R_zero_M_zero"
BRANCH_ZERO_M_TS = "R_zero_M_ts"

STATUS_LABELED = "labeled"
STATUS_SKIPPED = "skipped_algebraic_sample"
STATUS_DEGENERATE = "skipped_degenerate_member"


class RenormalizationNeeded(RuntimeError):
    """The eliminant's leading y-coefficient still depends on x; re-shear."""


@dataclass
class FamilyInput:
    F: MPoly
    curve_vars: tuple
    param_vars: tuple
    transform: ShearRecord
    removed_param_factor: MPoly


@dataclass
class DiscriminantData:
    M: MPoly
    R: MPoly
    Gtilde: MPoly | None = None
    G: MPoly | None = None
    t_line_factors: MPoly | None = None
    Rs_content: MPoly | None = None
    P: MPoly | None = None
    J: MPoly | None = None
    K: MPoly | None = None


@dataclass
class Cell:
    dim: int
    kind: str  # point | vertical_segment | branch_arc | branch_band | full_plane_region
    description: dict
    sample: tuple
    topology: object = None
    topology_status: str | None = None


@dataclass
class Decomposition:
    cells: list
    A_set: SortedRootList
    data: DiscriminantData
    branch: str
    diagnostics: list = field(default_factory=list)
    curve_vars: tuple = ("x", "y")
    param_vars: tuple = ("t", "s")


# -- normalization -----------------------------------------------------------


def _param_only_content(F, curve_vars):
    c = F
    for v in curve_vars:
        if c.depends_on(v):
            c = content(c, v)
    return c


def normalize_family(F_raw, curve_vars=("x", "y"), param_vars=("t", "s"), shear_index=0):
    """Square-free part, hypothesis checks, and the shear making lc_y x-free.

    `shear_index` skips that many acceptable shears (used when the second
    leading-coefficient condition, checked once R is known, forces a
    restart). A parameter-only factor is a hypothesis violation and raises.
    """
    x, y = curve_vars
    if F_raw.is_zero:
        raise HypothesisError("the zero polynomial defines no family")
    if not (F_raw.depends_on(x) or F_raw.depends_on(y)):
        raise HypothesisError("family polynomial must involve a curve variable")
    F = squarefree_part(F_raw, (x, y) + tuple(param_vars))
    pc = _param_only_content(F, curve_vars)
    if any(pc.depends_on(v) for v in param_vars):
        raise HypothesisError(f"family has a parameter-only factor: {pc}")
    skipped = 0
    for k in _shear_sequence():
        G = apply_shear(F, k, x, y)
        if G.degree(y) >= 1:
            lc = G.coeffs_in(y)[-1]
            if lc.depends_on(x):
                continue
        else:
            if k != 0:
                continue  # families without y are used unsheared
        if skipped < shear_index:
            skipped += 1
            continue
        return FamilyInput(G, tuple(curve_vars), tuple(param_vars), ShearRecord(k), MPoly.const(1, G.vars))
    raise HypothesisError("no admissible shear found")


def _shear_sequence(limit=64):
    yield 0
    for level in range(1, limit):
        yield level
        yield -level


# -- discriminants -----------------------------------------------------------


def compute_discriminants(fi):
    """M, R, and the eliminant data, with the degree-collapse conventions.

    Raises RenormalizationNeeded when the leading y-coefficient of the
    computed eliminant still depends on x (the caller re-shears and
    restarts, bounded by `decompose`).
    """
    x, y = fi.curve_vars
    t, s = fi.param_vars
    F = fi.F
    zero = MPoly.zero(F.vars)
    if F.degree(y) >= 1:
        M = squarefree_part(resultant(F, derivative(F, y), y), (x, t, s))
    else:
        M = zero  # convention: M := 0 when deg_y(F) = 0
    if M.is_zero:
        P = squarefree_part(resultant(F, derivative(F, x), x), (t, s)) if F.degree(x) >= 1 else None
        dd = DiscriminantData(M=zero, R=zero, P=P)
        if P is not None and P.degree(s) >= 1 and P.depends_on(t):
            dd.J = resultant(P, F, s)
        return dd
    if M.degree(x) == 0:
        dd = DiscriminantData(M=M, R=zero)
        if M.degree(s) >= 1:
            dd.K = resultant(F, M, s)
        return dd
    R = resultant(M, derivative(M, x), x)
    assert not R.is_zero, "square-free M cannot have vanishing x-discriminant"
    if R.is_constant():
        return DiscriminantData(M=M, R=normalize(R))
    R = normalize(squarefree_part(R, (t, s)))
    dd = DiscriminantData(M=M, R=R)
    if R.degree(t) >= 1 and R.degree(s) >= 1:
        gt_raw = resultant(F, R, s)
        Gtilde = squarefree_part(gt_raw, (x, y, t))
        if Gtilde.degree(y) >= 1:
            lc = Gtilde.coeffs_in(y)[-1]
            if lc.depends_on(x):
                raise RenormalizationNeeded("leading y-coefficient of the eliminant depends on x")
        G, t_factors = remove_univariate_factors(Gtilde, t)
        dd.Gtilde = normalize(Gtilde)
        dd.G = normalize(G) if not G.is_constant() else G
        dd.t_line_factors = t_factors
        dd.Rs_content = remove_univariate_factors(R, t)[1]
    return dd


def compute_A(dd, fi):
    """The special t-values: roots of D_s(R) merged with a critical set of G."""
    t, s = fi.param_vars
    R = dd.R
    if R.is_zero or R.degree(t) < 1 or R.degree(s) < 1:
        raise ValueError("compute_A applies to genuinely bivariate R only")
    DsR = resultant(R, derivative(R, s), s)
    lists = []
    if DsR.depends_on(t):
        lists.append(isolate_real_roots(squarefree_part(DsR, (t,)), t))
    if dd.G is not None and not dd.G.is_constant():
        cs = critical_set(dd.G, fi.curve_vars, t)
        lists.append(cs.points)
    if not lists:
        return SortedRootList(())
    return merge_root_sets(lists)


# -- decomposition -----------------------------------------------------------


def decompose(fi, topology=True, max_restarts=16):
    """Full cell decomposition of the parameter plane for a family input."""
    diags = []
    attempt = 0
    while True:
        try:
            dd = compute_discriminants(fi)
            break
        except RenormalizationNeeded:
            attempt += 1
            if attempt > max_restarts:
                raise HypothesisError("re-shear bound exhausted while normalizing the eliminant")
            x, y = fi.curve_vars
            original = apply_shear(fi.F, -fi.transform.k, x, y)
            fi = normalize_family(original, fi.curve_vars, fi.param_vars, shear_index=attempt)
            diags.append(f"re-sheared family (attempt {attempt}, k={fi.transform.k})")
    t, s = fi.param_vars
    if dd.R.is_zero:
        return _decompose_degenerate(fi, dd, topology, diags)
    if dd.R.is_constant():
        cells = [_full_plane_cell(fi, topology, diags)]
        return Decomposition(cells, SortedRootList(()), dd, BRANCH_GENERIC, diags, fi.curve_vars, fi.param_vars)
    if dd.R.degree(s) < 1:
        dec = _decompose_lines(fi, dd, dd.R, axis=t, topology=topology, diags=diags)
        dec.branch = BRANCH_UNIVARIATE_T
        return dec
    if dd.R.degree(t) < 1:
        dec = _decompose_lines(fi, dd, dd.R, axis=s, topology=topology, diags=diags)
        dec.branch = BRANCH_UNIVARIATE_S
        return dec
    A = compute_A(dd, fi)
    cells = _cells_over_curve(fi, dd.R, A, diags, topology)
    dec = Decomposition(cells, A, dd, BRANCH_GENERIC, diags, fi.curve_vars, fi.param_vars)
    _sort_cells(dec)
    return dec


def _decompose_degenerate(fi, dd, topology, diags):
    """The R = 0 dispatch: P = sqrt(D_x F) when M = 0, else M = M(t, s)."""
    t, s = fi.param_vars
    x, y = fi.curve_vars
    if dd.M.is_zero:
        branch = BRANCH_ZERO_M_ZERO
        C = dd.P
        aux = dd.J
    else:
        branch = BRANCH_ZERO_M_TS
        C = normalize(dd.M) if not dd.M.is_constant() else dd.M
        aux = dd.K
    if C is None or C.is_constant():
        cells = [_full_plane_cell(fi, topology, diags)]
        return Decomposition(cells, SortedRootList(()), dd, branch, diags, fi.curve_vars, fi.param_vars)
    if C.degree(s) < 1:
        dec = _decompose_lines(fi, dd, C, axis=t, topology=topology, diags=diags)
        dec.branch = branch
        return dec
    if C.degree(t) < 1:
        dec = _decompose_lines(fi, dd, C, axis=s, topology=topology, diags=diags)
        dec.branch = branch
        return dec
    # special-value set: roots of D_s(C) plus a critical set of the auxiliary family
    DsC = resultant(C, derivative(C, s), s)
    lists = []
    if DsC.depends_on(t):
        lists.append(isolate_real_roots(squarefree_part(DsC, (t,)), t))
    if aux is not None and (aux.depends_on(x) or aux.depends_on(y)):
        pts = _aux_family_points(aux, fi.curve_vars, t, diags)
        if pts is not None:
            lists.append(pts)
    E = merge_root_sets(lists) if lists else SortedRootList(())
    cells = _cells_over_curve(fi, C, E, diags, topology)
    dec = Decomposition(cells, E, dd, branch, diags, fi.curve_vars, fi.param_vars)
    _sort_cells(dec)
    return dec


def _aux_family_points(aux, curve_vars, param, diags):
    """Critical points of an auxiliary one-parameter family, soundly enlarged.

    The auxiliary polynomial (J or K) may be non-square-free or carry
    parameter-only factors; both are normalized away with their root sets
    merged back in, keeping the result a critical-set superset.
    """
    x, y = curve_vars
    aux = squarefree_part(aux, (x, y, param))
    extra = []
    pc = _param_only_content(aux, curve_vars)
    if pc.depends_on(param):
        extra.append(isolate_real_roots(pc, param))
        aux = exact_div(aux, pc.with_vars(aux.vars))
        diags.append(f"auxiliary family had parameter-only factor {pc}; roots kept as special values")
    if not (aux.depends_on(x) or aux.depends_on(y)):
        return merge_root_sets(extra) if extra else None
    aux = _reshear_for_lc(aux, curve_vars, diags)
    cs = critical_set(aux, curve_vars, param)
    return merge_root_sets([cs.points, *extra])


def _reshear_for_lc(F, curve_vars, diags):
    x, y = curve_vars
    if F.degree(y) < 1:
        return F
    if not F.coeffs_in(y)[-1].depends_on(x):
        return F
    for k in _shear_sequence():
        if k == 0:
            continue
        G = apply_shear(F, k, x, y)
        if G.degree(y) >= 1 and not G.coeffs_in(y)[-1].depends_on(x):
            diags.append(f"auxiliary family sheared by k={k} for the leading-coefficient condition")
            return G
    raise HypothesisError("no admissible shear for auxiliary family")


# -- cell construction over a parameter-plane curve ---------------------------


def _member_polynomial(fi, t_val, s_val):
    t, s = fi.param_vars
    member, _ = specialize(fi.F, {t: t_val, s: s_val})
    return member


def _label(fi, cell, topology, diags):
    if not topology:
        return
    tv, sv = cell.sample
    tv_r = tv if isinstance(tv, Fraction) else tv.rational_value
    sv_r = sv if isinstance(sv, Fraction) else sv.rational_value
    if tv_r is None or sv_r is None:
        cell.topology_status = STATUS_SKIPPED
        return
    member = _member_polynomial(fi, tv_r, sv_r)
    if member.is_zero:
        cell.topology_status = STATUS_DEGENERATE
        diags.append(f"member at ({tv_r}, {sv_r}) vanishes identically; no topology label")
        return
    x, y = fi.curve_vars
    cell.topology = curve_topology(member, x, y)
    cell.topology_status = STATUS_LABELED


def _full_plane_cell(fi, topology, diags):
    cell = Cell(
        dim=2,
        kind="full_plane_region",
        description={"bands": [], "region": "whole plane"},
        sample=(Fraction(0), Fraction(0)),
    )
    _label(fi, cell, topology, diags)
    return cell


def _points_equal(p, q):
    return compare_algebraic(p[0], q[0]) == 0 and compare_algebraic(p[1], q[1]) == 0


def _as_algnum(v):
    return v if isinstance(v, AlgebraicNumber) else AlgebraicNumber.from_rational(v)


def _cells_over_curve(fi, C, A, diags, topology):
    """Cells induced by the (t, s)-curve C = 0 with special t-values A.

    Implements the 0-cell fibers, the vertical-line sub-partitions, the
    branch arcs over the t-intervals, the bands between consecutive
    branches, and the merge of bands not separated by a 1-cell.
    """
    t, s = fi.param_vars
    cells = []
    Cprim, t_content = remove_univariate_factors(C, t)
    vert = (
        isolate_real_roots(t_content, t)
        if t_content.depends_on(t)
        else SortedRootList(())
    )
    A_full = merge_root_sets([A, vert])
    if len(A_full) != len(A):
        diags.append("vertical-line values enlarged the special t-set (merged)")

    def is_vertical(a):
        return t_content.depends_on(t) and sign_at(t_content, a, t) == 0

    # 0-cells from fibers over non-vertical special values
    fibers = {}
    point_cells = []
    for i, a in enumerate(A_full.roots):
        if is_vertical(a):
            continue
        fl = roots_at_algebraic_fiber(C, a, t, s)
        fibers[i] = fl
        for b in fl.roots:
            point_cells.append(Cell(0, "point", {"t": a, "s": b}, (a, b)))

    # vertical lines (parameter values where the line t = a lies inside C)
    for a in vert.roots:
        if a.rational_value is None:
            diags.append(f"irrational vertical line at {a}; emitted unpartitioned")
            cells.append(
                Cell(
                    1,
                    "vertical_segment",
                    {"axis": t, "line": a, "interval": (None, None)},
                    (a, Fraction(0)),
                )
            )
            continue
        pts, segs = _vertical_line_partition(fi, a.rational_value, t, s, diags)
        for p in pts.roots:
            cand = (a, p)
            if not any(_points_equal(cand, (c.description["t"], c.description["s"])) for c in point_cells):
                point_cells.append(Cell(0, "point", {"t": a, "s": p}, cand))
            else:
                diags.append(f"duplicate special point on the line {t}={a.rational_value} dropped")
        for lo, hi, sample in segs:
            cells.append(
                Cell(
                    1,
                    "vertical_segment",
                    {"axis": t, "line": a, "interval": (lo, hi)},
                    (a, sample),
                )
            )
    cells.extend(point_cells)

    # branch arcs and bands over the intervals of A_full
    intervals = A_full.intervals()
    bands = {}
    band_order = []
    for j, (lo, hi, t0) in enumerate(intervals):
        fib, _ = specialize(C, {t: t0})
        froots = isolate_real_roots(fib, s) if fib.depends_on(s) else SortedRootList(())
        for rank, root in enumerate(froots.roots):
            cells.append(
                Cell(
                    1,
                    "branch_arc",
                    {
                        "interval_index": j,
                        "interval": (lo, hi),
                        "rank": rank + 1,
                        "curve": str(C),
                    },
                    (t0, root),
                )
            )
        for rank in range(len(froots.roots) + 1):
            key = (j, rank)
            bands[key] = {
                "interval": (lo, hi),
                "sample": (t0, froots.gaps[rank]),
                "count": len(froots.roots),
            }
            band_order.append(key)

    # merge bands across special values not covered by a vertical line
    parent = {k: k for k in band_order}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    def union(k1, k2):
        r1, r2 = find(k1), find(k2)
        if r1 != r2:
            parent[max(r1, r2)] = min(r1, r2)

    for i, a in enumerate(A_full.roots):
        if is_vertical(a):
            continue
        fl = fibers[i]
        for sigma in fl.gaps:
            left_rank = _band_rank_at(C, t, s, a, sigma, intervals[i], side=-1)
            right_rank = _band_rank_at(C, t, s, a, sigma, intervals[i + 1], side=+1)
            union((i, left_rank), (i + 1, right_rank))

    groups = {}
    for key in band_order:
        groups.setdefault(find(key), []).append(key)
    for root_key in sorted(groups):
        members = sorted(groups[root_key])
        first = bands[members[0]]
        if len(members) == 1:
            j, rank = members[0]
            cells.append(
                Cell(
                    2,
                    "branch_band",
                    {
                        "interval_index": j,
                        "interval": first["interval"],
                        "rank_below": rank,
                        "bands": [list(m) for m in members],
                    },
                    first["sample"],
                )
            )
        else:
            cells.append(
                Cell(
                    2,
                    "full_plane_region",
                    {"bands": [list(m) for m in members]},
                    first["sample"],
                )
            )

    for cell in cells:
        _label(fi, cell, topology, diags)
    return cells


def _band_rank_at(C, t, s, a, sigma, interval, side):
    """Rank (branch count below s = sigma) on one side of the value t = a.

    The probe abscissa is taken between a and the nearest root of
    C(., sigma) on that side, so the horizontal segment from the probe to
    the line t = a never crosses the curve: the rank at the probe is the
    rank of every point of that segment.
    """
    lo, hi, _t0 = interval
    bounds = []
    other = lo if side < 0 else hi
    if other is not None:
        bounds.append(other)
    line, _ = specialize(C, {s: sigma})
    if line.depends_on(t):
        for root in isolate_real_roots(line, t):
            c = compare_algebraic(root, a)
            if c == (-1 if side < 0 else 1):
                bounds.append(root)
    best = None
    for b in bounds:
        if best is None or compare_algebraic(b, best) == (1 if side < 0 else -1):
            best = b
    if side < 0:
        probe = simplest_between_algebraic(best, a)
    else:
        probe = simplest_between_algebraic(a, best)
    fib, _ = specialize(C, {t: probe})
    if not fib.depends_on(s):
        return 0
    chain = sturm_chain(fib.to_dense(s))
    return sturm_count(chain, None, sigma)


def _vertical_line_partition(fi, a, t, s, diags):
    """Critical points and segments of the one-parameter family on t = a."""
    x, y = fi.curve_vars
    sub, _ = specialize(fi.F, {t: a})
    assert not sub.is_zero, "no parameter-only factor, so members cannot vanish"
    sub = squarefree_part(sub, (x, y, s))
    extra = []
    pc = _param_only_content(sub, fi.curve_vars)
    if pc.depends_on(s):
        extra.append(isolate_real_roots(pc, s))
        sub = exact_div(sub, pc.with_vars(sub.vars))
        diags.append(
            f"members on {t}={a} share the factor {pc}; its roots are kept as special values"
        )
    sub = _reshear_for_lc(sub, fi.curve_vars, diags)
    cs = critical_set(sub, fi.curve_vars, s)
    pts = merge_root_sets([cs.points, *extra])
    segs = []
    bounds = [None, *pts.roots, None]
    for i, (lo, hi) in enumerate(zip(bounds, bounds[1:])):
        segs.append((lo, hi, pts.gaps[i]))
    return pts, segs


# -- line decompositions (univariate parameter curve) -------------------------


def _decompose_lines(fi, dd, C_line, axis, topology, diags):
    """Decomposition when the parameter curve is a union of axis lines."""
    t, s = fi.param_vars
    other = s if axis == t else t
    roots = isolate_real_roots(C_line, axis)
    cells = []
    point_cells = []
    for a in roots.roots:
        if a.rational_value is None:
            diags.append(f"irrational line at {axis}={a}; emitted unpartitioned")
            sample = (a, Fraction(0)) if axis == t else (Fraction(0), a)
            cells.append(
                Cell(
                    1,
                    "vertical_segment",
                    {"axis": axis, "line": a, "interval": (None, None)},
                    sample,
                )
            )
            continue
        pts, segs = _line_partition(fi, a.rational_value, axis, other, diags)
        for p in pts.roots:
            pt = (a, p) if axis == t else (p, a)
            desc = {"t": pt[0], "s": pt[1]}
            if not any(
                _points_equal((desc["t"], desc["s"]), (c.description["t"], c.description["s"]))
                for c in point_cells
            ):
                point_cells.append(Cell(0, "point", desc, pt))
        for lo, hi, sample in segs:
            pos = (a, sample) if axis == t else (sample, a)
            cells.append(
                Cell(
                    1,
                    "vertical_segment",
                    {"axis": axis, "line": a, "interval": (lo, hi)},
                    pos,
                )
            )
    cells.extend(point_cells)
    for lo, hi, g in roots.intervals():
        sample = (g, Fraction(0)) if axis == t else (Fraction(0), g)
        cells.append(
            Cell(
                2,
                "full_plane_region",
                {"strip_axis": axis, "interval": (lo, hi), "bands": []},
                sample,
            )
        )
    for cell in cells:
        _label(fi, cell, topology, diags)
    dec = Decomposition(cells, roots, dd, BRANCH_GENERIC, diags, fi.curve_vars, fi.param_vars)
    _sort_cells(dec)
    return dec


def _line_partition(fi, a, axis, other, diags):
    sub, _ = specialize(fi.F, {axis: a})
    sub = squarefree_part(sub, fi.curve_vars + (other,))
    extra = []
    pc = _param_only_content(sub, fi.curve_vars)
    if pc.depends_on(other):
        extra.append(isolate_real_roots(pc, other))
        sub = exact_div(sub, pc.with_vars(sub.vars))
        diags.append(f"members on {axis}={a} share the factor {pc}; roots kept as special values")
    sub = _reshear_for_lc(sub, fi.curve_vars, diags)
    cs = critical_set(sub, fi.curve_vars, other)
    pts = merge_root_sets([cs.points, *extra])
    segs = []
    bounds = [None, *pts.roots, None]
    for i, (lo, hi) in enumerate(zip(bounds, bounds[1:])):
        segs.append((lo, hi, pts.gaps[i]))
    return pts, segs


# -- ordering and classification ----------------------------------------------


def _sample_key(value):
    if isinstance(value, Fraction):
        return (str(value), "")
    lo, hi = value.interval
    return (str(lo), str(hi))


def _cell_sort_key(cell):
    return (
        cell.dim,
        cell.kind,
        repr(sorted((k, str(v)) for k, v in cell.description.items())),
        _sample_key(cell.sample[0]),
        _sample_key(cell.sample[1]),
    )


def _sort_cells(dec):
    dec.cells.sort(key=_cell_sort_key)


def _curve_of(dec):
    dd = dec.data
    if dec.branch == BRANCH_ZERO_M_ZERO:
        return dd.P
    if dec.branch == BRANCH_ZERO_M_TS:
        return dd.M
    return dd.R


def on_lower_dimensional_locus(dec, t0, s0):
    """Exact sign test: does (t0, s0) lie on the curve, a line of the
    decomposition, or a special t-value?"""
    from .polycore import evaluate

    t, s = dec.param_vars
    t0, s0 = Fraction(t0), Fraction(s0)
    C = _curve_of(dec)
    if C is not None and not C.is_constant() and evaluate(C, {t: t0, s: s0}) == 0:
        return True
    for a in dec.A_set.roots:
        axis_val = s0 if dec.branch == BRANCH_UNIVARIATE_S else t0
        if cmp_to_rational(a, axis_val) == 0:
            return True
    return False


def cell_contains_point(dec, cell, t0, s0):
    """Exact membership of a generic rational point in a 2-cell.

    The point must avoid the lower-dimensional loci (see
    `on_lower_dimensional_locus`); membership is decided by interval
    location plus the branch rank of s0 in the fiber over t0.
    """
    if cell.dim != 2:
        return False
    t, s = dec.param_vars
    t0, s0 = Fraction(t0), Fraction(s0)
    desc = cell.description
    if desc.get("region") == "whole plane":
        return True
    if "strip_axis" in desc:
        axis = desc["strip_axis"]
        val = t0 if axis == t else s0
        lo, hi = desc["interval"]
        if lo is not None and cmp_to_rational(lo, val) >= 0:
            return False
        if hi is not None and cmp_to_rational(hi, val) <= 0:
            return False
        return True
    bands = desc.get("bands") or [[desc["interval_index"], desc["rank_below"]]]
    C = _curve_of(dec)
    intervals = dec.A_set.intervals()
    for j, rank in bands:
        lo, hi, _g = intervals[j]
        if lo is not None and cmp_to_rational(lo, t0) >= 0:
            continue
        if hi is not None and cmp_to_rational(hi, t0) <= 0:
            continue
        fib, _ = specialize(C, {t: t0})
        if fib.depends_on(s):
            chain = sturm_chain(fib.to_dense(s))
            below = sturm_count(chain, None, s0)
        else:
            below = 0
        if below == rank:
            return True
    return False


def resample_band(dec, cell, t_new):
    """A second rational sample of a band cell at a different abscissa.

    `t_new` must lie strictly inside one of the cell's band intervals; the
    returned sample keeps the band's branch rank at the new abscissa.
    """
    t, s = dec.param_vars
    t_new = Fraction(t_new)
    desc = cell.description
    bands = desc.get("bands") or [[desc["interval_index"], desc["rank_below"]]]
    C = _curve_of(dec)
    intervals = dec.A_set.intervals()
    for j, rank in bands:
        lo, hi, _g = intervals[j]
        if lo is not None and cmp_to_rational(lo, t_new) >= 0:
            continue
        if hi is not None and cmp_to_rational(hi, t_new) <= 0:
            continue
        fib, _ = specialize(C, {t: t_new})
        froots = isolate_real_roots(fib, s) if fib.depends_on(s) else SortedRootList(())
        return (t_new, froots.gaps[rank])
    raise ValueError("abscissa not inside any band interval of this cell")
