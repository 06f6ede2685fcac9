"""Combinatorial topology descriptors of real plane algebraic curves.

The descriptor is a sweep in the x-direction: ordered events at the real
critical x-values, each recording the fiber vertices with their left and
right branch degrees, plus unbounded-branch counts. Curves that are unions
of vertical lines (no y term) are described directly by their line count.

`canonical_code` is the lexicographic minimum of the serialized descriptor
over the flip group {identity, x-flip, y-flip, both} and over the accepted
shears of one |k| level, so equal codes are invariant under x -> -x and
y -> -y of the input curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polycore import MPoly, derivative, normalize, specialize
from .elim import resultant, squarefree_part
from . import realalg
from .realalg import (
    AlgebraicContext,
    AlgebraicNumber,
    compare_algebraic,
    cmp_to_rational,
    isolate_real_roots,
    kp_count_roots,
    kp_gcd,
    kp_isolate,
    kp_sturm_chain,
    kp_count_distinct_real,
    simplest_between_algebraic,
    sturm_chain,
    sturm_count,
    _kp_derivative,
    _kp_eval,
    _kp_trim,
)


class GenericityError(RuntimeError):
    """A shear candidate failed the generic-position tests."""


@dataclass(frozen=True)
class SweepEvent:
    left_count: int
    vertices: tuple  # ((left_degree, right_degree), ...) bottom to top
    right_count: int

    def check(self):
        assert sum(v[0] for v in self.vertices) == self.left_count
        assert sum(v[1] for v in self.vertices) == self.right_count


@dataclass(frozen=True)
class ShearRecord:
    """The integer linear change (x, y) -> (x + k*y, y) that was applied."""

    k: int


@dataclass(frozen=True)
class TopologyGraph:
    events: tuple
    unbounded: tuple  # branches escaping (left, right, up, down)
    canonical_code: bytes
    components: int

    def __eq__(self, other):
        if not isinstance(other, TopologyGraph):
            return NotImplemented
        return self.canonical_code == other.canonical_code

    def __hash__(self):
        return hash(self.canonical_code)


def same_topology(g1, g2):
    """Descriptor-level topology equality (canonical code comparison)."""
    return g1.canonical_code == g2.canonical_code


def compare_topology(g1, g2):
    """'equal', 'different', or 'borderline' (same coarse invariants, different codes)."""
    if g1.canonical_code == g2.canonical_code:
        return "equal"
    inv1 = (g1.components, tuple(sorted(g1.unbounded)))
    inv2 = (g2.components, tuple(sorted(g2.unbounded)))
    if inv1 == inv2:
        return "borderline"
    return "different"


# -- shearing --------------------------------------------------------------


def apply_shear(f, k, x="x", y="y"):
    """Substitute x -> x + k*y exactly."""
    if k == 0:
        return f
    xs = f.coeffs_in(x)
    vars_ = f.vars
    xv = MPoly.var(x, vars_)
    yv = MPoly.var(y, vars_)
    base = xv + k * yv
    acc = MPoly.zero(vars_)
    power = MPoly.const(1, vars_)
    for i, c in enumerate(xs):
        acc = acc + c.with_vars(vars_) * power
        power = power * base
    return acc


def _lc_y_constant(f, x, y):
    lc = f.coeffs_in(y)[-1]
    return not lc.depends_on(x)


def _shear_candidates():
    yield 0, (0,)
    level = 1
    while True:
        yield level, (level, -level)
        level += 1


def shear_to_generic(f, x="x", y="y", max_level=40):
    """First shear (x -> x + k*y), k in 0, 1, -1, 2, -2, ..., in generic position.

    Generic position: the leading y-coefficient does not depend on x and
    every real critical x-fiber carries exactly one real critical point.
    Curves without y are returned unchanged (unions of vertical lines).
    """
    if f.is_zero:
        raise ValueError("cannot shear the zero polynomial")
    if f.degree(y) <= 0:
        return f, ShearRecord(0)
    for level, ks in _shear_candidates():
        if level > max_level:
            break
        for k in ks:
            g = apply_shear(f, k, x, y)
            if not _lc_y_constant(g, x, y):
                continue
            try:
                _build_sweep(g, x, y)
            except GenericityError:
                continue
            return g, ShearRecord(k)
    raise RuntimeError("no generic shear found within the search bound")


# -- sweep construction ------------------------------------------------------


def _fiber_elements(ctx, g, x, y):
    out = []
    for c in g.coeffs_in(y):
        if c.is_zero:
            out.append(())
        elif c.depends_on(x):
            out.append(ctx.from_int_poly(c.to_dense(x)))
        else:
            out.append(ctx.from_rational(c.constant_value()))
    return out


def _separated_items(ctx, chain, P, items):
    """Refine fiber-root descriptors until they admit strict rational gaps.

    Returns (values, separators): `values` are ('rational', q) or
    ('interval', (lo, hi)) strictly ordered with disjoint closures,
    `separators` has one rational strictly between consecutive roots plus
    one below and one above everything.
    """
    items = list(items)

    def lo_of(it):
        return it[1] if it[0] == "rational" else it[1][0]

    def hi_of(it):
        return it[1] if it[0] == "rational" else it[1][1]

    for _ in range(200):
        ok = True
        for a, b in zip(items, items[1:]):
            if not hi_of(a) < lo_of(b):
                ok = False
                break
        if ok:
            break
        refined = []
        for it in items:
            if it[0] == "rational":
                refined.append(it)
                continue
            lo, hi = it[1]
            for _ in range(4):
                mid = (lo + hi) / 2
                if ctx.is_zero(_kp_eval(ctx, P, mid)):
                    refined.append(("rational", mid))
                    break
                if kp_count_roots(ctx, chain, lo, mid) == 1:
                    hi = mid
                else:
                    lo = mid
            else:
                refined.append(("interval", (lo, hi)))
        items = refined
    else:
        raise realalg.CertificationError("fiber roots did not separate")
    seps = []
    if items:
        first = lo_of(items[0])
        seps.append(first - 1 if items[0][0] == "rational" else first)
        for a, b in zip(items, items[1:]):
            lo, hi = hi_of(a), lo_of(b)
            if items and a[0] == "rational" and b[0] == "rational":
                seps.append((lo + hi) / 2)
            else:
                mid = (lo + hi) / 2
                seps.append(mid if lo < hi else lo)
        last = hi_of(items[-1])
        seps.append(last + 1 if items[-1][0] == "rational" else last)
    # separators at interval endpoints are guaranteed non-roots (the root is
    # strictly interior to its window); rational-root midpoints likewise.
    return items, seps


def _threshold_rational(g, x, y, alpha, separators, other_bound, side):
    """A rational strictly between alpha and the nearest obstruction.

    Obstructions: the adjacent critical value (`other_bound`, algebraic or
    None) and every root of g(., rho) on the given side of alpha, so that
    the horizontal lines y = rho are crossing-free between the probe and
    alpha. `side` is -1 for a left probe, +1 for a right probe.
    """
    bounds = []
    if other_bound is not None:
        bounds.append(other_bound)
    for rho in separators:
        gr, _ = specialize(g, {y: rho})
        if gr.is_zero or not gr.depends_on(x):
            continue
        for root in isolate_real_roots(gr, x):
            c = compare_algebraic(root, alpha)
            if c == (-1 if side < 0 else 1):
                bounds.append(root)
    best = None
    for b in bounds:
        if best is None or compare_algebraic(b, best) == (1 if side < 0 else -1):
            best = b
    if side < 0:
        return simplest_between_algebraic(best, alpha)
    return simplest_between_algebraic(alpha, best)


def _strip_counts(g, x, y, probe, separators):
    """Branch counts of g(probe, .) inside each separator strip."""
    fib, _ = specialize(g, {x: probe})
    dense = fib.to_dense(y)
    chain = sturm_chain(dense)
    counts = []
    below = sturm_count(chain, None, separators[0])
    counts.append(below)
    for a, b in zip(separators, separators[1:]):
        counts.append(sturm_count(chain, a, b))
    counts.append(sturm_count(chain, separators[-1], None))
    return counts


def _build_sweep(g, x, y):
    """Events, gap branch counts, and samples for a sheared curve.

    Raises GenericityError when some real critical fiber carries more than
    one real critical point.
    """
    gy = derivative(g, y)
    disc = resultant(g, gy, y)
    if disc.is_zero:
        raise ValueError("discriminant vanished on a square-free curve")
    if disc.depends_on(x):
        crit = isolate_real_roots(disc, x)
    else:
        crit = realalg.SortedRootList(())
    gap_counts = []
    for sample in crit.gaps:
        fib, _ = specialize(g, {x: sample})
        gap_counts.append(sturm_count(sturm_chain(fib.to_dense(y))))
    raw_events = []
    for i, alpha in enumerate(crit.roots):
        ctx = AlgebraicContext(alpha)
        P = _fiber_elements(ctx, g, x, y)
        P = _kp_trim(ctx, P)
        assert len(P) - 1 == g.degree(y), "constant lc forbids fiber degree drop"
        dP = _kp_trim(ctx, _kp_derivative(ctx, P))
        crit_gcd = kp_gcd(ctx, P, dP)
        if kp_count_distinct_real(ctx, crit_gcd) > 1:
            raise GenericityError(f"critical fiber {i} carries several real critical points")
        chain, items = kp_isolate(ctx, P)
        items, seps = _separated_items(ctx, chain, P, items) if items else ([], [])
        n_alpha = len(items)
        n_left = gap_counts[i]
        n_right = gap_counts[i + 1]
        if n_alpha == 0:
            if n_left or n_right:
                raise realalg.CertificationError("branches vanished without a fiber root")
            continue
        prev_a = crit.roots[i - 1] if i > 0 else None
        next_a = crit.roots[i + 1] if i + 1 < len(crit.roots) else None
        left_probe = _threshold_rational(g, x, y, alpha, seps, prev_a, -1)
        right_probe = _threshold_rational(g, x, y, alpha, seps, next_a, +1)
        bl = _strip_counts(g, x, y, left_probe, seps)
        br = _strip_counts(g, x, y, right_probe, seps)
        assert bl[0] == 0 and bl[-1] == 0 and br[0] == 0 and br[-1] == 0, "stray outer branches"
        assert sum(bl) == n_left and sum(br) == n_right, "strip counts disagree with gaps"
        vertices = tuple((bl[j + 1], br[j + 1]) for j in range(n_alpha))
        ev = SweepEvent(n_left, vertices, n_right)
        ev.check()
        raw_events.append(ev)
    return raw_events, gap_counts


def _drop_trivial(events, gap_counts):
    """Remove events where nothing topological happens, merging their gaps."""
    kept = []
    gaps = [gap_counts[0]]
    for ev, right_gap in zip(events, gap_counts[1:]):
        trivial = (
            ev.left_count == ev.right_count
            and all(v == (1, 1) for v in ev.vertices)
            and len(ev.vertices) == ev.left_count
        )
        if trivial:
            continue
        kept.append(ev)
        gaps.append(right_gap)
    return tuple(kept), gaps


def _component_count(events, gap_counts):
    parent = {}

    def find(a):
        while parent.get(a, a) != a:
            parent[a] = parent.get(parent[a], parent[a])
            a = parent[a]
        return a

    def union(a, b):
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    nodes = set()
    for j, n in enumerate(gap_counts):
        for r in range(n):
            nodes.add(("g", j, r))
            parent.setdefault(("g", j, r), ("g", j, r))
    for i, ev in enumerate(events):
        cursor_l = 0
        cursor_r = 0
        for vi, (dl, dr) in enumerate(ev.vertices):
            vnode = ("v", i, vi)
            nodes.add(vnode)
            parent.setdefault(vnode, vnode)
            for _ in range(dl):
                union(vnode, ("g", i, cursor_l))
                cursor_l += 1
            for _ in range(dr):
                union(vnode, ("g", i + 1, cursor_r))
                cursor_r += 1
    return len({find(n) for n in nodes})


def _serialize(unbounded, events):
    return repr(("S", unbounded, tuple((e.left_count, e.vertices, e.right_count) for e in events))).encode()


def _xflip_desc(unbounded, events):
    l, r, u, d = unbounded
    ev = tuple(SweepEvent(e.right_count, tuple((dr, dl) for (dl, dr) in e.vertices), e.left_count) for e in reversed(events))
    return (r, l, u, d), ev


def _yflip_desc(unbounded, events):
    l, r, u, d = unbounded
    ev = tuple(SweepEvent(e.left_count, tuple(reversed(e.vertices)), e.right_count) for e in events)
    return (l, r, d, u), ev


def _canonical_code(unbounded, events):
    cands = []
    for desc in (
        (unbounded, events),
        _xflip_desc(unbounded, events),
        _yflip_desc(unbounded, events),
        _yflip_desc(*_xflip_desc(unbounded, events)),
    ):
        cands.append(_serialize(*desc))
    return min(cands)


def generic_sweep(f, x="x", y="y"):
    """Sweep data of the first accepted generic shear of f.

    Returns (sheared, shear, critical values SortedRootList, gap branch
    counts, raw events). Inspection/testing hook: the counts refer to the
    sheared curve's coordinates.
    """
    g, rec = shear_to_generic(f, x, y)
    if g.degree(y) <= 0:
        raise ValueError("sweep data undefined for unions of vertical lines")
    events, gap_counts = _build_sweep(g, x, y)
    gy = derivative(g, y)
    disc = resultant(g, gy, y)
    crit = (
        isolate_real_roots(disc, x)
        if disc.depends_on(x)
        else realalg.SortedRootList(())
    )
    return g, rec, crit, gap_counts, events


def curve_topology(f, x="x", y="y"):
    """Sweep descriptor of the real curve f(x, y) = 0.

    The input must be nonzero; its square-free part is taken. Curves with
    no y dependence are unions of vertical lines and reported through the
    unbounded up/down counts.
    """
    if f.is_zero:
        raise ValueError("the zero polynomial does not define a curve")
    f = squarefree_part(f, (x, y))
    if not f.depends_on(y):
        if not f.depends_on(x):
            return TopologyGraph((), (0, 0, 0, 0), _serialize((0, 0, 0, 0), ()), 0)
        n = len(isolate_real_roots(f, x))
        code = repr(("V", n)).encode()
        return TopologyGraph((), (0, 0, n, n), code, n)
    best = None
    for level, ks in _shear_candidates():
        if level > 40:
            break
        built = []
        for k in ks:
            g = apply_shear(f, k, x, y)
            if not _lc_y_constant(g, x, y):
                continue
            try:
                events, gap_counts = _build_sweep(g, x, y)
            except GenericityError:
                continue
            events, gaps = _drop_trivial(events, gap_counts)
            unbounded = (gaps[0], gaps[-1], 0, 0)
            comp = _component_count(events, gaps)
            code = _canonical_code(unbounded, events)
            built.append((code, events, unbounded, comp))
        if built:
            built.sort(key=lambda b: b[0])
            code, events, unbounded, comp = built[0]
            return TopologyGraph(tuple(events), unbounded, code, comp)
    raise RuntimeError("no generic shear found within the search bound")
