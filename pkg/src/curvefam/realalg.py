"""Real root isolation and algebraic-number arithmetic on isolating intervals.

Univariate integer polynomials are isolated by Descartes-rule bisection on
dyadic intervals over the square-free part; Sturm sequences certify counts.
Algebraic numbers carry a square-free primitive defining polynomial and an
open rational isolating interval; equality is decided through the gcd of
defining polynomials, never through numeric tolerance.

The fiber machinery (`roots_at_algebraic_fiber`, `AlgebraicContext`) counts
and isolates the real roots of a bivariate polynomial specialized at an
algebraic parameter value, by Sturm sequences over Q(alpha) with dynamic
zero tests (the working annihilator shrinks to a divisor when a zero test
succeeds, keeping every answer exact without factorization).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from .polycore import MPoly
from .elim import _dense_gcd, _dense_primitive, _dense_strip


class CertificationError(RuntimeError):
    """An interval-certification loop exhausted its refinement budget."""


# -- dense univariate utilities -----------------------------------------


def _d_eval(f, q):
    """Exact evaluation of an integer coefficient list at a Fraction."""
    if not f:
        return Fraction(0)
    q = Fraction(q)
    n, d = q.numerator, q.denominator
    acc = 0
    dp = 1
    for c in reversed(f):
        acc = acc * n + c * dp
        dp *= d
    return Fraction(acc, d ** (len(f) - 1))


def _d_sign_at(f, q):
    if not f:
        return 0
    q = Fraction(q)
    n, d = q.numerator, q.denominator
    acc = 0
    dp = 1
    for c in reversed(f):
        acc = acc * n + c * dp
        dp *= d
    return (acc > 0) - (acc < 0)


def _d_derivative(f):
    return [i * c for i, c in enumerate(f)][1:]


def _d_squarefree(f):
    f = _dense_primitive(_dense_strip(list(f)))
    if len(f) <= 2:
        return f
    g = _dense_gcd(f, _d_derivative(f))
    if len(g) == 1:
        return f
    q, r = _d_divmod_exact(f, g)
    assert not r, "square-free division must be exact"
    return _dense_primitive(q)


def _d_divmod_exact(f, g):
    """Division of integer lists when the quotient is known integral."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    out = [0] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and f:
        top = f[-1]
        if top % lg:
            return out, f
        c = top // lg
        k = len(f) - 1 - dg
        out[k] = c
        f.pop()
        for i in range(dg):
            f[k + i] -= c * g[i]
        _dense_strip(f)
    return out, f


def sturm_chain(f):
    """Sturm sequence of an integer coefficient list (positive scalings only)."""
    f0 = _dense_primitive(_dense_strip(list(f)))
    if not f0:
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [f0]
    f1 = _dense_primitive(_d_derivative(f0))
    if f1:
        chain.append(f1)
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        delta = len(a) - len(b)
        lb = b[-1]
        r = _dense_prem_track(a, b, delta)
        if not r:
            break
        # pseudo-remainder used lb^(delta+1); flip once more if that was negative
        if lb < 0 and (delta + 1) % 2:
            r = [-c for c in r]
        chain.append(_dense_primitive([-c for c in r]))
    return chain


def _dense_prem_track(f, g, delta):
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    for _ in range(delta + 1):
        df = len(f) - 1
        if df < dg or not f:
            f = [c * lg for c in f]
            continue
        top = f[-1]
        f = [c * lg for c in f[:-1]]
        for i in range(dg):
            f[df - dg + i] -= top * g[i]
        _dense_strip(f)
        if not f:
            break
    return f


def _variations(signs):
    out = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            out += 1
        prev = s
    return out


def _chain_variations_at(chain, q):
    return _variations([_d_sign_at(f, q) for f in chain])


def _chain_variations_inf(chain, positive):
    signs = []
    for f in chain:
        s = (f[-1] > 0) - (f[-1] < 0)
        if not positive and (len(f) - 1) % 2:
            s = -s
        signs.append(s)
    return _variations(signs)


def sturm_count(chain, lo=None, hi=None):
    """Distinct real roots in (lo, hi); None endpoints mean +-infinity."""
    va = _chain_variations_inf(chain, False) if lo is None else _chain_variations_at(chain, lo)
    vb = _chain_variations_inf(chain, True) if hi is None else _chain_variations_at(chain, hi)
    return va - vb


# -- Descartes bisection isolation ---------------------------------------


def _descartes_bound_01(q):
    """Sign-variation bound for the roots of q in the open interval (0,1)."""
    n = len(q) - 1
    rev = list(reversed(q))
    # Taylor shift by one: rev(x+1)
    work = list(rev)
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            work[j] += work[j + 1]
    return _variations([(c > 0) - (c < 0) for c in work])


def _half_left(q):
    """q(x/2) scaled by 2^n, content-stripped."""
    n = len(q) - 1
    return _dense_primitive([c << (n - i) for i, c in enumerate(q)])


def _half_right(q):
    """q((x+1)/2) scaled by 2^n, content-stripped."""
    n = len(q) - 1
    w = [c << (n - i) for i, c in enumerate(q)]
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            w[j] += w[j + 1]
    return _dense_primitive(w)


def _root_bound_pow2(f):
    """Power-of-two bound B with all real roots of f in (-B, B)."""
    lc = abs(f[-1])
    m = max(abs(c) for c in f[:-1]) if len(f) > 1 else 0
    b = Fraction(m, lc) + 1
    B = 1
    while B < b:
        B <<= 1
    return B


def _deflate_root_at_one(q):
    """Exact synthetic division of q by (x - 1); 1 must be a root."""
    out = []
    acc = 0
    for c in reversed(q[1:]):
        acc += c
        out.append(acc)
    assert acc + q[0] == 0, "deflation requires a root at 1"
    out.reverse()
    return _dense_primitive(out)


def _isolate_01(q, lo, hi, out):
    """Collect isolated roots of the (0,1)-mapped poly q on real span (lo, hi).

    q never vanishes at its own interval endpoints; exact midpoint roots are
    emitted as Fractions and deflated before recursing.
    """
    v = _descartes_bound_01(q)
    if v == 0:
        return
    if v == 1:
        out.append((lo, hi))
        return
    mid = (lo + hi) / 2
    left = _half_left(q)
    right = _half_right(q)
    if right[0] == 0:
        out.append(mid)  # exact dyadic root at the midpoint
        right = _dense_primitive(_dense_strip(right)[1:])
        left = _deflate_root_at_one(left)
    _isolate_01(left, lo, mid, out)
    _isolate_01(right, mid, hi, out)


def isolate_dense(f):
    """Isolate the distinct real roots of an integer coefficient list.

    Returns a list whose entries are either exact `Fraction` roots or open
    isolating `(lo, hi)` pairs of the square-free part, in increasing order.
    """
    f = _dense_strip(list(f))
    if not f:
        raise ValueError("cannot isolate roots of the zero polynomial")
    f = _d_squarefree(f)
    n = len(f) - 1
    if n == 0:
        return []
    found = []
    if f[0] == 0:
        found.append(Fraction(0))
        k = next(i for i, c in enumerate(f) if c)
        f = f[k:]
        if len(f) == 1:
            return found
    if len(f) == 2:
        found.append(Fraction(-f[0], f[1]))
        return sorted(found)
    B = _root_bound_pow2(f)
    # positive roots: map (0, B) to (0, 1)
    pos = _dense_primitive([c * B**i for i, c in enumerate(f)])
    _isolate_01(pos, Fraction(0), Fraction(B), found)
    # negative roots: mirror
    neg = [(-1) ** i * c for i, c in enumerate(pos)]
    mirrored = []
    _isolate_01(neg, Fraction(0), Fraction(B), mirrored)
    for item in mirrored:
        if isinstance(item, tuple):
            found.append((-item[1], -item[0]))
        else:
            found.append(-item)
    found.sort(key=lambda it: (it[0], 1) if isinstance(it, tuple) else (it, 0))
    return found


# -- algebraic numbers ----------------------------------------------------


def _to_dense(p, name=None):
    """Dense list of a univariate MPoly (or pass dense lists through)."""
    if isinstance(p, MPoly):
        used = p.variables_used()
        if name is None:
            name = next(iter(used)) if used else (p.vars[0] if p.vars else "x")
        return p.to_dense(name)
    return list(p)


def _sign_normalized(f):
    f = _dense_primitive(_dense_strip(list(f)))
    if f and f[-1] < 0:
        f = [-c for c in f]
    return f


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real algebraic number as (defining polynomial, isolating interval).

    `defining` is a square-free primitive sign-normalized integer
    coefficient list (low to high); the open interval (lo, hi) contains
    exactly one of its real roots. `rational_value` is set when the root
    is known to be rational.
    """

    defining: tuple
    lo: Fraction
    hi: Fraction
    rational_value: Fraction | None = None

    @classmethod
    def from_rational(cls, q):
        q = Fraction(q)
        defining = _sign_normalized([-q.numerator, q.denominator])
        return cls(tuple(defining), q - 1, q + 1, q)

    @classmethod
    def from_interval(cls, f, lo, hi):
        f = _sign_normalized(f)
        return cls(tuple(f), Fraction(lo), Fraction(hi), None)

    @property
    def interval(self):
        if self.rational_value is not None:
            return self.rational_value, self.rational_value
        return self.lo, self.hi

    def is_rational(self):
        return self.rational_value is not None

    def defining_mpoly(self, name="t"):
        return MPoly.from_dense(self.defining, name)

    def refined(self, width):
        """Same root, isolating interval narrower than `width`."""
        width = Fraction(width)
        if self.rational_value is not None:
            q = self.rational_value
            return AlgebraicNumber(self.defining, q - width / 4, q + width / 4, q)
        f = list(self.defining)
        lo, hi = self.lo, self.hi
        slo = _d_sign_at(f, lo)
        while hi - lo >= width:
            mid = (lo + hi) / 2
            sm = _d_sign_at(f, mid)
            if sm == 0:
                return AlgebraicNumber(self.defining, mid - width / 4, mid + width / 4, mid)
            if sm == slo:
                lo = mid
            else:
                hi = mid
        return AlgebraicNumber(self.defining, lo, hi, None)

    def __float__(self):
        if self.rational_value is not None:
            return float(self.rational_value)
        a = self.refined(Fraction(1, 1 << 60))
        return float((a.lo + a.hi) / 2)

    def __repr__(self):
        if self.rational_value is not None:
            return f"AlgebraicNumber({self.rational_value})"
        return f"AlgebraicNumber({str(MPoly.from_dense(self.defining,'u'))}, ({self.lo}, {self.hi}))"


def refine(alpha, width):
    return alpha.refined(width)


def _cleanup_endpoints(f, lo, hi):
    """Shrink an isolating interval until f is nonzero at both endpoints."""
    # The interval holds exactly one root of f; an endpoint that evaluates
    # to zero is a *different* root, so nudging inward preserves isolation.
    span = hi - lo
    while _d_sign_at(f, lo) == 0:
        span /= 8
        cand = lo + span
        if _d_sign_at(f, cand) == 0:
            # the unique interior root itself is rational
            return cand, cand
        chain = sturm_chain(list(f))
        if sturm_count(chain, cand, hi) == 1:
            lo = cand
        else:
            hi = cand  # root lies in (lo, cand); keep shrinking toward lo
    span = hi - lo
    while _d_sign_at(f, hi) == 0:
        span /= 8
        cand = hi - span
        if _d_sign_at(f, cand) == 0:
            return cand, cand
        chain = sturm_chain(list(f))
        if sturm_count(chain, lo, cand) == 1:
            hi = cand
        else:
            lo = cand
    return lo, hi


def _rational_probe(f, lo, hi):
    """Look for a rational root of f inside (lo, hi); None when not found.

    Complete for roots whose denominator is modest (the probe refines to
    width 2^-64 before giving up), which covers every rational produced by
    the decomposition fixtures; irrational roots are simply left symbolic.
    """
    chain = None
    for shift in (16, 32, 64):
        width = Fraction(1, 1 << shift)
        if hi - lo >= width:
            if chain is None:
                chain = sturm_chain(list(f))
            slo = _d_sign_at(f, lo)
            while hi - lo >= width:
                mid = (lo + hi) / 2
                sm = _d_sign_at(f, mid)
                if sm == 0:
                    return mid, (lo, hi)
                if sm == slo:
                    lo = mid
                else:
                    hi = mid
        cand = simplest_between(lo, hi)
        if cand is not None and lo < cand < hi and _d_sign_at(f, cand) == 0:
            return cand, (lo, hi)
    return None, (lo, hi)


def isolate_real_roots(p, name=None):
    """Complete isolation of the distinct real roots of a univariate poly.

    Accepts an MPoly or a dense list; returns a SortedRootList. Constant
    nonzero input yields the empty list; zero input is rejected.
    """
    f = _to_dense(p, name)
    if not f:
        raise ValueError("cannot isolate roots of the zero polynomial")
    f = _d_squarefree(f)
    if len(f) == 1:
        return SortedRootList(())
    raw = isolate_dense(f)
    roots = []
    for item in raw:
        if isinstance(item, Fraction):
            roots.append(AlgebraicNumber.from_rational(item))
        else:
            lo, hi = _cleanup_endpoints(f, *item)
            if lo == hi:
                roots.append(AlgebraicNumber.from_rational(lo))
                continue
            q, (lo, hi) = _rational_probe(f, lo, hi)
            if q is not None:
                roots.append(AlgebraicNumber.from_rational(q))
            else:
                roots.append(AlgebraicNumber.from_interval(f, lo, hi))
    return SortedRootList(tuple(roots))


def compare_algebraic(a, b):
    """Exact three-way comparison of algebraic numbers."""
    if a.rational_value is not None and b.rational_value is not None:
        x, y = a.rational_value, b.rational_value
        return (x > y) - (x < y)
    if a.rational_value is not None:
        return -cmp_to_rational(b, a.rational_value)
    if b.rational_value is not None:
        return cmp_to_rational(a, b.rational_value)
    x, y = a, b
    for _ in range(512):
        if x.hi <= y.lo:
            return -1
        if y.hi <= x.lo:
            return 1
        g = _dense_gcd(list(x.defining), list(y.defining))
        if len(g) > 1:
            lo = max(x.lo, y.lo)
            hi = min(x.hi, y.hi)
            if lo < hi:
                chain = sturm_chain(g)
                glo = lo if _d_sign_at(g, lo) != 0 else None
                ghi = hi if _d_sign_at(g, hi) != 0 else None
                if glo is not None and ghi is not None and sturm_count(chain, glo, ghi) >= 1:
                    return 0
                if glo is None or ghi is None:
                    # an endpoint hits a root of g; decide by value equality
                    q = lo if glo is None else hi
                    if cmp_to_rational(x, q) == 0 and cmp_to_rational(y, q) == 0:
                        return 0
        x = x.refined((x.hi - x.lo) / 4)
        y = y.refined((y.hi - y.lo) / 4)
    raise CertificationError("algebraic comparison did not separate")


def cmp_to_rational(a, q):
    """Exact comparison of an algebraic number with a rational."""
    q = Fraction(q)
    if a.rational_value is not None:
        x = a.rational_value
        return (x > q) - (x < q)
    if _d_sign_at(list(a.defining), q) == 0 and a.lo < q < a.hi:
        return 0
    x = a
    for _ in range(512):
        if x.hi <= q:
            return -1
        if q <= x.lo:
            return 1
        x = x.refined((x.hi - x.lo) / 4)
    raise CertificationError("comparison with rational did not separate")


def sign_at(p, alpha, name=None):
    """Exact sign of a univariate polynomial at an algebraic number."""
    f = _dense_strip(_to_dense(p, name))
    if not f:
        return 0
    if alpha.rational_value is not None:
        return _d_sign_at(f, alpha.rational_value)
    g = _dense_gcd(f, list(alpha.defining))
    if len(g) > 1:
        lo, hi = _cleanup_gcd_window(g, alpha)
        if lo is not None:
            chain = sturm_chain(g)
            if sturm_count(chain, lo, hi) >= 1:
                return 0
    x = alpha
    for _ in range(512):
        sl = _d_sign_at(f, x.lo)
        sh = _d_sign_at(f, x.hi)
        if sl == sh and sl != 0 and _interval_sign_definite(f, x.lo, x.hi) == sl:
            return sl
        x = x.refined((x.hi - x.lo) / 4)
    raise CertificationError("sign_at did not certify")


def _cleanup_gcd_window(g, alpha):
    """Endpoints of alpha's interval made non-roots of g (roots of g are
    roots of alpha.defining, so nudging keeps the window isolating)."""
    lo, hi = alpha.lo, alpha.hi
    if _d_sign_at(g, lo) == 0 or _d_sign_at(g, hi) == 0:
        a = alpha.refined((hi - lo) / 16)
        lo, hi = a.lo, a.hi
        if _d_sign_at(g, lo) == 0 or _d_sign_at(g, hi) == 0:
            return None, None
    return lo, hi


def _interval_sign_definite(f, lo, hi):
    """Sign of f over [lo, hi] if interval evaluation certifies it, else 0."""
    flo = Fraction(1)
    acc_lo = Fraction(0)
    acc_hi = Fraction(0)
    # interval Horner on [lo, hi]
    ilo, ihi = Fraction(lo), Fraction(hi)
    for c in reversed(f):
        # multiply accumulator interval by [ilo, ihi]
        cands = (acc_lo * ilo, acc_lo * ihi, acc_hi * ilo, acc_hi * ihi)
        acc_lo, acc_hi = min(cands) + c, max(cands) + c
    if acc_lo > 0:
        return 1
    if acc_hi < 0:
        return -1
    return 0


# -- simplest rationals and sample points ---------------------------------


def simplest_between(lo, hi):
    """Smallest-denominator (then smallest |numerator|) rational in (lo, hi).

    `None` endpoints stand for -inf / +inf; returns None on empty input.
    """
    if lo is not None and hi is not None and not lo < hi:
        return None
    return _simplest(lo, hi)


def _floor_fr(q):
    return q.numerator // q.denominator


def _simplest(lo, hi):
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        n_hi = _floor_fr(hi) if hi != _floor_fr(hi) else _floor_fr(hi) - 1
        return Fraction(0) if 0 < hi else Fraction(n_hi)
    if hi is None:
        n_lo = _floor_fr(lo) + 1
        return Fraction(0) if lo < 0 else Fraction(n_lo)
    n_lo = _floor_fr(lo) + 1
    n_hi = _floor_fr(hi) if hi != _floor_fr(hi) else _floor_fr(hi) - 1
    if n_lo <= n_hi:
        if n_lo <= 0 <= n_hi:
            return Fraction(0)
        return Fraction(n_lo) if n_lo > 0 else Fraction(n_hi)
    k = _floor_fr(lo)
    # no integer inside; both endpoints in [k, k+1)
    inner = _simplest(1 / (hi - k), None if lo == k else 1 / (lo - k))
    return k + 1 / inner


def simplest_between_algebraic(a, b, avoid=()):
    """Simplest rational strictly between two algebraic numbers.

    `a`/`b` may be AlgebraicNumber or None for -inf/+inf. `avoid` is a
    collection of dense integer polynomials the sample must not vanish on;
    when the simplest candidate is excluded, the next-simplest on either
    side is taken.
    """
    cand = _simplest_alg(a, b)
    if not avoid:
        return cand
    queue = [(cand, a, b)]
    best = None
    while queue:
        cand, la, lb = queue.pop(0)
        if all(_d_sign_at(f, cand) != 0 for f in avoid):
            key = (cand.denominator, abs(cand.numerator))
            if best is None or key < (best.denominator, abs(best.numerator)):
                best = cand
            continue
        qnum = AlgebraicNumber.from_rational(cand)
        queue.append((_simplest_alg(la, qnum), la, qnum))
        queue.append((_simplest_alg(qnum, lb), qnum, lb))
    return best


def _simplest_alg(a, b):
    """Stern-Brocot walk with exact comparisons against algebraic endpoints."""
    if a is None and b is None:
        return Fraction(0)
    av = a.rational_value if a is not None else None
    bv = b.rational_value if b is not None else None
    if (a is None or av is not None) and (b is None or bv is not None):
        return _simplest(av, bv)

    def above_a(q):  # a < q
        return a is None or cmp_to_rational(a, q) < 0

    def below_b(q):  # q < b
        return b is None or cmp_to_rational(b, q) > 0

    zero = Fraction(0)
    if above_a(zero) and below_b(zero):
        return zero
    if not above_a(zero):  # interval lies in [0, +inf)
        return _simplest_alg_positive(above_a, below_b, a is None, b is None)
    # interval lies in (-inf, 0]: mirror
    def above_m(q):
        return below_b(-q)

    def below_m(q):
        return above_a(-q)

    return -_simplest_alg_positive(above_m, below_m, b is None, a is None)


def _simplest_alg_positive(above_a, below_b, a_inf, b_inf):
    """Walk on the positive Stern-Brocot tree; interval within (0, +inf]."""
    ln, ld, rn, rd = 0, 1, 1, 0
    for _ in range(100000):
        mn, md = ln + rn, ld + rd
        m = Fraction(mn, md)
        if above_a(m) and below_b(m):
            return m
        if not above_a(m):
            # gallop a maximal run of left-of-interval moves
            k = 1
            while not above_a(Fraction(ln + 2 * k * rn, ld + 2 * k * rd)):
                k *= 2
            lo_k, hi_k = k, 2 * k  # invariant: m_(lo_k) <= a < m_(hi_k)
            while lo_k + 1 < hi_k:
                mid = (lo_k + hi_k) // 2
                if above_a(Fraction(ln + mid * rn, ld + mid * rd)):
                    hi_k = mid
                else:
                    lo_k = mid
            ln, ld = ln + lo_k * rn, ld + lo_k * rd
        else:
            k = 1
            while not below_b(Fraction(2 * k * ln + rn, 2 * k * ld + rd)):
                k *= 2
            lo_k, hi_k = k, 2 * k
            while lo_k + 1 < hi_k:
                mid = (lo_k + hi_k) // 2
                if below_b(Fraction(mid * ln + rn, mid * ld + rd)):
                    hi_k = mid
                else:
                    lo_k = mid
            rn, rd = lo_k * ln + rn, lo_k * ld + rd
    raise CertificationError("Stern-Brocot walk did not terminate")


class SortedRootList:
    """Strictly increasing algebraic numbers plus rational gap samples.

    Gap samples are the simplest rationals strictly between consecutive
    roots (one below the minimum and one above the maximum as well), each
    certified to be a non-root of every defining polynomial in the list.
    """

    def __init__(self, roots):
        roots = tuple(roots)
        for a, b in zip(roots, roots[1:]):
            if compare_algebraic(a, b) >= 0:
                raise ValueError("roots must be strictly increasing")
        self.roots = roots
        defs = [list(r.defining) for r in roots]
        gaps = []
        bounds = [None, *roots, None]
        for left, right in zip(bounds, bounds[1:]):
            gaps.append(simplest_between_algebraic(left, right, avoid=defs))
        self.gaps = tuple(gaps)

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    def __repr__(self):
        return f"SortedRootList({list(self.roots)!r})"

    def intervals(self):
        """Open intervals of the induced line partition with their samples."""
        out = []
        bounds = [None, *self.roots, None]
        for i, (left, right) in enumerate(zip(bounds, bounds[1:])):
            out.append((left, right, self.gaps[i]))
        return out

    def locate(self, q):
        """Position of rational q: ('root', i) or ('gap', i) (gap i precedes root i)."""
        q = Fraction(q)
        for i, r in enumerate(self.roots):
            c = cmp_to_rational(r, q)
            if c == 0:
                return ("root", i)
            if c > 0:
                return ("gap", i)
        return ("gap", len(self.roots))


def merge_root_sets(lists):
    """Union of root lists with exact duplicate elimination."""
    items = []
    for lst in lists:
        items.extend(lst.roots if isinstance(lst, SortedRootList) else lst)
    merged = []
    for r in items:
        placed = False
        for i, m in enumerate(merged):
            c = compare_algebraic(r, m)
            if c == 0:
                # prefer the rational representative when either side has one
                if m.rational_value is None and r.rational_value is not None:
                    merged[i] = r
                placed = True
                break
            if c < 0:
                merged.insert(i, r)
                placed = True
                break
        if not placed:
            merged.append(r)
    return SortedRootList(tuple(merged))


# -- exact arithmetic in Q(alpha) with dynamic annihilator -----------------


class AlgebraicContext:
    """Arithmetic in Q(alpha) for an isolated real algebraic alpha.

    Elements are Fraction coefficient tuples modulo a working annihilator
    A (a divisor of the defining polynomial that still has alpha as a
    root). Zero tests may shrink A in place; every answer remains exact
    without polynomial factorization.
    """

    def __init__(self, alpha):
        self.rational = alpha.rational_value
        if self.rational is not None:
            q = self.rational
            self.A = _sign_normalized([-q.numerator, q.denominator])
            self.lo, self.hi = q - 1, q + 1
        else:
            self.A = list(alpha.defining)
            self.lo, self.hi = _cleanup_endpoints(self.A, alpha.lo, alpha.hi)
            if self.lo == self.hi:
                self.rational = self.lo
                q = self.rational
                self.A = _sign_normalized([-q.numerator, q.denominator])

    # elements ---------------------------------------------------------

    def reduce(self, coeffs):
        """Remainder of a Fraction coefficient list modulo A."""
        f = [Fraction(c) for c in coeffs]
        while f and f[-1] == 0:
            f.pop()
        dA = len(self.A) - 1
        lA = Fraction(self.A[-1])
        while len(f) - 1 >= dA:
            top = f[-1] / lA
            k = len(f) - 1 - dA
            f.pop()
            for i in range(dA):
                f[k + i] -= top * self.A[i]
            while f and f[-1] == 0:
                f.pop()
        return tuple(f)

    def from_int_poly(self, dense):
        return self.reduce([Fraction(c) for c in dense])

    def from_rational(self, q):
        return self.reduce([Fraction(q)])

    def alpha_elem(self):
        return self.reduce([Fraction(0), Fraction(1)])

    def add(self, a, b):
        n = max(len(a), len(b))
        out = [Fraction(0)] * n
        for i, c in enumerate(a):
            out[i] += c
        for i, c in enumerate(b):
            out[i] += c
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def neg(self, a):
        return tuple(-c for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return self.reduce(out)

    def scale(self, a, q):
        q = Fraction(q)
        if q == 0:
            return ()
        return tuple(c * q for c in a)

    def is_zero(self, a):
        a = self.reduce(a)
        if not a:
            return True
        if self.rational is not None:
            return _eval_fraction_list(a, self.rational) == 0
        den = 1
        for c in a:
            den = den * c.denominator // int_gcd(den, c.denominator)
        ints = [int(c * den) for c in a]
        g = _dense_gcd(ints, self.A)
        if len(g) <= 1:
            return False
        chain = sturm_chain(g)
        if sturm_count(chain, self.lo, self.hi) >= 1:
            if len(g) - 1 < len(self.A) - 1:
                self.A = g  # dynamic refinement: alpha is a root of g
            if len(self.A) == 2:
                self.rational = Fraction(-self.A[0], self.A[1])
            return True
        return False

    def sign(self, a):
        a = self.reduce(a)
        if self.rational is not None:
            v = _eval_fraction_list(a, self.rational)
            return (v > 0) - (v < 0)
        if self.is_zero(a):
            return 0
        a = self.reduce(a)
        for _ in range(512):
            lo, hi = _interval_eval_fractions(a, self.lo, self.hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            self.refine_alpha()
            if self.rational is not None:
                v = _eval_fraction_list(a, self.rational)
                return (v > 0) - (v < 0)
        raise CertificationError("sign certification in Q(alpha) failed")

    def refine_alpha(self):
        lo, hi = self.lo, self.hi
        slo = _d_sign_at(self.A, lo)
        mid = (lo + hi) / 2
        sm = _d_sign_at(self.A, mid)
        if sm == 0:
            self.rational = mid
            self.lo = self.hi = mid
            return
        if sm == slo:
            self.lo = mid
        else:
            self.hi = mid

    def invert(self, a):
        a = self.reduce(a)
        if not a:
            raise ZeroDivisionError("inverting zero in Q(alpha)")
        if self.rational is not None:
            v = _eval_fraction_list(a, self.rational)
            if v == 0:
                raise ZeroDivisionError("inverting zero in Q(alpha)")
            return self.reduce([1 / v])
        while True:
            g, s = _ext_gcd_fraction(list(a), [Fraction(c) for c in self.A])
            if len(g) == 1:
                return self.reduce([c / g[0] for c in s])
            gi = _sign_normalized([int(c * _common_den(g)) for c in g])
            chain = sturm_chain(gi)
            if sturm_count(chain, self.lo, self.hi) >= 1:
                raise ZeroDivisionError("inverting zero in Q(alpha)")
            q, r = _d_divmod_exact(self.A, gi)
            assert not r, "annihilator split must be exact"
            self.A = _sign_normalized(q)
            if len(self.A) == 2:
                self.rational = Fraction(-self.A[0], self.A[1])
                self.lo = self.hi = self.rational


def _common_den(fractions):
    den = 1
    for c in fractions:
        den = den * c.denominator // int_gcd(den, c.denominator)
    return den


def _eval_fraction_list(a, q):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * q + c
    return acc


def _interval_eval_fractions(a, lo, hi):
    acc_lo = Fraction(0)
    acc_hi = Fraction(0)
    for c in reversed(a):
        cands = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(cands) + c, max(cands) + c
    return acc_lo, acc_hi


def _ext_gcd_fraction(a, b):
    """(g, s) with s*a = g mod b, g the monic-ish gcd over Q."""
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], []

    def frac_divmod(f, g):
        f = list(f)
        q = [Fraction(0)] * max(0, len(f) - len(g) + 1)
        lg = g[-1]
        while f and len(f) >= len(g):
            c = f[-1] / lg
            k = len(f) - len(g)
            q[k] = c
            f.pop()
            for i in range(len(g) - 1):
                f[k + i] -= c * g[i]
            while f and f[-1] == 0:
                f.pop()
        return q, f

    def poly_mul(f, g):
        if not f or not g:
            return []
        out = [Fraction(0)] * (len(f) + len(g) - 1)
        for i, cf in enumerate(f):
            if cf:
                for j, cg in enumerate(g):
                    out[i + j] += cf * cg
        return out

    def poly_sub(f, g):
        out = [Fraction(0)] * max(len(f), len(g))
        for i, c in enumerate(f):
            out[i] += c
        for i, c in enumerate(g):
            out[i] -= c
        while out and out[-1] == 0:
            out.pop()
        return out

    while r1:
        q, r = frac_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
    return r0, s0


# -- polynomials over Q(alpha): Sturm, isolation, gcd ----------------------


def _kp_trim(ctx, P):
    P = list(P)
    while P and ctx.is_zero(P[-1]):
        P.pop()
    return [ctx.reduce(e) for e in P]


def _kp_eval(ctx, P, q):
    q = Fraction(q)
    acc = ()
    for e in reversed(P):
        acc = ctx.add(ctx.scale(acc, q), e)
    return acc


def _kp_derivative(ctx, P):
    return [ctx.scale(e, i) for i, e in enumerate(P)][1:]


def _kp_content_normalize(P):
    """Divide a nonzero element-poly by a positive rational content."""
    num_gcd = 0
    den_lcm = 1
    for e in P:
        for c in e:
            num_gcd = int_gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
    if num_gcd == 0:
        return P
    scale = Fraction(den_lcm, num_gcd)
    return [tuple(c * scale for c in e) for e in P]


def _kp_neg_prem(ctx, f, g):
    """-prem(f, g) with an even (hence positive) power of lc(g)."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    df = len(f) - 1
    steps = df - dg + 1
    for _ in range(steps):
        df = len(f) - 1
        if df < dg or not f:
            f = [ctx.mul(e, lg) for e in f]
            continue
        top = f[-1]
        f = [ctx.mul(e, lg) for e in f[:-1]]
        for i in range(dg):
            f[df - dg + i] = ctx.sub(f[df - dg + i], ctx.mul(top, g[i]))
        while f and ctx.is_zero(f[-1]):
            f.pop()
        if not f:
            break
    if steps % 2:
        f = [ctx.mul(e, lg) for e in f]  # squares the overall multiplier's sign
    return _kp_content_normalize([ctx.neg(e) for e in f])


def kp_sturm_chain(ctx, P):
    P = _kp_trim(ctx, P)
    if not P:
        raise ValueError("Sturm chain of the zero fiber polynomial")
    chain = [P]
    d = _kp_trim(ctx, _kp_derivative(ctx, P))
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        nxt = _kp_neg_prem(ctx, chain[-2], chain[-1])
        nxt = _kp_trim(ctx, nxt)
        if not nxt:
            break
        chain.append(nxt)
    return chain


def _kp_variations_at(ctx, chain, q):
    signs = [ctx.sign(_kp_eval(ctx, P, q)) for P in chain]
    return _variations(signs)


def _kp_variations_inf(ctx, chain, positive):
    signs = []
    for P in chain:
        s = ctx.sign(P[-1])
        if not positive and (len(P) - 1) % 2:
            s = -s
        signs.append(s)
    return _variations(signs)


def kp_count_roots(ctx, chain, lo=None, hi=None):
    va = _kp_variations_inf(ctx, chain, False) if lo is None else _kp_variations_at(ctx, chain, lo)
    vb = _kp_variations_inf(ctx, chain, True) if hi is None else _kp_variations_at(ctx, chain, hi)
    return va - vb


def _kp_root_bound(ctx, P):
    """Power-of-two bound on |roots| via interval enclosures of coefficients."""
    while True:
        lo, hi = _interval_eval_fractions(P[-1], ctx.lo, ctx.hi) if ctx.rational is None else (None, None)
        if ctx.rational is not None:
            v = _eval_fraction_list(P[-1], ctx.rational)
            lc_low = abs(v)
        else:
            if lo <= 0 <= hi:
                ctx.refine_alpha()
                continue
            lc_low = min(abs(lo), abs(hi))
        break
    top = Fraction(0)
    for e in P[:-1]:
        if ctx.rational is not None:
            m = abs(_eval_fraction_list(e, ctx.rational))
        else:
            lo, hi = _interval_eval_fractions(e, ctx.lo, ctx.hi)
            m = max(abs(lo), abs(hi))
        top = max(top, m)
    bound = top / lc_low + 1
    B = Fraction(1)
    while B < bound:
        B *= 2
    return B


def kp_isolate(ctx, P):
    """Isolate the distinct real roots of an element polynomial.

    Returns (chain, items); each item is ('rational', q) or
    ('interval', (lo, hi)) with rational endpoints, increasing order.
    """
    P = _kp_trim(ctx, P)
    if not P:
        raise ValueError("cannot isolate the zero fiber polynomial")
    if len(P) == 1:
        return None, []
    chain = kp_sturm_chain(ctx, P)
    total = kp_count_roots(ctx, chain)
    if total == 0:
        return chain, []
    B = _kp_root_bound(ctx, P)
    items = []

    def probe_rational(lo, hi):
        cand = simplest_between(lo, hi)
        if cand is not None and ctx.is_zero(_kp_eval(ctx, P, cand)):
            return cand
        return None

    def split(lo, hi, count):
        if count == 0:
            return
        if count == 1:
            # tighten a little, then try a one-shot rational probe
            for _ in range(18):
                mid = (lo + hi) / 2
                if ctx.is_zero(_kp_eval(ctx, P, mid)):
                    items.append(("rational", mid))
                    return
                left = kp_count_roots(ctx, chain, lo, mid)
                if left == 1:
                    hi = mid
                else:
                    lo = mid
            q = probe_rational(lo, hi)
            if q is not None:
                items.append(("rational", q))
            else:
                items.append(("interval", (lo, hi)))
            return
        mid = (lo + hi) / 2
        if ctx.is_zero(_kp_eval(ctx, P, mid)):
            items.append(("rational-unsorted", mid))
            eps = (hi - lo) / 2
            while kp_count_roots(ctx, chain, mid - eps, mid + eps) > 1:
                eps /= 2
            split(lo, mid - eps, kp_count_roots(ctx, chain, lo, mid - eps))
            split(mid + eps, hi, kp_count_roots(ctx, chain, mid + eps, hi))
            return
        left = kp_count_roots(ctx, chain, lo, mid)
        split(lo, mid, left)
        split(mid, hi, count - left)

    split(-B, B, total)
    # normalize ordering (rational roots found at splits may be out of order)
    def item_key(it):
        kind, val = it
        if kind.startswith("rational"):
            return (val, 0)
        return (val[0], 1)

    items = [("rational", v) if k == "rational-unsorted" else (k, v) for k, v in items]
    items.sort(key=item_key)
    return chain, items


def kp_gcd(ctx, P, Q):
    """A gcd of two element polynomials (up to a unit of Q(alpha))."""
    P = _kp_trim(ctx, P)
    Q = _kp_trim(ctx, Q)
    if not P:
        return Q
    if not Q:
        return P
    if len(P) < len(Q):
        P, Q = Q, P
    while Q:
        R = _kp_trim(ctx, _kp_neg_prem(ctx, P, Q))
        P, Q = Q, R
    return P


def kp_count_distinct_real(ctx, P):
    P = _kp_trim(ctx, P)
    if len(P) <= 1:
        return 0
    chain = kp_sturm_chain(ctx, P)
    return kp_count_roots(ctx, chain)


# -- fibers of a bivariate polynomial at an algebraic parameter ------------


def roots_at_algebraic_fiber(R, alpha, outer="t", fiber="s"):
    """All real roots of R(alpha, .) as a SortedRootList.

    Candidates come from the outer-eliminated resultant
    Res_outer(R, defining(alpha)); the exact root count over Q(alpha)
    (Sturm with dynamic zero tests) decides which candidates are genuine.
    Degenerate input (outer - alpha divides R) is rejected.
    """
    from .elim import remove_univariate_factors, resultant, squarefree_part

    if alpha.rational_value is not None:
        from .polycore import specialize

        spec, _ = specialize(R, {outer: alpha.rational_value})
        if spec.is_zero:
            raise ValueError("degenerate fiber: the parameter line divides R")
        if not spec.depends_on(fiber):
            return SortedRootList(())
        return isolate_real_roots(spec, fiber)

    prim, outer_part = remove_univariate_factors(R, outer)
    if not outer_part.is_constant() and sign_at(outer_part, alpha, outer) == 0:
        raise ValueError("degenerate fiber: the parameter line divides R")

    ctx = AlgebraicContext(alpha)
    coeffs = prim.coeffs_in(fiber)
    P = [ctx.from_int_poly(c.to_dense(outer) if c.depends_on(outer) else [c.constant_value()] if not c.is_zero else []) for c in coeffs]
    P = _kp_trim(ctx, P)
    if len(P) <= 1:
        return SortedRootList(())
    chain, items = kp_isolate(ctx, P)
    if not items:
        return SortedRootList(())

    # candidate defining polynomials by elimination of the outer variable
    if prim.degree(outer) >= 1:
        a_mp = MPoly.from_dense(list(ctx.A), outer)
        E = resultant(prim, a_mp, outer)
        E = squarefree_part(E, (fiber,))
        cands = list(isolate_real_roots(E, fiber).roots)
    else:
        cands = list(isolate_real_roots(prim, fiber).roots)

    out = []
    for kind, val in items:
        if kind == "rational":
            out.append(AlgebraicNumber.from_rational(val))
            continue
        lo, hi = val
        matched = None
        for _ in range(140):
            inside = [c for c in cands if cmp_to_rational(c, lo) > 0 and cmp_to_rational(c, hi) < 0]
            if len(inside) == 1:
                matched = inside[0]
                break
            # narrow the certified window and sharpen the candidates
            mid = (lo + hi) / 2
            if ctx.is_zero(_kp_eval(ctx, P, mid)):
                matched = AlgebraicNumber.from_rational(mid)
                break
            if kp_count_roots(ctx, chain, lo, mid) == 1:
                hi = mid
            else:
                lo = mid
            cands = [c.refined((c.hi - c.lo) / 4) if c.rational_value is None else c for c in cands]
        if matched is None:
            raise CertificationError(
                f"fiber root in ({lo}, {hi}) could not be matched to an eliminant root"
            )
        out.append(matched)
    return SortedRootList(tuple(out))


def count_real_fiber_roots(R, alpha, outer="t", fiber="s"):
    """Exact number of distinct real roots of R(alpha, .)."""
    if alpha.rational_value is not None:
        from .polycore import specialize

        spec, _ = specialize(R, {outer: alpha.rational_value})
        if spec.is_zero:
            raise ValueError("degenerate fiber")
        if not spec.depends_on(fiber):
            return 0
        chain = sturm_chain(spec.to_dense(fiber))
        return sturm_count(chain)
    ctx = AlgebraicContext(alpha)
    coeffs = R.coeffs_in(fiber)
    P = [ctx.from_int_poly(c.to_dense(outer) if c.depends_on(outer) else ([c.constant_value()] if not c.is_zero else [])) for c in coeffs]
    return kp_count_distinct_real(ctx, P)
