"""Elimination-theory kernel over exact integer polynomials.

Provides multivariate gcd (primitive PRS on the recursive representation),
content / primitive-part splits, square-free parts, resultants by
subresultant polynomial remainder sequence, discriminants, and removal of
single-variable factors.

The resultant follows the Sylvester-determinant convention with the rows of
the first argument listed first; `bareiss_sylvester_resultant` evaluates
that determinant directly by fraction-free elimination and serves as the
cross-check oracle and fallback for the PRS path.
"""

from __future__ import annotations

from math import gcd as int_gcd

from .polycore import MPoly, derivative, normalize

try:  # GMP-backed integer gcd/multiplication for the heuristic fast path
    from gmpy2 import gcd as _gmp_gcd, mpz as _mpz

    def _big_int_gcd(a, b):
        return int(_gmp_gcd(_mpz(a), _mpz(b)))

except ImportError:  # pragma: no cover - mirror env ships gmpy2
    _mpz = int
    _big_int_gcd = int_gcd


class ExactDivisionError(ArithmeticError):
    """Raised when a supposedly exact polynomial division leaves a remainder."""


# -- exact division ----------------------------------------------------


def exact_div(p, q):
    """Exact quotient p / q in Z[vars]; raises ExactDivisionError otherwise."""
    if q.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if p.is_zero:
        return MPoly.zero(p.vars)
    if q.is_constant():
        d = q.constant_value()
        terms = {}
        for e, c in p.terms.items():
            if c % d:
                raise ExactDivisionError(f"{c} not divisible by {d}")
            terms[e] = c // d
        return MPoly(p.vars, terms)
    p, q = p._joint(q)
    qe, qc = q.leading_term()
    rem = dict(p.terms)
    out = {}
    qitems = list(q.terms.items())
    while rem:
        re = max(rem, key=lambda e: (sum(e), e))
        rc = rem[re]
        diff = tuple(a - b for a, b in zip(re, qe))
        if any(d < 0 for d in diff) or rc % qc:
            raise ExactDivisionError("inexact polynomial division")
        coef = rc // qc
        out[diff] = coef
        for ee, cc in qitems:
            key = tuple(a + b for a, b in zip(diff, ee))
            v = rem.get(key, 0) - coef * cc
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return MPoly(p.vars, out)


def divides(q, p):
    try:
        exact_div(p, q)
        return True
    except ExactDivisionError:
        return False


# -- dense univariate helpers (integer coefficients) -------------------


def _dense_strip(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _dense_content(f):
    g = 0
    for c in f:
        g = int_gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def _dense_primitive(f):
    g = _dense_content(f)
    if g in (0, 1):
        return list(f)
    return [c // g for c in f]


def _dense_prem(f, g):
    """Pseudo-remainder of dense integer polynomials, lc(g)^(df-dg+1) f mod g."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    df = len(f) - 1
    if df < dg:
        return f
    for _ in range(df - dg + 1):
        df = len(f) - 1
        if df < dg:
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


def _dense_gcd(f, g):
    """Gcd of dense integer polynomial lists, primitive with positive lc."""
    f = _dense_strip(list(f))
    g = _dense_strip(list(g))
    if not f:
        res = _dense_primitive(g)
    elif not g:
        res = _dense_primitive(f)
    else:
        cf, cg = _dense_content(f), _dense_content(g)
        cont = int_gcd(cf, cg)
        f = [c // cf for c in f]
        g = [c // cg for c in g]
        if len(f) < len(g):
            f, g = g, f
        while g:
            r = _dense_prem(f, g)
            f, g = g, _dense_primitive(_dense_strip(r))
        if len(f) == 1:
            res = [cont]
        else:
            res = [c * cont for c in f] if cont != 1 else f
    if res and res[-1] < 0:
        res = [-c for c in res]
    return res


# -- multivariate gcd ---------------------------------------------------


def _main_variable(p, q):
    for v in p.vars:
        if p.depends_on(v) or q.depends_on(v):
            return v
    for v in q.vars:
        if q.depends_on(v):
            return v
    return None


def gcd(p, q):
    """A greatest common divisor in Z[vars], in `normalize` form.

    gcd(0, 0) is rejected; gcd(p, 0) = normalize(p).
    """
    g = gcd_full(p, q)
    return normalize(g)


def gcd_full(p, q):
    """Gcd over Z including the integer content, with positive leading sign.

    Tries the verified evaluation-reconstruction heuristic first (its
    exact-division check makes it unconditionally sound) and falls back to
    the primitive PRS.
    """
    if p.is_zero and q.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero:
        return _positive_lc(q)
    if q.is_zero:
        return _positive_lc(p)
    p, q = p._joint(q)
    used_p = p.variables_used()
    used_q = q.variables_used()
    if not used_p or not used_q:
        g = int_gcd(p.integer_content(), q.integer_content())
        return MPoly.const(g, p.vars)
    joint = used_p | used_q
    if len(joint) == 1:
        v = next(iter(joint))
        g = _dense_gcd(p.to_dense(v), q.to_dense(v))
        return MPoly.from_dense(g, v).with_vars(p.vars)
    g = _heuristic_gcd(p, q)
    if g is not None:
        return _positive_lc(g.with_vars(p.vars))
    return _prs_gcd(p, q)


def _positive_lc(p):
    _, lc = p.leading_term()
    return -p if lc < 0 else p


def _prs_gcd(p, q):
    """Primitive PRS gcd on the recursive representation."""
    v = _main_variable(p, q)
    cp = p.coeffs_in(v)
    cq = q.coeffs_in(v)
    cont_p = _gcd_list(cp)
    cont_q = _gcd_list(cq)
    d = gcd_full(cont_p, cont_q)
    fp = [exact_div(c, cont_p) for c in cp]
    fq = [exact_div(c, cont_q) for c in cq]
    g = _primitive_prs_gcd(fp, fq)
    rest = tuple(w for w in p.vars if w != v)
    result = MPoly.from_coeffs([gi.with_vars(rest) for gi in g], v) * d
    return _positive_lc(result.with_vars(p.vars))


# -- heuristic gcd (Char-Geddes-Gonnet style, division-verified) ---------


_HEU_ATTEMPTS = 6


def _poly_height(p):
    return max(abs(c) for c in p.terms.values())


def _eval_var_big(p, name, xi):
    """Substitute one variable by a (large) integer, exactly."""
    i = p.vars.index(name)
    rest = p.vars[:i] + p.vars[i + 1 :]
    deg = p.degree(name)
    powers = [1] * (deg + 1)
    x = _mpz(xi)
    for k in range(1, deg + 1):
        powers[k] = powers[k - 1] * x
    acc = {}
    for e, c in p.terms.items():
        re = e[:i] + e[i + 1 :]
        acc[re] = acc.get(re, 0) + c * powers[e[i]]
    return MPoly(rest, {e: int(c) for e, c in acc.items() if c})


def _balanced_digits(c, xi):
    """Base-xi digits of c with digits in (-xi/2, xi/2]."""
    digits = []
    half = xi // 2
    while c:
        d = c % xi
        if d > half:
            d -= xi
        digits.append(d)
        c = (c - d) // xi
    return digits


def _reconstruct_var(g_img, name, xi, position):
    """Invert `_eval_var_big`: lift integer-image coefficients to `name`."""
    terms = {}
    for e, c in g_img.terms.items():
        for k, d in enumerate(_balanced_digits(c, xi)):
            if d:
                ne = e[:position] + (k,) + e[position:]
                terms[ne] = terms.get(ne, 0) + d
    vs = list(g_img.vars)
    vs.insert(position, name)
    return MPoly(tuple(vs), terms)


def _heuristic_gcd(p, q, depth=0):
    """Verified heuristic gcd; returns None when the heuristic gives up."""
    used = p.variables_used() | q.variables_used()
    if not used:
        return MPoly.const(int_gcd(p.integer_content(), q.integer_content()), p.vars)
    if len(used) == 1:
        v = next(iter(used))
        dp, dq = p.to_dense(v), q.to_dense(v)
        if max(_poly_height(p), _poly_height(q)).bit_length() > 2048:
            g = _heuristic_gcd_dense(dp, dq)
            if g is not None:
                return MPoly.from_dense(g, v).with_vars(p.vars)
        return MPoly.from_dense(_dense_gcd(dp, dq), v).with_vars(p.vars)
    cont_p = p.integer_content()
    cont_q = q.integer_content()
    cg = int_gcd(cont_p, cont_q)
    pp = MPoly(p.vars, {e: c // cont_p for e, c in p.terms.items()})
    qq = MPoly(q.vars, {e: c // cont_q for e, c in q.terms.items()})
    v = min(used, key=lambda w: max(pp.degree(w), qq.degree(w)))
    xi = 2 * min(_poly_height(pp), _poly_height(qq)) + 29
    for _ in range(_HEU_ATTEMPTS):
        pe = _eval_var_big(pp, v, xi)
        qe = _eval_var_big(qq, v, xi)
        if not (pe.is_zero or qe.is_zero):
            ge = _heuristic_gcd(pe, qe, depth + 1)
            if ge is not None and not ge.is_zero:
                pos = pp.vars.index(v)
                cand = _reconstruct_var(ge, v, xi, min(pos, len(ge.vars)))
                if not cand.is_zero:
                    content = cand.integer_content()
                    _, lc = cand.leading_term()
                    if lc < 0:
                        content = -content
                    if content != 1:
                        cand = MPoly(cand.vars, {e: c // content for e, c in cand.terms.items()})
                    if divides(cand, pp) and divides(cand, qq):
                        return cand * cg
        xi = (xi * 73) // 32 + 31
    return None


def _heuristic_gcd_dense(f, g):
    """Univariate heuristic gcd on dense integer lists, division-verified."""
    hf = max(abs(c) for c in f)
    hg = max(abs(c) for c in g)
    xi = 2 * min(hf, hg) + 29
    for _ in range(_HEU_ATTEMPTS):
        a = _dense_eval_int(f, xi)
        b = _dense_eval_int(g, xi)
        if a and b:
            gi = _big_int_gcd(a, b)
            cand = _dense_primitive(_balanced_digits(gi, xi))
            if cand:
                if cand[-1] < 0:
                    cand = [-c for c in cand]
                if _dense_divides(cand, f) and _dense_divides(cand, g):
                    return cand
        xi = (xi * 73) // 32 + 31
    return None


def _dense_eval_int(f, xi):
    acc = _mpz(0)
    x = _mpz(xi)
    for c in reversed(f):
        acc = acc * x + c
    return int(acc)


def _dense_divides(g, f):
    """Exact divisibility test of dense integer polynomials."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while len(f) - 1 >= dg:
        if not f:
            return True
        top = f[-1]
        if top % lg:
            return False
        coef = top // lg
        df = len(f) - 1
        f.pop()
        for i in range(dg):
            f[df - dg + i] -= coef * g[i]
        _dense_strip(f)
        if not f:
            return True
    return not f


def _gcd_list(polys):
    g = None
    for c in polys:
        if c.is_zero:
            continue
        g = _positive_lc(c) if g is None else gcd_full(g, c)
        if g.is_constant() and g.constant_value() == 1:
            return g
    if g is None:
        raise ValueError("gcd of all-zero list")
    return g


def _rp_strip(f):
    while f and f[-1].is_zero:
        f.pop()
    return f


def _rp_prem(f, g):
    """Pseudo-remainder on recursive (coefficient-list) representation."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    df = len(f) - 1
    for _ in range(df - dg + 1):
        df = len(f) - 1
        if df < dg:
            f = [c * lg for c in f]
            continue
        top = f[-1]
        f = [c * lg for c in f[:-1]]
        for i in range(dg):
            f[df - dg + i] = f[df - dg + i] - top * g[i]
        _rp_strip(f)
        if not f:
            break
    return f


def _rp_primitive(f):
    if not f:
        return f
    cont = _gcd_list(f)
    if cont.is_constant() and cont.constant_value() == 1:
        return f
    return [exact_div(c, cont) for c in f]


def _primitive_prs_gcd(f, g):
    """Primitive PRS gcd of primitive coefficient lists in one variable."""
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = _rp_strip(_rp_prem(f, g))
        f, g = g, _rp_primitive(r)
    if len(f) == 1:
        one = MPoly.const(1, f[0].vars)
        return [one]
    return f


# -- content and primitive part -----------------------------------------


def content(p, name):
    """Content of p as a polynomial in `name`: gcd of its coefficients.

    Includes the integer content; result is an MPoly over the remaining
    variables. Zero input is rejected.
    """
    if p.is_zero:
        raise ValueError("content of the zero polynomial")
    coeffs = p.coeffs_in(name)
    return _gcd_list(coeffs)


def primitive_part(p, name):
    return exact_div(p, content(p, name).with_vars(p.vars))


# -- square-free part ----------------------------------------------------


def squarefree_part(p, variables=None):
    """Product of the distinct irreducible factors of p, in normalize form.

    `variables` orders the content/primitive processing; every variable
    occurring in p has its repeated factors stripped regardless.
    """
    if p.is_zero:
        raise ValueError("square-free part of the zero polynomial")
    used = p.variables_used()
    order = [v for v in (variables or ()) if v in used]
    order += [v for v in p.vars if v in used and v not in order]
    work = p
    result = MPoly.const(1, p.vars)
    for v in order:
        if not work.depends_on(v):
            continue
        cont = content(work, v).with_vars(p.vars)
        prim = exact_div(work, cont)
        g = gcd(prim, derivative(prim, v))
        result = result * exact_div(prim, g.with_vars(p.vars))
        work = cont
        if work.is_constant():
            break
    return normalize(result)


def is_squarefree(p):
    if p.is_zero:
        return False
    if p.is_constant():
        return True
    return normalize(p) == squarefree_part(p)


# -- resultants -----------------------------------------------------------


def resultant(p, q, name):
    """Resultant of p and q with respect to `name`.

    Convention: the determinant of the Sylvester matrix whose first
    deg(q) rows carry the coefficients of p. Computed by subresultant PRS.
    Degenerate inputs (either polynomial zero) return the zero polynomial.
    """
    if p.is_zero or q.is_zero:
        return MPoly.zero(p.vars if not p.is_zero else q.vars)
    p, q = p._joint(q)
    dp = p.degree(name)
    dq = q.degree(name)
    if dp <= 0 and dq <= 0:
        raise ValueError(f"neither argument has positive degree in {name!r}")
    if dq == 0:
        return q ** dp
    if dp == 0:
        return p ** dq
    sign = 1
    if dp < dq:
        p, q = q, p
        if (dp * dq) % 2:
            sign = -1
    rest = tuple(v for v in p.vars if v != name)
    A = [c.with_vars(rest) for c in p.coeffs_in(name)]
    B = [c.with_vars(rest) for c in q.coeffs_in(name)]
    res = _subresultant_prs_resultant(A, B, rest)
    if sign < 0:
        res = -res
    return res.with_vars(p.vars)


def _subresultant_prs_resultant(A, B, rest):
    """Resultant of coefficient lists with deg A >= deg B >= 1."""
    one = MPoly.const(1, rest)
    g, h = one, one
    s = 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if (da % 2) and (db % 2):
            s = -s
        R = _rp_strip(_rp_prem(A, B))
        if not R:
            return MPoly.zero(rest)
        A, prevB = B, R
        denom = g * h**delta
        B = [exact_div(c, denom) for c in prevB]
        g = A[-1]
        if delta >= 1:
            h = exact_div(g**delta, h ** (delta - 1)) if delta > 1 else g
        if len(B) - 1 == 0:
            dA = len(A) - 1
            num = B[0] ** dA
            res = exact_div(num, h ** (dA - 1)) if dA > 1 else num
            return res if s > 0 else -res


def discriminant(p, name):
    """Res(p, dp/dname) without dividing out the leading coefficient."""
    if p.is_zero or p.degree(name) < 1:
        raise ValueError(f"discriminant requires positive degree in {name!r}")
    return resultant(p, derivative(p, name), name)


# -- Sylvester / Bareiss oracle -------------------------------------------


def sylvester_matrix(p, q, name):
    """Sylvester matrix with the rows of p listed first (deg q of them)."""
    p, q = p._joint(q)
    rest = tuple(v for v in p.vars if v != name)
    A = [c.with_vars(rest) for c in p.coeffs_in(name)]
    B = [c.with_vars(rest) for c in q.coeffs_in(name)]
    m, n = len(A) - 1, len(B) - 1
    size = m + n
    zero = MPoly.zero(rest)
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(A)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(B)):
            row[i + j] = c
        rows.append(row)
    return rows


def bareiss_determinant(matrix):
    """Fraction-free determinant of a square matrix of MPoly entries."""
    n = len(matrix)
    if n == 0:
        return MPoly.const(1)
    m = [row[:] for row in matrix]
    vars_ = m[0][0].vars
    sign = 1
    prev = MPoly.const(1, vars_)
    for k in range(n - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, n):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MPoly.zero(vars_)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev)
            m[i][k] = MPoly.zero(vars_)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def bareiss_sylvester_resultant(p, q, name):
    """Resultant as the Bareiss determinant of the Sylvester matrix."""
    if p.is_zero or q.is_zero:
        return MPoly.zero(p.vars if not p.is_zero else q.vars)
    p, q = p._joint(q)
    dp, dq = p.degree(name), q.degree(name)
    if dp <= 0 and dq <= 0:
        raise ValueError(f"neither argument has positive degree in {name!r}")
    if dq == 0:
        return q ** dp
    if dp == 0:
        return p ** dq
    det = bareiss_determinant(sylvester_matrix(p, q, name))
    return det.with_vars(p.vars)


# -- univariate-factor removal ---------------------------------------------


def remove_univariate_factors(p, name):
    """Split p into (part with no `name`-only factor, the `name`-only part).

    The second component collects every factor depending on `name` alone
    (iterated content over the other variables); the product of the two
    outputs is exactly p.
    """
    if p.is_zero:
        raise ValueError("cannot split the zero polynomial")
    c = p
    for v in p.vars:
        if v == name:
            continue
        if c.is_constant() or not c.depends_on(v):
            continue
        c = content(c, v)
    c = c.with_vars(p.vars)
    if c.is_constant():
        return p, MPoly.const(c.constant_value(), p.vars)
    return exact_div(p, c), c
