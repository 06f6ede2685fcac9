"""Exact sparse multivariate polynomial arithmetic over the integers.

Polynomials are immutable maps from exponent vectors to nonzero arbitrary
precision integer coefficients, over an ordered tuple of variable names.
The canonical variable order for family inputs is x > y > t > s; unit
normalization (`normalize`) is defined against graded-lexicographic order
in the polynomial's own variable order, so "equal up to a constant" is
testable as exact equality of normalized values.

Rational scalars are `fractions.Fraction` throughout; they satisfy the
reduced-form / positive-denominator invariants natively.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from math import lcm as int_lcm

NEG_INF = float("-inf")


class MPoly:
    """Sparse multivariate polynomial with integer coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms):
        self.vars = tuple(variables)
        self.terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # -- construction ------------------------------------------------

    @classmethod
    def zero(cls, variables=()):
        return cls(variables, {})

    @classmethod
    def const(cls, c, variables=()):
        variables = tuple(variables)
        if c == 0:
            return cls(variables, {})
        return cls(variables, {(0,) * len(variables): int(c)})

    @classmethod
    def var(cls, name, variables=None):
        if variables is None:
            variables = (name,)
        variables = tuple(variables)
        e = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"variable {name!r} not in universe {variables}")
        return cls(variables, {e: 1})

    @classmethod
    def from_dense(cls, coeffs, name):
        """Univariate polynomial from a low-to-high coefficient list."""
        return cls((name,), {(i,): int(c) for i, c in enumerate(coeffs) if c})

    # -- basic queries -----------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if self.is_zero:
            return 0
        ((e, c),) = self.terms.items()
        if any(e):
            raise ValueError("not a constant polynomial")
        return c

    def degree(self, name):
        """Degree in one variable; -inf for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def variables_used(self):
        used = set()
        for e in self.terms:
            for v, k in zip(self.vars, e):
                if k:
                    used.add(v)
        return used

    def depends_on(self, name):
        return name in self.variables_used()

    def leading_term(self):
        """(exponent, coefficient) maximal under graded-lex in self.vars."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    def integer_content(self):
        g = 0
        for c in self.terms.values():
            g = int_gcd(g, abs(c))
            if g == 1:
                return 1
        return g

    # -- alignment of variable universes -----------------------------

    def with_vars(self, variables):
        """Reindex onto a universe that contains every used variable."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        n = len(variables)
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for v, k in zip(self.vars, e):
                if k:
                    if v not in pos:
                        raise ValueError(f"variable {v!r} missing from {variables}")
                    ne[pos[v]] = k
            terms[tuple(ne)] = terms.get(tuple(ne), 0) + c
        return MPoly(variables, terms)

    def _joint(self, other):
        if self.vars == other.vars:
            return self, other
        merged = list(self.vars)
        for v in other.vars:
            if v not in merged:
                merged.append(v)
        return self.with_vars(merged), other.with_vars(merged)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = MPoly.const(other, self.vars)
        p, q = self._joint(other)
        terms = dict(p.terms)
        for e, c in q.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MPoly(p.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = MPoly.const(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return MPoly.zero(self.vars)
            return MPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        p, q = self._joint(other)
        if len(p.terms) < len(q.terms):
            p, q = q, p
        out = {}
        pitems = list(p.terms.items())
        for eq, cq in q.terms.items():
            for ep, cp in pitems:
                key = tuple(a + b for a, b in zip(ep, eq))
                v = out.get(key)
                if v is None:
                    out[key] = cp * cq
                else:
                    v += cp * cq
                    if v:
                        out[key] = v
                    else:
                        del out[key]
        return MPoly(p.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.is_zero
            other = MPoly.const(other, self.vars)
        if not isinstance(other, MPoly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        p, q = self._joint(other)
        return p.terms == q.terms

    def __hash__(self):
        if self._hash is None:
            canon = frozenset(
                (tuple((v, k) for v, k in zip(self.vars, e) if k), c)
                for e, c in self.terms.items()
            )
            self._hash = hash(canon)
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- conversion ---------------------------------------------------

    def to_dense(self, name):
        """Low-to-high integer coefficient list of a univariate polynomial."""
        extra = self.variables_used() - {name}
        if extra:
            raise ValueError(f"polynomial also depends on {sorted(extra)}")
        if self.is_zero:
            return []
        if name not in self.vars:
            return [self.constant_value()]
        i = self.vars.index(name)
        deg = max(e[i] for e in self.terms)
        out = [0] * (deg + 1)
        for e, c in self.terms.items():
            out[e[i]] += c
        while out and out[-1] == 0:
            out.pop()
        return out

    def coeffs_in(self, name):
        """Low-to-high list of MPoly coefficients w.r.t. one variable.

        The coefficients live in the universe with `name` removed.
        """
        if name not in self.vars:
            return [] if self.is_zero else [self]
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1 :]
        if self.is_zero:
            return []
        deg = max(e[i] for e in self.terms)
        buckets = [dict() for _ in range(deg + 1)]
        for e, c in self.terms.items():
            re = e[:i] + e[i + 1 :]
            b = buckets[e[i]]
            b[re] = b.get(re, 0) + c
        out = [MPoly(rest, b) for b in buckets]
        while out and out[-1].is_zero:
            out.pop()
        return out

    @classmethod
    def from_coeffs(cls, coeffs, name, position=0):
        """Rebuild from MPoly coefficients; `name` inserted at `position`."""
        total = None
        for i, c in enumerate(coeffs):
            if c.is_zero:
                continue
            vs = list(c.vars)
            vs.insert(position, name)
            part = c.with_vars(c.vars)  # copy reference
            terms = {}
            for e, v in part.terms.items():
                ne = e[:position] + (i,) + e[position:]
                terms[ne] = v
            piece = cls(tuple(vs), terms)
            total = piece if total is None else total + piece
        if total is None:
            return cls.zero((name,))
        return total

    # -- printing -----------------------------------------------------

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self._sorted_terms():
            factors = []
            for v, k in zip(self.vars, e):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = "*".join([str(mag)] + factors)
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"MPoly({str(self)!r}, vars={self.vars})"


# -- module-level operations ------------------------------------------


def add(p, q):
    return p + q


def mul(p, q):
    return p * q


def derivative(p, name):
    """Formal partial derivative with respect to one variable."""
    if name not in p.vars:
        return MPoly.zero(p.vars)
    i = p.vars.index(name)
    terms = {}
    for e, c in p.terms.items():
        k = e[i]
        if k:
            ne = e[:i] + (k - 1,) + e[i + 1 :]
            terms[ne] = terms.get(ne, 0) + c * k
    return MPoly(p.vars, terms)


def specialize(p, bindings):
    """Evaluate some variables at rationals.

    Returns `(q, unit)` with `q` an integer polynomial in the unbound
    variables and `unit` a positive rational such that unit * q equals the
    exact substitution.
    """
    bindings = {v: Fraction(val) for v, val in bindings.items()}
    for v in bindings:
        if v not in p.vars:
            raise ValueError(f"bound variable {v!r} not in universe {p.vars}")
    keep = [v for v in p.vars if v not in bindings]
    keep_idx = [i for i, v in enumerate(p.vars) if v not in bindings]
    bound_idx = [(i, bindings[v]) for i, v in enumerate(p.vars) if v in bindings]
    acc = {}
    for e, c in p.terms.items():
        val = Fraction(c)
        for i, r in bound_idx:
            if e[i]:
                val *= r ** e[i]
        if not val:
            continue
        ne = tuple(e[i] for i in keep_idx)
        s = acc.get(ne, Fraction(0)) + val
        if s:
            acc[ne] = s
        else:
            acc.pop(ne, None)
    if not acc:
        return MPoly.zero(tuple(keep)), Fraction(1)
    num_gcd = 0
    den_lcm = 1
    for r in acc.values():
        num_gcd = int_gcd(num_gcd, abs(r.numerator))
        den_lcm = int_lcm(den_lcm, r.denominator)
    unit = Fraction(num_gcd, den_lcm)
    terms = {}
    for ne, r in acc.items():
        q = r / unit
        assert q.denominator == 1
        terms[ne] = q.numerator
    return MPoly(tuple(keep), terms), unit


def leading_coefficient(p, name):
    """(coefficient of the highest power of `name`, that degree).

    The coefficient is an MPoly over the remaining variables; the zero
    polynomial reports degree -inf.
    """
    if p.is_zero:
        return MPoly.zero(tuple(v for v in p.vars if v != name)), NEG_INF
    coeffs = p.coeffs_in(name)
    return coeffs[-1], len(coeffs) - 1


def normalize(p):
    """Divide out integer content and fix the graded-lex leading sign."""
    if p.is_zero:
        raise ValueError("cannot normalize the zero polynomial")
    content = p.integer_content()
    _, lc = p.leading_term()
    if lc < 0:
        content = -content
    if content == 1:
        return p
    return MPoly(p.vars, {e: c // content for e, c in p.terms.items()})


def evaluate(p, bindings):
    """Full evaluation at rationals; every used variable must be bound."""
    q, unit = specialize(p, {v: bindings[v] for v in p.vars if v in bindings})
    if not q.is_constant():
        raise ValueError("evaluation left free variables")
    return unit * q.constant_value()
