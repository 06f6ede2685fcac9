import random
from fractions import Fraction

import pytest

from curvefam.polycore import (
    MPoly,
    NEG_INF,
    derivative,
    evaluate,
    leading_coefficient,
    normalize,
    specialize,
)

V = ("x", "y", "t", "s")
x, y, t, s = (MPoly.var(v, V) for v in V)


def rand_poly(rng, max_deg=6, n_terms=5, coeff=9):
    d = {}
    for _ in range(n_terms):
        e = tuple(rng.randint(0, max_deg) for _ in V)
        d[e] = d.get(e, 0) + rng.randint(-coeff, coeff)
    return MPoly(V, d)


class TestAdd:
    def test_cancellation(self):
        assert (x + 1) + (-x) == MPoly.const(1, V)

    def test_identity(self):
        p = x**2 * y - 3 * t
        assert p + MPoly.zero(V) == p

    def test_disjoint_supports(self):
        assert t**2 + s**2 == MPoly(V, {(0, 0, 2, 0): 1, (0, 0, 0, 2): 1})


class TestMul:
    def test_difference_of_squares(self):
        assert (x - 1) * (x + 1) == x**2 - 1

    def test_identity(self):
        p = 5 * x * y - s
        assert p * MPoly.const(1, V) == p

    def test_params(self):
        assert (t + s) * (t - s) == t**2 - s**2


class TestDerivative:
    def test_simple(self):
        assert derivative(y**2 - x, "y") == 2 * y

    def test_constant(self):
        assert derivative(MPoly.const(7, V), "x").is_zero

    def test_cassini_s_derivative(self, cassini):
        assert derivative(cassini, "s") == -4 * s**3


class TestSpecialize:
    def test_single_binding(self):
        p, unit = specialize(x**2 + y**2 - t, {"t": 1})
        assert p == (x**2 + y**2 - 1).with_vars(("x", "y", "s"))
        assert unit == 1

    def test_denominator_clearing(self):
        p, unit = specialize(t * x, {"t": Fraction(1, 2)})
        assert p == MPoly.var("x", ("x", "y", "s")) and unit == Fraction(1, 2)

    def test_linear_system_member_at_origin(self, linear_system):
        p, unit = specialize(linear_system, {"t": 0, "s": 0})
        assert unit == 1
        assert p == (x**2 - 1).with_vars(("x", "y"))


class TestLeadingCoefficient:
    def test_cassini(self, cassini):
        lc, deg = leading_coefficient(cassini, "y")
        assert deg == 4 and lc == MPoly.const(1, ("x", "t", "s"))

    def test_degree_zero(self):
        lc, deg = leading_coefficient(x**2 - 1, "y")
        assert deg == 0 and lc == (x**2 - 1).with_vars(("x", "t", "s"))

    def test_param_coefficient(self):
        lc, deg = leading_coefficient(s * y**3 + t * y, "y")
        assert deg == 3 and lc == MPoly.var("s", ("x", "t", "s"))

    def test_zero_polynomial_sentinel(self):
        lc, deg = leading_coefficient(MPoly.zero(V), "y")
        assert lc.is_zero and deg == NEG_INF


class TestNormalize:
    def test_sign(self):
        assert normalize(-4 * x) == x

    def test_content(self):
        assert normalize(6 * t**2 - 6 * s**2) == t**2 - s**2

    def test_idempotent(self):
        p = t**2 - s**2
        assert normalize(p) == p

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            normalize(MPoly.zero(V))


class TestRingAxioms:
    def test_axioms_randomized(self):
        rng = random.Random(20240811)
        for _ in range(1000):
            p, q, r = rand_poly(rng), rand_poly(rng), rand_poly(rng)
            assert p + q == q + p
            assert p * q == q * p
            assert (p + q) + r == p + (q + r)
            assert p * (q + r) == p * q + p * r
        # associativity of mul on a lighter budget (cubic cost)
        for _ in range(200):
            p, q, r = (rand_poly(rng, 3, 3) for _ in range(3))
            assert (p * q) * r == p * (q * r)


class TestSpecializationHomomorphism:
    def test_product_rule(self):
        rng = random.Random(4)
        for _ in range(200):
            p, q = rand_poly(rng, 3, 4), rand_poly(rng, 3, 4)
            b = {
                "t": Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                "s": Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
            }
            sp, up = specialize(p, b)
            sq, uq = specialize(q, b)
            spq, upq = specialize(p * q, b)
            # unit * poly is the exact substitution, so cross-multiplied
            # integer identities must hold: (up*uq) * (sp*sq) == upq * spq
            a = up * uq
            assert (sp * sq) * (a.numerator * upq.denominator) == spq * (
                upq.numerator * a.denominator
            )


class TestLeibniz:
    def test_product_rule(self):
        rng = random.Random(5)
        for _ in range(300):
            p, q = rand_poly(rng, 4, 4), rand_poly(rng, 4, 4)
            v = rng.choice(V)
            lhs = derivative(p * q, v)
            rhs = derivative(p, v) * q + p * derivative(q, v)
            assert lhs == rhs


class TestNormalizeScaling:
    def test_scale_invariance(self):
        rng = random.Random(6)
        for _ in range(200):
            p = rand_poly(rng)
            if p.is_zero:
                continue
            c = rng.choice([-7, -3, -1, 2, 5, 12])
            assert normalize(p * c) == normalize(p)
            assert normalize(normalize(p)) == normalize(p)


class TestEvaluate:
    def test_full_evaluation(self):
        val = evaluate(x**2 + 3 * t, {"x": Fraction(1, 2), "y": 0, "t": 2, "s": 0})
        assert val == Fraction(25, 4)
