from __future__ import annotations

import warnings
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from deltacert.exact import (
    DomainError,
    PiecewisePoly,
    Poly,
    SingularMatrixError,
    determinant,
    fmt,
    fmt_short,
    integrate,
    is_negative_definite,
    isolate_roots,
    matvec,
    q,
    roots_in_interval,
    solve_linear,
)

from conftest import rationals

polys = st.lists(rationals(), max_size=5).map(lambda cs: Poly(tuple(cs)))


def simpson(p: Poly, a, b):
    # exact for degree <= 3
    return (b - a) / 6 * (p(a) + 4 * p((a + b) / 2) + p(b))


class TestScalars:
    def test_q_accepts_exact_inputs(self):
        assert q(3) == 3 and q("7/10") == F(7, 10) and q(F(1, 3)) == F(1, 3)

    @pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", True])
    def test_q_rejects_inexact(self, bad):
        with pytest.raises((TypeError, ValueError)):
            q(bad)

    def test_formatting(self):
        assert fmt(F(3)) == "3/1" and fmt(F(-2, 4)) == "-1/2" and fmt(F(0)) == "0/1"
        assert fmt_short(F(3)) == "3" and fmt_short(F(5, 16)) == "5/16"

    @given(rationals(10**6, 10**6))
    def test_fmt_round_trip(self, x):
        assert F(fmt(x)) == x and q(fmt(x)) == x


class TestPoly:
    def test_zero_and_degree(self):
        assert Poly((0, 0)).degree == -1 and Poly((1, 2, 0)).degree == 1

    @given(polys, polys, rationals())
    def test_ring_ops_commute_with_evaluation(self, a, b, t):
        assert (a + b)(t) == a(t) + b(t)
        assert (a - b)(t) == a(t) - b(t)
        assert (a * b)(t) == a(t) * b(t)

    @given(polys, polys)
    def test_divmod_identity(self, a, b):
        assume(not b.is_zero())
        quo, rem = a.divmod(b)
        assert quo * b + rem == a and rem.degree < b.degree

    @given(polys, rationals(), rationals())
    def test_antiderivative_fundamental_theorem(self, p, a, b):
        assert p.antiderivative().derivative() == p
        assert p.integrate(a, b) == -p.integrate(b, a)

    @given(st.lists(rationals(), max_size=4).map(lambda cs: Poly(tuple(cs))), rationals(), rationals())
    def test_integral_matches_simpson(self, p, a, b):
        assert p.integrate(a, b) == simpson(p, a, b)


class TestRoots:
    def test_breakpoint_of_L_family(self):
        assert roots_in_interval(Poly.linear(3, -4), 0, F(3, 2)) == [F(3, 4)]

    def test_breakpoint_of_R_family_at_n2(self):
        assert roots_in_interval(Poly.linear(3, -8), 0, F(3, 2)) == [F(3, 8)]

    def test_no_real_roots(self):
        assert roots_in_interval(Poly((1, 0, 1)), 0, 1) == []

    def test_irrational_roots_isolated(self):
        iso = isolate_roots(Poly((-2, 0, 1)), 0, 2)
        assert iso.rational == () or list(iso.rational) == []
        assert len(iso.irrational) == 1
        lo, hi = iso.irrational[0]
        assert lo * lo < 2 < hi * hi or lo * lo <= 2 <= hi * hi

    @given(st.lists(rationals(20, 6), min_size=1, max_size=4, unique=True))
    def test_recovers_planted_rational_roots(self, roots):
        p = Poly.const(1)
        for r in roots:
            p = p * Poly.linear(-r, 1)
        assert roots_in_interval(p, -100, 100) == sorted(roots)


def _pw(breaks, pieces, **kw):
    return PiecewisePoly(tuple(F(b) for b in breaks), tuple(pieces), **kw)


class TestPiecewise:
    def test_unit_constant(self):
        assert integrate(_pw([0, 1], [Poly.const(1)]), 0, 1) == 1

    def test_single_quadratic_piece(self):
        # -(3-2t)^3/96 between 3/4 and 3/2
        p = Poly.linear(3, -2) ** 2 * F(1, 16)
        f = _pw([F(3, 4), F(3, 2)], [p])
        assert integrate(f, F(3, 4), F(3, 2)) == F(9, 256)
        assert integrate(f, F(3, 4), F(3, 2)) == simpson(p, F(3, 4), F(3, 2))

    def test_L_volume_integral_at_n2(self):
        # vol(A - tL_xy) at n = 2 integrates to A^2 * S = 5/16 * 7/10
        first = Poly((F(5, 16), F(-1, 12), F(-7, 36)))  # A^2 - 2t A·L + t^2 L^2
        second = Poly.linear(3, -2) ** 2 * F(1, 16)
        f = _pw([0, F(3, 4), F(3, 2)], [first, second])
        assert integrate(f, 0, F(3, 2)) == F(7, 32)
        assert simpson(first, 0, F(3, 4)) + simpson(second, F(3, 4), F(3, 2)) == F(7, 32)

    def test_discontinuity_rejected(self):
        with pytest.raises(ValueError, match="disagree"):
            _pw([0, 1, 2], [Poly.const(1), Poly.const(2)])

    def test_domain(self):
        f = _pw([0, 1], [Poly.const(1)])
        with pytest.raises(DomainError):
            f(2)
        g = _pw([0, 1], [Poly.const(1)], zero_tail=True)
        assert g(2) == 0 and integrate(g, 0, 5) == 1

    def test_high_degree_warns(self):
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter("always")
            _pw([0, 1], [Poly((0, 0, 0, 0, 0, 1))])
        assert any("degree" in str(x.message) for x in w)

    @given(st.lists(polys, min_size=1, max_size=3), st.data())
    def test_integral_additive(self, pieces, data):
        breaks = [F(0)]
        for _ in pieces:
            breaks.append(breaks[-1] + data.draw(rationals(5, 4, min_value=F(1, 4))))
        f = _pw(breaks, pieces, continuous=False)
        a, b, c = sorted(data.draw(st.lists(st.sampled_from(breaks) | rationals(5, 4), min_size=3, max_size=3)))
        assume(a >= f.lo and c <= f.hi)
        assert integrate(f, a, b) + integrate(f, b, c) == integrate(f, a, c)


class TestLinearAlgebra:
    def test_identity(self):
        assert solve_linear([[1, 0], [0, 1]], [F(1, 2), -3]) == [F(1, 2), -3]

    def test_homogeneous_gram_block(self):
        M = [[F(-7, 36), F(1, 9)], [F(1, 9), F(-5, 18)]]
        assert solve_linear(M, [0, 0]) == [0, 0]
        assert is_negative_definite(M)

    def test_N_coefficients_of_L_family(self):
        # orthogonality P·R_i = 0 on {R_0, R_1} at n = 2 gives (4t - 3)/2
        M = [[F(-5, 18), F(2, 9)], [F(2, 9), F(-5, 18)]]
        for t in (F(3, 4), F(1), F(5, 4), F(3, 2)):
            rhs = [(3 - 4 * t) / 36] * 2
            assert solve_linear(M, rhs) == [(4 * t - 3) / 2] * 2

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            solve_linear([[1, 2], [2, 4]], [0, 1])
        assert determinant([[1, 2], [2, 4]]) == 0

    @given(st.integers(1, 4).flatmap(
        lambda n: st.tuples(st.lists(st.lists(rationals(9, 5), min_size=n, max_size=n), min_size=n, max_size=n),
                            st.lists(rationals(), min_size=n, max_size=n))))
    def test_solve_round_trip(self, Mx):
        M, x = Mx
        assume(determinant(M) != 0)
        assert solve_linear(M, matvec(M, x)) == x

    def test_definiteness(self):
        assert not is_negative_definite([[-1, 2], [2, -1]])
        assert not is_negative_definite([[F(1, 2)]])
