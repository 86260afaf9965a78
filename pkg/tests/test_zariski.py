from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from deltacert.exact import is_negative_definite
from deltacert.family import build_base, build_blowup_ow, build_enlarged
from deltacert.surface import IntersectionLattice, LogDelPezzo, numerically_equal
from deltacert.zariski import NotPseudoEffective, decompose_at, decompose_family, pseff_threshold

from reference_forms import FORMS

S2 = build_base(2)
LAT = S2.lattice


def models(n):
    return {"base": build_base(n), "enlarged": build_enlarged(n), "blowup": build_blowup_ow(n)}


CASES = [("base", "L_xy"), ("base", "R_0"), ("base", "R_1"), ("base", "W"), ("enlarged", "R"), ("blowup", "F")]


class TestPointwise:
    def test_L_before_wall(self):
        z = decompose_at(S2, "L_xy", F(1, 2))
        assert z.negative.is_zero()
        assert z.positive == S2.polarization - LAT.basis("L_xy") * F(1, 2)

    def test_L_after_wall(self):
        z = decompose_at(S2, "L_xy", 1)
        assert z.negative == LAT.divisor({"R_0": F(1, 2), "R_1": F(1, 2)})

    def test_R0_after_wall(self):
        z = decompose_at(S2, "R_0", 1)
        assert z.negative == LAT.divisor({"L_xy": F(5, 6), "R_1": F(5, 6)})

    def test_positive_part_is_nef_and_orthogonal(self):
        for t in (F(0), F(1, 3), F(1), F(3, 2)):
            z = decompose_at(S2, "L_xy", t)
            for nm in LAT.names:
                assert S2.dot(z.positive, LAT.basis(nm)) >= 0
            for nm in z.support:
                assert S2.dot(z.positive, LAT.basis(nm)) == 0

    def test_beyond_threshold(self):
        with pytest.raises(NotPseudoEffective):
            decompose_at(S2, "L_xy", F(3, 2) + F(1, 1000))

    def test_curve_with_nonnegative_square_rejected_from_support(self):
        # a single curve of positive square cannot carry a negative part
        lat = IntersectionLattice.from_pairs(("H",), {("H", "H"): 1})
        toy = LogDelPezzo("P2", lat, lat.zero(), lat.divisor({"H": 3}))
        assert pseff_threshold(toy, "H") == 3
        with pytest.raises(NotPseudoEffective):
            decompose_at(toy, "H", 4)


class TestFamily:
    def test_L_breakpoints(self):
        fam = decompose_family(S2, "L_xy")
        assert fam.breakpoints == [0, F(3, 4), F(3, 2)] and fam.tau == F(3, 2)

    def test_R_breakpoints(self):
        fam = decompose_family(build_enlarged(2), "R")
        assert fam.breakpoints == [0, F(1, 6), F(3, 4)]

    def test_F_breakpoints(self):
        assert decompose_family(build_blowup_ow(2), "F").breakpoints == [0, F(1, 12), F(5, 6)]

    @pytest.mark.parametrize("n", [2, 3, 5, 11])
    def test_thresholds(self, n):
        assert pseff_threshold(build_base(n), "L_xy") == F(3, 2)
        assert pseff_threshold(build_enlarged(n), "R") == F(3, 4)
        assert pseff_threshold(build_base(n), "W") == F(3, 2 * (4 * n + 1))

    @pytest.mark.parametrize("n", [2, 4])
    @pytest.mark.parametrize("curve", sorted(FORMS))
    def test_reference_forms(self, n, curve):
        builder, form, bps = FORMS[curve]
        s = builder(n)
        fam = decompose_family(s, curve)
        assert fam.breakpoints == bps(n)
        for seg in fam.segments:
            for k in range(5):
                t = seg.lo + (seg.hi - seg.lo) * F(k, 4)
                P, N = form(n, t)
                got = fam.at(t)
                assert got.negative == s.lattice.divisor(N)
                assert numerically_equal(got.positive, s.lattice.divisor(P), s.lattice)

    @pytest.mark.parametrize("n", [2, 3, 6])
    @pytest.mark.parametrize("model,curve", CASES)
    def test_structure(self, n, model, curve):
        s = models(n)[model]
        fam = decompose_family(s, curve)
        prev: set = set()
        names = s.lattice.names
        for seg in fam.segments:
            # support grows
            assert prev <= set(seg.support)
            prev = set(seg.support)
            idx = [names.index(c) for c in seg.support]
            if idx:
                assert is_negative_definite([[s.lattice.gram[i][j] for j in idx] for i in idx])
            # N is non-decreasing: affine pieces with non-negative slope
            assert all(p.coeff(1) >= 0 for p in seg.negative)

    @given(st.sampled_from(CASES), st.integers(2, 8), st.fractions(0, 1))
    def test_oracle_equivalence(self, case, n, u):
        model, curve = case
        s = models(n)[model]
        fam = decompose_family(s, curve)
        t = fam.tau * u
        assert fam.at(t) == decompose_at(s, curve, t)
