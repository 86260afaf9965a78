from __future__ import annotations

import json
from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from deltacert.family import build_base, build_blowup_ow, build_enlarged
from deltacert.io import SurfaceFormatError, dumps_surface, surface_from_dict, surface_to_dict
from deltacert.surface import (
    DivisorClass,
    IntersectionLattice,
    LogDelPezzo,
    PointOnCurve,
    QuotientSingularity,
    intersect,
    numerically_equal,
    validate,
)

from conftest import rationals

S2 = build_base(2)
LAT = S2.lattice


def vectors(k):
    return st.lists(rationals(9, 6), min_size=k, max_size=k).map(lambda v: DivisorClass(tuple(v)))


class TestLattice:
    def test_polarization_volume_at_n2(self):
        assert S2.volume_A2 == F(5, 16)

    def test_family_pairing(self):
        assert intersect(LAT.basis("L_xy"), LAT.basis("R_0"), LAT) == F(1, 9)

    def test_zero_vector(self):
        assert intersect(LAT.zero(), S2.polarization, LAT) == 0

    def test_unknown_curve(self):
        with pytest.raises(KeyError):
            LAT.curve("nope")

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            intersect(DivisorClass((1, 2)), S2.polarization, LAT)

    @given(vectors(4), vectors(4), vectors(4), rationals())
    def test_symmetric_bilinear(self, a, b, c, k):
        assert intersect(a, b, LAT) == intersect(b, a, LAT)
        assert intersect(a + b * k, c, LAT) == intersect(a, c, LAT) + k * intersect(b, c, LAT)

    def test_W_is_numerically_a_multiple_of_Cx(self):
        Cx = LAT.divisor({"L_xy": 1, "R_0": 1, "R_1": 1})
        assert numerically_equal(LAT.basis("W"), Cx * 9, LAT)

    def test_enlarged_R_is_numerically_twice_Cx_minus_L(self):
        lat = build_enlarged(3).lattice
        Cx = lat.divisor({"L_xy": 1, "R_0": 1, "R_1": 1})
        assert numerically_equal(lat.basis("R"), Cx * 2 - lat.basis("L_xy"), lat)

    def test_blowup_preserves_volume(self):
        for n in (2, 3, 9):
            assert build_blowup_ow(n).volume_A2 == build_base(n).volume_A2


class TestValidate:
    @pytest.mark.parametrize("n", [2, 3, 7])
    def test_family_models_valid(self, n):
        for s in (build_base(n), build_enlarged(n), build_blowup_ow(n)):
            assert validate(s) == []

    def test_asymmetric_gram(self):
        g = [list(r) for r in LAT.gram]
        g[0][1] += 1
        bad = replace(S2, lattice=IntersectionLattice(LAT.names, tuple(map(tuple, g))))
        assert "gram not symmetric" in validate(bad)

    def test_boundary_out_of_range(self):
        bad = replace(S2, boundary=LAT.divisor({"W": F(3, 2)}))
        assert any(v.startswith("boundary coefficient out of [0,1)") for v in validate(bad))

    def test_bad_point(self):
        pts = S2.points + (PointOnCurve("x", "nowhere", QuotientSingularity(4, 2, 1)),)
        msgs = validate(replace(S2, points=pts))
        assert any("unknown host" in m for m in msgs)
        assert any("coprime" in m for m in msgs)


class TestSurfaceJson:
    @pytest.mark.parametrize("builder", [build_base, build_enlarged, build_blowup_ow])
    def test_round_trip(self, builder):
        s = builder(3)
        back = surface_from_dict(json.loads(dumps_surface(s)))
        assert back == s
        assert dumps_surface(back) == dumps_surface(s)

    def test_rationals_written_as_p_over_q(self):
        d = surface_to_dict(S2)
        assert d["gram"][1][1] == "-7/36"
        assert d["boundary"] == {"W": "1/2"}
        assert d["points"][0]["boundary_local"] == "0/1"

    def _doc(self):
        return json.loads(dumps_surface(S2))

    def test_unknown_field_rejected_with_path(self):
        doc = self._doc()
        doc["points"][2]["color"] = "red"
        with pytest.raises(SurfaceFormatError) as e:
            surface_from_dict(doc)
        assert e.value.path == "$.points[2]"

    def test_float_rejected(self):
        doc = self._doc()
        doc["gram"][0][0] = 0.5
        with pytest.raises(SurfaceFormatError, match=r"\$\.gram\[0\]\[0\]"):
            surface_from_dict(doc)

    def test_decimal_string_rejected(self):
        doc = self._doc()
        doc["polarization"]["L_xy"] = "1.5"
        with pytest.raises(SurfaceFormatError, match="polarization.L_xy"):
            surface_from_dict(doc)

    def test_unknown_curve_in_combination(self):
        doc = self._doc()
        doc["boundary"]["Q"] = "1/2"
        with pytest.raises(SurfaceFormatError, match=r"\$\.boundary\.Q"):
            surface_from_dict(doc)

    def test_model_violation_reported(self):
        doc = self._doc()
        doc["gram"][0][1] = "5/1"
        with pytest.raises(SurfaceFormatError, match="gram not symmetric"):
            surface_from_dict(doc)

    def test_missing_field(self):
        doc = self._doc()
        del doc["polarization"]
        with pytest.raises(SurfaceFormatError, match="polarization"):
            surface_from_dict(doc)

    def test_wrong_shape(self):
        doc = self._doc()
        doc["gram"] = doc["gram"][:3]
        with pytest.raises(SurfaceFormatError, match=r"\$\.gram"):
            surface_from_dict(doc)

    def test_point_defaults(self):
        doc = {
            "name": "toy", "curves": [{"name": "E"}], "gram": [["1/1"]],
            "boundary": {}, "polarization": {"E": "3/1"},
            "points": [{"name": "p", "host": "E"}],
        }
        s = surface_from_dict(doc)
        assert isinstance(s, LogDelPezzo) and s.points[0].sing.smooth
