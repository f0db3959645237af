from fractions import Fraction

import pytest

import hgfrob


def test_wk_spot_values():
    assert hgfrob.wk(0, [0, 0, 0]) == 1
    assert hgfrob.wk(1, [1]) == Fraction(1, 24)
    assert hgfrob.wk(2, [4]) == Fraction(1, 1152)


def as_complex(x):
    return complex(float(x["re"]), float(x["im"])) if isinstance(x, dict) else complex(float(x))


def closed_form(d):
    return d * (3 * d - 1) * (d - 1) ** 2 * (3 * d - 5) * (d - 2) / 2880


@pytest.mark.parametrize("d", ["1/2", "3/2", "5/3"])
def test_genus_two_closed_form(d):
    model = hgfrob.Model.two_primary(d)
    point = [Fraction(3, 10), Fraction(7, 10)]
    value, exact = hgfrob.genus(model, point, 2)
    fr = hgfrob.frame(model, point)
    u = [as_complex(x) for x in fr["u"]]
    delta = [as_complex(x) for x in fr["delta"]]
    expected = float(closed_form(Fraction(d))) * delta[0] / (u[1] - u[0]) ** 3
    assert value == pytest.approx(expected, rel=1e-12)
    assert len(exact) > 70


def test_vanishing_at_one_third():
    value, _ = hgfrob.genus(hgfrob.Model.two_primary("1/3"), ["3/10", "7/10"], 2)
    assert abs(value) < 1e-60


def test_model_document_round_trip():
    model = hgfrob.Model.a3()
    again = hgfrob.Model.from_json(model.to_json())
    assert again.dimension == 3
    assert again.to_json() == model.to_json()


def test_validation_errors():
    with pytest.raises(ValueError):
        hgfrob.Model.from_json('{"dimension": 2, "metric": [["0", "1"], ["2", "0"]], "potential": []}')
    with pytest.raises(ValueError):
        hgfrob.genus(hgfrob.Model.point(), ["0"], 1)


def test_rmatrix_keys():
    r = hgfrob.rmatrix(hgfrob.Model.two_primary("1/2"), ["3/10", "7/10"], 3)
    assert "3,1,0" in r["R"]


def test_point_descendent_genus_zero():
    t0, t1 = Fraction(1, 10), Fraction(1, 20)
    value, _ = hgfrob.descendent(hgfrob.Model.point(), [[t0], [t1]], 0)
    assert value == pytest.approx(float(t0**3 / (6 * (1 - t1))), rel=1e-14)


def test_hodge_lemma():
    rep = hgfrob.hodge_lemma(1, 1, 3)
    assert rep["mismatches"] == 0
    assert Fraction(rep["s1_q0"]) == Fraction(1, 24)


def test_acceptance_subset():
    results = hgfrob.acceptance([3, 6])
    assert [r[0] for r in results] == [3, 6]
    assert all(r[1] for r in results)
