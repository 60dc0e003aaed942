import math

import pysei


def test_expm_rotation():
    E = pysei.expm([[0.0, 1.0], [-1.0, 0.0]])
    assert abs(E[0][0] - math.cos(1.0)) < 1e-14
    assert abs(E[0][1] - math.sin(1.0)) < 1e-14
    assert abs(E[1][0] + math.sin(1.0)) < 1e-14


def test_jacobi_pythagorean():
    sn, cn, dn = pysei.jacobi_sn_cn_dn(1.3, 0.5)
    assert abs(sn * sn + cn * cn - 1.0) < 1e-13
    assert abs(dn * dn + 0.25 * sn * sn - 1.0) < 1e-13
    sn0, cn0, dn0 = pysei.jacobi_sn_cn_dn(0.7, 0.0)
    assert sn0 == math.sin(0.7) and cn0 == math.cos(0.7) and dn0 == 1.0


def test_method_catalog():
    methods = pysei.list_methods()
    names = {m["name"] for m in methods}
    assert names == {"SSSEI1s2", "SSSEI2s4", "SSSEI3s4", "SSRK1s2", "SSRK2s4", "SSRK3s4"}
    by_name = {m["name"]: m for m in methods}
    assert by_name["SSSEI2s4"]["order"] == 4 and by_name["SSSEI2s4"]["stages"] == 2
    assert by_name["SSRK1s2"]["classical_rk"] and not by_name["SSSEI1s2"]["classical_rk"]
    for m in methods:
        res = pysei.condition_residuals(m["name"])
        assert res["rk_symmetry"] <= 1e-13 and res["rk_symplecticity"] <= 1e-13


def test_integrate_matches_exact_solution():
    out = pysei.integrate("SSSEI2s4", "duffing", h=0.125, t_end=1.0)
    assert out["t"][-1] == 1.0 and len(out["y"]) == 9
    q, p = pysei.duffing_exact(1.0)
    yq, yp = out["y"][-1]
    assert abs(yq - q) < 2e-5 and abs(yp - p) < 5e-4


def test_convergence_rows():
    rows = pysei.run_convergence("duffing", ["SSSEI1s2"], [0.125, 0.0625], t_end=2.0)
    assert [r["h"] for r in rows] == [0.125, 0.0625]
    assert all(not r["divergent"] and r["GE"] > 0 for r in rows)
    assert rows[0]["n_steps"] == 16 and rows[1]["n_steps"] == 32


def test_verify_battery():
    report = pysei.verify()
    assert report["all_pass"] is True
    assert len(report["checks"]) >= 30


def test_bad_inputs_raise():
    try:
        pysei.integrate("NoSuchMethod", "duffing", h=0.1, t_end=1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown method should raise")
