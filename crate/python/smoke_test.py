"""Smoke test for the framerisk Python bindings.

Build and install the extension first:
    pip install --no-build-isolation ./crates/python
then run:
    python3 python/smoke_test.py
"""

import math

import framerisk_py as fr


def close(a, b, tol):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    ref = fr.Scenario()
    d = fr.design(ref)
    close(d.beam_moment, 15.3, 1e-9)
    close(d.column_sf, 1.153, 1e-3)

    cost = fr.total_expected_cost(ref, 0.9, 1.3)
    assert cost["total"] >= cost["construction"]

    opt = fr.minimize_total_cost(ref)
    close(opt["lambda_star"]["lambda_b"], 0.9, 0.1)
    close(opt["lambda_star"]["lambda_c"], 1.3, 0.1)

    rows = fr.progression_trace(ref)
    assert [r["n_fc"] for r in rows] == [1, 3, 5, 7]

    low = fr.Scenario.catalog("4x16")
    th = fr.threshold_probability(low)
    assert th["status"] == "root"
    assert 0.025 <= th["p_ld"] <= 0.10

    tall = fr.Scenario(geometry={"n_s": 16, "n_c": 5}, p_LD=0.01)
    assert tall.p_ld == 0.01
    assert tall.replace(psi=2.0).psi == 2.0

    close(fr.annual_from_lifetime(0.1), 2.1e-3, 1e-5)
    close(fr.std_normal_cdf(0.0), 0.5, 0.0)
    assert math.isfinite(fr.betas(ref)["damaged_apt"]["beta_b"])

    try:
        fr.Scenario(psi=9)
    except ValueError as e:
        assert "psi" in str(e)
    else:
        raise AssertionError("psi = 9 accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
