"""Smoke test for the epalg extension module.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import cmath
import json
import math

import epalg


def main():
    triples, failures = epalg.jacobi()
    assert (triples, failures) == (455, 0), (triples, failures)

    names = epalg.generators()
    assert names[:3] == ["J1", "J2", "J3"] and names[-1] == "G"
    metric = epalg.metric()
    diag = [metric[i][i] for i in range(15)]
    assert diag == ["-8"] * 3 + ["8"] * 3 + ["-8", "8", "8", "8"] + ["0"] * 5, diag

    mats = dict(epalg.representation("1/2", "dirac"))
    gam0 = mats["Gam0"]
    assert [gam0[i][i].real for i in range(4)] == [0.5, 0.5, -0.5, -0.5]

    half_turn = epalg.wigner_d("1/2", [0.0, 0.0, 1.0], 2 * math.pi)
    assert abs(half_turn[0][0] + 1) < 1e-12 and abs(half_turn[1][1] + 1) < 1e-12
    d = epalg.wigner_d("1", [1.0, 2.0, -0.5], 1.1)
    trace = sum(d[i][i] for i in range(3))
    assert cmath.isclose(trace, 1 + 2 * math.cos(1.1), abs_tol=1e-12)

    code, out, _ = epalg.run(["check", "metric", "--json"])
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == "epalg/1" and report["status"] == "pass"

    code, _, err = epalg.run(["nonsense"])
    assert code == 1 and "nonsense" in err

    print("epalg", epalg.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
