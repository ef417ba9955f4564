"""Smoke tests for the stablepgf Python module.

Each check exercises one bound operation end to end with values whose
exact answers are known in closed form. Run directly:

    PYTHONPATH=<build>/python python3 python/test_smoke.py
"""

import math

import stablepgf as sp

BALL = {(1, 0): "1/2", (0, 1): "1/2"}  # (z1 + z2)/2


def test_division_round_trip():
    pmf = sp.random_nr_law(12, seed=7)
    assert len(pmf) == 13
    cert = sp.certify_nr(pmf)
    assert cert["ok"] and len(cert["sorted_roots"]) == 12

    half = sp.half_divide(pmf)
    assert half["real_rooted"]
    # Mass 1: pmf strings are exact rationals, so fractions can verify them.
    from fractions import Fraction

    assert sum(Fraction(p) for p in half["pmf"]) == 1

    floor3 = sp.floor_divide(pmf, 3)
    assert floor3["real_rooted"]
    inter = sp.verify_interlace(pmf, 3)
    assert inter["ok"]
    assert all(inter["part_of"][j] == j % 3 for j in range(len(inter["part_of"])))


def test_counterexample_probe():
    probe = sp.floor_scale_probe(["1/5", "9/20", "3/10", "1/20"], "2/3")
    assert probe["pmf"] == ["13/20", "3/10", "1/20"]
    assert not probe["real_rooted"]
    roots = probe["roots"]["values"]
    assert len(roots) == 2
    for r in roots:
        assert abs(r["re"] + 3.0) < 1e-9 and abs(abs(r["im"]) - 2.0) < 1e-9


def test_transforms_and_moments():
    # project (z1+z2)/2 along (1, 2): (z + z^2)/2, a gap-1 boundary case.
    coeffs = sp.project(BALL, 2, [1, 2])
    assert coeffs == ["0", "1/2", "1/2"]
    disk = sp.zero_free_disk_check(BALL, 2, [1, 2])
    assert disk["pass"] and abs(disk["observed_gap"] - 1.0) < 1e-9

    mc = sp.mean_cov(BALL, 2)
    assert mc["mean"] == ["1/2", "1/2"]
    assert mc["cov"] == [["1/4", "-1/4"], ["-1/4", "1/4"]]

    thin = sp.smear(BALL, 2, ["1/2", "1/2"])
    assert thin[(0, 0)] == "1/2"  # both particles thinned away

    pol = sp.polarize({(2,): "1/4", (1,): "1/2", (0,): "1/4"}, 1, [2])
    back = sp.aggregate(pol, 2, [0, 0], 1)
    assert back == {(0,): "1/4", (1,): "1/2", (2,): "1/4"}


def test_stability_and_clt():
    verdict = sp.test_stability(BALL, 2, n_dirs=50, seed=1)
    assert verdict["status"] in ("stable_exact", "stable_probabilistic")

    rep = sp.clt_report(["1/2", "1/2"])
    # Bernoulli(1/2): the distance is exactly Phi(1) - 1/2.
    assert math.isclose(rep["kolmogorov"], 0.341344746069, abs_tol=1e-9)

    battery = sp.cramer_wold_battery(
        BALL, 2, A=[[0.25, -0.25], [-0.25, 0.25]], max_den=2
    )
    by_dir = {tuple(r["direction"]): r for r in battery}
    assert by_dir[(1, 1)]["degenerate"]
    assert "kolmogorov" not in by_dir[(1, 1)]
    assert not by_dir[(1, 2)]["degenerate"]


def test_structure():
    # Laplacian of a path (singular, all-ones kernel) + a dominant singleton.
    M = [
        [2.0, -2.0, 0.0],
        [-2.0, 2.0, 0.0],
        [0.0, 0.0, 5.0],
    ]
    part = sp.partition(M)
    assert part["T"] == [2]
    assert [sorted(s) for s in part["S_list"]] == [[0, 1]]
    assert part["null_basis"] == [[1, 1, 0]]
    assert sp.check_hypotheses(M)["pass"]


def test_dpp():
    f = sp.dpp_pgf(
        [["1/2", "1/2"], ["1/2", "1/2"]],
        [["0", "0"], ["0", "0"]],
        [[0], [1]],
    )
    assert f == BALL


def test_errors():
    try:
        sp.clt_report(["1/2", "1/3"])  # mass != 1
    except ValueError:
        pass
    else:
        raise AssertionError("mass != 1 was accepted")


def main():
    tests = [
        test_division_round_trip,
        test_counterexample_probe,
        test_transforms_and_moments,
        test_stability_and_clt,
        test_structure,
        test_dpp,
        test_errors,
    ]
    for t in tests:
        t()
        print(f"ok: {t.__name__}")
    print(f"all {len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()
