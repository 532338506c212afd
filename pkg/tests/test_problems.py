"""Benchmark problems: evaluator correctness against closed-form points and
reference-front integrity."""

import numpy as np
import pytest

from qihsi.problems import (
    BENCHMARK_IDS,
    evaluate,
    get_problem,
    load_reference_front,
    nondominated_filter,
    problem_spec,
    read_front_text,
    write_front_text,
)

ZDT_DIMS = {"zdt1": 30, "zdt2": 30, "zdt3": 30, "zdt4": 10}


def test_specs_dimensions_and_bounds():
    for pid, dim in ZDT_DIMS.items():
        spec = problem_spec(pid)
        assert spec.dimension == dim
        assert spec.objectives == 2
    z4 = problem_spec("zdt4")
    assert z4.bounds.lower[0] == 0.0 and z4.bounds.upper[0] == 1.0
    assert z4.bounds.lower[1] == -5.0 and z4.bounds.upper[1] == 5.0
    for pid in ("uf1", "uf2", "uf3", "uf4"):
        spec = problem_spec(pid)
        assert spec.dimension == 30
        assert spec.objectives == 2
    assert problem_spec("uf1").bounds.lower[1] == -1.0
    assert problem_spec("uf3").bounds.lower[1] == 0.0
    assert problem_spec("uf4").bounds.upper[1] == 2.0


def test_zdt1_analytic_points():
    # x = 0 everywhere: g = 1, f = (0, 1)
    f = evaluate("zdt1", np.zeros(30))
    assert np.allclose(f, [0.0, 1.0], atol=1e-12)
    # x1 = 1, tail 0: f = (1, 0)
    x = np.zeros(30)
    x[0] = 1.0
    assert np.allclose(evaluate("zdt1", x), [1.0, 0.0], atol=1e-12)
    # all ones: g = 10, f2 = 10 (1 - sqrt(1/10))
    f = evaluate("zdt1", np.ones(30))
    assert np.allclose(f, [1.0, 10.0 * (1.0 - np.sqrt(0.1))], atol=1e-12)


def test_zdt2_analytic_points():
    f = evaluate("zdt2", np.zeros(30))
    assert np.allclose(f, [0.0, 1.0], atol=1e-12)
    x = np.zeros(30)
    x[0] = 0.5
    assert np.allclose(evaluate("zdt2", x), [0.5, 0.75], atol=1e-12)


def test_zdt3_analytic_points():
    x = np.zeros(30)
    x[0] = 0.2
    want = 1.0 - np.sqrt(0.2) - 0.2 * np.sin(10 * np.pi * 0.2)
    assert np.allclose(evaluate("zdt3", x), [0.2, want], atol=1e-12)


def test_zdt4_analytic_points():
    # zero tail: the +10 terms cancel against 10 cos(0), g = 1
    x = np.zeros(10)
    x[0] = 0.5
    assert np.allclose(evaluate("zdt4", x), [0.5, 1.0 - np.sqrt(0.5)], atol=1e-12)
    # one tail coordinate at 1: g = 1 + 1 - 10 cos(4 pi) + 10 = 2
    x = np.zeros(10)
    x[0] = 0.25
    x[1] = 1.0
    g = 2.0
    assert np.allclose(evaluate("zdt4", x), [0.25, g * (1 - np.sqrt(0.25 / g))], atol=1e-12)


def _uf_ps_point(pid: str, x1: float, n: int = 30) -> np.ndarray:
    """Closed-form Pareto-set point for the UF problems."""
    x = np.empty(n)
    x[0] = x1
    j = np.arange(2, n + 1)
    if pid in ("uf1", "uf4"):
        x[1:] = np.sin(6 * np.pi * x1 + j * np.pi / n)
    elif pid == "uf2":
        for jj in range(2, n + 1):
            base = 0.3 * x1**2 * np.cos(24 * np.pi * x1 + 4 * jj * np.pi / n) + 0.6 * x1
            trig = np.cos if jj % 2 == 1 else np.sin
            x[jj - 1] = base * trig(6 * np.pi * x1 + jj * np.pi / n)
    elif pid == "uf3":
        x[1:] = x1 ** (0.5 * (1.0 + 3.0 * (j - 2) / (n - 2)))
    else:
        raise ValueError(pid)
    return x


def test_uf_pareto_set_points_land_on_front():
    rng = np.random.default_rng(11)
    for pid in ("uf1", "uf2", "uf3"):
        for x1 in rng.random(20):
            f = evaluate(pid, _uf_ps_point(pid, float(x1)))
            assert abs(f[0] - x1) < 1e-9
            assert abs(f[1] - (1.0 - np.sqrt(x1))) < 1e-9, (pid, x1)
    for x1 in rng.random(20):
        f = evaluate("uf4", _uf_ps_point("uf4", float(x1)))
        assert abs(f[0] - x1) < 1e-9
        assert abs(f[1] - (1.0 - x1**2)) < 1e-9


def test_uf1_off_manifold_is_penalized():
    x = _uf_ps_point("uf1", 0.4)
    f_on = evaluate("uf1", x)
    x[5] = min(1.0, x[5] + 0.3)
    f_off = evaluate("uf1", x)
    assert f_off[0] > f_on[0] or f_off[1] > f_on[1]


def test_evaluate_rejects_bad_input():
    with pytest.raises(ValueError):
        evaluate("zdt1", np.zeros(7))
    with pytest.raises(ValueError):
        evaluate("zdt1", np.full(30, 2.0))  # outside bounds
    with pytest.raises(ValueError):
        get_problem("nope")


def test_true_fronts_shape_and_range():
    for pid in BENCHMARK_IDS:
        front = get_problem(pid).true_front(200)
        assert front.points.shape[0] == 200
        assert front.points.shape[1] == 2
        assert np.isfinite(front.points).all()


def _nondominated_slow(points):
    keep = []
    for i, p in enumerate(points):
        dominated = False
        for q in points:
            if np.all(q <= p) and np.any(q < p):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return np.array(keep, dtype=int)


def test_true_fronts_are_mutually_nondominated():
    for pid in BENCHMARK_IDS:
        pts = get_problem(pid).true_front(150).points
        assert len(_nondominated_slow(pts)) == len(pts), pid


def test_nondominated_filter_matches_slow_route():
    rng = np.random.default_rng(5)
    for _ in range(50):
        pts = rng.random((int(rng.integers(2, 60)), 2))
        got = nondominated_filter(pts)
        want = pts[_nondominated_slow(pts)]
        assert got.shape == want.shape
        assert np.allclose(np.sort(got, axis=0), np.sort(want, axis=0))


def test_zdt3_front_is_disconnected_subset():
    pts = get_problem("zdt3").true_front(500).points
    f1 = np.sort(pts[:, 0])
    gaps = np.diff(f1)
    # five segments leave four visible gaps much larger than the sample step
    assert (gaps > 0.02).sum() >= 3
    assert len(_nondominated_slow(pts)) == len(pts)


def test_front_text_round_trip(tmp_path):
    front = get_problem("zdt1").true_front(64)
    path = tmp_path / "front.txt"
    write_front_text(path, front.points)
    back = read_front_text(path)
    assert np.array_equal(front.points, back)
    loaded = load_reference_front(path)
    assert np.array_equal(loaded.points, front.points)
    assert loaded.source == "file"
