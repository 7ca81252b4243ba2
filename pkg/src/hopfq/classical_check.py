"""Boundary checks for hopfq.classical. Run: uv run python -m hopfq.classical_check"""

import numpy as np

from hopfq.classical import (
    S4Point,
    S7Point,
    analytic_c2,
    chart_to_sphere,
    chern_densities,
    chern_numbers,
    classical_projection,
    evaluate_at_q1,
    frame_checks,
    hopf_map,
    projection_defects,
    q1_gauge_check,
    renamings,
    rotation_residual,
    sphere_samples,
    sphere_to_chart,
    volume_density,
)
from hopfq.coaction import hopf_bundle
from hopfq.errors import HopfqError, ValidationError
from hopfq.ncalg import NCMatrix, NCPoly


def check_points_validate() -> None:
    for bad in (np.zeros(4), np.ones(3) / np.sqrt(3)):
        try:
            S7Point(bad)
        except ValidationError:
            continue
        raise AssertionError(f"{bad} accepted as a point of S^7")
    try:
        S4Point(0.5, 0.5, 0.5)
    except ValidationError:
        return
    raise AssertionError("off-sphere S^4 point accepted")


def check_hopf_map_poles() -> None:
    north = hopf_map(S7Point(np.array([1, 0, 0, 0])))
    south = hopf_map(S7Point(np.array([0, 0, 0, 1j])))
    assert (north.x, north.alpha, north.beta) == (1.0, 0, 0)
    assert (south.x, south.alpha, south.beta) == (-1.0, 0, 0)
    mixed = hopf_map(S7Point(np.array([1, 0, 1, 0]) / np.sqrt(2)))
    assert abs(mixed.x) < 1e-15
    assert abs(mixed.alpha - 1) < 1e-15


def check_frame_and_projection() -> None:
    worst = frame_checks(points=25, seed=3)
    assert max(worst.values()) < 1e-12, worst
    p = classical_projection(S4Point(0.0, 0.6, 0.8j))
    assert max(projection_defects(p).values()) < 1e-14


def check_chart() -> None:
    x, alpha, beta = chart_to_sphere(np.zeros((1, 4)))
    assert (x[0], alpha[0], beta[0]) == (1.0, 0, 0)
    pts = sphere_samples(64, seed=1)
    assert np.allclose(np.linalg.norm(pts, axis=1), 1.0)
    x, alpha, beta = chart_to_sphere(sphere_to_chart(pts))
    back = np.stack([x, alpha.real, alpha.imag, beta.real, beta.imag], axis=1)
    assert np.allclose(back, pts, atol=1e-10)


def check_density_is_a_multiple_of_volume() -> None:
    rng = np.random.default_rng(5)
    u = np.vstack([np.zeros(4), rng.normal(size=(16, 4))])
    c1, four = chern_densities(u, 1e-4)
    assert float(c1.max()) < 1e-6
    assert np.allclose(four / volume_density(u), 3.0, rtol=1e-6)
    assert rotation_residual(points=8, seed=2) < 1e-6


def check_second_chern_number() -> None:
    assert abs(analytic_c2() + 1) < 1e-15
    report = chern_numbers(samples=4096, fd_step=1e-4, seed=11)
    assert abs(report.c2_value + 1) < 1e-3, report
    assert report.c1_max_residual < 1e-6
    assert report.samples == 4096


def check_renaming_space() -> None:
    names = renamings()
    assert len(names) == 24 * 16 * 16
    assert len({str(r) for r in names}) == len(names)


def check_q1_evaluation() -> None:
    values = {"x1": 2j, "xb1": -2j, "x2": 3.0, "xb2": 3.0}
    e = NCPoly.parse("x1*xb1 + q^-1*x2 - (1 - q^2)*x2*x1")
    assert evaluate_at_q1(e, values) == 4 + 3


def check_gauge_at_q1() -> None:
    report = q1_gauge_check(hopf_bundle().p, points=10, seed=1)
    assert report.max_deviation <= 1e-12
    assert report.t_affine.startswith("t = (1 + x)/2")
    try:
        q1_gauge_check(NCMatrix.identity(4), points=2)
    except HopfqError as e:
        assert e.code == "no_renaming_found"
        return
    raise AssertionError("identity matched the classical projection")


if __name__ == "__main__":
    check_points_validate()
    check_hopf_map_poles()
    check_frame_and_projection()
    check_chart()
    check_density_is_a_multiple_of_volume()
    check_second_chern_number()
    check_renaming_space()
    check_q1_evaluation()
    check_gauge_at_q1()
    print("ok: hopfq.classical")
