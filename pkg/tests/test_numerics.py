import math
from fractions import Fraction

import numpy as np
import pytest

from zcurv.cartan import CartanMatrix, standard_cartan
from zcurv.numerics import (CornerMismatchError, GoursatData, Grid,
                            GridOverflowError, convergence_order,
                            residual_grid, solve_goursat, write_csv)

SL2 = standard_cartan("sl2")


def exact_symmetric(x, y):
    return -2.0 * math.log(x + y + 2.0)


def symmetric_data():
    return GoursatData(Fraction(0), Fraction(1), Fraction(0), Fraction(1),
                       x_edge=lambda y: [exact_symmetric(0.0, y)],
                       y_edge=lambda x: [exact_symmetric(x, 0.0)])


def exact_generic(x, y):
    # G-form solution from f = x + 1, g = y^2 + y + 1
    return math.log(2.0 * y + 1.0) - 2.0 * math.log(x + y * y + y + 2.0)


def generic_data():
    return GoursatData(Fraction(0), Fraction(1), Fraction(0), Fraction(1),
                       x_edge=lambda y: [exact_generic(0.0, y)],
                       y_edge=lambda x: [exact_generic(x, 0.0)])


def max_error(grid, exact):
    m = grid.steps
    return max(abs(grid.values[i, j, 0] - exact(grid.x_at(i), grid.y_at(j)))
               for i in range(m + 1) for j in range(m + 1))


def test_zero_matrix_zero_boundary_gives_zero_grid():
    null1 = CartanMatrix.from_rows([[0]])
    data = GoursatData(Fraction(0), Fraction(1), Fraction(0), Fraction(1),
                       x_edge=lambda y: [0.0], y_edge=lambda x: [0.0])
    grid = solve_goursat(null1, data, Fraction(1, 8))
    assert np.all(grid.values == 0.0)


def test_constant_grid_residual():
    values = np.zeros((9, 9, 1))
    grid = Grid(Fraction(0), Fraction(1), Fraction(0), Fraction(1),
                Fraction(1, 8), values)
    assert residual_grid(SL2, grid) == pytest.approx(2.0)


def test_sampled_exact_solution_residual_is_second_order():
    results = []
    for k in (8, 16):
        h = Fraction(1, k)
        values = np.empty((k + 1, k + 1, 1))
        for i in range(k + 1):
            for j in range(k + 1):
                values[i, j, 0] = exact_symmetric(float(i * h), float(j * h))
        grid = Grid(Fraction(0), Fraction(1), Fraction(0), Fraction(1), h,
                    values)
        results.append(residual_grid(SL2, grid))
    assert results[0] < 0.01
    assert results[0] / results[1] == pytest.approx(4.0, rel=0.2)


def test_solver_error_bound_and_monotone_refinement():
    errors = []
    for k in (8, 16, 32):
        grid = solve_goursat(SL2, generic_data(), Fraction(1, k))
        errors.append(max_error(grid, exact_generic))
    assert errors[0] < 2e-3
    assert errors[0] > errors[1] > errors[2]


def test_solver_residual_below_regression_threshold():
    h = Fraction(1, 32)
    grid = solve_goursat(SL2, generic_data(), h)
    assert residual_grid(SL2, grid) <= 10.0 * float(h) ** 2


def test_four_point_identity_holds_cellwise():
    h = Fraction(1, 16)
    grid = solve_goursat(SL2, generic_data(), h)
    v = grid.values
    hf = float(h)
    worst = 0.0
    for i in range(1, grid.steps + 1):
        for j in range(1, grid.steps + 1):
            mid = 0.25 * (v[i, j, 0] + v[i - 1, j, 0] + v[i, j - 1, 0]
                          + v[i - 1, j - 1, 0])
            lhs = v[i, j, 0] - v[i - 1, j, 0] - v[i, j - 1, 0] \
                + v[i - 1, j - 1, 0]
            worst = max(worst, abs(lhs - hf * hf * 2.0 * math.exp(mid)))
    assert worst <= max(10.0 * grid.sweep_residual, 1e-12)


def test_schedules_are_bitwise_identical():
    seq = solve_goursat(SL2, generic_data(), Fraction(1, 32))
    wave = solve_goursat(SL2, generic_data(), Fraction(1, 32),
                         schedule="wavefront")
    assert np.array_equal(seq.values, wave.values)
    assert seq.sweep_residual == wave.sweep_residual


def test_corner_mismatch_detected():
    data = GoursatData(Fraction(0), Fraction(1), Fraction(0), Fraction(1),
                       x_edge=lambda y: [1.0], y_edge=lambda x: [0.0])
    with pytest.raises(CornerMismatchError):
        solve_goursat(SL2, data, Fraction(1, 8))


def test_exp_overflow_reported_with_location():
    data = GoursatData(Fraction(0), Fraction(1), Fraction(0), Fraction(1),
                       x_edge=lambda y: [400.0 + y],
                       y_edge=lambda x: [400.0 + x])
    with pytest.raises(GridOverflowError) as err:
        solve_goursat(SL2, data, Fraction(1, 8))
    assert err.value.cell == (1, 1)


def test_step_must_divide_interval():
    with pytest.raises(ValueError):
        solve_goursat(SL2, symmetric_data(), Fraction(2, 7))
    with pytest.raises(ValueError):
        solve_goursat(SL2, symmetric_data(), Fraction(3, 2))


def test_odd_matrix_rejected():
    with pytest.raises(ValueError):
        solve_goursat(standard_cartan("osp12"), symmetric_data(),
                      Fraction(1, 8))


def test_jet_solution_sampled_onto_grid_agrees():
    # sample an exact jet solution of the G-form system near its base point
    # and measure the discrete residual: O(h^2) plus truncation error
    from zcurv.jets import Jet

    x = Jet.variable("x", (0, 0), 10)
    y = Jet.variable("y", (0, 0), 10)
    g_jet = -((x + y + 2).ln()) * 2
    h = Fraction(1, 32)
    k = 8  # stay within [0, 1/4]^2 where the truncated jet is accurate
    values = np.empty((k + 1, k + 1, 1))
    for i in range(k + 1):
        for j in range(k + 1):
            values[i, j, 0] = g_jet.evaluate(float(i * h), float(j * h))
    grid = Grid(Fraction(0), Fraction(1, 4), Fraction(0), Fraction(1, 4), h,
                values)
    assert residual_grid(SL2, grid) < 5e-4


def test_convergence_order_synthetic():
    quadratic = [(1 / k, 3.0 / k ** 2) for k in (4, 8, 16, 32)]
    assert convergence_order(quadratic) == pytest.approx(2.0)
    linear = [(1 / k, 0.5 / k) for k in (4, 8, 16)]
    assert convergence_order(linear) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        convergence_order([(0.1, 1e-3)])


def test_csv_export(tmp_path):
    grid = solve_goursat(SL2, symmetric_data(), Fraction(1, 4))
    out = tmp_path / "grid.csv"
    write_csv(grid, out)
    lines = out.read_text().splitlines()
    assert lines[0] == "x,y,G_1"
    assert len(lines) == 1 + 5 * 5
    first = lines[1].split(",")
    assert first[0] == "0" and first[1] == "0"
    assert float(first[2]) == pytest.approx(exact_symmetric(0.0, 0.0))
    # row-major: the second row advances y
    assert lines[2].split(",")[1] == "0.25"


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(Fraction(0), Fraction(1), Fraction(0), Fraction(2),
             Fraction(1, 4), np.zeros((5, 5, 1)))
    with pytest.raises(ValueError):
        Grid(Fraction(0), Fraction(1), Fraction(0), Fraction(1),
             Fraction(1, 4), np.full((5, 5, 1), np.nan))
