import random
from fractions import Fraction

import numpy as np
import pytest

from structdiag.linres import (
    LinearStaticModel,
    derive_residual,
    derive_residuals,
    fuse_weights,
    min_variance_fusion,
    parse_linear_block,
    residual_covariance,
)
from structdiag.model import EquationSet, model_from_data
from structdiag.operators import computation_order
from structdiag.utils.exceptions import (
    AnalysisError,
    FusionError,
    LinearModelError,
    NormalizationMismatchError,
    SingularCovarianceError,
    SingularPivotError,
)


def _nonzero(gains):
    return {k: v for k, v in gains.items() if v != 0}


@pytest.fixture
def r1(eq2, lin2):
    return derive_residual(lin2, computation_order(eq2, eq2.subset("e1", "e2", "e5")))


@pytest.fixture
def r2(eq2, lin2):
    return derive_residual(lin2, computation_order(eq2, eq2.subset("e1", "e3", "e5")))


def _static_block(eq2_rows=None):
    rows = {
        "e1": {"x1": 1, "x2": 2, "u1": -1},
        "e2": {"x1": 1, "x2": 1, "u2": -1},
        "e3": {"x1": -1, "x2": -3, "y1": 1},
        "e4": {"x1": -1, "x2": 1, "y2": 1, "f1": -1},
        "e5": {"x2": -1, "y3": 1, "f2": -1},
    }
    rows.update(eq2_rows or {})
    return {"equations": rows}


def _random_two_unknown_model(seed):
    """Static model where e3 fixes x2, e2 then x1, leaving e1 as the residual."""
    rng = random.Random(seed)

    def draw():
        return Fraction(rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]), rng.randint(1, 3))

    model = model_from_data(
        {
            "name": f"two-unknown-{seed}",
            "unknowns": ["x1", "x2"],
            "knowns": ["y1", "y2", "y3"],
            "faults": ["f1"],
            "equations": [
                {"id": "e1", "unknowns": [{"var": "x1"}, {"var": "x2"}], "knowns": ["y1"], "faults": ["f1"]},
                {"id": "e2", "unknowns": [{"var": "x1"}, {"var": "x2"}], "knowns": ["y2"]},
                {"id": "e3", "unknowns": [{"var": "x2"}], "knowns": ["y3"]},
            ],
        }
    )
    c = {name: draw() for name in ("c11", "c12", "k1", "g", "c21", "c22", "k2", "c32", "k3")}
    rows = {
        "e1": {"x1": c["c11"], "x2": c["c12"], "y1": c["k1"], "f1": c["g"]},
        "e2": {"x1": c["c21"], "x2": c["c22"], "y2": c["k2"]},
        "e3": {"x2": c["c32"], "y3": c["k3"]},
    }
    block = {"equations": {e: {s: str(v) for s, v in row.items()} for e, row in rows.items()}}
    return parse_linear_block(model, block), c


def _grid_minimum(covariance, rounds=30, points=81):
    """Affine weights minimizing w' S w by shrinking grid search over (w1, w2)."""
    center = np.full(2, 1.0 / 3.0)
    half_width = 8.0
    for _ in range(rounds):
        axis = np.linspace(-half_width, half_width, points)
        w1, w2 = np.meshgrid(center[0] + axis, center[1] + axis)
        grid = np.stack([w1.ravel(), w2.ravel(), 1.0 - w1.ravel() - w2.ravel()], axis=1)
        variances = np.einsum("ki,ij,kj->k", grid, covariance, grid)
        center = grid[int(np.argmin(variances)), :2]
        half_width /= 2.0
    weights = np.array([center[0], center[1], 1.0 - center.sum()])
    return weights, float(weights @ covariance @ weights)


def _random_covariance(seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1.0, 1.0, size=(3, 3))
    covariance = a @ a.T + np.eye(3)
    return (covariance + covariance.T) / 2.0


class TestLinearModel:
    def test_eq2_block(self, lin2):
        assert lin2.noise == ("v1", "v2", "v3", "v4", "v5")
        assert np.array_equal(lin2.noise_cov, np.eye(5))
        assert lin2.row("e5") == {"x2": -1, "y3": 1, "f2": -1, "v5": -1}

    def test_rational_strings_and_floats(self, eq2):
        lin = parse_linear_block(eq2, _static_block({"e1": {"x1": "1/2", "x2": 0.25, "u1": -1}}))
        assert lin.row("e1")["x1"] == Fraction(1, 2)
        assert lin.row("e1")["x2"] == Fraction(1, 4)

    def test_identity_covariance_by_default(self, eq2):
        block = _static_block()
        block["noise"] = ["w"]
        assert np.array_equal(parse_linear_block(eq2, block).noise_cov, np.eye(1))

    def test_pattern_mismatch(self, eq2):
        with pytest.raises(LinearModelError, match="do not match"):
            parse_linear_block(eq2, _static_block({"e5": {"x1": 1, "x2": -1, "y3": 1, "f2": -1}}))

    def test_missing_fault_coefficient(self, eq2):
        with pytest.raises(LinearModelError):
            parse_linear_block(eq2, _static_block({"e5": {"x2": -1, "y3": 1}}))

    def test_undeclared_symbol(self, eq2):
        with pytest.raises(LinearModelError, match="undeclared"):
            parse_linear_block(eq2, _static_block({"e1": {"x1": 1, "x2": 2, "u1": -1, "q": 1}}))

    def test_missing_row(self, eq2):
        block = _static_block()
        del block["equations"]["e3"]
        with pytest.raises(LinearModelError, match="missing row"):
            parse_linear_block(eq2, block)

    def test_malformed_coefficient(self, eq2):
        with pytest.raises(LinearModelError):
            parse_linear_block(eq2, _static_block({"e1": {"x1": "one", "x2": 2, "u1": -1}}))

    def test_asymmetric_covariance(self, eq2):
        block = _static_block()
        block["noise"] = ["w1", "w2"]
        block["noise_cov"] = [[1, 0.5], [0, 1]]
        with pytest.raises(LinearModelError, match="symmetric"):
            parse_linear_block(eq2, block)

    def test_indefinite_covariance(self, eq2):
        block = _static_block()
        block["noise"] = ["w1", "w2"]
        block["noise_cov"] = [[1, 2], [2, 1]]
        with pytest.raises(LinearModelError, match="semidefinite"):
            parse_linear_block(eq2, block)

    def test_noise_clashes_with_model_variable(self, eq2):
        block = _static_block()
        block["noise"] = ["u1"]
        with pytest.raises(LinearModelError):
            parse_linear_block(eq2, block)

    def test_differential_equations_have_no_row(self, eq4):
        with pytest.raises(LinearModelError, match="differential"):
            parse_linear_block(eq4, {"equations": {"e1": {"x1": 1, "x2": 1}}})


class TestResidual:
    def test_first_residual(self, r1):
        assert _nonzero(r1.known_gains) == {"u1": -1, "u2": 1, "y3": 1}
        assert _nonzero(r1.fault_gains) == {"f2": 1}
        assert _nonzero(r1.noise_gains) == {"v1": 1, "v2": -1, "v5": 1}
        assert r1.variance == pytest.approx(3.0)
        assert r1.equations == EquationSet(["e1", "e2", "e5"])
        assert r1.residual_equation == "e1"

    def test_second_residual(self, r2):
        assert _nonzero(r2.known_gains) == {"u1": 1, "y1": -1, "y3": 1}
        assert _nonzero(r2.fault_gains) == {"f2": 1}
        assert _nonzero(r2.noise_gains) == {"v1": -1, "v3": -1, "v5": 1}
        assert r2.variance == pytest.approx(3.0)

    def test_gain_maps_cover_declared_variables(self, r1):
        assert list(r1.known_gains) == ["u1", "u2", "y1", "y2", "y3"]
        assert list(r1.fault_gains) == ["f1", "f2"]
        assert list(r1.noise_gains) == ["v1", "v2", "v3", "v4", "v5"]

    def test_gains_are_exact(self, r1):
        assert all(isinstance(v, Fraction) for v in r1.known_gains.values())

    def test_identical_equations_give_zero_residual(self, identity_linear):
        model = identity_linear.model
        residual = derive_residual(identity_linear, computation_order(model, model.all_equations()))
        assert residual.is_zero
        assert residual.variance == 0.0

    def test_residual_equation_must_be_named(self, eq2, lin2):
        order = computation_order(eq2, eq2.all_equations())
        with pytest.raises(AnalysisError):
            derive_residual(lin2, order)
        assert len(derive_residuals(lin2, order)) == 3

    def test_named_residual_equation(self, eq2, lin2):
        order = computation_order(eq2, eq2.all_equations())
        residual = derive_residual(lin2, order, residual_equation="e3")
        assert residual.residual_equation == "e3"
        with pytest.raises(AnalysisError):
            derive_residual(lin2, order, residual_equation="e5")

    def test_singular_pivot(self, eq2, lin2):
        rows = dict(lin2.rows)
        rows["e5"] = {"x2": 0, "y3": 1, "f2": -1}
        singular = LinearStaticModel(
            model=eq2, noise=lin2.noise, noise_cov=lin2.noise_cov, rows=rows
        )
        order = computation_order(eq2, eq2.subset("e1", "e2", "e5"))
        with pytest.raises(SingularPivotError):
            derive_residual(singular, order)

    def test_scaled_to(self, r1):
        scaled = r1.scaled_to("f2")
        assert scaled.fault_gains["f2"] == 1
        with pytest.raises(NormalizationMismatchError):
            r1.scaled_to("f1")

    @pytest.mark.parametrize("seed", range(25))
    def test_matches_hand_elimination(self, seed):
        lin, c = _random_two_unknown_model(seed)
        order = computation_order(lin.model, lin.model.all_equations())
        assert order.pivots == (("e3", "x2"), ("e2", "x1"))

        # e1 with x2 = -k3 y3 / c32 and x1 = -(c22 x2 + k2 y2) / c21 substituted
        y2 = -c["c11"] * c["k2"] / c["c21"]
        y3 = c["k3"] / c["c32"] * (c["c11"] * c["c22"] / c["c21"] - c["c12"])
        scale = -c["g"]
        residual = derive_residual(lin, order)

        assert residual.known_gains == {"y1": c["k1"] / scale, "y2": y2 / scale, "y3": y3 / scale}
        assert residual.fault_gains == {"f1": 1}
        assert all(isinstance(v, Fraction) for v in residual.known_gains.values())
        assert residual.variance == 0.0


class TestFusion:
    def test_closed_form(self):
        weights, variance = fuse_weights(np.array([[3.0, -1.0], [-1.0, 3.0]]))
        assert weights[0] == pytest.approx(0.5, abs=1e-12)
        assert weights[1] == pytest.approx(0.5, abs=1e-12)
        assert variance == pytest.approx(1.0, abs=1e-12)

    def test_general_form_matches_closed_form(self):
        covariance = np.array([[2.0, 0.5], [0.5, 1.0]])
        weights, variance = fuse_weights(covariance)
        solution = np.linalg.solve(covariance, np.ones(2))
        assert np.allclose(weights, solution / solution.sum())
        assert variance == pytest.approx(1.0 / solution.sum())

    def test_three_residuals(self):
        weights, variance = fuse_weights(np.diag([1.0, 2.0, 4.0]))
        assert weights.sum() == pytest.approx(1.0)
        assert variance == pytest.approx(1.0 / (1.0 + 0.5 + 0.25))

    def test_singular_covariance(self):
        with pytest.raises(SingularCovarianceError):
            fuse_weights(np.array([[1.0, 1.0], [1.0, 1.0]]))

    def test_single_residual(self):
        with pytest.raises(FusionError):
            fuse_weights(np.array([[1.0]]))

    def test_asymmetric(self):
        with pytest.raises(FusionError):
            fuse_weights(np.array([[1.0, 0.2], [0.1, 1.0]]))

    def test_covariance_of_eq2_residuals(self, r1, r2, lin2):
        covariance = residual_covariance([r1, r2], lin2.noise_cov)
        assert covariance[0, 0] == pytest.approx(3.0)
        assert covariance[1, 1] == pytest.approx(3.0)
        # v1 and v5 contributions cancel
        assert covariance[0, 1] == pytest.approx(0.0)

    def test_eq2_pipeline(self, r1, r2, lin2):
        fusion = min_variance_fusion([r1, r2], "f2", lin2.noise_cov)
        assert list(fusion.weights) == pytest.approx([0.5, 0.5])
        assert fusion.variance == pytest.approx(1.5)
        assert fusion.variance < 3.0
        assert fusion.residual.fault_gains["f2"] == pytest.approx(1.0)
        assert fusion.residual.equations == EquationSet(["e1", "e2", "e3", "e5"])

    def test_requires_unit_gain(self, r1, r2, lin2):
        doubled = r1.scaled_to("f2")
        doubled = type(doubled)(
            known_gains=doubled.known_gains,
            fault_gains={k: 2 * v for k, v in doubled.fault_gains.items()},
            noise_gains=doubled.noise_gains,
            variance=doubled.variance,
            equations=doubled.equations,
        )
        with pytest.raises(NormalizationMismatchError):
            min_variance_fusion([doubled, r2], "f2", lin2.noise_cov)

    @pytest.mark.parametrize("seed", range(20))
    def test_weights_match_grid_search(self, seed):
        covariance = _random_covariance(seed)
        weights, variance = fuse_weights(covariance)
        expected, best = _grid_minimum(covariance)
        assert np.allclose(weights, expected, rtol=0.0, atol=1e-6)
        assert variance <= best + 1e-12

    @pytest.mark.parametrize("seed", range(20))
    def test_fused_variance_beats_every_input(self, seed):
        covariance = _random_covariance(seed)
        _, variance = fuse_weights(covariance)
        assert variance <= covariance.diagonal().min() + 1e-12

    @pytest.mark.parametrize("seed", range(20))
    def test_weights_are_first_order_optimal(self, seed):
        covariance = _random_covariance(seed)
        weights, variance = fuse_weights(covariance)
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                for step in (1e-6, -1e-6):
                    moved = weights.copy()
                    moved[i] += step
                    moved[j] -= step
                    assert moved @ covariance @ moved >= variance - 1e-12
