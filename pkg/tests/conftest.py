import random
from pathlib import Path

import pytest

from structdiag.cache.subset_cache import reset_subset_cache
from structdiag.linres.linear_model import parse_linear_block
from structdiag.model.parser import load_document, load_model, model_from_data
from structdiag.utils.config import Config
from structdiag.utils.logger import Logger

MODELS = Path(__file__).resolve().parent.parent / "models"
EQ2_PATH = MODELS / "eq2.json"
EQ4_PATH = MODELS / "eq4.json"


@pytest.fixture(autouse=True)
def fresh_config():
    """Every test starts from default settings and an empty subset cache."""
    Config.reset()
    reset_subset_cache()
    Logger().reconfigure()
    yield
    Config.reset()
    reset_subset_cache()


@pytest.fixture
def eq2_path():
    return EQ2_PATH


@pytest.fixture
def eq4_path():
    return EQ4_PATH


@pytest.fixture
def eq2():
    return load_model(EQ2_PATH)


@pytest.fixture
def eq4():
    return load_model(EQ4_PATH)


@pytest.fixture
def lin2():
    _, linear = load_document(EQ2_PATH)
    return linear


@pytest.fixture
def three_ode():
    """x1' = f(x1, x3), x2' = g(x2, x3), x3' = h(x1); no redundancy."""
    return model_from_data(
        {
            "name": "three-ode",
            "unknowns": ["x1", "x2", "x3"],
            "equations": [
                {"id": "e1", "unknowns": [{"var": "x1", "diff": True}, {"var": "x1"}, {"var": "x3"}]},
                {"id": "e2", "unknowns": [{"var": "x2", "diff": True}, {"var": "x2"}, {"var": "x3"}]},
                {"id": "e3", "unknowns": [{"var": "x3", "diff": True}, {"var": "x1"}]},
            ],
        }
    )


@pytest.fixture
def identity_linear():
    """Two copies of x - y = 0."""
    model = model_from_data(
        {
            "name": "identity",
            "unknowns": ["x"],
            "knowns": ["y"],
            "equations": [
                {"id": "e1", "unknowns": [{"var": "x"}], "knowns": ["y"]},
                {"id": "e2", "unknowns": [{"var": "x"}], "knowns": ["y"]},
            ],
        }
    )
    block = {"equations": {"e1": {"x": 1, "y": -1}, "e2": {"x": 1, "y": -1}}}
    return parse_linear_block(model, block)


def random_model_data(seed: int, max_equations: int = 10) -> dict:
    """A valid random model document.

    At most 8 unknowns and 4 faults; each fault sits in its own equation and
    every unknown occurs somewhere. About a third of the equations
    differentiate one of their unknowns.
    """
    rng = random.Random(seed)
    n_equations = rng.randint(3, max_equations)
    n_unknowns = rng.randint(1, min(8, n_equations))
    n_faults = rng.randint(0, min(4, n_equations))

    unknowns = [f"x{i + 1}" for i in range(n_unknowns)]
    faults = [f"f{i + 1}" for i in range(n_faults)]

    contents = [set(rng.sample(unknowns, rng.randint(1, min(3, n_unknowns)))) for _ in range(n_equations)]
    for unknown in unknowns:
        if not any(unknown in content for content in contents):
            contents[rng.randrange(n_equations)].add(unknown)

    equations = []
    fault_rows = rng.sample(range(n_equations), n_faults)
    for index, content in enumerate(contents):
        incidences = []
        derivative = sorted(content)[rng.randrange(len(content))] if rng.random() < 0.35 else None
        for unknown in sorted(content):
            if unknown == derivative:
                incidences.append({"var": unknown, "diff": True})
                if rng.random() < 0.5:
                    incidences.append({"var": unknown})
            else:
                incidences.append({"var": unknown})
        entry = {"id": f"e{index + 1}", "unknowns": incidences}
        if index in fault_rows:
            entry["faults"] = [faults[fault_rows.index(index)]]
        equations.append(entry)

    return {
        "name": f"random-{seed}",
        "unknowns": unknowns,
        "faults": faults,
        "equations": equations,
    }


@pytest.fixture
def random_model():
    """Factory building the random model for a seed."""

    def build(seed: int, max_equations: int = 10):
        return model_from_data(random_model_data(seed, max_equations))

    return build
