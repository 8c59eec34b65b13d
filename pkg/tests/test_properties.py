"""Randomised invariants and oracle equivalence over seeded models."""

import itertools
import random

import pytest

from structdiag.enumeration import brute_force_msos, brute_force_rg, find_irg, find_msos, find_rg
from structdiag.graph import (
    PsoClass,
    bipartite_structure,
    classify_pso,
    dm_decompose,
    is_minimal_pso,
    overdetermined_part,
    redundancy,
)
from structdiag.model import EquationSet
from structdiag.operators import (
    audit_union_closure,
    brute_force_mstar,
    mstar,
    testable_pso_subsets as find_testable_pso_subsets,
)

SEEDS = range(200)
OPERATORS = ("plus", "backsub", "lowindex")


def _signature_map(results):
    return {r.signature: r.equations for r in results}


def _random_subsets(model, seed, count=4):
    rng = random.Random(seed)
    ids = list(model.all_equations())
    return [EquationSet(rng.sample(ids, rng.randint(1, len(ids)))) for _ in range(count)]


@pytest.mark.parametrize("seed", SEEDS)
def test_dm_invariants(random_model, seed):
    model = random_model(seed)
    for subset in [model.all_equations(), *_random_subsets(model, seed)]:
        dm = dm_decompose(model, subset)
        structure = bipartite_structure(model, subset)

        assert dm.m_plus | dm.m_zero | dm.m_minus == subset
        assert len(dm.m_plus) + len(dm.m_zero) + len(dm.m_minus) == len(subset)
        assert dm.x_plus | dm.x_zero | dm.x_minus == model.unknowns_of(subset)
        assert not (dm.x_plus & dm.x_zero or dm.x_plus & dm.x_minus or dm.x_zero & dm.x_minus)

        if dm.m_plus:
            assert len(dm.m_plus) > len(dm.x_plus)
        assert len(dm.m_zero) == len(dm.x_zero)
        if dm.m_minus:
            assert len(dm.m_minus) < len(dm.x_minus)

        for row in dm.m_plus:
            assert structure.neighbours(row) <= dm.x_plus
        for row in dm.m_zero:
            assert not structure.neighbours(row) & dm.x_minus

        assert dm.matching.size == len(dm.x_plus) + len(dm.m_zero) + len(dm.m_minus)


@pytest.mark.parametrize("seed", SEEDS)
def test_overdetermined_part(random_model, seed):
    model = random_model(seed)
    for subset in _random_subsets(model, seed):
        plus = overdetermined_part(model, subset)
        assert overdetermined_part(model, plus) == plus
        assert plus <= overdetermined_part(model, model.all_equations())


@pytest.mark.parametrize("seed", SEEDS)
def test_redundancy_drops_by_one(random_model, seed):
    model = random_model(seed)
    pso = overdetermined_part(model, model.all_equations())
    phi = redundancy(model, pso)
    for equation in pso:
        assert redundancy(model, overdetermined_part(model, pso - {equation})) == phi - 1


@pytest.mark.parametrize("seed", range(50))
def test_mso_criteria_agree(random_model, seed):
    model = random_model(seed, max_equations=8)
    members = list(model.all_equations())
    for size in range(1, len(members) + 1):
        for subset in itertools.combinations(members, size):
            verdict = classify_pso(model, subset)
            if verdict is not PsoClass.NOT_PSO:
                assert (verdict is PsoClass.MSO) == is_minimal_pso(model, subset)


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("operator", OPERATORS)
def test_mstar_matches_oracle(random_model, seed, operator):
    model = random_model(seed)
    for subset in [model.all_equations(), *_random_subsets(model, seed)]:
        assert mstar(model, subset, operator) == brute_force_mstar(model, subset, operator)


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("operator", OPERATORS)
def test_mstar_is_idempotent(random_model, seed, operator):
    model = random_model(seed)
    once = mstar(model, model.all_equations(), operator)
    assert mstar(model, once, operator) == once


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("operator", OPERATORS)
def test_operators_are_union_closed(random_model, seed, operator):
    assert audit_union_closure(random_model(seed), operator) == []


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("operator", OPERATORS)
def test_mstar_contains_every_testable_pso_subset(random_model, seed, operator):
    model = random_model(seed)
    largest = mstar(model, model.all_equations(), operator)
    for candidate in find_testable_pso_subsets(model, model.all_equations(), operator):
        assert candidate <= largest


@pytest.mark.parametrize("seed", SEEDS)
@pytest.mark.parametrize("operator", OPERATORS)
def test_rg_matches_oracle(random_model, seed, operator):
    model = random_model(seed)
    assert _signature_map(find_rg(model, operator)) == _signature_map(brute_force_rg(model, operator))


@pytest.mark.parametrize("seed", SEEDS)
def test_msos_match_oracle(random_model, seed):
    model = random_model(seed)
    found = find_msos(model)
    assert set(found) == set(brute_force_msos(model))
    assert all(classify_pso(model, mso) is PsoClass.MSO for mso in found)


@pytest.mark.parametrize("seed", SEEDS)
def test_irreducible_signatures_are_minimal_generators(random_model, seed):
    model = random_model(seed)
    results = find_irg(find_rg(model, "plus"))
    generators = [r.signature for r in results if r.irreducible]

    for result in results:
        union = set()
        for generator in generators:
            if generator <= result.signature:
                union |= set(generator)
        assert union == set(result.signature)

    for dropped in generators:
        union = set()
        for generator in generators:
            if generator != dropped and generator <= dropped:
                union |= set(generator)
        assert union != set(dropped)
