import json
import random

import pytest

from structdiag.model import (
    EquationSet,
    FaultSignature,
    classify_semi_explicit,
    equations_of_faults,
    faults_of,
    parse_model,
    serialize_model,
)
from structdiag.utils.exceptions import (
    DifferentiationError,
    DuplicateIdentifierError,
    FaultPlacementError,
    ModelError,
    ModelSyntaxError,
    UnknownIdentifierError,
)


def _document(equations, unknowns=("x1",), knowns=(), faults=()):
    return json.dumps(
        {
            "name": "m",
            "unknowns": list(unknowns),
            "knowns": list(knowns),
            "faults": list(faults),
            "equations": equations,
        }
    )


class TestEquationSet:
    def test_canonical_order_and_equality(self):
        assert EquationSet(["e5", "e1", "e2", "e1"]) == EquationSet.of(("e1", "e2", "e5"))
        assert list(EquationSet(["e5", "e1"])) == ["e1", "e5"]

    def test_set_operations(self):
        a = EquationSet(["e1", "e2", "e3"])
        assert a - {"e2"} == EquationSet(["e1", "e3"])
        assert a | ["e4"] == EquationSet(["e1", "e2", "e3", "e4"])
        assert a & ["e3", "e9"] == EquationSet(["e3"])
        assert EquationSet(["e1"]) < a
        assert not a < a

    def test_sort_key_is_size_then_ids(self):
        sets = [EquationSet(["e1", "e2", "e3"]), EquationSet(["e4"]), EquationSet(["e2", "e3"])]
        ordered = sorted(sets, key=lambda s: s.sort_key)
        assert [str(s) for s in ordered] == ["{e4}", "{e2, e3}", "{e1, e2, e3}"]

    def test_equation_set_and_signature_never_compare_equal(self):
        assert EquationSet(["a"]) != FaultSignature(["a"])

    def test_rejects_plain_string(self):
        with pytest.raises(TypeError):
            EquationSet("e1")


class TestParsing:
    def test_eq2_registries(self, eq2):
        assert eq2.name == "eq2"
        assert len(eq2) == 5
        assert list(eq2.unknowns) == ["x1", "x2"]
        assert list(eq2.faults) == ["f1", "f2"]
        assert dict(eq2.fault_home) == {"f1": "e4", "f2": "e5"}

    def test_eq4_differential_equations(self, eq4):
        assert [e.id for e in eq4.equations if e.is_differential] == ["e1", "e2", "e3"]
        assert eq4.equation("e2").differentiated_unknown == "x2"
        assert eq4.equation("e2").algebraic_unknowns == frozenset({"x1", "x2", "x3"})

    def test_json_syntax_error_reports_position(self):
        with pytest.raises(ModelSyntaxError) as info:
            parse_model('{"name": ')
        assert info.value.line == 1
        assert info.value.column is not None

    def test_schema_error_reports_path(self):
        text = _document([{"id": "e1", "unknowns": [{"var": "x1", "diff": "yes"}]}])
        with pytest.raises(ModelSyntaxError) as info:
            parse_model(text)
        assert info.value.path == "$.equations[0].unknowns[0].diff"

    def test_unexpected_key(self):
        text = _document([{"id": "e1", "unknowns": [{"var": "x1"}], "colour": "red"}])
        with pytest.raises(ModelSyntaxError):
            parse_model(text)

    def test_duplicate_equation_id(self):
        text = _document(
            [{"id": "e1", "unknowns": [{"var": "x1"}]}, {"id": "e1", "unknowns": [{"var": "x1"}]}]
        )
        with pytest.raises(DuplicateIdentifierError):
            parse_model(text)

    def test_id_shared_across_kinds(self):
        text = _document([{"id": "e1", "unknowns": [{"var": "x1"}]}], knowns=["x1"])
        with pytest.raises(DuplicateIdentifierError):
            parse_model(text)

    def test_fault_in_two_equations(self):
        text = _document(
            [
                {"id": "e1", "unknowns": [{"var": "x1"}], "faults": ["f1"]},
                {"id": "e2", "unknowns": [{"var": "x1"}], "faults": ["f1"]},
            ],
            faults=["f1"],
        )
        with pytest.raises(FaultPlacementError, match="multiple equations"):
            parse_model(text)

    def test_fault_in_no_equation(self):
        text = _document([{"id": "e1", "unknowns": [{"var": "x1"}]}], faults=["f1"])
        with pytest.raises(FaultPlacementError, match="no equation"):
            parse_model(text)

    def test_two_differentiated_unknowns(self):
        text = _document(
            [{"id": "e1", "unknowns": [{"var": "x1", "diff": True}, {"var": "x2", "diff": True}]}],
            unknowns=["x1", "x2"],
        )
        with pytest.raises(DifferentiationError):
            parse_model(text)

    def test_undeclared_unknown(self):
        text = _document([{"id": "e1", "unknowns": [{"var": "x9"}]}])
        with pytest.raises(ModelError):
            parse_model(text)

    def test_unused_unknown(self):
        text = _document([{"id": "e1", "unknowns": [{"var": "x1"}]}], unknowns=["x1", "x2"])
        with pytest.raises(ModelError, match="occur in no equation"):
            parse_model(text)

    def test_serialize_then_parse_preserves_eq4(self, eq4):
        assert parse_model(serialize_model(eq4)) == eq4

    def test_serialization_is_canonical(self, eq4):
        assert serialize_model(eq4) == serialize_model(parse_model(serialize_model(eq4)))


class TestFaultBookkeeping:
    def test_faults_of(self, eq2):
        assert faults_of(eq2, eq2.subset("e1", "e2", "e3", "e5")) == FaultSignature(["f2"])
        assert faults_of(eq2, eq2.subset("e1", "e2")) == FaultSignature()

    def test_faults_of_unknown_equation(self, eq2):
        with pytest.raises(UnknownIdentifierError):
            faults_of(eq2, ["e9"])

    def test_equations_of_faults(self, eq4):
        assert equations_of_faults(eq4, ["f3", "f1"]) == EquationSet(["e2", "e5"])
        with pytest.raises(UnknownIdentifierError):
            equations_of_faults(eq4, ["f9"])

    def test_fault_equations(self, eq4):
        assert eq4.fault_equations() == EquationSet(["e2", "e4", "e5"])
        assert eq4.fault_equations(["e1", "e4", "e6"]) == EquationSet(["e4"])

    def test_semi_explicit_partition(self, eq4):
        part = classify_semi_explicit(eq4, eq4.subset("e1", "e3", "e4", "e6"))
        assert part.differential == EquationSet(["e1", "e3"])
        assert part.algebraic == EquationSet(["e4", "e6"])
        assert part.x1 == frozenset({"x1", "x3"})
        assert part.x2 == frozenset({"x2"})

    def test_semi_explicit_partition_of_full_ode(self, eq4):
        part = classify_semi_explicit(eq4, eq4.subset("e1", "e2", "e3", "e4", "e6"))
        assert part.differential == EquationSet(["e1", "e2", "e3"])
        assert part.algebraic == EquationSet(["e4", "e6"])
        assert part.x1 == frozenset({"x1", "x2", "x3"})
        assert part.x2 == frozenset()

    def test_semi_explicit_partition_of_sensors(self, eq4):
        part = classify_semi_explicit(eq4, eq4.subset("e4", "e5", "e6"))
        assert part.differential == EquationSet()
        assert part.algebraic == EquationSet(["e4", "e5", "e6"])
        assert part.x1 == frozenset()
        assert part.x2 == frozenset({"x1", "x3"})


def _random_subset(model, rng):
    ids = list(model.all_equations())
    return EquationSet(rng.sample(ids, rng.randint(0, len(ids))))


class TestRandomModels:
    @pytest.mark.parametrize("seed", range(100))
    def test_serialize_then_parse(self, random_model, seed):
        model = random_model(seed)
        assert parse_model(serialize_model(model)) == model

    @pytest.mark.parametrize("seed", range(100))
    def test_faults_of_is_monotone(self, random_model, seed):
        model = random_model(seed)
        rng = random.Random(seed)
        for _ in range(10):
            smaller = _random_subset(model, rng)
            larger = smaller | _random_subset(model, rng)
            assert faults_of(model, smaller) <= faults_of(model, larger)

    @pytest.mark.parametrize("seed", range(100))
    def test_every_fault_is_in_its_home_equation(self, random_model, seed):
        model = random_model(seed)
        for fault, home in model.fault_home.items():
            assert fault in faults_of(model, [home])

    @pytest.mark.parametrize("seed", range(100))
    def test_semi_explicit_partition_covers_subset(self, random_model, seed):
        model = random_model(seed)
        rng = random.Random(seed)
        for _ in range(10):
            subset = _random_subset(model, rng)
            part = classify_semi_explicit(model, subset)
            assert part.differential | part.algebraic == subset
            assert not part.differential & part.algebraic
            assert part.x1 | part.x2 == model.unknowns_of(subset)
            assert not part.x1 & part.x2
