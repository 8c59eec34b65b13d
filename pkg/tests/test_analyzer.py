import pytest

from structdiag import StructuralAnalyzer
from structdiag.model import EquationSet, FaultSignature
from structdiag.utils.exceptions import LinearModelError, UnknownOperatorError


@pytest.fixture
def analyzer(eq2_path):
    return StructuralAnalyzer.from_file(eq2_path, operator="backsub")


def test_from_file_keeps_linear_block(analyzer):
    assert analyzer.linear is not None
    assert analyzer.operator.name == "backsub"


def test_default_operator_comes_from_config(eq4):
    assert StructuralAnalyzer(eq4).operator.name == "plus"


def test_unknown_operator(eq4):
    with pytest.raises(UnknownOperatorError):
        StructuralAnalyzer(eq4, operator="nonexistent")


def test_analyses(analyzer):
    assert [str(r.signature) for r in analyzer.rg()] == ["{f2}", "{f1, f2}"]
    assert analyzer.detectable() == FaultSignature(["f1", "f2"])
    assert analyzer.mstar(["e1", "e2", "e3", "e5"]) == EquationSet(["e1", "e2", "e3", "e5"])
    assert len(analyzer.msos()) == 10
    assert analyzer.isolability(["f2"], ["f1"]).isolable
    assert analyzer.dm().m_plus == EquationSet(["e1", "e2", "e3", "e4", "e5"])


def test_rg_is_computed_once(analyzer):
    analyzer.rg()
    analyzer.irg()
    analyzer.rg()
    assert analyzer.stats()["stats"]["rg_runs"] == 1


def test_irg(eq4_path):
    analyzer = StructuralAnalyzer.from_file(eq4_path, operator="lowindex")
    irreducible = [str(r.signature) for r in analyzer.irg() if r.irreducible]
    assert irreducible == ["{f2, f3}", "{f1}", "{f1, f2}", "{f1, f3}"]


def test_residuals_and_fusion(analyzer):
    residuals = analyzer.residuals(["e1", "e2", "e5"]) + analyzer.residuals(["e1", "e3", "e5"])
    fusion = analyzer.fuse(residuals, "f2")
    assert fusion.variance == pytest.approx(1.5)


def test_residuals_need_linear_block(eq4_path):
    analyzer = StructuralAnalyzer.from_file(eq4_path)
    with pytest.raises(LinearModelError):
        analyzer.residuals(["e4", "e5", "e6"])


def test_stats(analyzer):
    analyzer.detectable()
    analyzer.mstar()
    stats = analyzer.stats()
    assert stats["operator"] == "backsub"
    assert stats["model"] == {"name": "eq2", "equations": 5, "unknowns": 2, "faults": 2}
    assert stats["stats"]["analyses"] == 1
    assert stats["stats"]["mstar_calls"] == 1
    assert set(stats["cache"]) == {"entries", "hits", "misses"}


def test_repr(analyzer):
    assert repr(analyzer) == "StructuralAnalyzer(model='eq2', operator='backsub')"
