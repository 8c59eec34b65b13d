"""structdiag command line.

Usage:
    structdiag <command> <model.json> [--operator NAME] [--format table|json|csv]
               [--oracle-bound N] [--log-level LEVEL]

Commands:
    dm            Coarse DM decomposition and bi-adjacency grid
    mso           Minimal structurally overdetermined sets
    mtes          Minimal test equation supports and their test supports
    rg            RG sets and fault signatures
    irg           Irreducible RG sets
    detect        Structurally detectable faults
    isolate       Isolability of --from from --wrt, or the single-fault matrix
    residual      Linear residuals of --set sets, optionally fused with --fuse
    oracle-check  Compare every enumerator with its brute-force oracle

Exit status: 0 on success, 1 on an analysis or configuration error, 2 on an
input error, 3 when oracle-check finds a mismatch.
"""

import argparse
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, TextIO

from ..api.analyzer import StructuralAnalyzer
from ..graph.bipartite import bipartite_structure
from ..model.structural import faults_of
from ..utils.config import Config
from ..utils.exceptions import (
    AnalysisError,
    ConfigurationError,
    ModelError,
    OracleMismatchError,
)
from ..utils.logger import Logger, get_logger
from .render import Report, format_gains, format_ids, format_number, render

logger = get_logger()

COMMANDS = ("dm", "mso", "mtes", "rg", "irg", "detect", "isolate", "residual", "oracle-check")

EXIT_OK = 0
EXIT_ANALYSIS = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3


@dataclass
class RunConfig:
    """One command-line invocation.

    Unset options fall back to the environment and then to Config defaults.
    """

    model_path: str
    command: str
    operator: Optional[str] = None
    output_format: Optional[str] = None
    oracle_bound: Optional[int] = None
    log_level: Optional[str] = None
    from_mode: List[str] = field(default_factory=list)
    wrt_mode: List[str] = field(default_factory=list)
    sets: List[List[str]] = field(default_factory=list)
    fuse: Optional[str] = None


def _id_list(text: str) -> List[str]:
    ids = [part.strip() for part in text.split(",") if part.strip()]
    if not ids:
        raise argparse.ArgumentTypeError(f"expected a comma-separated id list, got {text!r}")
    return ids


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser, one subcommand per analysis."""
    parser = argparse.ArgumentParser(
        prog="structdiag",
        description="Structural analysis for model-based fault diagnosis.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("model_path", metavar="model.json")
    parser.add_argument("--operator", help="testability operator (default: plus)")
    parser.add_argument(
        "--format", dest="output_format", choices=Config.VALID_OUTPUT_FORMATS, help="output format"
    )
    parser.add_argument("--oracle-bound", type=int, help="largest model an oracle enumerates")
    parser.add_argument(
        "--log-level", type=str.upper, choices=Config.VALID_LOG_LEVELS, help="log level"
    )
    parser.add_argument("--from", dest="from_mode", type=_id_list, default=[], metavar="FAULTS")
    parser.add_argument("--wrt", dest="wrt_mode", type=_id_list, default=[], metavar="FAULTS")
    parser.add_argument(
        "--set", dest="sets", type=_id_list, action="append", default=[], metavar="EQUATIONS"
    )
    parser.add_argument("--fuse", metavar="FAULT", help="fuse residuals normalized to FAULT")
    return parser


def _dm(analyzer: StructuralAnalyzer, config: RunConfig) -> Report:
    result = analyzer.dm()
    parts = [
        ("M+", result.m_plus, result.x_plus),
        ("M0", result.m_zero, result.x_zero),
        ("M-", result.m_minus, result.x_minus),
    ]
    structure = bipartite_structure(analyzer.model, analyzer.model.all_equations())
    return Report(
        headers=("Part", "Equations", "Unknowns"),
        rows=[(name, format_ids(eqs), format_ids(sorted(xs))) for name, eqs, xs in parts],
        payload=result.to_dict(),
        footer=structure.render(),
    )


def _mso(analyzer: StructuralAnalyzer, config: RunConfig) -> Report:
    model = analyzer.model
    records = [(mso, faults_of(model, mso)) for mso in analyzer.msos()]
    return Report(
        headers=("MSO set", "Faults"),
        rows=[(str(mso), str(faults)) for mso, faults in records],
        payload=[{"set": list(mso), "signature": list(faults)} for mso, faults in records],
    )


def _mtes(analyzer: StructuralAnalyzer, config: RunConfig) -> Report:
    model = analyzer.model
    records = [(mtes, faults_of(model, mtes)) for mtes in analyzer.mtes()]
    return Report(
        headers=("MTES", "Test support"),
        rows=[(str(mtes), str(support)) for mtes, support in records],
        payload=[{"set": list(mtes), "signature": list(support)} for mtes, support in records],
    )


def _rg(analyzer: StructuralAnalyzer, config: RunConfig) -> Report:
    results = analyzer.irg()
    return Report(
        headers=("RG set", "Fault signature", "Redundancy"),
        rows=[(str(r.equations), str(r.signature), str(r.redundancy)) for r in results],
        payload=[r.to_dict() for r in results],
    )


def _irg(analyzer: StructuralAnalyzer, config: RunConfig) -> Report:
    results = [r for r in analyzer.irg() if r.irreducible]
    return Report(
        headers=("IRG set", "Fault signature"),
        rows=[(str(r.equations), str(r.signature)) for r in results],
        payload=[r.to_dict() for r in results],
    )


def _detect(analyzer: StructuralAnalyzer, config: RunConfig) -> Report:
    detected = analyzer.detectable()
    faults = list(analyzer.model.faults)
    return Report(
        headers=("Fault", "Detectable"),
        rows=[(f, "yes" if f in detected else "no") for f in faults],
        payload={
            "operator": analyzer.operator.name,
            "detectable": list(detected),
            "undetectable": [f for f in faults if f not in detected],
        },
    )


def _isolate(analyzer: StructuralAnalyzer, config: RunConfig) -> Report:
    if bool(config.from_mode) != bool(config.wrt_mode):
        raise ConfigurationError("isolate needs both --from and --wrt, or neither")

    if config.from_mode:
        verdict = analyzer.isolability(config.from_mode, config.wrt_mode)
        return Report(
            headers=("From", "W.r.t.", "Isolable", "Witness"),
            rows=[
                (
                    str(verdict.from_mode),
                    str(verdict.wrt_mode),
                    "yes" if verdict.isolable else "no",
                    verdict.witness or "-",
                )
            ],
            payload=verdict.to_dict(),
        )

    matrix = analyzer.isolability_matrix()
    return Report(
        headers=("Fault", *matrix.faults),
        rows=[(fault, *("X" if v else "." for v in row)) for fault, row in matrix.rows()],
        payload=matrix.to_dict(),
    )


def _residual(analyzer: StructuralAnalyzer, config: RunConfig) -> Report:
    if not config.sets:
        raise ConfigurationError("residual needs at least one --set")

    residuals = []
    for equations in config.sets:
        residuals.extend(analyzer.residuals(equations))

    rows = [
        (
            str(r.equations),
            r.residual_equation or "-",
            format_gains(r.known_gains),
            format_gains(r.fault_gains),
            format_gains(r.noise_gains),
            format_number(r.variance),
        )
        for r in residuals
    ]
    payload = {"residuals": [r.to_dict() for r in residuals]}

    footer = None
    if config.fuse:
        fusion = analyzer.fuse(residuals, config.fuse)
        fused = fusion.residual
        rows.append(
            (
                "fused",
                "-",
                format_gains(fused.known_gains),
                format_gains(fused.fault_gains),
                format_gains(fused.noise_gains),
                format_number(fusion.variance),
            )
        )
        payload["fusion"] = fusion.to_dict()
        footer = "Fusion weights: " + " ".join(format_number(w) for w in fusion.weights)

    return Report(
        headers=("Set", "Residual equation", "Known gains", "Fault gains", "Noise gains", "Variance"),
        rows=rows,
        payload=payload,
        footer=footer,
    )


def _oracle_check(analyzer: StructuralAnalyzer, config: RunConfig) -> Report:
    report = analyzer.oracle_check()
    return Report(
        headers=("Check", "Operator", "Matched"),
        rows=[
            (c.check, c.operator or "-", "yes" if c.matched else "no") for c in report.comparisons
        ],
        payload=report.to_dict(),
        footer=None if report.matched else "Mismatches: " + ", ".join(
            c.check if c.operator is None else f"{c.check}[{c.operator}]"
            for c in report.mismatches()
        ),
    )


HANDLERS: Dict[str, Callable[[StructuralAnalyzer, RunConfig], Report]] = {
    "dm": _dm,
    "mso": _mso,
    "mtes": _mtes,
    "rg": _rg,
    "irg": _irg,
    "detect": _detect,
    "isolate": _isolate,
    "residual": _residual,
    "oracle-check": _oracle_check,
}


def _apply_settings(config: RunConfig) -> Config:
    settings = Config()
    settings.load_environment()
    if config.oracle_bound is not None:
        settings.set_oracle_bound(config.oracle_bound)
    if config.log_level is not None:
        settings.set_log_level(config.log_level)
    if config.output_format is not None:
        settings.set_output_format(config.output_format)
    if config.operator is not None:
        settings.set_default_operator(config.operator)
    Logger().reconfigure()
    return settings


def execute(
    config: RunConfig, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None
) -> int:
    """Run one command and write its output.

    Args:
        config: The invocation
        stdout: Stream for analysis output (defaults to sys.stdout)
        stderr: Stream for diagnostics (defaults to sys.stderr)

    Returns:
        The exit status

    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    try:
        settings = _apply_settings(config)
        analyzer = StructuralAnalyzer.from_file(config.model_path, settings.default_operator)
        report = HANDLERS[config.command](analyzer, config)
        stdout.write(render(report, settings.output_format))
        logger.info(f"{config.command}: {analyzer.stats()['stats']}")
    except OracleMismatchError as e:
        stderr.write(f"structdiag: {e}\n")
        return EXIT_MISMATCH
    except (ModelError, OSError) as e:
        stderr.write(f"structdiag: {e}\n")
        return EXIT_INPUT
    except (AnalysisError, ConfigurationError) as e:
        stderr.write(f"structdiag: {e}\n")
        return EXIT_ANALYSIS

    if config.command == "oracle-check" and not report.payload["matched"]:
        stderr.write("structdiag: oracle mismatch\n")
        return EXIT_MISMATCH
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Console entry point.

    Args:
        argv: Arguments without the program name; defaults to sys.argv

    Returns:
        Exit status: 0 success, 1 analysis or configuration error, 2 model or
        I/O error, 3 oracle mismatch

    """
    args = build_parser().parse_args(argv)
    config = RunConfig(
        model_path=args.model_path,
        command=args.command,
        operator=args.operator,
        output_format=args.output_format,
        oracle_bound=args.oracle_bound,
        log_level=args.log_level,
        from_mode=args.from_mode,
        wrt_mode=args.wrt_mode,
        sets=args.sets,
        fuse=args.fuse,
    )
    return execute(config)


if __name__ == "__main__":
    sys.exit(main())
