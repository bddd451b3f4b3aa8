"""
Command line front-end.

Reads JSON input documents, runs one computation and prints a JSON report (or a
CSV projection of a dimension table) on standard output. Logs go to stderr.

Exit codes: 0 on success, 2 on invalid input, 3 when a resource cap is exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from pydantic import ValidationError

from . import __version__
from .bracket import is_poisson_tensor, kontsevich_bracket
from .classical import classical_cohomology, comm_poly, trace_map
from .cohomology import cohomology_summary, dims_by_weight, tensor_weight
from .config import Settings, get_settings
from .exceptions import CapExceededError, ConfigurationError, DoublePoissonError, InputFormatError
from .finalg import (
    catalogue_2dim,
    catalogue_entry,
    compare_weight1,
    equivalence_trials,
    hochschild_dims,
    is_associative,
)
from .necklace import PolyField
from .schemas import AlgebraDocument, PolyFieldDocument

logger = logging.getLogger(__name__)

TOOL_NAME = "double-poisson"

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP = 3

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def parse_range(text: str) -> range:
    """``"0..5"`` -> range(0, 6); a single integer is a one-element range."""
    try:
        if ".." in text:
            low, high = (int(part) for part in text.split("..", 1))
        else:
            low = high = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LOW..HIGH, got {text!r}") from None
    if low < 0 or high < low:
        raise argparse.ArgumentTypeError(f"empty or negative range {text!r}")
    return range(low, high + 1)


class _Inputs:
    """Input files read by a command, hashed for the reproducibility header."""

    def __init__(self) -> None:
        self._digest = hashlib.sha256()

    def read_json(self, path: Path) -> Any:
        try:
            raw = Path(path).read_bytes()
        except OSError as exc:
            raise InputFormatError(f"Cannot read {path}: {exc}") from exc
        self._digest.update(raw)
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"Malformed JSON in {path}: {exc}") from exc

    def note(self, text: str) -> None:
        self._digest.update(text.encode("utf-8"))

    def polyfield(self, path: Path) -> PolyField:
        return PolyFieldDocument.model_validate(self.read_json(path)).to_polyfield()

    @property
    def sha256(self) -> str:
        return self._digest.hexdigest()


def _header(command: str, inputs: _Inputs, settings: Settings) -> Dict[str, Any]:
    return {
        "tool": TOOL_NAME,
        "version": __version__,
        "command": command,
        "input_sha256": inputs.sha256,
        "caps": settings.caps(),
        "seed": settings.seed,
    }


class Output:
    """A JSON report plus, for dimension tables, the rows of its CSV projection."""

    def __init__(self, report: Dict[str, Any], table: Optional[List[Dict[str, Any]]] = None) -> None:
        self.report = report
        self.table = table


def _check_tensor(args: argparse.Namespace, inputs: _Inputs, settings: Settings) -> Output:
    P = inputs.polyfield(args.file)
    check = is_poisson_tensor(P)
    return Output(check.to_dict())


def _bracket(args: argparse.Namespace, inputs: _Inputs, settings: Settings) -> Output:
    left = inputs.polyfield(args.left)
    right = inputs.polyfield(args.right)
    return Output({"bracket": kontsevich_bracket(left, right).to_terms()})


def _cohomology(args: argparse.Namespace, inputs: _Inputs, settings: Settings) -> Output:
    P = inputs.polyfield(args.file)
    reports = cohomology_summary(P, args.stars, args.weights, settings, representatives=args.representatives)
    rows = [report.to_dict(include_representatives=args.representatives) for report in reports]
    dims = {f"H{k}": dims_by_weight(reports, k) for k in args.stars}
    table = [report.to_dict(include_representatives=False) for report in reports]
    return Output({"tensor_weight": tensor_weight(P), "dims": dims, "bidegrees": rows}, table)


def _classify_linear(args: argparse.Namespace, inputs: _Inputs, settings: Settings) -> Output:
    if args.random is not None:
        inputs.note(f"random={args.random};seed={settings.seed};dim={args.dim}")
        report = equivalence_trials(args.dim, args.random, settings.seed).to_dict()
        table = [{key: report[key] for key in ("n", "trials", "seed", "associative", "equivalence_holds")}]
        return Output(report, table)

    entries = []
    for entry in catalogue_2dim():
        data = entry.to_dict()
        data["is_associative"] = is_associative(entry.constants).is_associative
        data["is_poisson"] = is_poisson_tensor(entry.tensor).is_poisson
        entries.append(data)
    table = [{key: entry[key] for key in ("name", "is_associative", "is_poisson")} for entry in entries]
    report = {"algebras": entries, "all_poisson": all(entry["is_poisson"] for entry in entries)}
    return Output(report, table)


def _hochschild(args: argparse.Namespace, inputs: _Inputs, settings: Settings) -> Output:
    if args.algebra is not None:
        inputs.note(f"algebra={args.algebra}")
        constants = catalogue_entry(args.algebra).constants
    elif args.file is not None:
        constants = AlgebraDocument.model_validate(inputs.read_json(args.file)).to_constants()
    else:
        raise InputFormatError("hochschild needs an algebra file or --algebra NAME")
    inputs.note(f"max={args.max}")

    report: Dict[str, Any] = {"algebra": constants.to_dict()}
    table = hochschild_dims(constants, args.max, settings).degrees
    report["hochschild"] = table
    if args.compare:
        comparison = [row.to_dict() for row in compare_weight1(constants, args.max, settings)]
        report["weight1_comparison"] = comparison
        report["all_match"] = all(row["dims_match"] and row["intertwines"] for row in comparison)
        table = comparison
    return Output(report, table)


def _classical(args: argparse.Namespace, inputs: _Inputs, settings: Settings) -> Output:
    inputs.note(f"psi={args.psi};max_degree={args.max_degree}")
    report = classical_cohomology(comm_poly(args.psi), args.max_degree, settings).to_dict()
    return Output(report, report["degrees"])


def _trace(args: argparse.Namespace, inputs: _Inputs, settings: Settings) -> Output:
    field_ = inputs.polyfield(args.file)
    return Output({"trace": trace_map(field_, args.grade).to_dict()})


COMMANDS = {
    "check-tensor": _check_tensor,
    "bracket": _bracket,
    "cohomology": _cohomology,
    "classify-linear": _classify_linear,
    "hochschild": _hochschild,
    "classical": _classical,
    "trace": _trace,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Exact double Poisson-Lichnerowicz cohomology computations.",
        allow_abbrev=False,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=("json", "csv"), default="json", help="Output format.")
    parser.add_argument("--log-level", default=None, help="Logging level (default from DOUBLE_POISSON_LOG_LEVEL).")
    parser.add_argument("--max-stars", type=int, default=None, help="Largest reported star degree.")
    parser.add_argument("--max-weight", type=int, default=None, help="Largest reported weight.")
    parser.add_argument("--max-chain-dim", type=int, default=None, help="Largest chain space dimension.")
    parser.add_argument("--seed", type=int, default=None, help="Seed for randomized suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check-tensor", help="Check {P, P} = 0 for a tensor file.")
    check.add_argument("file", type=Path)

    bracket = sub.add_parser("bracket", help="Kontsevich bracket of two PolyField files.")
    bracket.add_argument("left", type=Path)
    bracket.add_argument("right", type=Path)

    cohomology = sub.add_parser("cohomology", help="Cohomology of d_P per bidegree.")
    cohomology.add_argument("file", type=Path)
    cohomology.add_argument("--stars", type=parse_range, default=range(0, 2), help="Star degrees, e.g. 0..1.")
    cohomology.add_argument("--weights", type=parse_range, default=range(0, 6), help="Weights, e.g. 0..5.")
    cohomology.add_argument("--representatives", action="store_true", help="Include class representatives.")

    classify = sub.add_parser("classify-linear", help="Linear tensors versus associative algebras.")
    mode = classify.add_mutually_exclusive_group()
    mode.add_argument("--catalogue", action="store_true", help="Verify the seven two-dimensional algebras.")
    mode.add_argument("--random", type=int, default=None, metavar="N", help="Run N random equivalence trials.")
    classify.add_argument("--dim", type=int, choices=(2, 3), default=2, help="Algebra dimension for --random.")
    classify.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="Seed for --random (same as the global flag).")

    hochschild = sub.add_parser("hochschild", help="Hochschild cohomology of a finite-dimensional algebra.")
    hochschild.add_argument("file", type=Path, nargs="?")
    hochschild.add_argument("--algebra", default=None, help="Catalogue algebra name, e.g. B2^1.")
    hochschild.add_argument("--max", type=int, default=3, help="Largest degree.")
    hochschild.add_argument("--compare", action="store_true", help="Compare with weight-1 cohomology.")

    classical = sub.add_parser("classical", help="Poisson cohomology of psi d/dx^d/dy on the plane.")
    classical.add_argument("--psi", required=True, help='Polynomial such as "x^2".')
    classical.add_argument("--max-degree", type=int, default=6)

    trace = sub.add_parser("trace", help="Trace of a PolyField on one-dimensional representations.")
    trace.add_argument("file", type=Path)
    trace.add_argument("--grade", type=int, default=None, help="Grade to report for the zero field.")
    return parser


def _configure_logging(level: str) -> None:
    if not isinstance(logging.getLevelName(level.upper()), int):
        raise ConfigurationError(f"Unknown log level {level!r}")
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, stream=sys.stderr, force=True)


def _emit(output: Output, header: Dict[str, Any], fmt: str) -> None:
    if fmt == "csv":
        if output.table is None:
            raise InputFormatError("CSV output is only available for dimension tables")
        _write_csv(output.table, header)
        return
    print(json.dumps({"status": "ok", "header": header, **output.report}, indent=2, ensure_ascii=True))


def _write_csv(rows: Iterable[Dict[str, Any]], header: Dict[str, Any]) -> None:
    rows = list(rows)
    print(f"# {TOOL_NAME} {header['version']} {header['command']} sha256={header['input_sha256']} seed={header['seed']}")
    if not rows:
        return
    writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def _fail(exc: Exception, code: int) -> int:
    logger.error(f"{type(exc).__name__}: {exc}")
    document = {"status": "error", "error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(document, indent=2, ensure_ascii=True))
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = get_settings().with_overrides(
            max_stars=args.max_stars,
            max_weight=args.max_weight,
            max_chain_dim=args.max_chain_dim,
            seed=args.seed,
        )
        _configure_logging(args.log_level or settings.log_level)
    except DoublePoissonError as exc:
        return _fail(exc, EXIT_INVALID)

    inputs = _Inputs()
    try:
        output = COMMANDS[args.command](args, inputs, settings)
        _emit(output, _header(args.command, inputs, settings), args.format)
    except CapExceededError as exc:
        return _fail(exc, EXIT_CAP)
    except (DoublePoissonError, ValidationError) as exc:
        return _fail(exc, EXIT_INVALID)
    logger.debug(f"{args.command} finished")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
