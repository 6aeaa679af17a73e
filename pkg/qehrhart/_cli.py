"""
Command-line front end.

Usage:
    qehrhart qehrhart --polytope triangle --mmax 4                 # q-Ehrhart rows
    qehrhart qehrhart --polytope P.json --mmax 4 --method all       # cross-check the pipelines
    qehrhart filtration --polytope gk-triangle --m 3 --format json
    qehrhart gk-check --polytope gk-triangle --mmax 3 --kmax 2
    qehrhart lemma32 --polytope square --dilation 2 --trials 50 --seed 7

Exit codes: 0 success, 1 input error, 2 compute budget exceeded, 3 pipelines disagree
or a randomized check found a violation.
"""
import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from ._budget import BudgetExceeded
from ._checks import CheckReport
from ._harmonic import METHODS, verify_agreement
from ._polytope import BUILTIN_POLYTOPES, Polytope, builtin_polytope, load_polytope
from ._qehrhart import QEhrhart, Settings, data_dir

VERSION = "0.1.0"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_DISAGREE = 3

FORMATS = ("table", "csv", "json")
SUBCOMMANDS = ("points", "ehrhart", "qehrhart", "filtration", "harmonic-basis",
               "generators", "gk-check", "lemma32", "mult-check")
SUBCOMMAND_HELP = {
    "points": "List the lattice points of mP (--m)",
    "ehrhart": "Lattice point counts for m = 0..mmax",
    "qehrhart": "Bigraded q-Ehrhart rows (--method filtration|harmonic|dual|all)",
    "filtration": "dim F_{m,d} for one dilation (--m, optional --d)",
    "harmonic-basis": "Graded basis of the harmonic space of mP (--method harmonic|dual)",
    "generators": "New generators of the harmonic algebra per bidegree",
    "gk-check": "Vanishing order, divisibility and property-3 diagnostics",
    "lemma32": "Randomized lowest-part comparison on mP (--trials, --seed)",
    "mult-check": "Randomized multiplicativity check (--samples, --seed)",
}


class InputError(Exception):
    """Bad command line or polytope input; reported with exit code 1."""


@dataclass
class RunConfig:
    subcommand: str
    polytope: str
    m_max: int = 4
    method: str = "filtration"
    m: int = 1
    d: Optional[int] = None
    kmax: Optional[int] = None
    seed: Optional[int] = None
    trials: int = 50
    samples: int = 20
    format: str = "table"
    output: Optional[Path] = None
    cache_dir: Optional[Path] = None
    use_cache: bool = True
    max_entries: Optional[int] = None
    jobs: Optional[int] = None

    def validate(self):
        if self.subcommand not in SUBCOMMANDS:
            raise InputError(f"unknown subcommand {self.subcommand!r}")
        if self.m_max < 0:
            raise InputError(f"--mmax must be nonnegative, got {self.m_max}")
        if self.d is not None and self.d < 0:
            raise InputError(f"--d must be nonnegative, got {self.d}")
        if self.m < 0:
            raise InputError(f"--m must be nonnegative, got {self.m}")
        if self.method not in METHODS + ("all",):
            raise InputError(f"--method must be one of {METHODS + ('all',)}, got {self.method!r}")
        if self.format not in FORMATS:
            raise InputError(f"--format must be one of {FORMATS}, got {self.format!r}")
        if self.jobs is not None and self.jobs < 1:
            raise InputError(f"--jobs must be positive, got {self.jobs}")
        if self.max_entries is not None and self.max_entries < 1:
            raise InputError(f"--max-entries must be positive, got {self.max_entries}")


def load_input_polytope(spec: str) -> Polytope:
    """A builtin name or a path to a JSON polytope file."""
    if spec in BUILTIN_POLYTOPES:
        return builtin_polytope(spec)
    path = Path(spec)
    if not path.is_file():
        raise InputError(f"{spec!r} is neither a builtin polytope {sorted(BUILTIN_POLYTOPES)} nor a file")
    return load_polytope(path)


def _csv(header: List[str], rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(str(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


# Each handler returns (json payload, table text, csv text or None, exit code)
Outcome = Tuple[Dict, str, Optional[str], int]


def run_points(qe: QEhrhart, config: RunConfig) -> Outcome:
    Z = qe.lattice_points(config.m)
    text = f"{len(Z)} lattice points in {config.m}P\n" + "\n".join(str(p) for p in Z)
    return Z.to_dict(), text, _csv([f"x{i + 1}" for i in range(Z.dim)], Z), EXIT_OK


def run_ehrhart(qe: QEhrhart, config: RunConfig) -> Outcome:
    counts = qe.ehrhart(config.m_max)
    rows = list(enumerate(counts))
    text = "\n".join(f"m={m}: {count}" for m, count in rows)
    return {"counts": [{"m": m, "count": c} for m, c in rows]}, text, _csv(["m", "count"], rows), EXIT_OK


def run_qehrhart(qe: QEhrhart, config: RunConfig) -> Outcome:
    if config.method != "all":
        table = qe.q_ehrhart(config.m_max, config.method)
        return table.to_dict(), table.render(), table.to_csv(), EXIT_OK
    tables = qe.q_ehrhart_all(config.m_max)
    problems = verify_agreement(tables)
    reference = tables["filtration"]
    payload = {"methods": {name: t.to_dict() for name, t in tables.items()}, "agree": not problems,
               "disagreements": problems}
    text = reference.render() + "\n\n" + ("all methods agree" if not problems else "\n".join(problems))
    return payload, text, reference.to_csv(), EXIT_DISAGREE if problems else EXIT_OK


def run_filtration(qe: QEhrhart, config: RunConfig) -> Outcome:
    table = qe.filtration(config.m, with_bases=config.format == "json")
    rows = [(config.m, d, dim) for d, dim in enumerate(table.dims) if config.d is None or d == config.d]
    text = "\n".join(f"dim F_{{{m},{d}}} = {dim}" for m, d, dim in rows) or f"F_{{{config.m},{config.d}}} = 0"
    return table.to_dict(), text, _csv(["m", "d", "dim"], rows), EXIT_OK


def run_harmonic_basis(qe: QEhrhart, config: RunConfig) -> Outcome:
    method = config.method if config.method in ("harmonic", "dual") else "harmonic"
    basis = qe.harmonic_basis(config.m, method)
    lines = [f"(H_P)_{config.m} via {method}: dims {list(basis.dims())}"]
    for d, polys in sorted(basis.graded_parts.items()):
        lines.append(f"  d={d}: " + "; ".join(str(p) for p in polys))
    rows = [(config.m, d, dim) for d, dim in enumerate(basis.dims())]
    return basis.to_dict(), "\n".join(lines), _csv(["m", "d", "dim"], rows), EXIT_OK


def run_generators(qe: QEhrhart, config: RunConfig) -> Outcome:
    report = qe.generators(max(config.m_max, 1))
    return report.to_dict(), report.render(), _csv(["m", "d", "count"], report.counts), EXIT_OK


def run_gk_check(qe: QEhrhart, config: RunConfig) -> Outcome:
    report = qe.gk_check(max(config.m_max, 1), config.kmax)
    return report.to_dict(), report.render(), None, EXIT_BUDGET if report.aborted else EXIT_OK


def _check_outcome(report: CheckReport) -> Outcome:
    text = (f"{report.name}: {'pass' if report.passed else 'FAIL'} "
            f"({report.trials} trials, {report.skipped} skipped, {len(report.violations)} violations)")
    for v in report.violations:
        text += "\n  " + json.dumps(v)
    return report.to_dict(), text, None, EXIT_OK if report.passed else EXIT_DISAGREE


def run_lemma32(qe: QEhrhart, config: RunConfig) -> Outcome:
    return _check_outcome(qe.lemma32(config.m, config.trials, config.seed))


def run_mult_check(qe: QEhrhart, config: RunConfig) -> Outcome:
    return _check_outcome(qe.mult_check(max(config.m_max, 2), config.samples, config.seed))


HANDLERS: Dict[str, Callable[[QEhrhart, RunConfig], Outcome]] = {
    "points": run_points,
    "ehrhart": run_ehrhart,
    "qehrhart": run_qehrhart,
    "filtration": run_filtration,
    "harmonic-basis": run_harmonic_basis,
    "generators": run_generators,
    "gk-check": run_gk_check,
    "lemma32": run_lemma32,
    "mult-check": run_mult_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qehrhart", description="q-analogue Ehrhart computations",
                                     formatter_class=argparse.RawDescriptionHelpFormatter, epilog=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--polytope",    type=str, required=True, metavar="PATH|NAME", help=f"JSON file or builtin: {', '.join(BUILTIN_POLYTOPES)}")
    common.add_argument("--mmax",        type=int, default=4,    help="Largest dilation (default: 4)")
    common.add_argument("--method",      type=str, default="filtration", help="filtration, harmonic, dual or all")
    common.add_argument("--m", "--dilation", dest="m", type=int, default=1, help="Single dilation factor (default: 1)")
    common.add_argument("--d",           type=int, default=None, help="Filtration degree, narrows filtration output")
    common.add_argument("--kmax",        type=int, default=None, help="Property-3 search bound (default: settings k_max)")
    common.add_argument("--seed",        type=int, default=None, help="Random seed (default: settings seed)")
    common.add_argument("--trials",      type=int, default=50,   help="Trials for lemma32 (default: 50)")
    common.add_argument("--samples",     type=int, default=20,   help="Samples for mult-check (default: 20)")
    common.add_argument("--format",      type=str, default="table", choices=FORMATS)
    common.add_argument("--output",      type=str, default=None, metavar="FILE", help="Write to FILE instead of stdout")
    common.add_argument("--cache-dir",   type=str, default=None, metavar="PATH", help="Results cache directory")
    common.add_argument("--no-cache",    action="store_true",    help="Do not read or write the results cache")
    common.add_argument("--max-entries", type=int, default=None, help="Largest matrix (rows x cols) to build")
    common.add_argument("--jobs",        type=int, default=None, help="Worker threads for per-m rows")

    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common], help=SUBCOMMAND_HELP[name])
    return parser


def config_from_args(parsed: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=parsed.subcommand,
        polytope=parsed.polytope,
        m_max=parsed.mmax,
        method=parsed.method,
        m=parsed.m,
        d=parsed.d,
        kmax=parsed.kmax,
        seed=parsed.seed,
        trials=parsed.trials,
        samples=parsed.samples,
        format=parsed.format,
        output=Path(parsed.output) if parsed.output else None,
        cache_dir=Path(parsed.cache_dir) if parsed.cache_dir else None,
        use_cache=not parsed.no_cache,
        max_entries=parsed.max_entries,
        jobs=parsed.jobs,
    )


def _emit(config: RunConfig, outcome: Outcome):
    payload, text, csv_text, _ = outcome
    if config.format == "json":
        body = json.dumps(payload, indent=2) + "\n"
    elif config.format == "csv":
        if csv_text is None:
            raise InputError(f"{config.subcommand} has no CSV output; use --format table or json")
        body = csv_text
    else:
        body = text + "\n"
    if config.output:
        config.output.write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)


def main(args: List[str] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    try:
        parsed = parser.parse_args(args)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT

    if not parsed.subcommand:
        parser.print_help()
        return EXIT_INPUT

    try:
        config = config_from_args(parsed)
        config.validate()
    except InputError as e:
        parser.print_usage(sys.stderr)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT

    qe = None
    try:
        settings = Settings.load(data_dir() / "settings.json")
        if config.max_entries is not None:
            settings.max_matrix_entries = config.max_entries
        if config.jobs is not None:
            settings.jobs = config.jobs
        polytope = load_input_polytope(config.polytope)
        qe = QEhrhart(polytope, config.cache_dir, settings, config.use_cache)
        outcome = HANDLERS[config.subcommand](qe, config)
        _emit(config, outcome)
        return outcome[3]
    except BudgetExceeded as e:
        print(f"Error: compute budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if qe is not None:
            qe.close()
