"""Command-line entry point: ``anongame <verb> ...``.

Every verb prints one JSON document on standard output. Exit status is 0 on
success, 1 when a verification fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import harness
from .distributions import poisson_binomial_pmf
from .game import AnonymousGame, lipschitz_constant
from .ptas import DEFAULT_BUDGET, DEFAULT_K_CAP, BudgetExceeded, solve_ptas
from .pure import InfeasibleThreshold, generate_lipschitz_game, solve_pure
from .rounding import RoundingConfig, round_probabilities

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def _emit(doc: Any, out: Path | None = None) -> None:
    text = json.dumps(_jsonable(doc), indent=2, allow_nan=False)
    if out is None:
        print(text)
    else:
        out.write_text(text + "\n")


def _read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def load_game(path: str) -> tuple[AnonymousGame, float | None]:
    data = _read_json(path)
    try:
        game = AnonymousGame.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid game file {path}: {exc}") from exc
    declared = data.get("lambda")
    return game, None if declared is None else float(declared)


def read_probabilities(path: str) -> np.ndarray:
    """A JSON array, or numbers separated by whitespace or newlines."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    text = text.strip()
    try:
        values = json.loads(text) if text.startswith("[") else [float(tok) for tok in text.split()]
    except ValueError as exc:
        raise UsageError(f"cannot parse probabilities: {exc}") from exc
    return np.asarray(values, dtype=float)


def cmd_gen(args: argparse.Namespace) -> int:
    game = generate_lipschitz_game(args.n, args.s, args.lam, seed=args.seed)
    doc = game.to_dict()
    doc["lambda"] = args.lam
    _emit(doc, Path(args.out) if args.out else None)
    return EXIT_OK


def cmd_solve_pure(args: argparse.Namespace) -> int:
    game, declared = load_game(args.game)
    doc: dict[str, Any] = {}
    if declared is not None:
        computed = lipschitz_constant(game)
        doc["declared_lambda"] = declared
        doc["declared_lambda_valid"] = computed <= declared + 1e-12
        if not doc["declared_lambda_valid"]:
            doc["error"] = f"declared lambda {declared} is below the computed constant {computed}"
            _emit(doc)
            return EXIT_FAILED
    try:
        report = solve_pure(
            game,
            eps=args.eps,
            find_min=args.min_eps,
            declared_lambda=declared if args.use_declared_lambda else None,
        )
    except InfeasibleThreshold as exc:
        doc.update({"feasible": False, "error": str(exc)})
        _emit(doc)
        return EXIT_FAILED
    doc.update(report.to_dict())
    _emit(doc)
    return EXIT_OK


def cmd_solve_ptas(args: argparse.Namespace) -> int:
    game, _ = load_game(args.game)
    try:
        report = solve_ptas(
            game, args.eps, k=args.k, c_k=args.c_k, k_cap=args.k_cap, budget=args.budget, find_min=args.min_threshold
        )
    except BudgetExceeded as exc:
        raise UsageError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(report.to_dict())
    return EXIT_OK


def cmd_round(args: argparse.Namespace) -> int:
    p = read_probabilities(args.input)
    try:
        config = RoundingConfig(args.k, args.alpha, args.beta)
        result = round_probabilities(p, config)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(result.to_dict())
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    reports = harness.run_suite(args.suite, seed=args.seed, quick=args.quick)
    passed = all(r.passed for r in reports)
    _emit(
        {
            "suite": args.suite,
            "seed": args.seed,
            "quick": args.quick,
            "passed": passed,
            "runtime": time.perf_counter() - started,
            "reports": [r.to_dict() for r in reports],
        }
    )
    return EXIT_OK if passed else EXIT_FAILED


def cmd_check(args: argparse.Namespace) -> int:
    report = _read_json(args.report)
    game = load_game(args.game)[0] if args.game else None
    try:
        checks = harness.recheck_report(report, game)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    passed = all(c.passed for c in checks)
    _emit({"passed": passed, "reports": [c.to_dict() for c in checks]})
    return EXIT_OK if passed else EXIT_FAILED


def _timed(fn) -> float:
    started = time.perf_counter()
    fn()
    return time.perf_counter() - started


def cmd_bench(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    pure_game = generate_lipschitz_game(20, 3, 0.005, seed=args.seed)
    ptas_game = AnonymousGame(rng.random((8, 2, 8)))
    p500 = rng.random(500)
    p1000 = rng.random(1000)
    timings = {
        "solve_pure s=3 n=20": _timed(lambda: solve_pure(pure_game)),
        "solve_ptas n=8 k=10": _timed(lambda: solve_ptas(ptas_game, 10**-0.5, k=10)),
        "round n=500 k=400": _timed(lambda: round_probabilities(p500, RoundingConfig(400))),
        "poisson_binomial n=1000": _timed(lambda: poisson_binomial_pmf(p1000)),
        "exact_tv_after_rounding n=500 k=100": _timed(
            lambda: harness.exact_tv_after_rounding(p500, RoundingConfig(100))
        ),
    }
    _emit({"seed": args.seed, "seconds": timings})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="anongame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("gen", help="generate a random game with a bounded Lipschitz constant")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the game here instead of standard output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve-pure", help="approximate pure equilibrium by exhaustive search")
    p.add_argument("--game", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--eps", type=float, help="regret threshold")
    mode.add_argument("--auto", action="store_true", help="use the guaranteed bound (default)")
    p.add_argument("--min-eps", action="store_true", help="also report the smallest feasible threshold")
    p.add_argument(
        "--use-declared-lambda", action="store_true", help="compute the bound from the file's lambda, after checking it"
    )
    p.set_defaults(func=cmd_solve_pure)

    p = sub.add_parser("solve-ptas", help="quantized mixed equilibrium of a two-strategy game")
    p.add_argument("--game", required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--c-k", type=float, default=1.0, help="k = ceil(c_k / eps^2) when --k is absent")
    p.add_argument("--k-cap", type=int, default=DEFAULT_K_CAP)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum number of level partitions")
    p.add_argument("--min-threshold", action="store_true", help="return the best profile on the grid")
    p.set_defaults(func=cmd_solve_ptas)

    p = sub.add_parser("round", help="round probabilities to the 1/k grid")
    p.add_argument("input", nargs="?", default="-", help="file with a JSON array or one value per line (default stdin)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.75)
    p.add_argument("--beta", type=float, default=0.75)
    p.set_defaults(func=cmd_round)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(harness.SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="reduced instance counts")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", help="re-verify a JSON report")
    p.add_argument("--report", required=True)
    p.add_argument("--game", help="game file, required for solver reports")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bench", help="time the main operations")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"anongame {args.verb}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
