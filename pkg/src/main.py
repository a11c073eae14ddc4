"""Command-line entry point of the lifespan laboratory.

寿命実験のコマンドラインのエントリポイント.
"""

from __future__ import annotations

import argparse
import logging
import multiprocessing
import sys
from pathlib import Path

from pydantic import ValidationError

from harness.verify import (
    Check,
    VerifyOutcome,
    check_apriori_i,
    check_apriori_i0,
    check_holder,
    check_huygens,
    check_picard,
)
from lifespan.bounds import compute_constants, epsilon_threshold, lower_bound_shape, upper_bound_time
from lifespan.data.datum import Family
from lifespan.data.families import integral_case, make_data
from lifespan.errors import LifespanError, PreconditionError
from lifespan.marcher import Nonlinearity, march, write_dump
from lifespan.model import Params
from starter import execute

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)
console_handler = logging.StreamHandler()
formatter = logging.Formatter(
    "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
console_handler.setFormatter(formatter)
logger.addHandler(console_handler)


def _table(rows: list[tuple[str, object]]) -> None:
    width = max(len(label) for label, _ in rows)
    for label, value in rows:
        print(f"{label:<{width}}  {value}")  # noqa: T201


def solve(args: argparse.Namespace) -> int:
    """Run one march and print its outcome.

    一回の時間発展を実行し結果を表示する.
    """
    datum = make_data(args.family, args.R)
    params = Params(p=args.p, a=args.a, eps=args.eps, R=args.R)
    result = march(
        datum,
        params,
        args.h,
        args.tmax,
        args.threshold,
        keep_field=args.dump is not None,
        nonlinearity=args.nonlinearity,
    )
    _table(
        [
            ("status", result.status),
            ("t_blow", result.t_blow),
            ("t_end", result.t_end),
            ("threshold", result.threshold),
            ("max_abs_u", result.max_abs[-1]),
        ],
    )
    if args.dump is not None:
        write_dump(result, args.dump)
    return 0


def sweep(args: argparse.Namespace) -> int:
    """Run every configuration in its own process.

    設定ファイルごとにプロセスを起動してスイープする.
    """
    paths: list[Path] = []
    for config_path in args.config:
        glob_path = Path(config_path)
        paths.extend(sorted(path for path in Path.glob(glob_path.parent, glob_path.name) if path.is_file()))
    if not paths:
        logger.error("設定ファイルが見つかりません: %s", args.config)
        return 1
    processes: list[multiprocessing.Process] = []
    for path in paths:
        process = multiprocessing.Process(
            target=execute,
            args=(path,),
        )
        processes.append(process)
        process.start()
    for process in processes:
        process.join()
    failed = [str(path) for path, process in zip(paths, processes, strict=True) if process.exitcode != 0]
    if failed:
        logger.warning("失敗したスイープ: %s", failed)
        return 1
    return 0


def bounds(args: argparse.Namespace) -> int:
    """Print the blow-up constants and bound times.

    爆発の定数と上界・下界の時刻を表示する.
    """
    datum = make_data(args.family, args.R, args.amp_f, args.amp_g)
    params = Params(p=args.p, a=args.a, eps=args.eps, R=args.R)
    case = integral_case(datum)
    rows: list[tuple[str, object]] = [
        ("case", case),
        ("lower_bound_shape", lower_bound_shape(case, params)(args.eps)),
    ]
    try:
        consts = compute_constants(params, datum)
        rows.extend((name, value) for name, value in consts.model_dump().items())
        bound = upper_bound_time(case, params, consts)
        rows.extend(
            [
                ("eps_threshold", epsilon_threshold(case, params, consts)),
                ("t0", bound.t0),
                ("t0_clamped", bound.clamped),
            ],
        )
    except PreconditionError as e:
        rows.append(("t0", f"unavailable ({e})"))
    _table(rows)
    return 0


def _run_check(args: argparse.Namespace) -> VerifyOutcome:
    params = Params(p=args.p, a=args.a, eps=args.eps, R=args.R)
    match Check(args.which):
        case Check.HUYGENS:
            return check_huygens(make_data(args.family, args.R), args.n_samples or 10_000)
        case Check.APRIORI_I0:
            return check_apriori_i0(params, args.T, args.n_samples or 64)
        case Check.APRIORI_I:
            return check_apriori_i(params, args.T, args.n_samples or 64)
        case Check.PICARD:
            return check_picard(make_data(args.family, args.R), params, args.T, args.h)
        case Check.HOLDER:
            return check_holder(params)


def verify(args: argparse.Namespace) -> int:
    """Run one property check and print the measured values.

    性質検査を一つ実行し測定値を表示する.
    """
    outcome = _run_check(args)
    rows: list[tuple[str, object]] = [("check", outcome.check), ("passed", outcome.passed)]
    rows.extend(outcome.details.items())
    _table(rows)
    return 0 if outcome.passed else 1


def _case_flags(parser: argparse.ArgumentParser, *, eps: float) -> None:
    parser.add_argument("--p", type=float, default=2.0, help="非線形項の指数")
    parser.add_argument("--a", type=float, default=1.0, help="重みの指数")
    parser.add_argument("--eps", type=float, default=eps, help="初期値の振幅")
    parser.add_argument("--family", type=Family, choices=list(Family), default=Family.G_POSITIVE, help="データ族")
    parser.add_argument("--R", type=float, default=1.0, help="台の半径")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with the solve, sweep, bounds and verify subcommands.

    サブコマンドを持つ引数パーサを作成する.
    """
    parser = argparse.ArgumentParser(prog="lifespan")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="一回の時間発展")
    _case_flags(p_solve, eps=0.1)
    p_solve.add_argument("--h", type=float, required=True, help="格子の刻み幅")
    p_solve.add_argument("--tmax", type=float, required=True, help="最終時刻")
    p_solve.add_argument("--threshold", type=float, default=None, help="爆発の閾値")
    p_solve.add_argument("--dump", type=Path, default=None, help="格子値の出力先")
    p_solve.add_argument(
        "--nonlinearity",
        type=Nonlinearity,
        choices=list(Nonlinearity),
        default=Nonlinearity.ABS,
        help="非線形項の形",
    )
    p_solve.set_defaults(func=solve)

    p_sweep = sub.add_parser("sweep", help="eps スイープ")
    p_sweep.add_argument(
        "-c",
        "--config",
        type=str,
        nargs="+",
        default=["./config/*.json"],
        help="設定ファイルのパス (複数指定可)",
    )
    p_sweep.set_defaults(func=sweep)

    p_bounds = sub.add_parser("bounds", help="爆発の定数と時刻")
    _case_flags(p_bounds, eps=0.1)
    p_bounds.add_argument("--amp_f", type=float, default=None, help="f の振幅")
    p_bounds.add_argument("--amp_g", type=float, default=None, help="g の振幅")
    p_bounds.set_defaults(func=bounds)

    p_verify = sub.add_parser("verify", help="性質検査")
    p_verify.add_argument("--which", type=Check, choices=list(Check), required=True, help="検査する性質")
    _case_flags(p_verify, eps=0.02)
    p_verify.add_argument("--T", type=float, default=4.0, help="検査する時刻の上限")
    p_verify.add_argument("--h", type=float, default=1.0 / 32.0, help="Picard 反復の刻み幅")
    p_verify.add_argument("--n_samples", type=int, default=None, help="標本数")
    p_verify.set_defaults(func=verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Parse the arguments and dispatch to the subcommand.

    引数を解析しサブコマンドを実行する.
    """
    args = build_parser().parse_args(argv)
    try:
        return int(args.func(args))
    except (LifespanError, ValidationError) as e:
        logger.error("%s: %s", type(e).__name__, e)  # noqa: TRY400
        return 1


if __name__ == "__main__":
    multiprocessing.set_start_method("spawn")
    sys.exit(main())
