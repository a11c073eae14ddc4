"""Module for launching sweeps.

スイープを起動するためのモジュール.
"""

from __future__ import annotations

import logging
from pathlib import Path

from harness.config import load_config
from harness.report import report
from harness.result import Verdict
from harness.sweep import sweep
from utils.run_logger import RunLogger

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)
console_handler = logging.StreamHandler()
formatter = logging.Formatter(
    "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
console_handler.setFormatter(formatter)
logger.addHandler(console_handler)


def run(config_path: Path) -> Verdict:
    """Run the sweep of one configuration file and write its reports.

    一つの設定ファイルのスイープを実行しレポートを書き出す.

    Args:
        config_path (Path): Path to the configuration file / 設定ファイルのパス

    Returns:
        Verdict: Verdict of the sweep / スイープの判定
    """
    config = load_config(config_path)
    run_logger = RunLogger(config.logging_config(), config_path.stem)
    logger.info("スイープ %s を開始します", config_path.stem)
    try:
        result = sweep(config, run_logger)
        csv_path, json_path = report(result, config.out_csv, config.out_json)
        run_logger.event("report", {"csv": str(csv_path), "json": str(json_path), "verdict": str(result.verdict)})
    finally:
        run_logger.close()
    if result.excluded:
        logger.warning("フィットから除外した eps: %s", result.excluded)
    if result.bound_violations:
        logger.warning("上界を超えた eps: %s", result.bound_violations)
    logger.info("スイープ %s が終了しました: %s", config_path.stem, result.verdict)
    return result.verdict


def execute(config_path: Path) -> None:
    """Process target for one configuration; exits non-zero when the sweep fails.

    一つの設定ファイルを処理するプロセスの本体.
    """
    verdict = run(config_path)
    if verdict != Verdict.PASS:
        raise SystemExit(1)
