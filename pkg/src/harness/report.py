"""Module for writing sweep reports.

スイープのレポートを書き出すモジュール.
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from harness.result import SweepResult

logger = logging.getLogger(__name__)

HEADER = ["eps", "h_finest", "T_num", "status", "threshold", "slope", "theoretical_exponent", "verdict"]


def _num(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def csv_rows(result: SweepResult) -> list[list[str]]:
    """Rows of the CSV report, header first.

    CSV レポートの行 (先頭はヘッダ).

    Data rows leave the fit columns empty; a final row with eps = "summary"
    carries the slope, the theoretical exponent and the verdict.
    """
    rows = [HEADER]
    if not result.records:
        return rows
    rows.extend(
        [_num(r.eps), _num(r.h_finest), _num(r.T_num), str(r.status), _num(r.threshold), "", "", ""]
        for r in result.records
    )
    slope = result.fit.slope if result.fit is not None else None
    rows.append(["summary", "", "", "", "", _num(slope), _num(result.theoretical_exponent), str(result.verdict)])
    return rows


def report(result: SweepResult, path_csv: Path | str, path_json: Path | str) -> tuple[Path, Path]:
    """Write the CSV report and its JSON mirror.

    CSV レポートと JSON を書き出す.

    Args:
        result (SweepResult): Sweep result / スイープの結果
        path_csv (Path | str): CSV path / CSV の出力先
        path_json (Path | str): JSON path / JSON の出力先

    Returns:
        tuple[Path, Path]: Written paths / 書き出したパス
    """
    csv_path = Path(path_csv)
    json_path = Path(path_json)
    for path in (csv_path, json_path):
        path.parent.mkdir(parents=True, exist_ok=True)
    with csv_path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerows(csv_rows(result))
    json_path.write_text(result.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info("レポートを書き出しました: %s, %s", csv_path, json_path)
    return csv_path, json_path
