"""Module defining run logging functionality.

実行ごとのログを出力するクラスを定義するモジュール.
"""

from __future__ import annotations

import json
import logging
from datetime import UTC, datetime
from pathlib import Path
from typing import Any

from ulid import ULID

FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def run_dir(output_dir: Path | str, run_id: str) -> Path:
    """Directory of a run, named after the local time encoded in its ULID.

    ULID に含まれる時刻から実行ごとのディレクトリ名を決める.
    """
    ulid = ULID.from_str(run_id)
    tz = datetime.now(UTC).astimezone().tzinfo
    stamp = datetime.fromtimestamp(ulid.timestamp, tz=tz).strftime("%Y%m%d%H%M%S%f")[:-3]
    return Path(output_dir) / stamp


class RunLogger:
    """Logger of one sweep run with per-event switches.

    スイープ一回分のログを出力するクラス.

    Events are written as one JSON object per line after the usual prefix, so a
    log file can be filtered by kind.
    """

    def __init__(
        self,
        config: dict[str, Any],
        name: str,
        run_id: str | None = None,
    ) -> None:
        """Initialize the run logger.

        実行のログを初期化する.

        Args:
            config (dict[str, Any]): Configuration dictionary with a log section / log 部分を含む設定辞書
            name (str): Name of the run, also the log file stem / 実行名 (ログファイル名)
            run_id (str | None): ULID of the run, generated when omitted / 実行の ULID
        """
        self.log_config: dict[str, Any] = config["log"]
        self.events: dict[str, bool] = {
            str(kind).lower(): bool(enabled) for kind, enabled in self.log_config.get("events", {}).items()
        }
        self.name = name
        self.run_id = run_id or str(ULID())
        self.logger = logging.getLogger(name)
        self.logger.setLevel(logging.getLevelNamesMapping()[str(self.log_config["level"]).upper()])
        self.close()
        self.log_path: Path | None = None
        if bool(self.log_config["console_output"]):
            self._attach(logging.StreamHandler())
        if bool(self.log_config["file_output"]):
            directory = run_dir(str(self.log_config["output_dir"]), self.run_id)
            directory.mkdir(parents=True, exist_ok=True)
            self.log_path = directory / f"{self.name}.log"
            self._attach(logging.FileHandler(self.log_path, mode="w", encoding="utf-8"))

    def _attach(self, handler: logging.Handler) -> None:
        handler.setFormatter(logging.Formatter(FORMAT))
        self.logger.addHandler(handler)

    def enabled(self, kind: str) -> bool:
        """Whether events of the kind are logged.

        その種類のイベントを出力するかどうか.
        """
        return self.events.get(kind.lower(), False)

    def event(self, kind: str, payload: Any) -> None:  # noqa: ANN401
        """Log a structured event when its switch is on.

        イベントのログを出力.

        Args:
            kind (str): Event kind, one of the log.events switches / イベントの種類
            payload (Any): JSON-serializable content / JSON に変換できる内容
        """
        if not self.enabled(kind):
            return
        self.logger.info(json.dumps({"run": self.run_id, "event": kind.lower(), "data": payload}, default=str))

    def close(self) -> None:
        """Detach and close every handler of the logger.

        ロガーの全ハンドラを閉じる.
        """
        for handler in list(self.logger.handlers):
            self.logger.removeHandler(handler)
            handler.close()
