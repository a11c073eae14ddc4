import json
from pathlib import Path
from typing import Any

from utils.run_logger import RunLogger, run_dir


def _config(tmp_path: Path, **events: bool) -> dict[str, Any]:
    return {
        "log": {
            "console_output": False,
            "file_output": True,
            "output_dir": str(tmp_path),
            "level": "INFO",
            "events": {"march": True, "lifespan": True, "fit": True, "report": True, **events},
        },
    }


def _events(path: Path) -> list[dict[str, Any]]:
    return [json.loads(line.split(" - ", 3)[3]) for line in path.read_text(encoding="utf-8").splitlines()]


def test_events_are_gated(tmp_path: Path) -> None:
    run_logger = RunLogger(_config(tmp_path, march=False), "gated")
    run_logger.event("lifespan", {"eps": 0.1})
    run_logger.event("march", {"eps": 0.2})
    run_logger.event("unknown", {"eps": 0.3})
    run_logger.close()
    assert run_logger.log_path is not None
    events = _events(run_logger.log_path)
    assert [e["event"] for e in events] == ["lifespan"]
    assert events[0]["data"] == {"eps": 0.1}
    assert events[0]["run"] == run_logger.run_id


def test_event_switches_are_case_insensitive(tmp_path: Path) -> None:
    run_logger = RunLogger(_config(tmp_path, fit=False), "switches")
    assert run_logger.enabled("LIFESPAN")
    assert not run_logger.enabled("Fit")
    assert not run_logger.enabled("unknown")
    run_logger.close()


def test_log_file_lives_under_run_dir(tmp_path: Path) -> None:
    run_logger = RunLogger(_config(tmp_path), "placed")
    run_logger.close()
    assert run_logger.log_path is not None
    assert run_logger.log_path == run_dir(tmp_path, run_logger.run_id) / "placed.log"
    assert len(run_logger.run_id) == 26


def test_console_only_has_no_file(tmp_path: Path) -> None:
    config = _config(tmp_path)
    config["log"]["file_output"] = False
    run_logger = RunLogger(config, "console")
    assert run_logger.log_path is None
    assert not any(tmp_path.iterdir())
    run_logger.close()
    assert run_logger.logger.handlers == []
