import csv
import json
from pathlib import Path

from harness.report import HEADER, csv_rows, report
from harness.result import FitResult, RunRecord, SweepResult, Verdict
from lifespan.marcher import Status


def _result(n: int) -> SweepResult:
    records = [
        RunRecord(
            eps=0.4 / 2**i,
            T_num=2.5 * 2**i,
            status=Status.BLEW_UP,
            grids=[0.01, 0.005],
            threshold=1e6,
            t_max=100.0,
        )
        for i in range(n)
    ]
    return SweepResult(
        p=2.0,
        a=1.0,
        family="g-positive",
        R=1.0,
        case="nonzero",
        records=records,
        theoretical_exponent=-1.0,
        fit=FitResult(slope=-1.0, intercept=0.0, r_squared=1.0, n_used=n) if n >= 4 else None,
        tol_abs=0.15,
        verdict=Verdict.PASS if n >= 4 else Verdict.FAIL,
    )


def test_header_is_fixed() -> None:
    assert ",".join(HEADER) == "eps,h_finest,T_num,status,threshold,slope,theoretical_exponent,verdict"


def test_empty_sweep_has_header_only(tmp_path: Path) -> None:
    csv_path, json_path = report(_result(0), tmp_path / "out.csv", tmp_path / "out.json")
    assert csv_path.read_text(encoding="utf-8") == ",".join(HEADER) + "\n"
    assert json.loads(json_path.read_text(encoding="utf-8"))["records"] == []


def test_data_rows_and_summary() -> None:
    rows = csv_rows(_result(5))
    assert len(rows) == 7
    assert rows[1][:4] == ["0.4", "0.005", "2.5", "BlewUp"]
    assert rows[1][5:] == ["", "", ""]
    assert rows[-1] == ["summary", "", "", "", "", "-1.0", "-1.0", "pass"]


def test_csv_parses_back(tmp_path: Path) -> None:
    csv_path, _ = report(_result(5), tmp_path / "a" / "out.csv", tmp_path / "b" / "out.json")
    with csv_path.open(encoding="utf-8") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 6
    assert [float(r["eps"]) for r in rows[:5]] == [0.4, 0.2, 0.1, 0.05, 0.025]


def test_reports_are_byte_stable(tmp_path: Path) -> None:
    first = report(_result(5), tmp_path / "1.csv", tmp_path / "1.json")
    second = report(_result(5), tmp_path / "2.csv", tmp_path / "2.json")
    for a, b in zip(first, second, strict=True):
        assert a.read_bytes() == b.read_bytes()


def test_json_mirrors_result(tmp_path: Path) -> None:
    result = _result(4)
    _, json_path = report(result, tmp_path / "out.csv", tmp_path / "out.json")
    assert SweepResult.model_validate_json(json_path.read_text(encoding="utf-8")) == result
