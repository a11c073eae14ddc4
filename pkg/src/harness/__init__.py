from harness import config, fit, report, result, sweep, verify  # noqa: D104

__all__ = [
    "config",
    "fit",
    "report",
    "result",
    "sweep",
    "verify",
]
