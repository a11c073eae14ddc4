from utils import run_logger  # noqa: D104

__all__ = [
    "run_logger",
]
