from lifespan import bounds, data, duhamel, errors, freewave, marcher, model, picard  # noqa: D104

__all__ = [
    "bounds",
    "data",
    "duhamel",
    "errors",
    "freewave",
    "marcher",
    "model",
    "picard",
]
