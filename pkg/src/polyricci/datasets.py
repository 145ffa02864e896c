"""Bundled example networks."""
from importlib import resources
from pathlib import Path


def dataset_path(name: str) -> Path:
    """Path of a bundled edge list, e.g. ``dataset_path("karate")``."""
    ref = resources.files("polyricci") / "data" / f"{name}.txt"
    if not ref.is_file():
        raise FileNotFoundError(f"no bundled dataset {name!r}")
    return Path(str(ref))
