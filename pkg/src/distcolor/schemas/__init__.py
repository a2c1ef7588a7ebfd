"""JSON schemas for every document the library and CLI emit."""
import json
from importlib.resources import files

NAMES = (
    "envelope", "listing", "certificate", "adversary", "witness",
    "cantor_sidecar", "classify", "cube_embedding",
)


def load(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"unknown schema {name!r}")
    return json.loads(files(__name__).joinpath(f"{name}.schema.json").read_text())
