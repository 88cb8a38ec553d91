from importlib import resources
from pathlib import Path


def chip(name: str) -> Path:
    return Path(str(resources.files("qcrewrite") / "chips" / f"{name}.json"))
