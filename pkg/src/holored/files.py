"""Loading operators, seeds and claims from paths or shipped names."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .congruence import CongruenceClaim
from .identity import SeedIdentity
from .operators import RecOperator
from .sequences import catalog


def _data(rel: str):
    return resources.files("holored").joinpath(f"data/{rel}")


def read_json(ref: str, kind: str):
    """JSON from a path, or from the shipped ``data/<kind>/<ref>.json``."""
    path = Path(ref)
    if path.is_file():
        text = path.read_text()
    else:
        shipped = _data(f"{kind}/{ref.removesuffix('.json')}.json")
        if not shipped.is_file():
            raise FileNotFoundError(f"no file or shipped {kind[:-1]} named {ref!r}")
        text = shipped.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{ref}: malformed JSON at line {exc.lineno} column {exc.colno}: "
                         f"{exc.msg}") from None


def load_operator(ref: str) -> RecOperator:
    path = Path(ref)
    if not path.is_file() and ref in catalog() and not _data(f"operators/{ref}.json").is_file():
        op = catalog()[ref].operator
        if op is None:
            raise ValueError(f"sequence {ref!r} has no stored operator")
        return op
    return RecOperator.from_json(read_json(ref, "operators"))


def load_seed(ref: str) -> SeedIdentity:
    return SeedIdentity.from_json(read_json(ref, "seeds"))


def load_claims(ref: str) -> list:
    data = json.loads(Path(ref).read_text())
    if isinstance(data, dict):
        data = [data]
    return [CongruenceClaim.from_json(c) for c in data]


def goldens() -> dict:
    return json.loads(_data("goldens.json").read_text())
