"""JSON schemas for every CLI result document (draft-07).

``load(name)`` returns the schema dict for a subcommand ("prime.test",
"route.sim", ...) or for the envelope "manifest"; ``names()`` lists them.
"""

import json
from importlib import resources


def names() -> list[str]:
    out = []
    for entry in resources.files(__name__).iterdir():
        if entry.name.endswith(".json"):
            out.append(entry.name[: -len(".json")])
    return sorted(out)


def load(name: str) -> dict:
    data = resources.files(__name__).joinpath(name + ".json").read_text("utf-8")
    return json.loads(data)
