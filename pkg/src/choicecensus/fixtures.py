"""Named example choices on ``abde`` shipped with the package.

``sr1`` .. ``sr15`` are the fifteen sequentially rationalizable choices in
the order of the case analysis; ``c6``, ``cSR2`` and friends are aliases
used throughout the tests and the CLI.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .core import ChoiceFunction, choice_from_json


@lru_cache(maxsize=None)
def _raw() -> dict:
    text = resources.files(__package__).joinpath("data/fixtures.json").read_text()
    return json.loads(text)


def fixture_names() -> list[str]:
    return list(_raw())


def load_fixture(name: str) -> ChoiceFunction:
    try:
        return choice_from_json(_raw()[name])
    except KeyError:
        raise KeyError(f"no fixture named {name!r}") from None
