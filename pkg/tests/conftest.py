from __future__ import annotations

import json
from importlib import resources
from types import SimpleNamespace

import pytest

from logsurf.lattice import build_from_recipe, parse_recipe


def load_builtin(name: str) -> SimpleNamespace:
    text = resources.files("logsurf").joinpath(f"scenarios/{name}.json").read_text()
    data = json.loads(text)
    recipe, divisors = parse_recipe({**data["recipe"], "divisors": data.get("divisors", {})})
    return SimpleNamespace(model=build_from_recipe(recipe), divisors=divisors, data=data)


@pytest.fixture(scope="session")
def ex462() -> SimpleNamespace:
    return load_builtin("ex-462")


@pytest.fixture(scope="session")
def ex825() -> SimpleNamespace:
    return load_builtin("ex-825")
