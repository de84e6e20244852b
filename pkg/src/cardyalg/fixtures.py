"""Built-in category fixtures, shipped as data files and validated on load."""

import json
from importlib import resources

from .category import load_category

FIXTURES = ("vec", "vec_z2", "fibonacci", "ising")

_cache = {}


def fixture_doc(name):
    ref = resources.files(__package__) / "fixtures" / f"{name}.json"
    with ref.open() as fh:
        return json.load(fh)


def load_fixture(name):
    """Load a built-in fixture (cached; includes the broken variants)."""
    cat = _cache.get(name)
    if cat is None:
        cat = load_category(fixture_doc(name))
        _cache[name] = cat
    return cat


def fixture_names():
    return list(FIXTURES)
