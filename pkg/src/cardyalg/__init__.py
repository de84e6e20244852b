"""cardyalg: skeletal modular tensor categories, Frobenius algebras and
Cardy algebras as finite matrix computations."""

from .category import (
    CategoryData,
    CategoryError,
    SchemaError,
    load_category,
    validate_category,
    reverse_category,
    product_category,
    double_category,
)
from .fixtures import load_fixture, fixture_names

__all__ = [
    "CategoryData",
    "CategoryError",
    "SchemaError",
    "load_category",
    "validate_category",
    "reverse_category",
    "product_category",
    "double_category",
    "load_fixture",
    "fixture_names",
]

__version__ = "0.1.0"
