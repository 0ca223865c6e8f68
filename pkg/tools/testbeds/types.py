"""Model types and registry lookup."""

from __future__ import annotations

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from backports.strenum import StrEnum
from pathlib import Path
from typing import TYPE_CHECKING, Callable, Dict

from core.exceptions import UnknownModel

if TYPE_CHECKING:
    from .base import TestModel


class ModelType(StrEnum):
    """Enumeration of available model types."""

    F1 = "f1"
    SDOF = "sdof"
    TRUSS = "truss"


def get_model_registry() -> Dict[ModelType, Callable[..., "TestModel"]]:
    """Get the model registry with lazy imports to avoid circular dependencies."""
    from .analytic import OscillatorModel, ProductModel
    from .truss import TrussDefinition, TrussModel

    return {
        ModelType.F1: ProductModel,
        ModelType.SDOF: OscillatorModel,
        ModelType.TRUSS: lambda path: TrussModel(TrussDefinition.from_json(path)),
    }


def registry_lookup(name: str, base_dir: str | Path | None = None) -> "TestModel":
    """Instantiate the model named in a configuration.

    Args:
        name: "f1", "sdof" or "truss:<definition file>".
        base_dir: Directory relative truss definition paths are resolved against.

    Raises:
        UnknownModel: For unknown names or missing truss definition files.
    """
    kind, _, argument = name.partition(":")
    try:
        model_type = ModelType(kind.strip().lower())
    except ValueError as e:
        raise UnknownModel(f"unknown model '{name}'; expected f1, sdof or truss:<file>") from e

    factory = get_model_registry()[model_type]
    if model_type != ModelType.TRUSS:
        if argument:
            raise UnknownModel(f"model '{kind}' takes no argument, got '{name}'")
        return factory()

    if not argument:
        raise UnknownModel("truss model needs a definition file: truss:<file>")
    path = Path(argument)
    if not path.is_absolute() and base_dir is not None:
        path = Path(base_dir) / path
    if not path.is_file():
        raise UnknownModel(f"truss definition '{path}' does not exist")
    return factory(path)
