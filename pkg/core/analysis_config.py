"""Schema of analysis configuration files.

An analysis file is a JSON document naming a model, declaring one parametric
p-box per model input and setting the design, regression, optimizer and
output options. It is fully validated before any computation starts.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from core.config import settings
from core.exceptions import ConfigError, IsobolError
from tools.augmented.types import AuxRoute, PhantomMode
from tools.distributions.families import DistributionFamily
from tools.distributions.pbox import ParametricPBox
from tools.distributions.types import FamilyKind, Parameterization
from tools.optimization.optimizer import OptimizerConfig
from tools.pce.types import PceSettings, SelectionMethod

logger = logging.getLogger(__name__)


class _Block(BaseModel):
    model_config = ConfigDict(extra="forbid")


class InputDeclaration(_Block):
    """One model input given as a parametric p-box."""

    name: str
    family: FamilyKind
    parameterization: Parameterization | None = None
    params: dict[str, float | list[float]]
    aux_route: AuxRoute = AuxRoute.NATIVE

    @field_validator("params")
    def validate_intervals(cls, value: dict) -> dict:
        for key, item in value.items():
            if isinstance(item, list) and len(item) != 2:
                raise ValueError(f"parameter '{key}' must be a number or a [lower, upper] pair")
        return value

    def to_pbox(self) -> ParametricPBox:
        return ParametricPBox.from_params(DistributionFamily(self.family, self.parameterization), self.params)


class DesignBlock(_Block):
    N: int = Field(ge=1)
    n_ph: int = Field(default=10, ge=1)
    seed: int = Field(default=0, ge=0)
    phantom_mode: PhantomMode = PhantomMode.JOINT


class PceBlock(_Block):
    p_max: int = Field(default=10, ge=1, le=30)
    q: float = Field(default=1.0, gt=0.0, le=1.0)
    selection: SelectionMethod = SelectionMethod.LARS
    loo_target: float = Field(default=1e-12, gt=0.0)

    def to_settings(self) -> PceSettings:
        return PceSettings(p_max=self.p_max, q=self.q, selection=self.selection, loo_target=self.loo_target)


class OptimizerBlock(_Block):
    population: int = Field(default=40, ge=4)
    generations: int = Field(default=200, ge=1)
    restarts: int = Field(default=4, ge=1)
    seed: int = Field(default=0, ge=0)
    tol: float = Field(default=1e-9, gt=0.0)
    polish: bool = True

    def to_config(self) -> OptimizerConfig:
        return OptimizerConfig(
            population=self.population,
            generations=self.generations,
            restarts=self.restarts,
            seed=self.seed,
            tol=self.tol,
            polish=self.polish,
        )


class ValidationBlock(_Block):
    n: int = Field(default_factory=lambda: settings.VALIDATION_SAMPLES, ge=2)
    seed: int = Field(default=1, ge=0)


class OracleBlock(_Block):
    n: int = Field(default=10_000, ge=1000)
    grid_points: int = Field(default=5, ge=3)
    seed: int = Field(default=2, ge=0)


class BayesianBlock(_Block):
    n: int = Field(default=10_000, ge=1)
    seed: int = Field(default=3, ge=0)


class OutputsBlock(_Block):
    dir: str | None = None
    formats: list[Literal["json", "csv"]] = ["json", "csv"]


class AnalysisConfig(_Block):
    """Validated analysis configuration."""

    model: str
    description: str = ""
    inputs: list[InputDeclaration] = Field(min_length=1)
    design: DesignBlock
    pce: PceBlock = PceBlock()
    optimizer: OptimizerBlock = OptimizerBlock()
    validation: ValidationBlock | None = None
    oracle: OracleBlock = OracleBlock()
    bayesian: BayesianBlock | None = None
    outputs: OutputsBlock = OutputsBlock()

    @field_validator("inputs")
    def validate_unique_names(cls, value: list[InputDeclaration]) -> list[InputDeclaration]:
        names = [item.name for item in value]
        if len(set(names)) != len(names):
            raise ValueError(f"input names must be unique, got {names}")
        return value

    def pboxes(self) -> list[ParametricPBox]:
        return [item.to_pbox() for item in self.inputs]

    def with_seed(self, seed: int) -> "AnalysisConfig":
        """Copy with the design and optimizer seeds replaced."""
        return self.model_copy(
            update={
                "design": self.design.model_copy(update={"seed": seed}),
                "optimizer": self.optimizer.model_copy(update={"seed": seed}),
            }
        )


def load_analysis_config(path: str | Path) -> AnalysisConfig:
    """Read and validate an analysis file.

    Raises:
        ConfigError: If the file is missing, is not JSON, fails the schema or
            declares an invalid p-box.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ConfigError(f"configuration file '{path}' not found") from e
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read configuration '{path}': {e}") from e

    try:
        config = AnalysisConfig.model_validate(raw)
        config.pboxes()
    except ValidationError as e:
        raise ConfigError(f"invalid configuration '{path}': {e}") from e
    except IsobolError as e:
        raise ConfigError(f"invalid input declaration in '{path}': {e}") from e
    logger.debug("Loaded configuration %s for model '%s'", path, config.model)
    return config
