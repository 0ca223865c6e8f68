"""Abstract base class for all computational models.

Plugging in another model only requires subclassing `TestModel` and
implementing `_evaluate` on a batch of inputs.
"""

from __future__ import annotations

import threading
from abc import ABC, abstractmethod

import numpy as np

from core.exceptions import DimensionMismatch


class TestModel(ABC):
    """Deterministic scalar model y = M(x) with an evaluation ledger."""

    __test__ = False

    name: str = ""
    input_dim: int = 0
    input_names: tuple[str, ...] = ()
    description: str = ""
    units: str = ""

    def __init__(self) -> None:
        self._evaluations = 0
        self._lock = threading.Lock()

    @property
    def evaluations(self) -> int:
        """Number of input points evaluated since construction or the last reset."""
        return self._evaluations

    def reset_counter(self) -> None:
        with self._lock:
            self._evaluations = 0

    @abstractmethod
    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        """Responses of a (batch x input_dim) array of inputs."""

    def evaluate(self, x, charge: bool = True) -> np.ndarray | float:
        """Evaluate one input vector or a batch of them.

        Every row is charged to the evaluation ledger unless ``charge`` is False
        (reference data such as validation sets).
        """
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        batch = np.atleast_2d(x)
        if batch.shape[1] != self.input_dim:
            raise DimensionMismatch(
                f"model '{self.name}' takes {self.input_dim} inputs, got {batch.shape[1]}",
                module="models",
            )
        y = np.asarray(self._evaluate(batch), dtype=float).reshape(len(batch))
        if charge:
            with self._lock:
                self._evaluations += len(batch)
        return float(y[0]) if single else y

    __call__ = evaluate
