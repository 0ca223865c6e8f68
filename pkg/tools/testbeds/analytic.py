"""Closed-form test models."""

from __future__ import annotations

import numpy as np

from core.exceptions import InvalidParams

from .base import TestModel


def f1(x) -> np.ndarray | float:
    """Product of two inputs."""
    x = np.asarray(x, dtype=float)
    value = x[..., 0] * x[..., 1]
    return float(value) if np.ndim(value) == 0 else value


def sdof(r, F1, t1, c1, c2, m) -> np.ndarray | float:
    """Non-linear undamped oscillator under a rectangular load pulse.

    y = 3 r - |2 F1 / (m w0^2) sin(w0 t1 / 2)| with w0 = sqrt((c1 + c2) / m).

    Raises:
        InvalidParams: If the mass or the stiffness sum is not positive.
    """
    r, F1, t1, c1, c2, m = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (r, F1, t1, c1, c2, m)))
    stiffness = c1 + c2
    if np.any(m <= 0.0) or np.any(stiffness <= 0.0):
        raise InvalidParams("oscillator needs m > 0 and c1 + c2 > 0", module="models")
    omega0 = np.sqrt(stiffness / m)
    value = 3.0 * r - np.abs(2.0 * F1 / (m * omega0**2) * np.sin(omega0 * t1 / 2.0))
    return float(value) if value.ndim == 0 else value


class ProductModel(TestModel):
    name = "f1"
    input_dim = 2
    input_names = ("x1", "x2")
    description = "Product of two inputs"

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        return f1(x)


class OscillatorModel(TestModel):
    name = "sdof"
    input_dim = 6
    input_names = ("r", "F1", "t1", "c1", "c2", "m")
    description = "Non-linear single-degree-of-freedom oscillator"

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        return sdof(*x.T)
