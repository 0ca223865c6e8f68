"""Univariate orthonormal polynomial bases defined by three-term recurrences.

Every basis is represented by the recurrence of its monic orthogonal
polynomials, x p_k = p_{k+1} + a_k p_k + b_k p_{k-1}, with b_0 the total mass of
the reference density (1 for probability densities). Evaluation uses the
orthonormal form

    sqrt(b_{k+1}) P_{k+1}(x) = (x - a_k) P_k(x) - sqrt(b_k) P_{k-1}(x),

which never forms factorials and stays stable well beyond degree 20.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate, linalg, stats

from core.exceptions import DomainError, QuadratureFailure

from .types import MAX_SUPPORTED_DEGREE, BasisKind

logger = logging.getLogger(__name__)

Density = Callable[[np.ndarray], np.ndarray]

_GL_NODES_PER_PANEL = 40
_MAX_PANEL_WIDTH = 0.5
_MASS_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class UnivariateBasis:
    """Orthonormal polynomials of one variable.

    Attributes:
        kind: Polynomial family.
        a: Stored recurrence coefficients a_k (numeric bases only).
        b: Stored recurrence coefficients b_k, b_0 first (numeric bases only).
        name: Label used in logs and reports.
    """

    kind: BasisKind
    a: np.ndarray | None = field(default=None, repr=False)
    b: np.ndarray | None = field(default=None, repr=False)
    name: str = ""

    @property
    def max_degree(self) -> int:
        if self.kind == BasisKind.NUMERIC_STIELTJES:
            return len(self.a)
        return MAX_SUPPORTED_DEGREE

    def recurrence(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Return (a_0..a_{n-1}, b_0..b_n)."""
        k = np.arange(n, dtype=float)
        kb = np.arange(1, n + 1, dtype=float)
        if self.kind == BasisKind.LEGENDRE_SYMMETRIC:
            return np.zeros(n), np.concatenate([[1.0], kb**2 / (4.0 * kb**2 - 1.0)])
        if self.kind == BasisKind.LEGENDRE_SHIFTED_01:
            return (
                np.full(n, 0.5),
                np.concatenate([[1.0], kb**2 / (4.0 * (4.0 * kb**2 - 1.0))]),
            )
        if self.kind == BasisKind.HERMITE_PROBABILIST:
            return np.zeros(n), np.concatenate([[1.0], kb])
        if self.kind == BasisKind.LAGUERRE_STANDARD:
            return 2.0 * k + 1.0, np.concatenate([[1.0], kb**2])
        if n > len(self.a) or n + 1 > len(self.b):
            raise DomainError(
                f"basis '{self.name}' was built up to degree {len(self.a)}; "
                f"degree {n} requested",
                module="polynomials",
            )
        return self.a[:n], self.b[: n + 1]

    def evaluate_all(self, x: np.ndarray, degree: int) -> np.ndarray:
        """Values of P_0..P_degree at ``x``; the degree axis is appended last."""
        x = np.asarray(x, dtype=float)
        a, b = self.recurrence(max(degree, 1))
        sqrt_b = np.sqrt(b)
        values = np.empty(x.shape + (degree + 1,))
        values[..., 0] = 1.0 / sqrt_b[0]
        if degree >= 1:
            values[..., 1] = (x - a[0]) * values[..., 0] / sqrt_b[1]
        for k in range(1, degree):
            values[..., k + 1] = (
                (x - a[k]) * values[..., k] - sqrt_b[k] * values[..., k - 1]
            ) / sqrt_b[k + 1]
        return values

    def gauss_quadrature(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Gauss nodes and weights of the reference density (Golub-Welsch)."""
        a, b = self.recurrence(n)
        nodes, vectors = linalg.eigh_tridiagonal(a, np.sqrt(b[1:n]))
        weights = b[0] * vectors[0, :] ** 2
        return nodes, weights


def eval_univariate(basis: UnivariateBasis, degree: int, x) -> np.ndarray | float:
    """Value of the degree-``degree`` orthonormal polynomial at ``x``."""
    if degree < 0:
        raise DomainError("polynomial degree must be non-negative", module="polynomials")
    values = basis.evaluate_all(x, degree)[..., degree]
    return float(values) if np.ndim(values) == 0 else values


@functools.lru_cache(maxsize=None)
def analytic_basis(kind: BasisKind) -> UnivariateBasis:
    """Shared instance of one of the closed-form families."""
    if kind == BasisKind.NUMERIC_STIELTJES:
        raise DomainError("numeric bases are built with stieltjes_basis()", module="polynomials")
    return UnivariateBasis(kind=kind, name=str(kind))


def _truncate_support(
    density: Density, lower: float, upper: float, max_degree: int
) -> tuple[float, float]:
    """Replace infinite ends by points where density * |x|^(2d+2) is negligible."""
    power = 2 * max_degree + 2

    def negligible(x: float) -> bool:
        value = float(density(np.array([x]))[0])
        if value <= 0.0:
            return True
        return np.log(value) + power * np.log(max(abs(x), 1.0)) < np.log(1e-200)

    def walk(start: float, direction: float) -> float:
        step = 1.0
        x = start + direction * step
        while not negligible(x) and step < 1e5:
            step *= 2.0
            x = start + direction * step
        return x

    lo = lower if np.isfinite(lower) else walk(min(upper, 0.0), -1.0)
    hi = upper if np.isfinite(upper) else walk(max(lower, 0.0), 1.0)
    return lo, hi


def _discretize(density: Density, lower: float, upper: float) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and density-weighted weights."""
    n_panels = max(400, int(np.ceil((upper - lower) / _MAX_PANEL_WIDTH)))
    ref_nodes, ref_weights = np.polynomial.legendre.leggauss(_GL_NODES_PER_PANEL)
    edges = np.linspace(lower, upper, n_panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * ref_nodes[None, :]).ravel()
    weights = (half[:, None] * ref_weights[None, :]).ravel() * density(nodes)
    return nodes, weights


def stieltjes_basis(
    density: Density,
    support: tuple[float, float],
    max_degree: int,
    name: str = "stieltjes",
) -> UnivariateBasis:
    """Build an orthonormal basis for ``density`` by the discretized Stieltjes procedure.

    Args:
        density: Vectorized probability density.
        support: (lower, upper) support; infinite ends are allowed.
        max_degree: Highest polynomial degree the basis must evaluate.
        name: Label for logs.

    Raises:
        QuadratureFailure: If the density does not integrate to one.
    """
    lower, upper = support
    mass, abserr = integrate.quad(lambda t: float(density(np.array([t]))[0]), lower, upper, limit=200)
    if not np.isfinite(mass) or abs(mass - 1.0) > _MASS_TOLERANCE:
        raise QuadratureFailure(
            f"density '{name}' integrates to {mass:.12g} (error {abserr:.2g}) instead of 1"
        )

    lo, hi = _truncate_support(density, lower, upper, max_degree)
    nodes, weights = _discretize(density, lo, hi)
    weights = weights / weights.sum()
    logger.debug(
        "Stieltjes basis '%s': degree %d on [%g, %g] with %d nodes",
        name,
        max_degree,
        lo,
        hi,
        nodes.size,
    )

    n = max_degree + 1
    a = np.zeros(n)
    b = np.zeros(n + 1)
    b[0] = 1.0
    p_prev = np.zeros_like(nodes)
    p_curr = np.full_like(nodes, 1.0 / np.sqrt(b[0]))
    for k in range(n):
        a[k] = np.sum(weights * nodes * p_curr**2)
        q = (nodes - a[k]) * p_curr - (np.sqrt(b[k]) * p_prev if k > 0 else 0.0)
        b[k + 1] = np.sum(weights * q**2)
        if not np.isfinite(b[k + 1]) or b[k + 1] <= 0.0:
            raise QuadratureFailure(f"Stieltjes recurrence of '{name}' broke down at degree {k + 1}")
        p_prev, p_curr = p_curr, q / np.sqrt(b[k + 1])
    return UnivariateBasis(kind=BasisKind.NUMERIC_STIELTJES, a=a, b=b, name=name)


@functools.lru_cache(maxsize=None)
def gumbel_basis(max_degree: int = MAX_SUPPORTED_DEGREE) -> UnivariateBasis:
    """Orthonormal basis of the standard Gumbel (max) variable, built once."""
    return stieltjes_basis(
        stats.gumbel_r.pdf, (-np.inf, np.inf), max_degree, name="standard_gumbel"
    )
