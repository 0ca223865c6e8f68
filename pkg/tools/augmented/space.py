"""Augmented input space: standardized hyper-parameters plus auxiliary variables.

Each physical input X_i contributes its non-degenerate hyper-parameters,
standardized to [-1, 1], followed by one auxiliary variable whose law does
not depend on the hyper-parameters. The isoprobabilistic transform is

    Gaussian   X = mu + sigma xi              xi ~ N(0, 1)
    Lognormal  X = exp(lambda + zeta xi)      xi ~ N(0, 1)
    Gumbel     X = alpha + beta w             w standard Gumbel
    Weibull    X = scale w^(1/shape)          w standard exponential
    Uniform    X = a + c (b - a)              c ~ U(0, 1)

and any family may instead be routed through its CDF with a unit-uniform
auxiliary variable.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import qmc

from core.config import settings
from core.exceptions import DimensionMismatch, DomainError
from tools.distributions.pbox import ParametricPBox
from tools.distributions.types import FamilyKind
from tools.polynomials.bases import UnivariateBasis, analytic_basis, gumbel_basis
from tools.polynomials.types import BasisKind

from .types import AuxKind, AuxRoute, aux_kind_for, aux_law

logger = logging.getLogger(__name__)

_UNIT_CLIP = 1e-15


@dataclass(frozen=True)
class InputBlock:
    """One physical input and its slice of the augmented vector.

    Attributes:
        name: Input name used in reports.
        pbox: Parametric p-box of the input.
        aux_kind: Standardized auxiliary variable.
        theta_dims: Augmented dimensions of the non-degenerate hyper-parameters.
        aux_dim: Augmented dimension of the auxiliary variable.
    """

    name: str
    pbox: ParametricPBox
    aux_kind: AuxKind
    theta_dims: tuple[int, ...]
    aux_dim: int

    @property
    def family(self):
        return self.pbox.family

    @property
    def epistemic(self) -> tuple[int, ...]:
        """Parameter positions that vary inside the box."""
        return self.pbox.box.epistemic

    def parameters(self, s: np.ndarray) -> np.ndarray:
        """Full hyper-parameter vectors from the standardized epistemic coordinates ``s``."""
        s = np.asarray(s, dtype=float)
        lower = np.asarray(self.pbox.box.lower)
        upper = np.asarray(self.pbox.box.upper)
        params = np.broadcast_to(lower, s.shape[:-1] + lower.shape).copy()
        for col, k in enumerate(self.epistemic):
            params[..., k] = lower[k] + 0.5 * (s[..., col] + 1.0) * (upper[k] - lower[k])
        return params

    def standardize(self, params: np.ndarray) -> np.ndarray:
        """Inverse of ``parameters`` restricted to the epistemic positions."""
        params = np.asarray(params, dtype=float)
        lower = np.asarray(self.pbox.box.lower)
        upper = np.asarray(self.pbox.box.upper)
        k = list(self.epistemic)
        return 2.0 * (params[..., k] - lower[k]) / (upper[k] - lower[k]) - 1.0

    def to_physical(self, aux: np.ndarray, params: np.ndarray) -> np.ndarray:
        aux = np.asarray(aux, dtype=float)
        kind = self.family.kind
        if self.aux_kind == AuxKind.UNIT_UNIFORM and kind != FamilyKind.UNIFORM:
            return self.family.frozen(params).ppf(np.clip(aux, _UNIT_CLIP, 1.0 - _UNIT_CLIP))
        first, second = self.family.native(params)
        if kind == FamilyKind.UNIFORM:
            return first + aux * (second - first)
        if kind == FamilyKind.LOGNORMAL:
            return np.exp(first + second * aux)
        if kind == FamilyKind.WEIBULL:
            return first * aux ** (1.0 / second)
        return first + second * aux

    def to_aux(self, x: np.ndarray, params: np.ndarray) -> np.ndarray:
        """Auxiliary coordinate that ``to_physical`` maps back to ``x`` under ``params``."""
        x = np.asarray(x, dtype=float)
        kind = self.family.kind
        if self.aux_kind == AuxKind.UNIT_UNIFORM and kind != FamilyKind.UNIFORM:
            return np.clip(self.family.frozen(params).cdf(x), _UNIT_CLIP, 1.0 - _UNIT_CLIP)
        first, second = self.family.native(params)
        if kind == FamilyKind.UNIFORM:
            return (x - first) / (second - first)
        if kind == FamilyKind.LOGNORMAL:
            return (np.log(x) - first) / second
        if kind == FamilyKind.WEIBULL:
            return (x / first) ** second
        return (x - first) / second

    def is_feasible(self, x: np.ndarray, params: np.ndarray) -> np.ndarray:
        """Whether ``x`` lies in the conditional support under ``params``."""
        lower, upper = self.family.support(params)
        return (np.asarray(x) >= lower) & (np.asarray(x) <= upper)


def _basis_for(kind: AuxKind) -> UnivariateBasis:
    if kind == AuxKind.STD_NORMAL:
        return analytic_basis(BasisKind.HERMITE_PROBABILIST)
    if kind == AuxKind.STD_GUMBEL:
        return gumbel_basis(settings.STIELTJES_MAX_DEGREE)
    if kind == AuxKind.STD_EXPONENTIAL:
        return analytic_basis(BasisKind.LAGUERRE_STANDARD)
    return analytic_basis(BasisKind.LEGENDRE_SHIFTED_01)


class AugmentedSpace:
    """Layout, bases and transforms of the augmented vector V = (Theta, C).

    Dimensions are ordered input by input: the input's non-degenerate
    hyper-parameters first, then its auxiliary variable.
    """

    def __init__(self, blocks: Sequence[InputBlock]):
        self.blocks = tuple(blocks)
        self.dim = sum(len(block.theta_dims) + 1 for block in self.blocks)
        self.epistemic_dims = tuple(d for block in self.blocks for d in block.theta_dims)
        self.aleatory_dims = tuple(block.aux_dim for block in self.blocks)
        bases: list[UnivariateBasis] = [None] * self.dim
        for block in self.blocks:
            for d in block.theta_dims:
                bases[d] = analytic_basis(BasisKind.LEGENDRE_SYMMETRIC)
            bases[block.aux_dim] = _basis_for(block.aux_kind)
        self.bases = tuple(bases)

    @classmethod
    def from_pboxes(
        cls,
        pboxes: Sequence[ParametricPBox],
        names: Sequence[str] | None = None,
        aux_routes: Sequence[AuxRoute] | None = None,
    ) -> "AugmentedSpace":
        names = list(names or [f"x{i + 1}" for i in range(len(pboxes))])
        routes = list(aux_routes or [AuxRoute.NATIVE] * len(pboxes))
        if not len(names) == len(routes) == len(pboxes):
            raise DimensionMismatch("names, routes and p-boxes must have equal lengths", module="augmented")

        blocks, position = [], 0
        for name, pbox, route in zip(names, pboxes, routes):
            n_theta = len(pbox.box.epistemic)
            blocks.append(
                InputBlock(
                    name=name,
                    pbox=pbox,
                    aux_kind=aux_kind_for(pbox.family.kind, route),
                    theta_dims=tuple(range(position, position + n_theta)),
                    aux_dim=position + n_theta,
                )
            )
            position += n_theta + 1
        space = cls(blocks)
        logger.debug("Augmented space with %d dimensions: %s", space.dim, ", ".join(space.labels))
        return space

    @property
    def n_inputs(self) -> int:
        return len(self.blocks)

    @property
    def n_theta(self) -> int:
        return len(self.epistemic_dims)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(block.name for block in self.blocks)

    @property
    def labels(self) -> tuple[str, ...]:
        labels = [""] * self.dim
        for block in self.blocks:
            for d, k in zip(block.theta_dims, block.epistemic):
                labels[d] = f"{block.name}.{block.family.param_names[k]}"
            labels[block.aux_dim] = f"{block.name}.{block.aux_kind}"
        return tuple(labels)

    @property
    def theta_labels(self) -> tuple[str, ...]:
        labels = self.labels
        return tuple(labels[d] for d in self.epistemic_dims)

    @property
    def has_bounded_support(self) -> bool:
        return any(block.family.is_bounded for block in self.blocks)

    def _check(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape[-1] != self.dim:
            raise DimensionMismatch(
                f"augmented points need {self.dim} coordinates, got {v.shape[-1]}", module="augmented"
            )
        return v

    def block_parameters(self, v: np.ndarray) -> list[np.ndarray]:
        """Physical hyper-parameter vectors of every input at the augmented points ``v``."""
        v = self._check(v)
        return [block.parameters(v[..., list(block.theta_dims)]) for block in self.blocks]

    def forward_transform(self, v: np.ndarray) -> np.ndarray:
        """Physical inputs x = T(v); input i depends only on its own block of v.

        Raises:
            InvalidParams: If de-standardized hyper-parameters violate the family constraints.
        """
        v = self._check(v)
        columns = [
            block.to_physical(v[..., block.aux_dim], params)
            for block, params in zip(self.blocks, self.block_parameters(v))
        ]
        return np.stack(columns, axis=-1)

    def theta_from_points(self, v: np.ndarray) -> np.ndarray:
        return self._check(v)[..., list(self.epistemic_dims)]

    def destandardize_theta(self, s: np.ndarray) -> np.ndarray:
        """Physical values of the epistemic hyper-parameters at standardized ``s``."""
        s = np.asarray(s, dtype=float)
        out, col = [], 0
        for block in self.blocks:
            n = len(block.theta_dims)
            params = block.parameters(s[..., col : col + n])
            out.append(params[..., list(block.epistemic)])
            col += n
        return np.concatenate(out, axis=-1) if out else s[..., :0]

    def unit_to_standard(self, u: np.ndarray) -> np.ndarray:
        """Map unit-cube coordinates to the reference laws of every dimension."""
        u = np.clip(self._check(u), _UNIT_CLIP, 1.0 - _UNIT_CLIP)
        v = np.empty_like(u)
        for block in self.blocks:
            for d in block.theta_dims:
                v[..., d] = 2.0 * u[..., d] - 1.0
            v[..., block.aux_dim] = aux_law(block.aux_kind).ppf(u[..., block.aux_dim])
        return v

    def sample_reference(self, n: int, seed: int | None = None) -> np.ndarray:
        """Independent draws from the reference densities (uniform hyper-parameters)."""
        rng = np.random.default_rng(seed)
        return self.unit_to_standard(rng.random((n, self.dim)))


def sample_design(space: AugmentedSpace, N: int, seed: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Latin hypercube design mapped to augmented and physical coordinates.

    Returns:
        Augmented points (N x n_aug) and physical inputs (N x M).
    """
    if N < 1:
        raise DomainError(f"design size must be >= 1, got {N}", module="augmented")
    unit = qmc.LatinHypercube(d=space.dim, seed=seed).random(N)
    v = space.unit_to_standard(unit)
    return v, space.forward_transform(v)
