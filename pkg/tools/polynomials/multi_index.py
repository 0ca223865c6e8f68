"""Multi-index sets and tensor-product basis evaluation."""

from __future__ import annotations

import logging
from typing import Iterable, Iterator, Sequence

import numpy as np

from core.exceptions import DimensionMismatch, DomainError

from .bases import UnivariateBasis

logger = logging.getLogger(__name__)

_NORM_SLACK = 1e-12


def graded_lex_key(alpha: Sequence[int]) -> tuple:
    """Sort key: total degree first, then larger leading entries first."""
    return (sum(alpha), tuple(-int(a) for a in alpha))


def q_norm(alpha: Sequence[int] | np.ndarray, q: float) -> np.ndarray | float:
    """Hyperbolic (quasi-)norm (sum alpha_i^q)^(1/q) along the last axis."""
    alpha = np.asarray(alpha, dtype=float)
    value = np.sum(alpha**q, axis=-1) ** (1.0 / q)
    return float(value) if np.ndim(value) == 0 else value


class MultiIndexSet:
    """Finite, duplicate-free set of multi-indices kept in graded-lex order."""

    def __init__(self, indices: Iterable[Sequence[int]], dim: int | None = None):
        unique = {tuple(int(a) for a in alpha) for alpha in indices}
        if any(a < 0 for alpha in unique for a in alpha):
            raise DomainError("multi-index entries must be non-negative", module="polynomials")
        dims = {len(alpha) for alpha in unique}
        if dim is None:
            if len(dims) != 1:
                raise DimensionMismatch(f"multi-indices of mixed lengths {sorted(dims)}")
            dim = dims.pop()
        elif dims and dims != {dim}:
            raise DimensionMismatch(f"expected multi-indices of length {dim}, got {sorted(dims)}")

        self.dim = dim
        self.indices: tuple[tuple[int, ...], ...] = tuple(sorted(unique, key=graded_lex_key))
        self.array = np.array(self.indices, dtype=int).reshape(len(self.indices), dim)
        self._position = {alpha: k for k, alpha in enumerate(self.indices)}

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.indices)

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in self._position

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiIndexSet) and self.indices == other.indices

    def __repr__(self) -> str:
        return f"MultiIndexSet(dim={self.dim}, size={len(self)})"

    def index_of(self, alpha: Sequence[int]) -> int:
        return self._position[tuple(alpha)]

    @property
    def degrees(self) -> np.ndarray:
        return self.array.sum(axis=1)

    @property
    def max_degree(self) -> int:
        """Largest total degree in the set."""
        return int(self.degrees.max()) if len(self) else 0

    def select(self, positions: Iterable[int]) -> "MultiIndexSet":
        return MultiIndexSet((self.indices[k] for k in positions), dim=self.dim)


def hyperbolic_index_set(M: int, p: int, q: float) -> MultiIndexSet:
    """All multi-indices of dimension ``M`` with q-norm at most ``p``.

    For ``q == 1`` this is the total-degree set with C(M + p, p) members;
    smaller ``q`` removes high-order interaction terms.

    Raises:
        DomainError: If ``q`` is outside (0, 1] or ``M``/``p`` are invalid.
    """
    if not 0.0 < q <= 1.0:
        raise DomainError(f"q-norm parameter must lie in (0, 1], got {q}", module="polynomials")
    if M < 1 or p < 0:
        raise DomainError(f"need M >= 1 and p >= 0, got M={M}, p={p}", module="polynomials")

    limit = (p + _NORM_SLACK) ** q
    powers = np.arange(p + 1, dtype=float) ** q
    found: list[tuple[int, ...]] = []

    def extend(prefix: list[int], used: float) -> None:
        if len(prefix) == M:
            found.append(tuple(prefix))
            return
        for a in range(p + 1):
            if used + powers[a] > limit:
                break
            prefix.append(a)
            extend(prefix, used + powers[a])
            prefix.pop()

    extend([], 0.0)
    logger.debug("Hyperbolic set M=%d p=%d q=%g has %d members", M, p, q, len(found))
    return MultiIndexSet(found, dim=M)


def truncate_index_set(index_set: MultiIndexSet, max_size: int, q: float) -> MultiIndexSet:
    """Keep the ``max_size`` members with smallest q-norm, then total degree.

    The zero index is always kept. Ties inside equal (q-norm, degree) fall back
    to graded-lex order.
    """
    if len(index_set) <= max_size:
        return index_set
    norms = q_norm(index_set.array, q)
    order = sorted(
        range(len(index_set)),
        key=lambda k: (round(float(norms[k]), 12), int(index_set.degrees[k]), k),
    )
    return index_set.select(order[:max_size])


def basis_tables(
    bases: Sequence[UnivariateBasis], points: np.ndarray, max_degrees: Sequence[int]
) -> list[np.ndarray]:
    """Per-dimension tables of P_0..P_d evaluated at the design coordinates."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] != len(bases):
        raise DimensionMismatch(
            f"points have {points.shape[1]} coordinates but {len(bases)} bases were given"
        )
    return [
        basis.evaluate_all(points[:, i], int(max_degrees[i])) for i, basis in enumerate(bases)
    ]


def tensor_basis_matrix(
    index_set: MultiIndexSet, bases: Sequence[UnivariateBasis], points: np.ndarray
) -> np.ndarray:
    """Matrix of psi_alpha(points[n]) with one column per member of ``index_set``."""
    if index_set.dim != len(bases):
        raise DimensionMismatch(
            f"index set has dimension {index_set.dim} but {len(bases)} bases were given"
        )
    points = np.atleast_2d(np.asarray(points, dtype=float))
    max_degrees = index_set.array.max(axis=0) if len(index_set) else np.zeros(index_set.dim, int)
    tables = basis_tables(bases, points, max_degrees)
    matrix = np.ones((points.shape[0], len(index_set)))
    for i, table in enumerate(tables):
        degrees = index_set.array[:, i]
        if np.any(degrees > 0):
            matrix *= table[:, degrees]
    return matrix


def eval_multivariate(
    alpha: Sequence[int], bases: Sequence[UnivariateBasis], v: Sequence[float] | np.ndarray
) -> float | np.ndarray:
    """psi_alpha(v) as the product of univariate evaluations.

    ``v`` may carry leading batch axes; its last axis must match ``alpha``.

    Raises:
        DimensionMismatch: If ``alpha``, ``bases`` and ``v`` disagree in length.
    """
    v = np.asarray(v, dtype=float)
    if not len(alpha) == len(bases) == v.shape[-1]:
        raise DimensionMismatch(
            f"multi-index length {len(alpha)}, {len(bases)} bases and "
            f"point dimension {v.shape[-1]} must agree"
        )
    value = np.ones(v.shape[:-1])
    for i, (degree, basis) in enumerate(zip(alpha, bases)):
        if degree > 0:
            value = value * basis.evaluate_all(v[..., i], int(degree))[..., degree]
    return float(value) if value.ndim == 0 else value
