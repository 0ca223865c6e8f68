"""Linear elastic plane truss solved with bar finite elements."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import linalg

from core.exceptions import DimensionMismatch, InvalidParams, SingularStiffness

from .base import TestModel

logger = logging.getLogger(__name__)

_AXES = {"x": 0, "y": 1}


@dataclass(frozen=True)
class Element:
    nodes: tuple[int, int]
    area: float
    modulus: float
    group: str = ""


@dataclass(frozen=True)
class PointLoad:
    node: int
    direction: tuple[float, float] = (0.0, -1.0)
    scale: float = 1.0
    name: str = ""


@dataclass(frozen=True)
class TrussDefinition:
    """Geometry, supports, loads and monitored degree of freedom of a plane truss.

    Attributes:
        nodes: Node coordinates in metres.
        elements: Bars with cross-section area (m^2) and Young's modulus (Pa).
        supports: Fixed degrees of freedom per node ("x", "y").
        loads: Point loads; a load value times ``scale`` gives newtons.
        output_node: Node whose displacement is reported.
        output_dof: "x" or "y".
        output_sign: Factor applied to the reported displacement.
    """

    nodes: np.ndarray
    elements: tuple[Element, ...]
    supports: dict[int, tuple[str, ...]]
    loads: tuple[PointLoad, ...]
    output_node: int
    output_dof: str = "y"
    output_sign: float = 1.0
    name: str = "truss"
    description: str = ""

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "nodes", nodes)
        n_nodes = len(nodes)
        for element in self.elements:
            i, j = element.nodes
            if not (0 <= i < n_nodes and 0 <= j < n_nodes):
                raise InvalidParams(f"bar {element.nodes} references a missing node", module="models")
            if np.hypot(*(nodes[j] - nodes[i])) <= 0.0:
                raise InvalidParams(f"bar {element.nodes} has zero length", module="models")
            if element.area <= 0.0 or element.modulus <= 0.0:
                raise InvalidParams(f"bar {element.nodes} needs positive area and modulus", module="models")
        if self.output_dof not in _AXES or not 0 <= self.output_node < n_nodes:
            raise InvalidParams("output must name an existing node and 'x' or 'y'", module="models")

    @classmethod
    def from_dict(cls, data: dict) -> "TrussDefinition":
        try:
            return cls(
                nodes=np.array(data["nodes"], dtype=float),
                elements=tuple(
                    Element(
                        nodes=(int(e["nodes"][0]), int(e["nodes"][1])),
                        area=float(e["area"]),
                        modulus=float(e.get("modulus", data.get("modulus", 0.0))),
                        group=str(e.get("group", "")),
                    )
                    for e in data["elements"]
                ),
                supports={int(s["node"]): tuple(s["fixed"]) for s in data["supports"]},
                loads=tuple(
                    PointLoad(
                        node=int(p["node"]),
                        direction=tuple(p.get("direction", (0.0, -1.0))),
                        scale=float(p.get("scale", 1.0)),
                        name=str(p.get("name", f"P{k + 1}")),
                    )
                    for k, p in enumerate(data["loads"])
                ),
                output_node=int(data["output"]["node"]),
                output_dof=str(data["output"].get("dof", "y")),
                output_sign=float(data["output"].get("sign", 1.0)),
                name=str(data.get("name", "truss")),
                description=str(data.get("description", "")),
            )
        except (KeyError, TypeError, IndexError) as e:
            raise InvalidParams(f"malformed truss definition: {e}", module="models") from e

    @classmethod
    def from_json(cls, path: str | Path) -> "TrussDefinition":
        with open(path, encoding="utf-8") as handle:
            return cls.from_dict(json.load(handle))

    @property
    def n_dofs(self) -> int:
        return 2 * len(self.nodes)

    @property
    def output_index(self) -> int:
        return 2 * self.output_node + _AXES[self.output_dof]

    def fixed_dofs(self) -> np.ndarray:
        return np.array(
            sorted(2 * node + _AXES[axis] for node, axes in self.supports.items() for axis in axes),
            dtype=int,
        )


@dataclass
class TrussSolution:
    displacements: np.ndarray
    reactions: np.ndarray
    axial_forces: np.ndarray
    output: float


def _bar_geometry(nodes: np.ndarray, element: Element) -> tuple[float, float, float]:
    i, j = element.nodes
    dx, dy = nodes[j] - nodes[i]
    length = float(np.hypot(dx, dy))
    return length, dx / length, dy / length


def _element_stiffness(nodes: np.ndarray, element: Element) -> np.ndarray:
    """Global-axes stiffness of a bar: EA/L times the rotated axial pattern."""
    length, c, s = _bar_geometry(nodes, element)
    t = np.array([-c, -s, c, s])
    return element.modulus * element.area / length * np.outer(t, t)


def assemble_stiffness(definition: TrussDefinition) -> np.ndarray:
    K = np.zeros((definition.n_dofs, definition.n_dofs))
    for element in definition.elements:
        i, j = element.nodes
        dofs = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1]
        K[np.ix_(dofs, dofs)] += _element_stiffness(definition.nodes, element)
    return K


def load_vector(definition: TrussDefinition, loads) -> np.ndarray:
    loads = np.asarray(loads, dtype=float).ravel()
    if len(loads) != len(definition.loads):
        raise DimensionMismatch(
            f"truss '{definition.name}' has {len(definition.loads)} loads, got {len(loads)}", module="models"
        )
    F = np.zeros(definition.n_dofs)
    for value, load in zip(loads, definition.loads):
        F[2 * load.node : 2 * load.node + 2] += value * load.scale * np.asarray(load.direction, dtype=float)
    return F


def _factorize(definition: TrussDefinition, K: np.ndarray):
    free = np.setdiff1d(np.arange(definition.n_dofs), definition.fixed_dofs())
    try:
        factor = linalg.cho_factor(K[np.ix_(free, free)])
    except linalg.LinAlgError as e:
        raise SingularStiffness(
            f"stiffness of truss '{definition.name}' is singular after applying supports"
        ) from e
    return free, factor


def solve(definition: TrussDefinition, loads) -> TrussSolution:
    """Static solution: nodal displacements, support reactions and bar axial forces.

    Raises:
        SingularStiffness: If the constrained stiffness matrix is not positive definite.
    """
    K = assemble_stiffness(definition)
    F = load_vector(definition, loads)
    free, factor = _factorize(definition, K)
    U = np.zeros(definition.n_dofs)
    U[free] = linalg.cho_solve(factor, F[free])
    reactions = K @ U - F

    axial = np.empty(len(definition.elements))
    for k, element in enumerate(definition.elements):
        i, j = element.nodes
        length, c, s = _bar_geometry(definition.nodes, element)
        elongation = (U[2 * j : 2 * j + 2] - U[2 * i : 2 * i + 2]) @ np.array([c, s])
        axial[k] = element.modulus * element.area * elongation / length

    return TrussSolution(
        displacements=U.reshape(-1, 2),
        reactions=reactions.reshape(-1, 2),
        axial_forces=axial,
        output=definition.output_sign * float(U[definition.output_index]),
    )


def influence_vector(definition: TrussDefinition) -> np.ndarray:
    """Monitored displacement per unit value of every load.

    The response is linear in the loads, so one factorization and one solve
    per load give the whole model.
    """
    K = assemble_stiffness(definition)
    free, factor = _factorize(definition, K)
    n_loads = len(definition.loads)
    unit = np.column_stack([load_vector(definition, row) for row in np.eye(n_loads)])
    U = np.zeros((definition.n_dofs, n_loads))
    U[free] = linalg.cho_solve(factor, unit[free])
    influence = definition.output_sign * U[definition.output_index]
    logger.debug("Influence vector of '%s': %s", definition.name, influence)
    return influence


def truss_deflection(definition: TrussDefinition, loads) -> float:
    """Monitored displacement (m) under the given load values."""
    return solve(definition, loads).output


class TrussModel(TestModel):
    """Truss deflection as a function of the load values."""

    units = "m"

    def __init__(self, definition: TrussDefinition):
        super().__init__()
        self.definition = definition
        self.name = f"truss:{definition.name}"
        self.input_dim = len(definition.loads)
        self.input_names = tuple(load.name for load in definition.loads)
        self.description = definition.description
        self.influence = influence_vector(definition)

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        return x @ self.influence
