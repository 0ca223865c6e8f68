"""High-level orchestrator of an imprecise sensitivity analysis.

Runs the pipeline configured by an `AnalysisConfig`: phantom-point design,
degree-adaptive sparse PCE, reordering into conditional expansions, interval
Sobol' indices by global optimization, and the optional validation, oracle and
hierarchical-sampling steps.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from core.analysis_config import AnalysisConfig
from core.config import settings
from core.exceptions import ConfigError
from models import ExperimentalDesign, SobolInterval
from tools.augmented.phantoms import generate_phantoms
from tools.augmented.space import AugmentedSpace, sample_design
from tools.imprecise.bounds import pinched_sobol, sobol_bounds, sobol_distribution, uniform_theta_sampler
from tools.imprecise.reordering import SplitIndexSet, split_indices
from tools.oracle.monte_carlo import imprecise_sobol_doubleloop, sobol_mc_all
from tools.pce.model import PceModel
from tools.pce.regression import rel_gen_error
from tools.pce.selection import degree_adaptive_fit
from tools.reporting.writers import write_csv, write_json
from tools.sobol.types import SobolOrder
from tools.testbeds.types import registry_lookup

logger = logging.getLogger(__name__)

REPORTED_ORDERS = (SobolOrder.FIRST, SobolOrder.TOTAL)


class SobolAnalysis:
    """Runs one configured analysis and writes its outputs."""

    def __init__(self, config: AnalysisConfig, config_dir: Path, output_dir: Path) -> None:
        self.config = config
        self.output_dir = Path(output_dir)
        self.model = registry_lookup(config.model, base_dir=config_dir)
        if self.model.input_dim != len(config.inputs):
            raise ConfigError(
                f"model '{config.model}' takes {self.model.input_dim} inputs, "
                f"{len(config.inputs)} are declared"
            )
        self.space = AugmentedSpace.from_pboxes(
            config.pboxes(),
            names=[item.name for item in config.inputs],
            aux_routes=[item.aux_route for item in config.inputs],
        )
        self.optimizer_cfg = config.optimizer.to_config()
        logger.info(
            "Analysis of '%s': %d inputs, %d augmented dimensions (%d epistemic)",
            config.model,
            self.space.n_inputs,
            self.space.dim,
            self.space.n_theta,
        )

    # ---- pipeline steps ----

    def build_design(self) -> ExperimentalDesign:
        block = self.config.design
        v, x = sample_design(self.space, block.N, block.seed)
        responses = self.model.evaluate(x)
        return generate_phantoms(
            self.space,
            x,
            responses,
            block.n_ph,
            seed=block.seed,
            run_ids=np.arange(block.N),
            base_theta=self.space.theta_from_points(v),
            mode=block.phantom_mode,
        )

    def fit(self, design: ExperimentalDesign) -> PceModel:
        pce = self.config.pce
        model = degree_adaptive_fit(
            design,
            self.space.bases,
            pce.p_max,
            pce.q,
            settings=pce.to_settings(),
            aleatory_dims=self.space.aleatory_dims,
            epistemic_dims=self.space.epistemic_dims,
        )
        logger.info("Selected degree %d with %d terms, LOO %.3e", model.degree, model.n_terms, model.loo)
        if model.loo > settings.LOO_WARNING_THRESHOLD:
            logger.warning(
                "LOO error %.3e exceeds %.1e: the surrogate is under-fit and intervals may collapse",
                model.loo,
                settings.LOO_WARNING_THRESHOLD,
            )
        return model

    def validation_error(self, model: PceModel) -> float | None:
        block = self.config.validation
        if block is None:
            return None
        v = self.space.sample_reference(block.n, block.seed)
        responses = self.model.evaluate(self.space.forward_transform(v), charge=False)
        error = rel_gen_error(model, v, responses)
        logger.info("Relative generalization error on %d points: %.3e", block.n, error)
        return error

    def intervals(self, split: SplitIndexSet, model: PceModel) -> dict[str, dict[str, SobolInterval]]:
        result = {}
        for i, name in enumerate(self.space.names):
            result[name] = {
                str(order): sobol_bounds(split, model.coefficients, (i,), order, self.optimizer_cfg, name=name)
                for order in REPORTED_ORDERS
            }
            logger.info(
                "%s: first [%.4f, %.4f], total [%.4f, %.4f]",
                name,
                result[name]["first"].lower,
                result[name]["first"].upper,
                result[name]["total"].lower,
                result[name]["total"].upper,
            )
        return result

    def _theta_report(self, theta: np.ndarray) -> dict[str, float]:
        physical = self.space.destandardize_theta(theta)
        return dict(zip(self.space.theta_labels, physical.tolist()))

    def _fit_summary(self, design: ExperimentalDesign, model: PceModel, err_gen: float | None) -> dict:
        return {
            "model": self.config.model,
            "n_evaluations": self.model.evaluations,
            "design": {
                "N": self.config.design.N,
                "n_ph": self.config.design.n_ph,
                "rows": design.n_rows,
                "distinct_runs": design.n_runs,
            },
            "pce": {
                "degree": model.degree,
                "n_terms": model.n_terms,
                "candidate_size": model.candidate_size,
                "loo": model.loo,
                "err_gen": err_gen,
                "mean": model.mean,
                "variance": model.variance,
            },
        }

    def _design_frame(self, design: ExperimentalDesign) -> pd.DataFrame:
        frame = pd.DataFrame(design.points, columns=list(self.space.labels))
        frame.insert(0, "run_id", design.run_ids)
        physical = pd.DataFrame(design.physical, columns=list(self.space.names))
        frame = pd.concat([frame, physical], axis=1)
        frame["response"] = design.responses
        return frame

    # ---- commands ----

    def run_fit(self) -> dict:
        design = self.build_design()
        model = self.fit(design)
        err_gen = self.validation_error(model)
        split = split_indices(model)
        payload = self._fit_summary(design, model, err_gen)
        payload["labels"] = list(self.space.labels)
        payload["index_set"] = [
            {"alpha": list(alpha), "coefficient": float(c)} for alpha, c in zip(model.index_set, model.coefficients)
        ]
        payload["aleatory_groups"] = {
            "count": split.n_groups,
            "sizes": split.group_sizes,
        }
        self._write("results.json", payload)
        self._write_frame("design.csv", self._design_frame(design))
        return payload

    def run_bounds(self) -> dict:
        design = self.build_design()
        model = self.fit(design)
        err_gen = self.validation_error(model)
        split = split_indices(model)
        intervals = self.intervals(split, model)

        payload = self._fit_summary(design, model, err_gen)
        inputs, bars, impact = {}, [], []
        for i, name in enumerate(self.space.names):
            entry = {}
            for order, interval in intervals[name].items():
                pinched = pinched_sobol(split, model.coefficients, (i,), SobolOrder(order))
                entry[order] = [interval.lower, interval.upper]
                entry[f"{order}_argmin"] = self._theta_report(interval.argmin_theta)
                entry[f"{order}_argmax"] = self._theta_report(interval.argmax_theta)
                entry[f"{order}_pinched"] = pinched
                entry[f"{order}_impact"] = interval.impact
                entry[f"{order}_epistemic"] = interval.epistemic_width
                bars.append({"input": name, "order": order, "lower": interval.lower, "upper": interval.upper, "pinched": pinched})
                impact.append({"input": name, "order": order, "impact": interval.impact, "epistemic": interval.epistemic_width})
            inputs[name] = entry
        payload["inputs"] = inputs
        if self.config.bayesian is not None:
            payload["bayesian"] = self._bayesian(split, model)

        self._write("results.json", payload)
        self._write_frame("design.csv", self._design_frame(design))
        self._write_frame("barplot.csv", pd.DataFrame(bars))
        self._write_frame("impact_epistemic.csv", pd.DataFrame(impact))
        return payload

    def run_validate(self) -> pd.DataFrame:
        design = self.build_design()
        model = self.fit(design)
        split = split_indices(model)
        oracle = self.config.oracle
        pboxes = [block.pbox for block in self.space.blocks]

        def evaluate(x: np.ndarray) -> np.ndarray:
            return self.model.evaluate(x, charge=False)

        rows = []
        center = [pbox.family.frozen(pbox.box.center) for pbox in pboxes]
        estimates = sobol_mc_all(evaluate, center, oracle.n, oracle.seed)
        for i, name in enumerate(self.space.names):
            for order, estimate in zip(REPORTED_ORDERS, estimates[i]):
                surrogate = pinched_sobol(split, model.coefficients, (i,), order)
                rows.append(self._comparison("pinched", name, order, surrogate, estimate.value, estimate.std_error))

        loops = imprecise_sobol_doubleloop(evaluate, pboxes, oracle.grid_points, oracle.n, oracle.seed)
        intervals = self.intervals(split, model)
        for i, name in enumerate(self.space.names):
            reference = {
                "first": (loops.first_lower[i], loops.first_upper[i]),
                "total": (loops.total_lower[i], loops.total_upper[i]),
            }
            for order, (low, high) in reference.items():
                interval = intervals[name][order]
                se = loops.worst_std_error
                rows.append(self._comparison("interval_lower", name, order, interval.lower, low, se))
                rows.append(self._comparison("interval_upper", name, order, interval.upper, high, se))

        frame = pd.DataFrame(rows)
        logger.info(
            "Validation: %d of %d comparisons within 3 standard errors",
            int(frame["within_3se"].sum()),
            len(frame),
        )
        self._write_frame("validate.csv", frame)
        return frame

    # ---- helpers ----

    @staticmethod
    def _comparison(check: str, name: str, order, surrogate: float, reference: float, std_error: float) -> dict:
        return {
            "check": check,
            "input": name,
            "order": str(order),
            "surrogate": surrogate,
            "monte_carlo": reference,
            "std_error": std_error,
            "within_3se": bool(abs(surrogate - reference) <= 3.0 * std_error + 1e-3),
        }

    def _bayesian(self, split: SplitIndexSet, model: PceModel) -> dict:
        block = self.config.bayesian
        sampler = uniform_theta_sampler(split.n_theta)
        summary = {}
        for i, name in enumerate(self.space.names):
            summary[name] = {
                str(order): sobol_distribution(
                    split, model.coefficients, (i,), order, sampler, block.n, block.seed
                ).summary()
                for order in REPORTED_ORDERS
            }
        return summary

    def _write(self, filename: str, payload: dict) -> None:
        if "json" in self.config.outputs.formats:
            write_json(self.output_dir / filename, payload)

    def _write_frame(self, filename: str, frame: pd.DataFrame) -> None:
        if "csv" in self.config.outputs.formats:
            write_csv(self.output_dir / filename, frame)
