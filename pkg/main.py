"""Command-line entry point: ``python main.py {bounds,validate,fit} --config <file>``."""

import argparse
import logging
import sys
from pathlib import Path

from core.analysis_config import load_analysis_config
from core.config import settings
from core.exceptions import ConfigError, IsobolError, UnknownModel
from core.logging_config import attach_run_log, detach_run_log, setup_logging
from tools.analysis.runner import SobolAnalysis

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2


def _output_dir(config_path: Path, configured: str | None, override: str | None) -> Path:
    if override:
        return Path(override)
    if configured:
        return Path(configured)
    return Path(settings.OUTPUT_DIR) / config_path.stem


def _prepare(config_path: str | Path, output_dir: str | None, seed: int | None) -> SobolAnalysis:
    config_path = Path(config_path)
    config = load_analysis_config(config_path)
    if seed is not None:
        config = config.with_seed(seed)
    target = _output_dir(config_path, config.outputs.dir, output_dir)
    return SobolAnalysis(config, config_dir=config_path.parent, output_dir=target)


def _run(command: str, config_path, output_dir: str | None, seed: int | None) -> int:
    run_log = None
    try:
        analysis = _prepare(config_path, output_dir, seed)
        run_log = attach_run_log(analysis.output_dir)
        logger.info("Running '%s' for %s", command, config_path)
        getattr(analysis, f"run_{command}")()
        logger.info(
            "Finished '%s': %d model evaluations, outputs in %s",
            command,
            analysis.model.evaluations,
            analysis.output_dir,
        )
        return EXIT_OK
    except (ConfigError, UnknownModel) as e:
        logger.error("Configuration error: %s", e)
        return EXIT_CONFIG
    except IsobolError as e:
        logger.error("Analysis failed in module '%s': %s", e.module, e, exc_info=True)
        return EXIT_NUMERICAL
    except Exception as e:
        logger.error("Unexpected error in '%s': %s", command, e, exc_info=True)
        return EXIT_NUMERICAL
    finally:
        if run_log is not None:
            detach_run_log(run_log)


def cmd_bounds(config_path, output_dir: str | None = None, seed: int | None = None) -> int:
    """Fit the augmented surrogate and write interval Sobol' indices."""
    return _run("bounds", config_path, output_dir, seed)


def cmd_validate(config_path, output_dir: str | None = None, seed: int | None = None) -> int:
    """Compare surrogate indices with brute-force Monte Carlo estimates."""
    return _run("validate", config_path, output_dir, seed)


def cmd_fit(config_path, output_dir: str | None = None, seed: int | None = None) -> int:
    """Fit the augmented surrogate only and write its diagnostics."""
    return _run("fit", config_path, output_dir, seed)


COMMANDS = {"bounds": cmd_bounds, "validate": cmd_validate, "fit": cmd_fit}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isobol",
        description="Interval-valued Sobol' indices of models with parametric p-box inputs.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="analysis configuration (JSON)")
    parser.add_argument("--output-dir", default=None, help="directory for results (overrides the config)")
    parser.add_argument("--seed", type=int, default=None, help="design and optimizer seed (overrides the config)")
    parser.add_argument("--verbose", action="store_true", help="log DEBUG messages to the console")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(
        log_level="DEBUG" if args.verbose else settings.LOG_LEVEL,
        log_filename=settings.LOG_FILENAME,
        rotation_when="midnight",
        rotation_interval=1,
        backup_count=7,
        console_output=True,
    )
    return COMMANDS[args.command](args.config, output_dir=args.output_dir, seed=args.seed)


if __name__ == "__main__":
    sys.exit(main())
