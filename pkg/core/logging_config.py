"""Centralized logging configuration for the isobol command-line tool.

Two sinks are set up for every invocation:
- a timed rotating file in the working directory that keeps DEBUG records of all runs
- the console, filtered by LOG_LEVEL or --verbose

Each analysis additionally gets a ``run.log`` in its output directory (see
``attach_run_log``) so results and the log that produced them stay together.
Numerical warnings raised by numpy and scipy are routed through logging.
"""

import logging
import sys
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path
from typing import Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
RUN_LOG_FILENAME = "run.log"


def setup_logging(
    log_level: str = "INFO",
    log_dir: Optional[Path] = None,
    log_filename: str = "isobol.log",
    rotation_when: str = "midnight",
    rotation_interval: int = 1,
    backup_count: int = 7,
    console_output: bool = True,
    capture_warnings: bool = True,
) -> logging.Logger:
    """Configure the root logger for one command-line invocation.

    Args:
        log_level: Minimum console log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_dir: Directory of the rotating log file. If None, uses current directory
        log_filename: Name of the rotating log file
        rotation_when: When to rotate logs ('S', 'M', 'H', 'D', 'midnight', 'W0'-'W6')
        rotation_interval: Interval for rotation (e.g., 1 day)
        backup_count: Number of rotated files to keep
        console_output: Whether to output logs to console
        capture_warnings: Route ``warnings.warn`` calls (RuntimeWarning from
            numpy, OptimizeWarning from scipy) to the ``py.warnings`` logger

    Returns:
        Configured root logger instance
    """
    if log_dir is None:
        log_dir = Path.cwd()
    else:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)

    log_file_path = log_dir / log_filename
    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    file_handler = TimedRotatingFileHandler(
        filename=str(log_file_path),
        when=rotation_when,
        interval=rotation_interval,
        backupCount=backup_count,
        encoding="utf-8",
    )
    file_handler.setFormatter(formatter)
    file_handler.setLevel(logging.DEBUG)  # Capture all levels in file

    handlers: list[logging.Handler] = [file_handler]

    if console_output:
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setFormatter(formatter)
        console_handler.setLevel(log_level)  # Console respects log_level
        handlers.append(console_handler)

    logging.basicConfig(
        level=logging.DEBUG,  # Handlers do the filtering
        format=LOG_FORMAT,
        datefmt=DATE_FORMAT,
        handlers=handlers,
        force=True,  # Replace handlers left by an earlier invocation
    )
    logging.captureWarnings(capture_warnings)

    root_logger = logging.getLogger()
    _configure_third_party_loggers()

    root_logger.info(
        "Logging initialized: level=%s, file=%s, rotation=%s, backups=%d",
        log_level,
        log_file_path,
        rotation_when,
        backup_count,
    )
    return root_logger


def attach_run_log(output_dir: Path, filename: str = RUN_LOG_FILENAME) -> logging.Handler:
    """Mirror every record of the current analysis into ``output_dir/filename``.

    The file is overwritten so a rerun leaves only its own log behind. The
    caller detaches the handler with ``detach_run_log`` once the run ends.
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(output_dir / filename, mode="w", encoding="utf-8")
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    handler.setLevel(logging.DEBUG)
    logging.getLogger().addHandler(handler)
    return handler


def detach_run_log(handler: logging.Handler) -> None:
    logging.getLogger().removeHandler(handler)
    handler.close()


def _configure_third_party_loggers():
    """Reduce noise from verbose third-party libraries."""
    # scikit-learn reports LARS path details at INFO
    logging.getLogger("sklearn").setLevel(logging.WARNING)
