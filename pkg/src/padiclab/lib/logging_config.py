"""
Centralized logging configuration for PadicLab.

This module provides logging setup for both the command-line tool and the
experiment scripts: colored console output plus rotating JSON log files.
"""

import logging
import logging.handlers
import sys
from pathlib import Path

import coloredlogs
from pythonjsonlogger import jsonlogger

from padiclab.config import OUTPUT_DIR

JSON_LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s %(lineno)d %(pathname)s"


def _logs_dir(*parts: str) -> Path:
    logs_dir = Path(OUTPUT_DIR, "logs", *parts)
    logs_dir.mkdir(parents=True, exist_ok=True)
    return logs_dir


def _json_file_handler(path: Path, level: int, max_bytes: int, backups: int) -> logging.Handler:
    handler = logging.handlers.RotatingFileHandler(
        path, maxBytes=max_bytes, backupCount=backups, encoding="utf-8"
    )
    handler.setLevel(level)
    handler.setFormatter(jsonlogger.JsonFormatter(JSON_LOG_FORMAT))
    return handler


def setup_cli_logging(log_level: str = "WARNING", log_to_file: bool = True) -> logging.Logger:
    """
    Set up logging for the padiclab command-line tool.

    The console stays quiet unless the level is lowered with --verbose or
    --debug; primary outputs go to stdout, log lines go to stderr.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_to_file: Also write JSON lines to logs/padiclab.log

    Returns:
        Configured logger instance
    """
    numeric_level = getattr(logging, log_level.upper(), logging.WARNING)

    logger = logging.getLogger("padiclab")
    logger.setLevel(min(numeric_level, logging.INFO) if log_to_file else numeric_level)
    logger.handlers.clear()

    # 1. Console handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(
        coloredlogs.ColoredFormatter(
            fmt="%(asctime)s - %(levelname)s - %(name)s:%(lineno)d - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
    )
    logger.addHandler(console_handler)

    # 2. Main log file (INFO and above) - rotating
    if log_to_file:
        logger.addHandler(
            _json_file_handler(
                _logs_dir() / "padiclab.log", logging.INFO, 10 * 1024 * 1024, 5
            )
        )

    logger.debug("CLI logging initialized - Level: %s", log_level)
    return logger


def setup_script_logging(script_name: str, log_level: str = "INFO") -> logging.Logger:
    """
    Set up logging for experiment scripts.

    Args:
        script_name: Name of the script (e.g., 'separation_experiment')
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)

    Returns:
        Configured logger instance
    """
    numeric_level = getattr(logging, log_level.upper(), logging.INFO)

    logger = logging.getLogger(f"script.{script_name}")
    logger.setLevel(numeric_level)
    logger.handlers.clear()

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(
        coloredlogs.ColoredFormatter(fmt="%(asctime)s - %(message)s", datefmt="%H:%M:%S")
    )
    logger.addHandler(console_handler)

    scripts_dir = _logs_dir("scripts")
    logger.addHandler(
        _json_file_handler(scripts_dir / f"{script_name}.log", numeric_level, 5 * 1024 * 1024, 3)
    )
    logger.addHandler(
        _json_file_handler(
            scripts_dir / "script_errors.log", logging.WARNING, 5 * 1024 * 1024, 5
        )
    )

    logger.info("Script logging initialized for %s - Level: %s", script_name, log_level)
    return logger


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance with the specified name.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Logger instance
    """
    return logging.getLogger(name)


def log_verdict(logger: logging.Logger, subject: str, verdict: str, detail: str = "") -> None:
    """
    Log a classification or test verdict with consistent formatting.

    Args:
        logger: Logger instance
        subject: What was classified (e.g., 'real stabilization', 'growth')
        verdict: The outcome label
        detail: Optional numeric evidence
    """
    detail_str = f" ({detail})" if detail else ""
    logger.info("[VERDICT] %s: %s%s", subject, verdict, detail_str)


def log_performance_metric(
    logger: logging.Logger, operation: str, duration: float, count: int = 1
) -> None:
    """
    Log performance metrics for operations.

    Args:
        logger: Logger instance
        operation: Name of the operation
        duration: Time taken in seconds
        count: Number of items processed
    """
    rate = count / duration if duration > 0 else 0
    logger.info(
        "[PERFORMANCE] %s: %.2fs for %d items (%.1f/s)",
        operation,
        duration,
        count,
        rate,
    )
