# In src/padiclab/config.py

import os
import sys
from pathlib import Path
from typing import Any

import yaml

from padiclab.lib.constants import (
    CONFIG_PATH_ENV,
    DEFAULT_ALPHA,
    DEFAULT_CENTRAL_FRACTION,
    DEFAULT_DEAD_ZONE_RATIO,
    DEFAULT_FIT_CEILING,
    DEFAULT_GEOMETRIC_SCALE,
    DEFAULT_GROWTH_FACTOR,
    DEFAULT_PADIC_TAIL,
    DEFAULT_REAL_SCHEDULE_RATIO,
    DEFAULT_REAL_TAIL,
    DEFAULT_REAL_TOLERANCE,
    DEFAULT_SCHEDULE_BASE,
    DEFAULT_SMOOTHING_WINDOW,
    DEFAULT_TARGET_DIGITS,
    EXIT_USAGE,
    OUTPUT_DIR_ENV,
)

# .parent -> src/padiclab/
# .parent.parent.parent -> the project root
current_script_path = Path(__file__)
PROJECT_ROOT = current_script_path.parent.parent.parent.as_posix()
SCRIPT_PATH = current_script_path.parent.as_posix()

CONFIG_FILE_PATH = Path(os.environ.get(CONFIG_PATH_ENV, Path(PROJECT_ROOT) / "config.yml"))

# A missing config.yml is fine: every key has a built-in default.
config: dict[str, Any] = {}
try:
    with open(CONFIG_FILE_PATH, encoding="utf-8") as file:
        config = yaml.safe_load(file) or {}
except FileNotFoundError:
    pass
except yaml.YAMLError as e:
    print(f"Error parsing config file at {CONFIG_FILE_PATH}: {e}", file=sys.stderr)
    sys.exit(EXIT_USAGE)


def _section(name: str) -> dict[str, Any]:
    value = config.get(name) or {}
    return value if isinstance(value, dict) else {}


# -_-_-_-_-_-_-_-_ CONFIGURATION _-_-_-_-_-_-_-_-

# PLUGIN_PATH points to the 'plugins' directory *within* the 'padiclab' package
PLUGIN_PATH = os.path.join(SCRIPT_PATH, "plugins")
TEMPLATE_PATH = os.path.join(SCRIPT_PATH, "templates")

# -------------Output---------------
OUTPUT_DIR = os.environ.get(
    OUTPUT_DIR_ENV, _section("output").get("directory", os.path.join(PROJECT_ROOT, "output"))
)
LOG_LEVEL = _section("output").get("log_level", "WARNING")

# -------------Frequency---------------
REAL_TOLERANCE = _section("frequency").get("real_tolerance", DEFAULT_REAL_TOLERANCE)
REAL_TAIL = _section("frequency").get("real_tail", DEFAULT_REAL_TAIL)
REAL_SCHEDULE_RATIO = _section("frequency").get("real_schedule_ratio", DEFAULT_REAL_SCHEDULE_RATIO)
PADIC_TAIL = _section("frequency").get("padic_tail", DEFAULT_PADIC_TAIL)
TARGET_DIGITS = _section("frequency").get("target_digits", DEFAULT_TARGET_DIGITS)
GEOMETRIC_SCALE = _section("frequency").get("geometric_scale", DEFAULT_GEOMETRIC_SCALE)

# -------------Realization---------------
GROWTH_FACTOR = _section("realization").get("growth_factor", DEFAULT_GROWTH_FACTOR)
FILL_MODE = _section("realization").get("fill", "block")

# -------------Complexity---------------
DEAD_ZONE_RATIO = _section("complexity").get("dead_zone_ratio", DEFAULT_DEAD_ZONE_RATIO)
FIT_CEILING = _section("complexity").get("fit_ceiling", DEFAULT_FIT_CEILING)
SCHEDULE_BASE = _section("complexity").get("schedule_base", DEFAULT_SCHEDULE_BASE)
COMPRESSOR = _section("complexity").get("compressor", "zlib")

# -------------Simulation---------------
REPLICAS = _section("simulation").get("replicas", 1)
SMOOTHING_WINDOW = _section("simulation").get("smoothing_window", DEFAULT_SMOOTHING_WINDOW)
CENTRAL_FRACTION = _section("simulation").get("central_fraction", DEFAULT_CENTRAL_FRACTION)
ALPHA = _section("simulation").get("alpha", DEFAULT_ALPHA)


# -------------Config Validation---------------
class ConfigurationError(Exception):
    """Raised when config.yml has invalid values."""


def _is_number(value: object) -> bool:
    return isinstance(value, int | float) and not isinstance(value, bool)


def validate_config() -> None:
    """Validate configuration values at startup.

    Raises ConfigurationError listing every invalid value at once.
    """
    errors: list[str] = []

    # --- Frequency ---
    if not _is_number(REAL_TOLERANCE) or REAL_TOLERANCE <= 0:
        errors.append(f"frequency.real_tolerance must be a positive number, got {REAL_TOLERANCE!r}.")
    for name, value in [
        ("frequency.real_tail", REAL_TAIL),
        ("frequency.padic_tail", PADIC_TAIL),
        ("frequency.target_digits", TARGET_DIGITS),
        ("simulation.replicas", REPLICAS),
    ]:
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            errors.append(f"{name} must be a positive integer, got {value!r}.")
    if not _is_number(REAL_SCHEDULE_RATIO) or REAL_SCHEDULE_RATIO <= 1:
        errors.append(
            f"frequency.real_schedule_ratio must be greater than 1, got {REAL_SCHEDULE_RATIO!r}."
        )
    if not _is_number(GEOMETRIC_SCALE) or GEOMETRIC_SCALE <= 0:
        errors.append(f"frequency.geometric_scale must be positive, got {GEOMETRIC_SCALE!r}.")

    # --- Realization ---
    if not _is_number(GROWTH_FACTOR) or GROWTH_FACTOR < 1:
        errors.append(f"realization.growth_factor must be >= 1, got {GROWTH_FACTOR!r}.")
    if FILL_MODE not in ("block", "spread", "shuffle"):
        errors.append(f"realization.fill must be block, spread or shuffle, got {FILL_MODE!r}.")

    # --- Complexity ---
    if not _is_number(DEAD_ZONE_RATIO) or not 0 < DEAD_ZONE_RATIO <= 1:
        errors.append(f"complexity.dead_zone_ratio must be in (0, 1], got {DEAD_ZONE_RATIO!r}.")
    if not _is_number(FIT_CEILING) or FIT_CEILING <= 0:
        errors.append(f"complexity.fit_ceiling must be positive, got {FIT_CEILING!r}.")
    if not _is_number(SCHEDULE_BASE) or SCHEDULE_BASE <= 1:
        errors.append(f"complexity.schedule_base must be greater than 1, got {SCHEDULE_BASE!r}.")
    if COMPRESSOR not in ("zlib", "bz2", "lzma"):
        errors.append(f"complexity.compressor must be zlib, bz2 or lzma, got {COMPRESSOR!r}.")

    # --- Simulation ---
    if not isinstance(SMOOTHING_WINDOW, int) or SMOOTHING_WINDOW < 1 or SMOOTHING_WINDOW % 2 == 0:
        errors.append(
            f"simulation.smoothing_window must be an odd positive integer, got {SMOOTHING_WINDOW!r}."
        )
    if not _is_number(CENTRAL_FRACTION) or not 0 < CENTRAL_FRACTION <= 1:
        errors.append(f"simulation.central_fraction must be in (0, 1], got {CENTRAL_FRACTION!r}.")
    if not _is_number(ALPHA) or not 0 < ALPHA < 1:
        errors.append(f"simulation.alpha must be in (0, 1), got {ALPHA!r}.")

    if errors:
        error_list = "\n  - ".join(errors)
        raise ConfigurationError(
            f"Configuration validation failed with {len(errors)} error(s):\n  - {error_list}"
        )


# Run validation at import time
try:
    validate_config()
except ConfigurationError as e:
    print(f"ERROR: {e}", file=sys.stderr)
    sys.exit(EXIT_USAGE)
