# In src/padiclab/lib/artifact_writer.py
"""
Atomic, locked writes of output artifacts with a provenance header.

Outputs are written to a temporary file in the destination directory and
renamed into place, so readers never observe a half-written artifact.
"""

import json
import os
import tempfile
from pathlib import Path

from filelock import FileLock

from padiclab.config import OUTPUT_DIR
from padiclab.lib.logging_config import get_logger
from padiclab.lib.models import Provenance

logger = get_logger(__name__)

COMMENT_PREFIX = "# "


def resolve_output(path: str | Path, output_dir: str | Path = OUTPUT_DIR) -> Path:
    """Bare file names land in the output directory; paths with a directory are kept."""
    path = Path(path)
    return path if path.is_absolute() or path.parent != Path(".") else Path(output_dir) / path


def provenance_lines(provenance: Provenance) -> list[str]:
    """Comment lines for text formats; no timestamps so reruns are byte-identical."""
    data = provenance.model_dump(mode="json")
    return [f"{COMMENT_PREFIX}{key}: {json.dumps(data[key], sort_keys=True)}" for key in sorted(data)]


def write_bytes_atomic(path: str | Path, payload: bytes) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with FileLock(f"{path}.lock"):
        handle, temporary = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
        try:
            with os.fdopen(handle, "wb") as file:
                file.write(payload)
            os.replace(temporary, path)
        except BaseException:
            Path(temporary).unlink(missing_ok=True)
            raise
    logger.debug("Wrote %d bytes to %s", len(payload), path)
    return path


def write_text_atomic(
    path: str | Path, lines: list[str], provenance: Provenance | None = None
) -> Path:
    """Write text lines, prefixed by provenance comment lines when given."""
    header = provenance_lines(provenance) if provenance is not None else []
    text = "\n".join([*header, *lines]) + "\n"
    return write_bytes_atomic(path, text.encode("utf-8"))


def write_json_atomic(path: str | Path, document: dict) -> Path:
    text = json.dumps(document, indent=2, sort_keys=True) + "\n"
    return write_bytes_atomic(path, text.encode("utf-8"))


def data_lines(path: str | Path) -> list[str]:
    """Non-empty lines of a text artifact with provenance comments removed."""
    text = Path(path).read_text(encoding="utf-8")
    return [line for line in text.splitlines() if line.strip() and not line.startswith("#")]
