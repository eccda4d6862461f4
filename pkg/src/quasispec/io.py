"""CSV and manifest serialization shared by the command-line drivers.

CSV files carry a header row, '.' decimals, LF line endings, and 17
significant digits so doubles round-trip exactly.  Every primary output gets
a JSON manifest sidecar with the full parameter map and content hashes.
"""

import hashlib
import json
import os
import time
from pathlib import Path

import numpy as np

ARTIFACT_VERSION = "quasispec-0.1.0"


def fmt(x) -> str:
    return format(float(x), ".17g")


def write_csv(path, header, rows):
    """Atomically write rows of floats (or strings) under a header line."""
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(x if isinstance(x, str) else fmt(x) for x in row))
    data = "\n".join(lines) + "\n"
    _atomic_write(path, data.encode())
    return path


def read_csv(path):
    lines = Path(path).read_text().strip().split("\n")
    header = lines[0].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    return header, np.asarray(rows)


def params_hash(params: dict) -> str:
    blob = json.dumps({k: repr(v) if isinstance(v, float) else v
                       for k, v in params.items()}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def file_hash(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(path, command: str, params: dict, outputs, duration: float,
                   seed=None, extra: dict | None = None):
    """JSON sidecar recording the run; outputs must already exist."""
    path = Path(path)
    manifest = {
        "command": command,
        "params": {k: str(v) for k, v in params.items()},
        "params_hash": params_hash(params),
        "outputs": [{"file": str(Path(o).name), "sha256": file_hash(o)} for o in outputs],
        "duration_s": round(duration, 3),
        "seed": seed,
        "version": ARTIFACT_VERSION,
        "written_at": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
    }
    if extra:
        manifest.update(extra)
    _atomic_write(path, (json.dumps(manifest, indent=2, sort_keys=True) + "\n").encode())
    return path


def write_text(path, text: str):
    """Atomic text write (write-then-rename)."""
    _atomic_write(Path(path), text.encode())
    return Path(path)


def _atomic_write(path: Path, data: bytes):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def measure_to_csv(path, measure):
    return write_csv(path, ["position", "weight"],
                     zip(measure.positions, measure.weights))


def intervals_to_csv(path, s):
    return write_csv(path, ["a", "b"], zip(s.a, s.b))


def load_config(path) -> dict:
    """Flat key=value config file; '#' starts a comment."""
    cfg = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad config line: {raw!r}")
        k, v = line.split("=", 1)
        cfg[k.strip()] = v.strip()
    return cfg
