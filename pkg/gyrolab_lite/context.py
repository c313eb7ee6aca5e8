from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

try:
    import psutil
    PSUTIL_AVAILABLE = True
except ImportError:
    PSUTIL_AVAILABLE = False

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = Path(__file__).resolve().parents[1] / "config" / "gyrolab.json"


def default_workers() -> int:
    """Physical core count, falling back to logical cores when psutil is missing."""
    count = None
    if PSUTIL_AVAILABLE:
        count = psutil.cpu_count(logical=False)
    if not count:
        count = os.cpu_count() or 1
    return max(1, int(count))


@dataclass(frozen=True)
class GyroContext:
    """Settings shared by the table, search and sampling subsystems."""

    catalog_dir: Optional[Path] = None
    exhaustive_order: int = 6
    subset_scan_bound: int = 20
    eager_cache_limit: int = 64
    closure_pool_size: int = 3
    canonical_limit: int = 10
    workers: int = 1
    tolerance: float = 1e-9
    dual_path_tolerance: float = 1e-12
    radius_cap: float = 0.999
    seed: int = 0
    chunk_size: int = 1000

    def __post_init__(self) -> None:
        if self.exhaustive_order < 1:
            raise ValueError("exhaustive_order must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not 0.0 < self.radius_cap < 1.0:
            raise ValueError("radius_cap must lie in (0, 1)")

    def with_overrides(self, **overrides: Any) -> "GyroContext":
        """Return a copy with the non-None overrides applied."""
        clean = {k: v for k, v in overrides.items() if v is not None}
        if "catalog_dir" in clean:
            clean["catalog_dir"] = Path(clean["catalog_dir"])
        return replace(self, **clean)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["catalog_dir"] = str(self.catalog_dir) if self.catalog_dir else None
        return data

    @classmethod
    def load(cls, config_file: Optional[Path] = None) -> "GyroContext":
        """Defaults, then the JSON config file, then GYROLAB_* environment variables."""
        known = {f.name for f in fields(cls)}
        values: Dict[str, Any] = {"workers": default_workers()}

        path = config_file or Path(os.environ.get("GYROLAB_CONFIG", DEFAULT_CONFIG_FILE))
        if path.exists():
            data = json.loads(path.read_text())
            unknown = set(data) - known
            if unknown:
                logger.warning(f"Ignoring unknown config keys in {path}: {sorted(unknown)}")
            values.update({k: v for k, v in data.items() if k in known})
            logger.debug(f"Loaded config from {path}")

        env_map = {
            "GYROLAB_CATALOG": ("catalog_dir", str),
            "GYROLAB_WORKERS": ("workers", int),
            "GYROLAB_EXHAUSTIVE_ORDER": ("exhaustive_order", int),
            "GYROLAB_SEED": ("seed", int),
        }
        for env_name, (key, conv) in env_map.items():
            raw = os.environ.get(env_name)
            if raw:
                values[key] = conv(raw)

        if values.get("catalog_dir"):
            values["catalog_dir"] = Path(values["catalog_dir"])
        else:
            values["catalog_dir"] = None
        return cls(**values)
