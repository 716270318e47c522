#!/usr/bin/env python3
"""
Run configuration: built-in defaults, config.yml overrides, .env and
environment overrides, and the optional debug session directory.
"""

import copy
import json
import math
import os
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from console import info, warn

# Load environment variables from .env file if it exists (for local runs)
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass

DEFAULT_CONFIG_PATH = Path("config.yml")

DEFAULTS: Dict[str, Any] = {
    "r": 0,
    "s": 1,
    "grading": None,
    "shape": "2,1",
    "n_roots": None,
    "inhomogeneities": [],
    "seed": 0,
    "backend": "exact",
    "tolerances": {
        "bae": 1e-10,
        "residue": 1e-8,
        "pole": 1e-8,
        "duality": 1e-8,
        "dedup": 1e-6,
        "float_check": 1e-8,
    },
    "solver": {
        "seeds": 32,
        "max_iterations": 200,
        "max_halvings": 30,
        "box": [-3.0, 3.0, -3.0, 3.0],
        "max_total_roots": 8,
        "workers": 1,
    },
    "verify": {
        "method": "sampled",
        "max_shape_side": 3,
        "max_roots_per_color": 2,
        "max_sites": 2,
        "root_denominator": 7,
        "rectangle_bound": 3,
        "samples": 3,
    },
    "output": None,
    "debug_mode": {
        "enabled": False,
        "output_dir": "debug",
        "save_certificates": True,
        "save_seed_reports": True,
        "timestamp_format": "%Y%m%d_%H%M%S",
    },
}

# Set by init_debug_session()
DEBUG_CONFIG: Optional[Dict[str, Any]] = None
DEBUG_SESSION_DIR: Optional[Path] = None


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _truthy(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


def load_config(path: Optional[Path] = None) -> Dict[str, Any]:
    """Defaults, then the YAML file, then BETHE_SEED / BETHE_DEBUG."""
    path = Path(path) if path is not None else DEFAULT_CONFIG_PATH
    loaded: Dict[str, Any] = {}
    if path.exists():
        with open(path) as f:
            loaded = yaml.safe_load(f) or {}
        if not isinstance(loaded, dict):
            raise ValueError(f"{path}: top level must be a mapping, got {type(loaded).__name__}")
    else:
        warn(f"config file {path} not found, using built-in defaults")
    config = deep_merge(DEFAULTS, loaded)

    if os.environ.get("BETHE_SEED"):
        config["seed"] = int(os.environ["BETHE_SEED"])
    if os.environ.get("BETHE_DEBUG"):
        config["debug_mode"]["enabled"] = _truthy(os.environ["BETHE_DEBUG"])
    return config


def finite_json(value: Any) -> Any:
    """Replace inf and nan (e.g. the condition number of a singular Jacobian) by null."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: finite_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [finite_json(v) for v in value]
    return value


def init_debug_session(config: Dict[str, Any], tag: str = "run") -> Optional[Path]:
    """Create a timestamped session directory when debug mode is enabled."""
    global DEBUG_CONFIG, DEBUG_SESSION_DIR
    debug_mode = config.get("debug_mode", {})
    if not debug_mode.get("enabled", False):
        DEBUG_CONFIG, DEBUG_SESSION_DIR = None, None
        return None
    DEBUG_CONFIG = debug_mode
    output_dir = Path(debug_mode.get("output_dir", "debug"))
    timestamp = datetime.now().strftime(debug_mode.get("timestamp_format", "%Y%m%d_%H%M%S"))
    DEBUG_SESSION_DIR = output_dir / f"{timestamp}_{tag}"
    DEBUG_SESSION_DIR.mkdir(parents=True, exist_ok=True)
    info(f"🐛 Debug mode enabled. Output: {DEBUG_SESSION_DIR}")
    return DEBUG_SESSION_DIR


def save_debug_artifact(name: str, payload: Any, kind: str = "certificates") -> Optional[Path]:
    """Write payload as pretty JSON into the session; kind picks the save_* switch."""
    if not DEBUG_CONFIG or DEBUG_SESSION_DIR is None:
        return None
    if not DEBUG_CONFIG.get(f"save_{kind}", True):
        return None
    target = DEBUG_SESSION_DIR / f"{name}.json"
    target.write_text(json.dumps(finite_json(payload), indent=2, sort_keys=True, default=str, allow_nan=False))
    return target
