#!/usr/bin/env python3
"""
Schema definitions for validating run configuration and Bethe input files.
"""

from typing import Any, Dict, List, Optional

KNOWN_BACKENDS = ["exact", "float"]

KNOWN_METHODS = ["canonical", "sampled", "modular", "float-spot"]

KNOWN_TOP_LEVEL = [
    "r", "s", "grading", "shape", "n_roots", "inhomogeneities", "seed", "backend",
    "tolerances", "solver", "verify", "output", "debug_mode",
]

# Desk-scale guards: larger values are allowed but warned about
LARGE_LIMITS = {
    "max_shape_side": 4,
    "max_roots_per_color": 3,
    "max_sites": 4,
    "rectangle_bound": 4,
}


class ValidationError:
    """Represents a validation error with severity level."""

    ERROR = "error"
    WARNING = "warning"

    def __init__(self, severity: str, file: str, message: str, line: Optional[int] = None):
        self.severity = severity
        self.file = file
        self.message = message
        self.line = line

    def __str__(self):
        line_info = f"Line {self.line}: " if self.line else ""
        return f"{line_info}{self.message}"

    def __repr__(self):
        return f"ValidationError({self.severity}, {self.file}, {self.message}, {self.line})"


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _check_signs(signs: Any, file: str, where: str) -> List[ValidationError]:
    if not isinstance(signs, list) or not signs:
        return [ValidationError(ValidationError.ERROR, file, f"'{where}' must be a non-empty list of +1/-1")]
    bad = [x for x in signs if x not in (1, -1) or isinstance(x, bool)]
    if bad:
        return [ValidationError(ValidationError.ERROR, file, f"'{where}' contains entries other than +1/-1: {bad}")]
    if signs.count(1) == 0:
        return [ValidationError(ValidationError.ERROR, file, f"'{where}' needs at least one +1 entry")]
    if len(signs) < 2:
        return [ValidationError(ValidationError.ERROR, file, f"'{where}' must have length at least 2")]
    return []


class RunConfigSchema:
    """Schema for config.yml validation."""

    @staticmethod
    def validate(config: Dict[str, Any], file: str = "config.yml") -> List[ValidationError]:
        """Validate config.yml structure and values."""
        errors = []

        for key in config:
            if key not in KNOWN_TOP_LEVEL:
                errors.append(ValidationError(ValidationError.WARNING, file, f"unknown top-level key '{key}'"))

        for key in ("r", "s"):
            if key in config and not _is_int(config[key]):
                errors.append(ValidationError(ValidationError.ERROR, file, f"'{key}' must be an integer, got: {config[key]}"))
        if _is_int(config.get("r", 0)) and config.get("r", 0) < 0:
            errors.append(ValidationError(ValidationError.ERROR, file, f"'r' must be >= 0, got: {config['r']}"))
        if _is_int(config.get("s", 0)) and config.get("s", 0) < -1:
            errors.append(ValidationError(ValidationError.ERROR, file, f"'s' must be >= -1, got: {config['s']}"))

        grading = config.get("grading")
        if isinstance(grading, list):
            errors.extend(_check_signs(grading, file, "grading"))
        elif grading is not None and not _is_int(grading) and not isinstance(grading, str):
            errors.append(ValidationError(ValidationError.ERROR, file,
                                          "'grading' must be a sign list, a sign string or an index"))

        if "seed" in config and (not _is_int(config["seed"]) or config["seed"] < 0):
            errors.append(ValidationError(ValidationError.ERROR, file,
                                          f"'seed' must be a non-negative integer, got: {config['seed']}"))

        if "backend" in config and config["backend"] not in KNOWN_BACKENDS:
            errors.append(ValidationError(ValidationError.ERROR, file,
                                          f"unknown backend '{config['backend']}'. Known backends: {', '.join(KNOWN_BACKENDS)}"))

        n_roots = config.get("n_roots")
        if n_roots is not None:
            if not isinstance(n_roots, list) or not all(_is_int(n) and n >= 0 for n in n_roots):
                errors.append(ValidationError(ValidationError.ERROR, file,
                                              "'n_roots' must be a list of non-negative integers"))

        if "inhomogeneities" in config and not isinstance(config["inhomogeneities"], list):
            errors.append(ValidationError(ValidationError.ERROR, file, "'inhomogeneities' must be a list"))

        tolerances = config.get("tolerances", {})
        if not isinstance(tolerances, dict):
            errors.append(ValidationError(ValidationError.ERROR, file, "'tolerances' must be a dictionary"))
        else:
            for name, value in tolerances.items():
                if not _is_number(value) or value <= 0:
                    errors.append(ValidationError(ValidationError.ERROR, file,
                                                  f"'tolerances.{name}' must be a positive number, got: {value}"))

        solver = config.get("solver", {})
        if not isinstance(solver, dict):
            errors.append(ValidationError(ValidationError.ERROR, file, "'solver' must be a dictionary"))
        else:
            for name in ("seeds", "max_iterations", "max_halvings", "max_total_roots", "workers"):
                if name in solver and (not _is_int(solver[name]) or solver[name] <= 0):
                    errors.append(ValidationError(ValidationError.ERROR, file,
                                                  f"'solver.{name}' must be a positive integer, got: {solver[name]}"))
            box = solver.get("box")
            if box is not None:
                if not isinstance(box, list) or len(box) != 4 or not all(_is_number(x) for x in box):
                    errors.append(ValidationError(ValidationError.ERROR, file,
                                                  "'solver.box' must be [re_min, re_max, im_min, im_max]"))
                elif box[0] >= box[1] or box[2] >= box[3]:
                    errors.append(ValidationError(ValidationError.ERROR, file, "'solver.box' has empty range"))

        verify = config.get("verify", {})
        if not isinstance(verify, dict):
            errors.append(ValidationError(ValidationError.ERROR, file, "'verify' must be a dictionary"))
        else:
            if "method" in verify and verify["method"] not in KNOWN_METHODS:
                errors.append(ValidationError(ValidationError.ERROR, file,
                                              f"unknown method '{verify['method']}'. Known methods: {', '.join(KNOWN_METHODS)}"))
            for name, limit in LARGE_LIMITS.items():
                if name not in verify:
                    continue
                value = verify[name]
                if not _is_int(value) or value <= 0:
                    errors.append(ValidationError(ValidationError.ERROR, file,
                                                  f"'verify.{name}' must be a positive integer, got: {value}"))
                elif value > limit:
                    errors.append(ValidationError(ValidationError.WARNING, file,
                                                  f"'verify.{name}' = {value} is large; runs may take very long"))

        debug_mode = config.get("debug_mode", {})
        if not isinstance(debug_mode, dict):
            errors.append(ValidationError(ValidationError.ERROR, file, "'debug_mode' must be a dictionary"))
        elif "enabled" in debug_mode and not isinstance(debug_mode["enabled"], bool):
            errors.append(ValidationError(ValidationError.ERROR, file, "'debug_mode.enabled' must be true or false"))

        return errors


class BAESystemSchema:
    """Schema for Bethe input files (system or Bethe data)."""

    @staticmethod
    def validate(data: Dict[str, Any], file: str = "input") -> List[ValidationError]:
        errors = []
        grading = data.get("grading")
        if grading is None:
            errors.append(ValidationError(ValidationError.ERROR, file, "'grading' is required but missing"))
        elif isinstance(grading, dict):
            errors.extend(_check_signs(grading.get("p"), file, "grading.p"))
            grading = grading.get("p")
        elif isinstance(grading, list):
            errors.extend(_check_signs(grading, file, "grading"))
        elif not isinstance(grading, str):
            errors.append(ValidationError(ValidationError.ERROR, file, "'grading' must be a sign list or string"))

        if "n_roots" not in data and "roots" not in data:
            errors.append(ValidationError(ValidationError.ERROR, file, "one of 'n_roots' or 'roots' is required"))
        if "n_roots" in data:
            n_roots = data["n_roots"]
            if not isinstance(n_roots, list) or not all(_is_int(n) and n >= 0 for n in n_roots):
                errors.append(ValidationError(ValidationError.ERROR, file,
                                              "'n_roots' must be a list of non-negative integers"))
            elif isinstance(grading, list) and len(n_roots) != len(grading) - 1:
                errors.append(ValidationError(ValidationError.ERROR, file,
                                              f"'n_roots' needs {len(grading) - 1} entries, got {len(n_roots)}"))
        if "roots" in data:
            roots = data["roots"]
            if not isinstance(roots, list) or not all(isinstance(col, list) for col in roots):
                errors.append(ValidationError(ValidationError.ERROR, file, "'roots' must be a list of lists"))
            elif isinstance(grading, list) and len(roots) != len(grading) - 1:
                errors.append(ValidationError(ValidationError.ERROR, file,
                                              f"'roots' needs {len(grading) - 1} colors, got {len(roots)}"))
        if "inhomogeneities" in data and not isinstance(data["inhomogeneities"], list):
            errors.append(ValidationError(ValidationError.ERROR, file, "'inhomogeneities' must be a list"))
        elif not data.get("inhomogeneities"):
            errors.append(ValidationError(ValidationError.WARNING, file,
                                          "no inhomogeneities given; the vacuum polynomial is P = 1"))
        return errors
