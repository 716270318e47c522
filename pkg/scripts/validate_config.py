#!/usr/bin/env python3
"""
Validate the run configuration and Bethe input files.

Usage:
    python main.py validate-config [--config PATH] [--input PATH ...] [--strict]

Exit codes:
    0: valid (warnings allowed)
    1: YAML syntax error or missing file
    2: schema errors
    3: warnings under --strict
"""

from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import yaml

from validation_schemas import BAESystemSchema, RunConfigSchema, ValidationError

SYNTAX_MARKERS = ("YAML syntax error", "File not found")
RULE = "=" * 60


def _fail(path: Path, message: str, line: Optional[int] = None) -> Tuple[dict, List[ValidationError]]:
    return {}, [ValidationError(ValidationError.ERROR, path.name, message, line=line)]


def load_yaml_file(file_path: Path) -> Tuple[dict, List[ValidationError]]:
    """Parse a YAML (or JSON) mapping; errors instead of exceptions."""
    try:
        with open(file_path) as f:
            content = yaml.safe_load(f)
    except FileNotFoundError:
        return _fail(file_path, f"File not found: {file_path}")
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        if mark is None:
            return _fail(file_path, f"YAML syntax error: {e}")
        return _fail(file_path, f"YAML syntax error at line {mark.line + 1}, column {mark.column + 1}: {e.problem}",
                     mark.line + 1)
    if content is None:
        return _fail(file_path, "File is empty or contains only comments")
    if not isinstance(content, dict):
        return _fail(file_path, f"Top level must be a mapping, got {type(content).__name__}")
    return content, []


def validate_config_file(config_path: Path) -> List[ValidationError]:
    config, errors = load_yaml_file(config_path)
    return errors or RunConfigSchema.validate(config, config_path.name)


def validate_input_file(input_path: Path) -> List[ValidationError]:
    data, errors = load_yaml_file(input_path)
    return errors or BAESystemSchema.validate(data, input_path.name)


def _print_file(name: str, errors: List[ValidationError], warnings: List[ValidationError], strict: bool) -> None:
    if not errors and not warnings:
        print(f"✅ {name}: Valid")
        return
    if errors:
        print(f"❌ {name}: {len(errors)} error(s)")
    else:
        print(f"⚠️  {name}: {len(warnings)} warning(s)")
    for e in errors:
        print(f"  ❌ {e}")
    for w in warnings:
        print(f"  ❌ {w} [promoted to error in strict mode]" if strict else f"  ⚠️  {w}")
    print()


def print_summary(all_errors: Dict[str, List[ValidationError]], strict: bool = False) -> int:
    """Print per-file results and return the exit code."""
    n_errors = n_warnings = 0
    syntax = False
    print(f"\n{RULE}\nVALIDATION RESULTS\n{RULE}\n")
    for name in sorted(all_errors):
        errors = [e for e in all_errors[name] if e.severity == ValidationError.ERROR]
        warnings = [e for e in all_errors[name] if e.severity == ValidationError.WARNING]
        n_errors += len(errors)
        n_warnings += len(warnings)
        syntax = syntax or any(m in e.message for e in errors for m in SYNTAX_MARKERS)
        _print_file(name, errors, warnings, strict)

    print(RULE)
    if n_errors:
        print(f"Summary: {n_errors} error(s), {n_warnings} warning(s)\n\n❌ Validation failed")
        code = 1 if syntax else 2
    elif n_warnings and strict:
        print(f"Summary: {n_warnings} error(s), 0 warning(s) [strict mode]")
        code = 3
    elif n_warnings:
        print(f"Summary: 0 error(s), {n_warnings} warning(s)\n\n⚠️  Warnings found, but no errors")
        code = 0
    else:
        print("Summary: 0 error(s), 0 warning(s)\n\n✅ All configuration files are valid!")
        code = 0
    print(f"{RULE}\n")
    return code


def run_validation(config_path: Path, input_paths: Sequence[Path] = (), strict: bool = False) -> int:
    all_errors = {config_path.name: validate_config_file(config_path)}
    for path in input_paths:
        all_errors[path.name] = validate_input_file(path)
    return print_summary(all_errors, strict=strict)
