#!/usr/bin/env python3
"""
Console output helpers.

Status lines go to stderr so that stdout carries only JSON.
"""

import sys

QUIET = False


class Colors:
    """Terminal color codes"""
    RESET = '\033[0m'
    RED = '\033[91m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    BOLD = '\033[1m'


def set_quiet(quiet: bool) -> None:
    global QUIET
    QUIET = quiet


def status(message: str, ok: bool = True) -> None:
    """Progress line with a check or cross glyph; silenced by --quiet."""
    if QUIET:
        return
    glyph = f"{Colors.GREEN}✓{Colors.RESET}" if ok else f"{Colors.RED}✗{Colors.RESET}"
    print(f"{glyph} {message}", file=sys.stderr)


def info(message: str) -> None:
    if not QUIET:
        print(message, file=sys.stderr)


def warn(message: str) -> None:
    print(f"{Colors.YELLOW}WARNING:{Colors.RESET} {message}", file=sys.stderr)


def error(message: str) -> None:
    print(f"{Colors.RED}ERROR:{Colors.RESET} {message}", file=sys.stderr)


def banner(title: str, passed: bool) -> None:
    if QUIET:
        return
    color = Colors.GREEN if passed else Colors.RED
    print(f"\n{Colors.BOLD}{'=' * 60}{Colors.RESET}", file=sys.stderr)
    print(f"{color}{Colors.BOLD}{title}{Colors.RESET}", file=sys.stderr)
    print(f"{Colors.BOLD}{'=' * 60}{Colors.RESET}\n", file=sys.stderr)
