#!/usr/bin/env python3
"""Entry point: python main.py <subcommand> ..."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "scripts"))

from cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
