#!/usr/bin/env python3
"""
Main entry point for the SInE tuner when run from a source checkout.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from app.cli import run  # noqa: E402

if __name__ == "__main__":
    run()
