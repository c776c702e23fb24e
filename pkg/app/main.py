#!/usr/bin/env python3
"""
Package entry point: ``python -m app.main`` runs the same CLI as ``sine-tune``.
"""

from app.cli import run

if __name__ == "__main__":
    run()
