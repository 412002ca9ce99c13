#!/usr/bin/env python3
"""Reproduce the worked examples end to end and print one line per check.

Equivalent to ``evograph paper``; kept as a script so the corpus is easy
to run and tweak without the CLI wrapper.

Usage: python scripts/run_paper_suite.py [--fast] [--seed N] [--restarts N]
"""

import sys

from evograph.cli import main

if __name__ == "__main__":
    sys.exit(main(["paper", *sys.argv[1:]]))
