#!/usr/bin/env python3
"""Run the full law battery with the default budgets and print every verdict.

Exit code is non-zero when any check fails.  Pass extra CLI flags to change
the seed or budgets, e.g.::

    python3 scripts/run_law_battery.py --seed 42 --samples 20000
"""

import sys

from etog.cli import main

if __name__ == "__main__":
    sys.exit(main(["check", *sys.argv[1:]]))
