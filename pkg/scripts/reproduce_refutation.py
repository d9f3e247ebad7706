#!/usr/bin/env python3
"""Run the refutation experiment on the shipped arena and print the report.

Defaults match the desk-scale bounds (opponent memory 2, sign-pattern depth
3); pass extra CLI flags to enlarge the search, e.g.::

    python3 scripts/reproduce_refutation.py --bob-memory 3 --ramsey-depth 6
"""

import sys

from etog.cli import main

if __name__ == "__main__":
    sys.exit(main(["counterexample", *sys.argv[1:]]))
