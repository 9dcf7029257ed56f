#!/usr/bin/env python3
"""Run the full desk-scale verification grid and print the summary table.

Equivalent to `mystica verify-all`; kept as a script so the grid can be run
straight from a checkout.
"""

import sys

from mystica.cli import main

if __name__ == "__main__":
    sys.exit(main(["verify-all", *sys.argv[1:]]))
