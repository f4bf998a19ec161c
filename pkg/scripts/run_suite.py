#!/usr/bin/env python3
"""Run the full verification battery from a checkout.

Equivalent to ``leibniz paper-suite``; the seed can be set through
LEIBNIZ_SEED or --seed.
"""

import sys

from leibniz.cli import main

if __name__ == "__main__":
    sys.exit(main(["paper-suite", *sys.argv[1:]]))
