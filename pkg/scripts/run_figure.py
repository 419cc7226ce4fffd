"""Produce the five-configuration results CSV at production resolution.

Equivalent to `clickbound figure --output results/figure.csv`; kept as a
script so the full pipeline is one command from a fresh checkout.
"""

import pathlib
import sys

sys.path.insert(0, "src")

from clickbound.cli import main

if __name__ == "__main__":
    out = pathlib.Path("results")
    out.mkdir(exist_ok=True)
    sys.exit(main(["figure", "--output", str(out / "figure.csv")]
                  + sys.argv[1:]))
