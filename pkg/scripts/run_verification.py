#!/usr/bin/env python3
"""Run the full verification suite from a checkout.

Equivalent to ``tautverify run-all``; extra arguments are passed through,
e.g. ``python scripts/run_verification.py --json report.json``.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tautverify.cli import main

if __name__ == "__main__":
    raise SystemExit(main(["run-all", *sys.argv[1:]]))
