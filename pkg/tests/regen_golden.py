"""Rewrite tests/golden from the current CLI: python3 tests/regen_golden.py"""

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from cli_cases import CASES  # noqa: E402

from fregsurf.cli import run  # noqa: E402

HERE = os.path.join(os.path.dirname(__file__), "golden")

if __name__ == "__main__":
    for name, argv in CASES.items():
        code, text = run(argv)
        with open(os.path.join(HERE, f"{name}.txt"), "w") as fh:
            fh.write(f"exit={code}\n" + text.replace(os.path.dirname(__file__), "<tests>"))
        print(name, code)
