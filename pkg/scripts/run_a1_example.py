#!/usr/bin/env python3
"""Run the bundled two-vertex worked example end to end and save the JSON.

Usage: python scripts/run_a1_example.py [output.json]
"""

import io
import json
import sys
import time
from contextlib import redirect_stdout

from quivinv.cli import main


def run(out_path: str = "a1_example.json") -> int:
    buffer = io.StringIO()
    start = time.monotonic()
    with redirect_stdout(buffer):
        code = main(["example-a1"])
    elapsed = time.monotonic() - start
    text = buffer.getvalue()
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(text)
    payload = json.loads(text)
    print(f"wrote {out_path} ({elapsed:.1f}s, exit {code})")
    print(f"  representation ideal generators: {len(payload['representation_ideal'])}")
    print(f"  invariant-ring generators (selected): {len(payload['generators'])}")
    print(f"  kernel generators at bound (1,1): {len(payload['kernel'])}")
    print(
        "  elimination ideal generators: "
        f"{len(payload['invariant_presentation']['elimination_ideal'])}"
    )
    print(f"  matches reference generators: {payload['compare_with_reference']}")
    print(f"  verification: {'pass' if payload['verification']['pass'] else 'FAIL'}")
    return code


if __name__ == "__main__":
    sys.exit(run(sys.argv[1] if len(sys.argv) > 1 else "a1_example.json"))
