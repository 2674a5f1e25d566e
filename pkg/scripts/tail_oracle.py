"""Record closed-form tail transforms for the constant pair (2, {0, 1}) at xi = 1.

Each tail factor is (1 + e^{-2 pi i xi / D}) / 2 = e^{-i pi xi / D} cos(pi xi / D),
so the transforms need no measure construction at all.  Writes
tests/data/tail_oracle.json, which the acceptance tests read.
"""

import cmath
import json
import math
from pathlib import Path

DEPTH = 20
K_MAX = 20


def tail(xi, k, m, unbounded):
    out, e = 1 + 0j, 0
    for l in range(1, m + 1):
        e += (k + l) if unbounded else 1
        t = math.pi * xi / 2**e
        out *= cmath.exp(-1j * t) * math.cos(t)
    return out


def main():
    rows = {}
    for name, unbounded in (("n_k=k", True), ("n_k=1", False)):
        rows[name] = [abs(tail(1, k, DEPTH, unbounded) - 1) for k in range(1, K_MAX + 1)]
    out = Path(__file__).resolve().parent.parent / "tests" / "data" / "tail_oracle.json"
    out.write_text(json.dumps({"xi": 1, "depth": DEPTH, "dist_to_one": rows}, indent=2) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
