"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each row checks that both backends return identical results before
reporting timings.
"""

from __future__ import annotations

import argparse
import time
from timeit import Timer

from relkit import _pykernels
from relkit.perm import parse_cycles

try:
    from relkit import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _gens(n, cycles):
    return [parse_cycles(c, n).images for c in cycles]


M11 = _gens(11, ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"])
PSL32 = _gens(7, ["(1,4)(6,7)", "(1,3,2)(4,7,5)"])
C13 = _gens(13, ["(1,2,3,4,5,6,7,8,9,10,11,12,13)"])
M24 = _gens(24, [
    "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
    "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
    "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)",
])

FANO = [sum(1 << (p - 1) for p in line) for line in
        [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)]]
CIRCULANT = [(1 << i) | (1 << ((i + 1) % 9)) for i in range(9)] + \
                [(1 << i) | (1 << ((i + 3) % 9)) for i in range(9)]

CASES = [
    ("orbit_scan M11 (2^11 masks)", "orbit_scan", (11, M11)),
    ("orbit_scan C13 (2^13 masks)", "orbit_scan", (13, C13)),
    ("mask_orbit M24 on a 4-set", "mask_orbit", (M24, 0b1111, 0)),
    ("mask_orbit PSL(3,2) on a 3-set", "mask_orbit", (PSL32, 0b111, 0)),
    ("sym_scan Fano lines, n=7", "sym_scan", (7, FANO, None)),
    ("sym_scan circulant C9(1,3)", "sym_scan", (9, CIRCULANT, None)),
]


def _normal(name, value):
    if name == "mask_orbit":
        return sorted(value)
    if name == "orbit_scan":
        return list(value[0]), list(value[1])
    return bytes(value)


def _best(fn, args, repeat):
    return min(Timer(lambda: fn(*args)).repeat(repeat=repeat, number=1))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; timing the pure backend only")
    print(f"{'case':34} {'pure s':>9} {'cython s':>9} {'speedup':>8}")
    start = time.perf_counter()
    for label, name, case_args in CASES:
        py = getattr(_pykernels, name)
        tp = _best(py, case_args, args.repeat)
        if _ckernels is None:
            print(f"{label:34} {tp:9.4f} {'-':>9} {'-':>8}")
            continue
        cy = getattr(_ckernels, name)
        if _normal(name, py(*case_args)) != _normal(name, cy(*case_args)):
            raise SystemExit(f"backends disagree on {label}")
        tc = _best(cy, case_args, args.repeat)
        print(f"{label:34} {tp:9.4f} {tc:9.4f} {tp / tc:7.1f}x")
    print(f"total {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
