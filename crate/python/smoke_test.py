#!/usr/bin/env python3
"""Smoke test for the squareful_py extension module.

Build the module first:

    cargo build -p squareful-py --release

then run this script from anywhere inside the repository:

    python3 python/smoke_test.py
"""

import importlib.util
import pathlib
import shutil
import sys
import tempfile


def load_module():
    root = pathlib.Path(__file__).resolve().parent.parent
    names = ["libsquareful_py.so", "libsquareful_py.dylib", "squareful_py.dll"]
    candidates = [
        root / "target" / profile / name
        for profile in ("release", "debug")
        for name in names
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit(
            "squareful_py cdylib not found; run `cargo build -p squareful-py` first"
        )
    lib = max(built, key=lambda p: p.stat().st_mtime)
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="squareful_py"))
    target = tmp / ("squareful_py" + (".so" if lib.suffix != ".dll" else ".pyd"))
    shutil.copy2(lib, target)
    spec = importlib.util.spec_from_file_location("squareful_py", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    sq = load_module()

    # Exact integer primitives.
    assert sq.isqrt(10**18 + 5) == 10**9
    assert sq.is_perfect_square(289) == 17
    assert sq.is_perfect_square(2) is None
    assert sq.is_perfect_cube(12167) == 23
    assert sq.is_prime(10**9 + 7)
    assert not sq.is_prime(561)  # Carmichael
    assert sq.factorize(63) == [(3, 2), (7, 1)]
    assert sq.factorize(1) == []
    assert sq.padic_valuation(3, 21) == 1
    assert sq.gcd(-12, 18) == 6
    print("ok: arithmetic primitives")

    # Powerful numbers.
    assert sq.enumerate_powerful(72) == [1, 4, 8, 9, 16, 25, 27, 32, 36, 49, 64, 72]
    assert sq.is_powerful(8) and not sq.is_powerful(7)
    assert sq.powerful_decomposition(72) == (3, 2)
    assert sq.consecutive_runs(300) == [(8, 2), (288, 2)]
    assert sq.pairs_from_pell(2) == [(8, 9), (288, 289)]
    assert sq.odd_valuation_primes(72) == [2]
    assert sq.as_prime_cube_times_square(200) == 2
    assert sq.as_prime_cube_times_square(7) is None
    print("ok: powerful numbers")

    # Pell equations and recurrences.
    assert sq.cf_sqrt(3) == (1, [1, 2])
    assert sq.pell_fundamental(3) == (2, 1)
    assert sq.pell_solutions(3, 4) == [(2, 1), (7, 4), (26, 15), (97, 56)]
    assert sq.pell_base_solutions(3, -2) == [(1, 1)]
    assert sq.pell_base_solutions(3, 2) == []
    assert sq.pell_general_solutions(3, -2, 4) == [
        (1, 1, 1),
        (5, 3, 2),
        (19, 11, 3),
        (71, 41, 4),
    ]
    assert sq.recurrence_terms(4, 1, 1, 5, 4) == [1, 5, 19, 71]
    assert sq.recurrence_contains(4, 1, 1, 5, 71) == 4
    assert sq.recurrence_contains(4, 1, 1, 5, 70) is None
    print("ok: pell equations")

    # Curves.
    assert sq.quartic_to_weierstrass(3, 3, 3) == (3, 9, 0)
    assert sq.quartic_push_point(3, 3, 3, 1, 3) == (3, 9)
    assert sq.quartic_pull_x(3, 3, 3, 3, 9) == 1
    assert sq.integral_points(0, 0, 1, 1000) == [
        (-1, 0),
        (0, -1),
        (0, 1),
        (2, -3),
        (2, 3),
    ]
    assert len(sq.known_curves()) == 4
    print("ok: curves")

    # Verification harness.
    report = sq.verify_theorem(200)
    assert report.verified and report.examined == 199
    assert report.counterexamples == []
    report = sq.verify_corollary(50)
    assert report.verified
    assert any("63" in note for note in report.notes)
    report = sq.check_collision(50)
    assert report.verified
    report = sq.scan_triples(10**6)
    assert report.verified
    starts = [v for (k, v) in report.observations if k == "pair_run_start"]
    assert starts[:4] == [8, 288, 675, 9800]
    residue, predicates, verdict, detail = sq.trace_case(2)
    assert residue == 2 and verdict == "hypothesis fails" and "7" in detail
    print("ok: verification harness")

    print("smoke test passed")


if __name__ == "__main__":
    main()
