#!/usr/bin/env python3
"""Run the standing verification corpus and print one verdict line per
structure.

Covers: quantization of each catalog dot against the compatible circ family
at several rational points, the Euler-derivation algebras on Q[t]/(t^n), and
a timed sweep of the degree-5 alternating identity on their commutator
brackets.
"""

import argparse
import time
from fractions import Fraction

from tpalg import (
    AlgebraPresentation,
    BilinearOp,
    QQ,
    check_identity,
    check_novikov_deformation,
    classical_limit,
    deform_from_np,
    default_labels,
    euler_gelfand,
)

F = Fraction

AB_POINTS = [
    (F(0), F(0)),
    (F(1), F(2)),
    (F(-1), F(1, 2)),
    (F(2), F(-3)),
    (F(1, 3), F(0)),
]


def circ_family(a, b):
    return BilinearOp.from_entries(
        2, QQ, {(0, 0, 0): a, (0, 0, 1): b, (0, 1, 1): a + 1, (1, 0, 1): a}
    )


def catalog_dots():
    dots = {
        "A00": BilinearOp.zero(2, QQ),
        "A01": BilinearOp.from_entries(2, QQ, {(0, 0, 1): F(1)}),
    }
    for lam in (F(1), F(2)):
        dots[f"Alam{lam}"] = BilinearOp.from_entries(
            2, QQ, {(0, 0, 0): lam, (0, 1, 1): lam, (1, 0, 1): lam}
        )
    return dots


def quantization_sweep(order):
    structures = []
    for name, dot in sorted(catalog_dots().items()):
        for a, b in AB_POINTS:
            pres = AlgebraPresentation(
                2, QQ, default_labels(2), {"dot": dot, "circ": circ_family(a, b)}
            )
            structures.append((f"{name} @ (a,b)=({a},{b})", pres))
    for n in range(3, 7):
        structures.append((f"euler dim {n}", euler_gelfand(n, QQ)))

    failures = 0
    for name, pres in structures:
        d = deform_from_np(pres, order)
        nov = check_novikov_deformation(d)
        lim = classical_limit(d)
        ok = nov.passed and lim.passed
        failures += not ok
        print(f"  {'ok  ' if ok else 'FAIL'} {name}")
    print(f"quantization sweep: {len(structures) - failures}/{len(structures)} ok")
    return failures


def s5_sweep(max_dim):
    print(f"S5 sweep on Euler commutator brackets, dims 2..{max_dim}:")
    for n in range(2, max_dim + 1):
        pres = euler_gelfand(n, QQ)
        alg = AlgebraPresentation(
            n, QQ, pres.basis_labels, {"bracket": pres.op("bracket")}
        )
        start = time.perf_counter()
        passed = check_identity(alg, "S5").passed
        elapsed = time.perf_counter() - start
        print(f"  dim {n}: {'PASS' if passed else 'FAIL'} ({elapsed:.2f}s)")
        if not passed:
            return 1
    return 0


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--order", type=int, default=3, help="truncation order")
    parser.add_argument("--max-dim", type=int, default=7, help="S5 sweep bound")
    args = parser.parse_args()

    failures = quantization_sweep(args.order)
    failures += s5_sweep(args.max_dim)
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
