#!/usr/bin/env python3
"""Walk one signal through the whole pipeline and print the checkpoints.

Builds a chirp, applies a composed transform, inverts it, then runs the
short-time analysis/synthesis pair and the five inequality reports.  Meant
as a smoke test and as a copy-paste source for interactive use.
"""
import argparse
import math

import numpy as np

from nslct import (
    Grid,
    SampledSignal,
    WindowSpec,
    boundedness_margin,
    compose,
    hausdorff_young_report,
    heisenberg_report,
    lieb_report,
    log_report,
    moyal,
    norm_l2,
    nslct_fast,
    nslct_inverse,
    pitt_report,
    preset,
    stnslct_gram,
    stnslct_reconstruct,
    synthesize,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=256)
    ap.add_argument("--spacing", type=float, default=0.1)
    ap.add_argument("--stride", type=int, default=4)
    ap.add_argument("--alpha", type=float, default=0.7, help="rotation angle")
    ap.add_argument("--shear", type=float, default=1.5, help="fresnel B entry")
    args = ap.parse_args()

    grid = Grid.centered(args.samples, args.spacing)
    f = synthesize("chirp", grid, freq=1.2, rate=0.4)
    m = compose(preset("fresnel", 1, b=args.shear), preset("frft", 1, alpha=args.alpha))
    print(f"matrix blocks: a={m.a[0,0]:+.4f} b={m.b[0,0]:+.4f} "
          f"c={m.c[0,0]:+.4f} d={m.d[0,0]:+.4f} (det b = {m.det_b:+.4f})")

    spec = nslct_fast(f, m)
    energy_in = norm_l2(f) ** 2
    energy_out = float(np.sum(np.abs(spec.values) ** 2) * spec.wgrid.cell)
    print(f"energy in/out: {energy_in:.12f} / {energy_out:.12f}")

    back = nslct_inverse(spec, m)
    print(f"round-trip max error: {np.max(np.abs(back.values - f.values)):.3e}")

    window = synthesize("gaussian", grid, sigma=1.3)
    wspec = WindowSpec(window, stride=args.stride)
    gram = stnslct_gram(f, wspec, m)
    print(f"gram shape: {gram.values.shape}, sup slack: "
          f"{boundedness_margin(gram, f, wspec, m):.6f}")
    print(f"moyal energy: {moyal(gram, gram).real:.12f} "
          f"(target {energy_in * wspec.norm2:.12f})")

    rec = stnslct_reconstruct(gram, wspec, m)
    err = norm_l2(SampledSignal(grid, rec.values - f.values)) / norm_l2(f)
    print(f"windowed reconstruction relative error: {err:.3e}")

    print()
    print(f"{'report':<16s} {'lhs':>14s} {'rhs':>14s} {'margin':>12s}")
    for rep in (
        heisenberg_report(f, wspec, m, gram=gram),
        pitt_report(f, wspec, m, 0.5, gram=gram),
        lieb_report(f, wspec, m, 4.0, gram=gram),
        hausdorff_young_report(f, wspec, m, 1.5, gram=gram),
        log_report(f, wspec, m, gram=gram),
    ):
        status = "" if rep.passed() else "  <-- FAILED"
        print(f"{rep.name:<16s} {rep.lhs:>+14.6e} {rep.rhs:>+14.6e} "
              f"{rep.margin:>+12.3e}{status}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
