#!/usr/bin/env python3
"""3D boundary surfaces of the three special-point families.

Four parameter volumes, each with one parameter held fixed; the sweep emits
the reversal (level-dependent), gapped-reversal and super-invariant surfaces
sampled over the remaining two axes (no volumetric tables by default).
"""

import argparse
from pathlib import Path

from nhjc import Axis, LevelIndex, ModelParams, SweepSpec, coupling_scale, run_sweep

VOLUMES = {
    # solved axis first, then the two sampled axes; one parameter pinned
    "kappa_Gamma_gamma": (("kappa", 0.0, 1.2), ("Gamma", 0.001, 0.3), ("gamma", 0.0, 1.2), {}),
    "Gamma_g_kappa": (("Gamma", 0.0, 0.3), ("g", 0.005, 0.2), ("kappa", 0.0, 1.2), {"gamma": 0.3}),
    "Gamma_g_gamma": (("Gamma", 0.0, 0.3), ("g", 0.005, 0.2), ("gamma", 0.0, 1.2), {"kappa": 0.5}),
    "gamma_g_kappa": (("gamma", 0.0, 1.2), ("g", 0.005, 0.2), ("kappa", 0.0, 1.2), {"Gamma": 0.1}),
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="data", help="output directory")
    parser.add_argument("--n", type=int, default=1)
    parser.add_argument("--samples", type=int, default=41, help="points per sampled axis")
    args = parser.parse_args()

    g_scale = coupling_scale(0.9, 1.0)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, (solve, sample_a, sample_b, pinned) in VOLUMES.items():
        base = ModelParams(omega=0.9, Omega=1.0, g=0.1 * g_scale, kappa=0.5,
                           gamma=0.2, Gamma=0.05)
        for key, value in pinned.items():
            base = base.with_value(key, value)
        spec = SweepSpec(
            base=base,
            axes=(
                Axis(solve[0], solve[1], solve[2], args.samples),
                Axis(sample_a[0], sample_a[1], sample_a[2], args.samples),
                Axis(sample_b[0], sample_b[1], sample_b[2], args.samples),
            ),
            levels=(LevelIndex(args.n, -1),),
            observables=("thetaT",),
            overlays=("R", "GR", "SI"),
        )
        out = out_dir / f"surfaces_{name}.csv"
        run_sweep(spec).to_csv(out)
        print(f"wrote {out}.overlay.{{R,GR,SI}}.csv")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
