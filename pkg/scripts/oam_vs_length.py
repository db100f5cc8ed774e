"""P(0) versus cloud length at a few emission angles (fig3 preset), one CSV per angle."""
import argparse
import dataclasses
import math

from biphoton.config import load_config
from biphoton.sweeps import SweepSpec, emit_csv, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prefix", default="oam_vs_length")
    ap.add_argument("--angles", default="0,30,60,90", help="degrees")
    ap.add_argument("--steps", type=int, default=200)
    args = ap.parse_args()
    base = load_config("fig3")
    for deg in (float(a) for a in args.angles.split(",")):
        cfg = dataclasses.replace(base, phi=math.radians(deg))
        rows = run_sweep(SweepSpec("length", 10.0, 20_000.0, args.steps, cfg, outputs={"oam_p0"}))
        out = f"{args.prefix}_{deg:g}deg.csv"
        emit_csv(rows, out)
        print(f"{out}: P0 from {rows[0].P0:.4f} to {rows[-1].P0:.4f}")


if __name__ == "__main__":
    main()
