"""Schmidt number versus emission angle (fig4 preset) at several cloud lengths."""
import argparse
import dataclasses

from biphoton.config import load_config
from biphoton.geometry import symmetric_cloud_length
from biphoton.sweeps import SweepSpec, emit_csv, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prefix", default="schmidt_vs_angle")
    ap.add_argument("--lengths", default="100,200,400,1000", help="um")
    args = ap.parse_args()
    base = load_config("fig4")
    print(f"L* = {symmetric_cloud_length(base.R, base.w0):.6f} um")
    for L in (float(x) for x in args.lengths.split(",")):
        rows = run_sweep(SweepSpec("angle", 0.0, 90.0, 91, dataclasses.replace(base, L=L),
                                   outputs={"schmidt"}))
        out = f"{args.prefix}_L{L:g}um.csv"
        emit_csv(rows, out)
        print(f"{out}: K(0)={rows[0].K:.4f} K(90)={rows[-1].K:.4f}")


if __name__ == "__main__":
    main()
