"""Particle paths in the wave frame for a vortex at one third and two thirds depth.

Writes one CSV per height with all paths, and prints how each seed ended:
closed orbits around the vortex form the critical layer, the rest flow
through.
"""
import json
import os

from _common import out_dir
from vortexwaves import cli


def main():
    out = out_dir(__doc__.splitlines()[0])
    for label, theta in (("third", 1 / 3), ("two_thirds", 2 / 3)):
        target = os.path.join(out, f"streamlines_{label}")
        code = cli.main(["streamlines", "--theta", repr(theta), "--out", target])
        if code:
            raise SystemExit(code)
        with open(os.path.join(target, "streamlines.json"), encoding="utf-8") as fh:
            meta = json.load(fh)
        print(f"theta = {theta:.4f}, c1 = {meta['c1']:+.5f}")
        for p in meta["paths"]:
            print(f"  start y = {p['start'][1]:+.3f}  {p['termination']:<12} drift = {p['stream_drift']:.1e}")


if __name__ == "__main__":
    main()
