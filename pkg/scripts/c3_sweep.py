"""Third-order speed correction c3 as the vortex height varies.

c3 is negative throughout the lower half of the layer; the script also
reports c1 so the sign of the total speed c1 eps + c3 eps^3 can be read off.
"""
import math
import os

import numpy as np

from _common import out_dir, write_rows
from vortexwaves import bifurcation as bf
from vortexwaves import stream_core as sc
from vortexwaves import surface_profile as sp
from vortexwaves.stream_core import PhysicalParams


def main():
    out = out_dir(__doc__.splitlines()[0])
    params = PhysicalParams(g=1 / 8, alpha2=1 / (8 * math.pi**2), h=1.0)
    rows = []
    for theta in np.round(np.linspace(0.05, 0.85, 17), 4):
        spec = sp.ProfileSpec.single(float(theta), params)
        c3 = bf.c3(spec)
        rows.append((float(theta), sc.c1(params, float(theta)), c3))
        print(f"theta={theta:.2f}  c1={rows[-1][1]:+.6f}  c3={c3:+.6f}")
    write_rows(os.path.join(out, "c3_sweep.csv"), ["theta", "c1", "c3"], rows)


if __name__ == "__main__":
    main()
