"""Periodic waves on deep water: c1 and the surface profile as the period grows.

For large L the self-induced speed approaches -1/(4 pi) with an O(1/L^2)
gap, and the profile near the vortex column flattens into the solitary
shape.
"""
import math
import os

import numpy as np

from _common import out_dir, write_rows
from vortexwaves import periodic_deep as pd


def main():
    out = out_dir(__doc__.splitlines()[0])
    rows = []
    for L in (0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0):
        pp = pd.PeriodicParams(L, 1.0, 0.01)
        c1 = pd.c1_periodic(pp)
        N = pd.default_n(pp)
        xs = np.linspace(-math.pi * L, math.pi * L, 401)
        eta = pd.eta_star(pp, xs, N)
        rows.append((L, c1, abs(c1 + 1 / (4 * math.pi)) * L * L, N, float(eta[200]), float(np.max(eta))))
        print(f"L={L:<6g} c1={c1:+.8f}  L^2 gap={rows[-1][2]:.5f}  N={N}  trough={rows[-1][4]:+.3e}")
        write_rows(os.path.join(out, f"eta_star_L{L:g}.csv"), ["x", "eta_star"], zip(xs, eta))
    write_rows(os.path.join(out, "periodic_L_sweep.csv"),
               ["L", "c1", "scaled_gap", "N", "eta_star_at_0", "eta_star_max"], rows)


if __name__ == "__main__":
    main()
