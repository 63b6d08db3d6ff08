"""Leading-order surface profiles for a range of vortex heights.

Uses h = 1, g = 1/8 and alpha^2 = 1/(8 pi^2), so m = 1.  Lower-half vortices
give a single trough; above mid-depth a pair of side crests appears and
moves towards the vortex as it rises.
"""
import math
import os

import numpy as np

from _common import out_dir, write_rows
from vortexwaves import surface_profile as sp
from vortexwaves.cli import shape_summary
from vortexwaves.stream_core import PhysicalParams

THETAS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


def main():
    out = out_dir(__doc__.splitlines()[0])
    params = PhysicalParams(g=1 / 8, alpha2=1 / (8 * math.pi**2), h=1.0)
    xs = np.linspace(-10, 10, 801)
    cols, rows = [], []
    for theta in THETAS:
        spec = sp.ProfileSpec.single(theta, params)
        vals = np.asarray(sp.eta2_grid(spec, xs))
        cols.append(vals)
        s = shape_summary(xs, vals)
        crest = s["side_crests_x"][0] if s["side_crests_x"] else float("nan")
        rows.append((theta, s["eta2_at_0"], s["n_side_crests"], crest, s["max_value"]))
        print(f"theta={theta:.1f}  eta2(0)={s['eta2_at_0']:+.5f}  side crests={s['n_side_crests']}"
              f"  crest x={crest:.2f}")
    write_rows(os.path.join(out, "profile_family.csv"), ["x", *[f"theta_{t}" for t in THETAS]],
               zip(xs, *cols))
    write_rows(os.path.join(out, "profile_family_shape.csv"),
               ["theta", "eta2_at_0", "n_side_crests", "crest_x", "max_value"], rows)


if __name__ == "__main__":
    main()
