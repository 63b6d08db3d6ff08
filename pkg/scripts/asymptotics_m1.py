"""How fast the far-field law is reached when m = 1.

For m = 1 the leading term is constant * t * exp(-t) with t = pi x / h, and
the plain exp(-t) term makes the ratio to it approach 1 only like 1/t.  The
script prints that ratio and (ratio - 1) * t, which settles to a constant.
"""
import math
import os

from _common import out_dir, write_rows
from vortexwaves import surface_profile as sp
from vortexwaves.stream_core import PhysicalParams


def main():
    out = out_dir(__doc__.splitlines()[0])
    rows = []
    for theta in (0.25, 1 / 3, 0.75):
        spec = sp.ProfileSpec.single(theta, PhysicalParams.from_m(1.0, h=1.0))
        a = sp.asymptotic_constant(spec)
        for x in (6.0, 12.0, 24.0, 48.0):
            ratio = sp.eta2_series(spec, x) / a.envelope(x)
            rows.append((theta, x, ratio, (ratio - 1) * math.pi * x))
            print(f"theta={theta:.3f} x={x:4.0f}  ratio={ratio:.6f}  (ratio-1)*t={rows[-1][3]:+.4f}")
    write_rows(os.path.join(out, "asymptotics_m1.csv"), ["theta", "x", "ratio", "scaled_gap"], rows)


if __name__ == "__main__":
    main()
