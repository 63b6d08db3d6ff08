"""Where the two-vortex interaction matrix is singular.

Sweeps det(Theta) over theta2 < theta1 and compares each grid sign change
with the closed-form zero curve theta2_hat(theta1).
"""
import math
import os

import numpy as np

from _common import out_dir, write_rows
from vortexwaves import theta_matrix as tm


def main():
    out = out_dir(__doc__.splitlines()[0])
    t1s = np.linspace(0.51, 0.99, 49)
    rows = []
    for t1 in t1s:
        closed = tm.theta2_hat(float(t1))
        numeric = tm.theta2_hat_numeric(float(t1))
        rows.append((float(t1), closed, numeric, abs(closed - numeric)))
    write_rows(os.path.join(out, "theta2_hat.csv"), ["theta1", "theta2_closed", "theta2_numeric", "abs_diff"], rows)
    print(f"max |closed - numeric| = {max(r[3] for r in rows):.2e}")
    ts = np.linspace(math.pi / 4, 3 * math.pi / 4, 201)[1:-1]
    curve = [(float(t), *tm.zero_curve_point(float(t))) for t in ts]
    write_rows(os.path.join(out, "zero_curve.csv"), ["t", "theta1", "theta2"], curve)
    worst = max(abs(tm.two_vortex_det(a, b, 1.0)) for _, a, b in curve)
    print(f"max |det| along the parametrized curve = {worst:.2e}")


if __name__ == "__main__":
    main()
