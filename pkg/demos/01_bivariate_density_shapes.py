"""Shape of the bivariate density across the (p1, p2) grid.

The margins' shape vector (p1, p2) steers where the dependence mass sits:
at maximal dependence, small p pushes mass toward the lower-left corner of
the unit square and large p toward the upper-right, while p = 1/2 recovers
the symmetric FGM density.  This script tabulates corner masses for the
nine (p1, p2) combinations in {0.3, 0.5, 0.7}^2 at both dependence
extremes, writes each density grid to CSV, and renders PNG heatmaps when
matplotlib is available.

Run:  python demos/01_bivariate_density_shapes.py [outdir]
"""

import os
import sys

import numpy as np

from gfgm import GfgmCopula, cdf, pdf, theta_bounds

OUTDIR = sys.argv[1] if len(sys.argv) > 1 else "demo_output"
P_GRID = (0.3, 0.5, 0.7)
RESOLUTION = 101


def density_grid(copula, resolution=RESOLUTION):
    axis = (np.arange(resolution) + 0.5) / resolution
    uu, vv = np.meshgrid(axis, axis, indexing="ij")
    pts = np.column_stack([uu.ravel(), vv.ravel()])
    return axis, pdf(copula, pts).reshape(resolution, resolution)


def corner_masses(copula, side=0.25):
    lower = cdf(copula, [side, side])
    upper = 1 - 2 * (1 - side) + cdf(copula, [1 - side, 1 - side])
    return lower, upper


def main():
    os.makedirs(OUTDIR, exist_ok=True)
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        plt = None

    print("corner masses P(U,V <= 1/4) vs P(U,V > 3/4) at the dependence extremes")
    print(f"{'p1':>4} {'p2':>4} | {'max: lower':>11} {'upper':>8} | {'min: lower':>11} {'upper':>8}")
    for p1 in P_GRID:
        for p2 in P_GRID:
            lo_t, hi_t = theta_bounds(p1, p2)
            strongest = GfgmCopula.bivariate(p1, p2, hi_t)
            weakest = GfgmCopula.bivariate(p1, p2, lo_t)
            max_lo, max_up = corner_masses(strongest)
            min_lo, min_up = corner_masses(weakest)
            print(
                f"{p1:>4.1f} {p2:>4.1f} | {max_lo:>11.4f} {max_up:>8.4f}"
                f" | {min_lo:>11.4f} {min_up:>8.4f}"
            )
            for tag, cop in (("max", strongest), ("min", weakest)):
                axis, grid = density_grid(cop)
                path = os.path.join(OUTDIR, f"density_{tag}_p{p1:.1f}_{p2:.1f}.csv")
                with open(path, "w") as fh:
                    fh.write("u,v,density\n")
                    for i, u in enumerate(axis):
                        for j, v in enumerate(axis):
                            fh.write(f"{u:.6f},{v:.6f},{grid[i, j]:.10g}\n")
    print(f"\ndensity grids written under {OUTDIR}/")

    if plt is None:
        print("matplotlib not available; skipping PNG heatmaps")
        return
    for tag in ("max", "min"):
        fig, axes = plt.subplots(3, 3, figsize=(9, 9), constrained_layout=True)
        for i, p1 in enumerate(P_GRID):
            for j, p2 in enumerate(P_GRID):
                lo_t, hi_t = theta_bounds(p1, p2)
                cop = GfgmCopula.bivariate(p1, p2, hi_t if tag == "max" else lo_t)
                _, grid = density_grid(cop)
                ax = axes[i][j]
                ax.imshow(grid.T, origin="lower", extent=(0, 1, 0, 1), cmap="viridis")
                ax.set_title(f"p1={p1}, p2={p2}", fontsize=9)
                ax.set_xticks([])
                ax.set_yticks([])
        fig.suptitle(f"{'maximal' if tag == 'max' else 'minimal'} dependence densities")
        path = os.path.join(OUTDIR, f"density_heatmaps_{tag}.png")
        fig.savefig(path, dpi=130)
        plt.close(fig)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
