"""Geometry of the exchangeable subfamily.

For fixed margin p, exchangeable dependence structures live in the simplex
of count pmfs with mean pd.  Its extremal points are two-point laws
straddling pd; every member is a convex mixture of them, and the extreme
negative dependence (END) member -- the count law squeezed onto
{floor(pd), ceil(pd)} -- minimizes the orthant association measures.  This
script enumerates the extremal points, reconstructs a random member as a
mixture, and verifies the END <= random <= comonotone sandwich.

Run:  python demos/04_exchangeable_geometry.py
"""

import numpy as np
from scipy.optimize import linprog

from gfgm import (
    ExchangeableCountPmf,
    GfgmCopula,
    comonotone_count_pmf,
    end_count_pmf,
    expand,
    extremal_count_pmfs,
    measures_exchangeable,
)

D = 5
P = 0.47


def main():
    rng = np.random.default_rng(11)

    extremals = extremal_count_pmfs(P, D)
    print(f"extremal count pmfs for p={P}, d={D} (mean pd = {P * D}):")
    for cp in extremals:
        support = np.nonzero(cp.q)[0]
        desc = ", ".join(f"q[{k}]={cp.q[k]:.4f}" for k in support)
        print(f"  support {tuple(int(k) for k in support)}: {desc}")

    # reconstruct a random member as a convex combination
    q = rng.dirichlet(np.ones(D + 1))
    target = ExchangeableCountPmf(D, q)
    basis = np.stack([cp.q for cp in extremal_count_pmfs(target.p, D)], axis=1)
    res = linprog(
        c=np.zeros(basis.shape[1]),
        A_eq=np.vstack([basis, np.ones((1, basis.shape[1]))]),
        b_eq=np.concatenate([target.q, [1.0]]),
        bounds=[(0, None)] * basis.shape[1],
        method="highs",
    )
    resid = np.max(np.abs(basis @ res.x - target.q))
    print(f"\nrandom member (p = {target.p:.4f}) reconstructed as a mixture:")
    print(f"  {int(np.sum(res.x > 1e-12))} active extremal points, residual {resid:.2e}")

    end = end_count_pmf(target.p, D)
    como = comonotone_count_pmf(target.p, D)
    print("\nsandwich of association measures (END <= member <= comonotone):")
    print(f"{'':>8} {'END':>9} {'member':>9} {'comonotone':>11}")
    reports = [measures_exchangeable(cp) for cp in (end, target, como)]
    for name in ("rho_cL", "rho_cU", "rho_c", "tau"):
        vals = [getattr(r, name) for r in reports]
        print(f"  {name:>6} {vals[0]:>9.5f} {vals[1]:>9.5f} {vals[2]:>11.5f}")

    # count-pmf measures never expand to 2^d; d in the hundreds is fine
    big = measures_exchangeable(end_count_pmf(0.37, 300))
    print(f"\nEND measures at d = 300 via weight classes: rho_cL = {big.rho_cL:.3e}")

    # the same objects are full copulas once expanded (small d)
    c_end = GfgmCopula.from_pmf(expand(end))
    print(f"END copula cdf at (0.5,...,0.5): {c_end.cdf([0.5] * D):.6f}")


if __name__ == "__main__":
    main()
