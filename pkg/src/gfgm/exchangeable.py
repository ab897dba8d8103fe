"""Exchangeable dependence structures and their copulas.

An exchangeable Bernoulli vector is determined by the law of its count
N = I_1 + ... + I_d: every outcome of weight k carries mass q_k / C(d, k).
That O(d) representation is the primary object here; expansion to atom form
is lazy and gated, and association measures are computed by weight-class
summation so that large d never touches 2^d outcomes.

The module also covers the geometry of the exchangeable class for a fixed
margin p: its extremal count pmfs (two-point laws straddling pd, plus the
degenerate law when pd is an integer), the extreme negative dependence
member that minimizes the orthant association measures, and de Finetti
mixtures f(i) = int lambda^{|i|} (1-lambda)^{d-|i|} dF(lambda) driven by a
mixing variable on [0, 1] (given by moments or by a quadrature rule), with
the Beta family worked out explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import hypergeom

from .association import AssociationReport, _prefactor
from .bernoulli import (
    MAX_DENSE_DIMENSION,
    BernoulliPmf,
    InvalidDistributionError,
)
from .copula import GfgmCopula, _as_points, _pow_log

__all__ = [
    "ExchangeableCountPmf",
    "expand",
    "count_pmf_of",
    "comonotone_count_pmf",
    "extremal_count_pmfs",
    "end_count_pmf",
    "end_pmf",
    "MixtureSpec",
    "mixture_count_pmf",
    "mixture_copula_cdf",
    "beta_moments",
    "beta_mixture_copula",
    "measures_exchangeable",
    "parse_exchangeable_spec",
]

SUM_SLACK = 1e-9
MASS_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class ExchangeableCountPmf:
    """Law of the count N = I_1 + ... + I_d of an exchangeable vector.

    ``q[k] = Pr(N = k)`` for k = 0..d.  The common margin is p = E[N]/d and
    must lie strictly in (0, 1).
    """

    d: int
    q: np.ndarray

    def __post_init__(self):
        if self.d < 2:
            raise InvalidDistributionError("dimension must be >= 2")
        q = np.asarray(self.q, dtype=float)
        if q.shape != (self.d + 1,):
            raise InvalidDistributionError(f"count pmf needs d+1 = {self.d + 1} entries")
        if np.any(q < -MASS_ATOL):
            raise InvalidDistributionError("negative count mass")
        total = float(q.sum())
        if abs(total - 1.0) > SUM_SLACK:
            raise InvalidDistributionError(f"count masses sum to {total}, not 1")
        q = np.clip(q, 0.0, None) / total
        object.__setattr__(self, "q", q)
        if not MASS_ATOL < self.p < 1.0 - MASS_ATOL:
            raise InvalidDistributionError("margin p = E[N]/d must lie strictly in (0, 1)")

    @property
    def p(self) -> float:
        return float(np.arange(self.d + 1) @ self.q) / self.d

    @property
    def mean(self) -> float:
        return float(np.arange(self.d + 1) @ self.q)


def expand(cp: ExchangeableCountPmf) -> BernoulliPmf:
    """Atom-form pmf: every weight-k mask gets q_k / C(d, k)."""
    if cp.d > MAX_DENSE_DIMENSION:
        raise InvalidDistributionError(
            f"expansion enumerates 2^d outcomes; d <= {MAX_DENSE_DIMENSION} required"
        )
    all_masks = np.arange(1 << cp.d, dtype=np.int64)
    weights = np.bitwise_count(all_masks.astype(np.uint64)).astype(np.int64)
    binom = np.array([math.comb(cp.d, k) for k in range(cp.d + 1)], dtype=float)
    probs = cp.q[weights] / binom[weights]
    keep = probs > 0.0
    return BernoulliPmf(cp.d, all_masks[keep], probs[keep])


def count_pmf_of(pmf: BernoulliPmf, tol: float = 1e-12) -> ExchangeableCountPmf:
    """Recover the count pmf of an exchangeable atom-form pmf.

    Rejects pmfs whose mass is not constant across each weight class, i.e.
    pmfs that are not exchangeable.
    """
    weights = np.bitwise_count(pmf.masks.astype(np.uint64)).astype(np.int64)
    q = np.zeros(pmf.d + 1)
    for k in range(pmf.d + 1):
        sel = weights == k
        cnt = math.comb(pmf.d, k)
        if not np.any(sel):
            continue
        probs = pmf.probs[sel]
        if sel.sum() != cnt or probs.max() - probs.min() > tol:
            raise InvalidDistributionError("pmf is not exchangeable")
        q[k] = probs.sum()
    return ExchangeableCountPmf(pmf.d, q)


def comonotone_count_pmf(p: float, d: int) -> ExchangeableCountPmf:
    """Count pmf of the comonotone vector: all-zeros w.p. 1-p, all-ones w.p. p."""
    q = np.zeros(d + 1)
    q[0], q[d] = 1.0 - p, p
    return ExchangeableCountPmf(d, q)


def _split_pd(p: float, d: int) -> tuple[float, int | None]:
    """(pd, k) where k is the integer value of pd, or None when fractional."""
    pd = p * d
    k = round(pd)
    return pd, (k if abs(pd - k) <= 1e-9 else None)


def extremal_count_pmfs(p: float, d: int) -> list[ExchangeableCountPmf]:
    """Extremal points of the exchangeable class with margin p.

    Two-point laws on {j1, j2} with j1 < pd < j2 and masses
    (j2 - pd)/(j2 - j1) and (pd - j1)/(j2 - j1); when pd is an integer the
    degenerate law at pd joins the list.  Every count pmf with mean pd is a
    convex combination of these.
    """
    if not 0.0 < p < 1.0:
        raise InvalidDistributionError("p must lie in (0, 1)")
    d = int(d)
    pd, k = _split_pd(p, d)
    out: list[ExchangeableCountPmf] = []
    if k is not None:
        j1_max, j2_min = k - 1, k + 1
        mean = float(k)
    else:
        j1_max = int(np.floor(pd))
        j2_min = j1_max + 1
        mean = pd
    for j1 in range(0, j1_max + 1):
        for j2 in range(j2_min, d + 1):
            q = np.zeros(d + 1)
            q[j1] = (j2 - mean) / (j2 - j1)
            q[j2] = (mean - j1) / (j2 - j1)
            assert abs(q[j1] + q[j2] - 1.0) < 1e-12
            out.append(ExchangeableCountPmf(d, q))
    if k is not None:
        q = np.zeros(d + 1)
        q[k] = 1.0
        out.append(ExchangeableCountPmf(d, q))
    return out


def end_count_pmf(p: float, d: int) -> ExchangeableCountPmf:
    """Count pmf of the extreme negative dependence member.

    Concentrates the count on floor(pd) and ceil(pd) (degenerate at pd when
    integer): the least-spread count law with mean pd, and the supermodular
    lower bound of the exchangeable class.
    """
    if not 0.0 < p < 1.0:
        raise InvalidDistributionError("p must lie in (0, 1)")
    d = int(d)
    pd, k = _split_pd(p, d)
    q = np.zeros(d + 1)
    if k is not None:
        q[k] = 1.0
    else:
        j1 = int(np.floor(pd))
        q[j1] = j1 + 1 - pd
        q[j1 + 1] = pd - j1
    return ExchangeableCountPmf(d, q)


def end_pmf(p: float, d: int) -> BernoulliPmf:
    """Atom form of :func:`end_count_pmf` (uniform within each weight class)."""
    return expand(end_count_pmf(p, d))


# ---------------------------------------------------------------------------
# de Finetti mixtures
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MixtureSpec:
    """Mixing law on [0, 1], given by moments E[Lambda^k] or a quadrature rule."""

    moments: np.ndarray | None = None
    nodes: np.ndarray | None = None
    weights: np.ndarray | None = None

    def __post_init__(self):
        if (self.moments is None) == (self.nodes is None):
            raise InvalidDistributionError("give either moments or a quadrature rule")
        if self.moments is not None:
            m = np.asarray(self.moments, dtype=float)
            if m.ndim != 1 or m.size < 2:
                raise InvalidDistributionError("need moments E[L^k] for k = 0..K, K >= 1")
            if abs(m[0] - 1.0) > MASS_ATOL:
                raise InvalidDistributionError("zeroth moment must be 1")
            if np.any(m < -MASS_ATOL) or np.any(m > 1.0 + MASS_ATOL):
                raise InvalidDistributionError("moments of a [0,1] variable lie in [0,1]")
            object.__setattr__(self, "moments", m)
        else:
            nodes = np.asarray(self.nodes, dtype=float)
            weights = np.asarray(self.weights, dtype=float)
            if nodes.shape != weights.shape or nodes.ndim != 1:
                raise InvalidDistributionError("nodes and weights must be congruent 1-D")
            if np.any(nodes < 0.0) or np.any(nodes > 1.0):
                raise InvalidDistributionError("nodes must lie in [0, 1]")
            if np.any(weights < 0.0) or abs(weights.sum() - 1.0) > SUM_SLACK:
                raise InvalidDistributionError("weights must be a probability vector")
            object.__setattr__(self, "nodes", nodes)
            object.__setattr__(self, "weights", weights / weights.sum())

    @classmethod
    def from_moments(cls, moments) -> "MixtureSpec":
        return cls(moments=np.asarray(moments, dtype=float))

    @classmethod
    def from_quadrature(cls, nodes, weights) -> "MixtureSpec":
        return cls(nodes=np.asarray(nodes, float), weights=np.asarray(weights, float))

    @classmethod
    def degenerate(cls, lam: float, order: int) -> "MixtureSpec":
        return cls.from_moments([float(lam) ** k for k in range(order + 1)])

    @classmethod
    def beta(cls, alpha: float, beta: float, order: int) -> "MixtureSpec":
        return cls.from_moments(beta_moments(alpha, beta, order))

    @property
    def max_order(self) -> int:
        return self.moments.size - 1 if self.moments is not None else np.iinfo(np.int64).max

    def moment(self, k: int) -> float:
        if self.moments is not None:
            if k >= self.moments.size:
                raise InvalidDistributionError(f"moment of order {k} not supplied")
            return float(self.moments[k])
        return float(self.weights @ self.nodes**k)


def beta_moments(alpha: float, beta: float, order: int) -> np.ndarray:
    """E[Lambda^k] for Lambda ~ Beta(alpha, beta), k = 0..order."""
    if alpha <= 0 or beta <= 0:
        raise InvalidDistributionError("Beta parameters must be positive")
    m = np.ones(order + 1)
    for k in range(1, order + 1):
        m[k] = m[k - 1] * (alpha + k - 1) / (alpha + beta + k - 1)
    return m


def mixture_count_pmf(spec: MixtureSpec, d: int) -> ExchangeableCountPmf:
    """Count pmf q_k = C(d,k) int lambda^k (1-lambda)^{d-k} dF(lambda).

    The moment route expands the (1-lambda) power binomially; an invalid
    (non-Hausdorff) moment sequence shows up as genuinely negative mass and
    is rejected, while round-off-level negatives are clipped.
    """
    d = int(d)
    q = np.zeros(d + 1)
    if spec.nodes is not None:
        for k in range(d + 1):
            q[k] = math.comb(d, k) * float(
                spec.weights @ (spec.nodes**k * (1.0 - spec.nodes) ** (d - k))
            )
    else:
        for k in range(d + 1):
            terms = [
                (-1.0) ** r * math.comb(d - k, r) * spec.moment(k + r)
                for r in range(d - k + 1)
            ]
            q[k] = math.comb(d, k) * math.fsum(terms)
    if np.any(q < -MASS_ATOL):
        raise InvalidDistributionError("moment sequence yields negative count mass")
    return ExchangeableCountPmf(d, q)


def mixture_copula_cdf(spec: MixtureSpec, d: int, u):
    """Mixture-copula cdf evaluated through the moments of the mixing law.

    Expands prod_m (x_m - (Lambda/p)(x_m - u_m)), x_m = u_m^{1/(1-p)}, as a
    polynomial in Lambda and contracts it with E[Lambda^k]; equals the cdf of
    the expanded exchangeable copula.
    """
    d = int(d)
    p = spec.moment(1)
    if not 0.0 < p < 1.0:
        raise InvalidDistributionError("mixture mean E[Lambda] must lie in (0, 1)")
    pts, single = _as_points(u, d)
    x = _pow_log(pts, 1.0 / (1.0 - p))
    y = (x - pts) / p
    n = pts.shape[0]
    poly = np.zeros((n, d + 1))
    poly[:, 0] = 1.0
    for m in range(d):
        upper = poly[:, : m + 1].copy()
        poly[:, : m + 1] *= x[:, m : m + 1]
        poly[:, 1 : m + 2] -= upper * y[:, m : m + 1]
    mom = np.array([spec.moment(k) for k in range(d + 1)])
    out = poly @ mom
    return float(out[0]) if single else out


def beta_mixture_copula(alpha: float, beta: float, d: int) -> GfgmCopula:
    """Exchangeable copula mixed by Beta(alpha, beta); margin alpha/(alpha+beta)."""
    spec = MixtureSpec.beta(alpha, beta, int(d))
    return GfgmCopula.from_pmf(expand(mixture_count_pmf(spec, int(d))))


# ---------------------------------------------------------------------------
# Weight-class association measures (no 2^d expansion)
# ---------------------------------------------------------------------------

def _weight_class_expectation(cp: ExchangeableCountPmf, g0: float, g1: float) -> float:
    """E[prod_m g(I_m)] = sum_k q_k g1^k g0^{d-k} for an exchangeable vector."""
    k = np.arange(cp.d + 1)
    return float(cp.q @ (g1**k * g0 ** (cp.d - k)))


def measures_exchangeable(cp: ExchangeableCountPmf) -> AssociationReport:
    """Closed-form measures from the count pmf alone.

    The orthant measures cost O(d); tau groups outcome pairs by the overlap
    of their supports, whose law is hypergeometric, for an O(d^3) total.
    Matches the generic atom-form computation wherever both are feasible.
    """
    d, p = cp.d, cp.p
    pref = _prefactor(d)
    lo = pref * (
        _weight_class_expectation(cp, 2.0 * (1.0 - p) / (2.0 - p), (3.0 - 2.0 * p) / (2.0 - p))
        - 1.0
    )
    up = pref * (_weight_class_expectation(cp, 2.0 / (2.0 - p), 1.0 / (2.0 - p)) - 1.0)
    g00 = 0.5
    g11 = 0.5
    g10 = (3.0 - p) / (2.0 * (2.0 - p))
    g01 = (1.0 - p) / (2.0 * (2.0 - p))
    total = 0.0
    support = [k for k in range(d + 1) if cp.q[k] > 0.0]
    for k in support:
        for length in support:
            t = np.arange(max(0, k + length - d), min(k, length) + 1)
            overlap_law = hypergeom.pmf(t, d, k, length)
            vals = (
                g11**t
                * g10 ** (k - t)
                * g01 ** (length - t)
                * g00 ** (d - k - length + t)
            )
            total += float(cp.q[k] * cp.q[length]) * float(overlap_law @ vals)
    t_val = (2.0**d * total - 1.0) / (2.0 ** (d - 1) - 1.0)
    return AssociationReport(lo, up, 0.5 * (lo + up), t_val, d, "closed_form")


# ---------------------------------------------------------------------------
# Spec strings used by the command-line front end
# ---------------------------------------------------------------------------

def parse_exchangeable_spec(text: str, d: int | None = None) -> ExchangeableCountPmf:
    """Build a count pmf from a compact string.

    Forms: ``counts:q0,q1,...,qd`` | ``end:p`` | ``comonotone:p`` |
    ``beta:alpha,beta``.  All but ``counts`` require the dimension.
    """
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind == "counts":
        q = np.array([float(s) for s in arg.split(",")])
        cp = ExchangeableCountPmf(q.size - 1, q)
        if d is not None and cp.d != d:
            raise InvalidDistributionError(f"counts imply d={cp.d}, but d={d} given")
        return cp
    if d is None:
        raise InvalidDistributionError(f"exchangeable spec {kind!r} needs the dimension d")
    if kind == "end":
        return end_count_pmf(float(arg), d)
    if kind == "comonotone":
        return comonotone_count_pmf(float(arg), d)
    if kind == "beta":
        alpha_s, beta_s = arg.split(",")
        return mixture_count_pmf(
            MixtureSpec.beta(float(alpha_s), float(beta_s), d), d
        )
    raise InvalidDistributionError(f"unknown exchangeable spec kind {kind!r}")
