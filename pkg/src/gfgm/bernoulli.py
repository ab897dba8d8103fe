"""Multivariate Bernoulli distributions over {0,1}^d.

This module is the dependence engine of the package: every copula in the
family is driven by the law of a d-variate Bernoulli vector I with margins
p_j = Pr(I_j = 1) strictly inside (0, 1).

Outcomes are encoded as integer bit masks.  Component j (0-based) of an
outcome is bit j of the mask, ``(mask >> j) & 1``.  In the text format the
outcome is written as a bit string whose *leftmost* character is component 0,
so ``"01"`` means (i_1, i_2) = (0, 1) and corresponds to mask 2.

Probability mass functions are stored sparsely as (mask, probability) atoms;
the dimension is capped at 63 so that masks fit in a machine integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

MAX_DIMENSION = 63
#: Dense 2^d tables (moments, expansions) are only built up to this dimension.
MAX_DENSE_DIMENSION = 20
PROB_ATOL = 1e-12
SUM_SLACK = 1e-9


class InvalidDistributionError(ValueError):
    """Raised when a pmf, moment sequence or parameter set is inadmissible."""


def _popcount(masks):
    return np.bitwise_count(np.asarray(masks, dtype=np.uint64)).astype(np.int64)


def mask_to_bitstring(mask: int, d: int) -> str:
    """Render an outcome mask as a bit string, component 0 leftmost."""
    return "".join("1" if (mask >> j) & 1 else "0" for j in range(d))


def bitstring_to_mask(s: str) -> int:
    """Parse a bit string (component 0 leftmost) into an outcome mask."""
    if not s or any(ch not in "01" for ch in s):
        raise InvalidDistributionError(f"not a bit string: {s!r}")
    return sum(1 << j for j, ch in enumerate(s) if ch == "1")


def validate_margins(p) -> np.ndarray:
    """Check that a margin vector lies strictly inside (0, 1)^d, d >= 2."""
    p = np.atleast_1d(np.asarray(p, dtype=float))
    if p.ndim != 1 or p.size < 2:
        raise InvalidDistributionError("margin vector must be 1-D with d >= 2")
    if p.size > MAX_DIMENSION:
        raise InvalidDistributionError(f"dimension {p.size} exceeds cap {MAX_DIMENSION}")
    if not np.all((p > 0.0) & (p < 1.0)):
        raise InvalidDistributionError("margins must lie strictly in (0, 1)")
    return p


@dataclass(frozen=True, eq=False)
class BernoulliPmf:
    """Sparse pmf of a d-variate Bernoulli vector.

    Parameters
    ----------
    d : int
        Dimension, 2 <= d <= 63.
    masks : ndarray of int64
        Outcome masks with positive probability, strictly increasing.
    probs : ndarray of float64
        Probabilities of the atoms; nonnegative, summing to 1.

    Construction normalizes probability sums that are within 1e-9 of 1 and
    rejects anything further off.  Margins of exactly 0 or 1 are rejected:
    the copula exponents 1/(1-p) and p/(1-p) degenerate there.
    """

    d: int
    masks: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        if not 2 <= self.d <= MAX_DIMENSION:
            raise InvalidDistributionError(f"dimension must be in [2, {MAX_DIMENSION}]")
        masks = np.asarray(self.masks, dtype=np.int64)
        probs = np.asarray(self.probs, dtype=float)
        if masks.ndim != 1 or masks.shape != probs.shape:
            raise InvalidDistributionError("masks and probs must be 1-D and congruent")
        if masks.size == 0:
            raise InvalidDistributionError("pmf needs at least one atom")
        if np.any(masks < 0) or np.any(masks >= (1 << self.d)):
            raise InvalidDistributionError("outcome mask out of range for dimension")
        if np.unique(masks).size != masks.size:
            raise InvalidDistributionError("duplicate outcome masks")
        if np.any(probs < -PROB_ATOL):
            raise InvalidDistributionError("negative probability")
        total = float(probs.sum())
        if abs(total - 1.0) > SUM_SLACK:
            raise InvalidDistributionError(f"probabilities sum to {total}, not 1")
        probs = np.clip(probs, 0.0, None) / total
        keep = probs > 0.0
        masks, probs = masks[keep], probs[keep]
        order = np.argsort(masks)
        object.__setattr__(self, "masks", masks[order])
        object.__setattr__(self, "probs", probs[order])
        m = marginals(self)
        if np.any(m <= PROB_ATOL) or np.any(m >= 1.0 - PROB_ATOL):
            raise InvalidDistributionError("derived margins must lie strictly in (0, 1)")

    @classmethod
    def from_dict(cls, d: int, atoms: Mapping[int, float]) -> "BernoulliPmf":
        masks = np.fromiter(atoms.keys(), dtype=np.int64, count=len(atoms))
        probs = np.fromiter(atoms.values(), dtype=float, count=len(atoms))
        return cls(d, masks, probs)

    @classmethod
    def from_bitstrings(cls, atoms: Mapping[str, float]) -> "BernoulliPmf":
        lengths = {len(s) for s in atoms}
        if len(lengths) != 1:
            raise InvalidDistributionError("bit strings must share one length")
        d = lengths.pop()
        return cls.from_dict(d, {bitstring_to_mask(s): q for s, q in atoms.items()})

    @cached_property
    def bits(self) -> np.ndarray:
        """(n_atoms, d) 0/1 array; column j is component j of each outcome."""
        return ((self.masks[:, None] >> np.arange(self.d)[None, :]) & 1).astype(float)

    @property
    def n_atoms(self) -> int:
        return self.masks.size

    def prob(self, mask: int) -> float:
        i = np.searchsorted(self.masks, mask)
        if i < self.masks.size and self.masks[i] == mask:
            return float(self.probs[i])
        return 0.0

    def as_dict(self) -> dict[int, float]:
        return {int(m): float(q) for m, q in zip(self.masks, self.probs)}

    def expectation_of_products(self, g0, g1) -> float:
        """E[prod_j g(j, I_j)] where g(j, 0) = g0[j] and g(j, 1) = g1[j]."""
        g0 = np.broadcast_to(np.asarray(g0, dtype=float), (self.d,))
        g1 = np.broadcast_to(np.asarray(g1, dtype=float), (self.d,))
        factors = np.where(self.bits > 0.5, g1[None, :], g0[None, :])
        return float(self.probs @ factors.prod(axis=1))

    def __repr__(self):
        atoms = ", ".join(
            f"{mask_to_bitstring(int(m), self.d)}:{q:.6g}"
            for m, q in zip(self.masks, self.probs)
        )
        return f"BernoulliPmf(d={self.d}, {{{atoms}}})"


def marginals(pmf: BernoulliPmf) -> np.ndarray:
    """Margins p_j = Pr(I_j = 1), by direct summation over atoms."""
    out = np.zeros(pmf.d)
    for j in range(pmf.d):
        sel = (pmf.masks >> j) & 1 == 1
        out[j] = pmf.probs[sel].sum()
    return out


def independent(p) -> BernoulliPmf:
    """Product pmf with the given margins (dense over 2^d outcomes)."""
    p = validate_margins(p)
    d = p.size
    if d > MAX_DENSE_DIMENSION:
        raise InvalidDistributionError(
            f"independent pmf is dense; d <= {MAX_DENSE_DIMENSION} required"
        )
    probs = np.ones(1)
    for pj in p:
        probs = np.concatenate([probs * (1.0 - pj), probs * pj])
    return BernoulliPmf(d, np.arange(1 << d, dtype=np.int64), probs)


def comonotonic(p) -> BernoulliPmf:
    """Most positively dependent pmf with margins p.

    Realizes (F^{-1}_{I_1}(V), ..., F^{-1}_{I_d}(V)) for a single uniform V:
    component j switches on once V exceeds 1 - p_j, so the support is a
    nested chain of masks.  Ties among thresholds are merged; the scan is a
    stable sort by component index.
    """
    p = validate_margins(p)
    thresholds = 1.0 - p
    order = np.argsort(thresholds, kind="stable")
    atoms: dict[int, float] = {}
    mask = 0
    prev = 0.0
    for j in order:
        t = float(thresholds[j])
        if t > prev:
            atoms[mask] = atoms.get(mask, 0.0) + (t - prev)
            prev = t
        mask |= 1 << int(j)
    atoms[mask] = atoms.get(mask, 0.0) + (1.0 - prev)
    return BernoulliPmf.from_dict(p.size, atoms)


def complemented(pmf: BernoulliPmf) -> BernoulliPmf:
    """Pmf of the flipped vector 1 - I (margins become 1 - p)."""
    full = np.int64((1 << pmf.d) - 1)
    return BernoulliPmf(pmf.d, full ^ pmf.masks, pmf.probs.copy())


def theta_bounds(p1: float, p2: float) -> tuple[float, float]:
    """Admissible dependence-parameter interval for the bivariate pmf."""
    validate_margins([p1, p2])
    lo = -min(1.0, (1.0 - p1) * (1.0 - p2) / (p1 * p2))
    hi = min((1.0 - p1) / p1, (1.0 - p2) / p2)
    return lo, hi


def from_theta_bivariate(p1: float, p2: float, theta: float) -> BernoulliPmf:
    """Bivariate pmf with margins (p1, p2) and dependence parameter theta.

    The four cells are linear in theta; theta = 0 is independence and the
    interval endpoints are the Frechet-Hoeffding lower and upper bounds.
    """
    lo, hi = theta_bounds(p1, p2)
    if not lo - 1e-12 <= theta <= hi + 1e-12:
        raise InvalidDistributionError(
            f"theta={theta} outside admissible interval [{lo}, {hi}] "
            f"for margins ({p1}, {p2})"
        )
    c = p1 * p2 * theta
    atoms = {
        0b00: (1.0 - p1) * (1.0 - p2) + c,
        0b10: (1.0 - p1) * p2 - c,  # (i_1, i_2) = (0, 1)
        0b01: p1 * (1.0 - p2) - c,  # (i_1, i_2) = (1, 0)
        0b11: p1 * p2 + c,
    }
    return BernoulliPmf.from_dict(2, atoms)


def countermonotonic_bivariate(p1: float, p2: float) -> BernoulliPmf:
    """Frechet lower bound pmf for the pair, theta at its lower endpoint."""
    lo, _ = theta_bounds(p1, p2)
    return from_theta_bivariate(p1, p2, lo)


def theta_of(pmf: BernoulliPmf) -> float:
    """Dependence parameter E[(I_1 - p_1)(I_2 - p_2)] / (p_1 p_2) of a bivariate pmf."""
    if pmf.d != 2:
        raise InvalidDistributionError("theta is defined for d = 2 only")
    p1, p2 = marginals(pmf)
    return (pmf.prob(0b11) - p1 * p2) / (p1 * p2)


def nu_coefficient(pmf: BernoulliPmf, subset: Iterable[int]) -> float:
    """Centered product moment E[prod_{j in S} (I_j - p_j)/p_j].

    Singletons are 0 by centering; on the independence pmf every subset of
    size >= 2 vanishes.  Components are 0-based.
    """
    idx = sorted(set(int(j) for j in subset))
    if not idx:
        raise InvalidDistributionError("subset must be nonempty")
    if idx[0] < 0 or idx[-1] >= pmf.d:
        raise InvalidDistributionError("subset index out of range")
    p = marginals(pmf)
    acc = pmf.probs.copy()
    for j in idx:
        acc = acc * (pmf.bits[:, j] - p[j]) / p[j]
    return float(acc.sum())


def _check_dense_dim(d: int):
    if d > MAX_DENSE_DIMENSION:
        raise InvalidDistributionError(
            f"dense subset tables require d <= {MAX_DENSE_DIMENSION}"
        )


def dense_pmf(pmf: BernoulliPmf) -> np.ndarray:
    """Probabilities as a dense length-2^d vector indexed by outcome mask."""
    _check_dense_dim(pmf.d)
    f = np.zeros(1 << pmf.d)
    f[pmf.masks] = pmf.probs
    return f


def _zeta_superset(values: np.ndarray, d: int) -> np.ndarray:
    """out[s] = sum over t >= s (bitwise supersets) of values[t]."""
    a = values.copy()
    for j in range(d):
        a = a.reshape(-1, 2, 1 << j)
        a[:, 0, :] += a[:, 1, :]
        a = a.reshape(-1)
    return a


def _mobius_superset(values: np.ndarray, d: int) -> np.ndarray:
    """Inverse of :func:`_zeta_superset`."""
    a = values.copy()
    for j in range(d):
        a = a.reshape(-1, 2, 1 << j)
        a[:, 0, :] -= a[:, 1, :]
        a = a.reshape(-1)
    return a


def _mobius_subset(values: np.ndarray, d: int) -> np.ndarray:
    """out[s] = sum over t <= s of (-1)^{|s|-|t|} values[t]."""
    a = values.copy()
    for j in range(d):
        a = a.reshape(-1, 2, 1 << j)
        a[:, 1, :] -= a[:, 0, :]
        a = a.reshape(-1)
    return a


def pmf_to_moments(pmf: BernoulliPmf) -> np.ndarray:
    """Ordinary moments mu_S = E[prod_{j in S} I_j] for every subset mask S.

    Returned as a dense length-2^d array indexed by subset mask; entry 0 is
    the empty product, 1.  mu_S equals the probability that all components
    in S are 1, i.e. a superset sum of the pmf.
    """
    f = dense_pmf(pmf)
    return _zeta_superset(f, pmf.d)


def moments_to_pmf(moments: np.ndarray) -> BernoulliPmf:
    """Invert :func:`pmf_to_moments` by Mobius inversion over the subset lattice.

    Raises :class:`InvalidDistributionError` if the sequence produces any
    mass below -1e-12; tiny negative round-off is clipped to 0.
    """
    moments = np.asarray(moments, dtype=float)
    n = moments.size
    d = n.bit_length() - 1
    if 1 << d != n or d < 2:
        raise InvalidDistributionError("moment array length must be 2^d with d >= 2")
    if abs(moments[0] - 1.0) > PROB_ATOL:
        raise InvalidDistributionError("empty-subset moment must be 1")
    f = _mobius_superset(moments, d)
    if np.any(f < -PROB_ATOL):
        raise InvalidDistributionError("moment sequence yields negative mass")
    f = np.clip(f, 0.0, None)
    masks = np.nonzero(f)[0].astype(np.int64)
    return BernoulliPmf(d, masks, f[masks])


def nu_all(pmf: BernoulliPmf) -> np.ndarray:
    """All centered coefficients nu_S, dense over subset masks.

    nu_S = E[prod_{j in S}(I_j - p_j)/p_j]; entry 0 is 1, singletons are ~0.
    Computed from ordinary moments by rescaling and a signed subset Mobius
    transform, O(d 2^d).
    """
    p = marginals(pmf)
    mu = pmf_to_moments(pmf)
    pprod = np.ones(1)
    for pj in p:
        pprod = np.concatenate([pprod, pprod * pj])
    return _mobius_subset(mu / pprod, pmf.d)


# ---------------------------------------------------------------------------
# Text pmf format: header "d=<dim>", then one "bitstring,probability" per line.
# ---------------------------------------------------------------------------

def format_pmf_text(pmf: BernoulliPmf) -> str:
    lines = [f"d={pmf.d}"]
    lines += [
        f"{mask_to_bitstring(int(m), pmf.d)},{float(q)!r}"
        for m, q in zip(pmf.masks, pmf.probs)
    ]
    return "\n".join(lines) + "\n"


def parse_pmf_text(text: str) -> BernoulliPmf:
    d = None
    atoms: dict[int, float] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("d="):
            d = int(line[2:])
            continue
        try:
            bit_s, prob_s = line.split(",")
        except ValueError as exc:
            raise InvalidDistributionError(f"malformed pmf line: {line!r}") from exc
        mask = bitstring_to_mask(bit_s.strip())
        if d is not None and len(bit_s.strip()) != d:
            raise InvalidDistributionError(
                f"bit string {bit_s!r} does not match header d={d}"
            )
        if mask in atoms:
            raise InvalidDistributionError(f"duplicate outcome {bit_s!r}")
        atoms[mask] = float(prob_s)
    if d is None:
        raise InvalidDistributionError("missing 'd=<dim>' header line")
    return BernoulliPmf.from_dict(d, atoms)


def load_pmf_file(path) -> BernoulliPmf:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_pmf_text(fh.read())


def save_pmf_file(pmf: BernoulliPmf, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_pmf_text(pmf))
