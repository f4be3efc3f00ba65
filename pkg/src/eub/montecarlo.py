"""Haar-ensemble experiments: beat rates, majorization fuzzing, gap statistics.

All experiments are deterministic given (seed, stream): each sample index
gets its own derived generator, so results do not depend on chunking or
worker scheduling. The hot path runs through the batched s-vector kernel;
its agreement with the reference enumeration is covered by the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import _q_rows
from .entropy import _renyi_rows
from .matrices import RngSeed, _haar_from_ginibre, sample_generator
from .submatrices import s_coefficients_batch

_CHUNK = 2048


@dataclass(frozen=True)
class BeatRateResult:
    """Fraction of Haar draws where the ladder bound beats the max-entry bound."""

    n: int
    samples: int
    wins: int
    rate: float
    stderr: float
    seed: RngSeed

    def to_json(self) -> dict:
        return {
            "n": int(self.n),
            "samples": int(self.samples),
            "wins": int(self.wins),
            "rate": float(self.rate),
            "stderr": float(self.stderr),
            "seed": self.seed.to_json(),
        }


@dataclass(frozen=True)
class FuzzReport:
    """Majorization fuzz outcome; violations are data, not exceptions."""

    n: int
    pairs: int
    violations: int
    worst_slack: float
    seed: RngSeed

    def to_json(self) -> dict:
        return {
            "n": int(self.n),
            "pairs": int(self.pairs),
            "violations": int(self.violations),
            "worst_slack": float(self.worst_slack),
            "seed": self.seed.to_json(),
        }


@dataclass(frozen=True)
class GapStats:
    """Summary of ladder-minus-closed-form gaps over a Haar ensemble."""

    n: int
    samples: int
    alpha: float
    seed: RngSeed
    mean_mu: float
    mean_deutsch: float
    quantiles_mu: dict
    quantiles_deutsch: dict
    hist_mu: tuple
    hist_deutsch: tuple

    def to_json(self) -> dict:
        return {
            "n": int(self.n),
            "samples": int(self.samples),
            "alpha": "inf" if math.isinf(self.alpha) else float(self.alpha),
            "seed": self.seed.to_json(),
            "mean_mu": float(self.mean_mu),
            "mean_deutsch": float(self.mean_deutsch),
            "quantiles_mu": self.quantiles_mu,
            "quantiles_deutsch": self.quantiles_deutsch,
        }


def _haar_batch(n: int, rng: RngSeed, start: int, count: int, with_state: bool):
    # One derived generator per sample index; the unitary's Ginibre seed is
    # always drawn before the optional state, so either call sequence
    # reproduces the same matrices.
    z = np.empty((count, n, n), dtype=complex)
    psi = np.empty((count, n), dtype=complex) if with_state else None
    for off in range(count):
        g = sample_generator(rng, start + off)
        z[off] = g.standard_normal((n, n)) + 1j * g.standard_normal((n, n))
        if with_state:
            v = g.standard_normal(n) + 1j * g.standard_normal(n)
            psi[off] = v / np.linalg.norm(v)
    return _haar_from_ginibre(z), psi


def beat_rate(n: int, samples: int, rng: RngSeed, k: int | None = None) -> BeatRateResult:
    """Count Haar draws where the Shannon ladder bound strictly beats -2 ln c.

    The ladder level defaults to the strongest one, k = n - 1 (the full
    majorizing vector); lower levels can be compared via ``k``. Ties count
    as non-wins.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if k is None:
        k = n - 1
    if not (1 <= k <= n - 1):
        raise ValueError(f"ladder level k={k} out of range 1..{n - 1}")
    wins = 0
    for start in range(0, samples, _CHUNK):
        count = min(_CHUNK, samples - start)
        u, _ = _haar_batch(n, rng, start, count, with_state=False)
        s = s_coefficients_batch(u)
        ladder = _renyi_rows(_q_rows(s, k), 1.0)
        b_mu = -2.0 * np.log(s[:, 0])
        wins += int(np.count_nonzero(ladder > b_mu))
    rate = wins / samples
    return BeatRateResult(
        n=n,
        samples=samples,
        wins=wins,
        rate=rate,
        stderr=math.sqrt(rate * (1.0 - rate) / samples),
        seed=rng,
    )


def majorization_fuzz(n: int, pairs: int, rng: RngSeed, tol: float = 1e-10) -> FuzzReport:
    """Check p (x) q against Q on Haar (U, psi) pairs.

    For each pair the flattened product distribution must be majorized by
    Q at the given tolerance. Expected violations: zero; any hit is an
    implementation bug, reported with the worst partial-sum slack.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if pairs < 1:
        raise ValueError("pairs must be >= 1")
    violations = 0
    worst = math.inf
    for start in range(0, pairs, _CHUNK):
        count = min(_CHUNK, pairs - start)
        u, psi = _haar_batch(n, rng, start, count, with_state=True)
        p = np.abs(psi) ** 2
        q = np.abs(np.einsum("bij,bj->bi", u, psi)) ** 2
        p /= p.sum(axis=1, keepdims=True)
        q /= q.sum(axis=1, keepdims=True)
        pq = (p[:, :, None] * q[:, None, :]).reshape(count, n * n)
        s = s_coefficients_batch(u)
        qmaj = _q_rows(s, n - 1)
        # decreasing rearrangements; Q is padded with zeros, so its partial
        # sums saturate at 1 beyond n components
        cum_pq = np.cumsum(np.sort(pq, axis=1)[:, ::-1], axis=1)
        cum_q = np.ones((count, n * n))
        cum_q[:, :n] = np.cumsum(np.sort(qmaj, axis=1)[:, ::-1], axis=1)
        slack = cum_q - cum_pq
        worst = min(worst, float(slack.min()))
        violations += int(np.count_nonzero(slack.min(axis=1) < -tol))
    return FuzzReport(n=n, pairs=pairs, violations=violations, worst_slack=worst, seed=rng)


_QUANTILES = (0.05, 0.25, 0.5, 0.75, 0.95)


def bound_gap_stats(
    n: int, samples: int, alpha, rng: RngSeed, bins: int = 60
) -> GapStats:
    """Distribution of the top ladder bound minus each closed-form bound."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    gaps_mu = np.empty(samples)
    gaps_d = np.empty(samples)
    for start in range(0, samples, _CHUNK):
        count = min(_CHUNK, samples - start)
        u, _ = _haar_batch(n, rng, start, count, with_state=False)
        s = s_coefficients_batch(u)
        ladder = _renyi_rows(_q_rows(s, n - 1), alpha)
        c = s[:, 0]
        gaps_mu[start : start + count] = ladder + 2.0 * np.log(c)
        gaps_d[start : start + count] = ladder + 2.0 * np.log((1.0 + c) / 2.0)
    qs_mu = {str(q): float(np.quantile(gaps_mu, q)) for q in _QUANTILES}
    qs_d = {str(q): float(np.quantile(gaps_d, q)) for q in _QUANTILES}
    cnt_mu, edges_mu = np.histogram(gaps_mu, bins=bins)
    cnt_d, edges_d = np.histogram(gaps_d, bins=bins)
    return GapStats(
        n=n,
        samples=samples,
        alpha=float(alpha),
        seed=rng,
        mean_mu=float(gaps_mu.mean()),
        mean_deutsch=float(gaps_d.mean()),
        quantiles_mu=qs_mu,
        quantiles_deutsch=qs_d,
        hist_mu=(edges_mu[:-1].copy(), edges_mu[1:].copy(), cnt_mu.copy()),
        hist_deutsch=(edges_d[:-1].copy(), edges_d[1:].copy(), cnt_d.copy()),
    )
