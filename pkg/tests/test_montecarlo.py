import math

import numpy as np
import pytest

from eub import RngSeed, beat_rate, bound_gap_stats, majorization_fuzz

SEED = 1717


def test_beat_rate_reproducible():
    a = beat_rate(3, 400, RngSeed(SEED))
    b = beat_rate(3, 400, RngSeed(SEED))
    assert a.wins == b.wins
    assert a.rate == b.rate
    c = beat_rate(3, 400, RngSeed(SEED, stream=1))
    assert c.wins != a.wins  # different stream, different draw


def test_beat_rate_sanity_n2():
    res = beat_rate(2, 2000, RngSeed(SEED))
    assert res.n == 2
    assert res.samples == 2000
    assert 0.75 < res.rate < 0.88
    assert res.wins == round(res.rate * 2000)


def test_beat_rate_stderr_formula():
    res = beat_rate(2, 500, RngSeed(SEED + 1))
    expect = math.sqrt(res.rate * (1.0 - res.rate) / 500)
    assert res.stderr == pytest.approx(expect, abs=1e-15)


def test_beat_rate_single_sample():
    res = beat_rate(2, 1, RngSeed(SEED + 2))
    assert res.wins in (0, 1)
    assert res.rate in (0.0, 1.0)


def test_beat_rate_k_levels():
    # level 1 is the weakest rung, level n-1 the strongest
    low = beat_rate(3, 400, RngSeed(SEED + 3), k=1)
    high = beat_rate(3, 400, RngSeed(SEED + 3), k=2)
    assert low.wins <= high.wins
    with pytest.raises(ValueError):
        beat_rate(3, 10, RngSeed(0), k=0)
    with pytest.raises(ValueError):
        beat_rate(3, 10, RngSeed(0), k=3)


def test_beat_rate_json():
    res = beat_rate(2, 50, RngSeed(9, stream=4))
    obj = res.to_json()
    assert obj["n"] == 2
    assert obj["samples"] == 50
    assert obj["seed"] == {"seed": 9, "stream": 4}
    assert obj["wins"] == res.wins
    assert 0.0 <= obj["rate"] <= 1.0


def test_majorization_fuzz_clean():
    "Product distributions never escape the majorizing vector."
    for n in (2, 3, 4):
        rep = majorization_fuzz(n, 500, RngSeed(SEED + n))
        assert rep.violations == 0
        assert rep.worst_slack >= -1e-10
        assert rep.pairs == 500
        obj = rep.to_json()
        assert obj["violations"] == 0
        assert obj["n"] == n


def test_majorization_fuzz_reproducible():
    a = majorization_fuzz(3, 200, RngSeed(44))
    b = majorization_fuzz(3, 200, RngSeed(44))
    assert a.worst_slack == b.worst_slack


def test_gap_stats():
    stats = bound_gap_stats(3, 300, 1.0, RngSeed(SEED + 10), bins=24)
    assert stats.n == 3
    assert stats.samples == 300
    lo, hi, cnt = stats.hist_mu
    assert lo.size == 24 and hi.size == 24 and cnt.sum() == 300
    lo_d, hi_d, cnt_d = stats.hist_deutsch
    assert cnt_d.sum() == 300
    assert np.all(lo < hi)
    # the weaker closed form always leaves a bigger gap below the ladder
    assert stats.mean_deutsch >= stats.mean_mu
    qs = stats.quantiles_mu
    assert set(qs) == {"0.05", "0.25", "0.5", "0.75", "0.95"}
    vals = [qs[k] for k in ("0.05", "0.25", "0.5", "0.75", "0.95")]
    assert vals == sorted(vals)


def test_gap_stats_json():
    stats = bound_gap_stats(2, 100, 1.0, RngSeed(SEED + 11))
    obj = stats.to_json()
    assert obj["n"] == 2
    assert obj["samples"] == 100
    assert "quantiles_mu" in obj and "quantiles_deutsch" in obj
    assert "hist_mu" not in obj  # histograms travel as CSV, not JSON
