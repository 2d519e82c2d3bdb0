import io

import numpy as np
import pytest

from hgm.errors import HGMError
from hgm.generators import erdos_renyi, star
from hgm.hamming import hamming_rows
from hgm.reachability import build_reach_tensor
from hgm.sketch import (EMPTY, dump_signatures, estimate_hamming, estimate_jaccard,
                        exact_jaccard, load_signatures, minhash_signature, mix64, row_indices,
                        sketch_rows)

from oracles import jaccard


def packed(bits, n):
    row = np.zeros(-(-n // 64), dtype=np.uint64)
    for b in bits:
        row[b // 64] |= np.uint64(1) << np.uint64(b % 64)
    return row


def test_mixer_reference_values():
    # SplitMix64 seeded with 0 emits 0xE220A8397B1DCDAF first (published reference)
    assert int(mix64(np.uint64(0))) == 0xE220A8397B1DCDAF


def test_row_indices():
    assert row_indices(packed([0, 5, 64, 99], 100), 100).tolist() == [0, 5, 64, 99]


def test_determinism_and_empty():
    r = packed([1, 7, 70], 80)
    assert minhash_signature(r, 64, 3, 80) == minhash_signature(r.copy(), 64, 3, 80)
    assert minhash_signature(r, 64, 3, 80) != minhash_signature(r, 64, 4, 80)
    e = minhash_signature(packed([], 80), 64, 3, 80)
    assert e.empty and e.weight == 0 and (e.minima == EMPTY).all()
    with pytest.raises(ValueError):
        minhash_signature(r, 0, 3, 80)


def test_jaccard_conventions():
    n = 50
    e = minhash_signature(packed([], n), 32, 0, n)
    a = minhash_signature(packed([1, 2], n), 32, 0, n)
    assert estimate_jaccard(e, e) == 1.0
    assert estimate_jaccard(e, a) == 0.0
    assert estimate_hamming(e, a) == 2
    assert estimate_hamming(e, e) == 0
    with pytest.raises(HGMError):
        estimate_jaccard(a, minhash_signature(packed([1, 2], n), 16, 0, n))
    with pytest.raises(HGMError):
        estimate_jaccard(a, minhash_signature(packed([1, 2], n), 32, 1, n))


def test_identical_and_disjoint_rows():
    n = 300
    a = packed(range(0, 150, 3), n)
    sa = minhash_signature(a, 512, 9, n)
    assert estimate_hamming(sa, sa) == 0
    b = packed(range(1, 150, 3), n)
    sb = minhash_signature(b, 512, 9, n)
    assert estimate_jaccard(sa, sb) <= 0.1
    assert estimate_hamming(sa, sb) == pytest.approx(100, abs=10)


def test_estimate_range():
    rng = np.random.default_rng(0)
    n = 128
    for _ in range(50):
        a = packed(rng.choice(n, rng.integers(1, 40), replace=False), n)
        b = packed(rng.choice(n, rng.integers(1, 40), replace=False), n)
        sa, sb = minhash_signature(a, 8, 1, n), minhash_signature(b, 8, 1, n)
        est = estimate_hamming(sa, sb)
        assert abs(sa.weight - sb.weight) <= est <= sa.weight + sb.weight


def test_star_center_vs_leaf():
    t = build_reach_tensor(star(5))
    c, leaf = t.row(0, 1), t.row(1, 1)
    assert hamming_rows(c, leaf) == 5
    est = [estimate_hamming(minhash_signature(c, 4096, s, 5), minhash_signature(leaf, 4096, s, 5))
           for s in range(100)]
    assert abs(np.median(est) - 5) <= 1


def test_exact_jaccard_matches_oracle():
    rng = np.random.default_rng(3)
    for _ in range(20):
        xs, ys = rng.choice(90, 20), rng.choice(90, 25)
        ia, ib = sum(1 << int(x) for x in set(xs)), sum(1 << int(y) for y in set(ys))
        assert exact_jaccard(packed(set(xs), 90), packed(set(ys), 90)) == pytest.approx(
            jaccard(ia, ib), rel=1e-15)


def test_concentration_small():
    g = erdos_renyi(128, 0.05, seed=1)
    t = build_reach_tensor(g, allow_disconnected=True)
    w = t.slice_words(2)
    s, eps = 256, 0.1
    sigs = sketch_rows(w, s, 5, t.n)
    rng = np.random.default_rng(2)
    pairs = rng.integers(0, t.n, size=(2000, 2))
    bad = sum(abs(estimate_jaccard(sigs[a], sigs[b]) - exact_jaccard(w[a], w[b])) > eps
              for a, b in pairs)
    assert bad / len(pairs) <= 2 * np.exp(-2 * s * eps * eps) + 0.01


def test_dump_roundtrip():
    t = build_reach_tensor(star(6))
    sigs = sketch_rows(t.slice_words(2), 16, 77, t.n)
    buf = io.BytesIO()
    dump_signatures(sigs, buf)
    raw = buf.getvalue()
    assert raw[:4] == b"HGMS"
    assert load_signatures(io.BytesIO(raw)) == sigs
    with pytest.raises(HGMError):
        load_signatures(io.BytesIO(b"nope" + raw[4:]))
