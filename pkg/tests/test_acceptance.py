"""Acceptance suite.

Each test covers one release criterion and prints a single PASS/FAIL line so
the run log doubles as a checklist.  Tolerances are fixed here on purpose;
loosening them is a release decision, not a test fix.
"""

import sys
import time

import numpy as np

import invsphere as iv
from invsphere.cli import run


def report(name, ok):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}", file=sys.stderr)
    assert ok, name


def random_unit(rng, d):
    while True:
        v = rng.standard_normal(d)
        v /= np.linalg.norm(v)
        if abs(v[-1]) >= 0.05:
            return v


def test_roundtrip_exactness():
    rng = np.random.default_rng(1001)
    t0 = time.perf_counter()
    worst = 0.0
    for d in (1, 2, 10, 100):
        for s in (1e-3, 1.0, 1e3):
            v = random_unit(rng, d + 1)
            X = iv.Dataset(rng.standard_normal((1000, d)))
            p = iv.EmbeddingParams(v, s)
            back = iv.unembed(iv.embed(X, p), p)
            rel = np.abs(back.points - X.points) / np.maximum(1.0, np.abs(X.points))
            worst = max(worst, float(rel.max()))
    elapsed = time.perf_counter() - t0
    report(
        f"embed/unembed roundtrip: rel err {worst:.2e} <= 1e-9, {elapsed:.2f}s < 5s",
        worst <= 1e-9 and elapsed < 5.0,
    )


def test_cap_ball_boundary_identity():
    rng = np.random.default_rng(1002)
    worst = 0.0
    for d in (1, 2, 10):
        for _ in range(200):
            while True:
                p = rng.standard_normal(d + 1)
                p /= np.linalg.norm(p)
                b = rng.uniform(-0.95, 0.95)
                if b + p[-1] > 0.05:
                    break
            s = float(np.exp(rng.uniform(np.log(0.1), np.log(10.0))))
            cap = iv.Cap(p, b)
            ball = iv.cap_to_ball(cap, s)
            pts = iv.sample_cap_boundary(cap, 100, rng)
            back = iv.unembed_simplified(iv.Dataset(pts), s)
            radii = np.linalg.norm(back.points - ball.c, axis=1)
            err = np.abs(radii - ball.r).max() / max(1.0, ball.r)
            worst = max(worst, float(err))
    hand = iv.cap_to_ball(iv.Cap(np.array([0.6, 0.8]), 0.0), 1.0)
    hand_ok = abs(hand.c[0] - 0.75) <= 1e-12 and abs(hand.r - 1.25) <= 1e-12
    report(
        f"cap->ball boundary identity: err {worst:.2e} <= 1e-7, hand case exact",
        worst <= 1e-7 and hand_ok,
    )


def test_ball_cap_roundtrip():
    rng = np.random.default_rng(1003)
    worst = 0.0
    for _ in range(200):
        d = int(rng.integers(1, 11))
        c = rng.standard_normal(d)
        c *= rng.uniform(0.0, 10.0) / max(np.linalg.norm(c), 1e-300)
        r = rng.uniform(0.01, 10.0)
        s = rng.uniform(0.1, 10.0)
        ball = iv.Ball(c, r)
        back = iv.cap_to_ball(iv.ball_to_cap(ball, s), s)
        err = max(
            float(np.linalg.norm(back.c - c)) / max(1.0, float(np.linalg.norm(c))),
            abs(back.r - r) / r,
        )
        worst = max(worst, err)
    hemi = iv.ball_to_cap(iv.Ball(np.zeros(3), 2.0), 2.0)
    hemi_ok = (
        np.abs(hemi.p - [0, 0, 0, 1]).max() <= 1e-12 and abs(hemi.b) <= 1e-12
    )
    report(
        f"ball->cap->ball roundtrip: rel err {worst:.2e} <= 1e-7, hemisphere case exact",
        worst <= 1e-7 and hemi_ok,
    )


def test_metric_bridge_equivalence():
    rng = np.random.default_rng(1004)
    n = 10_000
    d = 6
    s = 1.7
    ctx = iv.MetricContext(s)
    X = rng.standard_normal((n, d)) * 2.0
    Y = rng.standard_normal((n, d)) * 2.0
    Xh = iv.embed_simplified(iv.Dataset(X), s).points
    Yh = iv.embed_simplified(iv.Dataset(Y), s).points
    errs = np.zeros(5)
    for x, y, xh, yh in zip(X, Y, Xh, Yh):
        diff = xh - yh
        errs[0] = max(errs[0], abs(iv.dot_embedded(x, y, ctx) - xh @ yh))
        errs[1] = max(errs[1], abs(iv.sqdist_embedded(x, y, ctx) - diff @ diff))
        errs[2] = max(errs[2], abs(iv.dot_original(xh, yh, ctx) - x @ y))
        sq = (x - y) @ (x - y)
        errs[3] = max(errs[3], abs(iv.sqdist_original(xh, yh, ctx) - sq))
        # alternative grouping of the original-space distance
        v = np.zeros(d + 1)
        v[-1] = 1.0
        alt = (4.0 * s * s * (diff @ diff)
               / ((4.0 - (xh - v) @ (xh - v)) * (4.0 - (yh - v) @ (yh - v))))
        errs[4] = max(errs[4], abs(alt - sq))
    report(
        f"metric bridge vs explicit embedding: max err {errs.max():.2e} <= 1e-9",
        errs.max() <= 1e-9,
    )


def test_cap_spheroid():
    v = np.array([0.0, 0.6, 0.8])
    sph = iv.cap_to_spheroid(iv.Cap(v.copy(), 0.0), iv.EmbeddingParams(v, 1.0))
    hand_ok = (
        np.abs(sph.c - [0.0, 0.6]).max() <= 1e-12
        and abs(sph.r1 - 0.8) <= 1e-12
        and abs(sph.r2 - 1.0) <= 1e-12
        and np.abs(sph.a1 - [0.0, 1.0]).max() <= 1e-12
    )
    rng = np.random.default_rng(1005)
    worst = 0.0
    for _ in range(100):
        d = int(rng.integers(2, 8))
        while True:
            v = rng.standard_normal(d + 1)
            v /= np.linalg.norm(v)
            if abs(v[-1]) >= 0.1 and np.linalg.norm(v[:-1]) >= 0.1:
                break
        while True:
            p = rng.standard_normal(d + 1)
            p /= np.linalg.norm(p)
            b = rng.uniform(-0.9, 0.9)
            if b + p @ v > 0.05:
                break
        s = float(np.exp(rng.uniform(np.log(0.2), np.log(5.0))))
        params = iv.EmbeddingParams(v, s)
        cap = iv.Cap(p, b)
        sph = iv.cap_to_spheroid(cap, params)
        pts = iv.sample_cap_boundary(cap, 50, rng)
        back = iv.unembed(iv.Dataset(pts), params)
        q = np.array([sph.quadratic_form(x) for x in back.points])
        worst = max(worst, float(np.abs(q - 1.0).max()))
    report(
        f"cap->spheroid: quadratic form err {worst:.2e} <= 1e-7, hand case exact",
        worst <= 1e-7 and hand_ok,
    )


def test_hemisphere_scale():
    rng = np.random.default_rng(1006)
    ok = True
    for _ in range(100):
        d = int(rng.integers(1, 12))
        n = int(rng.integers(2, 100))
        X = iv.Dataset(rng.standard_normal((n, d)) * np.exp(rng.uniform(-2, 2)))
        s = iv.hemisphere_min_scale(X)
        at = iv.embed_simplified(X, s).points[:, -1].min()
        above = iv.embed_simplified(X, 1.01 * s).points[:, -1].min()
        ok = ok and at >= -1e-12 and above > 0.0
    report("hemisphere min scale keeps data on the upper half", ok)


def test_sweep_behavior():
    t0 = time.perf_counter()
    X = iv.generate("gaussian", 10, 500, seed=7)
    res = iv.sweep_scale(X, seed=0)
    elapsed = time.perf_counter() - t0
    peak = float(np.nanmax(res.abid_curve))
    ends = max(res.abid_curve[0], res.abid_curve[-1])
    interior = res.grid[0] < res.best_s < res.grid[-1]
    report(
        f"scale sweep: peak {peak:.2f} <= 11.5, endpoints {ends:.2f} <= 1.5, "
        f"interior optimum, {elapsed:.2f}s < 10s",
        peak <= 11.5 and ends <= 1.5 and interior and elapsed < 10.0,
    )


def test_cosine_preservation():
    rng = np.random.default_rng(1007)
    s = 1.5
    d = 10
    n = 10_000
    ctx = iv.MetricContext(s)

    x = rng.standard_normal((n, d))
    y = rng.standard_normal((n, d))
    x *= s / np.linalg.norm(x, axis=1, keepdims=True)
    y *= s / np.linalg.norm(y, axis=1, keepdims=True)
    xh = iv.embed_simplified(iv.Dataset(x), s).points
    yh = iv.embed_simplified(iv.Dataset(y), s).points
    cos_orig = np.einsum("ij,ij->i", x, y) / (s * s)
    cos_emb = np.einsum("ij,ij->i", xh, yh)
    shell_err = float(np.abs(cos_orig - cos_emb).max())

    x = rng.standard_normal((n, d))
    y = rng.standard_normal((n, d))
    x *= (rng.uniform(0.9 * s, 1.1 * s, n) / np.linalg.norm(x, axis=1))[:, None]
    y *= (rng.uniform(0.9 * s, 1.1 * s, n) / np.linalg.norm(y, axis=1))[:, None]
    ratios = np.array([iv.cosine_ratio(a, b, ctx) for a, b in zip(x, y)])
    frac = float(np.mean((ratios >= 0.8) & (ratios <= 1.25)))

    report(
        f"cosine preservation: shell err {shell_err:.2e} <= 1e-9, "
        f"band fraction {frac:.3f} >= 0.95",
        shell_err <= 1e-9 and frac >= 0.95,
    )


def test_exact_search_equivalence():
    base = iv.generate("blobs", 8, 10_000, seed=11)
    queries = iv.generate("blobs", 8, 100, seed=12)
    s = float(np.mean(np.linalg.norm(base.points, axis=1)))
    truth = iv.brute_force_knn(base, queries, 10)
    eb = iv.Dataset(iv.embed_simplified(base, s).points, base.ids)
    eq = iv.Dataset(iv.embed_simplified(queries, s).points, queries.ids)
    bridged = iv.brute_force_knn(eb, eq, 10, "bridged_original", s)
    identical = all(
        np.array_equal(got.neighbor_ids, want.neighbor_ids)
        for got, want in zip(bridged, truth)
    )
    recall = iv.recall_at_k(bridged, truth, 10).recall
    report(
        f"exact-search equivalence: identical id lists, recall {100 * recall:.1f}% = 100%",
        identical and recall == 1.0,
    )


def test_cli_format_contract(tmp_path):
    X = iv.generate("gaussian", 5, 64, seed=13)
    bin_in = str(tmp_path / "in.bin")
    bin_out = str(tmp_path / "copy.bin")
    iv.write_dataset(X, bin_in, "f64le")
    bit_ok = iv.read_dataset(bin_in, "f64le").points.tobytes() == X.points.tobytes()
    emb = str(tmp_path / "emb.bin")
    code_ok = run(["embed", "--input", bin_in, "--output", emb,
                   "--format", "f64le", "--s", "2.0"]) == 0
    iv.write_dataset(iv.read_dataset(emb, "f64le"), bin_out, "f64le")
    bit_ok = bit_ok and open(emb, "rb").read() == open(bin_out, "rb").read()

    csv_path = str(tmp_path / "x.csv")
    iv.write_dataset(X, csv_path, "csv")
    csv_ok = float(np.abs(iv.read_dataset(csv_path).points - X.points).max()) <= 1e-12

    bad_csv = tmp_path / "bad.csv"
    bad_csv.write_text("1.0,oops\n")
    pole = tmp_path / "pole.csv"
    pole.write_text("0.0,-1.0\n")
    out = str(tmp_path / "o.csv")
    codes_ok = (
        run(["embed", "--input", str(bad_csv), "--output", out, "--s", "1"]) == 1
        and run(["embed", "--input", csv_path, "--output", out, "--s", "-3"]) == 2
        and run(["unembed", "--input", str(pole), "--output", out, "--s", "1"]) == 3
    )
    report(
        "file format contract: f64le bit-exact, csv <= 1e-12, exit codes 1/2/3",
        bit_ok and code_ok and csv_ok and codes_ok,
    )
