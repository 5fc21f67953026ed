"""Regenerates frontend/test-vectors.json from the Python library.

Each case names a bound function, its inputs, and either the expected output
or the expected error class. The bindings test suite replays every case
through the CLI and compares at 1e-12.

Usage: python3 tools/make_test_vectors.py
"""

import json
import os

import numpy as np

import invsphere as iv

OUT = os.path.join(os.path.dirname(__file__), "..", "frontend", "test-vectors.json")


def rows(arr):
    return [[float(v) for v in row] for row in np.atleast_2d(arr)]


def vec(arr):
    return [float(v) for v in arr]


def main():
    rng = np.random.default_rng(20260823)
    cases = []

    # embed_simplified / unembed_simplified, mixed dimensions and scales
    for i in range(8):
        d = int(rng.integers(1, 9))
        n = int(rng.integers(1, 6))
        s = float(np.exp(rng.uniform(np.log(0.05), np.log(50.0))))
        X = rng.standard_normal((n, d)) * 3.0
        emb = iv.embed_simplified(iv.Dataset(X), s)
        cases.append({
            "fn": "embedSimplified",
            "input": {"points": rows(X), "s": s},
            "expect": rows(emb.points),
        })
        back = iv.unembed_simplified(iv.Dataset(emb.points.copy()), s)
        cases.append({
            "fn": "unembedSimplified",
            "input": {"points": rows(emb.points), "s": s},
            "expect": rows(back.points),
        })
    # the worked equator case
    cases.append({
        "fn": "embedSimplified",
        "input": {"points": [[3.0, 4.0]], "s": 5.0},
        "expect": [[0.6, 0.8, 0.0]],
    })

    # general-direction embed / unembed
    for i in range(6):
        d = int(rng.integers(1, 7))
        n = int(rng.integers(1, 5))
        while True:
            v = rng.standard_normal(d + 1)
            v /= np.linalg.norm(v)
            if abs(v[-1]) >= 0.1:
                break
        s = float(np.exp(rng.uniform(np.log(0.1), np.log(10.0))))
        X = rng.standard_normal((n, d))
        params = iv.EmbeddingParams(v, s)
        emb = iv.embed(iv.Dataset(X), params)
        cases.append({
            "fn": "embed",
            "input": {"points": rows(X), "v": vec(params.v), "s": s},
            "expect": rows(emb.points),
        })
        back = iv.unembed(iv.Dataset(emb.points.copy()), params)
        cases.append({
            "fn": "unembed",
            "input": {"points": rows(emb.points), "v": vec(params.v), "s": s},
            "expect": rows(back.points),
        })

    # cap -> ball, ball -> cap
    for i in range(6):
        d = int(rng.integers(1, 8))
        while True:
            p = rng.standard_normal(d + 1)
            p /= np.linalg.norm(p)
            b = float(rng.uniform(-0.9, 0.9))
            if b + p[-1] > 0.05:
                break
        s = float(np.exp(rng.uniform(np.log(0.2), np.log(5.0))))
        ball = iv.cap_to_ball(iv.Cap(p, b), s)
        cases.append({
            "fn": "capToBall",
            "input": {"p": vec(p), "b": b, "s": s},
            "expect": {"c": vec(ball.c), "r": ball.r},
        })
        back = iv.ball_to_cap(ball, s)
        cases.append({
            "fn": "ballToCap",
            "input": {"c": vec(ball.c), "r": ball.r, "s": s},
            "expect": {"p": vec(back.p), "b": back.b},
        })
    # hemisphere case
    cases.append({
        "fn": "ballToCap",
        "input": {"c": [0.0, 0.0], "r": 1.5, "s": 1.5},
        "expect": {"p": [0.0, 0.0, 1.0], "b": 0.0},
    })

    # cap -> spheroid
    for i in range(5):
        d = int(rng.integers(2, 7))
        while True:
            v = rng.standard_normal(d + 1)
            v /= np.linalg.norm(v)
            if abs(v[-1]) >= 0.1 and np.linalg.norm(v[:-1]) >= 0.1:
                break
        while True:
            p = rng.standard_normal(d + 1)
            p /= np.linalg.norm(p)
            b = float(rng.uniform(-0.8, 0.8))
            if b + p @ v > 0.05:
                break
        s = float(np.exp(rng.uniform(np.log(0.3), np.log(3.0))))
        sph = iv.cap_to_spheroid(iv.Cap(p, b), iv.EmbeddingParams(v, s))
        cases.append({
            "fn": "capToSpheroid",
            "input": {"p": vec(p), "b": b, "v": vec(v), "s": s},
            "expect": {"c": vec(sph.c), "a1": vec(sph.a1),
                       "r1": sph.r1, "r2": sph.r2},
        })

    # metric bridge, batched rows
    for op, pyfn, embedded_inputs in (
        ("dotEmbedded", iv.dot_embedded, False),
        ("sqdistEmbedded", iv.sqdist_embedded, False),
        ("dotOriginal", iv.dot_original, True),
        ("sqdistOriginal", iv.sqdist_original, True),
    ):
        for i in range(3):
            d = int(rng.integers(1, 6))
            n = int(rng.integers(1, 6))
            s = float(np.exp(rng.uniform(np.log(0.3), np.log(3.0))))
            ctx = iv.MetricContext(s)
            X = rng.standard_normal((n, d))
            Y = rng.standard_normal((n, d))
            if embedded_inputs:
                X = iv.embed_simplified(iv.Dataset(X), s).points
                Y = iv.embed_simplified(iv.Dataset(Y), s).points
            vals = [float(pyfn(x, y, ctx)) for x, y in zip(X, Y)]
            cases.append({
                "fn": op,
                "input": {"x": rows(X), "y": rows(Y), "s": s},
                "expect": vals,
            })

    # abid and sweep_scale reports
    for i, (d, n) in enumerate([(2, 40), (5, 120)]):
        X = iv.generate("gaussian", d, n, seed=100 + i)
        est = iv.abid(X, seed=0)
        cases.append({
            "fn": "abid",
            "input": {"points": rows(X.points), "seed": 0},
            "expect": {"value": est.value, "nPairs": est.n_pairs,
                       "nSkipped": est.n_skipped},
        })
    X = iv.generate("gaussian", 3, 150, seed=200)
    res = iv.sweep_scale(X, grid_size=10, seed=0)
    cases.append({
        "fn": "sweepScale",
        "input": {"points": rows(X.points), "gridSize": 10, "seed": 0},
        "expect": {"bestS": res.best_s, "meanNorm": res.mean_norm,
                   "grid": vec(res.grid), "abidCurve": vec(res.abid_curve)},
    })

    # error mapping
    cases.append({
        "fn": "unembedSimplified",
        "input": {"points": [[0.0, 0.0, -1.0]], "s": 1.0},
        "error": "PointAtSouthPole",
    })
    cases.append({
        "fn": "capToBall",
        "input": {"p": [0.0, -1.0], "b": 0.5, "s": 1.0},
        "error": "CapContainsSouthPole",
    })
    cases.append({
        "fn": "capToSpheroid",
        "input": {"p": [0.0, 0.6, 0.8], "b": 0.0,
                  "v": [0.0, 0.0, 1.0], "s": 1.0},
        "error": "AxisUndefined",
    })
    cases.append({
        "fn": "abid",
        "input": {"points": [[1.0, 0.0], [0.0, 1.0]], "seed": 0},
        "error": "AllCosinesZero",
    })
    cases.append({
        "fn": "unembed",
        "input": {"points": [[1.0, 0.0]], "v": [0.0, 0.6, 0.8], "s": 1.0},
        "error": "DimensionMismatch",
    })

    payload = {"tolerance": 1e-12, "cases": cases}
    with open(os.path.abspath(OUT), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")
    print(f"wrote {len(cases)} cases to {os.path.abspath(OUT)}")


if __name__ == "__main__":
    main()
