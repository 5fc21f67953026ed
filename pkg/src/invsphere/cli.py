"""Command-line front end.

Exit codes: 0 success, 1 parse/format error, 2 dimension or precondition
error, 3 numeric singularity.  Error messages name the failing class and,
where applicable, the offending record, so wrappers can map them back to
typed exceptions.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io as dio
from .data import Dataset
from .duality import Ball, Cap, ball_to_cap, cap_to_ball, cap_to_spheroid
from .embedding import EmbeddingParams, embed, embed_simplified, unembed, unembed_simplified
from .errors import (
    InputFormatError,
    InvsphereError,
    PreconditionError,
    SingularityError,
)
from .harness import brute_force_knn, generate, recall_at_k
from .metrics import MetricContext, dot_embedded, dot_original, sqdist_embedded, sqdist_original
from .scale import abid, sweep_scale

BRIDGE_OPS = {
    "dot-embedded": dot_embedded,
    "sqdist-embedded": sqdist_embedded,
    "dot-original": dot_original,
    "sqdist-original": sqdist_original,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="invsphere", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common_io(p, output=True):
        p.add_argument("--input", required=True, help="input dataset path")
        if output:
            p.add_argument("--output", required=True, help="output path")
        p.add_argument("--format", choices=dio.FORMATS, default="csv")

    p = sub.add_parser("embed", help="embed a dataset onto the unit sphere")
    common_io(p)
    p.add_argument("--s", default="mean-norm",
                   help="scale: a number, 'mean-norm', or 'sweep'")
    p.add_argument("--v-file", help="CSV file with one row holding a general direction v")
    p.add_argument("--center", action="store_true", help="mean-center before embedding")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("unembed", help="map spherical data back to the original space")
    common_io(p)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--v-file", help="CSV file with one row holding a general direction v")

    p = sub.add_parser("cap2ball", help="convert a cap record to a ball record")
    p.add_argument("--input", required=True, help="JSON record with p, b, s")
    p.add_argument("--output", required=True)

    p = sub.add_parser("ball2cap", help="convert a ball record to a cap record")
    p.add_argument("--input", required=True, help="JSON record with c, r, s")
    p.add_argument("--output", required=True)

    p = sub.add_parser("cap2spheroid", help="convert a cap record to a spheroid record")
    p.add_argument("--input", required=True, help="JSON record with p, b, s")
    p.add_argument("--v-file", required=True, help="CSV file with one row holding v")
    p.add_argument("--output", required=True)

    p = sub.add_parser("sweep", help="ABID scale sweep; writes an s,abid table")
    common_io(p)
    p.add_argument("--grid-size", type=int, default=20)
    p.add_argument("--lo", type=float, default=0.1)
    p.add_argument("--hi", type=float, default=10.0)
    p.add_argument("--center", choices=("mean_norm", "median_norm"), default="mean_norm")
    p.add_argument("--no-recenter", action="store_true",
                   help="skip the internal mean-centering")
    p.add_argument("--pair-budget", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("abid", help="ABID estimate of a dataset as-is")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=dio.FORMATS, default="csv")
    p.add_argument("--output", help="write the JSON report here instead of stdout")
    p.add_argument("--pair-budget", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("knn-eval", help="recall of bridged embedded search vs exact Euclidean")
    p.add_argument("--base", required=True)
    p.add_argument("--queries", required=True)
    p.add_argument("--format", choices=dio.FORMATS, default="csv")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--s", default="mean-norm", help="embedding scale: a number or 'mean-norm'")
    p.add_argument("--output", help="write the JSON report here instead of stdout")

    p = sub.add_parser("generate", help="write a synthetic dataset")
    p.add_argument("--kind", required=True,
                   choices=("uniform_ball", "gaussian", "blobs", "normalized_blobs"))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n-blobs", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.add_argument("--format", choices=dio.FORMATS, default="csv")

    p = sub.add_parser("bridge", help="row-wise metric translation between spaces")
    p.add_argument("--op", required=True, choices=sorted(BRIDGE_OPS))
    p.add_argument("--x", required=True, help="dataset of left-hand vectors")
    p.add_argument("--y", required=True, help="dataset of right-hand vectors, row-aligned")
    p.add_argument("--format", choices=dio.FORMATS, default="csv")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--output", required=True)

    return parser


def _read_v(path: str) -> np.ndarray:
    v = dio.read_dataset(path, "csv")
    if len(v) != 1:
        raise InputFormatError(f"{path}: direction file must hold exactly one row")
    return v.points[0]


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            record = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"{path}: {exc}") from exc
    if not isinstance(record, dict):
        raise InputFormatError(f"{path}: expected a JSON object")
    return record


def _record_field(record: dict, path: str, key: str):
    if key not in record:
        raise InputFormatError(f"{path}: missing field {key!r}")
    return record[key]


def _write_json(obj: dict, path: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        dio._atomic_write(path, text.encode("utf-8"))


def _resolve_scale(spec: str, X: Dataset, seed: int = 0) -> float:
    if spec == "mean-norm":
        return float(np.mean(np.linalg.norm(X.points, axis=1)))
    if spec == "sweep":
        return sweep_scale(X, seed=seed, recenter=False).best_s
    try:
        return float(spec)
    except ValueError as exc:
        raise InputFormatError(f"bad scale specification {spec!r}") from exc


def _cmd_embed(args) -> int:
    X = dio.read_dataset(args.input, args.format)
    if args.center:
        X = X.replace_points(X.points - X.points.mean(axis=0))
    s = _resolve_scale(args.s, X, args.seed)
    if args.v_file:
        out = embed(X, EmbeddingParams(_read_v(args.v_file), s))
    else:
        out = embed_simplified(X, s)
    dio.write_dataset(out, args.output, args.format)
    return 0


def _cmd_unembed(args) -> int:
    Y = dio.read_dataset(args.input, args.format)
    if args.v_file:
        out = unembed(Y, EmbeddingParams(_read_v(args.v_file), args.s))
    else:
        out = unembed_simplified(Y, args.s)
    dio.write_dataset(out, args.output, args.format)
    return 0


def _cmd_cap2ball(args) -> int:
    rec = _read_json(args.input)
    cap = Cap(np.asarray(_record_field(rec, args.input, "p"), dtype=np.float64),
              float(_record_field(rec, args.input, "b")))
    s = float(_record_field(rec, args.input, "s"))
    ball = cap_to_ball(cap, s)
    _write_json({"c": ball.c.tolist(), "r": ball.r, "s": s}, args.output)
    return 0


def _cmd_ball2cap(args) -> int:
    rec = _read_json(args.input)
    ball = Ball(np.asarray(_record_field(rec, args.input, "c"), dtype=np.float64),
                float(_record_field(rec, args.input, "r")))
    s = float(_record_field(rec, args.input, "s"))
    cap = ball_to_cap(ball, s)
    _write_json({"p": cap.p.tolist(), "b": cap.b, "s": s}, args.output)
    return 0


def _cmd_cap2spheroid(args) -> int:
    rec = _read_json(args.input)
    cap = Cap(np.asarray(_record_field(rec, args.input, "p"), dtype=np.float64),
              float(_record_field(rec, args.input, "b")))
    s = float(_record_field(rec, args.input, "s"))
    params = EmbeddingParams(_read_v(args.v_file), s)
    sph = cap_to_spheroid(cap, params)
    _write_json(
        {"c": sph.c.tolist(), "a1": sph.a1.tolist(), "r1": sph.r1, "r2": sph.r2, "s": s},
        args.output,
    )
    return 0


def _cmd_sweep(args) -> int:
    X = dio.read_dataset(args.input, args.format)
    result = sweep_scale(
        X,
        grid_size=args.grid_size,
        lo_factor=args.lo,
        hi_factor=args.hi,
        center=args.center,
        pair_budget=args.pair_budget,
        seed=args.seed,
        recenter=not args.no_recenter,
    )
    lines = [f"# best_s={result.best_s:.17g} mean_norm={result.mean_norm:.17g}"]
    lines += [f"{s:.17g},{a:.17g}" for s, a in zip(result.grid, result.abid_curve)]
    dio._atomic_write(args.output, ("\n".join(lines) + "\n").encode("ascii"))
    return 0


def _cmd_abid(args) -> int:
    X = dio.read_dataset(args.input, args.format)
    est = abid(X, args.pair_budget, args.seed)
    _write_json(
        {"value": est.value, "n_pairs": est.n_pairs, "n_skipped": est.n_skipped},
        args.output,
    )
    return 0


def _cmd_knn_eval(args) -> int:
    base = dio.read_dataset(args.base, args.format)
    queries = dio.read_dataset(args.queries, args.format)
    s = _resolve_scale(args.s, base)
    truth = brute_force_knn(base, queries, args.k, "euclidean")
    emb_base = Dataset(embed_simplified(base, s).points, base.ids)
    emb_queries = Dataset(embed_simplified(queries, s).points, queries.ids)
    bridged = brute_force_knn(emb_base, emb_queries, args.k, "bridged_original", s)
    report = recall_at_k(bridged, truth, args.k)
    _write_json(
        {"k": report.k, "recall": report.recall, "n_queries": report.n_queries, "s": s},
        args.output,
    )
    return 0


def _cmd_generate(args) -> int:
    X = generate(args.kind, args.d, args.n, args.n_blobs, args.seed)
    dio.write_dataset(X, args.output, args.format)
    return 0


def _cmd_bridge(args) -> int:
    X = dio.read_dataset(args.x, args.format)
    Y = dio.read_dataset(args.y, args.format)
    if len(X) != len(Y):
        raise PreconditionError(f"{len(X)} left rows vs {len(Y)} right rows")
    ctx = MetricContext(args.s)
    op = BRIDGE_OPS[args.op]
    values = np.empty(len(X))
    for i, (x, y) in enumerate(zip(X.points, Y.points)):
        try:
            values[i] = op(x, y, ctx)
        except InvsphereError as exc:
            raise type(exc)(f"record {i}: {exc}") from exc
    dio.write_dataset(Dataset(values[:, None]), args.output, args.format)
    return 0


_COMMANDS = {
    "embed": _cmd_embed,
    "unembed": _cmd_unembed,
    "cap2ball": _cmd_cap2ball,
    "ball2cap": _cmd_ball2cap,
    "cap2spheroid": _cmd_cap2spheroid,
    "sweep": _cmd_sweep,
    "abid": _cmd_abid,
    "knn-eval": _cmd_knn_eval,
    "generate": _cmd_generate,
    "bridge": _cmd_bridge,
}


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; those are parse errors here.
        return 0 if not exc.code else 1
    try:
        return _COMMANDS[args.command](args)
    except SingularityError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (InputFormatError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (PreconditionError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
