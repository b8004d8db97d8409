"""Command line entry points.

Subcommands: rsk (correspondence and bijection suite), crystal (graph
emission), flow (eigenline continuation against the RSK oracle), cells
(Calogero-Moser cell partitions against tableau-symbol references).

Exit codes: 0 success, 1 theorem mismatch, 2 numerically inconclusive,
3 usage error. Reports are JSON with sorted keys and embed the full
configuration and seed, so identical invocations give identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
import tempfile

from . import combinatorics as cb
from . import cmcells, crystals, spectralflow

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _json_vector(text, name):
    try:
        value = json.loads(text)
    except json.JSONDecodeError as err:
        raise UsageError(f"bad {name}: {err}")
    if not isinstance(value, list):
        raise UsageError(f"{name} must be a JSON list")
    return value


def _load_matrix(args):
    if args.matrix is not None:
        raw = args.matrix
    elif args.file is not None:
        with open(args.file) as fh:
            raw = fh.read()
    else:
        raise UsageError("need --matrix or --file")
    rows = _json_vector(raw, "matrix")
    try:
        return cb.NatMatrix(rows)
    except (ValueError, TypeError) as err:
        raise UsageError(f"bad matrix: {err}")


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory)
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit(report, args):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if getattr(args, "out", None):
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _write_trace(path, rows):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory)
    with os.fdopen(fd, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["leg", "t", "branch", "eigenvalue"])
        writer.writerows(rows)
    os.replace(tmp, path)


def _flow_opts(args):
    return spectralflow.FlowOpts(
        seed=args.seed,
        steps=args.steps,
        cluster_tol=args.tol,
        gap_safety=args.gap_safety,
    )


def cmd_rsk(args):
    if args.check:
        return _rsk_check(args)
    if args.inverse:
        p_rows = _json_vector(args.p, "--p")
        q_rows = _json_vector(args.q, "--q")
        try:
            p = cb.SemistandardTableau(p_rows, args.n)
            q = cb.SemistandardTableau(q_rows, args.r)
            a = cb.rsk_inverse(p, q)
        except ValueError as err:
            raise UsageError(str(err))
        _emit({"config": _config(args), "matrix": a.to_lists()}, args)
        return EXIT_OK
    a = _load_matrix(args)
    p, q = cb.rsk(a)
    _emit(
        {
            "config": _config(args),
            "matrix": a.to_lists(),
            "P": p.to_lists(),
            "Q": q.to_lists(),
            "shape": list(p.shape),
        },
        args,
    )
    return EXIT_OK


def _rsk_check(args):
    checked = 0
    failures = []
    for r in range(1, min(args.max_dim, 3) + 1):
        for n in range(1, min(args.max_dim, 3) + 1):
            for a in cb.all_matrices(r, n, min(args.max_entry, 2)):
                checked += 1
                p, q = cb.rsk(a)
                if cb.rsk_inverse(p, q) != a or not cb.transpose_check(a):
                    failures.append(a.to_lists())
    rng = random.Random(args.seed)
    for _ in range(args.samples):
        r = rng.randint(1, args.max_dim)
        n = rng.randint(1, args.max_dim)
        a = cb.NatMatrix(
            [[rng.randint(0, args.max_entry) for _ in range(n)] for _ in range(r)]
        )
        checked += 1
        p, q = cb.rsk(a)
        if cb.rsk_inverse(p, q) != a or not cb.transpose_check(a):
            failures.append(a.to_lists())
    report = {
        "config": _config(args),
        "checked": checked,
        "failures": failures,
        "ok": not failures,
    }
    _emit(report, args)
    return EXIT_OK if not failures else EXIT_MISMATCH


def cmd_crystal(args):
    if args.shape is not None:
        shape = _json_vector(args.shape, "--shape")
        elements = cb.semistandard_tableaux(shape, args.rank)
        serialize = lambda t: t.to_lists()
    elif args.col_sums is not None:
        k = _json_vector(args.col_sums, "--col-sums")
        from .liealg import weight_basis

        elements = weight_basis(args.rank, len(k), k)
        serialize = lambda m: m.to_lists()
    else:
        raise UsageError("need --shape or --col-sums")
    edges = crystals.crystal_graph(elements, args.rank)
    report = {
        "config": _config(args),
        "elements": [serialize(x) for x in elements],
        "edges": [
            {"source": serialize(x), "index": i, "target": serialize(y)}
            for x, i, y in edges
        ],
    }
    _emit(report, args)
    return EXIT_OK


def cmd_flow(args):
    k = None if args.col_sums is None else _json_vector(args.col_sums, "--col-sums")
    weight = None if args.weight is None else _json_vector(args.weight, "--weight")
    if k is None and args.max_entry is None:
        raise UsageError("need --col-sums or --max-entry")
    dim = _flow_dimension(args.r, args.n, k, weight, args.max_entry)
    if dim > args.budget:
        raise UsageError(f"basis dimension {dim} exceeds budget {args.budget}")
    z = None if args.z is None else _json_vector(args.z, "--z")
    q = None if args.q is None else _json_vector(args.q, "--q")
    trace = [] if args.trace else None
    try:
        report = spectralflow.verify_main_theorem(
            args.r, args.n, col_sums=k, row_sums=weight, max_entry=args.max_entry,
            z=z, q=q, opts=_flow_opts(args), trace=trace,
        )
    except spectralflow.FlowError as err:
        _emit({"config": _config(args), "error": str(err)}, args)
        return EXIT_INCONCLUSIVE
    if args.trace:
        _write_trace(args.trace, trace)
    report["config"] = _config(args)
    _emit(report, args)
    if report["failures"]:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if report["agreement"] else EXIT_MISMATCH


def _flow_dimension(r, n, k, weight, max_entry):
    from math import comb

    def block_dim(col_sums):
        out = 1
        for ka in col_sums:
            out *= comb(ka + r - 1, r - 1)
        return out

    if k is not None:
        return block_dim(k)
    return max(block_dim(ks) for ks in spectralflow.col_sum_blocks(r, n, max_entry))


def cmd_cells(args):
    runners = {
        "right": cmcells.right_cells,
        "left": cmcells.left_cells,
        "two-sided": cmcells.two_sided_cells,
    }
    z = None if args.z is None else _json_vector(args.z, "--z")
    q = None if args.q is None else _json_vector(args.q, "--q")
    try:
        partition = runners[args.kind](args.n, z=z, q=q, opts=_flow_opts(args))
    except spectralflow.FlowError as err:
        _emit({"config": _config(args), "error": str(err)}, args)
        return EXIT_INCONCLUSIVE
    reference = cmcells.kl_reference_cells(args.n, args.kind)
    matches = partition == reference
    report = {
        "config": _config(args),
        "n": args.n,
        "kind": args.kind,
        "blocks": [
            [list(w.one_line) for w in block] for block in partition.blocks
        ],
        "block_sizes": partition.block_sizes(),
        "matches_kl": matches,
    }
    _emit(report, args)
    return EXIT_OK if matches else EXIT_MISMATCH


def _config(args):
    # output destinations are not part of the experiment configuration
    skip = {"func", "config", "out", "trace"}
    return {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in skip and not callable(value)
    }


def build_parser():
    parser = Parser(prog="gaudinrsk", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON report to this file")
        p.add_argument("--config", help="key=value defaults file")
        p.add_argument("--seed", type=int, default=0)

    p_rsk = sub.add_parser("rsk", help="correspondence, inverse, bijection suite")
    common(p_rsk)
    p_rsk.add_argument("--matrix", help="JSON rows of a non-negative matrix")
    p_rsk.add_argument("--file", help="file containing the JSON matrix")
    p_rsk.add_argument("--inverse", action="store_true")
    p_rsk.add_argument("--p", help="insertion tableau rows (JSON), with --inverse")
    p_rsk.add_argument("--q", help="recording tableau rows (JSON), with --inverse")
    p_rsk.add_argument("--r", type=int, help="row bound for --inverse")
    p_rsk.add_argument("--n", type=int, help="column bound for --inverse")
    p_rsk.add_argument("--check", action="store_true", help="run the bijection suite")
    p_rsk.add_argument("--max-dim", type=int, default=3)
    p_rsk.add_argument("--max-entry", type=int, default=2)
    p_rsk.add_argument("--samples", type=int, default=10000)
    p_rsk.set_defaults(func=cmd_rsk)

    p_cr = sub.add_parser("crystal", help="emit a crystal graph as a JSON edge list")
    common(p_cr)
    p_cr.add_argument("--rank", type=int, required=True, help="crystal index bound r")
    p_cr.add_argument("--shape", help="tableau shape (JSON list)")
    p_cr.add_argument("--col-sums", help="matrix block column sums (JSON list)")
    p_cr.set_defaults(func=cmd_crystal)

    p_fl = sub.add_parser("flow", help="verify flow-extracted tableaux against RSK")
    common(p_fl)
    p_fl.add_argument("--r", type=int, required=True)
    p_fl.add_argument("--n", type=int, required=True)
    p_fl.add_argument("--col-sums", help="one block (JSON list)")
    p_fl.add_argument("--weight", help="row-sum filter (JSON list)")
    p_fl.add_argument("--max-entry", type=int, help="sweep all blocks up to this entry bound")
    p_fl.add_argument("--z", help="base z (JSON list, increasing positive)")
    p_fl.add_argument("--q", help="base q (JSON list, pairwise distinct)")
    p_fl.add_argument("--steps", type=int, default=48)
    p_fl.add_argument("--tol", type=float, default=1e-6)
    p_fl.add_argument("--gap-safety", type=float, default=1e3)
    p_fl.add_argument("--budget", type=int, default=300)
    p_fl.add_argument("--trace", help="write eigenvalue traces to this CSV file")
    p_fl.set_defaults(func=cmd_flow)

    p_ce = sub.add_parser("cells", help="cell partitions vs tableau-symbol reference")
    common(p_ce)
    p_ce.add_argument("--n", type=int, required=True)
    p_ce.add_argument("--kind", choices=["right", "left", "two-sided"], default="right")
    p_ce.add_argument("--z", help="base z (JSON list)")
    p_ce.add_argument("--q", help="base q (JSON list)")
    p_ce.add_argument("--steps", type=int, default=48)
    p_ce.add_argument("--tol", type=float, default=1e-6)
    p_ce.add_argument("--gap-safety", type=float, default=1e3)
    p_ce.set_defaults(func=cmd_cells)

    return parser


def _apply_config_file(argv):
    """Prepend key=value pairs from --config as flags, so real flags win."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise UsageError("--config needs a file path")
    path = argv[idx + 1]
    extra = []
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(f"bad config line: {line!r}")
                key, value = line.split("=", 1)
                extra.extend([f"--{key.strip().replace('_', '-')}", value.strip()])
    except OSError as err:
        raise UsageError(f"cannot read config: {err}")
    # insert defaults right after the subcommand so explicit flags override
    return argv[:1] + extra + argv[1:]


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _apply_config_file(argv)
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
