"""Command-line interface.

Subcommands:
  verify        run a named check suite, write the report file, exit 0/1
  export-front  sample a construction's front into the JSON/CSV record schema
  export-plots  tabulate the boundary-curve coordinate and normalized slope
  openbook      manipulate open-book descriptors from the command line

Exit codes: 0 all checks passed, 1 check failure, 2 usage error, 3 I/O error.

File contracts (consumed by the plotting frontend):
  JSON: {"meta": {"n", "eps", "seed", "version"}, "records": [...]}
  front records: {"t", "x_params", "q", "z", "cusp"}
  plot records:  {"t", "q_n1", "slope"}
  CSV: one header row, then records in the same field order; floats are
  written with repr (shortest round-trip decimal), so identical runs produce
  byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from . import constructions as con
from . import isotopy as iso
from . import openbook as ob
from . import suites
from .errors import ArgumentError
from .grids import disk_grid
from .surgery import split_jet
from .verifier import reports_to_json

FRONT_FIELDS = ("t", "x_params", "q", "z", "cusp")
PLOT_FIELDS = ("t", "q_n1", "slope")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return "[" + " ".join(_fmt(v) for v in value) + "]"
    return str(value)


def _meta(args) -> dict:
    return {"n": args.n, "eps": args.eps, "seed": args.seed,
            "version": __version__}


def _write_records(path: str, fmt: str, meta: dict, records: list[dict],
                   fields: tuple[str, ...]) -> None:
    if fmt == "json":
        payload = {"meta": meta, "records": records}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [",".join(fields)]
        for rec in records:
            lines.append(",".join(_fmt(rec[f]) for f in fields))
        lines.append("")
        text = "\n".join(lines)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _out_path(args, default_name: str) -> str:
    if args.out:
        return args.out
    base = os.environ.get("LEGSPHERES_OUT_DIR", ".")
    return os.path.join(base, default_name)


def _parse_t_grid(text: str) -> np.ndarray:
    if "," in text:
        return np.array([float(v) for v in text.split(",")])
    count = int(text)
    if count < 2 or count % 2 == 0:
        raise ArgumentError("t-grid point count must be an odd integer >= 3")
    return np.linspace(-1.0, 1.0, count)


def _front_record(t, x_params, q, z, cusp) -> dict:
    return {
        "t": None if t is None else float(t),
        "x_params": [float(v) for v in np.atleast_1d(x_params)],
        "q": [float(v) for v in np.atleast_1d(q)],
        "z": float(z),
        "cusp": bool(cusp),
    }


def _unknot_records(args) -> list[dict]:
    n = args.n
    if n == 1:
        # ordered closed polyline: spin +1 south to north, spin -1 back
        k = 201
        s_vals = np.linspace(-np.pi / 2.0, np.pi / 2.0, k)
        records = []
        for spin, s_iter in ((1.0, s_vals), (-1.0, s_vals[::-1][1:-1])):
            rows = con.spun_front_rows(s_iter, np.full((len(s_iter), 1), spin))
            for s, row in zip(s_iter, rows):
                records.append(_front_record(
                    None, [s, spin], row[:1], row[-1],
                    abs(np.sin(s)) < con.CUSP_RANK_TOL))
        first = records[0]
        records.append(dict(first))  # close the polyline explicitly
        return records
    samples = con.spun_unknot_front(n, 64 * 64)
    return [_front_record(None, f.params, f.horizontal, f.z, f.cusp)
            for f in samples]


def _jet_front_records(sphere: con.PiecewiseSphere, n: int, m: int,
                       seed: int) -> list[dict]:
    records = []
    for piece in sphere.pieces:
        X = disk_grid(n, m, rng=np.random.default_rng(seed))
        rows = piece.eval_batch(X)
        z, q, _ = split_jet(rows)
        for xp, qq, zz in zip(X, q, z):
            records.append(_front_record(None, xp, qq, zz, False))
    return records


def _lambda_records(args) -> list[dict]:
    n = args.n
    dbl = con.lambda_double(con.flat_disk(n))
    records = []
    for name in ("top", "bottom"):
        X = disk_grid(n, _front_samples_for(n), rng=np.random.default_rng(args.seed))
        rows = dbl.sphere.piece(name).eval_batch(X)
        for xp, row in zip(X, rows):
            records.append(_front_record(None, xp, row[:n], row[-1], False))
    k = 65
    s_vals = np.linspace(-np.pi / 2.0, np.pi / 2.0, k)
    if n == 1:
        spins = np.array([[1.0], [-1.0]])
    else:
        from .grids import sphere_grid

        spins = sphere_grid(n - 1, 32)
    for w in spins:
        rows = dbl.bend_rows(np.tile(w, (k, 1)), s_vals)
        for s, row in zip(s_vals, rows):
            records.append(_front_record(
                None, np.concatenate([[s], w]), row[:n], row[-1],
                abs(np.sin(s)) < con.CUSP_RANK_TOL))
    return records


def _disk_family_records(args) -> list[dict]:
    params = iso.IsotopyParams(eps=args.eps, n=args.n)
    family = iso.disk_family(params)
    grid = _parse_t_grid(args.t_grid) if args.t_grid else np.array([-1.0, 0.0, 1.0])
    records = []
    per_slice = _front_samples_for(args.n) if args.n == 2 else 400
    for t in grid:
        X = disk_grid(args.n, per_slice, rng=np.random.default_rng(args.seed))
        rows = family.eval_batch(float(t), X)
        z, q, _ = split_jet(rows)
        scale = np.sqrt(max(0.0, 1.0 - iso.eps_t(float(t), args.eps) ** 2))
        degenerate = scale < con.CUSP_RANK_TOL
        for xp, qq, zz in zip(X, q, z):
            records.append(_front_record(float(t), xp, qq, zz, degenerate))
    return records


def _front_samples_for(n: int) -> int:
    # 64 x 64 parameter samples for surface fronts, lighter otherwise
    return 64 * 64 if n == 2 else 1024


def cmd_export_front(args) -> int:
    makers = {
        "unknot": _unknot_records,
        "sjoin": lambda a: _jet_front_records(
            con.s_join_model(a.eps, a.n), a.n, _front_samples_for(a.n), a.seed),
        "sstab": lambda a: _jet_front_records(
            con.s_stab_model(a.eps, a.n), a.n, _front_samples_for(a.n), a.seed),
        "lambda": _lambda_records,
        "disk-family": _disk_family_records,
    }
    records = makers[args.construction](args)
    path = _out_path(args, f"front_{args.construction}.{args.format}")
    _write_records(path, args.format, _meta(args), records, FRONT_FIELDS)
    print(f"wrote {len(records)} records to {path}")
    return 0


def cmd_export_plots(args) -> int:
    grid = _parse_t_grid(args.t_grid) if args.t_grid else iso.t_grid()
    records = [
        {"t": float(t), "q_n1": iso.q_n1_t(float(t), args.eps),
         "slope": iso.slope_H(float(t), args.eps)}
        for t in grid
    ]
    path = _out_path(args, f"plots_eps{args.eps}.{args.format}")
    _write_records(path, args.format, _meta(args), records, PLOT_FIELDS)
    print(f"wrote {len(records)} records to {path}")
    return 0


def cmd_verify(args) -> int:
    reports = suites.run_suite(args.suite, args.n, args.eps, args.seed)
    path = _out_path(args, f"verify_{args.suite}.json")
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(reports_to_json(reports, meta=_meta(args)))
    except OSError as exc:
        print(f"cannot write report: {exc}", file=sys.stderr)
        return 3
    failed = [r for r in reports if not r.passed]
    for r in reports:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark} {r.name} max_residual={r.max_residual:.3e} tol={r.tol:g}")
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed; "
          f"report at {path}")
    return 0 if not failed else 1


def cmd_openbook(args) -> int:
    if args.action == "glue-fixtures":
        glued = ob.glue_relative(ob.shifted_ball_fixture(),
                                 ob.sphere_complement_fixture())
        print(glued.canonical())
        return 0
    disks = tuple((d, True) for d in (args.disks.split(",") if args.disks else []))
    book = ob.OpenBookDesc(page=ob.PageDesc(args.base, n=args.n), disks=disks)
    for op in (args.ops.split(";") if args.ops else []):
        kind, _, label = op.partition(":")
        if kind == "stabilize":
            book = ob.stabilize(book, label)
        elif kind == "surgery":
            sign = -1 if label.startswith("-") else +1
            book = ob.surgery_rewrite(book, label.lstrip("+-"), sign)
        else:
            raise ArgumentError(f"unknown openbook op {kind!r}")
    print(book.canonical())
    print("reduced:", book.monodromy.free_reduce().canonical())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legspheres",
        description="coordinate models of Legendrian spheres and their "
                    "numerical certification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, default=2, help="sphere dimension (1..4)")
        p.add_argument("--eps", type=float, default=0.1,
                       help="surgery region width, in (0, 0.5)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None,
                       help="override: reserved for future use")
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--t-grid", dest="t_grid", type=str, default=None,
                       help="odd point count or comma-separated t values")

    p_verify = sub.add_parser("verify", help="run a check suite")
    p_verify.add_argument("suite", choices=(
        "jet", "surgery", "chart", "isotopy", "constructions", "openbook", "all"))
    common(p_verify)

    p_front = sub.add_parser("export-front", help="export sampled fronts")
    p_front.add_argument("construction", choices=(
        "unknot", "sjoin", "sstab", "lambda", "disk-family"))
    common(p_front)

    p_plots = sub.add_parser("export-plots", help="export the boundary curves")
    common(p_plots)

    p_ob = sub.add_parser("openbook", help="descriptor bookkeeping")
    p_ob.add_argument("action", choices=("build", "glue-fixtures"))
    p_ob.add_argument("--base", type=str, default="D^{2n}")
    p_ob.add_argument("--n", type=int, default=2)
    p_ob.add_argument("--disks", type=str, default="")
    p_ob.add_argument("--ops", type=str, default="",
                      help="semicolon-separated, e.g. 'stabilize:L;surgery:-L+core'")
    return parser


def _validate(args) -> None:
    if hasattr(args, "eps"):
        if not 1 <= args.n <= 4:
            raise ArgumentError(f"n must lie in [1, 4], got {args.n}")
        if not 0.0 < args.eps < 0.5:
            raise ArgumentError(f"eps must lie in (0, 0.5), got {args.eps}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        _validate(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "export-front":
            return cmd_export_front(args)
        if args.command == "export-plots":
            return cmd_export_plots(args)
        if args.command == "openbook":
            return cmd_openbook(args)
        return 2
    except ArgumentError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
