"""Command-line front end.

Generates point sets, verifies their combinatorial quality, and runs
the discretization experiment harness. Every output file embeds the
run configuration and library version so that `unidisc rerun` can
reproduce it; report paths also get a CSV summary and a rendered PNG
figure next to the JSON.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from datetime import datetime, timezone

from . import __version__
from .geometry import dispersion_dyadic, dispersion_exact
from .pointsets import (
    UniversalConstructionParams,
    default_generator_matrices,
    load_pointset,
    minimal_t,
    net_points,
    random_points,
    sparse_grid,
    tensor_grid,
    universal_set,
    verify_net,
)
from .universality import (
    compare_constructions,
    fejer_witness,
    resolve_threads,
    sweep,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ASSERT = 3

_FLAG_ORDER = {
    "gen": ["family", "n", "d", "q", "a", "t", "r", "N", "m", "seed",
            "domain", "out"],
    "check-net": ["infile", "t", "out"],
    "min-t": ["infile"],
    "dispersion": ["infile", "method", "max_points", "out"],
    "sweep": ["points", "n", "d", "q", "samples", "seed", "kinds", "s",
              "assert_c1", "out"],
    "witness": ["points", "n", "a_min", "out"],
    "compare": ["n", "d", "q", "samples", "seed", "a", "out"],
}

_FLAG_NAMES = {"infile": "--in"}


def _parse_q(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return math.inf
    v = float(text)
    if v < 1:
        raise argparse.ArgumentTypeError("q must be >= 1 or inf")
    return v


def _parse_ivec(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _q_json(q) -> object:
    return "inf" if q == math.inf else float(q)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _write_json(path: str, obj: dict) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _write_csv(path: str, rows) -> None:
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerows(rows)


def _out_base(path: str) -> str:
    return path[:-5] if path.endswith(".json") else path


def _payload(config: dict, body: dict) -> dict:
    out = dict(body)
    out["config"] = config
    out["version"] = __version__
    out["timestamp"] = _now()
    return out


def _argv_from_config(cfg: dict, out_override: str | None) -> list[str]:
    command = cfg["command"]
    if command not in _FLAG_ORDER:
        raise ValueError(f"config has unknown command {command!r}")
    params = dict(cfg["params"])
    if out_override is not None:
        params["out"] = out_override
    argv = [command]
    for name in _FLAG_ORDER[command]:
        if name not in params or params[name] is None:
            continue
        value = params[name]
        flag = _FLAG_NAMES.get(name, "--" + name.replace("_", "-"))
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        argv += [flag, str(value)]
    return argv


def _config(command: str, **params) -> dict:
    return {"command": command, "params": params}


# ---------------------------------------------------------------------------
# handlers


def cmd_gen(args) -> int:
    family = args.family
    meta: dict = {"family": family}
    if family == "net":
        if args.r is None or args.d is None:
            raise ValueError("net family needs --r and --d")
        net = default_generator_matrices(args.d, args.r)
        ps = net_points(net)
        meta.update({"r": net.r, "d": net.d, "declared_t": net.declared_t})
    elif family == "sparse":
        if args.n is None or args.d is None:
            raise ValueError("sparse family needs --n and --d")
        ps = sparse_grid(args.n, args.d)
        meta.update({"n": args.n, "d": args.d})
    elif family in ("tensorP", "tensorPprime"):
        if args.N is None:
            raise ValueError(f"{family} needs --N (per-axis degrees)")
        kind = "P" if family == "tensorP" else "Pprime"
        grid = tensor_grid(args.N, kind)
        ps = grid.points
        meta.update({"N": list(grid.N), "shape": list(grid.shape)})
    elif family == "random":
        if args.m is None or args.d is None:
            raise ValueError("random family needs --m and --d")
        ps = random_points(args.m, args.d, seed=args.seed,
                           domain=args.domain)
        meta.update({"seed": args.seed})
    elif family in ("universal-linf", "universal-lq"):
        if args.n is None or args.d is None:
            raise ValueError(f"{family} needs --n and --d")
        q = math.inf if family == "universal-linf" else args.q
        if family == "universal-lq" and (q is None or q == math.inf):
            raise ValueError("universal-lq needs a finite --q")
        res = universal_set(UniversalConstructionParams(
            n=args.n, d=args.d, q=q, t=args.t, a_dq=args.a))
        ps = res.points
        meta.update(res.describe())
        if family == "universal-linf":
            meta["log_term"] = res.margin
    else:
        raise ValueError(f"unknown family {family!r}")

    meta["m"] = ps.m
    cfg = _config(
        "gen", family=family, n=args.n, d=args.d,
        q=_q_json(args.q) if args.q is not None else None, a=args.a,
        t=args.t, r=args.r, N=list(args.N) if args.N else None, m=args.m,
        seed=args.seed, domain=args.domain, out=args.out,
    )
    if args.out:
        body = ps.to_json_dict()
        body["meta"] = meta
        _write_json(args.out, _payload(cfg, body))
    pieces = [f"{k}={v}" for k, v in sorted(meta.items())]
    print("gen: " + " ".join(pieces))
    return EXIT_OK


def cmd_check_net(args) -> int:
    ps = load_pointset(args.infile)
    res = verify_net(ps, args.t)
    cfg = _config("check-net", infile=args.infile, t=args.t,
                  out=args.out)
    body = {"ok": res.ok, "t": res.t, "r": res.r, "witness": res.witness}
    if args.out:
        _write_json(args.out, _payload(cfg, body))
    if res.ok:
        print(f"check-net: PASS t={res.t} r={res.r} m={ps.m}")
        return EXIT_OK
    print(f"check-net: FAIL t={res.t} r={res.r} witness={res.witness}")
    return EXIT_ASSERT


def cmd_min_t(args) -> int:
    ps = load_pointset(args.infile)
    t = minimal_t(ps)
    print(f"min-t: t={t} m={ps.m}")
    return EXIT_OK


def cmd_dispersion(args) -> int:
    ps = load_pointset(args.infile)
    if args.method == "exact":
        res = dispersion_exact(ps, max_points=args.max_points)
    else:
        res = dispersion_dyadic(ps)
    cfg = _config("dispersion", infile=args.infile,
                  method=args.method, max_points=args.max_points,
                  out=args.out)
    body = {
        "volume": res.volume,
        "u": list(res.u) if res.u is not None else None,
        "v": list(res.v) if res.v is not None else None,
        "method": res.method,
        "m": ps.m,
    }
    if args.out:
        _write_json(args.out, _payload(cfg, body))
    print(f"dispersion: volume={res.volume!r} method={res.method} "
          f"u={body['u']} v={body['v']}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    ps = load_pointset(args.points)
    kinds = tuple(args.kinds.split(","))
    rep = sweep(
        ps, n=args.n, d=args.d, q=args.q, samples=args.samples,
        seed=args.seed, kinds=kinds,
        subspace=args.s, threads=resolve_threads(args.threads),
    )
    cfg = _config(
        "sweep", points=args.points, n=args.n, d=args.d,
        q=_q_json(args.q), samples=args.samples, seed=args.seed,
        kinds=args.kinds, s=list(args.s) if args.s else None,
        assert_c1=args.assert_c1, out=args.out,
    )
    if args.out:
        base = _out_base(args.out)
        _write_json(base + ".json", _payload(cfg, rep.to_json_dict()))
        _write_csv(base + ".csv", rep.csv_rows())
        from . import plots
        plots.sweep_figure(rep, base + ".png")
    print(f"sweep: C1_hat={rep.C1_hat:.6g} C2_hat={rep.C2_hat:.6g} "
          f"m={rep.m} subspaces={len(rep.records)} samples={rep.samples}")
    if args.assert_c1 is not None and rep.C1_hat < args.assert_c1:
        print(f"sweep: ASSERTION FAILED C1_hat={rep.C1_hat:.6g} < "
              f"{args.assert_c1!r}", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


def cmd_witness(args) -> int:
    ps = load_pointset(args.points)
    res = fejer_witness(ps, n=args.n, a_min=args.a_min)
    cfg = _config("witness", points=args.points, n=args.n,
                  a_min=args.a_min, out=args.out)
    if args.out:
        _write_json(args.out, _payload(cfg, res.to_json_dict()))
    if res.found:
        print(f"witness: found s={list(res.s)} margin={res.margin} "
              f"ratio={res.ratio:.6g} peak={res.peak:.6g}")
    else:
        print("witness: none found")
    return EXIT_OK


def cmd_compare(args) -> int:
    res = compare_constructions(
        args.n, args.d, args.q, samples=args.samples, seed=args.seed,
        a_dq=args.a, threads=resolve_threads(args.threads),
    )
    cfg = _config(
        "compare", n=args.n, d=args.d, q=_q_json(args.q),
        samples=args.samples, seed=args.seed, a=args.a, out=args.out,
    )
    body = {
        "n": res["n"], "d": res["d"], "q": res["q"],
        "samples": res["samples"], "seed": res["seed"],
        "rows": res["rows"],
        "reports": {k: v.to_json_dict() for k, v in res["reports"].items()},
    }
    if args.out:
        base = _out_base(args.out)
        _write_json(base + ".json", _payload(cfg, body))
        rows = [["family", "m", "C1_hat", "C2_hat"]]
        for r in res["rows"]:
            rows.append([r["family"], r["m"], repr(r["C1_hat"]),
                         repr(r["C2_hat"])])
        _write_csv(base + ".csv", rows)
        from . import plots
        qtxt = res["q"] if isinstance(res["q"], str) else f"{res['q']:g}"
        plots.compare_figure(
            res["rows"], base + ".png",
            title=f"n={res['n']} d={res['d']} q={qtxt}",
        )
    for r in res["rows"]:
        print(f"compare: {r['family']:<12} m={r['m']:<8} "
              f"C1_hat={r['C1_hat']:.6g} C2_hat={r['C2_hat']:.6g}")
    return EXIT_OK


def cmd_rerun(args) -> int:
    with open(args.config) as fh:
        data = json.load(fh)
    if "config" not in data:
        raise ValueError(f"{args.config} has no embedded config")
    argv = _argv_from_config(data["config"], args.out)
    return main(argv)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unidisc",
        description="Point sets that discretize L_q norms of all "
                    "trigonometric polynomials of fixed total degree.",
    )
    parser.add_argument("--version", action="version",
                        version=f"unidisc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a point set")
    p.add_argument("--family", required=True,
                   choices=["net", "sparse", "tensorP", "tensorPprime",
                            "random", "universal-linf", "universal-lq"])
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--q", type=_parse_q, default=None)
    p.add_argument("--a", type=int, default=4,
                   help="per-axis margin for universal-lq")
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--r", type=int, help="net resolution (2^r points)")
    p.add_argument("--N", type=_parse_ivec,
                   help="per-axis degrees for tensor grids, e.g. 3,1")
    p.add_argument("--m", type=int, help="cardinality for random family")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--domain", choices=["unit", "torus2pi"],
                   default="unit")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check-net", help="verify the net property")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check_net)

    p = sub.add_parser("min-t", help="smallest passing net parameter")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_min_t)

    p = sub.add_parser("dispersion", help="largest empty box")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--method", choices=["exact", "dyadic"],
                   default="exact")
    p.add_argument("--max-points", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_dispersion)

    p = sub.add_parser("sweep", help="measure discretization constants")
    p.add_argument("--points", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=_parse_q, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kinds", default="gaussian,spike")
    p.add_argument("--s", type=_parse_ivec, default=None,
                   help="restrict to a single level split, e.g. 2,2")
    p.add_argument("--assert-c1", type=float, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("witness", help="hunt for an empty-box witness")
    p.add_argument("--points", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a-min", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("compare",
                       help="net vs grid union vs iid baseline")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=_parse_q, required=True)
    p.add_argument("--samples", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a", type=int, default=4)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("rerun", help="re-execute an embedded config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_rerun)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
