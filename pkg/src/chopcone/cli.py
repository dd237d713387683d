"""Command-line driver: ``chopcone {csc,vpf,rep,lattice} ...``.

Exit codes: 0 ok, 2 bad input, 3 validation failure, 4 cone not pointed,
5 no quasi-polynomial fit, 6 an oracle check disagreed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from . import csc as csc_mod
from . import vpf as vpf_mod
from .errors import (ChopconeError, KernelConditionViolated, NoFit, NotBounded, NotPointed,
                     ValidationFailed)
from .exact import cone_generators, matvec, positive_orthant_embedding

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_POINTED, EXIT_FIT, EXIT_CHECK = 0, 2, 3, 4, 5, 6


class CheckMismatch(Exception):
    pass


@dataclass
class RunConfig:
    seed: Optional[int] = None
    dim_cap: int = 10000
    tensor_cap: int = 1000000
    fmt: str = "csv"

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        from .liealg import DEFAULT_DIM_CAP, DEFAULT_TENSOR_CAP
        return cls(getattr(args, "seed", None),
                   getattr(args, "dim_cap", None) or DEFAULT_DIM_CAP,
                   getattr(args, "tensor_cap", None) or DEFAULT_TENSOR_CAP,
                   getattr(args, "format", "csv"))


# ---------------------------------------------------------------------------
# parsing helpers


def parse_vector(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(int(v) for v in text)
    parts = text.replace(",", " ").split()
    return tuple(int(v) for v in parts)


def parse_matrix(text: str) -> tuple:
    """``"1 1; 0 1"``, a JSON list of rows, or a path to a JSON file."""
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    text = text.strip()
    if text.startswith("["):
        return tuple(tuple(int(v) for v in row) for row in json.loads(text))
    return tuple(parse_vector(row) for row in text.split(";") if row.strip())


def load_cone(path: str) -> csc_mod.ChoppedSlicedCone:
    """Read a cone file: ``{"ranks": {K, Lambda, LambdaTilde, Q, R}, "p", "q", "r", "s"}``."""
    with open(path) as fh:
        data = json.load(fh)
    try:
        rk = data["ranks"]
        return csc_mod.ChoppedSlicedCone(
            rk["K"], rk["Lambda"], rk["LambdaTilde"], rk["Q"], rk["R"],
            data["p"], data["q"], data["r"], data["s"])
    except KeyError as exc:
        raise ValueError(f"cone file is missing the key {exc}") from None


def cone_to_json(c: csc_mod.ChoppedSlicedCone) -> dict:
    return {"ranks": {"K": c.rank_K, "Lambda": c.rank_Lambda, "LambdaTilde": c.rank_LambdaTilde,
                      "Q": c.rank_Q, "R": c.rank_R},
            "p": [list(r) for r in c.p_map], "q": [list(r) for r in c.q_map],
            "r": [list(r) for r in c.r_map], "s": [list(r) for r in c.s_map]}


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _coords(v) -> str:
    return " ".join(_fmt(x) for x in v)


def _emit_rows(header: Sequence[str], rows: List[Sequence], fmt: str, out):
    if fmt == "json":
        recs = [dict(zip(header, r)) for r in rows]
        json.dump(recs, out, default=_json_default)
        out.write("\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_coords(v) if isinstance(v, tuple) else _fmt(v) for v in r])


def _json_default(v):
    if isinstance(v, Fraction):
        return _fmt(v)
    if isinstance(v, tuple):
        return list(v)
    raise TypeError(type(v))


# ---------------------------------------------------------------------------
# csc


def cmd_csc(args, out) -> int:
    c = load_cone(args.cone)
    cfg = RunConfig.from_args(args)
    if args.sub == "validate":
        ray = c.recession_ray()
        if ray is None:
            out.write("bounded\n")
            return EXIT_OK
        out.write(f"unbounded: chops are unbounded along the recession ray {_coords(ray)}\n")
        return EXIT_VALIDATION
    c.require_valid()
    lam = parse_vector(args.lam)
    if args.sub == "count":
        if args.beta is None:
            out.write(f"{csc_mod.chop_count(c, lam)}\n")
        else:
            out.write(f"{csc_mod.slice_count(c, lam, parse_vector(args.beta))}\n")
        return EXIT_OK
    if args.sub == "measure":
        table = csc_mod.measure(c, lam)
        _emit_rows(["beta", "count"], list(table.entries.items()), cfg.fmt, out)
        return EXIT_OK
    if args.sub == "converge":
        if args.seed is None:
            raise ValueError("--seed is required for the Monte Carlo estimate")
        rows = csc_mod.convergence_report(c, lam, args.f, parse_vector(args.n), args.samples,
                                          args.seed)
        if cfg.fmt == "json":
            _emit_rows(["n", "pairing", "limit_estimate", "stderr", "abs_deviation"],
                       [(r.n, r.pairing, r.limit_estimate, r.stderr, r.abs_deviation)
                        for r in rows], "json", out)
        else:
            out.write(csc_mod.report_csv(rows))
        return EXIT_OK
    raise ValueError(args.sub)


# ---------------------------------------------------------------------------
# vpf


def _pair_to_json(pair: vpf_mod.EBPair) -> dict:
    return {"E": [list(r) for r in pair.problem.E], "n_vars": pair.problem.n_vars,
            "B": [list(r) for r in pair.B], "embedding": [list(r) for r in pair.embedding],
            "r_tilde": [list(r) for r in pair.r_tilde]}


def cmd_vpf(args, out) -> int:
    if args.sub == "build":
        pair = vpf_mod.reduce_to_vpf(load_cone(args.cone))
        text = json.dumps(_pair_to_json(pair)) + "\n"
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            out.write(text)
        return EXIT_OK
    if args.sub == "eval":
        if args.pair:
            with open(args.pair) as fh:
                data = json.load(fh)
            problem = vpf_mod.VPFProblem(tuple(map(tuple, data["E"])), data.get("n_vars", -1))
            if args.y is not None:
                y = parse_vector(args.y)
            else:
                if args.lam is None or args.beta is None:
                    raise ValueError("give --y, or --lambda and --beta with --pair")
                y = matvec(data["B"], parse_vector(args.lam) + parse_vector(args.beta))
        else:
            if args.E is None or args.y is None:
                raise ValueError("give --E and --y, or --pair")
            problem = vpf_mod.VPFProblem(parse_matrix(args.E))
            y = parse_vector(args.y)
        out.write(f"{vpf_mod.phi(problem, y)}\n")
        return EXIT_OK
    if args.sub == "fit":
        c = load_cone(args.cone)
        qp = vpf_mod.ray_scan(c, parse_vector(args.base_lambda), parse_vector(args.base_beta),
                              parse_vector(args.dir_lambda), parse_vector(args.dir_beta),
                              args.tmax, args.period_max, args.degree, args.holdout)
        rec = qp.to_json()
        rec["degree"] = qp.degree
        out.write(json.dumps(rec) + "\n")
        return EXIT_OK
    raise ValueError(args.sub)


# ---------------------------------------------------------------------------
# rep


def _spec(args):
    from .liealg import cartan, longest_word
    from .littelmann import builtin_string_cone, load_string_cone
    if getattr(args, "cone", None):
        return load_string_cone(args.cone)
    cd = cartan(args.type)
    word = parse_vector(args.word) if args.word else longest_word(cd)
    return builtin_string_cone(cd, word)


def _check(label: str, got: int, want: int, where: str, out):
    if got != want:
        out.write(f"check FAILED for {where}: slice count {got} != {label} {want}\n")
        raise CheckMismatch(where)
    out.write(f"check OK ({label} {want})\n")


def cmd_rep(args, out) -> int:
    from . import bz
    from .liealg import (cartan, demazure_character, freudenthal, is_dominant, tensor_decompose,
                         weyl_dimension)
    from .littelmann import demazure_multiplicity, multiplicity_table
    cfg = RunConfig.from_args(args)
    lam = parse_vector(args.lam)
    if args.sub == "dim":
        out.write(f"{weyl_dimension(cartan(args.type), lam)}\n")
        return EXIT_OK

    if args.sub in ("mult", "demazure"):
        spec = _spec(args)
        cd = spec.cd
        m = spec.length if args.sub == "mult" or args.prefix is None else args.prefix
        if args.sub == "mult":
            oracle = freudenthal(cd, lam, cfg.dim_cap)
            label = "Freudenthal"
        else:
            oracle = demazure_character(cd, spec.word[:m], lam)
            label = "Demazure character"
        if args.beta is None:
            table = multiplicity_table(spec, lam, m)
            rows = sorted(table.items(), key=lambda kv: kv[0], reverse=True)
            _emit_rows(["weight", "count"], rows, cfg.fmt, out)
            if args.check:
                for w in sorted(set(table) | set(oracle)):
                    if table.get(w, 0) != oracle.get(w, 0):
                        _check(label, table.get(w, 0), oracle.get(w, 0),
                               f"lambda={_coords(lam)} weight={_coords(w)}", out)
                out.write(f"check OK ({label} table)\n")
            return EXIT_OK
        beta = parse_vector(args.beta)
        got = demazure_multiplicity(spec, m, lam, beta)
        out.write(f"{got}\n")
        if args.check:
            w = tuple(a - b for a, b in zip(lam, cd.root_to_weight(beta)))
            _check(label, got, oracle.get(w, 0), f"lambda={_coords(lam)} beta={_coords(beta)}", out)
        return EXIT_OK

    if args.sub == "lr":
        cd = cartan(args.type)
        nu = parse_vector(args.nu)
        if not (is_dominant(lam) and is_dominant(nu)):
            raise ValueError("lambda and nu must be dominant")
        sysb = bz.build_bz_csc(cd, parse_vector(args.word) if args.word else None)
        oracle = bz.lr_table_oracle(cd, lam, nu) if args.check else None
        if args.beta is not None:
            beta = parse_vector(args.beta)
            got = bz.lr_coefficient(sysb, lam, nu, beta)
            if cfg.fmt == "json":
                out.write(json.dumps({"beta": list(beta), "count": got}) + "\n")
            else:
                out.write(f"{got}\n")
            if args.check:
                _check("tensor product", got, oracle.get(beta, 0),
                       f"lambda={_coords(lam)} nu={_coords(nu)} beta={_coords(beta)}", out)
            return EXIT_OK
        table = bz.lr_table(sysb, lam, nu)
        _emit_rows(["beta", "count"], list(table.items()), cfg.fmt, out)
        if args.check:
            for beta in sorted(set(table) | set(oracle)):
                if table.get(beta, 0) != oracle.get(beta, 0):
                    _check("tensor product", table.get(beta, 0), oracle.get(beta, 0),
                           f"lambda={_coords(lam)} nu={_coords(nu)} beta={_coords(beta)}", out)
            out.write("check OK (tensor product table)\n")
        return EXIT_OK
    raise ValueError(args.sub)


# ---------------------------------------------------------------------------
# lattice


def cmd_lattice(args, out) -> int:
    N = parse_matrix(args.normals)
    A = positive_orthant_embedding(N)
    out.write("A =\n")
    for row in A:
        out.write(" ".join(str(v) for v in row) + "\n")
    ok = True
    for g in cone_generators(N):
        img = matvec(A, g)
        good = all(v >= 0 for v in img)
        ok &= good
        out.write(f"{_coords(g)} -> {_coords(img)} {'OK' if good else 'FAIL'}\n")
    return EXIT_OK if ok else EXIT_CHECK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chopcone",
                                 description="Chopped and sliced cones: counts, measures, "
                                             "partition functions and representation data.")
    top = ap.add_subparsers(dest="group", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    g = top.add_parser("csc", help="cone files: validate, count, measure, converge")
    sub = g.add_subparsers(dest="sub", required=True)
    p = sub.add_parser("validate")
    p.add_argument("cone")
    p = sub.add_parser("count")
    p.add_argument("cone")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--beta")
    p = sub.add_parser("measure")
    p.add_argument("cone")
    p.add_argument("--lambda", dest="lam", required=True)
    fmt(p)
    p = sub.add_parser("converge")
    p.add_argument("cone")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--f", default="const")
    p.add_argument("--n", default="1,2,4,8,16")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, default=100000)
    fmt(p)

    g = top.add_parser("vpf", help="vector partition functions")
    sub = g.add_subparsers(dest="sub", required=True)
    p = sub.add_parser("build")
    p.add_argument("cone")
    p.add_argument("-o", "--output")
    p = sub.add_parser("eval")
    p.add_argument("--E")
    p.add_argument("--y")
    p.add_argument("--pair", help="JSON written by 'vpf build'")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--beta")
    p = sub.add_parser("fit")
    p.add_argument("cone")
    for name in ("base-lambda", "dir-lambda", "base-beta", "dir-beta"):
        p.add_argument(f"--{name}", required=True)
    p.add_argument("--tmax", type=int, default=20)
    p.add_argument("--period-max", type=int, default=6)
    p.add_argument("--degree", type=int)
    p.add_argument("--holdout", type=int)

    g = top.add_parser("rep", help="weight multiplicities, Demazure and tensor products")
    sub = g.add_subparsers(dest="sub", required=True)
    for name in ("mult", "demazure", "lr", "dim"):
        p = sub.add_parser(name)
        p.add_argument("--type", required=name != "mult" and name != "demazure")
        p.add_argument("--lambda", dest="lam", required=True)
        if name == "dim":
            continue
        p.add_argument("--word")
        p.add_argument("--beta")
        p.add_argument("--check", action="store_true")
        p.add_argument("--dim-cap", type=int)
        p.add_argument("--tensor-cap", type=int)
        fmt(p)
        if name in ("mult", "demazure"):
            p.add_argument("--cone", help="user string-cone JSON file")
        if name == "demazure":
            p.add_argument("--prefix", type=int)
        if name == "lr":
            p.add_argument("--nu", required=True)
            p.add_argument("--table", action="store_true")

    g = top.add_parser("lattice", help="lattice utilities")
    sub = g.add_subparsers(dest="sub", required=True)
    p = sub.add_parser("embed")
    p.add_argument("normals", help='facet normals: "1 -1; 1 1", JSON rows or a JSON file')
    return ap


_COMMANDS = {"csc": cmd_csc, "vpf": cmd_vpf, "rep": cmd_rep, "lattice": cmd_lattice}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.group == "rep" and args.sub in ("mult", "demazure") and not (args.type or args.cone):
        print("error: --type or --cone is required", file=sys.stderr)
        return EXIT_PARSE
    try:
        return _COMMANDS[args.group](args, out)
    except CheckMismatch:
        return EXIT_CHECK
    except NotPointed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POINTED
    except NoFit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIT
    except (NotBounded, ValidationFailed, KernelConditionViolated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ChopconeError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
