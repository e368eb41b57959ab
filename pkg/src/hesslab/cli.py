"""Command line surface.

Every library operation is exposed as a subcommand; `--json` switches the
output to JSON. Exit codes: 0 success, 1 usage or input error, 2 when the
result is Inconclusive. Defaults come from built-ins, then a
`hessenberg-lab.toml`-style key=value config file, then the environment
variable HESSLAB_PRECISION_BITS, then flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace

from .exact import (
    ExactError,
    IntVector,
    matrix_to_json,
    parse_matrix,
    parse_vector,
)
from .hessenberg import (
    FamilyPoint,
    HessType,
    hessenberg_complexity,
    reduce_to_perfect,
)
from .mdchar import md_characteristic, md_form3
from .numberfield import PrecisionExhausted
from .reducedness import (
    Bounded,
    Sail,
    fingerprint,
    is_reduced,
    minimize_md_bounded,
)
from .sail3 import Inconclusive, compute_sail, verify_dirichlet_element
from .gauss2 import classify_sl2, sail_period
from . import atlas as atlas_mod


@dataclass(frozen=True)
class Config:
    bound: int = 1000
    precision_bits: int = 4096
    region: int = 40_000_000
    window: int = 20
    window4: int = 15
    fmt: str = "PPM"
    palette: dict = None


def _load_config_file(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ExactError("config line %d: expected key=value" % ln)
            key, val = (s.strip() for s in line.split("=", 1))
            out[key] = val.strip("\"'")
    return out


def load_config(path=None) -> Config:
    cfg = Config()
    if path is None and os.path.exists("hessenberg-lab.toml"):
        path = "hessenberg-lab.toml"
    if path:
        raw = _load_config_file(path)
        palette = {}
        for key, val in raw.items():
            if key in ("bound", "precision_bits", "region", "window", "window4"):
                cfg = replace(cfg, **{key: int(val)})
            elif key == "format":
                cfg = replace(cfg, fmt=val)
            elif key.startswith("palette."):
                palette[key.split(".", 1)[1]] = tuple(
                    int(x) for x in val.split(","))
            else:
                raise ExactError("unknown config key %r" % key)
        if palette:
            cfg = replace(cfg, palette=palette)
    env_bits = os.environ.get("HESSLAB_PRECISION_BITS")
    if env_bits:
        cfg = replace(cfg, precision_bits=int(env_bits))
    return cfg


def _emit(args, data, text):
    if getattr(args, "json", False):
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _matrix_str(m):
    return "; ".join(" ".join(str(x) for x in r) for r in m.rows)


def _strategy(args, cfg):
    name = getattr(args, "strategy", "sail")
    if name == "bounded":
        return Bounded(args.bound if args.bound else cfg.bound)
    return Sail(precision=cfg.precision_bits, region=cfg.region)


def _cmd_reduce(args, cfg):
    m = parse_matrix(args.matrix)
    seed = parse_vector(args.seed)
    h, u = reduce_to_perfect(m, seed)
    _emit(args, {"perfect": matrix_to_json(h), "conjugator": matrix_to_json(u)},
          "perfect: %s\nconjugator: %s" % (_matrix_str(h), _matrix_str(u)))
    return 0


def _cmd_complexity(args, cfg):
    v = hessenberg_complexity(parse_matrix(args.matrix))
    _emit(args, {"complexity": v}, str(v))
    return 0


def _cmd_mdchar(args, cfg):
    m = parse_matrix(args.matrix)
    v = parse_vector(args.vector)
    if v.is_zero():
        raise ExactError("zero vector")
    val = md_characteristic(m, v)
    _emit(args, {"md": val}, str(val))
    return 0


def _cmd_form(args, cfg):
    f = md_form3(parse_matrix(args.matrix))
    _emit(args, {"coeffs": list(f.coeffs)}, str(f))
    return 0


def _cmd_minimize(args, cfg):
    m = parse_matrix(args.matrix)
    bound = args.bound if args.bound else cfg.bound
    best, wits = minimize_md_bounded(m, bound)
    _emit(args,
          {"min": best, "bound": bound, "witnesses": [list(w) for w in wits]},
          "min %d within bound %d at %s" % (
              best, bound, ", ".join(str(tuple(w)) for w in wits)))
    return 0


def _cmd_verdict(args, cfg):
    m = parse_matrix(args.matrix)
    verdict = is_reduced(m, _strategy(args, cfg))
    _emit(args, verdict.to_json(), _verdict_text(verdict))
    return 2 if verdict.status == "Inconclusive" else 0


def _verdict_text(v):
    if v.status == "Reduced":
        extra = " (bound %d)" % v.bound if v.certificate == "BoundChecked" else ""
        return "Reduced [%s]%s" % (v.certificate, extra)
    if v.status == "Nonreduced":
        return "Nonreduced, witness %s" % (tuple(v.witness),)
    return "Inconclusive: %s" % v.reason


def _cmd_fingerprint(args, cfg):
    m = parse_matrix(args.matrix)
    fp = fingerprint(m, precision=cfg.precision_bits, region=cfg.region)
    text = ["min MD value %d" % fp.min_value]
    text += [_matrix_str(h) for h in fp.matrices]
    _emit(args, fp.to_json(), "\n".join(text))
    return 0


def _cmd_sail(args, cfg):
    m = parse_matrix(args.matrix)
    sail = compute_sail(m, bits=cfg.precision_bits, point_cap=cfg.region)
    dump = sail.to_json()
    lines = []
    for entry in dump:
        lines.append("%s x=[%s,%s] y=[%s,%s]%s" % (
            tuple(entry["preimage"]), entry["x"][0], entry["x"][1],
            entry["y"][0], entry["y"][1],
            " *" if entry["is_fundamental"] else ""))
    _emit(args, dump, "\n".join(lines))
    return 0


def _cmd_period(args, cfg):
    p = sail_period(parse_matrix(args.matrix))
    _emit(args, {"period": list(p.entries)},
          "(" + ",".join(str(x) for x in p.entries) + ")")
    return 0


def _cmd_classify2(args, cfg):
    cls = classify_sl2(parse_matrix(args.matrix))
    data = cls.to_json()
    if cls.kind == "ComplexSpectrum":
        text = "ComplexSpectrum, canonical %s" % _matrix_str(cls.canonical)
    elif cls.kind == "MultipleEigen":
        text = "MultipleEigen(epsilon=%d, k=%d)" % (cls.epsilon, cls.k)
    else:
        text = "RealSpectrum, period (%s)" % ",".join(
            str(x) for x in cls.period.entries)
    _emit(args, data, text)
    return 0


def _parse_range(text, default):
    """`-20:20,-20:20` -> ((-20,20), (-20,20))."""
    if not text:
        return (-default, default), (-default, default)
    parts = text.split(",")
    if len(parts) != 2:
        raise ExactError("range must look like -20:20,-20:20")
    out = []
    for p in parts:
        lo, hi = p.split(":")
        out.append((int(lo), int(hi)))
    return tuple(out)


def _cmd_atlas(args, cfg):
    t = HessType.parse(args.type)
    anchor = tuple(parse_vector(args.anchor))
    m_range, n_range = _parse_range(args.range, cfg.window)
    cells, counts = atlas_mod.classify_grid(
        t, anchor, m_range, n_range, _strategy(args, cfg), jobs=args.jobs)
    if args.out:
        fmt = "SVG" if args.out.lower().endswith(".svg") else cfg.fmt
        with open(args.out, "wb") as fh:
            fh.write(atlas_mod.render_grid(cells, fmt, cfg.palette))
    data = {"window": {"m": list(m_range), "n": list(n_range)},
            "counts": counts, "cells": [c.to_json() for c in cells]}
    if args.json and args.json is not True:
        with open(args.json, "w") as fh:
            json.dump(data, fh, sort_keys=True)
        args = argparse.Namespace(**{**vars(args), "json": False})
    _emit(args, data, "\n".join(
        "%s %d" % (k, v) for k, v in sorted(counts.items())))
    return 0


def _cmd_atlas4(args, cfg):
    bound = args.bound if args.bound else cfg.window4
    cells = atlas_mod.classify_family_4d(bound)
    counts = {}
    for c in cells:
        counts[c.cls] = counts.get(c.cls, 0) + 1
    data = {"bound": bound, "counts": counts,
            "cells": [c.to_json() for c in cells]}
    if args.json and args.json is not True:
        with open(args.json, "w") as fh:
            json.dump(data, fh, sort_keys=True)
        args = argparse.Namespace(**{**vars(args), "json": False})
    _emit(args, data, "\n".join(
        "%s %d" % (k, v) for k, v in sorted(counts.items())))
    return 0


def _cmd_ray(args, cfg):
    t = HessType.parse(args.type)
    anchor = tuple(parse_vector(args.anchor))
    start = tuple(parse_vector(args.start))
    direction = tuple(parse_vector(args.dir))
    entries, last = atlas_mod.ray_scan(
        t, anchor, start, direction, args.tmax, _strategy(args, cfg))
    data = {"last_nonreduced": last,
            "entries": [{"t": k, "class": cls,
                         "verdict": v.to_json() if v else None}
                        for k, cls, v in entries]}
    lines = ["t=%d %s%s" % (k, cls, " " + _verdict_text(v) if v else "")
             for k, cls, v in entries]
    lines.append("last nonreduced: %s" % last)
    _emit(args, data, "\n".join(lines))
    return 0


def _cmd_verify_dirichlet(args, cfg):
    m = parse_matrix(args.matrix)
    x = parse_matrix(args.element)
    ok = verify_dirichlet_element(m, x)
    _emit(args, {"member": ok}, "member" if ok else "not a member")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hesslab",
        description="Exact Gauss reduction theory for SL(n,Z) matrices")
    ap.add_argument("--config", help="key=value config file")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--json", nargs="?", const=True, default=False,
                       help="JSON output (atlas subcommands accept a path)")
        return p

    p = add("reduce", _cmd_reduce, help="perfect Hessenberg form of a matrix")
    p.add_argument("matrix")
    p.add_argument("--seed", default="1,0,0")
    p = add("complexity", _cmd_complexity, help="Hessenberg complexity")
    p.add_argument("matrix")
    p = add("mdchar", _cmd_mdchar, help="MD-characteristic at a vector")
    p.add_argument("matrix")
    p.add_argument("--vector", required=True)
    p = add("form", _cmd_form, help="associated cubic MD form (n=3)")
    p.add_argument("matrix")
    p = add("minimize", _cmd_minimize, help="minimum MD value within a box")
    p.add_argument("matrix")
    p.add_argument("--bound", type=int)
    p = add("verdict", _cmd_verdict, help="reducedness verdict")
    p.add_argument("matrix")
    p.add_argument("--strategy", choices=("sail", "bounded"), default="sail")
    p.add_argument("--bound", type=int)
    p = add("fingerprint", _cmd_fingerprint, help="conjugacy fingerprint")
    p.add_argument("matrix")
    p = add("sail", _cmd_sail, help="Klein-Voronoi sail vertices")
    p.add_argument("matrix")
    p = add("period", _cmd_period, help="2D characteristic-sequence period")
    p.add_argument("matrix")
    p = add("classify2", _cmd_classify2, help="SL(2,Z) conjugacy class")
    p.add_argument("matrix")
    p = add("atlas", _cmd_atlas, help="classify a 3x3 family window")
    p.add_argument("--type", required=True)
    p.add_argument("--anchor", required=True)
    p.add_argument("--range", help="-20:20,-20:20")
    p.add_argument("--strategy", choices=("sail", "bounded"), default="sail")
    p.add_argument("--bound", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write a PPM/SVG rendering here")
    p = add("atlas4", _cmd_atlas4, help="classify the fixed 4D family cube")
    p.add_argument("--bound", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p = add("ray", _cmd_ray, help="verdicts along an NRS-ray")
    p.add_argument("--type", required=True)
    p.add_argument("--anchor", required=True)
    p.add_argument("--start", required=True)
    p.add_argument("--dir", required=True)
    p.add_argument("--tmax", type=int, default=30)
    p.add_argument("--strategy", choices=("sail", "bounded"), default="sail")
    p.add_argument("--bound", type=int)
    p = add("verify-dirichlet", _cmd_verify_dirichlet,
            help="Dirichlet group membership check")
    p.add_argument("matrix")
    p.add_argument("element")
    return ap


_VALUE_OPTS = ("--range", "--start", "--dir", "--vector", "--seed", "--anchor")


def _join_negative_values(argv):
    """Merge `--range -3:3,-3:3` into `--range=-3:3,-3:3` so argparse does
    not mistake the value for an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            val = next(it, None)
            if val is None:
                out.append(tok)
            else:
                out.append("%s=%s" % (tok, val))
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = _join_negative_values(argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return 1 if ex.code not in (0, None) else 0
    try:
        cfg = load_config(args.config)
        return args.fn(args, cfg)
    except (Inconclusive, PrecisionExhausted) as ex:
        print("Inconclusive: %s" % ex, file=sys.stderr)
        return 2
    except (ExactError, OSError) as ex:
        print("error: %s" % ex, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
