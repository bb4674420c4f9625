"""Command-line front end.  Output is JSON with sorted keys unless --table is given.

Exit codes: 0 ok, 1 diagnostic, 2 resource cap hit (partial report).
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys

from . import blowup, curve, groups, jetspace, vfield
from .config import ConfigError, RunConfig, parse_caps
from .curve import CurveParam, TangentDirection
from .diffeo import DiffeoError, FormalDiffeo
from .groups import GeneratedGroup, GroupError
from .parser import EvalError, ParseError, evaluate, parse_input
from .scalar import coerce
from .series import SeriesError
from .vfield import FormalVectorField, VectorFieldError

EXIT_OK, EXIT_DIAG, EXIT_CAP = 0, 1, 2

# subcommand -> expected argument types
SIGNATURES = {
    "intersect": (CurveParam, CurveParam),
    "inp": (CurveParam,),
    "blowup": (CurveParam,),
    "lift": ((FormalDiffeo, FormalVectorField),),
    "act": (FormalDiffeo, CurveParam),
    "exp": (FormalVectorField,),
    "log": (FormalDiffeo,),
    "jet-matrix": ((FormalDiffeo, FormalVectorField),),
    "fd-check": (GeneratedGroup,),
    "ui-probe": (GeneratedGroup, CurveParam),
    "orbit-tree": (GeneratedGroup, CurveParam),
    "derived": (GeneratedGroup,),
}

_NAMES = {
    CurveParam: "curve",
    FormalDiffeo: "diffeomorphism",
    FormalVectorField: "vector field",
    GeneratedGroup: "group",
}


class Diagnostic(Exception):
    def __init__(self, payload):
        self.payload = payload
        super().__init__(payload.get("error", ""))


def _type_name(t):
    if isinstance(t, tuple):
        return " or ".join(_NAMES[x] for x in t)
    return _NAMES[t]


def load_args(cfg: RunConfig, sub, texts):
    sig = SIGNATURES[sub]
    if len(texts) != len(sig):
        raise Diagnostic({"error": f"{sub} takes {len(sig)} input(s), got {len(texts)}"})
    out = []
    for k, (text, want) in enumerate(zip(texts, sig), start=1):
        try:
            v = evaluate(parse_input(text), cfg.trunc)
        except (ParseError, EvalError) as exc:
            raise Diagnostic({**exc.to_json(), "argument": k}) from exc
        if not isinstance(v, want):
            raise Diagnostic({"error": f"argument {k} must be a {_type_name(want)}", "argument": k})
        out.append(v)
    return out


def _direction(cfg, default=(0, 1)):
    a, b = cfg.direction if cfg.direction is not None else default
    return TangentDirection(a, b)


def run_command(cfg: RunConfig, sub: str, values):
    """Evaluate one subcommand; returns (report dict, exit code)."""
    if sub == "intersect":
        a, b = values
        rep = {}
        if cfg.method in ("order", "both"):
            rep["order"] = curve.intersect_order(a, b).to_json()
        if cfg.method in ("noether", "both"):
            rep["noether"] = blowup.intersect_noether(a, b, cfg.depth).to_json()
        return rep, EXIT_OK
    if sub == "inp":
        seq = blowup.near_points(values[0], cfg.depth, partial=True)
        rep = seq.to_json()
        rep["depth"] = cfg.depth
        return rep, EXIT_OK
    if sub == "blowup":
        g = values[0]
        p, h = blowup.strict_transform(g)
        return {"multiplicity": g.multiplicity().to_json(), "point": p.to_json(), "transform": h.format()}, EXIT_OK
    if sub == "lift":
        obj = values[0]
        d = _direction(cfg)
        if isinstance(obj, FormalDiffeo):
            out = blowup.lift_diffeo(obj, d)
        else:
            out = blowup.lift_vfield(obj, d)
        return {"direction": d.format(), "lift": out.format(), "trunc": out.trunc}, EXIT_OK
    if sub == "act":
        phi, g = values
        return {"curve": curve.act(phi, g).format()}, EXIT_OK
    if sub == "exp":
        return {"diffeo": values[0].exp().format()}, EXIT_OK
    if sub == "log":
        return {"vfield": vfield.log_diffeo(values[0]).format()}, EXIT_OK
    if sub == "jet-matrix":
        obj = values[0]
        if isinstance(obj, FormalDiffeo):
            return jetspace.project_diffeo(obj, cfg.jet).to_json(), EXIT_OK
        return jetspace.project_vfield(obj, cfg.jet).to_json(), EXIT_OK
    if sub == "fd-check":
        r = groups.fd_check(values[0], cfg.jet, cfg.ball, cfg.caps)
        return r.to_json(), EXIT_OK if r.complete else EXIT_CAP
    if sub == "ui-probe":
        r = groups.ui_probe(values[0], values[1], cfg.ball, cfg.caps)
        return r.to_json(), EXIT_OK if r.complete else EXIT_CAP
    if sub == "orbit-tree":
        r = groups.orbit_prefix_tree(values[0], values[1], cfg.ball, cfg.depth, cfg.caps)
        return r.to_json(), EXIT_OK if r.complete else EXIT_CAP
    if sub == "derived":
        G = values[0]
        H = groups.derived_sample(G, cfg.series, cfg.ball, cfg.caps)
        rep = {
            "series": cfg.series,
            "L": cfg.ball,
            "generators": {n: g.format() for n, g in zip(H.names, H.generators)},
            "words": H.provenance,
            "classification": groups.classification_report(H),
            "complete": G.last_complete,
        }
        return rep, EXIT_OK if G.last_complete else EXIT_CAP
    raise Diagnostic({"error": f"unknown subcommand {sub!r}"})


_DOMAIN_ERRORS = (
    SeriesError, DiffeoError, VectorFieldError, curve.CurveError, blowup.BlowupError,
    GroupError, jetspace.JetError, ConfigError, ZeroDivisionError,
)


def execute(cfg, sub, texts):
    try:
        values = load_args(cfg, sub, texts)
        return run_command(cfg, sub, values)
    except Diagnostic as d:
        return d.payload, EXIT_DIAG
    except _DOMAIN_ERRORS as exc:
        return {"error": str(exc) or type(exc).__name__}, EXIT_DIAG


def dumps(rep):
    return json.dumps(rep, sort_keys=True, separators=(",", ":"))


def render_table(sub, rep):
    if "error" in rep:
        return "error: " + rep["error"]
    if sub == "inp" and "points" in rep:
        lines = ["k  mult  point      transform"]
        for k, (m, p, g) in enumerate(zip(rep["mults"], rep["points"], rep["transforms"]), start=1):
            lines.append(f"{k:<2} {m:<5} chart{p['chart']}:{p['coord']:<5} {g}")
        if rep["exhausted"]:
            lines.append("(truncation exhausted before the requested depth)")
        return "\n".join(lines)
    width = max((len(k) for k in rep), default=0)
    return "\n".join(f"{k:<{width}}  {json.dumps(v, sort_keys=True)}" for k, v in sorted(rep.items()))


def _parse_direction(text):
    a, sep, b = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("direction is a:b for the line a*x + b*y = 0")
    try:
        return parse_scalar(a), parse_scalar(b)
    except (ParseError, EvalError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def parse_scalar(text):
    return coerce(evaluate(parse_input(text)))  # TypeError for non-scalars


def build_parser():
    p = argparse.ArgumentParser(prog="fdui", description="Exact computations with formal plane germs.")
    p.add_argument("--trunc", type=int, default=24, help="working truncation N")
    p.add_argument("--depth", type=int, default=12, help="blow-up depth d")
    p.add_argument("--ball", type=int, default=3, help="word-ball radius L")
    p.add_argument("--jet", type=int, default=1, help="jet level k")
    p.add_argument("--method", choices=["order", "noether", "both"], default="both")
    p.add_argument("--series", type=int, default=1, help="derived-series depth")
    p.add_argument("--caps", default="", help="e.g. words=20000,seconds=60,witnesses=32")
    p.add_argument("--direction", type=_parse_direction, default=None, help="a:b for the line a*x + b*y = 0")
    p.add_argument("--table", action="store_true", help="human-readable output")
    p.add_argument("command", choices=sorted(SIGNATURES) + ["batch"])
    p.add_argument("inputs", nargs="*", help="expressions, or a command file for batch")
    return p


def _config(ns):
    return RunConfig(
        trunc=ns.trunc, depth=ns.depth, ball=ns.ball, jet=ns.jet, method=ns.method,
        caps=parse_caps(ns.caps), series=ns.series, direction=ns.direction, table=ns.table,
    )


def _emit(cfg, sub, rep, out):
    print(render_table(sub, rep) if cfg.table else dumps(rep), file=out)


def run_batch(parser, base_ns, path, out):
    """One command per line (same syntax as the command line); blank and # lines skipped."""
    worst = EXIT_OK
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                ns = parser.parse_intermixed_args(shlex.split(line), namespace=argparse.Namespace(**vars(base_ns)))
                if ns.command == "batch":
                    raise ConfigError("nested batch")
                cfg = _config(ns)
                rep, code = execute(cfg, ns.command, ns.inputs)
            except (ConfigError, GroupError, ValueError, SystemExit) as exc:
                cfg, rep, code = _config(base_ns), {"error": f"line {lineno}: {exc}"}, EXIT_DIAG
                ns = base_ns
            _emit(cfg, ns.command, rep, out)
            worst = max(worst, code)
    return worst


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    ns = parser.parse_intermixed_args(argv)
    try:
        cfg = _config(ns)
    except (ConfigError, GroupError) as exc:
        print(dumps({"error": str(exc)}), file=out)
        return EXIT_DIAG
    if ns.command == "batch":
        if len(ns.inputs) != 1:
            print(dumps({"error": "batch takes one command file"}), file=out)
            return EXIT_DIAG
        try:
            return run_batch(parser, ns, ns.inputs[0], out)
        except OSError as exc:
            print(dumps({"error": str(exc)}), file=out)
            return EXIT_DIAG
    rep, code = execute(cfg, ns.command, ns.inputs)
    _emit(cfg, ns.command, rep, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
