"""``mikado`` command line: systems, bases, orders, lifts and positivity checks.

Exit status: 0 when nothing failed, 1 on a theorem violation or failed
certificate, 2 on configuration or computation errors.  Evidence-kind
outcomes never change the exit status.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Callable

from . import biclosed as bc
from .config import RunConfig, load_file, parse_biclosed_spec
from .coxeter import ConfigError
from .hecke import H_BASIS, expand_in_basis, hecke_algebra
from .lifts import TwistedT, eval_hecke, lift, lift_all, lift_signs_roots, parse_braid, t_twisted
from .positivity import STATEMENTS, PositivityReport, SweepSpec, run_statement, sweep

EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2


class Output:
    """A command result renderable in every supported format."""

    def __init__(self, data: dict, text: str, rows: list[list] | None = None,
                 header: list[str] | None = None, dot: str | None = None, failed: bool = False):
        self.data = data
        self.text = text
        self.rows = rows
        self.header = header
        self.dot = dot
        self.failed = failed

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=2, sort_keys=True) + "\n"
        if fmt == "text":
            return self.text.rstrip("\n") + "\n"
        if fmt == "csv":
            if self.rows is None:
                raise ConfigError("this command has no CSV output")
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            if self.header:
                w.writerow(self.header)
            w.writerows(self.rows)
            return buf.getvalue()
        if fmt == "dot":
            if self.dot is None:
                raise ConfigError("DOT output is only available for 'order'")
            return self.dot
        raise ConfigError(f"unknown format {fmt!r}")


def _table(h) -> list[list[str]]:
    if isinstance(h, dict):
        items = sorted(h.items(), key=lambda kv: kv[0].sort_key())
    else:
        items = h.items()
    return [[str(x), str(p)] for x, p in items]


def _aligned(rows: list[list[str]], indent: str = "  ") -> list[str]:
    if not rows:
        return [indent + "0"]
    width = max(len(r[0]) for r in rows)
    return [f"{indent}{a:<{width}}  {b}" for a, b in rows]


def _need_radius(cfg: RunConfig, cmd: str) -> int:
    if cfg.radius is None:
        raise ConfigError(f"'{cmd}' needs --radius (or 'radius' in the config file)")
    return cfg.radius


def _biclosed(cfg: RunConfig, args) -> bc.BiclosedSet:
    spec = getattr(args, "A", None)
    if spec is not None:
        if spec in cfg.biclosed:
            return cfg.biclosed[spec]
        return parse_biclosed_spec(cfg.system, spec)
    if len(cfg.biclosed) == 1:
        return next(iter(cfg.biclosed.values()))
    if not cfg.biclosed:
        return bc.empty_set(cfg.system)
    raise ConfigError(f"several biclosed sets configured ({', '.join(cfg.biclosed)}); choose one with --A")


def _element(cfg: RunConfig, text: str):
    try:
        return cfg.system.element(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


# -- commands -------------------------------------------------------------------


def cmd_group(cfg: RunConfig, args) -> Output:
    d = cfg.system.describe()
    d["finite"] = cfg.system.is_finite()
    lines = [f"rank:      {d['rank']}", f"generators: {' '.join(d['generators'])}", "coxeter matrix:"]
    lines += ["  " + " ".join(f"{str(x):>3}" for x in row) for row in d["coxeter_matrix"]]
    lines.append("cartan entries (a_ij):")
    lines += ["  " + " ".join(f"{x:>3}" for x in row) for row in d["cartan"]]
    lines.append(f"finite:    {d['finite']}")
    lines.append("valid:     True")
    rows = [[k, json.dumps(v)] for k, v in sorted(d.items())]
    return Output(d, "\n".join(lines), rows, ["key", "value"])


def cmd_ball(cfg: RunConfig, args) -> Output:
    L = _need_radius(cfg, "ball")
    elems = cfg.system.ball(L)
    counts = [0] * (L + 1)
    for w in elems:
        counts[w.length] += 1
    data = {"radius": L, "size": len(elems), "counts_by_length": counts,
            "elements": [{"word": str(w), "length": w.length} for w in elems]}
    text = [f"ball of radius {L}: {len(elems)} elements", "by length: " + " ".join(map(str, counts))]
    text += [f"  {w.length:>3}  {w}" for w in elems]
    return Output(data, "\n".join(text), [[str(w), w.length] for w in elems], ["word", "length"])


def cmd_kl(cfg: RunConfig, args) -> Output:
    w = _element(cfg, args.w)
    alg = hecke_algebra(cfg.system)
    cp, c = alg.cprime(w), alg.c(w)
    tables = {
        "cprime_T": _table(cp),
        "cprime_H": _table(expand_in_basis(cp, H_BASIS)),
        "c_T": _table(c),
        "c_H": _table(expand_in_basis(c, H_BASIS)),
    }
    labels = {"cprime_T": "C' in T basis", "cprime_H": "C' in H basis", "c_T": "C in T basis", "c_H": "C in H basis"}
    lines = [f"w = {w} (length {w.length})"]
    for k, rows in tables.items():
        lines.append(labels[k] + ":")
        lines += _aligned(rows)
    rows = [[k, x, p] for k, tab in tables.items() for x, p in tab]
    return Output({"w": str(w), **tables}, "\n".join(lines), rows, ["table", "element", "coefficient"])


def cmd_lift(cfg: RunConfig, args) -> Output:
    if args.eval is not None:
        beta = parse_braid(cfg.system, args.eval)
        h = eval_hecke(beta)
        data = {"braid": str(beta), "image": str(beta.image()), "hecke_T": _table(h)}
        lines = [f"braid: {beta}", f"image: {beta.image()}", "value in T basis:"] + _aligned(_table(h))
        return Output(data, "\n".join(lines), _table(h), ["element", "coefficient"])
    if args.word is None:
        raise ConfigError("'lift' needs an element word or --eval BRAID")
    x = _element(cfg, args.word)
    A = _biclosed(cfg, args)
    beta = lift(x, A)
    roots = lift_signs_roots(cfg.system, x.reduced_word)
    letters = [{"generator": cfg.system.names[g], "sign": e, "root": list(r)}
               for (g, e), r in zip(beta.letters, roots)]
    data = {"x": str(x), "A": A.describe(), "braid": str(beta), "sign_sum": beta.sign_sum(),
            "twisted_length": bc.twisted_length(A, x), "letters": letters}
    if args.all:
        data["all_reduced_words"] = [str(b) for b in lift_all(x, A)]
    lines = [str(beta)]
    if args.verbose or args.all:
        lines += [f"  {d['generator']:<4} {d['sign']:+d}  root {tuple(d['root'])}" for d in letters]
        lines.append(f"  sign sum {beta.sign_sum()} = l_A({x})")
        for b in data.get("all_reduced_words", []):
            lines.append(f"  {b}")
    rows = [[d["generator"], d["sign"], " ".join(map(str, d["root"]))] for d in letters]
    return Output(data, "\n".join(lines), rows, ["generator", "sign", "root"])


def cmd_twisted_basis(cfg: RunConfig, args) -> Output:
    x = _element(cfg, args.x)
    A = _biclosed(cfg, args)
    h = t_twisted(x, A)
    data = {"x": str(x), "A": A.describe(), "braid": str(lift(x, A)), "hecke_T": _table(h)}
    lines = [f"T_({x}, {A.describe()}) = {lift(x, A)}", "value in T basis:"] + _aligned(_table(h))
    if args.expand is not None:
        w = _element(cfg, args.expand)
        coeffs = _table(expand_in_basis(hecke_algebra(cfg.system).cprime(w), TwistedT(A)))
        data["expand_cprime"] = {"w": str(w), "coefficients": coeffs}
        lines += [f"C'_{w} in the T_(., A) basis:"] + _aligned(coeffs)
    return Output(data, "\n".join(lines), _table(h), ["element", "coefficient"])


def cmd_order(cfg: RunConfig, args) -> Output:
    L = _need_radius(cfg, "order")
    A = _biclosed(cfg, args)
    order = bc.twisted_order_on_ball(A, L)
    hasse = bc.hasse_diagram(order)
    nodes = sorted(order.nodes, key=lambda w: (order.nodes[w]["twisted_length"], w.sort_key()))
    edges = sorted(((str(u), str(v)) for u, v in hasse.edges), key=lambda e: (e[0], e[1]))
    data = {"A": A.describe(), "radius": L,
            "nodes": [{"word": str(w), "length": w.length, "twisted_length": order.nodes[w]["twisted_length"]}
                      for w in nodes],
            "covers": [list(e) for e in edges]}
    lines = [f"twisted order for {A.describe()} on ball {L}"]
    lines += [f"  {order.nodes[w]['twisted_length']:>4}  {w}" for w in nodes]
    lines.append("covers:")
    lines += [f"  {u} < {v}" for u, v in edges]
    dot = bc.order_to_dot(order)
    return Output(data, "\n".join(lines), [list(e) for e in edges], ["lower", "upper"], dot=dot)


def cmd_enumerate(cfg: RunConfig, args) -> Output:
    L = _need_radius(cfg, "enumerate")
    A = _biclosed(cfg, args)
    try:
        s = cfg.system.index(args.s)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    part = bc.s_stable_part(cfg.system.ball(L), s)
    seq = bc.as_compatible_enumeration(A, s, part)
    data = {"A": A.describe(), "s": args.s, "radius": L,
            "enumeration": [{"position": i, "word": str(x), "twisted_length": bc.twisted_length(A, x)}
                            for i, x in enumerate(seq)]}
    lines = [f"({A.describe()}, {args.s})-compatible enumeration of the {args.s}-stable part of ball {L}"]
    lines += [f"  {d['position']:>3}  {d['word']:<12} {d['twisted_length']}" for d in data["enumeration"]]
    rows = [[d["position"], d["word"], d["twisted_length"]] for d in data["enumeration"]]
    return Output(data, "\n".join(lines), rows, ["position", "word", "twisted_length"])


def _report_output(rep: PositivityReport) -> Output:
    return Output(rep.to_dict(), rep.to_text(), [rep.summary_row()],
                  ["statement", "kind", "system", "parameters", "verdict", "violations"],
                  failed=rep.is_failure)


def cmd_verify(cfg: RunConfig, args) -> Output:
    if args.statement not in STATEMENTS:
        raise ConfigError(f"unknown statement id {args.statement!r}; known: {', '.join(STATEMENTS)}")
    params: dict[str, Any] = {}
    for k in ("w", "x", "y", "side"):
        v = getattr(args, k)
        if v is not None:
            params[k] = v
    if args.statement != "inverse-positivity":
        params["A"] = _biclosed(cfg, args).to_config()
    required = {"threeparam": ["w"], "inverse-positivity": ["x", "y"], "doubletwist": ["w", "y"], "conjecture": ["x"]}
    missing = [k for k in required[args.statement] if k not in params]
    if missing:
        raise ConfigError([f"'{args.statement}' needs --{k}" for k in missing])
    rep = run_statement(cfg.system, args.statement, params)
    if rep.error:
        raise ConfigError(rep.error)
    return _report_output(rep)


def cmd_sweep(cfg: RunConfig, args) -> Output:
    sw = dict(cfg.params.get("sweep") or {})
    for key in ("statements", "families"):
        val = getattr(args, key)
        if val:
            sw[key] = val.split(",")
    if args.limit is not None:
        sw["limit"] = args.limit
    if args.twist_radius is not None:
        sw["twist_radius"] = args.twist_radius
    radius = sw.pop("radius", None)
    if cfg.radius is not None:
        radius = cfg.radius
    if radius is None:
        raise ConfigError("'sweep' needs --radius")
    unknown = set(sw) - {"statements", "families", "limit", "twist_radius"}
    if unknown:
        raise ConfigError([f"unknown sweep key {k!r}" for k in sorted(unknown)])
    families = list(sw.get("families", ["inversion"]))
    configured = list(cfg.biclosed.values())
    if args.A:
        configured.append(_biclosed(cfg, args))
    if configured and "configured" not in families:
        families.append("configured")
    spec = SweepSpec(cfg.system, radius, statements=tuple(sw.get("statements", tuple(STATEMENTS))),
                     families=tuple(families), configured=tuple(configured),
                     twist_radius=sw.get("twist_radius"), limit=sw.get("limit"))
    res = sweep(spec, jobs=args.jobs)
    errors = [r for r in res.reports if r.error]
    data = {"summary": res.summary()}
    if args.full:
        data["reports"] = [r.to_dict() for r in res.reports]
    else:
        data["failures"] = [r.to_dict() for r in res.failures]
    rows = [r.summary_row() for r in res.reports]
    out = Output(data, res.to_text(), rows, ["statement", "kind", "system", "parameters", "verdict", "violations"],
                 failed=not res.ok)
    out.has_errors = bool(errors)
    return out


COMMANDS: dict[str, Callable[[RunConfig, Any], Output]] = {
    "group": cmd_group,
    "ball": cmd_ball,
    "kl": cmd_kl,
    "lift": cmd_lift,
    "twisted-basis": cmd_twisted_basis,
    "order": cmd_order,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", "-c", help="JSON or YAML run configuration")
    common.add_argument("--system", "-S", help="preset name or path to a system file")
    common.add_argument("--radius", "-L", type=int, help="ball radius")
    common.add_argument("--A", "-A", dest="A",
                        help="biclosed set: configured name, empty, all, N:<word>, co-N:<word>, half:<c1,c2,...> or JSON")
    common.add_argument("--format", "-f", choices=("json", "csv", "text", "dot"), help="output format")
    common.add_argument("--output", "-o", help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(prog="mikado", description="Twisted Hecke algebra bases and positivity checks.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("group", parents=[common], help="validate and summarise a Coxeter system")
    sub.add_parser("ball", parents=[common], help="list the elements of a length ball")
    k = sub.add_parser("kl", parents=[common], help="canonical basis elements C'_w and C_w")
    k.add_argument("w")
    li = sub.add_parser("lift", parents=[common], help="signed braid lift x_A, or evaluate a braid word")
    li.add_argument("word", nargs="?")
    li.add_argument("--eval", metavar="BRAID", help="evaluate a braid word such as 't s^-1 r'")
    li.add_argument("--all", action="store_true", help="lift every reduced word")
    li.add_argument("--verbose", "-v", action="store_true")
    tb = sub.add_parser("twisted-basis", parents=[common], help="T_{x,A} in the standard basis")
    tb.add_argument("x")
    tb.add_argument("--expand", metavar="W", help="also expand C'_W in the T_(., A) basis")
    sub.add_parser("order", parents=[common], help="twisted Bruhat order on a ball")
    en = sub.add_parser("enumerate", parents=[common], help="(A, s)-compatible enumeration")
    en.add_argument("--s", required=True, help="generator name")
    v = sub.add_parser("verify", parents=[common], help="check one statement")
    v.add_argument("statement", help=", ".join(STATEMENTS))
    v.add_argument("--w")
    v.add_argument("--x")
    v.add_argument("--y")
    v.add_argument("--side", choices=("left", "right"))
    sw = sub.add_parser("sweep", parents=[common], help="check statements over a family of parameters")
    sw.add_argument("--statements", help="comma separated statement ids")
    sw.add_argument("--families", help="comma separated: inversion, complement, configured")
    sw.add_argument("--limit", type=int, help="first N tasks per statement")
    sw.add_argument("--twist-radius", type=int, help="ball radius for y in doubletwist")
    sw.add_argument("--jobs", "-j", type=int, default=1)
    sw.add_argument("--full", action="store_true", help="include every report in JSON output")
    return p


_DEFAULT_FORMAT = {"order": "dot"}


def _load(args) -> RunConfig:
    file_data: dict = {}
    if args.config:
        loaded = load_file(args.config)
        if not isinstance(loaded, dict):
            raise ConfigError(f"{args.config}: top level must be a mapping")
        file_data = loaded
    system = args.system
    if system is not None and (system.endswith((".json", ".yaml", ".yml"))):
        system = load_file(system)
    fmt = args.format
    if fmt is None and "format" not in file_data:
        fmt = _DEFAULT_FORMAT.get(args.command, "text")
    return RunConfig.build(file_data, {"system": system, "radius": args.radius, "format": fmt,
                                       "output": args.output})


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
        out = COMMANDS[args.command](cfg, args)
        text = out.render(cfg.format)
    except ConfigError as exc:
        for e in exc.errors:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except bc.DepthExceeded as exc:
        print(f"error: depth exceeded: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if getattr(out, "has_errors", False):
        return EXIT_ERROR
    return EXIT_VIOLATION if out.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
