"""Command-line frontend: ``qlr check | eval | dist | bound | verify | counterexample``.

Exit codes: 0 success, 1 a check or assertion failed (including type errors),
2 usage or IO error.  Defaults come from a JSON file named by ``$QLR_CONFIG``
(or ``--config``); command-line flags override it.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

from . import finite, suites
from .errors import ParseError, QlrError, TypingError, UnsupportedOperation
from .lipschitz import denoteLL, distanceLL, localContextualityBound
from .parser import parse
from .quantale import Interval
from .semantics import (FIG1_RADII, Grid, contextuality_bound, denote, distance, reproduce_fig1,
                        rows_to_csv)
from .syntax import Arrow, Prod, RealT, Term, Type, apps, typecheck
from .valuation import liftedM, liftedP

CONFIG_ENV = "QLR_CONFIG"
MODELS = ("q", "qr", "pv", "ll")
FORMATS = ("text", "json", "csv")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    model: str = "q"
    resolution: int = 1001
    radii: tuple[float, ...] = (0.1,)
    tol: float = 1e-9
    seed: int = 0
    format: str = "text"
    max_size: int = 3
    jobs: int = 1
    probes: int = 64

    def __post_init__(self):
        if self.model not in MODELS:
            raise UsageError(f"model must be one of {', '.join(MODELS)}, got {self.model!r}")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")
        if int(self.resolution) < 3:
            raise UsageError("grid resolution must be at least 3")
        if not self.tol > 0:
            raise UsageError("tolerance must be positive")
        if not self.radii or any(not r >= 0 for r in self.radii):
            raise UsageError("radii must be a non-empty list of non-negative numbers")

    @property
    def grid(self) -> Grid:
        return Grid(int(self.resolution))

    def suite_config(self) -> suites.SuiteConfig:
        return suites.SuiteConfig(seed=self.seed, probes=self.probes, tol=self.tol,
                                  grid=self.grid, max_size=self.max_size)


_FIELDS = {f for f in RunConfig.__dataclass_fields__}


def load_config(path: str | None) -> dict:
    """Read a JSON config; ``path`` falls back to ``$QLR_CONFIG`` and then to no file."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise OSError(f"cannot read config {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"config {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    unknown = set(data) - _FIELDS
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if "radii" in data:
        data["radii"] = tuple(float(r) for r in data["radii"])
    return data


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Flags beat the config file, which beats the defaults."""
    values = load_config(getattr(args, "config", None))
    for key in _FIELDS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = tuple(flag) if key == "radii" else flag
    return RunConfig(**values)


# --------------------------------------------------------------------------
# helpers


class Diagnostic(Exception):
    """A positioned parse or type error in a named file."""


def read_term(path: str, *, check: bool = True) -> Term:
    """Parse (and unless ``check`` is false, typecheck) the program in ``path``."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise OSError(f"{path}: {e.strerror}") from e
    try:
        t = parse(text)
        if check:
            typecheck(t)
    except (ParseError, TypingError) as e:
        raise Diagnostic(f"{path}:{e}") from None
    return t


def fmt_float(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(round(float(x), 12) + 0.0)


def fmt_value(v, ty: Type) -> str:
    if isinstance(ty, RealT):
        return fmt_float(v)
    if isinstance(ty, Prod):
        return f"({fmt_value(v[0], ty.left)}, {fmt_value(v[1], ty.right)})"
    return f"<function : {ty}>"


def build_value(ty: Type, xs: list[float]):
    """Lay a flat list of reals out along a ground type."""
    it = iter(xs)

    def go(t):
        if isinstance(t, RealT):
            return float(next(it))
        if isinstance(t, Prod):
            return (go(t.left), go(t.right))
        raise UsageError(f"probe points must have a ground type, got {t}")

    try:
        out = go(ty)
    except StopIteration:
        raise UsageError(f"too few coordinates for a point of type {ty}") from None
    if next(it, None) is not None:
        raise UsageError(f"too many coordinates for a point of type {ty}")
    return out


def scalar(d) -> float:
    """Largest coordinate of a ground difference."""
    if isinstance(d, tuple):
        return max(scalar(x) for x in d)
    return float(d)


def emit(cfg: RunConfig, text: str, payload: dict, rows: list[dict] | None = None) -> None:
    if cfg.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    elif cfg.format == "csv" and rows:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _jsonable(x):
    if isinstance(x, float):
        return None if math.isnan(x) else (x if math.isfinite(x) else ("inf" if x > 0 else "-inf"))
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


# --------------------------------------------------------------------------
# commands


def cmd_check(args, cfg: RunConfig) -> int:
    ty = typecheck(read_term(args.file))
    emit(cfg, str(ty), {"command": "check", "file": args.file, "type": str(ty)},
         [{"file": args.file, "type": str(ty)}])
    return 0


def cmd_eval(args, cfg: RunConfig) -> int:
    t = read_term(args.file)
    ty = typecheck(t)
    try:
        argv = [parse(a) for a in args.arg]
    except ParseError as e:
        raise UsageError(f"bad --arg: {e}") from None
    dom = ty
    for i, a in enumerate(argv):
        if not isinstance(dom, Arrow):
            raise UsageError(f"{args.file} has type {ty} and takes {i} argument(s), got {len(argv)}")
        at = typecheck(a)
        if at != dom.dom:
            raise UsageError(f"argument {i + 1} has type {at}, expected {dom.dom}")
        dom = dom.cod
    v = denote(apps(t, *argv))
    out = fmt_value(v, dom)
    emit(cfg, out, {"command": "eval", "file": args.file, "args": list(args.arg),
                    "type": str(dom), "value": out}, [{"value": out}])
    return 0


def _probe_point(ty: Type, at: str) -> object:
    try:
        xs = [float(s) for s in at.split(",")] if at else []
    except ValueError:
        raise UsageError(f"--at expects comma-separated numbers, got {at!r}") from None
    return build_value(ty, xs)


def cmd_dist(args, cfg: RunConfig) -> int:
    t, u = read_term(args.file_a), read_term(args.file_b)
    ty, tu = typecheck(t), typecheck(u)
    if ty != tu:
        raise TypingError(f"terms have different types: {ty} and {tu}")
    radii = cfg.radii
    rows = []
    if isinstance(ty, Arrow):
        x = _probe_point(ty.dom, args.at)
    else:
        x = None
    tv, uv = (denoteLL(t), denoteLL(u)) if cfg.model == "ll" else (denote(t), denote(u))
    for r in radii:
        alpha = build_value(ty.dom, [r] * _dims(ty.dom)) if isinstance(ty, Arrow) else r
        extra = {}
        if cfg.model in ("q", "qr"):
            d = distance(ty, tv, uv, reflexive=cfg.model == "qr", grid=cfg.grid)
            val = d(x, alpha) if x is not None else d
        elif cfg.model == "pv":
            if ty != Arrow(RealT(), RealT()):
                raise UnsupportedOperation(f"model pv measures functions Real -> Real, got {ty}")
            I = Interval(x - r, x + r)
            val = liftedP(tv, uv, x, I, cfg.grid)
            extra["m"] = liftedM(tv, uv, x, I, cfg.grid)
        else:
            d = distanceLL(ty, tv, uv)
            val = d(x) if x is not None else d
        rows.append({"x": args.at, "radius": r, "distance": scalar(val), **extra})
    note = {"q": "d (sampled sup)", "qr": "e = d <= D(f)", "pv": "p (lifted diameter)",
            "ll": "pointwise |f x - g x| (radius ignored)"}[cfg.model]
    text = "\n".join(f"{cfg.model} distance at x={args.at} r={fmt_float(row['radius'])}: "
                     f"{fmt_float(row['distance'])}" for row in rows)
    payload = {"command": "dist", "model": cfg.model, "type": str(ty), "distance_kind": note,
               "grid": {"resolution": cfg.grid.resolution}, "at": args.at,
               "results": [{k: _jsonable(v) for k, v in row.items()} for row in rows]}
    emit(cfg, text, payload, [{k: (fmt_float(v) if isinstance(v, float) else v)
                               for k, v in row.items()} for row in rows])
    return 0


def _dims(ty: Type) -> int:
    if isinstance(ty, Prod):
        return _dims(ty.left) + _dims(ty.right)
    return 1


def _env(pairs: Sequence[str]) -> dict[str, float]:
    env = {}
    for p in pairs:
        name, sep, val = p.partition("=")
        if not sep:
            raise UsageError(f"--env expects name=value, got {p!r}")
        try:
            env[name.strip()] = float(val)
        except ValueError:
            raise UsageError(f"--env value for {name} is not a number") from None
    return env


def cmd_bound(args, cfg: RunConfig) -> int:
    ctx, t, u = read_term(args.ctx, check=False), read_term(args.file_a), read_term(args.file_b)
    env = _env(args.env)
    # the context's inputs sit exactly at their values unless a budget is asked for
    r = args.radii[0] if args.radii else 0.0
    if cfg.model == "ll":
        res = localContextualityBound(ctx, t, u, delta_t=args.delta, env=env, radius=r)
        payload = {"command": "bound", "model": "ll", "radius": r, "delta": args.delta,
                   "gap": res.gap, "status": res.status, "bound": res.bound, "actual": res.actual,
                   "margin": None if res.bound is None else res.bound - res.actual}
        if res.in_regime:
            text = (f"status: {res.status}\nbound: {fmt_float(res.bound)}\n"
                    f"actual: {fmt_float(res.actual)}\nmargin: {fmt_float(res.bound - res.actual)}")
        else:
            text = f"status: {res.status} (gap {fmt_float(res.gap)} > delta {fmt_float(args.delta)})"
        ok = not res.in_regime or res.holds
    elif cfg.model == "q":
        res = contextuality_bound(ctx, t, u, env=env, radius=r, grid=cfg.grid)
        payload = {"command": "bound", "model": "q", "radius": r, "bound": res.bound,
                   "actual": res.actual, "margin": res.bound - res.actual, "holds": res.holds,
                   "grid": {"resolution": cfg.grid.resolution}}
        text = (f"bound: {fmt_float(res.bound)}\nactual: {fmt_float(res.actual)}\n"
                f"margin: {fmt_float(res.bound - res.actual)}")
        ok = res.holds
    else:
        raise UsageError("bound supports the q and ll models")
    payload = {k: _jsonable(v) for k, v in payload.items()}
    emit(cfg, text, payload, [{k: v for k, v in payload.items() if k not in ("command", "grid")}])
    return 0 if ok else 1


def cmd_verify(args, cfg: RunConfig) -> int:
    reports = []
    if args.space:
        for path in args.space:
            try:
                X = finite.loads(Path(path).read_text(), name=Path(path).stem)
            except OSError as e:
                raise OSError(f"{path}: {e.strerror}") from e
            if args.axioms:
                wanted = [a for spec in args.axioms for a in spec.split(",") if a]
                unknown = [a for a in wanted if a not in finite.AXIOMS]
                if unknown:
                    raise UsageError(f"unknown axiom {unknown[0]!r}; known: {', '.join(finite.AXIOMS)}")
                reports.append(finite.check_axioms(X, wanted))
            else:
                reports.append(finite.check_axioms(X))
    names = []
    if args.suite or not args.space:
        try:
            names = suites.expand(s for spec in (args.suite or ["all"]) for s in spec.split(","))
        except KeyError as e:
            known = ", ".join(["all", *sorted(suites.GROUPS), *sorted(suites.SUITES)])
            raise UsageError(f"unknown suite {e.args[0]!r}; known: {known}") from None
        reports += suites.run(names, cfg.suite_config(), jobs=cfg.jobs)
    if args.emit_dir and "fig1" in names:
        out = Path(args.emit_dir)
        out.mkdir(parents=True, exist_ok=True)
        for panel in ("a", "b"):
            rows = [reproduce_fig1(panel, 0.0, r, grid=cfg.grid) for r in FIG1_RADII]
            (out / f"fig1{panel}.csv").write_text(rows_to_csv(rows, which=panel, variant="calibrated",
                                                              grid=cfg.grid))
    ok = all(r.ok for r in reports)
    text = "\n".join(line for r in reports for line in r.lines())
    text += f"\n{'PASS' if ok else 'FAIL'}: {sum(r.ok for r in reports)}/{len(reports)} reports pass"
    payload = {"command": "verify", "ok": ok, "config": _public(cfg),
               "reports": [r.to_json() for r in reports]}
    rows = [{"subject": r.subject, "law": x.law, "passed": str(x.passed).lower(), "checked": x.checked}
            for r in reports for x in r.results]
    emit(cfg, text, payload, rows)
    return 0 if ok else 1


def _public(cfg: RunConfig) -> dict:
    d = asdict(cfg)
    d.pop("jobs")
    d["radii"] = list(d["radii"])
    return d


def cmd_counterexample(args, cfg: RunConfig) -> int:
    radii = cfg.radii if args.radii is not None else FIG1_RADII
    rows = [reproduce_fig1(args.panel, args.x, r, variant=args.variant, grid=cfg.grid) for r in radii]
    if cfg.format == "json":
        payload = {"command": "counterexample", "panel": args.panel, "variant": args.variant,
                   "distance": "d" if args.panel == "a" else "e",
                   "grid": {"resolution": cfg.grid.resolution},
                   "rows": [asdict(r) for r in rows]}
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = rows_to_csv(rows, which=args.panel, variant=args.variant, grid=cfg.grid)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# --------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, *, model: bool = False) -> None:
    p.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--resolution", type=int, help="grid points per sampled axis (>= 3)")
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float)
    if model:
        p.add_argument("--model", choices=MODELS)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qlr", description="Quantitative logical relations for a "
                                 "simply typed lambda calculus over the reals.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="typecheck a program")
    p.add_argument("file")
    _common(p)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("eval", help="evaluate a program, optionally applied to arguments")
    p.add_argument("file")
    p.add_argument("--arg", action="append", default=[], help="argument term, e.g. 0.5 or (1.0, 2.0)")
    _common(p)
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("dist", help="distance between two programs of the same type")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--at", default="0", help="probe point, comma-separated for product types")
    p.add_argument("--radius", dest="radii", type=float, action="append",
                   help="probe radius (repeatable)")
    _common(p, model=True)
    p.set_defaults(run=cmd_dist)

    p = sub.add_parser("bound", help="contextual bound for C[t] against C[u]")
    p.add_argument("ctx")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--radius", dest="radii", type=float, action="append",
                   help="difference budget of the context inputs")
    p.add_argument("--env", action="append", default=[], help="name=value for a free variable")
    p.add_argument("--delta", type=float, default=1.0, help="local regime radius (ll model)")
    _common(p, model=True)
    p.set_defaults(run=cmd_bound)

    p = sub.add_parser("verify", help="run property suites or check serialized finite spaces")
    p.add_argument("--suite", action="append", help="suite, group or 'all' (comma-separated)")
    p.add_argument("--space", action="append", help="finite QLR file to check against every axiom")
    p.add_argument("--axioms", action="append", help="comma list restricting the axioms checked by --space")
    p.add_argument("--max-size", dest="max_size", type=int, help="largest carrier in finite suites")
    p.add_argument("--jobs", type=int, help="worker processes")
    p.add_argument("--emit-dir", help="also write the transitivity counterexample CSVs here when fig1 runs")
    _common(p)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("counterexample", help="transitivity counterexample rows as CSV")
    p.add_argument("--panel", choices=("a", "b"), default="a")
    p.add_argument("--variant", choices=("calibrated", "drawn"), default="calibrated")
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--radius", dest="radii", type=float, action="append")
    p.add_argument("--out", help="write to this file instead of stdout")
    _common(p)
    p.set_defaults(run=cmd_counterexample)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        cfg = resolve_config(args)
        return args.run(args, cfg)
    except UsageError as e:
        print(f"qlr {args.command}: usage error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"qlr {args.command}: {e}", file=sys.stderr)
        return 2
    except Diagnostic as e:
        print(e, file=sys.stderr)
        return 1
    except TypingError as e:
        print(f"qlr {args.command}: type error: {e}", file=sys.stderr)
        return 1
    except QlrError as e:
        print(f"qlr {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
