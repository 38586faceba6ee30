"""Command-line front end.

Exit codes: 0 success, 1 usage or validation error, 2 numerical failure,
3 invariant violation (BBM violated, or --golden deviation over tolerance).
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import golden, plot
from .entropy import (
    MOMENTUM,
    POSITION,
    TABLE1_CELLS,
    bbm_check,
    entropy_density_curve,
    scan_table,
    variance_uncertainty,
)
from .errors import MorsentError, NumericalError
from .morse import MorseParams, bound_state_count, eigenstate
from .quad import QuadConfig

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VIOLATION = 0, 1, 2, 3

TABLE_FIELDS = ["n", "lambda", "S_x", "S_x_err", "S_p", "S_p_err", "sum", "bound", "margin"]
DENSITY_FIELDS = ["coordinate", "density", "entropy_density"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# selectors
# --------------------------------------------------------------------------


def parse_lambdas(text):
    """'1,2,3' or 'start:stop:step' (inclusive) or a single value."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            bits = part.split(":")
            if len(bits) not in (2, 3):
                raise UsageError(f"bad lambda range {part!r}")
            start, stop = float(bits[0]), float(bits[1])
            step = float(bits[2]) if len(bits) == 3 else 1.0
            if step <= 0:
                raise UsageError(f"lambda step must be positive in {part!r}")
            count = math.floor((stop - start) / step + 1e-9) + 1
            out.extend(round(start + k * step, 12) for k in range(max(count, 0)))
        else:
            out.append(float(part))
    return out


def parse_ns(text):
    """'0,1,3' or 'lo:hi' (inclusive)."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            lo, hi = (int(v) for v in part.split(":"))
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    if any(n < 0 for n in out):
        raise UsageError("quantum numbers must be non-negative")
    return out


def parse_grid(text):
    if text == "auto":
        return "auto"
    try:
        lo, hi, count = text.split(":")
        grid = (float(lo), float(hi), int(count))
    except ValueError:
        raise UsageError(f"--grid expects lo:hi:count or auto, got {text!r}") from None
    if not (grid[0] < grid[1] and grid[2] >= 2):
        raise UsageError(f"--grid needs lo < hi and count >= 2, got {text!r}")
    return grid


@dataclass
class RunConfig:
    command: str
    lambdas: list = None
    ns: list = None
    alpha: float = 1.0
    hbar: float = 1.0
    mu: float = 0.5
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    output_format: str = "csv"
    output_path: str = None
    precision: int = 4
    space: str = POSITION
    grid: object = "auto"
    svg: bool = False
    golden: bool = False

    @classmethod
    def from_args(cls, args):
        try:
            lambdas = parse_lambdas(args.lam) if args.lam else None
            ns = parse_ns(args.n) if args.n else None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        for name in ("alpha", "hbar", "mu", "rel_tol", "abs_tol"):
            if not getattr(args, name) > 0:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if args.precision < 0:
            raise UsageError("--precision must be non-negative")
        return cls(
            command=args.command,
            lambdas=lambdas,
            ns=ns,
            alpha=args.alpha,
            hbar=args.hbar,
            mu=args.mu,
            rel_tol=args.rel_tol,
            abs_tol=args.abs_tol,
            output_format=args.format,
            output_path=args.out,
            precision=args.precision,
            space=MOMENTUM if getattr(args, "space", "x") == "p" else POSITION,
            grid=parse_grid(getattr(args, "grid", "auto")),
            svg=getattr(args, "svg", False),
            golden=getattr(args, "golden", False),
        )

    def params(self, lam=1.0):
        return MorseParams(lam, self.alpha, self.hbar, self.mu)

    def quad(self):
        return QuadConfig(self.rel_tol, self.abs_tol)


# --------------------------------------------------------------------------
# formatting
# --------------------------------------------------------------------------


def _fixed(v, p):
    return f"{v:.{p}f}"


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table_row(d, p):
    return [
        d["n"], f"{d['lambda']:g}",
        _fixed(d["S_x"], p), f"{d['S_x_err']:.2e}",
        _fixed(d["S_p"], p), f"{d['S_p_err']:.2e}",
        _fixed(d["sum"], p), _fixed(d["bound"], p), _fixed(d["margin"], p),
    ]


def _pretty(header, rows):
    widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) for i, h in enumerate(header)]
    lines = ["  ".join(str(h).rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(str(c).rjust(w) for c, w in zip(r, widths)) for r in rows)
    return "\n".join(lines) + "\n"


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _emit(text, path):
    if path:
        Path(path).write_text(text, newline="")
    else:
        sys.stdout.write(text)


def _render_records(cfg, header, records):
    if cfg.output_format == "json":
        return _json(records)
    rows = [_table_row(r, cfg.precision) + [_fixed(r[k], cfg.precision) if isinstance(r[k], float) else r[k]
                                            for k in header[len(TABLE_FIELDS):]]
            for r in records]
    if cfg.output_format == "pretty":
        return _pretty(header, rows)
    return _csv(header, rows)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _note(msg):
    print(msg, file=sys.stderr)


def cmd_table(cfg):
    if cfg.lambdas is None and cfg.ns is None:
        n_list, lam_sel = list(TABLE1_CELLS), TABLE1_CELLS
    elif cfg.lambdas is None:
        missing = [n for n in cfg.ns if n not in TABLE1_CELLS]
        if missing:
            raise UsageError(f"no default lambda list for n={missing}; pass --lambda")
        n_list, lam_sel = cfg.ns, TABLE1_CELLS
    else:
        top = max(bound_state_count(cfg.params(lam)) for lam in cfg.lambdas)
        n_list = cfg.ns if cfg.ns is not None else list(range(top))
        lam_sel = cfg.lambdas

    diagnostics = []
    results = scan_table(cfg.params(), n_list, lam_sel, cfg.quad(), diagnostics=diagnostics)
    failed = [d for d in diagnostics if d[2] == "failed"]
    for n, lam, kind, msg in diagnostics:
        _note(f"{kind}: n={n} lambda={lam:g}: {msg}")
    if not results and not failed:
        raise UsageError("selectors resolve to no bound state")

    _emit(_render_records(cfg, TABLE_FIELDS, [r.as_dict() for r in results]), cfg.output_path)

    if failed:
        return EXIT_NUMERIC
    if cfg.golden:
        report = golden.compare(results)
        if not report:
            _note("golden: no computed row has a published counterpart")
            return EXIT_OK
        worst = {k: max(abs(r[k]) for r in report) for k in ("dS_x", "dS_p", "dsum")}
        _note(
            f"golden: {len(report)} rows compared; max |dS_x|={worst['dS_x']:.2e} "
            f"max |dS_p|={worst['dS_p']:.2e} max |dsum|={worst['dsum']:.2e} "
            f"(tolerances {golden.ENTROPY_TOL:g} per entropy, {golden.SUM_TOL:g} sum)"
        )
        bad = [r for r in report if not r["ok"]]
        for r in bad:
            _note(f"golden: out of tolerance at n={r['n']} lambda={r['lambda']:g}: "
                  f"dS_x={r['dS_x']:+.4f} dS_p={r['dS_p']:+.4f} dsum={r['dsum']:+.4f}")
        return EXIT_VIOLATION if bad else EXIT_OK
    return EXIT_OK


def _single_state(cfg):
    if not cfg.lambdas or len(cfg.lambdas) != 1:
        raise UsageError("exactly one --lambda value is required")
    if cfg.ns is not None and len(cfg.ns) != 1:
        raise UsageError("exactly one --n value is required")
    params = cfg.params(cfg.lambdas[0])
    n = cfg.ns[0] if cfg.ns else 0
    count = bound_state_count(params)
    if count == 0:
        raise UsageError(f"no bound states at lambda={params.lam:g}")
    if n >= count:
        raise UsageError(f"n={n} is not bound at lambda={params.lam:g} (n < {count} required)")
    return params, eigenstate(params, n)


def cmd_entropy(cfg):
    params, state = _single_state(cfg)
    res = bbm_check(params, state, cfg.quad())
    unc = variance_uncertainty(params, state, cfg.quad())
    record = res.as_dict()
    record.update(delta_x=unc.delta_x, delta_p=unc.delta_p, robertson_product=unc.product)
    header = TABLE_FIELDS + ["delta_x", "delta_p", "robertson_product"]
    if cfg.output_format == "json":
        text = _json(record)
    else:
        text = _render_records(cfg, header, [record])
    _emit(text, cfg.output_path)
    return EXIT_OK


def _density_paths(cfg, lams):
    if not cfg.output_path:
        return [None] * len(lams)
    if len(lams) == 1:
        return [Path(cfg.output_path)]
    base = Path(cfg.output_path)
    return [base.with_name(f"{base.stem}_lambda{lam:g}{base.suffix}") for lam in lams]


def cmd_density(cfg):
    if not cfg.lambdas:
        raise UsageError("--lambda is required")
    if cfg.ns is not None and len(cfg.ns) != 1:
        raise UsageError("exactly one --n value is required")
    n = cfg.ns[0] if cfg.ns else 0
    states = []
    for lam in cfg.lambdas:
        params = cfg.params(lam)
        if n >= bound_state_count(params):
            raise UsageError(f"n={n} is not a bound state at lambda={lam:g}")
        states.append((params, eigenstate(params, n)))

    curves = [entropy_density_curve(p, s, cfg.space, cfg.grid) for p, s in states]
    p = cfg.precision

    if cfg.output_format == "json":
        payload = [
            {"n": n, "lambda": prm.lam, "space": c.space,
             "coordinate": c.coordinate.tolist(), "density": c.density.tolist(),
             "entropy_density": c.entropy_density.tolist()}
            for (prm, _), c in zip(states, curves)
        ]
        _emit(_json(payload), cfg.output_path)
    else:
        paths = _density_paths(cfg, cfg.lambdas)
        for (prm, _), c, path in zip(states, curves, paths):
            rows = [[_fixed(x, p), f"{d:.{p}e}", f"{e:.{p}e}"] for x, d, e in
                    zip(c.coordinate, c.density, c.entropy_density)]
            text = _pretty(DENSITY_FIELDS, rows) if cfg.output_format == "pretty" else _csv(DENSITY_FIELDS, rows)
            if path is None and len(curves) > 1:
                text = f"# n={n} lambda={prm.lam:g} space={c.space}\n" + text
            _emit(text, path)

    if cfg.svg:
        sym = "x" if cfg.space == POSITION else "p"
        svg = plot.line_chart(
            [(f"lambda={prm.lam:g}", c.coordinate.tolist(), c.entropy_density.tolist())
             for (prm, _), c in zip(states, curves)],
            title=f"{c.space} entropy density, n={n}",
            xlabel=sym, ylabel=f"rho({sym}) ln rho({sym})",
        )
        if cfg.output_path:
            svg_path = Path(cfg.output_path).with_suffix(".svg")
        else:
            svg_path = Path(f"density_n{n}_{sym}.svg")
        svg_path.write_text(svg)
        _note(f"wrote {svg_path}")
    return EXIT_OK


def cmd_check(cfg):
    if not cfg.lambdas:
        raise UsageError("--lambda range is required")
    top = max(bound_state_count(cfg.params(lam)) for lam in cfg.lambdas)
    n_list = cfg.ns if cfg.ns is not None else list(range(top))
    diagnostics = []
    results = scan_table(cfg.params(), n_list, cfg.lambdas, cfg.quad(), diagnostics=diagnostics)
    failed = [d for d in diagnostics if d[2] == "failed"]
    for n, lam, _, msg in failed:
        _note(f"failed: n={n} lambda={lam:g}: {msg}")
    if not results and not failed:
        raise UsageError("range contains no bound state")

    records = []
    for r in results:
        tol = r.s_x_err + r.s_p_err
        records.append({"n": r.n, "lambda": r.lam, "sum": r.sum, "bound": r.bound,
                        "margin": r.margin, "tolerance": tol, "ok": r.holds})
    violations = [rec for rec in records if not rec["ok"]]
    if cfg.output_format == "json":
        text = _json({"checked": len(records), "violations": len(violations),
                      "failures": len(failed), "states": records})
    else:
        p = cfg.precision
        header = ["n", "lambda", "sum", "bound", "margin", "tolerance", "ok"]
        rows = [[rec["n"], f"{rec['lambda']:g}", _fixed(rec["sum"], p), _fixed(rec["bound"], p),
                 _fixed(rec["margin"], p), f"{rec['tolerance']:.2e}", str(rec["ok"]).lower()]
                for rec in records]
        text = _pretty(header, rows) if cfg.output_format == "pretty" else _csv(header, rows)
    _emit(text, cfg.output_path)
    _note(f"check: {len(records)} states, {len(violations)} BBM violations, {len(failed)} failures")
    if failed:
        return EXIT_NUMERIC
    return EXIT_VIOLATION if violations else EXIT_OK


COMMANDS = {"table": cmd_table, "entropy": cmd_entropy, "density": cmd_density, "check": cmd_check}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", metavar="LIST|RANGE",
                        help="depth parameter(s): '1,2,3' or 'start:stop:step'")
    common.add_argument("--n", metavar="LIST", help="quantum number(s): '0,1' or 'lo:hi'")
    common.add_argument("--alpha", type=float, default=1.0)
    common.add_argument("--hbar", type=float, default=1.0)
    common.add_argument("--mu", type=float, default=0.5)
    common.add_argument("--rel-tol", type=float, default=1e-10)
    common.add_argument("--abs-tol", type=float, default=1e-12)
    common.add_argument("--format", choices=("csv", "json", "pretty"), default="csv")
    common.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    common.add_argument("--precision", type=int, default=4, help="decimals in csv/pretty output")

    parser = _Parser(prog="morsent", description="Information entropies of Morse oscillator eigenstates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    t = sub.add_parser("table", parents=[common], help="entropy table (defaults to the published grid)")
    t.add_argument("--golden", action="store_true", help="compare with the published values")
    sub.add_parser("entropy", parents=[common], help="entropies and uncertainty of one state")
    d = sub.add_parser("density", parents=[common], help="density and entropy-density curves")
    d.add_argument("--space", choices=("x", "p"), default="x")
    d.add_argument("--grid", default="auto", help="'lo:hi:count' or 'auto'")
    d.add_argument("--svg", action="store_true", help="also write an SVG plot")
    sub.add_parser("check", parents=[common], help="verify the BBM bound over a range")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        _note(f"morsent {args.command}: error: {exc}")
        return EXIT_USAGE
    except NumericalError as exc:
        _note(f"morsent {args.command}: numerical failure: {exc}")
        return EXIT_NUMERIC
    except (MorsentError, ValueError) as exc:
        _note(f"morsent {args.command}: error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
