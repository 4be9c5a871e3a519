"""Command-line interface: ``analyze``, ``sweep`` and ``selftest``.

Exit codes: 0 success, 1 selftest failure, 2 usage error, 3 domain
precondition (e.g. mixed branch states), 4 I/O error.
"""
import argparse
import math
import sys

from .family import FamilyParams
from .purify import PurificationError
from .report import SWEEP_OUTPUTS, Axis, SweepSpec, analyze_point, sweep_csv
from .selftest import run_selftest
from .tangle import DEFAULT_TOL

EXIT_OK, EXIT_SELFTEST, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def parse_triple(text):
    try:
        vals = tuple(float(t) for t in str(text).split(","))
    except ValueError:
        raise UsageError(f"expected x,y,z, got {text!r}") from None
    if len(vals) != 3:
        raise UsageError(f"expected three comma-separated numbers, got {text!r}")
    return vals


def read_config(path):
    """Flat ``key = value`` file; ``#`` starts a comment; keys mirror flag names."""
    conf = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (t.strip() for t in line.split("=", 1))
        conf[key.lstrip("-").replace("-", "_")] = value
    return conf


def _add_point_flags(sp):
    sp.add_argument("--p", type=float)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--n", type=int)
    for name in ("r", "s"):
        sp.add_argument(f"--{name}", metavar="X,Y,Z", help=f"Bloch vector {name} as a comma-separated triple")
        sp.add_argument(f"--{name}-theta", type=float, help=f"polar angle of unit {name}")
        sp.add_argument(f"--{name}-phi", type=float, help=f"azimuth of unit {name} (default 0)")
    sp.add_argument("--tol", type=float, default=None, help=f"classification tolerance (default {DEFAULT_TOL})")
    sp.add_argument("--config", help="flat key = value file; flags override it")


def build_parser():
    parser = argparse.ArgumentParser(prog="discord-tangle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="analyze one family point")
    _add_point_flags(an)
    an.add_argument("--json", action="store_true", help="emit the report as JSON")
    an.add_argument("--oracle", action="store_true", help="also run the brute-force discord oracle")
    an.add_argument("--oracle-grid", type=int, default=None, help="oracle sphere grid size (default 128)")
    an.add_argument("--no-purify", dest="purify", action="store_false",
                    help="skip purification and tangle (allows mixed Bloch vectors)")

    sw = sub.add_parser("sweep", help="sweep two of (p, alpha) and emit CSV")
    _add_point_flags(sw)
    sw.add_argument("--axis1", metavar="NAME:MIN:MAX:STEPS")
    sw.add_argument("--axis2", metavar="NAME:MIN:MAX:STEPS")
    sw.add_argument("--outputs", help=f"comma-separated subset of {','.join(SWEEP_OUTPUTS)}")
    sw.add_argument("--csv", metavar="PATH", help="write CSV here instead of standard output")

    st = sub.add_parser("selftest", help="run the embedded invariant checks")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    return parser


def _merged(args, conf, key, cast=str):
    val = getattr(args, key, None)
    if val is None and key in conf:
        try:
            val = cast(conf[key])
        except ValueError:
            raise UsageError(f"bad config value for {key}: {conf[key]!r}") from None
    return val


def _bloch(args, conf, name):
    triple = _merged(args, conf, name)
    theta = _merged(args, conf, f"{name}_theta", float)
    if triple is not None and theta is not None:
        raise UsageError(f"give either --{name} or --{name}-theta/--{name}-phi, not both")
    if theta is not None:
        phi = _merged(args, conf, f"{name}_phi", float) or 0.0
        return (math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta))
    if triple is None:
        return None
    return parse_triple(triple)


def _fields(args, conf):
    return {
        "p": _merged(args, conf, "p", float),
        "alpha": _merged(args, conf, "alpha", float),
        "n": _merged(args, conf, "n", int),
        "r": _bloch(args, conf, "r"),
        "s": _bloch(args, conf, "s"),
    }


def _make_params(fields):
    missing = [k for k, v in fields.items() if v is None]
    if missing:
        raise UsageError("missing " + ", ".join(f"--{k}" for k in missing))
    try:
        return FamilyParams(**fields)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _render_text(report):
    lines = []
    for key, val in report.to_dict().items():
        lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args, conf, stdout):
    params = _make_params(_fields(args, conf))
    tol = _merged(args, conf, "tol", float) or DEFAULT_TOL
    grid = _merged(args, conf, "oracle_grid", int) or 128
    try:
        report = analyze_point(params, oracle=args.oracle, oracle_grid=grid, do_purify=args.purify, tol=tol)
    except PurificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    stdout.write(report.to_json() if args.json else _render_text(report))
    return EXIT_OK


def cmd_sweep(args, conf, stdout):
    fields = _fields(args, conf)
    ax1, ax2 = _merged(args, conf, "axis1"), _merged(args, conf, "axis2")
    if ax1 is None or ax2 is None:
        raise UsageError("sweep needs --axis1 and --axis2")
    outputs = _merged(args, conf, "outputs")
    outputs = SWEEP_OUTPUTS if outputs is None else tuple(t.strip() for t in outputs.split(",") if t.strip())
    try:
        axis1, axis2 = Axis.parse(ax1), Axis.parse(ax2)
        for ax in (axis1, axis2):
            if ax.name in fields:
                fields[ax.name] = 0.5 if fields[ax.name] is None else fields[ax.name]
        fixed = _make_params(fields)
        fixed_kw = dict(p=fixed.p, alpha=fixed.alpha, n=fixed.n, r=fixed.r, s=fixed.s)
        spec = SweepSpec(axis1, axis2, fixed_kw, outputs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    tol = _merged(args, conf, "tol", float) or DEFAULT_TOL
    try:
        text = sweep_csv(spec, tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    path = _merged(args, conf, "csv")
    if path is None:
        stdout.write(text)
        return EXIT_OK
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "selftest":
            failures = run_selftest(args.seed, args.tol, out=lambda line: stdout.write(line + "\n"))
            return EXIT_SELFTEST if failures else EXIT_OK
        conf = read_config(args.config) if args.config else {}
        if args.command == "analyze":
            return cmd_analyze(args, conf, stdout)
        return cmd_sweep(args, conf, stdout)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
