"""Command-line front end.

Every subcommand reads one UTF-8 JSON document (``--input PATH``, ``-`` for
stdin, or the JSON text itself) and writes one report to stdout.

Exit status: 0 on success, 2 for unusable input, 3 for numerical failure.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
import warnings
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from .distributions import DistributionSpec, Family, empirical_rule, log_ccdf
from .dominance import Tail, ccdf_ratio_trace, classify_pair, select_dominator
from .errors import InputError, NoExceedances, NumericalError
from .intersection import intersect_normals
from .mixture import (
    PopulationModel,
    range_ratio_table,
    simulate_tail_share,
    tail_share,
    top_fraction_cutoff,
    top_fraction_shares,
)
from .report import render_csv, render_json, render_table

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3

RANGE_HEADER = ("range_low", "range_high", "mass_1", "mass_2", "ratio", "adjusted_ratio")
# default trace depth, in scale units beyond the larger location
TRACE_STEPS = (1.0, 2.0, 5.0, 10.0, 20.0, 40.0)


@dataclass
class Output:
    payload: dict
    header: Sequence[str] = ()
    rows: list = field(default_factory=list)


class UsageError(InputError):
    pass


# --- input ---------------------------------------------------------------


def _load(source: str | None, stdin=None) -> Any:
    if source is None:
        raise UsageError("--input: required for this subcommand")
    text = source
    if source == "-":
        text = (stdin or sys.stdin).read()
    elif not source.lstrip().startswith(("{", "[")):
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"--input: cannot read {source!r}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--input: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _distributions(data: Any, count: int | None = None) -> tuple[list[DistributionSpec], list[str] | None]:
    """Specs from ``{"distributions": [...]}`` or a population model."""
    if isinstance(data, dict) and "subpopulations" in data:
        model = PopulationModel.from_dict(data)
        specs, labels = [g.dist for g in model.groups], model.labels
    elif isinstance(data, dict) and "distributions" in data:
        raw = data["distributions"]
        if not isinstance(raw, list):
            raise UsageError("distributions: expected a list")
        specs = [DistributionSpec.from_dict(d, path=f"distributions[{i}]") for i, d in enumerate(raw)]
        labels = None
    else:
        raise UsageError("input: expected an object with 'distributions' or 'subpopulations'")
    if count is not None and len(specs) != count:
        raise UsageError(f"distributions: expected exactly {count}, got {len(specs)}")
    return specs, labels


def _model(data: Any) -> PopulationModel:
    return PopulationModel.from_dict(data)


def _float_list(text: str, flag: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated numbers, got {text!r}") from None


def _require(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name}: required for '{args.command}'")
    return value


# --- subcommands ---------------------------------------------------------


def cmd_intersect(args, data) -> Output:
    (a, b), _ = _distributions(data, 2)
    result = intersect_normals(a, b)
    return Output(result.to_dict(), ("point",), [[p] for p in result.points])


def cmd_classify(args, data) -> Output:
    (a, b), labels = _distributions(data, 2)
    names = labels or ["first", "second"]
    rel = classify_pair(a, b, args.tail)
    payload = {
        "first": a.to_dict(),
        "second": b.to_dict(),
        **rel.to_dict(),
        "description": rel.describe(*names),
    }
    return Output(
        payload,
        ("first", "second", "tail", "verdict", "alpha"),
        [[str(a), str(b), rel.tail.value, rel.verdict.value, rel.alpha]],
    )


def cmd_dominator(args, data) -> Output:
    specs, labels = _distributions(data)
    i = select_dominator(specs)
    payload = {"index": i, "label": labels[i] if labels else None, "dist": specs[i].to_dict()}
    return Output(payload, ("index", "label", "dist"), [[i, payload["label"], str(specs[i])]])


def cmd_tail_share(args, data) -> Output:
    report = tail_share(_model(data), _require(args, "cutoff"))
    return _share_output(report)


def cmd_shares(args, data) -> Output:
    report = top_fraction_shares(_model(data), _require(args, "top"))
    return _share_output(report)


def _share_output(report) -> Output:
    rows = [[g.label, g.tail_mass, g.log_tail_mass, g.share] for g in report.groups]
    return Output(report.to_dict(), ("label", "tail_mass", "log_tail_mass", "share"), rows)


def cmd_cutoff(args, data) -> Output:
    q = _require(args, "top")
    c = top_fraction_cutoff(_model(data), q)
    return Output({"top_fraction": q, "cutoff": c}, ("top_fraction", "cutoff"), [[q, c]])


def cmd_ranges(args, data) -> Output:
    bounds = _float_list(_require(args, "boundaries"), "--boundaries")
    rows = range_ratio_table(_model(data), bounds)
    payload = {"rows": [r.to_dict() for r in rows]}
    return Output(payload, RANGE_HEADER, [list(r.to_dict().values()) for r in rows])


def cmd_rules(args, data) -> Output:
    if args.family is not None:
        spec = DistributionSpec(Family(args.family), 0.0, 1.0)
    elif data is not None:
        spec = DistributionSpec.from_dict(data)
    else:
        raise UsageError("--family: required when no --input is given")
    result = empirical_rule(spec)
    payload = {"family": spec.family.value, **result.to_dict()}
    return Output(
        payload, ("family", "within_1", "within_2", "within_3"),
        [[spec.family.value, *result.as_tuple()]],
    )


def cmd_trace(args, data) -> Output:
    """Right tail: ``P_a(X > c) / P_b(X > c)`` along ascending ``c``.

    Left tail: ``P_a(X < c) / P_b(X < c)`` along descending ``c``.
    """
    (a, b), _ = _distributions(data, 2)
    tail = Tail(args.tail)
    sign = 1.0
    if tail is Tail.LEFT:
        a, b, sign = a.reflected(), b.reflected(), -1.0
    if args.cutoffs is not None:
        cutoffs = _float_list(args.cutoffs, "--cutoffs")
    else:
        start, unit = max(a.location, b.location), max(a.scale, b.scale)
        cutoffs = [sign * (start + k * unit) for k in TRACE_STEPS]
    depth = [sign * c for c in cutoffs]
    ratios = ccdf_ratio_trace(a, b, depth)
    # the ratio itself overflows long before the comparison stops being meaningful
    log_ratios = [float(x) for x in np.asarray(log_ccdf(a, depth)) - np.asarray(log_ccdf(b, depth))]
    rows = [[c, r, lr] for c, r, lr in zip(cutoffs, ratios, log_ratios)]
    payload = {
        "tail": tail.value,
        "points": [{"cutoff": c, "ratio": r, "log_ratio": lr} for c, r, lr in rows],
    }
    return Output(payload, ("cutoff", "ratio", "log_ratio"), rows)


def cmd_simulate(args, data) -> Output:
    model = _model(data)
    if args.cutoff is not None:
        c = args.cutoff
    else:
        c = top_fraction_cutoff(model, _require(args, "top"))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NoExceedances)
        report = simulate_tail_share(model, c, args.samples, args.seed)
    for w in caught:
        print(f"warning: {w.message}", file=args.stderr)
    payload = report.to_dict()
    payload["no_exceedances"] = report.total_exceedances == 0
    rows = [[g.label, g.samples, g.exceedances, g.share, g.stderr] for g in report.groups]
    return Output(payload, ("label", "samples", "exceedances", "share", "stderr"), rows)


COMMANDS: dict[str, tuple[Callable[[argparse.Namespace, Any], Output], str, bool]] = {
    # name: (handler, help, needs input)
    "intersect": (cmd_intersect, "crossing points of two normal densities", True),
    "classify": (cmd_classify, "tail relation of two distributions", True),
    "dominator": (cmd_dominator, "the normal that strongly dominates all others", True),
    "tail-share": (cmd_tail_share, "group shares above --cutoff", True),
    "cutoff": (cmd_cutoff, "cutoff holding the top fraction --top", True),
    "shares": (cmd_shares, "group shares within the top fraction --top", True),
    "ranges": (cmd_ranges, "two-group range ratio table over --boundaries", True),
    "rules": (cmd_rules, "within-1/2/3-scale empirical rule for a family", False),
    "trace": (cmd_trace, "survival ratio along increasing cutoffs", True),
    "simulate": (cmd_simulate, "Monte Carlo shares above a cutoff", True),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="JSON file, '-' for stdin, or inline JSON")
    common.add_argument("--format", "-f", choices=("json", "csv", "table"), default="json")
    common.add_argument("--precision", type=int, default=6, help="significant digits in tables")

    parser = argparse.ArgumentParser(prog="taildom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for name, (_, help_text, _) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name in ("tail-share", "simulate"):
            p.add_argument("--cutoff", type=float)
        if name in ("cutoff", "shares", "simulate"):
            p.add_argument("--top", type=float, help="top fraction q in (0, 1)")
        if name in ("classify", "trace"):
            p.add_argument("--tail", choices=("right", "left"), default="right")
        if name == "ranges":
            p.add_argument("--boundaries", help="ascending, comma-separated")
        if name == "trace":
            p.add_argument("--cutoffs", help="comma-separated; ascending (right) or descending (left)")
        if name == "rules":
            p.add_argument("--family", choices=[f.value for f in Family])
        if name == "simulate":
            p.add_argument("--samples", type=int, default=100_000, help="variates per unit size")
            p.add_argument("--seed", type=int, default=0)
    return parser


def render(output: Output, fmt: str, precision: int) -> str:
    if fmt == "json":
        return render_json(output.payload)
    if fmt == "csv":
        return render_csv(output.header, output.rows)
    return render_table(output.header, output.rows, precision)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    handler, _, needs_input = COMMANDS[args.command]
    args.stderr = stderr
    try:
        if args.precision < 1:
            raise UsageError(f"--precision: must be >= 1, got {args.precision}")
        data = _load(args.input, stdin) if (needs_input or args.input is not None) else None
        output = handler(args, data)
    except InputError as exc:
        print(f"taildom {args.command}: error: {exc}", file=stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"taildom {args.command}: numerical error: {exc}", file=stderr)
        return EXIT_NUMERIC
    stdout.write(render(output, args.format, args.precision))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
