"""Command-line frontend.

Subcommands:
    check FILE                        verdict report for a pair spec
    classify --mode maeda|rank2 --n-max N     TSV table on stdout
    aa FILE [--svg PATH] [--slice I=P/Q ...]  canonical body and vertices
    blowup FILE                       per-step lattice dump, outer body,
                                      self-intersection quadratic report

Exit codes: 0 computed (any verdict), 1 input error, 2 a verdict came
back unknown/unsupported.  Reports are deterministic; timing goes to
stderr only.  AA_GRID_DENOM overrides the quadratic-report grid density.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import angles, classify, polytope as pt, svgfig
from .dsl import SpecParseError, load_pair_spec
from .geometry import BlowUp, Tri
from .pairs import LogPair, is_minimal, log_adjoint


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_point(pt_) -> str:
    return "(" + ", ".join(_fmt_frac(c) for c in pt_) + ")"


def _fmt_verdict(v) -> str:
    if v is True:
        return "yes"
    if v is False:
        return "no"
    return repr(v).lower()


def _grid_denom() -> int:
    raw = os.environ.get("AA_GRID_DENOM", "16")
    try:
        denom = int(raw)
    except ValueError:
        raise SystemExit(f"bad AA_GRID_DENOM value {raw!r}")
    if denom < 2:
        raise SystemExit("AA_GRID_DENOM must be at least 2")
    return denom


def _body_and_report(p: LogPair):
    if isinstance(p.surface.provenance, BlowUp):
        return angles.aa_outer_blowup(p, grid_denominator=_grid_denom())
    return angles.aa_halfspaces_rank_le2(p), None


def _print_body(body: angles.AABody, out) -> None:
    print(f"exactness: {body.exactness}", file=out)
    print("closure:", file=out)
    for line in pt.canonical_lines(body.closed_hull):
        print(f"  {line}", file=out)
    if pt.is_feasible(body.closed_hull):
        verts = pt.vertices(body.closed_hull).vertices
        print("vertices:", file=out)
        for v in verts:
            print(f"  {_fmt_point(v)}", file=out)
    else:
        print("vertices: (empty body)", file=out)


def _print_quadratic(report: angles.QuadraticReport, out) -> None:
    print("self-intersection quadratic (reported, not imposed):", file=out)
    print(f"  constant: {_fmt_frac(report.constant)}", file=out)
    print("  linear:   " + " ".join(_fmt_frac(c) for c in report.linear), file=out)
    for row in report.quadratic:
        print("  quad:     " + " ".join(_fmt_frac(c) for c in row), file=out)
    print(
        f"  sign table on 1/{report.grid_denominator} grid of the linear outer body: "
        f"{report.samples} samples, {report.positive} positive, "
        f"{report.zero} zero, {report.negative} negative",
        file=out,
    )


@dataclass
class RunReport:
    """Everything a check run computed; rendering excludes the timing so the
    stdout report is byte-identical across runs (timing goes to stderr)."""

    echo: str
    pair: LogPair
    verdicts: dict
    body: angles.AABody
    quadratic: Optional[angles.QuadraticReport]
    elapsed: float

    @property
    def exit_code(self) -> int:
        return 2 if any(isinstance(v, Tri) for v in self.verdicts.values()) else 0

    def render(self, out) -> None:
        p = self.pair
        print(f"pair: {self.echo}", file=out)
        print(f"surface basis: {' '.join(p.surface.basis_labels)}", file=out)
        print("boundary:", file=out)
        for lab, cls in zip(p.labels, p.classes):
            print(f"  {lab}: {_fmt_point(cls.coeffs)}", file=out)
        for name, verdict in self.verdicts.items():
            print(f"{name}: {_fmt_verdict(verdict)}", file=out)
        _print_body(self.body, out)
        if self.quadratic is not None:
            _print_quadratic(self.quadratic, out)


def run_report(p: LogPair, echo: str) -> RunReport:
    started = time.perf_counter()
    verdicts = {
        "log del Pezzo": angles.is_log_dp(p),
        "strongly asymptotically log del Pezzo": angles.is_strongly_aldp(p),
        "asymptotically log del Pezzo": angles.is_aldp(p),
        "minimal": is_minimal(p),
    }
    body, quadratic = _body_and_report(p)
    return RunReport(echo, p, verdicts, body, quadratic, time.perf_counter() - started)


def cmd_check(args) -> int:
    script = load_pair_spec(args.file)
    report = run_report(script.final, args.file)
    report.render(sys.stdout)
    return report.exit_code


def cmd_blowup(args) -> int:
    script = load_pair_spec(args.file)
    stages = script.apply()
    for step, pair in zip(script.steps, stages[1:]):
        print(f"step: blowup {step.op} {step.target} -> {step.id}")
        print(f"  basis: {' '.join(pair.surface.basis_labels)}")
        print(f"  K: {_fmt_point(pair.surface.canonical)}")
        for lab, cls in zip(pair.labels, pair.classes):
            print(f"  {lab}: {_fmt_point(cls.coeffs)}")
        adjoint = log_adjoint(pair)
        print(f"  -K-C: {_fmt_point(adjoint.constant.coeffs)}")
    report = run_report(stages[-1], args.file)
    report.render(sys.stdout)
    return report.exit_code


def _parse_slices(raw_slices, r: int):
    out = []
    for raw in raw_slices or ():
        if "=" not in raw:
            raise SystemExit(f"bad slice {raw!r}: expected I=P/Q")
        idx_text, val_text = raw.split("=", 1)
        try:
            idx = int(idx_text)
            val = Fraction(val_text)
        except (ValueError, ZeroDivisionError):
            raise SystemExit(f"bad slice {raw!r}: expected I=P/Q") from None
        if not 1 <= idx <= r:
            raise SystemExit(f"slice index {idx} out of range 1..{r}")
        if not 0 <= val <= 1:
            raise SystemExit("slice values must lie in [0, 1]")
        out.append((idx, val))
    if len({i for i, _ in out}) != len(out):
        raise SystemExit("repeated slice index")
    return sorted(out, reverse=True)


def cmd_aa(args) -> int:
    script = load_pair_spec(args.file)
    pair = script.final
    body, _ = _body_and_report(pair)
    slices = _parse_slices(args.slice, pair.r)
    if slices and pair.r < 3:
        raise SystemExit("slices only make sense for three or more angles")
    closed = body.closed_hull
    axis_names = [f"b{i + 1}" for i in range(pair.r)]
    for idx, val in slices:
        closed = pt.substitute(closed, idx - 1, val)
        axis_names.pop(idx - 1)
    print(f"pair: {args.file}")
    if slices:
        fixed = ", ".join(f"b{i}={_fmt_frac(v)}" for i, v in sorted(slices))
        print(f"section: {fixed}  (a section, not a projection)")
    print(f"exactness: {body.exactness}")
    print("closure:")
    for line in pt.canonical_lines(closed):
        print(f"  {line}")
    if pt.is_feasible(closed):
        print("vertices:")
        for v in pt.vertices(closed).vertices:
            print(f"  {_fmt_point(v)}")
    else:
        print("vertices: (empty body)")
    if args.svg:
        if closed.dim != 2:
            raise SystemExit(
                f"SVG output needs a 2-dimensional body; got {closed.dim} "
                "(use --slice to cut down)"
            )
        title = os.path.basename(args.file)
        if slices:
            title += " section " + ",".join(f"b{i}={_fmt_frac(v)}" for i, v in sorted(slices))
        doc = svgfig.render_body(
            closed,
            axis_labels=(axis_names[0], axis_names[1]),
            exact=body.exact,
            title=title,
        )
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(doc)
        print(f"svg: {args.svg}")
    return 0


def _classes_column(c: classify.CandidatePair) -> str:
    if c.n is None:
        return "+".join(str(d) for d in c.classes)
    return "+".join(f"({a},{b})" for a, b in c.classes)


def cmd_classify(args) -> int:
    if args.mode == "maeda":
        for cand, label in classify.enumerate_maeda(args.n_max):
            n_col = "-" if cand.n is None else str(cand.n)
            print("\t".join([n_col, cand.surface, _classes_column(cand), label.text]))
        return 0
    for cand, label, strength in classify.enumerate_rank2(args.n_max):
        n_col = "-" if cand.n is None else str(cand.n)
        body = angles.aa_halfspaces_rank_le2(classify.build_pair(cand))
        body_col = "; ".join(pt.canonical_lines(body.closed_hull))
        print(
            "\t".join(
                [n_col, cand.surface, _classes_column(cand), label.text, strength, body_col]
            )
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ample-angles",
        description="Exact bodies of ample angles on rational surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="verdict report for a pair spec")
    p_check.add_argument("file")
    p_check.set_defaults(func=cmd_check)

    p_classify = sub.add_parser("classify", help="enumerate classified pairs as TSV")
    p_classify.add_argument("--mode", choices=("maeda", "rank2"), required=True)
    p_classify.add_argument("--n-max", type=int, default=12)
    p_classify.set_defaults(func=cmd_classify)

    p_aa = sub.add_parser("aa", help="body of ample angles, optionally as SVG")
    p_aa.add_argument("file")
    p_aa.add_argument("--svg")
    p_aa.add_argument("--slice", action="append", metavar="I=P/Q")
    p_aa.set_defaults(func=cmd_aa)

    p_blow = sub.add_parser("blowup", help="apply a blow-up script with lattice dumps")
    p_blow.add_argument("file")
    p_blow.set_defaults(func=cmd_blowup)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        code = args.func(args)
    except SpecParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    finally:
        elapsed = time.perf_counter() - started
        print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
