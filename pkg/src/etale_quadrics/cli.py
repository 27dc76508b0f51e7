"""Command-line surface: compute, verify, and emit tables.

Subcommands: decompose (motive decomposition of a quadric), cohomology
(tables with mod2 / mod2s:<s> / 2adic coefficients for a quadric or a
single Rost motive), nonalgebraic (per-degree quotient by the cycle
image), verify (the built-in exactness sweeps).

Output is deterministic: identical invocations produce identical bytes,
records are sorted by (degree, Rost index descending, Tate twist, label),
and nothing carries a timestamp.  Exit codes: 0 success, 1 verification
mismatch, 2 invalid input or usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

from . import __version__
from .errors import InvalidDimension, InvalidIndex, UnknownFamily
from .graded import Graded2Group
from .mod2 import cycle_image_mod2, rost_etale_mod2, top_rho_exponent
from .quadrics import assemble_cohomology, decompose_motive, nonalgebraic_report
from .rost import rost_etale_table
from .tower import mod_2s_group, twist_bidegree
from .verify import SCOPES, VerifyOptions, run_checks


RECORD_FIELDS = ("degree", "twist", "order", "generator", "n", "j", "algebraic")


def _records_from_graded(table: Graded2Group) -> list[dict]:
    records = []
    for e in table.entries:
        n, j = e.source if e.source is not None else (None, None)
        records.append(
            {
                "degree": e.degree,
                "twist": e.twist,
                "order": e.order,
                "generator": e.label,
                "source": None if n is None else {"n": n, "j": j},
                "algebraic": e.algebraic,
            }
        )
    return records


def _rost_mod2_records(n: int) -> list[dict]:
    ring = rost_etale_mod2(n)
    algebraic = cycle_image_mod2(n).degrees
    return [
        {
            "degree": c,
            "twist": (c // 2) % 2 if c % 2 == 0 else None,
            "order": 2,
            "generator": ring.basis_label(c),
            "source": {"n": n, "j": 0},
            "algebraic": c in algebraic,
        }
        for c in ring.degrees()
    ]


def _rost_mod2s_records(n: int, s: int) -> list[dict]:
    records = []
    for degree in range(0, top_rho_exponent(n) + 1, 2):
        p, q = twist_bidegree(degree)
        for sm in mod_2s_group(n, p, q, s).summands:
            records.append(
                {
                    "degree": degree,
                    "twist": (degree // 2) % 2,
                    "order": sm.order,
                    "generator": sm.label,
                    "source": {"n": n, "j": 0},
                    "algebraic": None,
                }
            )
    return records


def _quadric_mod2_records(d: int) -> list[dict]:
    records = []
    for term in decompose_motive(d).terms:
        if term.n == 0:
            records.append(
                {
                    "degree": 2 * term.j,
                    "twist": term.j % 2,
                    "order": 2,
                    "generator": "1",
                    "source": {"n": 0, "j": term.j},
                    "algebraic": True,
                }
            )
            continue
        ring = rost_etale_mod2(term.n)
        algebraic = cycle_image_mod2(term.n).degrees
        for c in ring.degrees():
            degree = c + 2 * term.j
            records.append(
                {
                    "degree": degree,
                    "twist": (degree // 2) % 2 if degree % 2 == 0 else None,
                    "order": 2,
                    "generator": ring.basis_label(c),
                    "source": {"n": term.n, "j": term.j},
                    "algebraic": c in algebraic,
                }
            )
    return records


def _quadric_mod2s_records(d: int, s: int) -> list[dict]:
    records = []
    for term in decompose_motive(d).terms:
        if term.n == 0:
            records.append(
                {
                    "degree": 2 * term.j,
                    "twist": term.j % 2,
                    "order": 2**s,
                    "generator": "1",
                    "source": {"n": 0, "j": term.j},
                    "algebraic": True,
                }
            )
            continue
        for c in range(0, top_rho_exponent(term.n) + 1, 2):
            p, q = twist_bidegree(c)
            for sm in mod_2s_group(term.n, p, q, s).summands:
                degree = c + 2 * term.j
                records.append(
                    {
                        "degree": degree,
                        "twist": (degree // 2) % 2,
                        "order": sm.order,
                        "generator": sm.label,
                        "source": {"n": term.n, "j": term.j},
                        "algebraic": None,
                    }
                )
    return records


def _sort_records(records: list[dict]) -> list[dict]:
    def key(r):
        src = r["source"] or {"n": -1, "j": 0}
        return (r["degree"], -src["n"], src["j"], r["generator"])

    return sorted(records, key=key)


def _order_str(order: int) -> str:
    return "Z2" if order == 0 else f"Z/{order}"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_records(target: str, coefficients: str, records: list[dict], fmt: str) -> str:
    records = _sort_records(records)
    if fmt == "json":
        return (
            json.dumps(
                {"target": target, "coefficients": coefficients, "records": records},
                indent=2,
            )
            + "\n"
        )
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(RECORD_FIELDS)
        for r in records:
            src = r["source"] or {}
            writer.writerow(
                [
                    r["degree"],
                    "" if r["twist"] is None else r["twist"],
                    r["order"],
                    r["generator"],
                    src.get("n", ""),
                    src.get("j", ""),
                    "" if r["algebraic"] is None else str(r["algebraic"]).lower(),
                ]
            )
        return buf.getvalue()
    lines = [f"# {target}  coefficients={coefficients}"]
    lines.append(f"{'degree':>6}  {'twist':>5}  {'order':>6}  {'generator':<24}  {'source':<10}  algebraic")
    for r in records:
        src = r["source"]
        src_s = f"M{src['n']}*T{src['j']}" if src else "-"
        alg = "-" if r["algebraic"] is None else ("yes" if r["algebraic"] else "NO")
        twist = "-" if r["twist"] is None else str(r["twist"])
        lines.append(
            f"{r['degree']:>6}  {twist:>5}  {_order_str(r['order']):>6}  {r['generator']:<24}  {src_s:<10}  {alg}"
        )
    return "\n".join(lines) + "\n"


def parse_records_json(text: str) -> dict:
    """Inverse of the JSON emitter; parse(emit(x)) round-trips."""
    return json.loads(text)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_decompose(args) -> int:
    dec = decompose_motive(args.d)
    if args.format == "json":
        payload = {
            "d": dec.d,
            "expansion": list(dec.expansion),
            "residual": dec.residual,
            "terms": [{"n": t.n, "j": t.j} for t in dec.terms],
            "rendered": dec.render(),
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("n", "j"))
        for t in dec.terms:
            writer.writerow((t.n, t.j))
        _emit(buf.getvalue(), args.out)
    else:
        lines = [
            f"Q^{dec.d}: {dec.render()}",
            f"expansion: {list(dec.expansion)} residual: {dec.residual}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _parse_coeff(spec: str) -> tuple[str, Optional[int]]:
    if spec == "mod2":
        return "mod2", None
    if spec == "2adic":
        return "2adic", None
    if spec.startswith("mod2s:"):
        s = int(spec.split(":", 1)[1])
        if s < 1:
            raise ValueError("coefficient level must be >= 1")
        return "mod2s", s
    raise ValueError(f"unknown coefficient spec {spec!r} (use mod2 | mod2s:<s> | 2adic)")


def _cmd_cohomology(args) -> int:
    kind, s = _parse_coeff(args.coeff)
    if (args.d is None) == (args.rost is None):
        raise ValueError("give exactly one target: a quadric dimension or --rost <n>")
    if args.rost is not None:
        target = f"M{args.rost}"
        if kind == "mod2":
            records = _rost_mod2_records(args.rost)
        elif kind == "mod2s":
            records = _rost_mod2s_records(args.rost, s)
        else:
            records = _records_from_graded(rost_etale_table(args.rost).graded())
    else:
        target = f"Q^{args.d}"
        if kind == "mod2":
            records = _quadric_mod2_records(args.d)
        elif kind == "mod2s":
            records = _quadric_mod2s_records(args.d, s)
        else:
            records = _records_from_graded(assemble_cohomology(args.d))
    _emit(_render_records(target, args.coeff, records, args.format), args.out)
    return 0


def _cmd_nonalgebraic(args) -> int:
    report = nonalgebraic_report(args.d)
    rows = [{"degree": deg, "dim": dim, "mod4": deg % 4} for deg, dim in report.dims]
    if args.format == "json":
        payload = {
            "target": f"Q^{args.d}",
            "has_nonalgebraic": report.has_nonalgebraic,
            "records": rows,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("degree", "dim", "mod4"))
        for r in rows:
            writer.writerow((r["degree"], r["dim"], r["mod4"]))
        _emit(buf.getvalue(), args.out)
    else:
        lines = [f"# Q^{args.d}  non-algebraic quotient (torsion only; free part is algebraic)"]
        if rows:
            lines.append(f"{'degree':>6}  {'dim':>3}  c mod 4")
            lines += [f"{r['degree']:>6}  {r['dim']:>3}  {r['mod4']}" for r in rows]
        else:
            lines.append("all classes algebraic")
        lines.append(f"has_nonalgebraic: {str(report.has_nonalgebraic).lower()}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    opts = VerifyOptions(
        smax=args.smax,
        dmax=args.dmax,
        nmax=args.nmax,
        window=args.window,
        parallel=args.parallel,
    )
    results = run_checks(args.scope, opts)
    ok = all(r.passed for r in results)
    if args.format == "json":
        payload = {
            "scope": args.scope,
            "passed": ok,
            "checks": [r.as_dict() for r in results],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = []
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            line = f"{mark} {r.check_id}: {r.detail}"
            if not r.passed:
                line += f"  diff={json.dumps(r.diff, sort_keys=True)}"
            lines.append(line)
        lines.append(f"{'OK' if ok else 'MISMATCH'} ({sum(r.passed for r in results)}/{len(results)} checks)")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etale-quadrics",
        description=(
            "Exact 2-adic etale cohomology tables, cycle-map images and "
            "non-algebraic class inventories for anisotropic quadrics over the reals."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument(
            "--format", choices=("text", "json", "csv"), default="text",
            help="output format (default: text)",
        )
        p.add_argument("--out", metavar="PATH", help="write output to a file instead of stdout")

    p = sub.add_parser("decompose", help="motive decomposition of the dimension-d quadric")
    p.add_argument("d", type=int, help="quadric dimension (>= 1)")
    add_common(p)
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("cohomology", help="cohomology table of a quadric or a Rost motive")
    p.add_argument("d", type=int, nargs="?", help="quadric dimension (>= 1)")
    p.add_argument("--rost", type=int, metavar="N", help="target the index-N Rost motive instead")
    p.add_argument(
        "--coeff", default="2adic", metavar="SPEC",
        help="coefficients: mod2 | mod2s:<s> | 2adic (default: 2adic)",
    )
    add_common(p)
    p.set_defaults(fn=_cmd_cohomology)

    p = sub.add_parser("nonalgebraic", help="per-degree quotient by the cycle-map image")
    p.add_argument("d", type=int, help="quadric dimension (>= 1)")
    add_common(p)
    p.set_defaults(fn=_cmd_nonalgebraic)

    p = sub.add_parser("verify", help="run the built-in exactness sweeps")
    p.add_argument(
        "--scope", default="all", choices=SCOPES,
        help="check group to run (default: all)",
    )
    p.add_argument("--smax", type=int, default=8, help="tower depth (default: 8)")
    p.add_argument("--dmax", type=int, default=512, help="dimension sweep bound (default: 512)")
    p.add_argument("--nmax", type=int, default=6, help="Rost index bound (default: 6)")
    p.add_argument("--window", type=int, default=4, help="stabilization window (default: 4)")
    p.add_argument(
        "--parallel", action="store_true",
        help="run sweeps on a thread pool; output bytes are unchanged",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InvalidDimension, InvalidIndex, UnknownFamily, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
