"""``mrclab`` command line.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import class_calculus as cc
from . import golden
from .config import ConfigError, ExperimentConfig, curve_from_spec, read_spec
from .curves import ParametricRational
from .errors import DomainViolation, IdentityViolation, MrcLabError
from .koszul import BettiDiagram, curve_betti_diagram
from .mrc import check_with_escalation, generic_diagram, index_r, mrc_verdict, predicted_tail

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_range(text: str) -> list[int]:
    """'5', '4..40' (inclusive) or '3,5,7'."""
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


def _gamma_range(text: str) -> list[int]:
    """'28' or '28..36' (half-open, like a window [P(r-1), P(r)))."""
    if ".." in text:
        lo, hi = text.split("..")
        vals = list(range(int(lo), int(hi)))
    else:
        vals = [int(text)]
    if not vals:
        raise argparse.ArgumentTypeError(f"empty γ-range {text!r}")
    return vals


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _render_diagram(D: BettiDiagram, fmt: str, title: str = "") -> str:
    if fmt == "json":
        return D.to_json()
    if fmt == "csv":
        return D.to_csv()
    return (title + "\n" if title else "") + D.to_text()


# ------------------------------------------------------------- commands


def cmd_demo_quintics(args) -> int:
    primes = args.prime or [31, 101]
    ok = True
    records = []
    text = []
    for p in primes:
        for name, forms in golden.QUINTIC_FORMS.items():
            C = ParametricRational(forms, name=name, regularity=golden.QUINTIC_REGULARITY).sample(p)
            cd = curve_betti_diagram(C, len(golden.CURVE_TABLES[name]) - 1)
            gd = generic_diagram(C, golden.QUINTIC_GAMMA, args.samples, args.seed,
                                 rows=len(golden.POINT_TABLES[name]) - 1)
            rep = mrc_verdict(gd, golden.QUINTIC_GAMMA, C)
            exp = golden.QUINTIC_VERDICTS[name]
            match_c = golden.matches(cd, golden.CURVE_TABLES[name])
            match_g = golden.matches(gd, golden.POINT_TABLES[name])
            match_v = rep.mrc == exp["mrc"] and rep.igc == exp["igc"] and rep.q_check
            ok &= match_c and match_g and match_v
            records.append({"curve": name, "prime": p, "curve_rows": cd.rows(), "points_rows": gd.rows(),
                            "gamma": golden.QUINTIC_GAMMA, "samples": args.samples, "seed": args.seed,
                            "mrc": rep.mrc, "igc": rep.igc, "matches": match_c and match_g and match_v})
            text.append(f"== {name} over GF({p}) ==")
            text.append(f"curve ({'match' if match_c else 'MISMATCH'}):\n{cd.to_text(4)}")
            text.append(f"{golden.QUINTIC_GAMMA} general points ({'match' if match_g else 'MISMATCH'}):\n{gd.to_text(4)}")
            text.append(f"MRC {'holds' if rep.mrc else 'fails'}, IGC {'holds' if rep.igc else 'fails'}"
                        f" ({'as expected' if match_v else 'UNEXPECTED'})\n")
    if args.format == "json":
        out = json.dumps({"ok": ok, "tables": records}, sort_keys=True)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["curve", "prime", "table", "j", "i0", "i1", "i2", "i3"])
        for r in records:
            for key in ("curve_rows", "points_rows"):
                for j, row in enumerate(r[key]):
                    w.writerow([r["curve"], r["prime"], key.split("_")[0], j] + row[:4])
        out = buf.getvalue()
    else:
        out = "\n".join(text) + ("all tables match" if ok else "MISMATCH against reference tables")
    _emit(out, args.output)
    return OK if ok else FAILED


def _load_curve(args, min_points=0):
    return curve_from_spec(read_spec(args.curve), args.prime, min_points=min_points)


def cmd_betti(args) -> int:
    C = _load_curve(args, min_points=args.gamma or 0)
    if args.gamma is None:
        rows = args.rows if args.rows is not None else max(C.regularity or 1, 1)
        D = curve_betti_diagram(C, rows)
        title = f"{C.name} over GF({C.p})"
    else:
        rows = args.rows if args.rows is not None else index_r(args.gamma, C.hilbert, C.regularity) + 1
        D = generic_diagram(C, args.gamma, args.samples, args.seed, rows=rows)
        title = f"{args.gamma} general points on {C.name} over GF({C.p}), {args.samples} samples"
    _emit(_render_diagram(D, args.format, title), args.output)
    return OK


def cmd_predict(args) -> int:
    C = _load_curve(args)
    preds = [predicted_tail(g, C) for g in args.gamma]
    if args.format == "json":
        out = json.dumps([{"gamma": t.gamma, "r": t.r, "q": list(t.q), "pairs": t.pairs,
                           "row_r_minus_1": t.row(t.r - 1), "row_r": t.row(t.r)} for t in preds], sort_keys=True)
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["gamma", "r", "i", "Q", "b_i+1,r-1", "b_i,r"])
        for t in preds:
            for i, (q, (a, b)) in enumerate(zip(t.q, t.pairs)):
                w.writerow([t.gamma, t.r, i, q, a, b])
        out = buf.getvalue()
    else:
        lines = []
        for t in preds:
            lines.append(f"γ={t.gamma}: r={t.r}, Q={list(t.q)}")
            lines.append(f"  row {t.r - 1}: " + " ".join(str(x) if x else "--" for x in t.row(t.r - 1)))
            lines.append(f"  row {t.r}: " + " ".join(str(x) if x else "--" for x in t.row(t.r)))
        out = "\n".join(lines)
    _emit(out, args.output)
    return OK


def cmd_mrc_check(args) -> int:
    if args.config:
        cfg = ExperimentConfig.load(args.config)
    else:
        if not args.curve or not args.gamma:
            raise UsageError("mrc-check needs --config, or --curve and --gamma")
        cfg = ExperimentConfig(curve=read_spec(args.curve), gammas=args.gamma)
    for key in ("prime", "samples", "seed", "expected", "format", "output"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    cfg.__post_init__()
    spec = read_spec(cfg.curve)
    need = max(cfg.gammas)

    def make(p):
        return curve_from_spec(spec, p, min_points=need)

    reports = check_with_escalation(make, cfg.gammas, cfg.samples, cfg.seed, cfg.ladder, start=cfg.prime,
                                    max_escalations=cfg.escalations)
    if cfg.format == "json":
        out = json.dumps([r.to_dict() for r in reports], sort_keys=True)
    elif cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["curve", "prime", "gamma", "r", "samples", "q_check", "lower_bounds", "mrc", "igc", "failing"])
        for r in reports:
            w.writerow([r.curve, r.prime, r.gamma, r.r, r.samples, r.q_check, r.lower_bounds, r.mrc, r.igc,
                        " ".join(map(str, r.failing))])
        out = buf.getvalue()
    else:
        out = "\n".join(r.to_text() for r in reports)
    _emit(out, cfg.output)
    if cfg.expected == "report-only":
        return OK
    want = cfg.expected == "holds"
    good = all(r.mrc == want and r.q_check for r in reports)
    return OK if good else FAILED


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_classes(args) -> int:
    gs = args.g
    if min(gs) < 4:
        raise DomainViolation(f"g must be >= 4, got {min(gs)}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["g", "i", "A", "B_1", "B_2", "Z_lambda", "Z_psi_x", "Z_psi_y", "Z_psi_z",
                "a_j", "b_1j", "b_2j", "c_j", "b_2j_printed", "discrepancy"])
    log = []
    rows = []
    for g in gs:
        i_values = args.i or list(range(1, (g - 1) // 2 + 1))
        for i in i_values:
            A, B1, B2 = cc.summed_coefficients(g, i)
            Z = cc.grr_class_check(g, i, g + 2, n_alt=g + 6)
            if (Z.lam, Z.psi_x, Z.psi_y) != (A, B1, B2):
                raise IdentityViolation(f"g={g}, i={i}: degeneracy class {Z} differs from ({A}, {B1}, {B2})")
            T = cc.coefficient_table(g, i)
            cc.difference_class(g - i - 1, i, g)
            log.extend(T.discrepancies)
            joined = lambda d: " ".join(_frac(d[j]) for j in sorted(d))
            printed = " ".join(f"{_frac(a)}|{_frac(b)}" for a, b in (T.b2_printed[j] for j in sorted(T.b2_printed)))
            row = [g, i, _frac(A), _frac(B1), _frac(B2)] + [_frac(x) for x in Z.coefficients()] + [
                joined(T.a), joined(T.b1), joined(T.b2), joined(T.c), printed, "yes" if T.discrepancies else "no"]
            w.writerow(row)
            rows.append(dict(zip(["g", "i", "A", "B_1", "B_2"], row[:5]), discrepancy=bool(T.discrepancies)))
    if args.format == "json":
        out = json.dumps({"rows": rows, "discrepancies": log}, sort_keys=True)
    elif args.format == "text":
        out = "\n".join(f"g={r['g']} i={r['i']}: A={r['A']} B_1={r['B_1']} B_2={r['B_2']}" for r in rows)
    else:
        out = buf.getvalue().rstrip("\n")
    _emit(out, args.output)
    if log and not args.quiet:
        print("b_2j closed-form discrepancies (relations used):", file=sys.stderr)
        for line in log:
            print("  " + line, file=sys.stderr)
    return OK


def cmd_verify_identities(args) -> int:
    lines = []
    for rank in range(2, 9):
        for i in range(1, rank + 1):
            for which in ("c1", "c2"):
                cc.chern_wedge_identity(rank, i, which, seed=args.seed)
        for which in ("c1", "c2"):
            cc.chern_wedge_identity(rank, 1, which, twist=True, seed=args.seed)
    lines.append("Chern identities for exterior powers and twists, ranks 2..8: ok")
    checks = {
        "b(2,2) = 6": cc.b_count(2, 2) == 6,
        "c(2,2,1) = 1": cc.c_count(2, 2, 1) == 1,
        "b(g,g) = (g-1)g(g+1), g=2..10": all(cc.b_count(g, g) == (g - 1) * g * (g + 1) for g in range(2, 11)),
        "failure gate holds at (4,24)": cc.mrc_failure_gate(4, 24),
        "failure gate fails at (4,9)": not cc.mrc_failure_gate(4, 9),
    }
    for g in range(4, 41):
        for i in range(1, (g - 1) // 2 + 1):
            cc.difference_class(g - i - 1, i, g)
    lines.append("difference classes C_{g-i-1} - C_i = C(g-1,i)θ, g=4..40: ok")
    for name, good in checks.items():
        lines.append(f"{name}: {'ok' if good else 'FAILED'}")
    ok = all(checks.values())
    if args.format == "json":
        _emit(json.dumps({"ok": ok, "checks": checks}, sort_keys=True), args.output)
    else:
        _emit("\n".join(lines), args.output)
    return OK if ok else FAILED


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mrclab", description="Betti numbers of points on curves over GF(p).")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, prime=True):
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--output", "-o")
        sp.add_argument("--seed", type=int, default=0)
        if prime:
            sp.add_argument("--prime", type=int, default=101)

    sp = sub.add_parser("demo-quintics", help="the two rational quintics and 28 general points on each")
    common(sp, prime=False)
    sp.add_argument("--prime", type=int, action="append", help="repeatable; default 31 and 101")
    sp.add_argument("--samples", type=int, default=5)
    sp.set_defaults(func=cmd_demo_quintics)

    sp = sub.add_parser("betti", help="Betti diagram of a curve or of γ general points on it")
    common(sp)
    sp.add_argument("--curve", required=True, help="builtin name, inline JSON or JSON file")
    sp.add_argument("--gamma", type=int)
    sp.add_argument("--rows", type=int)
    sp.add_argument("--samples", type=int, default=5)
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("predict", help="predicted tail rows r-1 and r")
    common(sp)
    sp.add_argument("--curve", required=True)
    sp.add_argument("--gamma", type=_gamma_range, required=True)
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("mrc-check", help="generic diagrams and MRC/IGC verdicts over a γ-range")
    sp.add_argument("--config")
    sp.add_argument("--curve")
    sp.add_argument("--gamma", type=_gamma_range)
    sp.add_argument("--prime", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--expected", choices=("holds", "fails", "report-only"))
    sp.add_argument("--format", choices=("text", "json", "csv"))
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_mrc_check)

    sp = sub.add_parser("classes", help="divisor class coefficients as CSV")
    sp.add_argument("--g", type=_int_range, default=_int_range("4..40"))
    sp.add_argument("--i", type=_int_range)
    sp.add_argument("--format", choices=("text", "json", "csv"), default="csv")
    sp.add_argument("--output", "-o")
    sp.add_argument("--quiet", action="store_true", help="do not print the discrepancy log")
    sp.set_defaults(func=cmd_classes)

    sp = sub.add_parser("verify-identities", help="Chern, enumerative and gate identities")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--output", "-o")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify_identities)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except IdentityViolation as exc:
        print(f"mrclab: identity violated: {exc}", file=sys.stderr)
        return FAILED
    except (UsageError, ConfigError, DomainViolation, MrcLabError, ValueError, OSError) as exc:
        print(f"mrclab: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
