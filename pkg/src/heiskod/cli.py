"""Command-line front end.

Subcommands: presentation, verify, classify-form, search-forms, invariants,
census, kappa, selftest.  Exit codes are never conflated:

    0  success
    1  a verified-false mathematical claim (failing relators, failing census
       claim, failing self-test criterion)
    2  usage or precondition error

Output is human-readable text by default; ``--format json`` or ``csv``
switches where supported.  Numbers are always printed in full and slopes as
``num/den``.  Ranges are written ``2..6``; lists ``5,7,11``.  All
configuration is on the command line.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .acceptance import run_all
from .braid import build_presentation, kernel_generator_sets, presentation_to_json, word_display
from .cohomology import classify_form, search_family_params
from .errors import HeiskodError, InconsistencyError, PreconditionError
from .fplinalg import AlternatingForm, FpMatrix
from .invariants import (
    CSV_COLUMNS,
    CensusRow,
    census,
    claims_to_json,
    degenerate_invariants,
    kappa,
    nondegenerate_invariants,
    row_record,
    rows_to_csv,
)
from .verify import (
    bfs_subgroup_order,
    report_json,
    standard_assignment_degenerate,
    standard_assignment_nondegenerate,
    verify_assignment,
)


def _parse_range(text: str) -> list[int]:
    """Accept '5', '2..6' or '5,7,11'."""
    try:
        text = text.strip()
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise PreconditionError(f"cannot parse range {text!r}; use forms like 5, 2..6 or 5,7,11") from None


def _parse_residues(text: Optional[str], what: str) -> Optional[list[int]]:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise PreconditionError(f"cannot parse {what} list {text!r}") from None


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_presentation(args) -> int:
    pres = build_presentation(args.b)
    if args.format == "json":
        _emit(json.dumps(presentation_to_json(pres), indent=2), args.output)
        return 0
    lines = [f"pure braid group presentation at genus b = {pres.b}"]
    lines.append("generators: " + " ".join(g.display() for g in pres.generators))
    lines.append(f"relators ({len(pres.relators)}):")
    for i, rel in enumerate(pres.relators):
        lines.append(f"  {i:3d}. [{rel.source}] " + " ".join(word_display(rel.word)))
    _emit("\n".join(lines), args.output)
    return 0


def cmd_verify(args) -> int:
    lam = _parse_residues(getattr(args, "lam", None), "lambda")
    mu = _parse_residues(args.mu, "mu")
    if args.family == "degenerate":
        assignment = standard_assignment_degenerate(args.b, args.p)
    else:
        if lam is None or mu is None:
            raise PreconditionError("the non-degenerate family needs --lambda and --mu")
        assignment = standard_assignment_nondegenerate(args.b, args.p, lam, mu)
    report = verify_assignment(build_presentation(args.b), assignment)

    bfs_lines = []
    bfs_ok = True
    record_extra = {}
    if args.bfs_oracle:
        group = assignment.target
        orders = []
        for label, gens, m in zip(
            ("m1", "m2"), kernel_generator_sets(args.b), (report.m1, report.m2)
        ):
            size = bfs_subgroup_order(
                group, [assignment.image(g) for g in gens], bound=args.enumeration_bound
            )
            agrees = size * m == group.order
            bfs_ok = bfs_ok and agrees
            orders.append({"index": label, "subgroup_order": size, "agrees": agrees})
            bfs_lines.append(
                f"BFS oracle [{label}]: subgroup order {size}, "
                f"{'agrees with' if agrees else 'CONTRADICTS'} fast index"
            )
        record_extra["bfs_oracle"] = orders

    if args.format == "json":
        payload = report.to_json_dict()
        payload.update(record_extra)
        _emit(json.dumps(payload, indent=2), args.output)
    else:
        lines = [
            f"family {report.family}, b = {report.b}, p = {report.p}, target order {assignment.target.order}",
            f"relators passed: {report.passed}/{report.total_relators}",
            f"A12 image order: {report.a12_order}",
            f"kernel-set image indices: m1 = {report.m1}, m2 = {report.m2}",
            f"surjective: {report.is_surjective}",
            *bfs_lines,
        ]
        for idx, src, value in report.failures:
            lines.append(f"  FAILED relator {idx} [{src}] evaluates to {value!r}")
        _emit("\n".join(lines), args.output)
    ok = report.all_passed and report.a12_order == args.p and report.is_surjective and bfs_ok
    return 0 if ok else 1


def _form_from_args(args) -> AlternatingForm:
    lam = _parse_residues(getattr(args, "lam", None), "lambda")
    mu = _parse_residues(args.mu, "mu")
    if args.matrix_json:
        with open(args.matrix_json) as fh:
            entries = json.load(fh)
        return AlternatingForm(FpMatrix(entries, args.p))
    if lam is None or mu is None:
        raise PreconditionError("give either --matrix-json or both --lambda and --mu")
    if args.b is None:
        raise PreconditionError("--b is required with --lambda/--mu")
    return AlternatingForm.family(args.b, args.p, lam, mu)


def cmd_classify_form(args) -> int:
    form = _form_from_args(args)
    cls = classify_form(form)
    record = {
        "b": form.dim // 4,
        "p": form.p,
        "dim": form.dim,
        "alternating": cls.is_alternating,
        "symplectic": cls.is_symplectic,
        "kernel_dim": form.kernel_dim(),
        "diagonal_multiple": cls.diagonal_multiple,
        "heisenberg_type": cls.is_heisenberg_type,
        "det": form.det().value,
    }
    if args.format == "json":
        _emit(json.dumps(record, indent=2), args.output)
    else:
        _emit("\n".join(f"{k}: {v}" for k, v in record.items()), args.output)
    return 0


def cmd_search_forms(args) -> int:
    hits = search_family_params(args.b, args.p, args.count)
    if args.format == "json":
        payload = {
            "b": args.b,
            "p": args.p,
            "hits": [{"lambda": list(l), "mu": list(m)} for l, m in hits],
            "exhaustive": args.count is None or len(hits) < args.count,
        }
        _emit(json.dumps(payload, indent=2), args.output)
    else:
        lines = []
        if not hits:
            lines.append(f"no valid (lambda, mu) exist for b = {args.b}, p = {args.p} (exhaustive search)")
            if args.p == 3:
                lines.append(
                    "obstruction: mod 3, lambda_j*mu_j != 1 forces mu_j = -lambda_j, "
                    "so sum(lambda) = 1 would give sum(mu) = -1 != 1"
                )
        for l, m in hits:
            lines.append(f"lambda = {','.join(map(str, l))}  mu = {','.join(map(str, m))}")
        _emit("\n".join(lines), args.output)
    return 0


def cmd_invariants(args) -> int:
    if args.family == "degenerate":
        inv = degenerate_invariants(args.b, args.p)
    else:
        inv = nondegenerate_invariants(args.b, args.p)
    record = row_record(CensusRow(args.family, args.b, args.p, inv))
    record["nu"] = _fraction_str(inv.slope)
    record["group_order"] = inv.group_order
    record["n"] = inv.n
    if args.format == "json":
        _emit(json.dumps(record, indent=2), args.output)
    elif args.format == "csv":
        _emit(
            ",".join(CSV_COLUMNS) + "\n" + ",".join(str(record[c]) for c in CSV_COLUMNS),
            args.output,
        )
    else:
        _emit("\n".join(f"{k}: {v}" for k, v in record.items()), args.output)
    return 0


def cmd_census(args) -> int:
    rows, claims = census(args.family, _parse_range(args.b), _parse_range(args.p))
    all_hold = all(c.holds for c in claims)
    if args.format == "json":
        payload = {
            "rows": [row_record(r) for r in rows],
            "claims": claims_to_json(claims),
            "all_claims_hold": all_hold,
        }
        _emit(json.dumps(payload, indent=2), args.output)
    elif args.format == "csv":
        _emit(rows_to_csv(rows), args.output)
        for c in claims:
            status = "ok" if c.holds else "FAILED"
            sys.stderr.write(f"claim [{status}] {c.name}: {c.detail}\n")
    else:
        lines = [",".join(CSV_COLUMNS)]
        for r in rows:
            rec = row_record(r)
            lines.append(",".join(str(rec[c]) for c in CSV_COLUMNS))
        lines.append("")
        for c in claims:
            status = "ok" if c.holds else "FAILED"
            lines.append(f"claim [{status}] {c.name}: {c.detail}")
        _emit("\n".join(lines), args.output)
    return 0 if all_hold else 1


def cmd_kappa(args) -> int:
    values = {b: kappa(b) for b in _parse_range(args.b)}
    if args.format == "json":
        _emit(json.dumps([{"b": b, "kappa": k} for b, k in values.items()], indent=2), args.output)
    else:
        _emit("\n".join(f"kappa({b}) = {k}" for b, k in values.items()), args.output)
    return 0


def cmd_selftest(args) -> int:
    results = run_all(quick=args.quick)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 0 if not failed else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(sub, fmt=("text", "json"), output=True):
    sub.add_argument("--format", choices=fmt, default="text")
    if output:
        sub.add_argument("--output", default=None, help="write to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heiskod",
        description="Heisenberg quotients of surface braid groups and exact double-Kodaira invariants",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("presentation", help="emit the braid-group presentation")
    sp.add_argument("--b", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(fn=cmd_presentation)

    sp = sub.add_parser("verify", help="verify a standard assignment against every relator")
    sp.add_argument("--family", choices=("degenerate", "nondegenerate"), required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", default=None, help="comma-separated, reduced mod p")
    sp.add_argument("--mu", default=None, help="comma-separated, reduced mod p")
    sp.add_argument(
        "--bfs-oracle", action="store_true",
        help="also cross-check m1, m2 by exhaustive subgroup enumeration",
    )
    sp.add_argument(
        "--enumeration-bound", type=int, default=10**7,
        help="refuse BFS enumeration beyond this many packed elements",
    )
    _add_common(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("classify-form", help="classify an alternating form")
    sp.add_argument("--b", type=int, default=None)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", default=None)
    sp.add_argument("--mu", default=None)
    sp.add_argument("--matrix-json", default=None, help="path to a JSON matrix (rows of residues)")
    _add_common(sp)
    sp.set_defaults(fn=cmd_classify_form)

    sp = sub.add_parser("search-forms", help="enumerate valid family parameters (lambda, mu)")
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--count", type=int, default=None, help="stop after this many hits (default: exhaust)")
    _add_common(sp)
    sp.set_defaults(fn=cmd_search_forms)

    sp = sub.add_parser("invariants", help="exact invariants of one fibration")
    sp.add_argument("--family", choices=("degenerate", "nondegenerate"), required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    _add_common(sp, fmt=("text", "json", "csv"))
    sp.set_defaults(fn=cmd_invariants)

    sp = sub.add_parser("census", help="tabulate a family over ranges and check the claims")
    sp.add_argument("--family", choices=("degenerate", "nondegenerate"), required=True)
    sp.add_argument("--b", required=True, help="range like 2..6")
    sp.add_argument("--p", required=True, help="range like 5..13 or list 5,7,11")
    _add_common(sp, fmt=("text", "json", "csv"))
    sp.set_defaults(fn=cmd_census)

    sp = sub.add_parser("kappa", help="count degenerate-family fibrations per base genus")
    sp.add_argument("--b", required=True, help="range like 2..10")
    _add_common(sp)
    sp.set_defaults(fn=cmd_kappa)

    sp = sub.add_parser("selftest", help="run the acceptance criteria")
    sp.add_argument("--quick", action="store_true", help="skip the BFS-oracle cross-checks")
    sp.set_defaults(fn=cmd_selftest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.fn(args)
    except PreconditionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except InconsistencyError as exc:
        sys.stderr.write(f"inconsistency: {exc}\n")
        return 1
    except HeiskodError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
