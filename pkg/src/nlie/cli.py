"""Command-line interface: ``nlie <command> ...``.

Every command except ``catalog`` emission prints a JSON report on stdout
and a one-line summary on stderr.  Exit codes: 0 success, 1 I/O or parse
error, 2 failed precondition, 3 normalization failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import time

from . import io as nio
from .algebra import check_alternating, check_filippov, derived_series, upper_central_series
from .catalog import DisputedEntry, InvalidParameters, Label, build, list_for, parse_label
from .classifier import ClassifierError, NormalizationFailure, classify
from .invariants import fingerprint, graded_iso_search, signed_perm_search
from .linalg import Field, invert, matmul
from .sampling import sample_extensions

EXIT_OK, EXIT_IO, EXIT_PRECONDITION, EXIT_NORMALIZATION = 0, 1, 2, 3


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _digest(*blobs: bytes) -> str:
    h = hashlib.sha256()
    for b in blobs:
        h.update(b)
    return "sha256:" + h.hexdigest()


def _field_arg(args, fallback: str = "Q") -> Field | None:
    text = args.field or os.environ.get(nio.ENV_FIELD) or fallback
    try:
        return Field.parse(text)
    except ValueError as e:
        raise CommandError(str(e), EXIT_IO) from None


def _read(path: str, field) -> tuple:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise CommandError(f"{path}: {e.strerror or e}", EXIT_IO) from None
    try:
        alg = nio.loads(raw.decode("utf-8"), field)
    except UnicodeDecodeError as e:
        raise CommandError(f"{path}: not UTF-8 ({e})", EXIT_IO) from None
    except ValueError as e:
        raise CommandError(f"{path}: {e}", EXIT_IO) from None
    return alg, raw


def _matrix(F: Field, P) -> list:
    return nio.matrix_to_json(F, P)


# -- commands ----------------------------------------------------------------


def cmd_verify(args) -> tuple:
    a, raw = _read(args.file, args.field)
    alt = check_alternating(a)
    fil = check_filippov(a)
    res = {"alternating": alt, "filippov": bool(fil)}
    if not fil:
        res["counterexample"] = {
            "x": list(fil.x),
            "y": list(fil.y),
            "lhs": [a.field.format_scalar(v) for v in fil.lhs],
            "rhs": [a.field.format_scalar(v) for v in fil.rhs],
        }
    res["ok"] = alt and bool(fil)
    if res["ok"]:
        summary = "pass"
    elif not fil:
        summary = f"fail at x={tuple(fil.x)} y={tuple(fil.y)}"
    else:
        summary = "fail: table is not alternating"
    return _digest(raw), res, summary


def cmd_info(args) -> tuple:
    a, raw = _read(args.file, args.field)
    low = derived_series(a)
    up = upper_central_series(a)
    fp = fingerprint(a, profile=not args.no_profile)
    res = {
        "arity": a.n,
        "dim": a.d,
        "field": str(a.field),
        "dim_derived": a.derived.dim,
        "dim_center": a.center.dim,
        "lower_central_dims": list(low.derived_dims),
        "upper_central_dims": list(up.central_dims),
        "class": low.nilpotency_class,
        "fingerprint": fp.as_dict(),
    }
    summary = f"dim A^2={res['dim_derived']} dim Z={res['dim_center']} class={res['class']}"
    return _digest(raw), res, summary


def _classification_payload(F: Field, r) -> dict:
    return {"label": str(r.label), "witness": _matrix(F, r.witness.P), "trace": r.trace}


def cmd_classify(args) -> tuple:
    a, raw = _read(args.file, args.field)
    try:
        r = classify(a)
    except NormalizationFailure as e:
        raise CommandError(f"normalization failure: {e}", EXIT_NORMALIZATION) from None
    except ClassifierError as e:
        raise CommandError(f"{type(e).__name__}: {e}", EXIT_PRECONDITION) from None
    return _digest(raw), _classification_payload(a.field, r), str(r.label)


def cmd_iso(args) -> tuple:
    a, ra = _read(args.file_a, args.field)
    b, rb = _read(args.file_b, args.field)
    if (a.n, a.d, a.field) != (b.n, b.d, b.field):
        raise CommandError("algebras differ in arity, dimension or field", EXIT_PRECONDITION)
    F = a.field
    budget = args.budget
    res = {"isomorphic": "unknown", "witness": None, "checked": 0, "method": None}
    sp = signed_perm_search(a, b, min(budget, 10**5) if not args.perm_only else budget)
    res["checked"] += sp.checked
    if sp.witness is not None:
        res.update(isomorphic=True, witness=_matrix(F, sp.witness.P), method="signed permutation")
    elif not args.perm_only:
        _iso_general(a, b, budget, res)
    summary = f"isomorphic: {res['isomorphic']}"
    return _digest(ra, rb), res, summary


def _iso_general(a, b, budget, res):
    F = a.field
    fa = fingerprint(a, profile=F.is_finite)
    fb = fingerprint(b, profile=F.is_finite)
    if fa != fb:
        res.update(isomorphic=False, method="invariants differ")
        return
    try:
        ca, cb = classify(a), classify(b)
    except ClassifierError:
        ca = cb = None
    if ca is not None and ca.label == cb.label:
        P = matmul(F, [list(r) for r in ca.witness.P], invert(F, [list(r) for r in cb.witness.P]))
        res.update(isomorphic=True, witness=_matrix(F, P), method="common normal form")
        return
    if F.is_finite and fa.nilpotency_class == 2:
        g = graded_iso_search(a, b, budget)
        res["checked"] += g.checked
        if g.witness is not None:
            res.update(isomorphic=True, witness=_matrix(F, g.witness.P), method="graded search")
        elif g.status == "none":
            res.update(isomorphic=False, method="graded search exhausted")
        else:
            res["method"] = "graded search truncated"


def cmd_catalog(args) -> tuple:
    F = _field_arg(args)
    if args.list:
        n, d = args.list
        try:
            cat = list_for(n, d, F)
        except (InvalidParameters, ValueError) as e:
            raise CommandError(str(e), EXIT_PRECONDITION) from None
        res = {"arity": n, "dim": d, "labels": [str(l) for l in cat.labels], "complete": cat.complete}
        return _digest(f"{n} {d}".encode()), res, f"{len(cat.labels)} labels"
    if not args.label:
        raise CommandError("give a label to emit or --list N D", EXIT_IO)
    try:
        lab = parse_label(args.label, args.arity)
        if args.reading:
            lab = Label(lab.family, lab.params, args.reading)
        alg = build(lab, F)
    except DisputedEntry as e:
        raise CommandError(str(e), EXIT_PRECONDITION) from None
    except InvalidParameters as e:
        raise CommandError(str(e), EXIT_PRECONDITION) from None
    return None, nio.dumps(alg), str(lab)


def cmd_sample(args) -> tuple:
    F = _field_arg(args, fallback="GF(2)")
    if args.arity < 3:
        raise CommandError("sampling needs arity n >= 3", EXIT_PRECONDITION)
    if args.dim > args.arity + 5 or args.dim < args.arity + 1:
        raise CommandError("sampling needs n+1 <= d <= n+5", EXIT_PRECONDITION)
    rep = sample_extensions(args.arity, args.dim, F, args.count, args.seed, out_dir=args.out)
    res = rep.as_dict()
    return _digest(f"{args.arity} {args.dim} {F} {args.count} {args.seed}".encode()), res, (
        f"{rep.count} samples, {len(rep.failures)} failures"
    )


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field Q or GF(p); reinterprets integral files, defaults to $%s" % nio.ENV_FIELD)
    common.add_argument("--out", help="write the JSON report (or emitted algebra) to this path; for sample, a directory")
    p = argparse.ArgumentParser(prog="nlie", description="Exact tools for nilpotent n-Lie algebras of class two.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check alternation and the Filippov identity")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("info", parents=[common], help="structure dimensions and fingerprint")
    s.add_argument("file")
    s.add_argument("--no-profile", action="store_true", help="skip the ad-rank profile")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("classify", parents=[common], help="catalog label with a verified witness")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("iso", parents=[common], help="decide isomorphism where possible")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--perm-only", action="store_true", help="only search signed permutations")
    s.add_argument("--budget", type=int, default=10**6)
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("catalog", parents=[common], help="emit a catalog algebra or list labels")
    s.add_argument("label", nargs="?")
    s.add_argument("--list", nargs=2, type=int, metavar=("N", "D"))
    s.add_argument("--arity", type=int, help="arity for abelian labels F(d)")
    s.add_argument("--reading", choices=["A", "B"], help="table reading for L7(3)")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("sample", parents=[common], help="classify random class-two central extensions")
    s.add_argument("arity", type=int)
    s.add_argument("dim", type=int)
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_sample)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command != "catalog" and args.field is not None:
            Field.parse(args.field)
        digest, result, summary = args.func(args)
    except CommandError as e:
        print(f"nlie {args.command}: {e}", file=sys.stderr)
        return e.code
    except ValueError as e:
        print(f"nlie {args.command}: {e}", file=sys.stderr)
        return EXIT_IO
    if args.command == "catalog" and isinstance(result, str):
        _emit(result, args.out)
        print(summary, file=sys.stderr)
        return EXIT_OK
    report = {
        "command": args.command,
        "input_digest": digest,
        "result": result,
        "elapsed": round(time.perf_counter() - start, 6),
        "seed": getattr(args, "seed", None),
    }
    text = _compact_lists(json.dumps(report, indent=2)) + "\n"
    if args.out and args.command != "sample":
        _emit(text, args.out)
    else:
        sys.stdout.write(text)
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            with open(os.path.join(args.out, "report.json"), "w", encoding="utf-8") as fh:
                fh.write(text)
    print(summary, file=sys.stderr)
    return EXIT_OK


def _compact_lists(text: str) -> str:
    """Put innermost lists of scalars on one line."""
    return re.sub(r"\[\s+([^\[\]{}]*?)\s+\]", lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)


def _emit(text: str, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
