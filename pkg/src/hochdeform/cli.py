"""Command-line workbench.

Exit status: 0 when every checked property holds, 1 when one fails (cocycle
check, obstruction not a coboundary, different gauge classes, ...), 2 for
usage, parse and validation errors on the inputs, 3 when two independent
computations of the same quantity disagree (a bug, never expected).
"""

import argparse
import os
import random
import sys

from . import schema
from .algebra import validate_algebra, validate_quintuple
from .cochains import CochainSpace, delta_d_operator, gimel_operator
from .cohomology import (
    sphere_cohomology_report,
    tertiary_cohomology_report,
    tertiary_h1_via_derivations,
)
from .deform import (
    DeformationSeries,
    ProductFamilySeries,
    check_sdgen,
    check_tertass,
    cocycle_check,
    extend,
    gauge_class_check,
    gauge_transform,
    obstruction,
    tert_cocycle_check,
    tert_extend,
    tert_gauge_check,
    tert_gauge_transform,
    tert_obstruction,
)
from .errors import ConsistencyError, PreconditionError, SchemaError, ValidationError
from .fields import field_from_name
from .presets import preset_algebra, preset_quintuple
from .reduction import reduction_report
from .sweep import PROPERTIES, sweep_report

OK, FAILED, USAGE, INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _field(args):
    return field_from_name(args.field) if args.field else None


def _resolve_algebra(target, field):
    if os.path.exists(target):
        return schema.load_algebra(target, field)
    try:
        return preset_algebra(target, field or field_from_name("Q"))
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _resolve_quintuple(target, field):
    if os.path.exists(target):
        return schema.load_quintuple(target, field)
    try:
        return preset_quintuple(target, field or field_from_name("Q"))
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _load_series(path, field):
    if not os.path.exists(path):
        raise UsageError(f"no such series file: {path}")
    return schema.load_series(path, field)


def format_cochain(c, indent="  "):
    """Nonzero values, one basis tuple per line."""
    F = c.space.field
    lines = [
        f"{indent}{c.space.label(tup)} -> [{' '.join(F.format(x) for x in v)}]"
        for tup, v in c.items()
        if any(v)
    ]
    return lines or [f"{indent}0"]


def _series_header(S):
    if isinstance(S, DeformationSeries):
        return f"sphere series {S.name} over {S.algebra.name}, d={S.d}, order={S.order}, field={S.algebra.field.name}"
    return f"tertiary series {S.name} over {S.quintuple.name}, order={S.order}, field={S.algebra.field.name}"


# --------------------------------------------------------------------------
# commands; each returns (report lines, exit status)


def cmd_validate(args):
    field = _field(args)
    out = []
    if os.path.exists(args.target):
        try:
            doc = schema.load(args.target, field)
        except ValidationError as exc:
            out.append(f"invalid: {exc}")
            out.extend(f"  {r}" for r in exc.report)
            return out, FAILED
        out.append(f"file {os.path.basename(args.target)}: field {doc.field.name}")
        for name, A in doc.algebras.items():
            out.append(f"algebra {name}: ok (dim {A.dim}, {'commutative' if A.is_commutative() else 'noncommutative'})")
        for name, Q in doc.quintuples.items():
            out.append(f"quintuple {name}: ok (A={Q.A.name}, B={Q.B.name}, C={Q.C.name})")
        for name, c in doc.cochains.items():
            out.append(f"cochain {name}: signature {c.signature}")
        for name, S in doc.series.items():
            out.append(f"series {name}: {_series_header(S)}")
        return out, OK
    field = field or field_from_name("Q")
    try:
        A = preset_algebra(args.target, field)
        report = validate_algebra(A)
        what = f"algebra {A.name} (dim {A.dim})"
    except KeyError:
        try:
            Q = preset_quintuple(args.target, field)
        except KeyError as exc:
            raise UsageError(f"{args.target!r} is neither a file nor a preset") from None
        report = validate_quintuple(Q)
        what = f"quintuple {Q.name}"
    if report:
        return [f"{what}: invalid"] + [f"  {r}" for r in report], FAILED
    return [f"{what}: ok"], OK


def cmd_cohomology(args):
    field = _field(args)
    if args.d is not None:
        A = _resolve_algebra(args.target, field)
        rows = sphere_cohomology_report(A, args.d)
        out = [f"sphere complex S^{args.d} over {A.name}, field {A.field.name}",
               "degree kernel image cohomology"]
        out += [f"{r.degree} {r.kernel} {r.image} {r.cohomology}" for r in rows]
        out.append("dims [" + ", ".join(str(r.cohomology) for r in rows) + "]")
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(schema.dump_matrix(delta_d_operator(A, args.d).matrix()))
        return out, OK
    Q = _resolve_quintuple(args.target, field)
    rows = tertiary_cohomology_report(Q)
    out = [f"tertiary complex of {Q.name}, field {Q.A.field.name}", "degree kernel image cohomology"]
    out += [f"{r.degree} {r.kernel} {r.image} {r.cohomology}" for r in rows]
    h1 = tertiary_h1_via_derivations(Q)
    agree = h1 == rows[1].cohomology
    out.append(f"H1 via Der/Inn: {h1} ({'agrees' if agree else 'DISAGREES'})")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(schema.dump_matrix(gimel_operator(Q, 2).matrix()))
    return out, OK if agree else FAILED


def cmd_cocycle(args):
    S = _load_series(args.series, _field(args))
    order = args.order or S.order
    if order > S.order:
        raise UsageError(f"series is only known modulo t^{S.order}")
    out = [_series_header(S)]
    if isinstance(S, DeformationSeries):
        res = cocycle_check(S.term(1), S.d)
        check = check_sdgen
        label = f"delta_{S.d}(u_1)"
        target = delta_d_operator(S.algebra, S.d).target
    else:
        res = tert_cocycle_check(S.term(1), S.quintuple)
        check = check_tertass
        label = "gimel^2(c_1)"
        target = gimel_operator(S.quintuple, 2).target
    if res.ok:
        out.append(f"{label} = 0: cocycle")
    else:
        out.append(f"{label} != 0: not a cocycle, witness basis tuple {res.witness} = {target.label(res.witness)}")
    ok = res.ok
    for k in range(2, order + 1):
        chk = check(S, k)
        if chk.ok:
            out.append(f"order {k}: holds")
        else:
            out.append(f"order {k}: fails at t^{chk.order} on basis tuple {chk.witness}")
            ok = False
            break
    return out, OK if ok else FAILED


def cmd_obstruction(args):
    S = _load_series(args.series, _field(args))
    n = args.order if args.order is not None else len(S.terms)
    if n < 1:
        raise UsageError("the obstruction index n must be at least 1")
    out = [_series_header(S), f"obstruction to extending from t^{n + 1} to t^{n + 2}"]
    try:
        if isinstance(S, DeformationSeries):
            omega = obstruction(S, n)
            op = delta_d_operator(S.algebra, S.d)
        else:
            omega = tert_obstruction(S, n)
            op = gimel_operator(S.quintuple, 2)
    except PreconditionError as exc:
        return out + [f"precondition fails: {exc}"], FAILED
    out += format_cochain(omega)
    M = op.matrix()
    sol = op.solve(omega)
    out.append(f"{op.name}: {M.nrows}x{M.ncols}, rank {op.rank}, kernel dim {M.ncols - op.rank}")
    out.append("obstruction is a coboundary: " + ("yes" if sol is not None else "no"))
    return out, OK if sol is not None else FAILED


def cmd_extend(args):
    S = _load_series(args.series, _field(args))
    if args.order is None:
        raise UsageError("extend needs --order (the target truncation order)")
    out = [_series_header(S), f"target order {args.order}"]
    try:
        if isinstance(S, DeformationSeries):
            result, log = extend(S, args.order)
        else:
            result, log = tert_extend(S, args.order)
    except PreconditionError as exc:
        return out + [f"precondition fails: {exc}"], FAILED
    name = "u" if isinstance(S, DeformationSeries) else "c"
    for n, status in log:
        out.append(f"order {n + 2}: {status}" + (f" ({name}_{n + 1} solved)" if status == "extended" else ""))
    ok = all(status == "extended" for _, status in log)
    for i, term in enumerate(result.terms, 1):
        out.append(f"{name}_{i}:")
        out += format_cochain(term, "    ")
    if args.out:
        schema.save(args.out, result)
        out.append(f"wrote {os.path.basename(args.out)}")
    return out, OK if ok else FAILED


def cmd_gauge(args):
    field = _field(args)
    S = _load_series(args.series, field)
    A = S.algebra
    sp = CochainSpace(A, 1)
    if args.f:
        F = _load_series(args.f, field)
        if not isinstance(F, DeformationSeries) or F.algebra.key() != A.key():
            raise UsageError("the f-series must be a sphere_series over the same algebra")
        fterms = [sp.from_vector(t.coords) for t in F.terms]
        fsource = f"f from {os.path.basename(args.f)}"
    elif args.w is None:
        rng = random.Random(f"gauge:{args.seed}")
        fterms = [sp.random(rng) for _ in range(S.order - 1)]
        fsource = f"f random with seed {args.seed}"
    else:
        fterms = None
        fsource = None
    out = [_series_header(S)]
    tert = isinstance(S, ProductFamilySeries)
    if fterms is not None:
        W = tert_gauge_transform(S, fterms) if tert else gauge_transform(S, fterms)
        out.append(f"transformed by {fsource}")
        for i, term in enumerate(W.terms, 1):
            out.append(f"{'d' if tert else 'w'}_{i}:")
            out += format_cochain(term, "    ")
    ok = True
    if args.w:
        given = _load_series(args.w, field)
        if type(given) is not type(S):
            raise UsageError("both series must be of the same kind")
        if fterms is not None:
            same = all(given.term(i) == W.term(i) for i in range(1, S.order))
            out.append("given series matches the transform: " + ("yes" if same else "no"))
            ok = ok and same
        W = given
    try:
        if tert:
            same_class = tert_gauge_check(S.term(1), W.term(1), S.quintuple)
        else:
            same_class = gauge_class_check(S.term(1), W.term(1), S.d)
    except ValueError as exc:
        return out + [f"cannot compare classes: {exc}"], FAILED
    out.append("first-order classes agree: " + ("yes" if same_class else "no"))
    if args.out and fterms is not None:
        schema.save(args.out, W)
        out.append(f"wrote {os.path.basename(args.out)}")
    return out, OK if ok and same_class else FAILED


def cmd_reduce(args):
    Q = _resolve_quintuple(args.target, _field(args))
    out = [f"reduction of {Q.name}, field {Q.A.field.name}"]
    ok = True
    for r in reduction_report(Q):
        shape = f"{r.shape[0]}x{r.shape[1]}"
        if r.identical:
            out.append(f"{r.label}: matrices identical ({shape})")
        else:
            out.append(f"{r.label}: matrices differ at {r.first_difference} ({shape})")
            ok = False
    return out, OK if ok else FAILED


def cmd_sweep(args):
    field = args.field or "Q"
    text, ok = sweep_report(args.property, args.runs, args.seed, field,
                            args.order or 4, args.d, args.max_d, args.jobs)
    lines = text.rstrip("\n").split("\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return lines, OK if ok else FAILED


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Q (default) or Fp such as F7")
    common.add_argument("--order", type=int, help="truncation order, or the index n for obstruction")
    common.add_argument("--d", type=int, help="sphere dimension")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized choices")
    common.add_argument("--out", help="output file")

    p = argparse.ArgumentParser(prog="hochdeform", description="Exact deformation workbench.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate a workbench file or preset")
    s.add_argument("target")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("cohomology", parents=[common],
                       help="sphere cohomology of an algebra (with --d) or tertiary cohomology of a quintuple")
    s.add_argument("target")
    s.set_defaults(run=cmd_cohomology)

    s = sub.add_parser("cocycle", parents=[common], help="cocycle check and per-order condition check")
    s.add_argument("series")
    s.set_defaults(run=cmd_cocycle)

    s = sub.add_parser("obstruction", parents=[common], help="obstruction at index n (--order, default: number of terms)")
    s.add_argument("series")
    s.set_defaults(run=cmd_obstruction)

    s = sub.add_parser("extend", parents=[common], help="extend a series to --order")
    s.add_argument("series")
    s.set_defaults(run=cmd_extend)

    s = sub.add_parser("gauge", parents=[common], help="gauge transform and first-order class comparison")
    s.add_argument("series")
    s.add_argument("w", nargs="?", help="second series to compare with")
    s.add_argument("--f", help="sphere_series file holding f_1, f_2, ...")
    s.set_defaults(run=cmd_gauge)

    s = sub.add_parser("reduce", parents=[common], help="compare specialised tertiary matrices with classical ones")
    s.add_argument("target")
    s.set_defaults(run=cmd_reduce)

    s = sub.add_parser("sweep", parents=[common], help="seeded randomized property sweep")
    s.add_argument("property", choices=sorted(PROPERTIES))
    s.add_argument("--runs", type=int, default=100)
    s.add_argument("--jobs", type=int, default=1, help="worker processes; never changes the report")
    s.add_argument("--max-d", type=int, default=4)
    s.set_defaults(run=cmd_sweep)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lines, status = args.run(args)
    except (UsageError, SchemaError, ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except ConsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return INTERNAL
    sys.stdout.write("\n".join(lines) + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
