"""Command-line front end.

Exit codes: 0 success, 1 golden mismatch in ``report tables``, 2 invalid
input, 3 non-dominant weight, 4 cap hit without a termination certificate.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import report
from .lie import build_from_file, build_h2, build_l0w2, build_sl2, check_thin, validate
from .weyl import HARD_CAP, NonDominant

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_DOMINANCE, EXIT_CAP = 0, 1, 2, 3, 4

SL_LAMBDA_LEVELS = 64


class InputError(ValueError):
    pass


# -- argument parsing helpers ------------------------------------------------


def load_algebra(sel: str):
    if sel == "h2":
        return build_h2()
    if sel == "l0w2":
        return build_l0w2()
    if sel == "sl2":
        return build_sl2()
    if sel.startswith("sl_lambda:"):
        from .sl_lambda import SlLambdaParams, build_sl_lambda
        try:
            p = Fraction(sel.split(":", 1)[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad sl_lambda parameter in {sel!r}") from exc
        return build_sl_lambda(SlLambdaParams(p), SL_LAMBDA_LEVELS)
    if Path(sel).is_file():
        return build_from_file(sel)
    raise InputError(f"unknown algebra {sel!r}: use h2, l0w2, sl2, sl_lambda:p/q or a JSON file")


def parse_lambdas(s: str) -> list[int]:
    """``4``, ``-1`` or a range ``0..7``."""
    try:
        if ".." in s:
            a, b = s.split("..")
            return list(range(int(a), int(b) + 1))
        return [int(s)]
    except ValueError as exc:
        raise InputError(f"bad --lambda value {s!r}") from exc


def parse_int_list(s: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad {flag} value {s!r}") from exc


def parse_weight(s: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in s.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad weight {s!r}") from exc


def max_degree_arg(args):
    md = args.max_degree
    if md is not None and not 0 <= md <= HARD_CAP:
        raise InputError(f"--max-degree must lie in 0..{HARD_CAP}")
    return md


def single_lambda(args) -> int:
    las = parse_lambdas(args.la)
    if len(las) != 1:
        raise InputError("this command takes a single --lambda")
    return las[0]


def emit(args, text: str) -> None:
    if getattr(args, "out", None):
        p = Path(args.out)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _warn_cap(res) -> int:
    if res.certified:
        return EXIT_OK
    print("warning: truncated, not certified complete", file=sys.stderr)
    return EXIT_CAP


# -- algebra -----------------------------------------------------------------


def cmd_algebra_validate(args) -> int:
    g = load_algebra(args.algebra)
    md = max_degree_arg(args)
    md = 6 if md is None else md
    rep = validate(g, md)
    lines = [f"algebra: {g.name}", f"checked up to degree {md}: {rep.checked_triples} triples"]
    lines += [f"violation: {v}" for v in rep.violations]
    lines.append("ok" if rep.ok else "FAILED")
    emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if rep.ok else EXIT_INPUT


def cmd_algebra_thin(args) -> int:
    g = load_algebra(args.algebra)
    if not g.graded:
        raise InputError("thinness is checked on graded algebras")
    md = max_degree_arg(args)
    rep = check_thin(g, 20 if md is None else md)
    emit(args, "\n".join(rep.lines()) + "\n")
    return EXIT_OK


# -- weyl --------------------------------------------------------------------


def _weyl_job(job):
    kind, sel, la, md, fmt = job
    from .weyl import compute_global_weyl, compute_local_weyl
    g = load_algebra(sel)
    fn = compute_global_weyl if kind == "global" else compute_local_weyl
    res = fn(g, la, md)
    text = report.dumps(res.to_json()) if fmt == "json" else report.render_with_footer(res.decomposition)
    return la, text, res.certified, res.total_dim


def cmd_weyl_module(args) -> int:
    las = parse_lambdas(args.la)
    md = max_degree_arg(args)
    if len(las) == 1:
        la = las[0]
        _, text, certified, _ = _weyl_job((args.kind_, args.algebra, la, md, args.format))
        emit(args, text)
        if not certified:
            print("warning: truncated, not certified complete", file=sys.stderr)
            return EXIT_CAP
        return EXIT_OK
    # sweep: one artifact per lambda plus an index
    if any(la < 0 for la in las):
        raise NonDominant("sweep contains a non-dominant weight")
    load_algebra(args.algebra)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    jobs = [(args.kind_, args.algebra, la, md, args.format) for la in las]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_weyl_job, jobs))
    else:
        results = [_weyl_job(j) for j in jobs]
    ext = "json" if args.format == "json" else "txt"
    index = []
    code = EXIT_OK
    for la, text, certified, dim in results:
        name = f"{args.kind_}_{Path(args.algebra).stem}_{la}.{ext}"
        (out / name).write_text(text, encoding="utf-8")
        index.append({"lambda": la, "file": name, "total_dim": dim, "certified": certified})
        if not certified:
            code = EXIT_CAP
    (out / "index.json").write_text(report.dumps({"kind": args.kind_, "algebra": args.algebra,
                                                  "runs": index}), encoding="utf-8")
    for row in index:
        print(f"lambda = {row['lambda']}: dim = {row['total_dim']} -> {row['file']}")
    return code


def cmd_weyl_bind(args) -> int:
    from .symalg import sl2_module
    from .weyl import check_engine_algebra, compute_bind
    g = load_algebra(args.algebra)
    check_engine_algebra(g)
    if args.omega is None:
        raise InputError("--omega is required")
    om = parse_int_list(args.omega, "--omega")
    if not om or min(om) < 0:
        raise InputError("--omega must be a nonempty set of dominant weights")
    hws = parse_int_list(args.module, "--module") if args.module else [max(om)]
    if any(m < 0 for m in hws):
        raise NonDominant("module highest weights must be dominant")
    mults: dict[int, int] = {}
    for m in hws:
        mults[m] = mults.get(m, 0) + 1
    V0 = _over(g, sl2_module(mults))
    res = compute_bind(g, V0, om, max_degree_arg(args))
    text = report.dumps(res.to_json()) if args.format == "json" else report.render_with_footer(res.decomposition)
    emit(args, text)
    return _warn_cap(res)


def _over(g, V):
    """Re-home a degree-0 sl2 module onto the sl2 triple of ``g``."""
    from .rep import GradedWeightedModule
    src = V.algebra
    table = {g.e: src.e, g.f: src.f, g.h: src.h}

    def action(key, d):
        k = table.get(key)
        if k is None:
            return [{} for _ in V.weights(d)]
        return V.act(k, d)

    return GradedWeightedModule(g, {0: V.weights(0)}, action, name=V.name)


def _global(args):
    from .weyl import compute_global_weyl
    g = load_algebra(args.algebra)
    return g, compute_global_weyl(g, single_lambda(args), max_degree_arg(args))


def cmd_weyl_endo(args) -> int:
    from .endo import compute_A_lambda, freeness_report
    g, W = _global(args)
    A = compute_A_lambda(g, W.la, W)
    free = freeness_report(W, A)
    if args.format == "json":
        data = A.structure_json()
        data["freeness"] = {k: v for k, v in free.items() if k != "per_weight"}
        emit(args, report.dumps(data))
    else:
        lines = [f"dim A = {A.dim}",
                 "graded dims: " + " ".join(str(x) for x in A.graded_dims()),
                 f"associative: {A.is_associative()}", f"unital: {A.is_unital()}",
                 f"dim W = {free['dim_W']}",
                 "free over A: " + ("yes" if free["free"] else "no")]
        emit(args, "\n".join(lines) + "\n")
    return _warn_cap(W)


def cmd_weyl_functor(args) -> int:
    from .endo import compute_A_lambda, regular_module, trivial_module, weyl_functor_apply
    g, W = _global(args)
    A = compute_A_lambda(g, W.la, W)
    M = regular_module(A, args.shift) if args.module == "regular" else trivial_module(A, args.shift)
    dec = weyl_functor_apply(W, A, M)
    emit(args, report.dumps(dec.to_json()) if args.format == "json" else report.render_with_footer(dec))
    return _warn_cap(W)


def cmd_weyl_socle(args) -> int:
    from .endo import compute_socle
    from .weyl import compute_global_weyl, compute_local_weyl
    g = load_algebra(args.algebra)
    fn = compute_local_weyl if args.kind == "local" else compute_global_weyl
    W = fn(g, single_lambda(args), max_degree_arg(args))
    soc = compute_socle(W.module).trimmed()
    total: dict[int, int] = {}
    for d in soc.degrees():
        for m, k in soc[d].items():
            total[m] = total.get(m, 0) + k
    if args.format == "json":
        data = soc.to_json()
        data["kind"], data["lambda"] = args.kind, W.la
        emit(args, report.dumps(data))
    else:
        lines = [f"socle: {report.render_mults(total)}"]
        lines += [f"degree {d}: {report.render_mults(soc[d])}" for d in soc.degrees() if soc[d]]
        top = W.top_degree
        lines.append(f"top degree {top}: {report.render_mults(W.decomposition[top])}")
        emit(args, "\n".join(lines) + "\n")
    return _warn_cap(W)


def cmd_weyl_filtered(args) -> int:
    from .filtered import as_filtered, compute_global_weyl_filtered
    g = load_algebra(args.algebra)
    if g.graded:
        g = as_filtered(g, SL_LAMBDA_LEVELS)
    la = single_lambda(args)
    res = compute_global_weyl_filtered(g, la, max_iterations=args.max_iterations)
    if args.format == "json":
        emit(args, report.dumps(res.to_json()))
    else:
        lines = [report.render_table(res.layers), f"dim = {res.total_dim}",
                 f"sl2: {report.render_mults(res.decomposition)}",
                 f"status: {'fixpoint reached' if res.certified else 'cap hit'} after {res.iterations}"]
        emit(args, "\n".join(lines) + "\n")
    if not res.certified:
        print("warning: truncated, not certified complete", file=sys.stderr)
        return EXIT_CAP
    return EXIT_OK


# -- others ------------------------------------------------------------------


def cmd_induced(args) -> int:
    from .pbw import InducedModule
    g = load_algebra(args.algebra)
    if not g.graded:
        raise InputError("induced modules are tabulated for graded algebras")
    la = single_lambda(args)
    if la < 0:
        raise NonDominant(f"lambda = {la} is not dominant")
    md = max_degree_arg(args)
    md = 2 if md is None else md
    dec = InducedModule(g, la, md).module().decomposition()
    emit(args, report.dumps(dec.to_json()) if args.format == "json" else report.render_with_footer(dec))
    return EXIT_OK


def cmd_symalg(args) -> int:
    from .symalg import DEFAULT_MAX_DEGREE, sl2_module, truncated_sym_algebra
    if args.omega is None or args.module is None:
        raise InputError("--module and --omega are required")
    hws = parse_int_list(args.module, "--module")
    om = parse_int_list(args.omega, "--omega")
    if any(m < 0 for m in hws + om):
        raise NonDominant("weights must be dominant")
    mults: dict[int, int] = {}
    for m in hws:
        mults[m] = mults.get(m, 0) + 1
    md = max_degree_arg(args)
    res = truncated_sym_algebra(sl2_module(mults), om, DEFAULT_MAX_DEGREE if md is None else md)
    if args.format == "json":
        emit(args, report.dumps(res.to_json()))
    else:
        lines = [report.render_table(res.decomposition), f"dim = {res.total_dim}",
                 "graded dims: " + " ".join(map(str, res.graded_dims())),
                 "terminated" if res.terminated else "not terminated"]
        emit(args, "\n".join(lines) + "\n")
    if not res.terminated:
        print("warning: truncated, not certified complete", file=sys.stderr)
        return EXIT_CAP
    return EXIT_OK


def cmd_order_leq(args) -> int:
    from .weights import InvalidRootData, RootData, leq_in_root_order
    mu, la = parse_weight(args.mu), parse_weight(args.la)
    if len(mu) != len(la):
        raise InputError("weights of different rank")
    try:
        if args.cartan:
            rows = [parse_int_list(r, "--cartan") for r in args.cartan.split(";")]
            rd = RootData(rows)
        else:
            rd = {1: RootData.sl2(), 2: RootData.a2()}.get(len(mu))
            if rd is None:
                raise InputError("give --cartan for rank above 2")
    except InvalidRootData as exc:
        raise InputError(str(exc)) from exc
    print("true" if leq_in_root_order(mu, la, rd) else "false")
    return EXIT_OK


def cmd_report_tables(args) -> int:
    arts = report.table_artifacts(args.jobs)
    if args.out:
        report.write_artifacts(arts, Path(args.out))
    gold = report.golden_dir()
    if args.update:
        report.write_artifacts(arts, gold)
        print(f"wrote {len(arts)} golden files to {gold}")
        return EXIT_OK
    bad = report.diff_against(arts, gold)
    for name in bad:
        print(f"mismatch: {name}")
    print(f"{len(arts) - len(bad)}/{len(arts)} artifacts match {gold}")
    return EXIT_MISMATCH if bad else EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weylkit", description="Weyl modules over graded Lie algebras")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, la=False, fmt=True):
        sp.add_argument("--algebra", default="h2")
        sp.add_argument("--max-degree", type=int, default=None)
        sp.add_argument("--out")
        if la:
            sp.add_argument("--lambda", dest="la", required=True)
        if fmt:
            sp.add_argument("--format", choices=["table", "json"], default="table")

    alg = sub.add_parser("algebra").add_subparsers(dest="sub", required=True)
    sp = alg.add_parser("validate")
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_algebra_validate)
    sp = alg.add_parser("thin-check")
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_algebra_thin)

    weyl = sub.add_parser("weyl").add_subparsers(dest="sub", required=True)
    for kind in ("global", "local"):
        sp = weyl.add_parser(kind)
        common(sp, la=True)
        sp.add_argument("--jobs", type=int, default=1)
        sp.set_defaults(func=cmd_weyl_module, kind_=kind)
    sp = weyl.add_parser("bind")
    common(sp)
    sp.add_argument("--omega")
    sp.add_argument("--module", help="highest weights of the degree-0 module, comma separated")
    sp.set_defaults(func=cmd_weyl_bind)
    sp = weyl.add_parser("endo")
    common(sp, la=True)
    sp.set_defaults(func=cmd_weyl_endo)
    sp = weyl.add_parser("functor")
    common(sp, la=True)
    sp.add_argument("--module", choices=["regular", "trivial"], default="regular")
    sp.add_argument("--shift", type=int, default=0)
    sp.set_defaults(func=cmd_weyl_functor)
    sp = weyl.add_parser("socle")
    common(sp, la=True)
    sp.add_argument("--kind", choices=["global", "local"], default="local")
    sp.set_defaults(func=cmd_weyl_socle)
    sp = weyl.add_parser("filtered")
    common(sp, la=True)
    sp.add_argument("--max-iterations", type=int, default=50)
    sp.set_defaults(func=cmd_weyl_filtered)

    sp = sub.add_parser("induced")
    common(sp, la=True)
    sp.set_defaults(func=cmd_induced)

    sp = sub.add_parser("symalg")
    sp.add_argument("--module", help="highest weights of V, comma separated")
    sp.add_argument("--omega")
    sp.add_argument("--max-degree", type=int, default=None)
    sp.add_argument("--format", choices=["table", "json"], default="table")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_symalg)

    order = sub.add_parser("order").add_subparsers(dest="sub", required=True)
    sp = order.add_parser("leq")
    sp.add_argument("--mu", required=True, help="comma separated fundamental-weight coordinates")
    sp.add_argument("--lambda", dest="la", required=True)
    sp.add_argument("--cartan", help="rows separated by ';', entries by ','")
    sp.set_defaults(func=cmd_order_leq)

    rep = sub.add_parser("report").add_subparsers(dest="sub", required=True)
    sp = rep.add_parser("tables")
    sp.add_argument("--out")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--update", action="store_true", help="rewrite the golden files")
    sp.set_defaults(func=cmd_report_tables)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except NonDominant as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMINANCE
    except (ValueError, OSError) as exc:
        # InputError, AlgebraError, PreconditionError, NotIntegrable, JSON errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
