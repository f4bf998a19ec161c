"""Command-line surface.

Examples:
  leibniz check --example A
  leibniz kernel --example hemi-sl2-L1
  leibniz trunc --bar --example A --adjoint
  leibniz trunc-report --example N --field Fp:2
  leibniz chop --example sl2 --left sym:L1
  leibniz envelope --example e --which ulweak --cutoff 2 --dims
  leibniz gr mul --rule sl2 --lhs "S(1)" --rhs "S(1)+A(1)"
  leibniz gr props --rule weight:1 --window 2 --trials 200
  leibniz gr verify --rule sl2 --max 2
  leibniz paper-suite --seed 0

All file I/O is UTF-8 JSON.  Machine-readable output with --json carries
the same data as the text reports.  LEIBNIZ_SEED overrides the default
seed of every randomized check.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import algebra as alg_mod
from . import envelope as env_mod
from . import groth as gr_mod
from . import suite as suite_mod
from .bimodule import (
    Bimodule,
    adjoint,
    antisymmetrize,
    classify_flags,
    kernels_and_invariants,
    one_dim_bimodule,
    symmetrize,
    trivial_bimodule,
)
from .chop import chop
from .fields import Field, FieldError, QQ
from .linalg import Matrix
from .tensor import (
    mll_defect_span,
    tensor_bimodule,
    trunc_bar,
    trunc_under,
    truncation_data,
)


class CliError(ValueError):
    pass


def default_seed() -> int:
    try:
        return int(os.environ.get("LEIBNIZ_SEED", "0"))
    except ValueError:
        return 0


def resolve_field(spec: str) -> Field:
    try:
        return Field.from_spec(spec)
    except FieldError as exc:
        raise CliError(str(exc)) from None


def resolve_algebra(args) -> alg_mod.LeibnizAlgebra:
    if getattr(args, "algebra_file", None):
        try:
            with open(args.algebra_file, encoding="utf-8") as fh:
                return alg_mod.LeibnizAlgebra.from_json(fh.read())
        except OSError as exc:
            raise CliError(f"cannot read {args.algebra_file}: {exc}") from None
    field = resolve_field(getattr(args, "field", "Q"))
    name = getattr(args, "example", None)
    if not name:
        raise CliError("specify --example NAME or --algebra-file PATH")
    return alg_mod.builtin_algebra(name, field)


def _parse_scalars(field, text: str):
    return [field.parse(tok) for tok in text.split(",") if tok != ""]


def resolve_bimodule(spec: str, algebra) -> Bimodule:
    """Module specs: adjoint | trivial:<d> | sym:<vals> | anti:<vals> |
    sym:L<n> / anti:L<n> (sl2 highest weight) | onedim:<a>;<c> | file:<path>."""
    field = algebra.field
    if spec == "adjoint":
        return adjoint(algebra)
    kind, _, rest = spec.partition(":")
    if kind == "trivial":
        return trivial_bimodule(algebra, int(rest or "1"))
    if kind in ("sym", "anti"):
        build = symmetrize if kind == "sym" else antisymmetrize
        if rest.startswith("L"):
            n = int(rest[1:])
            mats = alg_mod.sl2_module_matrices(field, n)
            if algebra.dim > 3:
                pad = [Matrix.zeros(field, n + 1, n + 1)] * (algebra.dim - 3)
                mats = mats + pad
            return build(algebra, mats)
        vals = _parse_scalars(field, rest)
        if len(vals) != algebra.dim:
            raise CliError(f"{kind}: expected {algebra.dim} functional values")
        return build(algebra, [Matrix(field, [[v]]) for v in vals])
    if kind == "onedim":
        try:
            a_text, c_text = rest.split(";")
        except ValueError:
            raise CliError("onedim:<left values>;<right values>") from None
        return one_dim_bimodule(
            algebra, _parse_scalars(field, a_text), _parse_scalars(field, c_text)
        )
    if kind == "file":
        with open(rest, encoding="utf-8") as fh:
            return Bimodule.from_json(fh.read())
    raise CliError(f"unknown module spec {spec!r}")


def _two_modules(args, algebra):
    left = resolve_bimodule(getattr(args, "left", None) or "adjoint", algebra)
    right = resolve_bimodule(getattr(args, "right", None) or "adjoint", algebra)
    return left, right


def _subspace_doc(space):
    f = space.field
    return {
        "dim": space.dim,
        "basis": [[f.format(x) for x in row] for row in space.basis.rows],
    }


def emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2, default=str))
        return
    for key, value in report.items():
        if isinstance(value, dict):
            print(f"{key}:")
            for k2, v2 in value.items():
                print(f"  {k2}: {v2}")
        elif isinstance(value, list):
            print(f"{key}:")
            for item in value:
                print(f"  - {item}")
        else:
            print(f"{key}: {value}")


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (report dict, ok flag)


def cmd_check(args):
    algebra = resolve_algebra(args)
    failure = alg_mod.validate_left_leibniz(algebra)
    report = {
        "command": "check",
        "dim": algebra.dim,
        "basis": list(algebra.basis_names),
        "valid": failure is None,
    }
    if failure is not None:
        i, j, k = failure
        names = algebra.basis_names
        report["first_failure"] = f"pair ({names[i]}, {names[j]}), coordinate {names[k]}"
    if args.dump:
        report["algebra"] = json.loads(algebra.to_json())
    return report, failure is None


def cmd_kernel(args):
    algebra = resolve_algebra(args)
    ker = alg_mod.leibniz_kernel(algebra)
    info = alg_mod.products_and_series(algebra)
    report = {
        "command": "kernel",
        "kernel": _subspace_doc(ker),
        "product_span_dim": info["product_span"].dim,
        "is_perfect": info["is_perfect"],
        "is_solvable": info["is_solvable"],
        "derived_series_dims": info["derived_series_dims"],
    }
    return report, True


def cmd_canonical_lie(args):
    algebra = resolve_algebra(args)
    quot, morph = alg_mod.canonical_lie(algebra)
    report = {
        "command": "canonical-lie",
        "quotient_dim": quot.dim,
        "quotient_basis": list(quot.basis_names),
        "lie_check": alg_mod.is_lie(quot) is None,
        "projection_is_homomorphism": morph.is_homomorphism(),
        "quotient": json.loads(quot.to_json()),
    }
    return report, report["lie_check"]


def cmd_bimodule(args):
    algebra = resolve_algebra(args)
    mod = resolve_bimodule(args.module, algebra)
    rep = mod.axiom_report()
    report = {
        "command": "bimodule",
        "dim": mod.dim,
        "axioms": {
            "llm": rep.llm,
            "lml": rep.lml,
            "mll": rep.mll,
            "zd": rep.zd,
            "kind": rep.kind,
        },
        "flags": classify_flags(mod),
    }
    if rep.first_failure:
        report["axioms"]["first_failure"] = str(rep.first_failure)
    if mod.is_weak():
        data = kernels_and_invariants(mod)
        report["subspaces"] = {
            "M0_dim": data["M0"].dim,
            "MR_dim": data["MR"].dim,
            "LM_dim": data["LM"].dim,
            "Minv_dim": data["Minv"].dim,
            "M0_right_invariant": data["M0_right_invariant"],
        }
    if args.dump:
        report["module"] = json.loads(mod.to_json())
    return report, True


def cmd_tensor(args):
    algebra = resolve_algebra(args)
    left, right = _two_modules(args, algebra)
    t = tensor_bimodule(left, right)
    rep = t.module.axiom_report()
    defect = mll_defect_span(left, right)
    report = {
        "command": "tensor",
        "dim": t.module.dim,
        "axioms": {"llm": rep.llm, "lml": rep.lml, "mll": rep.mll, "kind": rep.kind},
        "defect_span_dim": defect.dim,
        "mll_iff_defect_zero": rep.mll == (defect.dim == 0),
    }
    return report, True


def cmd_trunc(args):
    algebra = resolve_algebra(args)
    left, right = _two_modules(args, algebra)
    which = "under" if args.under else "bar"
    product = trunc_under if args.under else trunc_bar
    out = product(left, right)
    rep = out.axiom_report()
    report = {
        "command": f"trunc --{which}",
        "dim": out.dim,
        "kind": rep.kind,
    }
    if left.is_full() and right.is_full():
        data = truncation_data(left, right)
        report["kernel"] = _subspace_doc(data.t if which == "bar" else data.t0)
        # quotients of full factors are full bimodules; anything else is a bug
        return report, rep.kind == "full"
    return report, True


def cmd_trunc_report(args):
    algebra = resolve_algebra(args)
    left, right = _two_modules(args, algebra)
    data = truncation_data(left, right)
    report = {
        "command": "trunc-report",
        "defect_span": _subspace_doc(data.s_span),
        "T": _subspace_doc(data.t),
        "T0": _subspace_doc(data.t0),
        "containment_verified": data.containment_verified,
        "T_equals_T0": data.t_equals_t0,
    }
    if not data.t_equals_t0:
        report["RESEARCH_FINDING"] = (
            "strict inclusion T < T0 observed; no such example was previously known"
        )
    return report, data.containment_verified


def cmd_chop(args):
    algebra = resolve_algebra(args)
    mod = resolve_bimodule(args.left or "adjoint", algebra)
    rep = chop(mod, seed=args.seed)
    f = algebra.field
    factors = []
    for fac in rep.factors:
        doc = {
            "dim": fac.dim,
            "symmetric": fac.symmetric,
            "anti_symmetric": fac.anti_symmetric,
            "trivial": fac.trivial,
        }
        if fac.left_scalars is not None:
            doc["left_scalars"] = [f.format(x) for x in fac.left_scalars]
            doc["right_scalars"] = [f.format(x) for x in fac.right_scalars]
        factors.append(doc)
    report = {
        "command": "chop",
        "dim": mod.dim,
        "factors": factors,
        "strategy": rep.strategy,
        "certified": rep.certified,
    }
    return report, True


def cmd_envelope(args):
    algebra = resolve_algebra(args)
    pres = env_mod.build_presentation(algebra, args.which, args.cutoff)
    report = {
        "command": "envelope",
        "which": args.which,
        "generators": list(pres.gen_names),
        "relation_count": len(pres.relations),
    }
    ok = True
    if args.dims:
        report["filtered_dims"] = pres.filtered_dims(args.cutoff)
    if args.primitive:
        report["degree_one_primitive_dim"] = env_mod.degree_one_primitive_dim(pres)
    if args.hopf:
        out = env_mod.hopf_check(pres)
        report["hopf"] = out
        ok = ok and all(out.values())
    if args.homs:
        homs = env_mod.standard_homs(algebra, max(2, args.cutoff))
        verdicts = {nm: homs[nm].verify() for nm in ("d0", "d1", "s0", "omega")}
        verdicts.update(env_mod.check_section_identities(algebra, max(2, args.cutoff)))
        report["homs"] = verdicts
        ok = ok and all(verdicts.values())
    return report, ok


def _resolve_rule(spec: str):
    """Rule specs: weight:<k> | sl2 | star:<side>,<side> with sides
    weight:<k> | sl2 | z."""
    if spec == "sl2":
        return gr_mod.sl2_rule(), None
    if spec.startswith("weight:"):
        k = int(spec.split(":", 1)[1])
        return gr_mod.weight_rule(QQ, k), QQ
    if spec.startswith("star:"):
        sides = spec[5:].split(",")
        if len(sides) != 2:
            raise CliError("star rule needs exactly two sides")

        def base(s):
            if s == "z":
                return gr_mod.integer_base()
            if s == "sl2":
                return gr_mod.cg_base()
            if s.startswith("weight:"):
                return gr_mod.group_base(QQ, int(s.split(":", 1)[1]))
            raise CliError(f"unknown star side {s!r}")

        field = QQ if any(s.startswith("weight:") for s in sides) else None
        return gr_mod.star_product(base(sides[0]), base(sides[1])), field
    raise CliError(f"unknown rule {spec!r}")


def cmd_gr(args):
    rule, field = _resolve_rule(args.rule)
    if args.gr_command == "mul":
        lhs = gr_mod.parse_element(rule, args.lhs, field)
        rhs = gr_mod.parse_element(rule, args.rhs, field)
        product = gr_mod.gr_mul(rule, lhs, rhs)
        return (
            {
                "command": "gr mul",
                "rule": rule.name,
                "lhs": repr(lhs),
                "rhs": repr(rhs),
                "product": repr(product),
            },
            True,
        )
    if args.gr_command == "props":
        window = rule.window(args.window if args.window else rule.default_window)
        out = gr_mod.identity_checkers(rule, window, trials=args.trials, seed=args.seed)
        verdicts = {}
        for name, v in out.items():
            doc = {"holds": v.holds, "tested": v.tested}
            if v.counterexample:
                doc["witness"] = {
                    "elements": [repr(e) for e in v.counterexample["elements"]],
                    "lhs": repr(v.counterexample["lhs"]),
                    "rhs": repr(v.counterexample["rhs"]),
                }
            verdicts[name] = doc
        scan = gr_mod.criterion_scan(rule, window)
        return (
            {
                "command": "gr props",
                "rule": rule.name,
                "window_size": len(window),
                "identities": verdicts,
                "criterion_scan": [
                    {
                        "property": s["property"],
                        "labels": [repr(l) for l in s["labels"]],
                        "confirmed": s["confirmed"],
                    }
                    for s in scan
                ],
            },
            True,
        )
    if args.gr_command == "verify":
        import re

        if args.rule == "sl2":
            base_alg = alg_mod.make_sl2(QQ)
            reg = gr_mod.ClassRegistry("sl2", base_alg)

            def obj(tag_kind, n):
                if n == 0:
                    return trivial_bimodule(base_alg, 1)
                build = symmetrize if tag_kind == "S" else antisymmetrize
                return build(base_alg, alg_mod.sl2_module_matrices(QQ, n))

            tags = range(0, args.max + 1)
        elif args.rule.startswith("weight:"):
            base_alg = alg_mod.make_e(QQ)
            reg = gr_mod.ClassRegistry("weight", base_alg)

            def obj(tag_kind, n):
                if n == 0:
                    return trivial_bimodule(base_alg, 1)
                build = symmetrize if tag_kind == "S" else antisymmetrize
                return build(base_alg, [Matrix(QQ, [[QQ.from_int(n)]])])

            tags = range(-args.max, args.max + 1)
        else:
            raise CliError("gr verify supports the sl2 and weight:1 rules")
        if args.pairs:
            label_re = re.compile(r"^(U|[SA]\((-?\d+)\))$")

            def from_spec(text):
                m = label_re.match(text.strip())
                if not m:
                    raise CliError(f"bad pair label {text!r}")
                if m.group(1) == "U":
                    return obj("S", 0)
                return obj(text.strip()[0], int(m.group(2)))

            pairs = []
            for chunk in args.pairs.split(";"):
                try:
                    a_text, b_text = chunk.split("x")
                except ValueError:
                    raise CliError("pairs look like S(1)xA(2);UxS(1)") from None
                pairs.append((from_spec(a_text), from_spec(b_text)))
        else:
            objs = [obj("S", 0)]
            for n in tags:
                if n != 0:
                    objs.append(obj("S", n))
                    objs.append(obj("A", n))
            pairs = [(x, y) for x in objs for y in objs]
        out = gr_mod.verify_ring_vs_modules(reg.rule(), reg, pairs)
        return (
            {
                "command": "gr verify",
                "rule": reg.rule().name,
                "pairs": len(pairs),
                "ok": out["ok"],
            },
            out["ok"],
        )
    raise CliError("gr needs one of: mul, props, verify")


def cmd_paper_suite(args):
    results = suite_mod.run_all(seed=args.seed)
    report = {
        "command": "paper-suite",
        "seed": args.seed,
        "checks": [
            {"id": r.check_id, "ok": r.ok, "details": r.details} for r in results
        ],
        "passed": sum(1 for r in results if r.ok),
        "failed": sum(1 for r in results if not r.ok),
    }
    return report, all(r.ok for r in results)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leibniz",
        description="Exact computations with finite-dimensional Leibniz algebras",
    )
    sub = parser.add_subparsers(dest="command")

    def common(p, modules=False):
        p.add_argument("--example", help="builtin algebra: A | N | e | sl2 | hemi-sl2-L1 | abelian:<n>")
        p.add_argument("--field", default="Q", help="Q or Fp:<p> (default Q)")
        p.add_argument("--algebra-file", help="path to an algebra JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--seed", type=int, default=default_seed())
        if modules:
            p.add_argument("--left", help="module spec (default adjoint)")
            p.add_argument("--right", help="module spec (default adjoint)")
            p.add_argument(
                "--adjoint",
                action="store_true",
                help="use the adjoint bimodule on both sides (the default)",
            )

    p = sub.add_parser("check", help="validate an algebra table")
    common(p)
    p.add_argument("--dump", action="store_true", help="include the algebra JSON")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("kernel", help="Leibniz kernel and derived series")
    common(p)
    p.set_defaults(fn=cmd_kernel)

    p = sub.add_parser("canonical-lie", help="quotient Lie algebra")
    common(p)
    p.set_defaults(fn=cmd_canonical_lie)

    p = sub.add_parser("bimodule", help="axiom report of a bimodule")
    common(p)
    p.add_argument("--module", default="adjoint", help="module spec")
    p.add_argument("--dump", action="store_true", help="include the module JSON")
    p.set_defaults(fn=cmd_bimodule)

    p = sub.add_parser("tensor", help="tensor product of two bimodules")
    common(p, modules=True)
    p.set_defaults(fn=cmd_tensor)

    p = sub.add_parser("trunc", help="truncated tensor product")
    common(p, modules=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--bar", action="store_true", help="closure truncation (default)")
    group.add_argument("--under", action="store_true", help="coarse truncation")
    p.set_defaults(fn=cmd_trunc)

    p = sub.add_parser("trunc-report", help="defect span, T, T0 and their relation")
    common(p, modules=True)
    p.set_defaults(fn=cmd_trunc_report)

    p = sub.add_parser("chop", help="composition series of a bimodule")
    common(p, modules=True)
    p.set_defaults(fn=cmd_chop)

    p = sub.add_parser("envelope", help="degree-truncated enveloping algebras")
    common(p)
    p.add_argument("--which", choices=["ul", "ulweak", "ulie"], default="ulweak")
    p.add_argument("--cutoff", type=int, default=3)
    p.add_argument("--dims", action="store_true", help="filtered dimensions")
    p.add_argument("--hopf", action="store_true", help="Hopf-structure checks")
    p.add_argument("--homs", action="store_true", help="standard homomorphism checks")
    p.add_argument(
        "--primitive", action="store_true", help="degree-1 primitive dimension"
    )
    p.set_defaults(fn=cmd_envelope)

    p = sub.add_parser("gr", help="symbolic Grothendieck rings")
    grsub = p.add_subparsers(dest="gr_command")
    pm = grsub.add_parser("mul", help="multiply two elements")
    pm.add_argument("--rule", required=True, help="weight:<k> | sl2 | star:<a>,<b>")
    pm.add_argument("--lhs", required=True)
    pm.add_argument("--rhs", required=True)
    pm.add_argument("--json", action="store_true")
    pm.add_argument("--seed", type=int, default=default_seed())
    pm.set_defaults(fn=cmd_gr)
    pp = grsub.add_parser("props", help="identity checkers and criterion scan")
    pp.add_argument("--rule", required=True)
    pp.add_argument("--window", type=int, default=0, help="window radius / max tag")
    pp.add_argument("--trials", type=int, default=200)
    pp.add_argument("--seed", type=int, default=default_seed())
    pp.add_argument("--json", action="store_true")
    pp.set_defaults(fn=cmd_gr)
    pv = grsub.add_parser("verify", help="ring vs module reconciliation")
    pv.add_argument("--rule", required=True, help="sl2 | weight:1")
    pv.add_argument("--max", type=int, default=2, help="max tag / weight radius")
    pv.add_argument("--pairs", help="semicolon-separated pair indices (optional)")
    pv.add_argument("--seed", type=int, default=default_seed())
    pv.add_argument("--json", action="store_true")
    pv.set_defaults(fn=cmd_gr)

    p = sub.add_parser("paper-suite", help="run the full verification battery")
    p.add_argument("--seed", type=int, default=default_seed())
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_paper_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None):
        parser.print_usage()
        return 2
    if args.command == "gr" and not getattr(args, "gr_command", None):
        parser.parse_args(["gr", "--help"])
        return 2
    try:
        report, ok = args.fn(args)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command == "paper-suite" and not args.json:
        for check in report["checks"]:
            mark = "PASS" if check["ok"] else "FAIL"
            print(f"{mark}  {check['id']}: {check['details']}")
        print(f"{report['passed']} passed, {report['failed']} failed")
    else:
        emit(report, getattr(args, "json", False))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
