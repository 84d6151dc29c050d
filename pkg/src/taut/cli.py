"""``taut`` command-line interface.

Exit status: 0 on success, 1 when a verification or membership test fails,
2 on usage errors. ``--json`` switches to JSON output with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction as Q

from . import charts, rootsys, tautbuild, topo_oracle
from .algebra import default_order, format_rational, to_rational
from .parsing import ParseError, parse_operator
from .weyl import (
    LocalizedError,
    fourier_laplace,
    holonomic_rank,
    ideal_equal,
    left_groebner,
    transpose,
    weyl_normal_form,
)


class UsageError(Exception):
    pass


def _rational(text: str) -> Q:
    try:
        return to_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(text: str):
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def _rational_list(text: str):
    return [_rational(t) for t in text.split(",")] if text.strip() else []


# ---------------------------------------------------------------------------
# output helpers


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _ops_payload(ops, order):
    return [op.to_json(order) for op in ops]


# ---------------------------------------------------------------------------
# ideal sources


def _load_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read spec file {path}: {exc}") from None
    return tautbuild.TautSpec.from_json(data)


def _tauthat(args):
    """Generators of the cyclic system named by --family/--beta or --spec."""
    if getattr(args, "spec", None):
        spec = _load_spec(args.spec)
    elif getattr(args, "family", None):
        fam = tautbuild.parse_family(args.family)
        beta = args.beta if args.beta is not None else rootsys.beta_value(fam.root_system, fam.mu)
        spec = fam.spec(beta)
    else:
        return None, None
    return spec.vars, tautbuild.build_tauthat(spec)


def _vars(args):
    if not args.vars:
        raise UsageError("--vars is required with --ideal/--op")
    return tuple(v.strip() for v in args.vars.split(","))


def _ideal(args, transformed=False):
    vars, gens = _tauthat(args)
    if gens is not None:
        if args.ideal:
            raise UsageError("give either --family/--spec or --ideal, not both")
        if transformed:
            gens = tautbuild.fl_ideal(gens)
        return vars, gens
    if not args.ideal:
        raise UsageError("an ideal is required: --family, --spec or --ideal")
    vars = _vars(args)
    return vars, [parse_operator(t, vars) for t in args.ideal.split(";") if t.strip()]


# ---------------------------------------------------------------------------
# verbs


def cmd_beta(args):
    rs = rootsys.build_root_system(args.type)
    value = rootsys.beta_value(rs, args.mu)
    _emit(args, {"beta": format_rational(value)}, format_rational(value))
    return 0


def cmd_dim(args):
    rs = rootsys.build_root_system(args.type)
    value = rootsys.weyl_dim(rs, args.mu)
    _emit(args, {"dim": value}, str(value))
    return 0


def cmd_delta_i(args):
    rs = rootsys.build_root_system(args.type)
    w = rootsys.format_weight(rootsys.delta_I(rs, args.I))
    _emit(args, {"delta_I": w}, ",".join(w))
    return 0


def cmd_fano(args):
    rs = rootsys.build_root_system(args.type)
    if args.weight is not None:
        ok = rootsys.is_ample(rs, args.I, args.weight)
    else:
        ok = rootsys.fano_check(rs, args.I)
    _emit(args, {"result": ok}, "true" if ok else "false")
    return 0 if ok else 1


def cmd_build(args):
    vars, gens = _tauthat(args)
    if gens is None:
        raise UsageError("build needs --family or --spec")
    order = default_order()
    _emit(args, {"vars": list(vars), "generators": _ops_payload(gens, order)}, "\n".join(str(g) for g in gens))
    return 0


def _ops_or_ideal(args):
    if args.op:
        vars = _vars(args)
        return vars, [parse_operator(args.op, vars)]
    return _ideal(args)


def cmd_fl(args):
    vars, ops = _ops_or_ideal(args)
    out = [fourier_laplace(g) for g in ops]
    order = default_order()
    _emit(args, {"vars": list(vars), "generators": _ops_payload(out, order)}, "\n".join(str(g) for g in out))
    return 0


def cmd_transpose(args):
    vars, ops = _ops_or_ideal(args)
    out = [transpose(g) for g in ops]
    order = default_order()
    _emit(args, {"vars": list(vars), "generators": _ops_payload(out, order)}, "\n".join(str(g) for g in out))
    return 0


def _normal_form(args):
    vars, gens = _ideal(args)
    if not args.op:
        raise UsageError("--op is required")
    op = parse_operator(args.op, vars)
    return weyl_normal_form(op, left_groebner(gens))


def cmd_nf(args):
    r = _normal_form(args)
    _emit(args, r.to_json(default_order()), str(r))
    return 0


def cmd_member(args):
    r = _normal_form(args)
    ok = not r.terms
    _emit(args, {"member": ok, "normal_form": str(r)}, "true" if ok else "false")
    return 0 if ok else 1


def cmd_rank(args):
    vars, gens = _ideal(args, transformed=True)
    value = holonomic_rank(gens, args.method)
    payload = {"rank": value}
    lines = [f"groebner: {value}"] if args.crosscheck else [str(value)]
    status = 0
    if args.crosscheck:
        if not args.family:
            raise UsageError("--crosscheck needs --family")
        beta = args.beta
        fam = tautbuild.parse_family(args.family)
        if beta is None:
            beta = rootsys.beta_value(fam.root_system, fam.mu)
        expected = topo_oracle.expected_rank(topo_oracle.family_case(fam, beta))
        agree = value == expected
        payload.update(oracle=expected, agree=agree)
        lines += [f"oracle: {expected}", f"agree: {'true' if agree else 'false'}"]
        status = 0 if agree else 1
    _emit(args, payload, "\n".join(lines))
    return status


# verification suites -------------------------------------------------------


def _suite_segre_membership(args):
    spec = tautbuild.parse_family("segre").spec(2)
    gb = left_groebner(tautbuild.build_tauthat(spec))
    v = tautbuild.SEGRE_VARS
    P = parse_operator("d11*d22 - d21*d12", v)
    checks = {f"{x}*P in ideal": not weyl_normal_form(parse_operator(x, v) * P, gb).terms for x in v}
    checks["P not in ideal"] = bool(weyl_normal_form(P, gb).terms)
    return checks


def _suite_ideal_equality(args):
    spec = tautbuild.parse_family("segre").spec(2)
    gens = tautbuild.build_tauthat(spec)
    return {"segre generators match the listed operators": ideal_equal(gens, tautbuild.segre_listed_operators())}


def _suite_charts(args):
    ks = [args.k] if args.k else range(1, 6)
    out = {f"chart consistency k={k}": charts.verify_chart_consistency(k) for k in ks}
    for alpha, k, beta in charts.cocycle_table():
        out[f"cocycle alpha={alpha} k={k} beta={format_rational(beta)}"] = charts.gluing_cocycle_check(alpha, k, beta)
    return out


def _suite_nbeta(args):
    ks = [args.k] if args.k else range(1, 4)
    out = {}
    for k in ks:
        betas = [args.beta] if args.beta is not None else [Q(0), Q(1), Q(-1), Q(1, 2), Q(2, k), Q(3, k)]
        for b in betas:
            vanishes = charts.nbeta_chart_reduction(k, b)
            out[f"k={k} beta0={format_rational(b)} vanishes={vanishes}"] = vanishes == (k * b != 2)
    return out


def _suite_casimir(args):
    out = {}
    for fam_name, d in (("rnc:2", 3), ("rnc:3", 2), ("segre", 2)):
        fam = tautbuild.parse_family(fam_name)
        spec = fam.spec(0)
        out[f"casimir-euler identity {fam_name}"] = tautbuild.verify_casimir_identity(spec, fam.root_system, fam.mu, d)
        out[f"casimir operator in cone ideal {fam_name}"] = tautbuild.verify_casimir_cone_membership(spec, fam.root_system, fam.mu)
    return out


def _suite_beta(args):
    out = {}
    a1 = rootsys.build_root_system("A1")
    for k in range(1, 7):
        out[f"A1 mu={k} beta=2/{k}"] = rootsys.beta_value(a1, (k,)) == Q(2, k)
    out["A1xA1 segre beta=2"] = rootsys.beta_value(rootsys.build_root_system("A1xA1"), (1, 1)) == 2
    out["Gr(2,4) beta=4"] = rootsys.beta_value(rootsys.build_root_system("A3"), (0, 1, 0)) == 4
    for t in ("A1", "A2", "A3", "B2", "G2", "A1xA1"):
        rs = rootsys.build_root_system(t)
        for I in rootsys.subsets(rs.rank):
            out[f"{t} I={list(I)} delta pairing"] = rootsys.delta_pairing_identity(rs, I)
            out[f"{t} I={list(I)} fano"] = rootsys.fano_check(rs, I)
    return out


def _suite_ranks(args):
    out = {}
    for fam, beta in topo_oracle.CROSSCHECK_CASES:
        agree, got, expected = topo_oracle.rank_crosscheck(fam, beta)
        out[f"rank {fam} beta={format_rational(beta)}: {got} vs {expected}"] = agree
    return out


SUITES = {
    "segre-membership": _suite_segre_membership,
    "ideal-equality": _suite_ideal_equality,
    "charts": _suite_charts,
    "nbeta": _suite_nbeta,
    "casimir": _suite_casimir,
    "beta": _suite_beta,
    "ranks": _suite_ranks,
}


def cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = {}
    for name in names:
        for check, ok in SUITES[name](args).items():
            results[f"{name}: {check}"] = bool(ok)
    ok = all(results.values())
    if args.json:
        print(json.dumps({"ok": ok, "checks": results}, sort_keys=True))
    else:
        for check, passed in results.items():
            print(f"{'PASS' if passed else 'FAIL'}  {check}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="taut", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", help="emit JSON with sorted keys")
        sp.set_defaults(func=func)
        return sp

    def ideal_flags(sp):
        sp.add_argument("--family", help="shipped family: rnc:k or segre")
        sp.add_argument("--beta", type=_rational, help="beta(e) as p/q (default: the distinguished value)")
        sp.add_argument("--spec", help="TautSpec JSON file")
        sp.add_argument("--ideal", help="';'-separated operator generators")
        sp.add_argument("--vars", help="comma-separated variable names for --ideal/--op")

    sp = verb("beta", cmd_beta, "beta = 2<delta,mu>/<mu,mu>")
    sp.add_argument("--type", required=True)
    sp.add_argument("--mu", required=True, type=_rational_list, help="fundamental coordinates")

    sp = verb("dim", cmd_dim, "Weyl dimension of an irreducible")
    sp.add_argument("--type", required=True)
    sp.add_argument("--mu", required=True, type=_rational_list)

    sp = verb("delta-i", cmd_delta_i, "half-sum of positive roots outside the span of I")
    sp.add_argument("--type", required=True)
    sp.add_argument("--I", default=[], type=_int_list, help="1-based simple-root indices")

    sp = verb("fano", cmd_fano, "ampleness of delta_I (or of --weight)")
    sp.add_argument("--type", required=True)
    sp.add_argument("--I", default=[], type=_int_list)
    sp.add_argument("--weight", type=_rational_list)

    sp = verb("build", cmd_build, "generators of the cyclic tautological system")
    ideal_flags(sp)

    for name, func, text in (
        ("fl", cmd_fl, "Fourier-Laplace transform of operators"),
        ("transpose", cmd_transpose, "transpose of operators"),
    ):
        sp = verb(name, func, text)
        ideal_flags(sp)
        sp.add_argument("--op", help="a single operator")

    for name, func, text in (
        ("nf", cmd_nf, "normal form modulo a left ideal"),
        ("member", cmd_member, "left-ideal membership (exit 1 when not a member)"),
    ):
        sp = verb(name, func, text)
        ideal_flags(sp)
        sp.add_argument("--op", required=True)

    sp = verb("rank", cmd_rank, "holonomic rank of the Fourier-Laplace transformed system")
    ideal_flags(sp)
    sp.add_argument("--crosscheck", action="store_true", help="compare with the topological oracle")
    sp.add_argument("--method", choices=("fraction-free", "block"), default="fraction-free")

    sp = verb("verify", cmd_verify, "run verification suites")
    sp.add_argument("suite", choices=sorted(SUITES) + ["all"])
    sp.add_argument("--k", type=int)
    sp.add_argument("--beta", type=_rational)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        UsageError,
        ParseError,
        LocalizedError,
        rootsys.RootSystemError,
        tautbuild.SpecError,
        topo_oracle.OracleError,
        ValueError,
        ZeroDivisionError,
    ) as exc:
        print(f"taut: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
