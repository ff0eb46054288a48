"""Command-line entry point.

Exit codes: 0 success or Proven, 1 usage error, 2 Inconclusive or failed check.
"""

import argparse
import json
import sys

from .algebra.field import gf
from .algebra.ideal import RatFunc, parse_ideal, parse_ratfunc
from .algebra.poly import APoly
from .drinfeld import DrinfeldModule, reduction_type
from . import certify, density, groups, wild2
from .frobenius import frob_charpoly_exact

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _field(args):
    modulus = None
    if getattr(args, "modulus", None):
        modulus = [int(c) for c in args.modulus.split(",")]
    try:
        return gf(args.q, modulus)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _module(args, F):
    parts = [p.strip() for p in args.phi.split(",")]
    if len(parts) != 3:
        raise UsageError("--phi needs three comma-separated coefficients a0,a1,a2")
    try:
        coeffs = [parse_ratfunc(p, F) for p in parts]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if coeffs[0] != RatFunc(APoly.t(F)):
        raise UsageError("a0 must be t for a module of generic characteristic")
    if not coeffs[2]:
        raise UsageError("a2 must be nonzero for a rank-2 module")
    a1, a2 = (c.num if c.is_polynomial() else c for c in coeffs[1:])
    return DrinfeldModule.rank2(F, a1, a2)


def _ideal(text, F, prime=False):
    try:
        I = parse_ideal(text, F)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if prime and not I.is_prime():
        raise UsageError(f"{I} is not a prime ideal")
    return I


def _emit(args, payload, text):
    print(json.dumps(payload, indent=2) if args.json else text)


# --- subcommands ------------------------------------------------------------

def cmd_frobpoly(args):
    F = _field(args)
    dm = _module(args, F)
    P = _ideal(args.prime, F, prime=True)
    try:
        fp = frob_charpoly_exact(dm, P, method=args.method)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, fp.as_dict(), str(fp))
    return EXIT_OK


def cmd_certify(args):
    F = _field(args)
    dm = _module(args, F)
    if args.claim in ("modl", "lambda-adic"):
        if not args.lam:
            raise UsageError(f"--claim {args.claim} needs --lambda")
        lam = _ideal(args.lam, F, prime=True)
    try:
        if args.claim == "modl":
            cert = certify.modl_full_certificate(dm, lam)
        elif args.claim == "lambda-adic":
            cert = certify.lambda_adic_full_certificate(dm, lam)
        elif args.claim == "all-lambda":
            cert = certify.all_lambda_certificate(dm)
        else:
            cert = certify.adelic_certificate(dm)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = [f"{cert.claim}: {cert.status}"]
    text += [f"  {k}: {v}" for k, v in cert.detail.items() if k != "classes"]
    _emit(args, cert.as_dict(), "\n".join(text))
    return EXIT_OK if cert.proven else EXIT_INCONCLUSIVE


def cmd_det_index(args):
    F = _field(args)
    dm = _module(args, F)
    try:
        facts = certify.det_facts(dm)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, {"index": facts.index, "d": facts.d, "zeta": F.to_str(facts.zeta), "e": facts.e},
          str(facts.index))
    return EXIT_OK


def cmd_reduction_type(args):
    F = _field(args)
    dm = _module(args, F)
    P = _ideal(args.prime, F, prime=True)
    rep = reduction_type(dm, P)
    _emit(args, rep.as_dict(),
          f"{rep.kind} at {rep.prime} (potential rank {rep.potential_rank}, v(j) = {rep.v_j})")
    return EXIT_OK


def cmd_group_check(args):
    F = _field(args)
    level = _ideal(args.level, F)
    try:
        gens = [groups.parse_matrix(s, level) for s in args.gens.split(";") if s.strip()]
        G = groups.closure(gens, level, cap=args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    except groups.GroupTooLarge as exc:
        print(f"group exceeds cap: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    comm = groups.commutator_subgroup(G)
    payload = {"level": str(level), "order": G.order, "det_image_order": len(G.det_image()),
               "commutator_order": comm.order, "gl2_order": groups.gl2_order(level)}
    verdict = True
    fac = level.factor()
    if len(fac) == 1 and fac[0][1] == 1:
        verdict = groups.contains_sl2_modl(G)
        payload["contains_sl2"] = verdict
        payload["irreducible"] = groups.is_irreducible_action(G)
    elif len(fac) == 1 and fac[0][1] == 2:
        rep = groups.full_gl2_criterion(G, fac[0][0])
        payload["conditions"] = rep.as_dict()
        verdict = rep.verdict is True
    lines = [f"{k}: {v}" for k, v in payload.items()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if verdict else EXIT_INCONCLUSIVE


def cmd_wild2(args):
    if args.q not in (None, 2):
        raise UsageError("wild2 applies to q = 2 only")
    args.q = 2
    F = _field(args)
    dm = _module(args, F)
    v = wild2.v_inf_j(dm)
    classes = [wild2.infinity_class(dm, 0), wild2.infinity_class(dm, 1), wild2.combined_class(dm)]
    ok = wild2.abelianization_full(dm)
    payload = {"v_inf_j": None if v == float("inf") else v,
               "classes": [c.as_dict() for c in classes],
               "abelianization_full": wild2.YES if ok else wild2.INCONCLUSIVE}
    lines = [f"v_inf(j) = {payload['v_inf_j']}"]
    for name, c in zip(("u_0", "u_1", "u_0+u_1"), classes):
        lines.append(f"{name} = {c.original} ~ {c.representative}  v_inf = {c.v_inf}  "
                     f"ramified: {c.verdict}")
    lines.append(f"abelianization full: {payload['abelianization_full']}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


def cmd_density(args):
    if not args.exact and (args.samples is None or args.seed is None):
        raise UsageError("use --exact or both --samples and --seed")
    try:
        desc = density.SetDescriptor(args.set, args.q, m=args.m, prime=args.lam, index=args.k)
        est = density.count_set(desc, args.d, exact=args.exact, samples=args.samples,
                                seed=args.seed, workers=args.workers)
    except (ValueError, density.ResourceCapExceeded) as exc:
        raise UsageError(str(exc)) from exc
    if args.csv:
        density.write_csv(args.csv, [est])
    print(",".join(density.CSV_HEADER))
    print(",".join(str(x) for x in est.row()))
    return EXIT_OK


def cmd_reproduce(args):
    from . import reproduce
    only = set(args.only) if args.only else None
    results = []
    for n, *_ in reproduce.MANIFEST:
        if only is None or n in only:
            r = reproduce.run_criterion(n)
            results.append(r)
            print(r.line(), flush=True)
            if args.verbose:
                for c in r.checks:
                    print(f"      {'ok  ' if c.ok else 'FAIL'} {c.name}: {c.detail}")
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_INCONCLUSIVE


# --- parser -----------------------------------------------------------------

def build_parser():
    p = _Parser(prog="drinfeld-gl2", description="Galois images of rank-2 Drinfeld modules over F_q(t).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, phi=True, q_required=True):
        sp.add_argument("--q", type=int, required=q_required, help="size of the constant field")
        sp.add_argument("--modulus", help="coefficients (low first) of the F_q modulus, e.g. 1,1,1")
        sp.add_argument("--json", action="store_true", help="emit JSON")
        if phi:
            sp.add_argument("--phi", required=True, help='coefficients "t,a1,a2" of phi_t')

    s = sub.add_parser("frobpoly", help="exact Frobenius polynomial at a good prime")
    common(s)
    s.add_argument("--prime", required=True)
    s.add_argument("--method", choices=("crt", "skew"), default="crt")
    s.set_defaults(func=cmd_frobpoly)

    s = sub.add_parser("certify", help="certificate for an image-fullness claim")
    common(s)
    s.add_argument("--claim", choices=("modl", "lambda-adic", "all-lambda", "adelic"), default="adelic")
    s.add_argument("--lambda", dest="lam")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("det-index", help="index of the determinant image")
    common(s)
    s.set_defaults(func=cmd_det_index)

    s = sub.add_parser("reduction-type", help="reduction type at a prime")
    common(s)
    s.add_argument("--prime", required=True)
    s.set_defaults(func=cmd_reduction_type)

    s = sub.add_parser("group-check", help="structure of a matrix group over A/a")
    common(s, phi=False)
    s.add_argument("--level", required=True, help='modulus such as "(t)^2"')
    s.add_argument("--gens", required=True, help='matrices "[[a,b],[c,d]];..."')
    s.add_argument("--cap", type=int, default=20000)
    s.set_defaults(func=cmd_group_check)

    s = sub.add_parser("wild2", help="abelianization check for q = 2")
    common(s, q_required=False)
    s.set_defaults(func=cmd_wild2)

    s = sub.add_parser("density", help="count a set over A^2(d)")
    s.add_argument("--set", required=True, choices=density.SET_NAMES)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--lambda", dest="lam")
    s.add_argument("--k", type=int, default=1, help="index for DetIndexEquals")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--samples", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--csv")
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("reproduce", help="run the acceptance manifest")
    s.add_argument("--only", type=int, nargs="*")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
