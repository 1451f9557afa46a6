"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 a mathematical
precondition failed (reduction not linear, singular block, ...).
"""
from __future__ import annotations

import argparse
import sys
from importlib import resources

from .algebra.field import SubstitutionError, TruncationError
from .sysio import (ParseError, format_coef, format_parampoly, format_phasepoly,
                    load_system, parse_assignments, parse_expression)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def bundled(name: str) -> str:
    """Path of a system file shipped with the package (``jerk``, ``mu_system``, ...)."""
    fname = name if name.endswith(".sys") else f"{name}.sys"
    ref = resources.files("nilcenter") / "data" / fname
    if not ref.is_file():
        raise FileNotFoundError(f"no bundled system {name!r}")
    return str(ref)


def _load(args):
    path = args.file
    if path.startswith("@"):
        path = bundled(path[1:])
    X = load_system(path)
    if getattr(args, "subst", None):
        X = X.substitute(parse_assignments(args.subst))
    return X


def _csv(text: str | None) -> list[str]:
    return [t.strip() for t in (text or "").split(",") if t.strip()]


# -- commands -----------------------------------------------------------------

def cmd_monodromy(args, out) -> int:
    from .monodromy import BETA_GT, andreev2_criterion_3d

    X = _load(args)
    m = andreev2_criterion_3d(X)
    out(f"system: {X.name or args.file}")
    out(f"b200 = {format_coef(m.b200)}")
    out(f"inequality: {format_coef(m.inequality)} < 0")
    out(f"2*a200+b110 = {format_coef(m.beta_coefficient)}")
    out(f"beta_case: {m.beta_case}")
    if m.verdict == "monodromic":
        tail = "beta>n-1" if m.beta_case == BETA_GT else (
            "beta=n-1" if m.beta_case == "beta=n-1" else
            f"beta=n-1 unless {format_coef(m.beta_coefficient)} = 0")
        out(f"verdict: monodromic, n=2, {tail}")
    elif m.verdict == "not-andreev-2":
        out("verdict: not Andreev-2")
    else:
        conds = []
        if not m.b200.is_zero():
            conds.append(f"{format_coef(m.b200)} = 0")
        conds.append(f"{format_coef(m.inequality)} < 0")
        out(f"verdict: symbolic, monodromic with n=2 iff {' and '.join(conds)}")
    return 0


def cmd_ijm(args, out) -> int:
    from .ijm import Seed, obstructions, reduce_chain, self_check, solve_kernel_unknowns

    X = _load(args)
    seed = Seed.parse(args.seed)
    if args.max_degree < seed.degree:
        raise UsageError(f"--max-degree {args.max_degree} is below the seed degree {seed.degree}")
    run = obstructions(X, seed, args.max_degree)
    if args.solve:
        run = reduce_chain(run, _csv(args.solve))
    if args.solve_kernel:
        run = solve_kernel_unknowns(run)
    out(f"system: {X.name or args.file}")
    out(f"seed: {seed.value}")
    for n, L in enumerate(run.Lambda, 1):
        out(f"Lambda[{n}] = {format_coef(L)}")
    out("kernel unknowns: " + (" ".join(run.kernel_unknowns) or "none"))
    for name, value, src in run.forced_substitutions:
        out(f"substitution: {name} = {format_coef(value)} (from Lambda[{src}])")
    out("self_check: " + ("ok" if self_check(X, run) else "FAILED"))
    return 0


def cmd_lyapunov(args, out) -> int:
    from .lyapunov import ExistentialError, build_family, eta_necessary_factors, eta_quantities

    X = _load(args)
    fam = build_family(X, args.pert_degree, args.g)
    res = eta_quantities(fam, args.order, args.complement)
    out(f"system: {X.name or args.file}")
    out(f"complement: {args.complement}")
    if fam.unknowns:
        out("unknowns: " + " ".join(fam.unknowns))
    for l, e in enumerate(res.etas, 1):
        out(f"eta[{l}] = {format_coef(e)}")
    out("residual: " + ("0" if res.residual_ok else "NONZERO"))
    try:
        factors = eta_necessary_factors(res)
        out("necessary factors: " + (", ".join(format_parampoly(f) for f in factors) or "none"))
    except ExistentialError as exc:
        out(f"necessary factors: {exc}")
    return 0


def cmd_cm(args, out) -> int:
    from .cmanifold import cm_jet

    X = _load(args)
    J = cm_jet(X, args.degree)
    out(f"h = {format_phasepoly(J.h)}")
    return 0


def cmd_restrict(args, out) -> int:
    from .cmanifold import cm_jet, restrict

    X = _load(args)
    S = restrict(X, cm_jet(X, max(args.degree - 1, 1)), args.degree)
    out(f"dx = {format_phasepoly(S.full()[0])}")
    out(f"dy = {format_phasepoly(S.full()[1])}")
    return 0


def cmd_verify_iif(args, out) -> int:
    from .cmanifold import cm_jet, restrict
    from .planar import verify_iif

    X = _load(args)
    S = restrict(X, cm_jet(X, max(args.degree - 1, 1)), args.degree)
    v = parse_expression(args.v)
    if v.depends_on("z"):
        raise UsageError("the candidate factor must not involve z")
    if args.subst:
        from .algebra.field import substitute
        v = substitute(v, parse_assignments(args.subst))
    r = verify_iif(S, v, args.degree)
    out(f"residual = {format_phasepoly(r)}")
    out("certified through degree %d" % args.degree if r.is_zero() else "not an inverse integrating factor")
    return 0


def cmd_poincare(args, out) -> int:
    from .cmanifold import cm_jet, restrict
    from .numeric import BindingError, bind, classify

    X = _load(args)
    S = restrict(X, cm_jet(X, max(args.degree - 1, 1)), args.degree)
    try:
        B = bind(S, parse_assignments(args.params or ""))
    except BindingError as exc:
        raise UsageError(str(exc)) from exc
    x0s = [float(t) for t in _csv(args.x0)]
    verdict, results = classify(B, x0s, args.tol)
    for r in results:
        out(f"x0={r.x0:g} displacement={r.displacement:.6e} status={r.status} steps={r.steps}")
    out(f"verdict: {verdict} (numerical corroboration)")
    return 0


# -- wiring -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nilcenter", description="Center obstructions for 3D nilpotent fields.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="system file, or @name for a bundled one")
        sp.add_argument("--subst", help="parameter assignments k=v,... applied first")
        sp.set_defaults(fn=fn)
        return sp

    add("check-monodromy", cmd_monodromy, "Andreev-number-2 monodromy test")
    sp = add("ijm", cmd_ijm, "inverse Jacobi multiplier obstructions")
    sp.add_argument("--seed", default="z", help="z or zy2")
    sp.add_argument("--max-degree", type=int, default=6)
    sp.add_argument("--solve", help="symbols to solve from successive obstructions")
    sp.add_argument("--solve-kernel", action="store_true",
                    help="use the free kernel coefficients to clear obstructions")
    sp = add("lyapunov", cmd_lyapunov, "Lyapunov quantities of the eps-family")
    sp.add_argument("--order", type=int, default=1)
    sp.add_argument("--pert-degree", type=int, default=2)
    sp.add_argument("--g", choices=["zero", "symbolic"], default="zero")
    sp.add_argument("--complement", choices=["xpow", "circle"], default="xpow")
    sp = add("center-manifold", cmd_cm, "center-manifold jet")
    sp.add_argument("--degree", type=int, default=4)
    sp = add("restrict", cmd_restrict, "restriction to the center manifold")
    sp.add_argument("--degree", type=int, default=4)
    sp = add("verify-iif", cmd_verify_iif, "check a planar inverse integrating factor")
    sp.add_argument("--v", required=True, help="candidate v(x, y)")
    sp.add_argument("--degree", type=int, default=8)
    sp = add("poincare", cmd_poincare, "numerical return-map corroboration")
    sp.add_argument("--params", help="values k=v,... for every parameter")
    sp.add_argument("--x0", default="0.02,0.04,0.06")
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--degree", type=int, default=8)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    def out(line: str):
        print(line, file=stdout)

    from .cmanifold import ManifoldError
    from .ijm import ReductionError
    from .lyapunov import SingularBlockError
    from .monodromy import InconclusiveError

    math_errors = (ReductionError, ManifoldError, InconclusiveError, SingularBlockError,
                   SubstitutionError, TruncationError, ZeroDivisionError)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "fn", None):
            raise UsageError("a command is required")
        return args.fn(args, out)
    except math_errors as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 1
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1

if __name__ == "__main__":
    sys.exit(main())
