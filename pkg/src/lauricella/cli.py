"""Command line front end.  Every command prints one JSON document.

Exit status: 0 on success, 1 on a numeric or domain failure (with a JSON
error object on stdout), 2 on a usage error.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from . import cohomology, cycles, linalg, series, tables
from .contiguity import F_VARIANT, FK_VARIANT, ParamPath, Step, walk
from .errors import LauricellaError
from .scalar import (EXACT, FLOAT, Params, alphas, as_scalar, infer_mode, to_json)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- argument helpers --------------------------------------------------------

def _split(value):
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return list(value)
    return [v for v in str(value).replace(";", ",").split(",") if v.strip()]


def _need(args, name):
    v = getattr(args, name, None)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required")
    return v


def _mode(args, raw):
    if args.mode:
        return args.mode
    return infer_mode([str(v) for v in raw])


def _params_and_x(args, need_x=True):
    a, c = _need(args, "a"), _need(args, "c")
    b = _split(_need(args, "b"))
    x = _split(args.x) if need_x else []
    if need_x and x is None:
        raise UsageError("--x is required")
    if need_x and len(x) != len(b):
        raise UsageError("--x and --b must have the same length")
    mode = _mode(args, [a, c, *b, *x])
    p = Params.make(str(a), [str(v) for v in b], str(c), mode=mode)
    xs = tuple(as_scalar(str(v), mode) for v in x)
    return p, xs


def _trunc(args):
    return series.Truncation(order=args.order, rho=args.rho)


def _matrix_json(M):
    return [[to_json(v) for v in row] for row in M]


def _vec_json(v):
    return [to_json(e) for e in v]


# -- commands ----------------------------------------------------------------

def cmd_eval_fd(args):
    p, x = _params_and_x(args)
    sv = series.fd_series(p, x, _trunc(args))
    out = {"value": to_json(sv.value), "tail_estimate": sv.tail_estimate, "finite": sv.finite}
    if args.vector:
        out["vector"] = _vec_json(series.f_vector(p, x, _trunc(args), which=0))
    return out


def cmd_eval_fk(args):
    p, x = _params_and_x(args)
    k = _need(args, "k")
    sv = series.fk_series(p, x, k, _trunc(args))
    out = {"k": k, "value": to_json(sv.value), "tail_estimate": sv.tail_estimate,
           "finite": sv.finite}
    if args.vector:
        out["vector"] = _vec_json(series.f_vector(p, x, _trunc(args), which=k))
    return out


_MATRIX_NAMES = "C, Q<k>, P<k>, Da, Dc, Db<k>, Dak, Dck, Dlk<l>"


def _build_matrix(which, p, x):
    al = alphas(p)
    w = which.strip()
    low = w.lower()
    if low == "c":
        return cohomology.c_matrix(al)
    if low == "da":
        return cohomology.d_a(p, x)
    if low == "dc":
        return cohomology.d_c(p, x)
    if low == "dak":
        return cohomology.d_a_k(p, x)
    if low == "dck":
        return cohomology.d_c_k(p, x)
    for prefix, fn in (("dlk", lambda i: cohomology.d_l_k(p, x, i)),
                       ("db", lambda i: cohomology.d_bk(p, x, i)),
                       ("q", lambda i: cohomology.q_matrix(al, x, i)),
                       ("p", lambda i: cohomology.p_matrix(al, x, i))):
        if low.startswith(prefix) and low[len(prefix):].isdigit():
            return fn(int(low[len(prefix):]))
    raise UsageError(f"unknown matrix {which!r}; choose one of {_MATRIX_NAMES}")


def cmd_matrices(args):
    p, x = _params_and_x(args)
    if args.m is not None and args.m != p.m:
        raise UsageError(f"--m {args.m} does not match len(b) = {p.m}")
    which = _need(args, "which")
    M = _build_matrix(which, p, x)
    out = {"which": which, "m": p.m, "matrix": _matrix_json(M)}
    if which.lower() == "da" and p.m == 2:
        E = cohomology.example_d_a_m2(p, x)
        diff = linalg.max_abs(linalg.sub(M, E))
        out["example_agrees"] = bool(diff == 0 if p.mode == EXACT else abs(diff) <= 1e-12)
    return out


def cmd_walk(args):
    p, x = _params_and_x(args)
    steps = [Step.parse(s) for s in _split(_need(args, "steps"))]
    variant = args.variant
    which = 0
    if variant == FK_VARIANT:
        which = _need(args, "k")
    t = _trunc(args)
    seed = series.f_vector(p, x, t, which=which)
    path = ParamPath(p, steps)
    report = []
    vec = walk(path, seed, x, variant, report=report)
    out = {"start": p.to_json(), "target": path.target.to_json(), "variant": variant,
           "vector": _vec_json(vec), "steps": report}
    if args.check:
        direct = series.f_vector(path.target, x, t, which=which)
        # truncated infinite series satisfy the relations only up to the tail
        if p.mode == EXACT:
            out["exact_equal"] = direct == vec
        diff = [complex(u) - complex(v) for u, v in zip(direct, vec)]
        err = linalg.vec_norm(diff) / max(linalg.vec_norm([complex(u) for u in direct]), 1e-300)
        out["relative_residual"] = float(err)
        out["agrees_with_series"] = bool(err <= args.tol)
    return out


def _p_matrix(raw, m):
    if raw and isinstance(raw[0], (list, tuple)):
        rows = [list(r) for r in raw]
    else:
        flat = _split(raw)
        if len(flat) != 2 * (m + 1):
            raise UsageError(f"--p needs 2*(m+1) = {2 * (m + 1)} entries, row-major")
        rows = [flat[: m + 1], flat[m + 1:]]
    vals = [str(v) for r in rows for v in r]
    mode = infer_mode(vals)
    return [[as_scalar(str(v), mode) for v in r] for r in rows]


def cmd_z(args):
    beta = [int(v) for v in _split(_need(args, "beta"))]
    gamma = [int(v) for v in _split(_need(args, "gamma"))]
    raw_p = _need(args, "p")
    p = _p_matrix(raw_p if isinstance(raw_p, list) else _split(raw_p), len(gamma) - 1)
    if args.drop_zero_columns:
        beta, gamma, p = tables.drop_zero_columns(beta, gamma, p)
    mg = tables.Marginals(tuple(beta), tuple(gamma))
    out = {"beta": list(mg.beta), "gamma": list(mg.gamma), "class": tables.classify(mg)}
    values = {}
    if args.method in ("hgm", "both"):
        report = []
        values["hgm"] = tables.z_hgm(mg, p, report=report)
        out["steps"] = len(report)
    if args.method in ("brute", "both"):
        values["brute"] = tables.z_bruteforce(mg, p, bound=args.bound)
    first = next(iter(values.values()))
    out["Z"] = to_json(first)
    if args.method == "both":
        out["Z_bruteforce"] = to_json(values["brute"])
        out["agreement"] = values["hgm"] == values["brute"]
    return out


def cmd_verify_cycle(args):
    p, _ = _params_and_x(args, need_x=False)
    if p.mode == EXACT:
        p = Params.make(p.a, p.b, p.c, mode=FLOAT)
    k = _need(args, "k")
    if args.m is not None and args.m != p.m:
        raise UsageError(f"--m {args.m} does not match len(b) = {p.m}")
    spec = cycles.CycleSpec(p.m, k, eps=args.eps, xi=args.xi)
    rep = cycles.verify_cycle_correspondence(p, k, spec=spec, tol=args.tol, j=args.j, t=_trunc(args))
    return rep.to_json()


def selftest(seed=0, count=20, z_cases=30):
    """Quick internal consistency run; returns (ok, details)."""
    rng = random.Random(seed)
    details = {}

    def rat():
        return Fraction(rng.randint(-40, 40), rng.randint(1, 12))

    bad = 0
    for _ in range(count):
        m = rng.randint(1, 4)
        while True:
            p = Params.make(rat(), [rat() for _ in range(m)], rat())
            if all(v != 0 for v in alphas(p)) and 1 - alphas(p)[-1] != 0:
                break
        if not cohomology.det_c_check(alphas(p)):
            bad += 1
    details["det_identities"] = {"cases": count, "failures": bad}

    ex_bad = 0
    for _ in range(5):
        while True:
            p = Params.make(rat(), [rat(), rat()], rat())
            xs = (rat(), rat())
            try:
                x = cohomology.XPoint.make(xs)
                M = cohomology.d_a(p, x)
                break
            except LauricellaError:
                continue
        if M != cohomology.example_d_a_m2(p, x):
            ex_bad += 1
    details["example_m2"] = {"cases": 5, "failures": ex_bad}

    z_bad = 0
    done = 0
    while done < z_cases:
        m = rng.randint(1, 3)
        gamma = [rng.randint(1, 3) for _ in range(m + 1)]
        t = sum(gamma)
        b1 = rng.randint(1, t - 1)
        mg = tables.Marginals((b1, t - b1), tuple(gamma))
        pm = [[Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(m + 1)]
              for _ in range(2)]
        try:
            tables.x_from_p(pm)
        except LauricellaError:
            continue
        if tables.z_hgm(mg, pm) != tables.z_bruteforce(mg, pm):
            z_bad += 1
        done += 1
    details["z_oracle"] = {"cases": z_cases, "failures": z_bad}
    ok = bad == 0 and ex_bad == 0 and z_bad == 0
    return ok, details


def cmd_selftest(args):
    ok, details = selftest(seed=args.seed, count=args.count)
    return {"ok": ok, **details}, (EXIT_OK if ok else EXIT_FAIL)


# -- parser ------------------------------------------------------------------

def _add_params(sp, x=True):
    sp.add_argument("--a", help="parameter a (rational 'p/q' or decimal/complex)")
    sp.add_argument("--b", help="comma separated b_1..b_m")
    sp.add_argument("--c", help="parameter c")
    if x:
        sp.add_argument("--x", help="comma separated x_1..x_m")


def _add_series(sp):
    sp.add_argument("--order", type=int, default=series.DEFAULT_ORDER,
                    help="truncation order N of each summation index")
    sp.add_argument("--rho", type=float, default=series.DEFAULT_RHO,
                    help="convergence ratio bound used for the tail estimate")


def _add_common(ap, default=None):
    """Options accepted both before and after the subcommand."""
    def d(value):
        return value if default is None else default

    ap.add_argument("--input", default=d(None),
                    help="JSON file whose keys supply command options")
    ap.add_argument("--output", default=d(None), help="also write the JSON result to this file")
    ap.add_argument("--mode", choices=[EXACT, FLOAT], default=d(None),
                    help="arithmetic mode; inferred from the inputs when omitted")
    ap.add_argument("--tol", type=float, default=d(1e-8), help="tolerance for float checks")
    ap.add_argument("--seed", type=int, default=d(0), help="seed for randomized batches")


def build_parser():
    ap = argparse.ArgumentParser(prog="lauricella",
                                 description="Lauricella F_D contiguity, Laurent solutions and "
                                             "2 x (m+1) table normalizing constants.")
    ap.add_argument("--schema", action="store_true",
                    help="print a machine readable description of all commands and exit")
    _add_common(ap)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command")

    def add(name, text):
        return sub.add_parser(name, help=text, parents=[common])

    sp = add("eval-fd", "evaluate F_D(a, b, c; x) by its truncated series")
    _add_params(sp)
    _add_series(sp)
    sp.add_argument("--vector", action="store_true", help="also print the vector F")

    sp = add("eval-fk", "evaluate the Laurent solution f^(k)(a, b, c; x)")
    _add_params(sp)
    _add_series(sp)
    sp.add_argument("--k", type=int, help="which Laurent solution, 1..m")
    sp.add_argument("--vector", action="store_true", help="also print the vector F^(k)")

    sp = add("matrices", "intersection and contiguity matrices")
    _add_params(sp)
    sp.add_argument("--which", help=f"one of {_MATRIX_NAMES}")
    sp.add_argument("--m", type=int, help="optional consistency check on len(b)")

    sp = add("walk", "push the series vector along a list of lattice steps")
    _add_params(sp)
    _add_series(sp)
    sp.add_argument("--steps", help="comma separated steps: a, c, ac, b<k>")
    sp.add_argument("--variant", choices=[F_VARIANT, FK_VARIANT], default=F_VARIANT,
                    help="F for F_D, Fk for the Laurent solution f^(k)")
    sp.add_argument("--k", type=int, help="k for the Fk variant")
    sp.add_argument("--check", action="store_true",
                    help="compare with the series vector at the target")

    sp = add("z", "normalizing constant of a 2 x (m+1) table")
    sp.add_argument("--beta", help="row sums beta_1,beta_2")
    sp.add_argument("--gamma", help="column sums gamma_0..gamma_m")
    sp.add_argument("--p", help="2 x (m+1) cell weights, row-major, comma separated")
    sp.add_argument("--method", choices=["hgm", "brute", "both"], default="hgm",
                    help="contiguity walk, enumeration, or both with a comparison")
    sp.add_argument("--bound", type=int, default=tables.DEFAULT_BRUTE_BOUND,
                    help="largest t the enumeration accepts")
    sp.add_argument("--drop-zero-columns", action="store_true",
                    help="remove columns with gamma_j = 0 before computing")

    sp = add("verify-cycle", "twisted cycle integral against f^(k)")
    _add_params(sp, x=False)
    _add_series(sp)
    sp.add_argument("--m", type=int, help="optional consistency check on len(b)")
    sp.add_argument("--k", type=int, help="which Laurent solution, 1..m")
    sp.add_argument("--j", type=int, default=0, help="cocycle index phi_j, 0..m")
    sp.add_argument("--xi", type=float, default=cycles.DEFAULT_XI, help="base point scale")
    sp.add_argument("--eps", type=float, default=cycles.DEFAULT_EPS, help="circle radius")

    sp = add("selftest", "determinant identities, m = 2 example, Z oracle")
    sp.add_argument("--count", type=int, default=20, help="random determinant cases")
    return ap


COMMANDS = {
    "eval-fd": cmd_eval_fd, "eval-fk": cmd_eval_fk, "matrices": cmd_matrices,
    "walk": cmd_walk, "z": cmd_z, "verify-cycle": cmd_verify_cycle, "selftest": cmd_selftest,
}


def schema(parser):
    def describe(p):
        out = []
        for act in p._actions:
            if isinstance(act, (argparse._HelpAction, argparse._SubParsersAction)):
                continue
            out.append({"flag": act.option_strings[0] if act.option_strings else act.dest,
                        "dest": act.dest, "help": act.help,
                        "type": getattr(act.type, "__name__", None) if act.type else (
                            "flag" if act.nargs == 0 else "str"),
                        "choices": list(act.choices) if act.choices else None,
                        "default": act.default})
        return out

    subs = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    return {"program": parser.prog, "global_options": describe(parser),
            "commands": {name: {"help": next((c.help for c in subs._choices_actions
                                              if c.dest == name), None),
                                "options": describe(sp)}
                         for name, sp in subs.choices.items()},
            "exit_codes": {"0": "success", "1": "numeric or domain failure", "2": "usage error"}}


def _apply_input(args, path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read --input {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("--input must hold a JSON object")
    for key, value in data.items():
        name = key.replace("-", "_")
        if not hasattr(args, name):
            raise UsageError(f"unknown key {key!r} in --input")
        if isinstance(value, list) and name != "p":
            value = ",".join(str(v) for v in value)
        setattr(args, name, value)


def _emit(obj, args):
    text = json.dumps(obj, indent=2)
    print(text)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.schema:
        _emit(schema(parser), args)
        return EXIT_OK
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        if args.input:
            _apply_input(args, args.input)
        result = COMMANDS[args.command](args)
        status = EXIT_OK
        if isinstance(result, tuple):
            result, status = result
        _emit(result, args)
        return status
    except UsageError as exc:
        _emit({"error": f"usage: {exc}", "location": args.command, "detail": None}, args)
        return EXIT_USAGE
    except LauricellaError as exc:
        _emit(exc.to_json(), args)
        return EXIT_FAIL
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        _emit({"error": f"{type(exc).__name__}: {exc}", "location": args.command,
               "detail": None}, args)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
