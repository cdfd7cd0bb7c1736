"""``nag``: one subcommand per operation, JSON reports on stdout.

Exit codes: 0 success, 1 internal invariant failure, 2 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from fractions import Fraction

from . import concrete, prop, residue as res, site, witt, zeta
from .errors import InvariantError, PreconditionError, require
from .exact import GaussRational, Matrix, parse_matrix, parse_scalar
from .exact.scalars import format_scalar


# JSON canonicalization


def _float_text(x: float) -> str:
    return format(x, ".12g")


def to_jsonable(obj):
    """Exact scalars become strings; floats keep shortest repr and gain a
    ``<key>_12g`` sibling with 12 significant digits."""
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            out[k] = to_jsonable(v)
            if isinstance(v, float):
                out[f"{k}_12g"] = _float_text(v)
            elif isinstance(v, complex):
                out[f"{k}_12g"] = f"{_float_text(v.real)}{'+' if v.imag >= 0 else '-'}{_float_text(abs(v.imag))}j"
        return out
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, (Fraction, GaussRational)):
        return format_scalar(obj)
    return str(obj)


def format_json(report: dict) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, ensure_ascii=False, allow_nan=False)


def _flatten(prefix: str, obj, out: dict):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    else:
        out[prefix] = obj


def format_table(report: dict) -> str:
    """Human-readable, lossy: one header row and one value row."""
    row = TABLE_ROWS.get(report["command"], _default_row)(report)
    cols = list(row)
    cells = [str(row[c]) if not isinstance(row[c], (list, tuple)) else f"[{len(row[c])} items]" for c in cols]
    widths = [max(len(c), len(v)) for c, v in zip(cols, cells)]
    line = lambda xs: " | ".join(x.ljust(w) for x, w in zip(xs, widths))
    return "\n".join([line(cols), "-+-".join("-" * w for w in widths), line(cells)])


def _default_row(report):
    flat: dict = {}
    _flatten("", to_jsonable(report["inputs"]), flat)
    res_ = to_jsonable(report["result"])
    if isinstance(res_, dict):
        _flatten("", res_, flat)
    else:
        flat["result"] = res_
    return flat


TABLE_ROWS = {
    "ramanujan": lambda r: {"n": r["inputs"]["n"], "m": r["inputs"]["m"], "C": r["result"]},
}


# argument helpers


def _matrix(text: str) -> Matrix:
    return parse_matrix(text)


def _witt(text: str) -> witt.WittElement:
    return witt.WittElement.parse(text)


def _complex(text: str) -> complex:
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _spp(text: str) -> concrete.SignedPartialPerm:
    return concrete.SignedPartialPerm.from_matrix(parse_matrix(text))


# command handlers; each returns the result payload


def cmd_ramanujan(a, rng):
    value = witt.ramanujan_sum(a.n, a.m)
    if a.oracle:
        require(a.n >= 1, "n ≥ 1")
        oracle = witt.ramanujan_sum_oracle(a.n, a.m)
        if oracle != value:
            raise InvariantError("closed form and root-sum oracle disagree")
    return value


def cmd_witt_mul(a, rng):
    return str(witt.witt_mul(_witt(a.f), _witt(a.g)))


def cmd_witt_frob(a, rng):
    f = _witt(a.f)
    if a.adjoint:
        m = int(a.m)
        require(m >= 1, "ordinary positive m")
        return {"adjoint": True, "value": str(witt.frobenius_adjoint(m, f))}
    m = witt.Supernatural.parse(a.m)
    return {"m": str(m), "value": str(witt.frobenius(m, f)), "trace": witt.trace_tm(m, f)}


def cmd_witt_lambda(a, rng):
    return str(witt.lambda_op(a.k, _witt(a.f)))


def cmd_witt_pair(a, rng):
    return witt.hermitian_form(_witt(a.f), _witt(a.g))


def cmd_witt_class(a, rng):
    x = _spp(a.matrix)
    require(x.nrows == x.ncols, "a square (n = m)")
    ct = witt.signed_cycle_type(x)
    return {
        "class": str(witt.class_of(x, verify=True)),
        "cycles": [[l, s] for l, s in ct.cycles],
        "null": ct.null,
    }


def cmd_zeta(a, rng):
    return zeta.zeta_report(a.mode, a.s, a.t, a.N)


def cmd_sigma(a, rng):
    p = prop.sigma_perm(a.m, a.n)
    return {"images": str(p), "inverse": str(p.inverse())}


def _carrier(name: str):
    if name == "matq":
        return prop.MatrixCarrier()
    if name == "block2":
        return prop.BlockMatrixCarrier(2)
    if name == "broken":
        return prop.ReversedStackingCarrier()
    raise PreconditionError(f"unknown carrier {name!r}")


def _random_vector_element(carrier, rng, rows: int, cols: int):
    k = getattr(carrier, "k", 1)
    entries = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(cols * k)] for _ in range(rows * k)]
    return Matrix(rows * k, cols * k, entries)


def cmd_comm_check(a, rng):
    carrier = _carrier(a.carrier)
    law = a.law

    def check(x, y):
        if law == "bialgebra":
            return prop.check_bialgebra_comm(carrier, x, y)
        return prop.check_total_comm(carrier, x, y, a.side)

    if a.x is not None or a.y is not None:
        require(a.x is not None and a.y is not None, "both --x and --y are needed")
        return {"holds": check(_matrix(a.x), _matrix(a.y))}
    failures = 0
    first = None
    for _ in range(a.trials):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        if law == "bialgebra":
            x, y = _random_vector_element(carrier, rng, 1, n), _random_vector_element(carrier, rng, m, 1)
        elif a.side == "minus":
            x, y = _random_vector_element(carrier, rng, 1, m), _random_vector_element(carrier, rng, 1, n)
        else:
            x, y = _random_vector_element(carrier, rng, m, 1), _random_vector_element(carrier, rng, n, 1)
        if not check(x, y):
            failures += 1
            if first is None:
                first = [str(x), str(y)]
    return {"trials": a.trials, "failures": failures, "holds": failures == 0, "witness": first}


def cmd_axioms(a, rng):
    carrier = _carrier(a.carrier)
    samples = prop.random_matrix_samples(rng, a.samples, max_dim=2)
    if a.carrier == "block2":
        samples = [s.kron(Matrix.identity(2)) for s in samples]
    return prop.prop_axiom_suite(carrier, samples).to_dict()


def cmd_membership(a, rng):
    m = _matrix(a.matrix)
    ids = [concrete.PropId.parse(t) for t in a.prop.split(",")]
    return {str(i): concrete.membership(m, i) for i in ids}


def cmd_gl(a, rng):
    pid = concrete.PropId.parse(a.prop)
    if pid.name == "Z_R":
        require(a.matrix is not None, "--matrix is required for ZR")
        return {"in_GL": concrete.is_gl_ZR(_matrix(a.matrix))}
    require(a.n is not None, "--n is required for F and Fpm")
    elems = concrete.gl_enumerate(pid, a.n, a.bound)
    out = {"count": len(elems)}
    if a.list:
        out["elements"] = [str(e.to_matrix()) for e in elems]
    return out


def _pi_payload(u: res.PartialIsometry):
    return {
        "isometry": u.to_text(),
        "rank": u.rank,
        "source": [[format_scalar(x) for x in r] for r in u.source.rows],
        "target": [[format_scalar(x) for x in r] for r in u.target.rows],
    }


def cmd_residue(a, rng):
    return _pi_payload(res.residue(_matrix(a.matrix)))


def cmd_compose_pi(a, rng):
    u = res.parse_partial_isometry(a.u)
    v = res.parse_partial_isometry(a.v)
    return _pi_payload(res.pi_compose(u, v))


def cmd_sections(a, rng):
    u = site.ArithOpen.parse(a.exclude, a.real)
    return {"open": u.to_dict(), "section": site.section_membership(_matrix(a.matrix), u)}


def cmd_global_sections(a, rng):
    g = site.global_sections(a.n, a.m)
    out = {"count": g.count, "equals_Fpm": g.equals_Fpm, "enumerated": g.enumerated, "examined": g.examined}
    if a.list:
        out["elements"] = [str(e) for e in g.elements]
    return out


def cmd_kronecker(a, rng):
    x = _spp(a.matrix)
    require(x.nrows == x.ncols, "a square, in 𝔽[±1]")
    ok = site.kronecker_check(x)
    return {"roots_of_unity_or_zero": ok, "factorization": str(site.factor_char_poly(x))}


def cmd_local_zeta(a, rng):
    place = site.parse_place(a.place)
    return {"place": str(place), "value": site.local_zeta(place, a.s, a.normalized), "normalized": a.normalized}


def cmd_einstein(a, rng):
    z1, z2 = parse_scalar(a.z1), parse_scalar(a.z2)
    return concrete.einstein_add(z1, z2, a.variant)


COMMANDS = {
    "ramanujan": (cmd_ramanujan, "Ramanujan sum C_n^m"),
    "witt-mul": (cmd_witt_mul, "product in the Witt ring"),
    "witt-frob": (cmd_witt_frob, "Frobenius F_m (or its adjoint)"),
    "witt-lambda": (cmd_witt_lambda, "lambda-operation"),
    "witt-pair": (cmd_witt_pair, "Hermitian form <f, g>"),
    "witt-class": (cmd_witt_class, "class of a square F[±1] matrix"),
    "zeta": (cmd_zeta, "truncated zeta-operator evaluation"),
    "sigma": (cmd_sigma, "interleaving permutation sigma_{m,n}"),
    "comm-check": (cmd_comm_check, "bialgebra / total commutativity laws"),
    "axioms": (cmd_axioms, "sampled prop axiom suite"),
    "membership": (cmd_membership, "prop membership"),
    "gl": (cmd_gl, "GL_n enumeration / O(n) test"),
    "residue": (cmd_residue, "residue partial isometry"),
    "compose-pi": (cmd_compose_pi, "composition of partial isometries"),
    "sections": (cmd_sections, "section membership over an open"),
    "global-sections": (cmd_global_sections, "global sections enumeration"),
    "kronecker": (cmd_kronecker, "Kronecker eigenvalue check"),
    "local-zeta": (cmd_local_zeta, "local zeta factor"),
    "einstein": (cmd_einstein, "Einstein addition"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized verifications")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--timing", action="store_true", help="fill elapsed_ms (breaks byte-identical output)")

    parser = argparse.ArgumentParser(prog="nag", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = {name: sub.add_parser(name, parents=[common], help=h) for name, (_, h) in COMMANDS.items()}

    p["ramanujan"].add_argument("--n", type=int, required=True)
    p["ramanujan"].add_argument("--m", type=int, required=True)
    p["ramanujan"].add_argument("--oracle", action="store_true", help="cross-check against the root-sum oracle")

    for name in ("witt-mul", "witt-pair"):
        p[name].add_argument("--f", required=True)
        p[name].add_argument("--g", required=True)
    p["witt-frob"].add_argument("--m", required=True, help="integer or supernatural such as 2^inf*3")
    p["witt-frob"].add_argument("--f", required=True)
    p["witt-frob"].add_argument("--adjoint", action="store_true")
    p["witt-lambda"].add_argument("--k", type=int, required=True)
    p["witt-lambda"].add_argument("--f", required=True)
    p["witt-class"].add_argument("--matrix", required=True)

    p["zeta"].add_argument("--mode", choices=zeta.MODES, required=True)
    p["zeta"].add_argument("--s", type=_complex, default=2 + 0j)
    p["zeta"].add_argument("--t", type=_complex, default=2 + 0j)
    p["zeta"].add_argument("--N", type=int, default=1000)

    p["sigma"].add_argument("--m", type=int, required=True)
    p["sigma"].add_argument("--n", type=int, required=True)

    p["comm-check"].add_argument("--law", choices=("bialgebra", "total"), default="bialgebra")
    p["comm-check"].add_argument("--side", choices=("minus", "plus"), default="minus")
    p["comm-check"].add_argument("--carrier", choices=("matq", "block2"), default="matq")
    p["comm-check"].add_argument("--x")
    p["comm-check"].add_argument("--y")
    p["comm-check"].add_argument("--trials", type=int, default=200)

    p["axioms"].add_argument("--carrier", choices=("matq", "broken", "block2"), default="matq")
    p["axioms"].add_argument("--samples", type=int, default=20)

    p["membership"].add_argument("--matrix", required=True)
    p["membership"].add_argument("--prop", required=True, help="comma-separated: F,Fpm,Zp:<prime>,ZR,ZC,MatQ,MatZ")

    p["gl"].add_argument("--prop", required=True)
    p["gl"].add_argument("--n", type=int)
    p["gl"].add_argument("--matrix")
    p["gl"].add_argument("--bound", type=int, default=concrete.GL_BOUND)
    p["gl"].add_argument("--list", action="store_true")

    p["residue"].add_argument("--matrix", required=True)
    p["compose-pi"].add_argument("--u", required=True)
    p["compose-pi"].add_argument("--v", required=True)

    p["sections"].add_argument("--matrix", required=True)
    p["sections"].add_argument("--exclude", default="")
    p["sections"].add_argument("--real", choices=("yes", "no"), default="yes")

    p["global-sections"].add_argument("--n", type=int, required=True)
    p["global-sections"].add_argument("--m", type=int, required=True)
    p["global-sections"].add_argument("--list", action="store_true")

    p["kronecker"].add_argument("--matrix", required=True)

    p["local-zeta"].add_argument("--place", required=True, help="p:<prime>, R or C")
    p["local-zeta"].add_argument("--s", type=_complex, required=True)
    p["local-zeta"].add_argument("--normalized", action="store_true")

    p["einstein"].add_argument("--z1", required=True)
    p["einstein"].add_argument("--z2", required=True)
    p["einstein"].add_argument("--variant", choices=concrete.EINSTEIN_VARIANTS, default="real")
    return parser


_COMMON = ("command", "seed", "format", "timing")


def dispatch(args: argparse.Namespace) -> dict:
    handler = COMMANDS[args.command][0]
    rng = random.Random(args.seed)
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in _COMMON}
    start = time.perf_counter()
    result = handler(args, rng)
    elapsed = (time.perf_counter() - start) * 1000
    return {
        "command": args.command,
        "inputs": inputs,
        "seed": args.seed,
        "result": result,
        "elapsed_ms": round(elapsed, 3) if args.timing else None,
    }


_NEGATIVE_VALUE = re.compile(r"-(\d|\.\d|i\b|\d*/)")


def _join_negative_values(argv: list[str]) -> list[str]:
    """argparse reads "-1/2" as an option; glue such values to their flag."""
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE_VALUE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    try:
        report = dispatch(args)
    except PreconditionError as exc:
        print(f"nag {args.command}: precondition violated: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"nag {args.command}: internal invariant failed: {exc}", file=sys.stderr)
        return 1
    text = format_table(report) if args.format == "table" else format_json(report)
    print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
