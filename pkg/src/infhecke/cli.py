"""``infhecke`` command line.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
Every command accepts ``--json`` for machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import abelian, acceptance, families, fuzz, sl2, verma
from .engine import KERNEL, commutator, to_json
from .errors import InfHeckeError, InvariantViolation, UsageError
from .parser import ParseError, parse_element, parse_poly
from .poly import Poly, format_rational, parse_rational


class _VerificationFailed(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (UsageError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _poly_json(p: Poly) -> dict:
    return p.to_json()


def _z(args) -> Poly:
    return parse_poly(args.z) if args.z is not None else Poly()


def _algebra(args):
    """The presentation selected by --family/--n/--beta0/--beta1, else H_z."""
    if getattr(args, "family", None):
        spec = families.FamilySpec(args.family, args.n, args.beta0, args.beta1)
        return families.build_presentation(spec)
    return sl2.hz_presentation(_z(args))


def _emit(args, text: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise _VerificationFailed(what)


# ---------------------------------------------------------------------------
# commands


def cmd_nf(args):
    pres = _algebra(args)
    a = parse_element(args.expr, pres)
    _emit(args, a.format(), to_json(a))


def cmd_comm(args):
    pres = _algebra(args)
    a = parse_element(args.left, pres)
    b = parse_element(args.right, pres)
    c = commutator(a, b)
    _emit(args, c.format(), to_json(c))


def cmd_center(args):
    z = _z(args)
    data = sl2.CenterData(z)
    central = sl2.verify_central(data.t_z)
    phi = verma.phi_poly(z)
    text = "\n".join([
        f"z = {z.format()}",
        f"q_z = {data.q_z.format()}",
        f"t_z = {data.t_z}",
        f"phi_z(lambda) = {phi.format('lambda')}",
        f"central: {str(central).lower()}",
        "fixed by j: true",
    ])
    _emit(args, text, {
        "z": _poly_json(z), "q_z": _poly_json(data.q_z), "t_z": to_json(data.t_z),
        "phi_z": phi.to_json("lambda"), "central": central,
    })
    _require(central, "t_z is not central")


def cmd_fg(args):
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    results = {m: sl2.fg_pair(args.n, m) for m in sl2.FG_METHODS}
    f, g = results["first-order"]
    agree = all(r == (f, g) for r in results.values())
    text = f"f_{args.n} = {f.format()}\ng_{args.n} = {g.format()}\nmethods agree: {str(agree).lower()}"
    _emit(args, text, {"n": args.n, "f": _poly_json(f), "g": _poly_json(g), "methods_agree": agree})
    _require(agree, "f/g methods disagree")


def cmd_qz(args):
    z = _z(args)
    q = sl2.qz(z)
    _emit(args, f"q_z = {q.format()}", {"z": _poly_json(z), "q_z": _poly_json(q)})


def cmd_z0(args):
    z, zp = parse_poly(args.zexpr), parse_poly(args.zprime)
    p = sl2.z0(z, zp)
    _emit(args, f"z0 = {p.format()}", {"z": _poly_json(z), "zprime": _poly_json(zp), "z0": _poly_json(p)})


def cmd_tz(args):
    z = _z(args)
    t = sl2.tz(z, verify=False)
    central = sl2.verify_central(t)
    _emit(args, f"{t}\ncentral: {str(central).lower()}", {"t_z": to_json(t), "central": central})
    _require(central, "t_z is not central")


def cmd_maximal(args):
    degree = args.degree if args.degree is not None else 4
    vecs = sl2.maximal_vectors_Ug(args.weight, degree)
    lines = [f"maximal vectors of weight {args.weight} in U(sl2), degree <= {degree} (truncation {degree}):"]
    lines += [f"  {v}" for v in vecs]
    _emit(args, "\n".join(lines), {"weight": args.weight, "degree": degree, "vectors": [to_json(v) for v in vecs]})


def cmd_centralizer(args):
    degree = args.degree if args.degree is not None else 3
    rep = sl2.centralizer_check(args.subject, degree, _z(args))
    text = "\n".join(f"{k}: {v}" for k, v in rep.items())
    _emit(args, text, rep)
    _require(rep["equal"], "centralizer differs from the claimed span")


def cmd_verma(args):
    z = _z(args)
    lam = args.lam
    depth = args.depth if args.depth is not None else 8
    if depth < 2:
        raise UsageError("--depth must be at least 2")
    M = verma.VermaModule(lam, z, depth=depth)
    phi = verma.phi_z(lam, z)
    maxv = M.maximal_vectors(depth - 2)
    mdepths = sorted({d for d, _ in maxv})
    dims = [M.simple_dim(k) for k in range(depth + 1)]
    lines = [
        f"z = {z.format()}, lambda = {format_rational(lam)}, truncation depth {depth}",
        f"phi_z(lambda) = {format_rational(phi)}",
        f"maximal vectors (certified to depth {depth - 2}) at depths {mdepths}",
    ]
    for d, v in maxv:
        lines.append(f"  depth {d}: {verma.format_vector(v)}")
    lines.append(f"dim V(lambda) by depth: {dims}")
    payload = {
        "z": _poly_json(z), "lambda": format_rational(lam), "depth": depth, "phi": format_rational(phi),
        "maximal_depths": mdepths, "maximal_vectors": [M.vector_to_json(v) for _, v in maxv],
        "simple_dims": dims,
    }
    n = verma.half_integer_index(lam)
    if z == Poly.const(1) and n is not None:
        rep = verma.character_additivity(lam, depth=depth)
        mu = -3 - lam
        lines.append(f"SES 0 -> V({format_rational(mu)}) -> M({format_rational(lam)}) -> V({format_rational(lam)}) -> 0: "
                     f"characters add up to depth {depth}: {str(rep['holds']).lower()}")
        payload["ses"] = {"mu": format_rational(mu), "holds": rep["holds"]}
        _emit(args, "\n".join(lines), payload)
        _require(rep["holds"], "character additivity fails")
        return
    if len(mdepths) == 1:
        lines.append(f"SES: no maximal vector below v_lambda up to depth {depth - 2}; M(lambda) agrees with V(lambda) there")
    else:
        lines.append(f"SES: M(lambda) has proper submodules generated at depths {mdepths[1:]}")
    _emit(args, "\n".join(lines), payload)


def cmd_findim(args):
    z = _z(args)
    rmax = args.rmax
    rows = []
    lines = [f"z = {z.format()}: finite-dimensional V(r) for 0 <= r <= {rmax}"]
    for r in range(rmax + 1):
        finite, s = verma.finite_dimensional_test(r, z)
        if finite:
            dim = verma.simple_dimension(r, z)
            rows.append({"r": r, "s": s, "dimension": dim["dimension"], "dims": dim["dims"]})
            lines.append(f"  V({r}): alpha_(r, r-s+2) = 0 for s = {s}; dimension {dim['dimension']} {dim['dims']}")
    if not rows:
        lines.append("  none")
    _emit(args, "\n".join(lines), {"z": _poly_json(z), "rmax": rmax, "finite": rows})


def cmd_block(args):
    rep = verma.block_report(args.lam, args.mu, _z(args))
    text = "\n".join([
        f"phi(lambda) = {format_rational(rep['phi_lambda'])}",
        f"phi(mu) = {format_rational(rep['phi_mu'])}",
        f"same block: {str(rep['same_block']).lower()}",
        f"rational weights in the block of lambda: {[format_rational(q) for q in rep['rational_fiber']]}",
    ])
    _emit(args, text, rep)


def cmd_abelian(args):
    z = _z(args)
    pres = sl2.hz_presentation(z)
    sub = args.sub
    if sub == "lfilt":
        cert = abelian.lfilt_decompose(parse_element(args.expr, pres), args.v)
        text = "\n".join(f"[{a}, {b}]" for a, b in cert.pairs) or "0"
        _emit(args, f"{cert.target} =\n{text}", cert.to_json())
    elif sub == "lstar":
        certs = abelian.lstar_reduce(args.kind, zprime=sl2.eval_casimir_poly(parse_poly(args.zprime), pres))
        lines = []
        for c in certs:
            lines.append(f"{c.target} = " + " + ".join(f"[{a}, {b}]" for a, b in c.pairs)
                         + (f" + {c.remainder}" if c.remainder else ""))
        _emit(args, "\n".join(lines), {"certificates": [c.to_json() for c in certs]})
    elif sub == "l5":
        bad = [n for n in range(1, args.n + 1) if not abelian.l5_identity(n, z)]
        _emit(args, f"identity holds for n = 1..{args.n}: {str(not bad).lower()}", {"n": args.n, "failing": bad})
        _require(not bad, f"identity fails for n in {bad}")
    elif sub == "pstep":
        r = abelian.pstep_certificate(args.a, args.b, z)
        text = f"t_z^{args.a} Delta^{args.b} = {r.p.format()} mod commutators ({len(r.certificate.pairs)} pairs, verified)"
        _emit(args, text, {"a": args.a, "b": args.b, "p": _poly_json(r.p), "pairs": len(r.certificate.pairs)})
    elif sub == "span":
        degree = args.degree if args.degree is not None else 4
        span = abelian.CommutatorSpan(z, degree)
        target = parse_element(args.expr, pres)
        cert = span.certificate(target)
        if cert is not None:
            n = len(cert.pairs)
            text = f"in the commutator span (membership proof, {n} commutator{'s' if n != 1 else ''})"
        else:
            text = f"not found in the commutator span at truncation {degree}"
        _emit(args, text, {"member": cert is not None, "truncation": degree, "rank": span.rank,
                           "certificate": cert.to_json() if cert else None})
    elif sub == "independence":
        degree = args.degree if args.degree is not None else 6
        rep = abelian.tzz_independence_falsifier(z, degree)
        out = {k: v for k, v in rep.items() if k != "certificate"}
        _emit(args, rep["label"], out)
        _require(rep.get("dependency") is None, "dependency found")


def cmd_families(args):
    spec = families.FamilySpec(args.family, args.n, args.beta0, args.beta1)
    sub = args.sub
    if sub == "build":
        pres = families.build_presentation(spec)
        lines = [f"{pres.algebra_id}: generators {' '.join(pres.names)}"]
        for a in pres.names:
            for b in pres.names:
                if pres.index[a] < pres.index[b]:
                    c = commutator(pres.gen(a), pres.gen(b))
                    if c:
                        lines.append(f"[{a}, {b}] = {c}")
        rep = fuzz.associativity_fuzz(pres, 200, seed=args.seed)
        lines.append(rep.summary())
        _emit(args, "\n".join(lines), {"spec": spec.to_json(), "generators": list(pres.names), "fuzz": rep.to_json()})
        _require(rep.ok, "associativity fuzzing failed")
    elif sub == "central":
        if spec.family == "sp2n":
            elements = {f"t_{spec.n}": families.sp_central_element(spec.n, spec.beta0)}
        else:
            r, s = families.gl_central_elements(spec.n, spec.beta0, spec.beta1)
            elements = {f"r_{spec.n}": r, f"s_{spec.n}": s}
        lines, payload, ok = [], {}, True
        for name, el in elements.items():
            rep = families.centrality_report(el)
            ok = ok and rep["central"] and rep["fixed_by_j"]
            lines.append(f"{name} = {el}\n  central: {str(rep['central']).lower()}, fixed by j: {str(rep['fixed_by_j']).lower()}")
            payload[name] = {"element": to_json(el), **rep}
        _emit(args, "\n".join(lines), payload)
        _require(ok, "central element check failed")
    elif sub == "lift":
        if spec.family != "gln":
            raise UsageError("lift is only available for gln")
        seed, _ = families.gl_central_elements(spec.n)
        degree = args.degree if args.degree is not None else 2
        lift = families.central_lift_search(spec, seed, degree)
        if lift is None:
            _emit(args, f"no central lift with correction degree <= {degree}", {"lift": None, "degree": degree})
            raise _VerificationFailed("no lift found")
        _emit(args, f"{lift}\ncentral: true", {"lift": to_json(lift), "degree": degree})


def cmd_verify(args):
    numbers = args.criterion or None
    if args.suite == "quick" and not numbers:
        numbers = [1, 2, 3, 4, 5, 7]
    results = acceptance.run_all(numbers)
    lines = [f"kernel: {KERNEL}"]
    for r in results:
        lines.append(r.line())
        for c in r.failures:
            lines.append(f"    - {c.label}: {c.detail}")
        if r.error:
            lines.append(f"    error: {r.error}")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    _emit(args, "\n".join(lines), {"kernel": KERNEL, "results": [r.to_json() for r in results]})
    _require(passed == len(results), "acceptance criteria failed")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--z", metavar="EXPR", help="z as a polynomial in Delta (default 0)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--depth", type=int, metavar="N", help="Verma truncation depth")
    common.add_argument("--degree", type=int, metavar="N", help="degree bound / truncation level")
    common.add_argument("--seed", type=int, default=fuzz.DEFAULT_SEED, metavar="N", help="random seed for fuzzing")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", choices=families.FAMILIES)
    fam.add_argument("--n", type=int, default=1)
    fam.add_argument("--beta0", type=_rational, default=Fraction(0))
    fam.add_argument("--beta1", type=_rational, default=Fraction(0))

    p = argparse.ArgumentParser(prog="infhecke", description="Exact computations in infinitesimal Hecke algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("nf", parents=[common, fam], help="normal form of an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_nf)
    s = sub.add_parser("comm", parents=[common, fam], help="commutator of two expressions")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_comm)
    s = sub.add_parser("center", parents=[common], help="t_z, q_z and phi_z with a centrality check")
    s.set_defaults(func=cmd_center)
    s = sub.add_parser("fg", parents=[common], help="f_n and g_n, cross-checked three ways")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_fg)
    s = sub.add_parser("qz", parents=[common], help="the polynomial q_z")
    s.set_defaults(func=cmd_qz)
    s = sub.add_parser("z0", parents=[common], help="z0(z, z') for two polynomials in Delta")
    s.add_argument("zexpr")
    s.add_argument("zprime")
    s.set_defaults(func=cmd_z0)
    s = sub.add_parser("tz", parents=[common], help="the central element t_z")
    s.set_defaults(func=cmd_tz)
    s = sub.add_parser("maximal", parents=[common], help="maximal vectors of U(sl2) of a given weight")
    s.add_argument("--weight", type=int, required=True)
    s.set_defaults(func=cmd_maximal)
    s = sub.add_parser("centralizer", parents=[common], help="truncated centralizer check")
    s.add_argument("subject", choices=sl2.CENTRALIZER_SUBJECTS)
    s.set_defaults(func=cmd_centralizer)
    s = sub.add_parser("verma", parents=[common], help="truncated Verma module report")
    s.add_argument("--lambda", dest="lam", type=_rational, required=True)
    s.set_defaults(func=cmd_verma)
    s = sub.add_parser("findim", parents=[common], help="scan for finite-dimensional V(r)")
    s.add_argument("--rmax", type=int, default=30)
    s.set_defaults(func=cmd_findim)
    s = sub.add_parser("block", parents=[common], help="compare central characters")
    s.add_argument("--lambda", dest="lam", type=_rational, required=True)
    s.add_argument("--mu", type=_rational, required=True)
    s.set_defaults(func=cmd_block)

    s = sub.add_parser("abelian", help="commutator quotient certificates")
    asub = s.add_subparsers(dest="sub", required=True)
    a = asub.add_parser("lfilt", parents=[common])
    a.add_argument("expr", help="element of U(sl2)")
    a.add_argument("--v", choices=("x", "y"), default="x")
    a = asub.add_parser("lstar", parents=[common])
    a.add_argument("--kind", type=int, choices=(1, 2), default=2)
    a.add_argument("--zprime", default="1", help="central factor for kind 2, a polynomial in Delta")
    a = asub.add_parser("l5", parents=[common])
    a.add_argument("--n", type=int, default=8)
    a = asub.add_parser("pstep", parents=[common])
    a.add_argument("--a", type=int, required=True)
    a.add_argument("--b", type=int, required=True)
    a = asub.add_parser("span", parents=[common])
    a.add_argument("expr")
    asub.add_parser("independence", parents=[common])
    s.set_defaults(func=cmd_abelian)

    s = sub.add_parser("families", help="sp2n and gl_n families")
    fsub = s.add_subparsers(dest="sub", required=True)
    for name in ("build", "central", "lift"):
        f = fsub.add_parser(name, parents=[common])
        f.add_argument("--family", choices=families.FAMILIES, required=True)
        f.add_argument("--n", type=int, default=1)
        f.add_argument("--beta0", type=_rational, default=Fraction(0))
        f.add_argument("--beta1", type=_rational, default=Fraction(0))
    s.set_defaults(func=cmd_families)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    s.add_argument("--suite", choices=("full", "quick"), default="full")
    s.add_argument("--criterion", type=int, action="append", choices=range(1, 11))
    s.set_defaults(func=cmd_verify)
    return p


# options whose values may legitimately start with '-', e.g. --lambda -1/2
_SIGNED_VALUE_OPTIONS = {"--z", "--lambda", "--mu", "--beta0", "--beta1", "--zprime"}


def _join_signed_values(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _SIGNED_VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_signed_values(argv))
    try:
        args.func(args)
    except ParseError as exc:
        print(f"infhecke: error: {exc}", file=sys.stderr)
        if exc.text:
            print(exc.caret(), file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"infhecke: error: {exc}", file=sys.stderr)
        return 2
    except (_VerificationFailed, InvariantViolation) as exc:
        print(f"infhecke: verification failed: {exc}", file=sys.stderr)
        return 1
    except InfHeckeError as exc:
        print(f"infhecke: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
