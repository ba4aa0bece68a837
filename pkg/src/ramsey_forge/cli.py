"""Command-line front end.

Exit codes: 0 success / property holds, 1 property violated or hypothesis
failed (a JSON record goes to stdout), 2 invalid input or budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import bounds, certificate, coloring, hadamard, srg
from .errors import BudgetExceeded, HypothesisFailed, InvalidInput, NotStronglyRegular, RamseyForgeError
from .gf import field_from_order

EXIT_OK, EXIT_VIOLATED, EXIT_INVALID = 0, 1, 2


class Violated(Exception):
    """Raised by handlers to exit 1 with a structured record."""

    def __init__(self, record: dict):
        super().__init__(record.get("message", "property violated"))
        self.record = record


# -- argument helpers -------------------------------------------------------

def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def target_pair(text: str) -> int:
    vals = int_list(text)
    if len(vals) != 2 or vals[0] != 2 or vals[1] < 1:
        raise argparse.ArgumentTypeError(f"target must be '2,m' with m >= 1, got {text!r}")
    return vals[1]


def srg_tuple(text: str) -> srg.SrgParams:
    vals = int_list(text)
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("expected n,k,lambda,mu")
    try:
        return srg.SrgParams(*vals)
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def emit(args, record: dict, human: str) -> None:
    if args.json:
        print(json.dumps(record, indent=2))
    else:
        print(human)


# -- hadamard ---------------------------------------------------------------

def cmd_hadamard_gen(args) -> int:
    kind = args.kind
    report = {}
    if kind == "sylvester":
        if args.order is None or args.order < 1 or args.order & (args.order - 1):
            raise InvalidInput("--order must be a power of two for sylvester")
        H = hadamard.sylvester(args.order.bit_length() - 1)
    elif kind in ("paley-one", "paley-double"):
        if args.q is None:
            raise InvalidInput(f"--q is required for {kind}")
        spec = field_from_order(args.q)
        if kind == "paley-one":
            H = hadamard.paley_one_hadamard(spec)
        else:
            H, rep = hadamard.paley_double(spec)
            report = {
                "measured_alpha": rep.alpha,
                "symmetric": rep.symmetric,
                "matches_displayed_gram": rep.matches_displayed_gram,
                "gram_deviation": rep.gram_deviation,
            }
    else:
        if args.input is None:
            raise InvalidInput(f"--input is required for {kind}")
        src = hadamard.read(args.input)
        if kind == "delete-general":
            if args.rows is not None or args.cols is not None:
                if args.rows is None or args.cols is None:
                    raise InvalidInput("--rows and --cols go together")
                rows, cols = args.rows, args.cols
            else:
                a = args.alpha or 0
                rows = cols = list(range(1, a + 1))
            H = hadamard.delete_general(src, rows, cols)
        else:
            H = hadamard.delete_symmetric(src, args.alpha or 0)
    hadamard.write(H, args.output)
    prof = hadamard.alpha_of(H)
    record = {"kind": kind, "order": H.order, "alpha": prof.alpha, "symmetric": H.symmetric, "output": str(args.output)}
    record.update(report)
    emit(args, record, f"wrote {args.output}: order {H.order}, alpha {prof.alpha}, symmetric {H.symmetric}")
    return EXIT_OK


def cmd_hadamard_check(args) -> int:
    H = hadamard.read(args.path)
    prof = hadamard.alpha_of(H)
    holds = hadamard.is_alpha_hadamard(H, args.alpha, args.mode)
    record = {
        "path": str(args.path), "order": H.order, "measured_alpha": prof.alpha,
        "symmetric": H.symmetric, "alpha": args.alpha, "mode": args.mode, "holds": holds,
    }
    if not holds:
        raise Violated(record)
    emit(args, record, f"{args.path}: order {H.order}, alpha {prof.alpha} ({args.mode} {args.alpha}: holds)")
    return EXIT_OK


# -- srg --------------------------------------------------------------------

def cmd_srg_gen(args) -> int:
    if args.kind == "paley":
        if args.q is None:
            raise InvalidInput("--q is required for paley")
        G = srg.paley_graph(field_from_order(args.q))
    else:
        if args.n is None:
            raise InvalidInput(f"--n is required for {args.kind}")
        G = srg.named_graph(args.kind, args.n)
    params = srg.srg_params(G)
    srg.write(G, args.output)
    record = {"kind": args.kind, "params": list(params.as_tuple()), "theta": srg.theta(params), "output": str(args.output)}
    emit(args, record, f"wrote {args.output}: SRG{params.as_tuple()}, theta {record['theta']}")
    return EXIT_OK


def cmd_srg_check(args) -> int:
    G = srg.read(args.path)
    try:
        params = srg.srg_params(G)
    except NotStronglyRegular as exc:
        raise Violated({"path": str(args.path), "strongly_regular": False, "message": str(exc),
                        "witness": [w + 1 for w in exc.witness]}) from None
    th = srg.theta(params)
    record = {"path": str(args.path), "strongly_regular": True, "params": list(params.as_tuple()),
              "theta": th, "theta_ratio": str(srg.theta_ratio(params))}
    if args.expect is not None and args.expect != params:
        record["expected"] = list(args.expect.as_tuple())
        raise Violated(record)
    emit(args, record, f"{args.path}: SRG{params.as_tuple()}, theta {th}")
    return EXIT_OK


def cmd_srg_theta(args) -> int:
    p = args.params
    th = srg.theta(p)
    comp = srg.complement_params(p)
    record = {"params": list(p.as_tuple()), "theta": th, "theta_ratio": str(srg.theta_ratio(p)),
              "complement": list(comp.as_tuple())}
    emit(args, record, f"theta{p.as_tuple()} = {th} (ratio {record['theta_ratio']}); complement {comp.as_tuple()}")
    return EXIT_OK


# -- color ------------------------------------------------------------------

def cmd_color_build(args) -> int:
    G = srg.read(args.srg)
    H = hadamard.read(args.matrix)
    col = coloring.build_psi(G, H)
    params = srg.srg_params(G)
    bound = coloring.psi_bound(params, H)
    m = args.target if args.target is not None else bound["theta_zeta_alpha"] + 1
    provenance = {
        "srg": list(params.as_tuple()),
        "srg_file": Path(args.srg).name,
        "srg_sha256": certificate.sha256_text(srg.dumps(G)),
        "matrix_file": Path(args.matrix).name,
        "matrix_sha256": certificate.sha256_text(hadamard.dumps(H)),
        "matrix_order": H.order,
        "alpha": bound["alpha"],
        "theta": bound["theta"],
        "theta_zeta": bound["theta_zeta"],
        "theta_zeta_alpha": bound["theta_zeta_alpha"],
    }
    doc = certificate.build_document(col, m, provenance)
    certificate.write(doc, args.output)
    footer = doc["footer"]
    record = {"output": str(args.output), "c": col.c, "s": col.s, **{k: footer[k] for k in ("target", "max_delta", "verdict")}}
    emit(args, record, f"wrote {args.output}: K_{{{col.c}x{col.s}}}, max delta {footer['max_delta']}, {footer['verdict']} K_{{2,{m}}}")
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = certificate.read(args.path)
    result = certificate.verify(doc, args.target)
    record = {"path": str(args.path), **result.to_dict()}
    if not result.ok:
        raise Violated(record)
    emit(args, record, f"{args.path}: avoided K_{{2,{result.certificate.target[1]}}} (max delta {result.certificate.max_delta})")
    return EXIT_OK


def cmd_color_biclique(args) -> int:
    col = certificate.coloring_of(certificate.read(args.path))
    budget = args.budget if args.budget is not None else coloring.default_budget()
    found = coloring.find_mono_biclique(col, args.a, args.b, args.color, budget)
    record = {"path": str(args.path), "a": args.a, "b": args.b, "color": args.color, "found": found is not None}
    if found is not None:
        record["A"], record["B"] = [list(v) for v in found[0]], [list(v) for v in found[1]]
        raise Violated(record)
    emit(args, record, f"no monochromatic K_{{{args.a},{args.b}}} in color {args.color}")
    return EXIT_OK


# -- bounds -----------------------------------------------------------------

def _report_lines(rep: bounds.BoundReport) -> str:
    lines = [f"{rep.quantity} (fixed {rep.fixed}) for K_{{2,{rep.target[1]}}}: lower {rep.lower.value}"]
    if rep.upper is not None:
        note = "" if rep.upper.applicable else " (condition fails; not applicable)"
        lines.append(f"  upper {rep.upper.value}{note}")
    if rep.exact is not None:
        lines.append(f"  exact {rep.exact}")
    d = rep.details
    if d.get("theta_discrepancy"):
        lines.append(f"  note: theta {d['theta']} from the definition, closed form gives {d['closed_form_theta']}")
    if d.get("upper_discrepancy"):
        lines.append(f"  note: closed-form upper {d['closed_form_upper']} differs from computed {rep.upper.value}")
    return "\n".join(lines)


def cmd_bounds_psi(args) -> int:
    M, m = bounds.psi_bounds(bounds.Scenario(args.srg_params, args.zeta, args.alpha))
    emit(args, {"reports": [M.to_dict(), m.to_dict()]}, _report_lines(M) + "\n" + _report_lines(m))
    return EXIT_OK


def _gated(args, g: bounds.GatedBound, label: str) -> int:
    record = {"bound": label, **g.to_dict()}
    if not g.holds:
        raise Violated(record)
    emit(args, record, f"{label} <= {g.value} (gate {g.gate} divisible by {g.divisor})")
    return EXIT_OK


def cmd_bounds_set_upper(args) -> int:
    return _gated(args, bounds.set_ramsey_upper(args.s, args.width, args.colors), f"M_{args.s}(K_2,{args.width};{args.colors})")


def cmd_bounds_size_upper(args) -> int:
    return _gated(args, bounds.size_ramsey_upper(args.c, args.widths), f"m_{args.c}")


def cmd_bounds_gate(args) -> int:
    g = bounds.counting_gate(args.s, args.widths, args.c)
    record = {"s": args.s, "widths": args.widths, "c": args.c, **g.to_dict()}
    if not g.holds:
        raise Violated(record)
    emit(args, record, f"counting gate holds: {g.lhs} > {g.rhs}")
    return EXIT_OK


def cmd_bounds_exact(args) -> int:
    rep = bounds.exact_set_ramsey(args.n, args.zeta, args.alpha, assume_srg=args.assume_srg)
    emit(args, rep.to_dict(), _report_lines(rep))
    return EXIT_OK


def cmd_bounds_family(args) -> int:
    if args.which == "paley-exact":
        if args.r is None or args.q is None:
            raise InvalidInput("paley-exact needs --r and --q")
        rep = bounds.family_report("paley-exact", r=args.r, q=args.q, alpha=args.alpha)
    else:
        if args.n is None or args.zeta is None:
            raise InvalidInput(f"{args.which} needs --n and --zeta")
        rep = bounds.family_report(args.which, n=args.n, zeta=args.zeta, alpha=args.alpha)
    emit(args, rep.to_dict(), _report_lines(rep))
    return EXIT_OK


# -- ramsey -----------------------------------------------------------------

def cmd_ramsey_exhaustive(args) -> int:
    budget = args.budget if args.budget is not None else coloring.default_budget()
    res = coloring.exhaustive_ramsey(args.c, args.s, args.target, args.colors, budget=budget, workers=args.threads)
    record = {"c": res.c, "s": res.s, "target": [2, res.m], "colors": res.num_colors,
              "verdict": "forced" if res.verdict == "forced" else "avoiding-coloring",
              "nodes": res.nodes, "edges": res.edges}
    if res.coloring is not None:
        record["edge_colors"] = res.coloring.edge_colors()
    emit(args, record, f"K_{{{res.c}x{res.s}}}, K_{{2,{res.m}}}, {res.num_colors} colors: {record['verdict']} ({res.nodes} nodes)")
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a structured JSON record")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker cap (default: CPU count)")

    p = argparse.ArgumentParser(prog="ramsey-forge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def leaf(parent, name, func, help_text):
        sp = parent.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    # hadamard
    h = sub.add_parser("hadamard", help="sign-matrix constructions and checks").add_subparsers(dest="action", required=True)
    g = leaf(h, "gen", cmd_hadamard_gen, "construct a matrix")
    g.add_argument("--kind", required=True, choices=["sylvester", "paley-one", "paley-double", "delete-general", "delete-symmetric"])
    g.add_argument("--order", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--input", type=Path)
    g.add_argument("--alpha", type=int)
    g.add_argument("--rows", type=int_list)
    g.add_argument("--cols", type=int_list)
    g.add_argument("-o", "--output", type=Path, required=True)
    c = leaf(h, "check", cmd_hadamard_check, "test the [alpha]-Hadamard property")
    c.add_argument("path", type=Path)
    c.add_argument("--alpha", type=int, required=True)
    c.add_argument("--mode", choices=["upper", "exact"], default="upper")

    # srg
    s = sub.add_parser("srg", help="strongly regular graphs").add_subparsers(dest="action", required=True)
    g = leaf(s, "gen", cmd_srg_gen, "generate a graph")
    g.add_argument("--kind", required=True, choices=["paley", "rook", "triangular"])
    g.add_argument("--q", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("-o", "--output", type=Path, required=True)
    c = leaf(s, "check", cmd_srg_check, "verify strong regularity exhaustively")
    c.add_argument("path", type=Path)
    c.add_argument("--expect", type=srg_tuple)
    t = leaf(s, "theta", cmd_srg_theta, "theta and complement of a parameter tuple")
    t.add_argument("--params", type=srg_tuple, required=True)

    # color
    col = sub.add_parser("color", help="psi-colorings and certificates").add_subparsers(dest="action", required=True)
    b = leaf(col, "build", cmd_color_build, "build a psi-coloring certificate")
    b.add_argument("--srg", type=Path, required=True)
    b.add_argument("--matrix", type=Path, required=True)
    b.add_argument("--target", type=target_pair)
    b.add_argument("-o", "--output", type=Path, required=True)
    v = leaf(col, "verify", cmd_verify, "re-check a certificate")
    v.add_argument("path", type=Path)
    v.add_argument("--target", type=target_pair)
    bq = leaf(col, "biclique", cmd_color_biclique, "search a certificate for a monochromatic K_{a,b}")
    bq.add_argument("path", type=Path)
    bq.add_argument("--a", type=int, required=True)
    bq.add_argument("--b", type=int, required=True)
    bq.add_argument("--color", type=int, required=True)
    bq.add_argument("--budget", type=int)

    # bounds
    bd = sub.add_parser("bounds", help="bound formulas in exact arithmetic").add_subparsers(dest="action", required=True)
    x = leaf(bd, "psi", cmd_bounds_psi, "lower and conditional upper bounds from an SRG and a matrix")
    x.add_argument("--srg-params", type=srg_tuple, required=True)
    x.add_argument("--zeta", type=int, required=True)
    x.add_argument("--alpha", type=int, default=0)
    x = leaf(bd, "set-upper", cmd_bounds_set_upper, "gated upper bound on M_s(K_{2,n};k)")
    x.add_argument("--s", type=int, required=True)
    x.add_argument("--width", type=int, required=True)
    x.add_argument("--colors", type=int, default=2)
    x = leaf(bd, "size-upper", cmd_bounds_size_upper, "gated upper bound on m_c(K_{2,n_1},...)")
    x.add_argument("--c", type=int, required=True)
    x.add_argument("--widths", type=int_list, required=True)
    x = leaf(bd, "gate", cmd_bounds_gate, "counting inequality implying M_s <= c")
    x.add_argument("--s", type=int, required=True)
    x.add_argument("--widths", type=int_list, required=True)
    x.add_argument("--c", type=int, required=True)
    x = leaf(bd, "exact", cmd_bounds_exact, "exact M_zeta above the sqrt(2) threshold")
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--zeta", type=int, required=True)
    x.add_argument("--alpha", type=int, default=0)
    x.add_argument("--assume-srg", action="store_true")
    x = leaf(bd, "family", cmd_bounds_family, "bounds for a named SRG family")
    x.add_argument("--which", required=True, choices=list(bounds.FAMILIES))
    x.add_argument("--n", type=int)
    x.add_argument("--zeta", type=int)
    x.add_argument("--alpha", type=int, default=0)
    x.add_argument("--r", type=int)
    x.add_argument("--q", type=int)

    # ramsey
    r = sub.add_parser("ramsey", help="exhaustive search").add_subparsers(dest="action", required=True)
    x = leaf(r, "exhaustive", cmd_ramsey_exhaustive, "search all colorings of K_{c x s}")
    x.add_argument("--c", type=int, required=True)
    x.add_argument("--s", type=int, required=True)
    x.add_argument("--target", type=target_pair, required=True)
    x.add_argument("--colors", type=int, default=2)
    x.add_argument("--budget", type=int)

    v = leaf(sub, "verify", cmd_verify, "re-check a certificate file without the generators")
    v.add_argument("path", type=Path)
    v.add_argument("--target", type=target_pair)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors (2) and --help (0)
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    try:
        return args.func(args)
    except Violated as exc:
        print(json.dumps(exc.record, indent=2))
        return EXIT_VIOLATED
    except HypothesisFailed as exc:
        print(json.dumps({"hypothesis_failed": exc.clause, "message": str(exc), "report": bounds._jsonable(exc.report)}, indent=2))
        return EXIT_VIOLATED
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (RamseyForgeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
