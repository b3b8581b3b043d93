"""Command-line interface.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import __version__, actions, bounds, groupkit, jacobian, sigcalc
from . import families as fam
from .errors import NilautError, ParseError
from .sigcalc import parse_signature
from .verify import verify_paper

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


# -- group spec grammar ----------------------------------------------------------------

_PARAMS_RE = re.compile(r"\s*([a-z]+)\s*=\s*(\d+)\s*")


def _parse_params(text: str, body: str, offset: int, names: Sequence[str]) -> dict[str, int]:
    out: dict[str, int] = {}
    pos = 0
    for k, part in enumerate(body.split(",")):
        m = _PARAMS_RE.fullmatch(part)
        if m is None:
            raise ParseError(text, offset + pos, f"expected name=<int> for {', '.join(names)}")
        key = m.group(1)
        if key not in names or key in out:
            raise ParseError(text, offset + pos + m.start(1), f"unexpected parameter {key!r}")
        out[key] = int(m.group(2))
        pos += len(part) + 1
    missing = [n for n in names if n not in out]
    if missing:
        raise ParseError(text, len(text), f"missing parameter {missing[0]!r}")
    return out


def _parse_cycles_at(text: str, start: int, stop: int) -> list[list[int]]:
    """Cycles like ``(1 2 3)(4 5)`` in ``text[start:stop]``; an empty span is the identity."""
    cycles = []
    i = start
    while i < stop:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise ParseError(text, i, "expected '(' to open a cycle")
        j = text.find(")", i, stop)
        if j < 0:
            raise ParseError(text, stop, "unclosed cycle")
        body = text[i + 1 : j]
        pts = []
        for m in re.finditer(r"[^\s,]+", body):
            tok = m.group(0)
            if not tok.isdigit() or int(tok) < 1:
                raise ParseError(text, i + 1 + m.start(), f"bad point {tok!r}; points are positive integers")
            pts.append(int(tok))
        if len(set(pts)) != len(pts):
            raise ParseError(text, i, "repeated point in cycle")
        cycles.append(pts)
        i = j + 1
    return cycles


def _cycles_to_perm(cycles: list[list[int]], degree: int) -> tuple[int, ...]:
    perm = list(range(degree))
    # compose cycles left to right, matching the group's left-to-right products
    for cyc in cycles:
        step = list(range(degree))
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            step[a - 1] = b - 1
        perm = [step[perm[x]] for x in range(degree)]
    return tuple(perm)


def parse_group_spec(text: str, cap: int = groupkit.DEFAULT_CAP) -> groupkit.FiniteGroup:
    """``G2:n=<int>``, ``Gp:p=<int>,n=<int>`` or ``perm:[<cycles>;<cycles>;...]``."""
    head, sep, rest = text.partition(":")
    kind = head.strip()
    if not sep:
        raise ParseError(text, len(head), "expected ':' after the group kind")
    offset = len(head) + 1
    if kind == "G2":
        return groupkit.build_G2(_parse_params(text, rest, offset, ("n",))["n"])
    if kind == "Gp":
        prm = _parse_params(text, rest, offset, ("p", "n"))
        return groupkit.build_Gp(prm["p"], prm["n"])
    if kind == "perm":
        lead = len(rest) - len(rest.lstrip())
        start = offset + lead
        if start >= len(text) or text[start] != "[":
            raise ParseError(text, start, "expected '['")
        end = text.rstrip()
        if not end.endswith("]"):
            raise ParseError(text, len(end), "expected ']'")
        close = len(end) - 1
        gens_cycles = []
        pos = start + 1
        if text[pos:close].strip():
            for piece in text[pos:close].split(";"):
                gens_cycles.append(_parse_cycles_at(text, pos, pos + len(piece)))
                pos += len(piece) + 1
        degree = max((v for g in gens_cycles for c in g for v in c), default=1)
        perms = [_cycles_to_perm(g, degree) for g in gens_cycles]
        return groupkit.from_permutations(perms, degree, cap=cap)
    raise ParseError(text, 0, f"unknown group kind {kind!r}; use G2, Gp or perm")


# -- output helpers ----------------------------------------------------------------------


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print("\n".join(lines))


def _table(rows: list[Sequence], header: Sequence[str]) -> list[str]:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    fmt = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
    return [fmt(cells[0]), fmt(["-" * w for w in widths])] + [fmt(r) for r in cells[1:]]


def _family_arg(text: str):
    if text == "nilpotent":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a prime or 'nilpotent', got {text!r}") from None


# -- verbs -----------------------------------------------------------------------------------


def cmd_signature(args) -> int:
    sig = parse_signature(args.signature)
    info = {
        "signature": str(sig),
        "normalized_area": str(sigcalc.normalized_area(sig)),
        "euler_characteristic": str(sigcalc.euler_characteristic(sig)),
        "hyperbolic": sigcalc.is_hyperbolic(sig),
        "teichmuller_dim": sigcalc.teichmuller_dim(sig) if sigcalc.is_hyperbolic(sig) else None,
        "degenerate": sigcalc.is_degenerate(sig),
        "nilpotent_admissible": sigcalc.is_nilpotent_admissible(sig),
    }
    if args.prime is not None:
        info["localization"] = str(sigcalc.p_localization(sig, args.prime))
    if args.order is not None:
        info["genus"] = str(sigcalc.riemann_hurwitz_genus(sig, args.order))
    _emit(args, info, [f"{k}: {v}" for k, v in info.items()])
    return EXIT_OK


def _d_values(args) -> list[int]:
    return args.d if args.d else list(range(1, 7))


def cmd_bound(args) -> int:
    results = [bounds.bound(args.p, d) for d in _d_values(args)]
    rows = [(r.d, r.coefficient, r.min_area, ", ".join(map(str, r.extremal_signatures))) for r in results]
    _emit(
        args,
        {"bounds": [r.to_json() for r in results]},
        _table(rows, ("d", "coefficient", "min area", "extremal signatures")),
    )
    return EXIT_OK


def cmd_search(args) -> int:
    results = [bounds.min_area_search(d, args.p) for d in _d_values(args)]
    rows = [(r.d, r.min_area, ", ".join(map(str, r.argmin)), r.enumerated) for r in results]
    _emit(args, {"searches": [r.to_json() for r in results]}, _table(rows, ("d", "min area", "argmin", "visited")))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    sig = parse_signature(args.signature)
    G = parse_group_spec(args.group, cap=args.cap)
    rows = actions.enumerate_image_tuples(sig, G)
    shown = [[G.label(int(x)) for x in r] for r in rows[: args.limit]]
    payload = {"signature": str(sig), "group": G.name, "total": len(rows), "epimorphisms": shown}
    lines = [f"{len(rows)} surface-kernel epimorphisms {sig} -> {G.name}"]
    lines += ["  (" + ", ".join(r) + ")" for r in shown]
    if len(rows) > args.limit:
        lines.append(f"  ... {len(rows) - args.limit} more (raise --limit)")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_classify(args) -> int:
    sig = parse_signature(args.signature)
    G = parse_group_spec(args.group, cap=args.cap)
    rep = actions.classify(sig, G, action="inner" if args.inner else "full")
    rows = [(k + 1, o.size, "(" + ", ".join(o.representative.words()) + ")") for k, o in enumerate(rep.orbits)]
    lines = [f"{rep.orbit_count} orbit(s) among {rep.total} epimorphisms; moves: {rep.move_set}"]
    _emit(args, rep.to_json(), lines + _table(rows, ("orbit", "size", "representative")))
    return EXIT_OK


def _theta_for(args, G: groupkit.FiniteGroup) -> actions.SurfaceKernelEpimorphism:
    if args.signature is None:
        if G.family is None:
            raise ParseError(args.group, 0, "--signature is required for groups outside the built families")
        sig = fam.G2_SIGNATURE if G.family[0] == "G2" else fam.gp_signature(G.family[1])
    else:
        sig = parse_signature(args.signature)
    if args.images:
        imgs = [groupkit.eval_word(G, w.strip()) for w in args.images.split(";")]
        theta = actions.make_epimorphism(sig, G, imgs)
    elif G.family is not None and args.signature is None:
        theta = fam.theta_uv(G, 0, 0) if G.family[0] == "G2" else fam.theta_m(G, 1)
    else:
        rows = actions.enumerate_image_tuples(sig, G)
        if len(rows) == 0:
            raise NilautError(f"no surface-kernel epimorphism {sig} -> {G.name}")
        theta = actions.make_epimorphism(sig, G, [int(x) for x in rows[0]])
    check = actions.is_surface_kernel(theta)
    if not check:
        raise NilautError(f"not surface-kernel: {check.violation}")
    return theta


def cmd_jacobian(args) -> int:
    G = parse_group_spec(args.group, cap=args.cap)
    theta = _theta_for(args, G)
    table = jacobian.character_table(G, cap=args.cap if args.cap_set else jacobian.GENERIC_SIZE_CAP)
    irreps = jacobian.rational_irreps(table)
    if args.quotient:
        H = groupkit.subgroup_generated(G, [groupkit.eval_word(G, w.strip()) for w in args.quotient.split(";")])
        rep = jacobian.quotient_decomposition(theta, H, table, irreps)
        title = f"J(C/H), |H| = {len(H)}"
    else:
        rep = jacobian.group_algebra_decomposition(theta, table, irreps)
        title = "JC"
    rows = [(f.irrep, f.degree, f.field_degree, f.multiplicity, f.dim) for f in rep.factors]
    lines = [f"{title} for theta = ({', '.join(theta.words())}) on {G.name}"]
    lines += _table(rows, ("irrep", "d_V", "k_V", "n", "dim B"))
    lines.append(f"total {rep.total} = genus {rep.genus}")
    payload = {"theta": theta.words(), "group": G.name, **rep.to_json()}
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_family(args) -> int:
    G = parse_group_spec(args.group, cap=args.cap)
    s = fam.family_summary(G)
    lines = [f"{s.name}: order {s.order}, signature {s.signature}, genus {s.genus}"]
    lines += [f"  {k} = {v}" for k, v in s.generators.items()]
    _emit(args, s.to_json(), lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_paper(args.scale)
    lines = [c.summary() + f"  [{c.seconds:.1f}s]" for c in report.checks]
    for c in report.checks:
        lines += [f"    note: {n}" for n in c.notes]
    lines.append("all checks passed" if report.ok else "some checks FAILED")
    _emit(args, report.to_json(), lines)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


# -- entry point --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of a text table")
    common.add_argument("--cap", type=int, default=None, help="group size cap for permutation closures and tables")

    parser = argparse.ArgumentParser(prog="nilaut", description="Nilpotent group actions on families of Riemann surfaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("signature", parents=[common], help="area, dimension and admissibility of a signature")
    p.add_argument("signature", help="e.g. '(0; 2,2,2,4)' or '(2; -)'")
    p.add_argument("--order", type=int, help="group order for the Riemann-Hurwitz genus")
    p.add_argument("--prime", type=int, help="prime for the localization")
    p.set_defaults(func=cmd_signature)

    for name, func, helptext in (
        ("bound", cmd_bound, "closed-form order bounds and extremal signatures"),
        ("search", cmd_search, "exhaustive minimal-area signature search"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--p", type=_family_arg, default="nilpotent", help="a prime, or 'nilpotent' (default)")
        p.add_argument("--d", type=int, nargs="+", help="dimensions (default 1..6)")
        p.set_defaults(func=func)

    p = sub.add_parser("enumerate", parents=[common], help="list surface-kernel epimorphisms")
    p.add_argument("signature")
    p.add_argument("group", help="G2:n=5, Gp:p=3,n=3 or perm:[(1 2)(3 4);(1 3)]")
    p.add_argument("--limit", type=int, default=20, help="how many to print")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", parents=[common], help="orbits under automorphisms and re-markings")
    p.add_argument("signature")
    p.add_argument("group")
    p.add_argument("--inner", action="store_true", help="use inner automorphisms only")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("jacobian", parents=[common], help="group-algebra decomposition of JC or J(C/H)")
    p.add_argument("group")
    p.add_argument("--signature", help="defaults to the family signature")
    p.add_argument("--images", help="generator images as words separated by ';'")
    p.add_argument("--quotient", help="generators of H as words separated by ';'")
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("family", parents=[common], help="summary of a family group")
    p.add_argument("group")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify-paper", parents=[common], help="run every reproduction check")
    p.add_argument("--scale", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.cap_set = args.cap is not None
    if args.cap is None:
        args.cap = groupkit.DEFAULT_CAP
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"nilaut: parse error: {exc.message} at position {exc.position}", file=sys.stderr)
        print(exc.pointer(), file=sys.stderr)
        return EXIT_USAGE
    except (NilautError, ValueError) as exc:
        print(f"nilaut: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
