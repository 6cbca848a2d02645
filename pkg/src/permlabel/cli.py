"""Command-line front end.

Exit codes: 0 ok, 2 invalid input, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from . import analysis, bounds, groups, labeling, search
from .perm import Permutation, PermutationError, format_cycles, format_vector, parse_permutation

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    human_summary: str = ""
    text: str | None = None  # raw text written verbatim (code files)

    @property
    def exit_code(self) -> int:
        return {"ok": EXIT_OK, "invalid-input": EXIT_INVALID, "budget-exceeded": EXIT_BUDGET}[self.status]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage())


# -- helpers --------------------------------------------------------------------

def _offset(args) -> int:
    return -1 if getattr(args, "zero_indexed", False) else 0


def _vec(f: Permutation, args) -> str:
    return format_vector(f, _offset(args))


def _cyc(f: Permutation, args) -> str:
    return format_cycles(f, _offset(args))


def _parse_perm(text: str, args, n: int | None = None) -> Permutation:
    return parse_permutation(text, n, offset=-_offset(args))


def _parse_points(text: str, args) -> list:
    try:
        return [int(x) - _offset(args) for x in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad point list {text!r}") from None


def _load_code(args) -> groups.PermutationCode:
    if not args.code:
        raise UsageError("--code is required")
    return groups.read_code(args.code)


def _cert_payload(cert: labeling.LabelingCertificate, args) -> dict:
    return {
        "kind": cert.kind,
        "n": cert.label.n,
        "label": _vec(cert.label, args),
        "achieved_distance": cert.achieved_distance,
        "zero_indexed": bool(getattr(args, "zero_indexed", False)),
    }


def dumps_certificate(cert: labeling.LabelingCertificate, zero_indexed: bool = False) -> str:
    off = -1 if zero_indexed else 0
    rec = {
        "kind": cert.kind,
        "n": cert.label.n,
        "label": format_vector(cert.label, off),
        "achieved_distance": cert.achieved_distance,
        "zero_indexed": zero_indexed,
    }
    return json.dumps(rec, sort_keys=True, indent=2) + "\n"


def loads_certificate(text: str) -> labeling.LabelingCertificate:
    try:
        rec = json.loads(text)
        off = 1 if rec.get("zero_indexed") else 0
        label = parse_permutation(rec["label"], int(rec["n"]), offset=off)
        return labeling.LabelingCertificate(label, int(rec["achieved_distance"]), rec["kind"])
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"malformed certificate: {exc}") from None


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _emit_cert(cert, args, extra: dict | None = None) -> CommandResult:
    payload = {"certificate": _cert_payload(cert, args)}
    if extra:
        payload.update(extra)
    if args.out:
        _write(args.out, dumps_certificate(cert, bool(args.zero_indexed)))
    return CommandResult("ok", payload,
                         f"{cert.kind} labeling {_vec(cert.label, args)} achieves distance {cert.achieved_distance}")


def _outcome_status(outcome: search.SearchOutcome) -> str:
    return "ok" if outcome.exhaustive else "budget-exceeded"


def _json_value(v):
    if isinstance(v, float) and math.isinf(v):
        return "infinite"
    return v


# -- commands ----------------------------------------------------------------------

def cmd_gen(args) -> CommandResult:
    kind = args.family
    if kind == "cyclic":
        if args.generator:
            gen = _parse_perm(args.generator, args, args.n)
        else:
            if not args.n:
                raise UsageError("gen cyclic needs --n or --generator")
            gen = Permutation.from_cycles([range(1, args.n + 1)], args.n)
        code = groups.cyclic_group(gen)
    elif kind == "dihedral":
        code = groups.dihedral(_required(args.n, "--n"))
    elif kind == "agl":
        code = groups.agl(_required(args.p, "--p"))
    else:
        if not args.generator:
            raise UsageError("gen closure needs at least one --generator")
        gens = [_parse_perm(g, args, args.n) for g in args.generator]
        cap = args.cap if args.cap else groups.DEFAULT_SIZE_CAP
        code = groups.closure(gens, cap, provenance="closure " + "; ".join(args.generator))
    text = groups.dumps_code(code)
    if args.out:
        _write(args.out, text)
        text = None
    payload = {"n": code.n, "size": len(code), "is_group": code.is_group, "family": code.provenance}
    return CommandResult("ok", payload, f"{code.provenance}: {len(code)} elements of degree {code.n}", text)


def _required(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def cmd_distance(args) -> CommandResult:
    code = _load_code(args)
    d = analysis.min_distance(code)
    payload = {"min_distance": d, "n": code.n, "size": len(code), "is_group": code.is_group}
    return CommandResult("ok", payload, str(d), f"{d}\n")


def cmd_relabel(args) -> CommandResult:
    code = _load_code(args)
    l = _parse_perm(_required(args.label, "--label"), args, code.n)
    new = labeling.relabel(code, l)
    text = groups.dumps_code(new, [f"relabeled by {format_vector(l)}"])
    if args.out:
        _write(args.out, text)
        text = None
    payload = {"size": len(new), "min_distance": analysis.min_distance(new)}
    return CommandResult("ok", payload, f"relabeled code has distance {payload['min_distance']}", text)


def cmd_label(args) -> CommandResult:
    kind = args.kind
    if kind == "cyclic":
        if args.generator:
            f = _parse_perm(args.generator, args, args.n)
        else:
            n = _required(args.n, "--n")
            f = Permutation.from_cycles([range(1, n + 1)], n)
        cert = labeling.cyclic_optimal_labeling(f)
        g = labeling.relabeled_generator(f, cert)
        extra = {"relabeled_generator": _cyc(g, args), "k": labeling.cyclic_k(f.n),
                 "formula_value": bounds.cyclic_lmax_formula(f.n)}
        return _emit_cert(cert, args, extra)
    code = _load_code(args)
    if kind == "worst":
        return _emit_cert(labeling.worst_labeling(code), args)
    if kind == "one":
        cert = labeling.distance_one_labeling(code)
        if cert is None:
            return CommandResult("ok", {"certificate": None, "lmin": 2},
                                 "no involution in the difference set: no distance-1 labeling")
        return _emit_cert(cert, args)
    A = _parse_points(_required(args.A, "--A"), args)
    B = _parse_points(_required(args.B, "--B"), args)
    pair = search.NeighboringPair(A, B)
    cert = search.labeling_from_pair(code, pair)
    return _emit_cert(cert, args, {"order": pair.order, "lower_bound": code.n - pair.order + 1})


def cmd_search(args) -> CommandResult:
    code = _load_code(args)
    kind = args.kind
    budget = {"budget_nodes": args.budget_nodes}
    if kind in ("lmax", "lmin", "two-distance"):
        budget["budget_seconds"] = args.budget_seconds
    if kind == "lmax":
        out = search.exact_lmax(code, threads=args.threads or 1, **budget)
    elif kind == "lmin":
        out = search.exact_lmin(code, **budget)
    elif kind == "two-distance":
        out = search.two_distance(code, **budget)
    else:
        out = search.min_neighboring_order(code, cap=args.cap, **budget)
    payload = {"value": _json_value(out.value), "exhaustive": out.exhaustive}
    if args.stats:
        payload["nodes_explored"] = out.nodes_explored
    if kind in ("lmax", "lmin") and out.witness is not None:
        cert = labeling.certify(code, out.witness, "searched")
        payload["certificate"] = _cert_payload(cert, args)
        if args.out:
            _write(args.out, dumps_certificate(cert, bool(args.zero_indexed)))
    elif kind == "two-distance" and out.witness is not None:
        payload["path"] = " ".join(str(v + _offset(args)) for v in out.witness)
        cert = labeling.certify(code, search.path_to_labeling(out.witness), "searched")
        payload["certificate"] = _cert_payload(cert, args)
        if args.out:
            _write(args.out, dumps_certificate(cert, bool(args.zero_indexed)))
    elif kind == "neighboring" and out.witness is not None:
        off = _offset(args)
        payload["A"] = " ".join(str(x + off) for x in sorted(out.witness.A))
        payload["B"] = " ".join(str(x + off) for x in sorted(out.witness.B))
    value = payload["value"]
    if isinstance(value, bool):
        summary = "true" if value else "false"
    else:
        summary = "cap-reached" if value is None else str(value)
    if not out.exhaustive:
        summary += " (not exhaustive)"
    return CommandResult(_outcome_status(out), payload, summary)


def cmd_bound(args) -> CommandResult:
    kind = args.kind
    if kind == "prob":
        if args.agl:
            hist, n = bounds.agl_cycle_count_histogram(args.agl), args.agl
        else:
            code = _load_code(args)
            hist, n = bounds.code_histogram(code), code.n
        if args.p is not None or args.t is not None:
            rep = bounds.prob_bound_report(hist, n, _required(args.p, "--p"), _required(args.t, "--t"))
        else:
            rep = bounds.prob_bound_optimize(hist, n, args.steps)
        return _report(rep)
    if kind == "min-degree":
        code = _load_code(args)
        rep = bounds.min_degree_bound(len(code), analysis.minimal_degree(code), code.n,
                                      _required(args.p, "--p"), _required(args.t, "--t"))
        return _report(rep)
    if kind == "cyclic":
        n = _required(args.n, "--n")
        value = bounds.cyclic_lmax_formula(n)
        return CommandResult("ok", {"n": n, "k": labeling.cyclic_k(n), "lmax": value}, str(value))
    if kind == "agl-asymptotic":
        return _report(bounds.agl_asymptotic_params(_required(args.q, "--q")))
    if kind == "dihedral-asymptotic":
        return _report(bounds.dihedral_asymptotic_params(_required(args.n, "--n")))
    if kind == "cycle-index":
        if args.permutation:
            poly = bounds.cycle_index_poly(_parse_perm(args.permutation, args, args.n))
        else:
            poly = bounds.agl_cycle_index(_required(args.p_prime, "--prime"))
        coeffs = list(poly.coefficients)
        return CommandResult("ok", {"coefficients": coeffs}, " ".join(map(str, coeffs)))
    if kind == "neighboring-agl":
        v = bounds.neighboring_lower_bound_agl(_required(args.p_prime, "--prime"))
        return CommandResult("ok", {"lower_bound": _json_value(v)}, str(_json_value(v)))
    rep = bounds.theorem8_counting_check(_required(args.p_prime, "--prime"))
    d = rep.as_dict()
    return CommandResult("ok", d, f"chain holds: {str(rep.chain_holds).lower()}")


def _report(rep: bounds.BoundReport) -> CommandResult:
    d = rep.guaranteed_distance
    summary = f"{rep.kind}: {'valid' if rep.valid else 'invalid'}"
    if rep.valid:
        summary += f", guaranteed distance {d}"
    if rep.reason:
        summary += f" ({rep.reason})"
    return CommandResult("ok", rep.as_dict(), summary)


def cmd_reduce(args) -> CommandResult:
    with open(_required(args.graph, "--graph"), encoding="utf-8") as fh:
        graph = search.loads_graph(fh.read())
    code = search.hamiltonian_to_code(graph)
    text = groups.dumps_code(code, [f"non-edge transpositions of a graph with {graph.n} vertices"])
    payload = {"n": graph.n, "size": len(code)}
    if args.solve:
        ham = search.hamiltonian_path_exists(graph)
        two = search.two_distance(code)
        payload.update({"hamiltonian_path": ham.value, "two_distance": two.value,
                        "agree": ham.value == two.value})
    if args.out:
        _write(args.out, text)
        text = None
    summary = f"code of {len(code)} permutations"
    if args.solve:
        summary += f"; hamiltonian path {str(payload['hamiltonian_path']).lower()}, " \
                   f"2-distance {str(payload['two_distance']).lower()}"
    return CommandResult("ok", payload, summary, text)


def cmd_verify(args) -> CommandResult:
    code = _load_code(args)
    with open(_required(args.certificate, "--certificate"), encoding="utf-8") as fh:
        cert = loads_certificate(fh.read())
    actual = analysis.min_distance(labeling.relabel(code, cert.label))
    ok = actual == cert.achieved_distance
    payload = {"claimed": cert.achieved_distance, "recomputed": actual, "verified": ok}
    return CommandResult("ok" if ok else "invalid-input", payload,
                         "verified" if ok else f"mismatch: claimed {cert.achieved_distance}, got {actual}")


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--code")
    common.add_argument("--out")
    common.add_argument("--json", action="store_true")
    common.add_argument("--zero-indexed", action="store_true")
    common.add_argument("--stats", action="store_true")

    parser = _Parser(prog="permlabel", description="Labeling of permutation codes under the l-infinity metric.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", parents=[common], help="generate a code")
    p.add_argument("family", choices=["cyclic", "dihedral", "agl", "closure"])
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--generator", action="append")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("distance", parents=[common], help="minimal distance of a code")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("relabel", parents=[common], help="conjugate a code by a labeling")
    p.add_argument("--label")
    p.set_defaults(func=cmd_relabel)

    p = sub.add_parser("label", parents=[common], help="constructive labelings")
    p.add_argument("kind", choices=["worst", "one", "cyclic", "from-pair"])
    p.add_argument("--n", type=int)
    p.add_argument("--generator")
    p.add_argument("--A")
    p.add_argument("--B")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("search", parents=[common], help="exact searches")
    p.add_argument("kind", choices=["lmax", "lmin", "two-distance", "neighboring"])
    p.add_argument("--budget-nodes", type=int)
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--cap", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bound", parents=[common], help="closed-form and probabilistic bounds")
    p.add_argument("kind", choices=["prob", "min-degree", "cyclic", "agl-asymptotic", "dihedral-asymptotic",
                                    "cycle-index", "theorem8", "neighboring-agl"])
    p.add_argument("--p", type=float, help="probability parameter in (0, 1/2)")
    p.add_argument("--t", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int, help="prime for agl-asymptotic")
    p.add_argument("--prime", dest="p_prime", type=int, help="prime for cycle-index/theorem8/neighboring-agl")
    p.add_argument("--agl", type=int, help="evaluate prob for AGL(q) from its analytic histogram")
    p.add_argument("--permutation")
    p.add_argument("--steps", type=int, default=400)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("reduce", parents=[common], help="Hamiltonian path reduction")
    p.add_argument("kind", choices=["ham-path"])
    p.add_argument("--graph")
    p.add_argument("--solve", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", parents=[common], help="re-check a labeling certificate")
    p.add_argument("--certificate")
    p.set_defaults(func=cmd_verify)
    return parser


def render(result: CommandResult, as_json: bool) -> str:
    if as_json:
        rec = {"status": result.status, "payload": result.payload, "summary": result.human_summary}
        return json.dumps(rec, sort_keys=True, indent=2) + "\n"
    if result.text is not None:
        return result.text
    lines = [result.human_summary]
    if result.payload:
        width = max(len(k) for k in result.payload)
        for k, v in result.payload.items():
            if isinstance(v, dict):
                v = json.dumps(v, sort_keys=True)
            lines.append(f"  {k.ljust(width)}  {v}")
    return "\n".join(lines) + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    as_json = "--json" in (argv if argv is not None else sys.argv[1:])
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
    except UsageError as exc:
        if len(exc.args) > 1:
            stderr.write(exc.args[1])
        stderr.write(f"permlabel: error: {exc.args[0]}\n")
        return EXIT_INVALID
    except (PermutationError, groups.CodeError, ValueError, OSError) as exc:
        result = CommandResult("invalid-input", {"error": str(exc)}, f"error: {exc}")
        if as_json:
            stdout.write(render(result, True))
        else:
            stderr.write(f"permlabel: {result.human_summary}\n")
        return EXIT_INVALID
    if result.text is not None and args.json and args.command in ("gen", "relabel", "reduce"):
        result.payload["code"] = result.text
    stdout.write(render(result, args.json))
    return result.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
