"""Command-line interface: ``sftlab <command> ...``.

Results go to stdout (or ``--out``) as JSON with sorted keys, so a fixed
command line always produces the same bytes.  Failures print an error object
to stderr and exit with 2 (invalid input), 3 (unmet precondition) or 4
(resource cap).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import classify, perron, ps_entropy, sofic, verify
from .errors import PreconditionError, ResourceCapError, SFTLabError, ValidationError
from .sft import AdjacencyMatrix, is_primitive, load_matrix, matrix_power, periodic_points

EXIT_OK, EXIT_INVALID, EXIT_PRECONDITION, EXIT_RESOURCE = 0, 2, 3, 4


@dataclass
class RunConfig:
    """A parsed command line: the command path plus every knob, validated before dispatch."""

    command: tuple
    options: dict = field(default_factory=dict)
    seed: int = 0
    out: str | None = None
    fmt: str = "json"

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must be a 64-bit unsigned integer")
        if self.fmt not in ("json", "csv"):
            raise ValidationError("format must be json or csv")
        for name in ("tol", "epsilon"):
            value = self.options.get(name)
            if value is not None and not (value > 0 and math.isfinite(value)):
                raise ValidationError(f"--{name} must be positive")
        epsilon = self.options.get("epsilon")
        if epsilon is not None and epsilon >= 1:
            raise ValidationError("--epsilon must lie in (0, 1)")
        for name in ("k", "n", "n_max", "k_max", "j_max", "p_max", "q_max", "digit_budget", "cases", "primes"):
            value = self.options.get(name)
            if value is not None and value < 1:
                raise ValidationError(f"--{name.replace('_', '-')} must be >= 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _to_jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {str(k): _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(x) for x in obj]
    if hasattr(obj, "to_json"):
        return _to_jsonable(obj.to_json())
    return obj


def dumps(obj) -> str:
    return json.dumps(_to_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _matrix(source: str) -> AdjacencyMatrix:
    """A path to a matrix JSON file, or an inline list such as ``[[1,1],[1,0]]``."""
    if source.lstrip().startswith("["):
        try:
            return AdjacencyMatrix.from_json({"rows": json.loads(source)})
        except json.JSONDecodeError as exc:
            raise ValidationError(f"inline matrix is not valid JSON: {exc}") from exc
    return load_matrix(source)


def _json_file(path: str):
    with open(path) as fh:
        return json.load(fh)


def _graph(source: str) -> sofic.LabeledGraph:
    if source == "even":
        return sofic.even_shift()
    return sofic.LabeledGraph.from_json(_json_file(source))


def _n_list(opts) -> list:
    if opts.get("n_list"):
        return [int(x) for x in opts["n_list"].split(",")]
    return list(range(1, opts["n_max"] + 1))


# command handlers: each returns (payload, csv_text_or_None)


def cmd_entropy(o):
    A = _matrix(o["matrix"])
    d = perron.perron_eigendata(A, o["tol"])
    lo, hi = perron.topological_entropy(A, o["tol"])
    return {
        "matrix": A.tolist(),
        "primitivity_exponent": is_primitive(A)[1],
        "lambda_lo": d.lambda_lo,
        "lambda_hi": d.lambda_hi,
        "lambda": d.lam,
        "width": float(d.width),
        "entropy": [lo, hi],
        "u": d.u,
        "v": d.v,
        "vu": d.vu,
        "iterations": d.iterations,
    }, None


def cmd_power(o):
    A = _matrix(o["matrix"])
    return {"k": o["k"], "rows": matrix_power(A, o["k"]).tolist()}, None


def cmd_periodic(o):
    A = _matrix(o["matrix"])
    counts = [{"n": n, "count": periodic_points(A, n, brute_force=o["brute_force"])} for n in range(1, o["n_max"] + 1)]
    return {"matrix": A.tolist(), "brute_force": o["brute_force"], "periodic_points": counts}, None


def cmd_growth(o):
    A = _matrix(o["matrix"])
    series = ps_entropy.growth_series(A, o["k"], _n_list(o), digit_budget=o["digit_budget"], tol=o["tol"])
    payload = {
        "k": series.k,
        "target": list(series.target),
        "samples": [{"n": s.n, "a_n": s.a_n, "exact": s.exact} for s in series.samples],
        "undefined": series.undefined,
    }
    if len(series.samples) >= 4:
        payload["estimate"] = ps_entropy.entropy_estimate(series).to_json()
    return payload, series.to_csv()


def cmd_admissible(o):
    A = _matrix(o["matrix"])
    return ps_entropy.admissible_params(A, o["epsilon"], o["k_max"]).to_json(), None


def cmd_upper_bound(o):
    A = _matrix(o["matrix"])
    if o.get("D") is not None:
        params = ps_entropy.PSParams(o["C"], o["D"], o["r"] or A.size**2)
    else:
        params = ps_entropy.admissible_params(A, o["epsilon"], o["k_max"]).params
    return ps_entropy.upper_bound_check(A, _n_list(o), params).to_json(), None


def cmd_classify(o):
    kind = o["kind"]
    if kind == "full-shift":
        return classify.fullshift_isomorphic(o["m"], o["n_other"]).to_json(), None
    if kind == "ratio":
        A, B = _matrix(o["A"]), _matrix(o["B"])
        return classify.entropy_ratio_witness(A, B, o["p_max"], o["q_max"]).to_json(), None
    return classify.fullshift_obstruction(_matrix(o["A"]), o["k_max"]).to_json(), None


def cmd_roots(o):
    if o.get("matrix"):
        if o.get("k") is None:
            raise ValidationError("--matrix needs --j and --k")
        A = _matrix(o["matrix"])
        return {"j": o["j"], "k": o["k"], "feasible": perron.perron_root_feasible(A, o["j"], o["k"])}, None
    if o.get("n") is None:
        raise ValidationError("roots needs --n or --matrix")
    g, ks = perron.root_exponent_bound_fullshift(o["n"], o["j"])
    return {"n": o["n"], "j": o["j"], "bound": g, "feasible_k": list(ks)}, None


def _amplified(G: sofic.LabeledGraph, power):
    L = sofic.find_power_with_min_entry(G) if power is None else power
    return L, sofic.power_labeled(G, L)


def cmd_sofic(o):
    action = o["action"]
    G = _graph(o["graph"])
    if action == "check":
        A = G.matrix()
        return {
            "vertices": G.size,
            "edges": G.graph.num_edges,
            "matrix": A.tolist(),
            "right_resolving": sofic.is_right_resolving(G),
            "primitive": is_primitive(A)[0],
        }, None
    if action == "power":
        H = sofic.power_labeled(G, o["j"])
        return {**H.to_json(), "right_resolving": sofic.is_right_resolving(H)}, None
    if action == "insplit":
        if not o.get("partition"):
            raise ValidationError("insplit needs --partition")
        H = sofic.in_split(G, _json_file(o["partition"]))
        return {**H.to_json(), "right_resolving": sofic.is_right_resolving(H)}, None
    L, base = _amplified(G, o.get("power"))
    tower = sofic.build_subgraph_tower(base, o["j_max"])
    if o.get("export"):
        Path(o["export"]).write_text(dumps(tower))
    if action == "build":
        check = sofic.verify_tower(tower, raise_on_failure=False)
        return {
            "power": L,
            "base_matrix": base.matrix().tolist(),
            "b": {str(j): b for j, b in tower.b.items()},
            "edges_per_pair": {str(j): r.target for j, r in tower.reports.items()},
            "reports": [tower.reports[j] for j in sorted(tower.reports)],
            "verified": {"1": check.condition1, "2": check.condition2, "3": check.condition3},
        }, None
    j_list = _n_list({"n_list": o.get("j_list"), "n_max": o["j_max"]})
    series = sofic.sofic_growth_series(tower, j_list)
    payload = {
        "power": L,
        "target": list(series.target),
        "samples": [{"j": s.n, "a_j": s.a_n, "constructed": s.n in tower.levels} for s in series.samples],
        "undefined": series.undefined,
    }
    return payload, series.to_csv()


def cmd_oracle(o):
    rows = ps_entropy.partition_example_growth(o["a"], o["q"], o["primes"])
    return {
        "a": o["a"],
        "q": o["q"],
        "target": math.log(o["a"]),
        "samples": [{"j": s.j, "exponent": str(s.exponent), "a_j": s.a_j} for s in rows],
    }, None


def cmd_verify(o):
    if o["what"] == "lemmas":
        return verify.lemma_report(), None
    return verify.property_suite(o["seed"], o["cases"]).to_json(), None


def build_parser() -> argparse.ArgumentParser:
    def global_flags(parser, default):
        value = (lambda v: v) if default else (lambda v: argparse.SUPPRESS)
        parser.add_argument("--out", default=value(None), help="write the result here instead of stdout")
        parser.add_argument("--format", dest="fmt", choices=["json", "csv"], default=value(None), help="output format (csv for series)")
        parser.add_argument("--seed", type=int, default=value(0), help="64-bit seed for randomized checks")
        parser.add_argument("--tol", type=float, default=value(perron.DEFAULT_TOL), help="Perron enclosure width")

    p = _Parser(prog="sftlab", description="Shifts of finite type, stabilized automorphism groups and their entropy.")
    global_flags(p, True)
    common = _Parser(add_help=False)
    global_flags(common, False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[common], **kw)

    def with_matrix(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--matrix", required=True, help="matrix JSON file or inline [[..],..]")
        sp.set_defaults(handler=globals()["cmd_" + name.replace("-", "_")])
        return sp

    with_matrix("entropy", "Perron eigendata and topological entropy")
    with_matrix("power", "exact matrix power").add_argument("--k", type=int, required=True)
    sp = with_matrix("periodic", "periodic-point counts trace(A^n)")
    sp.add_argument("--n-max", type=int, default=10)
    sp.add_argument("--brute-force", action="store_true")
    sp = with_matrix("growth", "growth series of log log |Simp_ev|")
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--n-max", type=int, default=64)
    sp.add_argument("--n-list", help="comma-separated sample indices (overrides --n-max)")
    sp.add_argument("--digit-budget", type=int, default=ps_entropy.DEFAULT_DIGIT_BUDGET)
    sp = with_matrix("admissible", "admissible (C, D, r) and the onset K")
    sp.add_argument("--epsilon", type=float, default=0.05)
    sp.add_argument("--k-max", type=int, default=200)
    sp = with_matrix("upper-bound", "periodic-point upper bound on the growth")
    sp.add_argument("--n-max", type=int, default=40)
    sp.add_argument("--n-list")
    sp.add_argument("--epsilon", type=float, default=0.05)
    sp.add_argument("--k-max", type=int, default=200)
    sp.add_argument("--C", type=float, default=1.0)
    sp.add_argument("--D", type=float, default=None, help="use explicit (C, D, r) instead of admissible ones")
    sp.add_argument("--r", type=int, default=None)

    sp = sub.add_parser("classify", help="stabilized-isomorphism verdicts")
    sp.set_defaults(handler=cmd_classify)
    csub = sp.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    _cadd = csub.add_parser
    csub.add_parser = lambda *a, **kw: _cadd(*a, parents=[common], **kw)
    c = csub.add_parser("full-shift")
    c.add_argument("m", type=int)
    c.add_argument("n_other", metavar="n", type=int)
    c = csub.add_parser("ratio")
    c.add_argument("A")
    c.add_argument("B")
    c.add_argument("--p-max", type=int, default=10)
    c.add_argument("--q-max", type=int, default=10)
    c = csub.add_parser("obstruction")
    c.add_argument("A")
    c.add_argument("--k-max", type=int, default=50)

    sp = sub.add_parser("roots", help="root exponents of full shifts / Perron feasibility")
    sp.set_defaults(handler=cmd_roots)
    sp.add_argument("--n", type=int)
    sp.add_argument("--matrix")
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--k", type=int)

    sp = sub.add_parser("sofic", help="labeled graphs and the subgraph tower")
    sp.set_defaults(handler=cmd_sofic)
    sp.add_argument("action", choices=["check", "power", "insplit", "build", "growth"])
    sp.add_argument("--graph", required=True, help="labeled-graph JSON file, or 'even'")
    sp.add_argument("--j", type=int, default=2)
    sp.add_argument("--partition", help="JSON list, per vertex, of classes of incoming edge ids")
    sp.add_argument("--power", type=int, help="amplify to this power first (default: least with entries >= 3r)")
    sp.add_argument("--j-max", type=int, default=4)
    sp.add_argument("--j-list", help="comma-separated growth sample indices")
    sp.add_argument("--export", help="write the full tower JSON here")

    sp = sub.add_parser("oracle", help="closed-form oracles")
    sp.set_defaults(handler=cmd_oracle)
    sp.add_argument("which", choices=["partition"])
    sp.add_argument("--a", type=int, default=2)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--primes", type=int, default=25)

    sp = sub.add_parser("verify", help="lemma reports and seeded property runs")
    sp.set_defaults(handler=cmd_verify)
    sp.add_argument("what", choices=["lemmas", "properties"])
    sp.add_argument("--cases", type=int, default=1000)
    return p


def parse_config(argv) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    command = tuple(x for x in (ns.pop("command"), ns.get("kind"), ns.get("action"), ns.get("what")) if x)
    out, fmt, seed = ns.pop("out"), ns.pop("fmt"), ns.pop("seed")
    if fmt is None:
        fmt = "csv" if out and out.endswith(".csv") else "json"
    ns["seed"] = seed
    return RunConfig(command, ns, seed, out, fmt)


def dispatch(config: RunConfig) -> int:
    payload, csv_text = config.options["handler"](config.options)
    if config.fmt == "csv":
        if csv_text is None:
            raise ValidationError(f"{' '.join(config.command)} has no CSV output")
        text = csv_text
    else:
        text = dumps(payload)
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, PreconditionError):
        return EXIT_PRECONDITION
    if isinstance(exc, ResourceCapError):
        return EXIT_RESOURCE
    return EXIT_INVALID


def main(argv=None) -> int:
    try:
        return dispatch(parse_config(sys.argv[1:] if argv is None else argv))
    except SFTLabError as exc:
        sys.stderr.write(dumps(exc.to_dict()))
        return _exit_code(exc)
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(dumps({"error": "invalid-input", "message": str(exc)}))
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
