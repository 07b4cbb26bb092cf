"""Command-line interface.

Exit codes: 0 yes or success, 1 no, 2 usage or format error, 3 when the
brute-force oracle (``--oracle``) or witness check (``--verify``) disagrees.
Vertices and points are numbered from 0.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys

from . import __version__
from .autsearch import (automorphism_group, automorphism_group_brute, cofix_brute, cofix_fpt,
                        is_fixing_set, min_fixing_set)
from .bases import cobase_brute, cobase_fpt, greedy_base, is_base, min_base_exact
from .formats import FormatError, InstanceFile, parse_instance, write_instance
from .graph import ColoredGraph, GraphError
from .perm import PermError
from .reductions import (CnfFormula, MonotoneCircuit, ReductionError, circuit_to_graph,
                         dominating_set_brute, domset_to_kdiscrete, group_to_rigid_graph,
                         min_set_cover, mini3sat_to_group, normalize_occurrences,
                         random_circuit, weighted_sat_brute)
from .reductions.builder import GraphBuilder, cfi_gadget
from .refinement import individualize, refine_rounds, stable_coloring, stable_partition
from .solvers import (k_class_brute, k_class_search, k_color_valence, kernelize_nk_discrete,
                      membership, minimum_brute, nk_discrete_brute, nk_discrete_solve,
                      parse_tag, solve_3bounded)
from .threebounded import NotBoundedError

JOBS_ENV = "FIXREF_JOBS"
CLASSES = ("discrete", "discrete-l", "amenable", "compact", "refinable", "rigid")


class UsageError(Exception):
    pass


def _load(path: str, kind: str) -> InstanceFile:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    inst = parse_instance(text)
    if inst.kind != kind:
        raise UsageError(f"expected a {kind} file, got a {inst.kind} file")
    return inst


def _report(problem: str, params: dict, answer, witness=None, work=0, **extra) -> dict:
    out = {"problem": problem, "parameters": params, "answer": answer,
           "witness": list(witness) if witness is not None else None, "work": work}
    out.update(extra)
    return out


def _tag(args):
    if args.cls == "discrete-l" and args.l is None:
        raise UsageError("--class discrete-l needs --l")
    return parse_tag(args.cls, args.l if args.cls == "discrete-l" else None)


def _same(rep: dict, expected_answer, expected_witness="skip") -> dict:
    ok = rep["answer"] == expected_answer
    if expected_witness != "skip":
        w = list(expected_witness) if expected_witness is not None else None
        ok = ok and rep["witness"] == w
    rep["oracle_agreement"] = ok
    return rep


# analysis commands ----------------------------------------------------

def cmd_refine(args):
    g = _load(args.file, "graph").payload
    if args.rounds is not None:
        col = refine_rounds(g, args.rounds)
        cells = [list(c) for c in col.cells]
    else:
        cells = [list(c) for c in stable_partition(g).cells]
    rep = _report("refine", {"rounds": args.rounds}, True, None, len(cells),
                  cells=cells, discrete=all(len(c) == 1 for c in cells))
    if args.oracle:
        naive = refine_rounds(g, args.rounds) if args.rounds is not None else stable_coloring(g).stable
        naive_cells = sorted(sorted(c) for c in naive.cells)
        rep["oracle_agreement"] = naive_cells == sorted(sorted(c) for c in cells)
    return rep


def cmd_classify(args):
    g = _load(args.file, "graph").payload
    tag = _tag(args)
    ans = membership(g, tag)
    rep = _report("classify", {"class": str(tag)}, ans)
    if args.oracle:
        expected = _membership_brute(g, tag)
        if expected is not None:
            rep = _same(rep, expected)
    return rep


def _membership_brute(g: ColoredGraph, tag):
    """Membership from naive refinement and plain automorphism enumeration;
    None for classes without an independent check."""
    if tag.kind == "discrete":
        return stable_coloring(g).stable.is_discrete()
    if tag.kind == "discrete_l":
        return refine_rounds(g, tag.l).is_discrete()
    if tag.kind == "rigid":
        return len(automorphism_group_brute(g)) == 1
    if tag.kind == "refinable":
        elems = automorphism_group_brute(g)
        orbits = {frozenset(e[v] for e in elems) for v in range(g.n)}
        return len(orbits) == len(stable_coloring(g).stable.cells)
    return None


def cmd_min_base(args):
    grp = _load(args.file, "group").payload
    res = min_base_exact(grp)
    rep = _report("min-base", {}, True, res.base, res.b,
                  b=res.b, certificate=[list(c) for c in res.certificate])
    if args.oracle:
        best = next(s for s in range(grp.n + 1)
                    if any(is_base(grp, c) for c in itertools.combinations(range(grp.n), s)))
        rep["oracle_agreement"] = best == res.b
    if args.verify:
        rep["verified"] = is_base(grp, res.base)
    return rep


def cmd_greedy_base(args):
    grp = _load(args.file, "group").payload
    base = greedy_base(grp)
    rep = _report("greedy-base", {}, True, base, len(base))
    if args.verify:
        rep["verified"] = is_base(grp, base)
    return rep


def cmd_cobase(args):
    grp = _load(args.file, "group").payload
    res = cobase_fpt(grp, args.k)
    rep = _report("cobase", {"k": args.k}, res.answer, res.cobase, len(res.steps),
                  steps=res.steps, block_restarts=res.block_restarts,
                  mandatory=list(res.mandatory))
    if args.oracle:
        rep = _same(rep, cobase_brute(grp, args.k) is not None)
    if args.verify and res.answer:
        rep["verified"] = is_base(grp, [p for p in range(grp.n) if p not in res.cobase])
    return rep


def cmd_min_fixing_set(args):
    g = _load(args.file, "graph").payload
    res = min_fixing_set(g)
    rep = _report("min-fixing-set", {}, True, res.base, res.b, b=res.b)
    if args.oracle:
        elems = automorphism_group_brute(g)
        ident = tuple(range(g.n))

        def fixes(s):
            return all(e == ident or any(e[v] != v for v in s) for e in elems)

        best = next(s for s in range(g.n + 1)
                    if any(fixes(c) for c in itertools.combinations(range(g.n), s)))
        rep["oracle_agreement"] = best == res.b
    if args.verify:
        rep["verified"] = is_fixing_set(g, res.base)
    return rep


def cmd_cofix(args):
    g = _load(args.file, "graph").payload
    res = cofix_fpt(g, args.k)
    rep = _report("cofix", {"k": args.k}, res.answer, res.cobase, len(res.steps), steps=res.steps)
    if args.oracle:
        rep = _same(rep, cofix_brute(g, args.k) is not None)
    if args.verify and res.answer:
        rep["verified"] = is_fixing_set(g, [v for v in range(g.n) if v not in res.cobase])
    return rep


def cmd_k_search(args):
    g = _load(args.file, "graph").payload
    tag = _tag(args)
    res = k_class_search(g, args.k, tag, jobs=args.jobs)
    rep = _report("k-search", {"class": str(tag), "k": args.k}, res.answer, res.witness, res.work)
    if args.oracle:
        expected = k_class_brute(g, args.k, tag)
        rep = _same(rep, expected is not None, expected)
    if args.verify and res.answer:
        rep["verified"] = membership(individualize(g, res.witness), tag)
    return rep


def cmd_color_valence(args):
    g = _load(args.file, "graph").payload
    res = k_color_valence(g, args.k, args.d)
    return _report("color-valence", {"k": args.k, "d": args.d}, res.answer, res.witness, res.work)


def cmd_nk_discrete(args):
    g = _load(args.file, "graph").payload
    res = nk_discrete_solve(g, args.k)
    rep = _report("nk-discrete", {"k": args.k}, res.answer, res.witness, res.work,
                  note="witness is the set left non-individualized")
    if args.oracle:
        rep = _same(rep, nk_discrete_brute(g, args.k) is not None)
    if args.verify and res.answer:
        keep = set(res.witness)
        rep["verified"] = stable_partition(g, [v for v in range(g.n) if v not in keep]).is_discrete()
    return rep


def cmd_kernelize(args):
    g = _load(args.file, "graph").payload
    ker = kernelize_nk_discrete(g, args.k)
    rep = _report("kernelize", {"k": args.k}, True, ker.solution, ker.graph.n,
                  kernel_k=ker.k, kernel_size=ker.graph.n, trivial=ker.trivial,
                  kernel=write_instance(InstanceFile("graph", ker.graph)))
    if args.oracle:
        rep["oracle_agreement"] = ((nk_discrete_brute(ker.graph, ker.k) is not None)
                                   == (nk_discrete_brute(g, args.k) is not None))
    return rep


def cmd_solve_3bounded(args):
    g = _load(args.file, "graph").payload
    tag = _tag(args)
    res = solve_3bounded(g, tag)
    rep = _report("solve-3bounded", {"class": str(tag)}, True, res.witness, res.work,
                  minimum=res.details.get("minimum"))
    if args.oracle:
        rep["oracle_agreement"] = len(minimum_brute(g, tag)) == res.details.get("minimum")
    if args.verify:
        rep["verified"] = membership(individualize(g, res.witness), tag)
    return rep


def cmd_autgroup(args):
    g = _load(args.file, "graph").payload
    aut = automorphism_group(g)
    rep = _report("autgroup", {}, True, None, aut.nodes, order=aut.order(),
                  generators=[p.cycle_string() for p in aut.generators],
                  orbits=aut.group.orbits())
    if args.oracle:
        rep["oracle_agreement"] = len(automorphism_group_brute(g)) == aut.order()
    return rep


# generators -----------------------------------------------------------

def _emit(args, inst: InstanceFile, problem: str, params: dict, **extra) -> dict:
    text = write_instance(inst)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    manifest = {"instance": args.out or "-", "construction": problem,
                "parameters": params, "label": inst.label,
                "oracle": extra.pop("oracle_used", None)}
    if args.manifest:
        with open(args.manifest, "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2)
    return _report(problem, params, True, None, 0, instance=None if args.out else text,
                   manifest=manifest, **extra)


def cmd_gen_cfi(args):
    b = GraphBuilder()
    pairs = [b.pair() for _ in range(3)]
    cfi_gadget(b, *pairs)
    g = b.build()
    return _emit(args, InstanceFile("graph", g, "cfi gadget; pairs (0,1) (2,3) (4,5)"),
                 "gen-cfi", {})


def _circuit(args, rng) -> MonotoneCircuit:
    if args.circuit:
        return _load(args.circuit, "circuit").payload
    return random_circuit(rng, args.inputs, args.gates)


def cmd_gen_circuit(args):
    rng = random.Random(args.seed)
    c = _circuit(args, rng)
    cg = circuit_to_graph(c, args.variant)
    label = None
    oracle = None
    if args.k is not None:
        sat = weighted_sat_brute(c, args.k)
        label = f"k={args.k} weight_k_satisfiable={'yes' if sat else 'no'}"
        oracle = "weighted_sat_brute"
    params = {"variant": args.variant, "seed": args.seed, "k": args.k,
              "circuit": [list(gate) for gate in c.gates], "output": c.output,
              "inputs": c.n_inputs}
    return _emit(args, InstanceFile("graph", cg.graph, label), "gen-circuit", params,
                 input_pairs=[list(p) for p in cg.inputs], oracle_used=oracle)


def _formula(args, rng) -> CnfFormula:
    if args.cnf:
        return _load(args.cnf, "cnf").payload
    lits = [v for x in range(1, args.vars + 1) for v in (x, -x)]
    clauses = []
    for _ in range(args.clauses):
        width = rng.randint(1, min(3, args.vars))
        clauses.append(tuple(rng.sample(lits, width)))
    return CnfFormula(args.vars, tuple(clauses))


def _sat_instance(args):
    rng = random.Random(args.seed)
    f = normalize_occurrences(_formula(args, rng))
    k = args.k
    size = args.n.bit_length() - 1
    if k is None:
        k = max(1, -(-f.num_vars // max(size, 1)))
    inst = mini3sat_to_group(f, k, args.n)
    cover = len(min_set_cover(inst.cover))
    label = f"k={k} satisfiable={'yes' if f.satisfiable() else 'no'} min_set_cover={cover}"
    params = {"seed": args.seed, "k": k, "n": args.n, "variables": f.num_vars,
              "clauses": [list(c) for c in f.clauses]}
    return inst, label, params


def cmd_gen_sat_group(args):
    inst, label, params = _sat_instance(args)
    return _emit(args, InstanceFile("group", inst.group, label), "gen-sat-group", params,
                 omega=len(inst.points), oracle_used="min_set_cover + truth table")


def cmd_gen_rigid_graph(args):
    inst, label, params = _sat_instance(args)
    rg = group_to_rigid_graph(inst)
    return _emit(args, InstanceFile("graph", rg.graph, label), "gen-rigid-graph", params,
                 omega=len(inst.points), oracle_used="min_set_cover + truth table")


def cmd_gen_domset(args):
    rng = random.Random(args.seed)
    if args.graph:
        x = _load(args.graph, "graph").payload
    else:
        edges = [(u, v) for u in range(args.n) for v in range(u + 1, args.n) if rng.random() < args.p]
        x = ColoredGraph.from_edges(args.n, edges)
    red = domset_to_kdiscrete(x, args.k, args.l, args.variant)
    dom = dominating_set_brute(x, args.k)
    label = f"k={red.k} l={args.l} dominating_set={'yes' if dom is not None else 'no'}"
    params = {"seed": args.seed, "k": args.k, "l": args.l, "variant": args.variant,
              "output_k": red.k, "removed": list(red.removed)}
    if red.graph is None:
        return _report("gen-domset", params, red.trivial, None, 0,
                       note="isolated vertices decide the instance; no graph emitted")
    return _emit(args, InstanceFile("graph", red.graph, label), "gen-domset", params,
                 oracle_used="dominating_set_brute")


# parser ---------------------------------------------------------------

def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for generators")
    common.add_argument("--oracle", action="store_true",
                        help="cross-check with a brute-force oracle (exit 3 on mismatch)")
    common.add_argument("--verify", action="store_true", help="re-check the witness")
    common.add_argument("--jobs", type=int, default=_default_jobs(),
                        help=f"worker processes for subset scans (default ${JOBS_ENV} or 1)")

    p = argparse.ArgumentParser(prog="fixref", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, file=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if file:
            sp.add_argument("file", help="instance file, or - for stdin")
        sp.set_defaults(func=func)
        return sp

    def with_class(sp, choices=CLASSES):
        sp.add_argument("--class", dest="cls", required=True, choices=choices)
        sp.add_argument("--l", type=int, help="round bound for discrete-l")

    sp = add("refine", cmd_refine, "color refinement of a graph")
    sp.add_argument("--rounds", type=int)
    with_class(add("classify", cmd_classify, "class membership of a graph"))
    add("min-base", cmd_min_base, "exact minimum base of a group")
    add("greedy-base", cmd_greedy_base, "greedy base of a group")
    add("cobase", cmd_cobase, "k points whose complement is a base").add_argument(
        "--k", type=int, required=True)
    add("min-fixing-set", cmd_min_fixing_set, "minimum fixing set of a graph")
    add("cofix", cmd_cofix, "k vertices whose complement is a fixing set").add_argument(
        "--k", type=int, required=True)
    sp = add("k-search", cmd_k_search, "k vertices whose individualization reaches a class")
    with_class(sp)
    sp.add_argument("--k", type=int, required=True)
    sp = add("color-valence", cmd_color_valence, "k vertices bounding the color valence by d")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    add("nk-discrete", cmd_nk_discrete, "leave k vertices out and still reach discrete").add_argument(
        "--k", type=int, required=True)
    add("kernelize", cmd_kernelize, "small equivalent instance for nk-discrete").add_argument(
        "--k", type=int, required=True)
    with_class(add("solve-3bounded", cmd_solve_3bounded, "minimum set for classes of size <= 3"),
               ("discrete", "amenable", "compact", "refinable", "rigid"))
    add("autgroup", cmd_autgroup, "automorphism group of a graph")

    def gen(name, func, help_text):
        sp = add(name, func, help_text, file=False)
        sp.add_argument("--out", help="write the instance here instead of stdout")
        sp.add_argument("--manifest", help="write a JSON manifest here")
        return sp

    gen("gen-cfi", cmd_gen_cfi, "standalone CFI gadget")
    sp = gen("gen-circuit", cmd_gen_circuit, "graph from a monotone circuit")
    sp.add_argument("--variant", choices=("XC", "XC_prime", "XC_dprime"), default="XC_dprime")
    sp.add_argument("--circuit", help="circuit file; random circuit otherwise")
    sp.add_argument("--inputs", type=int, default=3)
    sp.add_argument("--gates", type=int, default=4)
    sp.add_argument("--k", type=int, help="weight for the ground-truth label")
    for name, func, text in (("gen-sat-group", cmd_gen_sat_group, "group from a small CNF"),
                             ("gen-rigid-graph", cmd_gen_rigid_graph, "rigid graph from a small CNF")):
        sp = gen(name, func, text)
        sp.add_argument("--cnf", help="DIMACS file; random formula otherwise")
        sp.add_argument("--vars", type=int, default=3)
        sp.add_argument("--clauses", type=int, default=2)
        sp.add_argument("--k", type=int, help="number of variable blocks")
        sp.add_argument("--n", type=int, default=4, help="blocks hold floor(log2 n) variables")
    sp = gen("gen-domset", cmd_gen_domset, "discreteness instance from a dominating set instance")
    sp.add_argument("--graph", help="input graph file; random graph otherwise")
    sp.add_argument("--n", type=int, default=5)
    sp.add_argument("--p", type=float, default=0.4)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--variant", choices=("colored", "uncolored"), default="colored")
    return p


def _print_text(rep: dict) -> None:
    if rep.get("instance"):
        sys.stdout.write(rep["instance"])
        return
    ans = rep["answer"]
    print(f"answer: {'yes' if ans is True else 'no' if ans is False else ans}")
    if rep["witness"] is not None:
        print("witness: " + " ".join(map(str, rep["witness"])))
    for key, value in rep.items():
        if key in ("problem", "answer", "witness", "instance", "manifest"):
            continue
        if key == "kernel":
            print("kernel:")
            sys.stdout.write(value)
            continue
        print(f"{key}: {value}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = args.func(args)
    except (FormatError, UsageError, GraphError, PermError, ReductionError,
            NotBoundedError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(rep, indent=2, default=str))
    else:
        _print_text(rep)
    if rep.get("oracle_agreement") is False or rep.get("verified") is False:
        return 3
    return 1 if rep["answer"] is False else 0


if __name__ == "__main__":
    sys.exit(main())
