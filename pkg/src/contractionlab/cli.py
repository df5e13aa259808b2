"""Command-line dispatcher.

Exit codes: 0 = yes / pass, 1 = no / fail, 2 = usage error, 3 = size guard
exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .classes import CLASS_IDS, recognize, witness_partition
from .errors import GuardExceeded, InvariantError, ParseError
from .graphs import Graph
from .harness import DEFAULT_CHAIN_CLASSES, core_cross_matchings, random_graph, run_chain
from .problems import (
    CliqueContractionInstance,
    CrossMatchingInstance,
    FContractionInstance,
    HadwigerInstance,
    ListInstance,
    StructuredInstance,
    ThreeColoringInstance,
)
from .reductions import (
    FAMILY_CLASSES,
    FAMILY_OF_CLASS,
    cc_to_hadwiger,
    cross_matching_to_structured,
    lsh_to_lsi_stream,
    lsi_to_cross_matching,
    reduce_3col_to_lsh,
    structured_to_class,
)
from .solvers import (
    PARTITION_GUARD,
    solve_3coloring,
    solve_clique_contraction,
    solve_cross_matching,
    solve_f_contraction,
    solve_hadwiger,
    solve_list_embedding,
    solve_structured,
)
from .textio import parse_graph_text, parse_instance, serialize_graph_text, serialize_instance

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _read(path: str) -> str:
    return Path(path).read_text()


def _write(path: str, text: str):
    Path(path).write_text(text)


def _emit(text: str, out: Optional[str]):
    if out:
        _write(out, text)
    else:
        sys.stdout.write(text)


def _edge_lines(edges) -> List[str]:
    return [f"e {u + 1} {v + 1}" for u, v in sorted(edges)]


def cmd_gen(args) -> int:
    g = random_graph(args.n, args.max_degree, args.seed)
    _emit(serialize_graph_text(g), args.output)
    return EXIT_YES


def cmd_recognize(args) -> int:
    g = parse_graph_text(_read(args.graph_file))
    member = recognize(args.class_id, g)
    print("yes" if member else "no")
    if member:
        parts = witness_partition(args.class_id, g)
        if parts is not None:
            first, second = parts
            names = ("a", "b") if args.class_id == "two-cliques" else ("i", "k")
            print(f"part {names[0]} " + " ".join(str(v + 1) for v in first))
            print(f"part {names[1]} " + " ".join(str(v + 1) for v in second))
    return EXIT_YES if member else EXIT_NO


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance_file))
    problem = args.problem or inst.problem
    if problem != inst.problem:
        raise InvariantError(f"instance file holds a {inst.problem} instance, not {problem}")
    guard = args.guard if args.guard else PARTITION_GUARD

    if isinstance(inst, ThreeColoringInstance):
        witness = solve_3coloring(inst.g)
        if witness:
            print("yes")
            for v in range(inst.g.n):
                print(f"col {v + 1} {witness.color_of[v]}")
            return EXIT_YES
    elif isinstance(inst, ListInstance):
        assignment = solve_list_embedding(inst)
        if assignment:
            print("yes")
            for u, v in enumerate(assignment.mapping):
                print(f"map {u + 1} {v + 1}")
            return EXIT_YES
    elif isinstance(inst, CrossMatchingInstance):
        f = solve_cross_matching(inst)
        if f is not None:
            print("yes")
            print("\n".join(_edge_lines(f)))
            return EXIT_YES
    elif isinstance(inst, StructuredInstance):
        f = solve_structured(inst)
        if f is not None:
            print("yes")
            print("\n".join(_edge_lines(f)))
            return EXIT_YES
    elif isinstance(inst, CliqueContractionInstance):
        t = inst.t if args.budget is None else args.budget
        f = solve_clique_contraction(inst.g, t, guard=guard)
        if f is not None:
            print("yes")
            if f:
                print("\n".join(_edge_lines(f)))
            return EXIT_YES
    elif isinstance(inst, HadwigerInstance):
        h = solve_hadwiger(inst.g, guard=guard)
        print("yes" if h >= inst.h else "no")
        print(f"hadwiger {h}")
        return EXIT_YES if h >= inst.h else EXIT_NO
    elif isinstance(inst, FContractionInstance):
        if args.class_id:
            inst = inst.with_class(args.class_id)
        if args.budget is not None:
            inst = FContractionInstance(inst.g, args.budget, inst.class_id).validate()
        f = solve_f_contraction(inst, guard=guard)
        if f is not None:
            print("yes")
            if f:
                print("\n".join(_edge_lines(f)))
            return EXIT_YES
    else:
        raise InvariantError(f"no solver for {type(inst).__name__}")
    print("no")
    return EXIT_NO


_HOPS = ("3col", "lsh", "lsi", "xmatch", "structured", "hadwiger", "fcon")


def cmd_reduce(args) -> int:
    if args.chain:
        return _reduce_chain(args)
    if not (args.source and args.target):
        raise InvariantError("reduce needs --from and --to (or --chain)")
    inst = parse_instance(_read(args.input))
    hop = (args.source, args.target)
    if hop == ("3col", "lsh"):
        out, _ = reduce_3col_to_lsh(inst.g, r=args.r)
        _write(args.output, serialize_instance(out))
    elif hop == ("lsh", "lsi"):
        outdir = Path(args.output)
        outdir.mkdir(parents=True, exist_ok=True)
        count = 0
        for i, lsi in enumerate(lsh_to_lsi_stream(inst, prune=not args.no_prune)):
            _write(str(outdir / f"lsi_{i:05d}.txt"), serialize_instance(lsi))
            count += 1
        print(f"instances {count}")
    elif hop == ("lsi", "xmatch"):
        _write(args.output, serialize_instance(lsi_to_cross_matching(inst)))
    elif hop == ("xmatch", "structured"):
        _write(args.output, serialize_instance(cross_matching_to_structured(inst)))
    elif hop in (("cliquecon", "hadwiger"), ("structured", "hadwiger")):
        if isinstance(inst, StructuredInstance):
            inst = CliqueContractionInstance(inst.g, inst.n)
        red = cc_to_hadwiger(inst.g, inst.t)
        if red.immediate_no:
            print("immediate-no")
            return EXIT_NO
        _write(args.output, serialize_instance(red.instance))
    elif hop == ("structured", "fcon"):
        if not args.class_id:
            raise InvariantError("reduce --to fcon needs --class")
        family = FAMILY_OF_CLASS[args.class_id]
        _write(args.output, serialize_instance(structured_to_class(inst, family, args.class_id)))
    else:
        raise InvariantError(f"unsupported reduction {args.source} -> {args.target}")
    return EXIT_YES


def _reduce_chain(args) -> int:
    spec = args.chain
    if ".." not in spec or not spec.startswith("3col"):
        raise InvariantError("chain spec must look like 3col..hadwiger or 3col..fcon")
    terminal = spec.split("..", 1)[1]
    if terminal not in ("hadwiger", "fcon"):
        raise InvariantError("chain terminal must be hadwiger or fcon")
    classes = args.classes.split(",") if args.classes else list(DEFAULT_CHAIN_CLASSES)
    inst = parse_instance(_read(args.input))
    if not isinstance(inst, ThreeColoringInstance):
        raise InvariantError("chains start from a 3-coloring instance (a bare graph file)")
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest: List[str] = []

    def note(hop: str, params: str, g: Graph):
        manifest.append(f"hop={hop} {params} vertices={g.n} edges={g.edge_count()}")

    lsh, _ = reduce_3col_to_lsh(inst.g, r=args.r)
    _write(str(outdir / "lsh.txt"), serialize_instance(lsh))
    note("3col_to_lsh", f"r={args.r}", lsh.h)
    prune = not args.no_prune
    rep = None
    count = 0
    for i, lsi in enumerate(lsh_to_lsi_stream(lsh, prune=prune)):
        _write(str(outdir / f"lsi_{i:05d}.txt"), serialize_instance(lsi))
        xm = lsi_to_cross_matching(lsi)
        _write(str(outdir / f"xmatch_{i:05d}.txt"), serialize_instance(xm))
        if rep is None and solve_cross_matching(xm) is not None:
            rep = xm
        count += 1
        last = xm
    note("lsh_to_lsi_stream", f"prune={prune} instances={count}", lsh.h)
    if count == 0:
        _write(str(outdir / "manifest.txt"), "\n".join(manifest) + "\n")
        print("empty stream")
        return EXIT_NO
    rep = rep if rep is not None else last
    note("lsi_to_cross_matching", "representative", rep.l)
    st = cross_matching_to_structured(rep)
    _write(str(outdir / "structured.txt"), serialize_instance(st))
    note("cross_matching_to_structured", f"n={st.n}", st.g)
    if terminal == "hadwiger":
        red = cc_to_hadwiger(st.g, st.n)
        if red.immediate_no:
            manifest.append("hop=cc_to_hadwiger immediate-no")
        else:
            _write(str(outdir / "hadwiger.txt"), serialize_instance(red.instance))
            note("cc_to_hadwiger", f"h={red.instance.h}", red.instance.g)
    else:
        for c in classes:
            fc = structured_to_class(st, FAMILY_OF_CLASS[c], c)
            _write(str(outdir / f"fcon_{c}.txt"), serialize_instance(fc))
            note("structured_to_class", f"class={c} t={fc.t}", fc.g)
    _write(str(outdir / "manifest.txt"), "\n".join(manifest) + "\n")
    print(f"wrote {len(manifest)} hops to {outdir}")
    return EXIT_YES


def cmd_verify(args) -> int:
    if args.what != "chain":
        raise InvariantError("only 'verify chain' is implemented")
    classes = args.classes.split(",") if args.classes else list(DEFAULT_CHAIN_CLASSES)
    lines: List[str] = []
    all_ok = True
    trial = 0
    sizes = list(range(args.n_min, args.n_max + 1))
    while trial < args.trials:
        n = sizes[trial % len(sizes)]
        seed = args.seed + trial
        g = random_graph(n, args.max_degree, seed)
        report = run_chain(g, terminal=args.terminal, classes=classes, seed=seed)
        lines.extend(report.records())
        ok = not report.divergences
        all_ok = all_ok and ok
        print(f"trial={trial} seed={seed} n={n} verdict={report.verdict}")
        trial += 1
    if args.report:
        _write(args.report, "\n".join(lines) + "\n")
    print("PASS" if all_ok else "FAIL")
    return EXIT_YES if all_ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="contractionlab")
    top.add_argument("--seed", type=int, default=0, help="global seed (gen, verify)")
    top.add_argument("--guard", type=int, default=None, help="max core vertices for exact searches")
    top.add_argument("--format", choices=["text"], default="text")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random connected bounded-degree graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("recognize", help="test membership in a graph class")
    p.add_argument("--class", dest="class_id", choices=CLASS_IDS, required=True)
    p.add_argument("graph_file")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("solve", help="solve one instance file exactly")
    p.add_argument(
        "--problem",
        choices=["3col", "lsh", "lsi", "xmatch", "structured", "cliquecon", "hadwiger", "fcon"],
    )
    p.add_argument("--class", dest="class_id", choices=CLASS_IDS)
    p.add_argument("--budget", type=int)
    p.add_argument("instance_file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="apply one reduction or a whole chain")
    p.add_argument("--from", dest="source", choices=_HOPS)
    p.add_argument("--to", dest="target", choices=_HOPS)
    p.add_argument("--chain", help="e.g. 3col..hadwiger or 3col..fcon")
    p.add_argument("--class", dest="class_id", choices=CLASS_IDS)
    p.add_argument("--classes", help="comma-separated class ids for chain mode")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="run seeded end-to-end equivalence trials")
    p.add_argument("what", choices=["chain"])
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--terminal", choices=["hadwiger", "fcon", "all"], default="all")
    p.add_argument("--classes")
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)
    return top


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InvariantError, ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
