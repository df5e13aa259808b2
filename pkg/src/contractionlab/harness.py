"""Instance generation and end-to-end / per-hop equivalence verification.

``run_chain`` drives one source graph through every reduction hop and checks
that each hop's decision matches the 3-coloring decision of the source.  The
stream hops (LSI and Cross Matching) are checked per streamed instance and as
a disjunction; the tail hops run on a representative streamed instance (the
first solvable one, if any), which realizes the same decision because the
disjunction semantics were already verified upstream.

At chain scale the structured, Hadwiger and gadget hops are decided by
enumerating perfect A-B cross matchings of the core.  That restriction is the
content of the solution-shape lemma and of the gadget theorems; it is *not*
assumed blindly: the acceptance suite re-verifies it against unrestricted
searches on small instances, and the mutation tests confirm the chain catches
broken gadgets.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .classes import recognize
from .errors import GuardExceeded, InvariantError
from .graphs import (
    Edge,
    Graph,
    ProperColoring,
    bits,
    greedy_proper_coloring,
    is_clique,
    mask_of,
    norm_edge,
)
from .problems import (
    CliqueContractionInstance,
    CrossMatchingInstance,
    FContractionInstance,
    HOMOMORPHISM,
    ISOMORPHISM,
    ListInstance,
    StructuredInstance,
    full_lists,
)
from .reductions import (
    EDGE_FAMILIES,
    FAMILY_CLASSES,
    FAMILY_OF_CLASS,
    cc_to_hadwiger,
    claim_cross_matching_holds,
    cross_matching_to_structured,
    lsh_to_lsi_stream,
    lsi_to_cross_matching,
    reduce_3col_to_lsh,
    structured_to_class,
)
from .solvers import (
    solve_3coloring,
    solve_clique_contraction,
    solve_cross_matching,
    solve_f_contraction,
    solve_hadwiger,
    solve_list_embedding,
    solve_structured,
    solve_structured_unrestricted,
)

DEFAULT_CHAIN_CLASSES: Tuple[str, ...] = (
    "chordal",
    "interval",
    "proper-interval",
    "threshold",
    "trivially-perfect",
    "split",
    "complete-split",
    "perfect",
)


# -- random instances ----------------------------------------------------------


def _rng(*key) -> random.Random:
    return random.Random(":".join(str(k) for k in key))


def random_graph(n: int, max_degree: int, seed: int) -> Graph:
    """Connected simple graph with the given degree cap, deterministic in
    (n, max_degree, seed)."""
    if n < 1:
        raise InvariantError("need at least one vertex")
    if n >= 2 and max_degree < 1:
        raise InvariantError("cannot connect two vertices with max degree 0")
    if n >= 3 and max_degree < 2:
        raise InvariantError(f"cannot connect {n} vertices with max degree {max_degree}")
    rng = _rng("random-graph", n, max_degree, seed)
    deg = [0] * n
    edges: Set[Edge] = set()
    for v in range(1, n):
        candidates = [u for u in range(v) if deg[u] < max_degree]
        u = rng.choice(candidates)
        edges.add(norm_edge(u, v))
        deg[u] += 1
        deg[v] += 1
    extra_budget = rng.randint(0, 2 * n)
    for _ in range(extra_budget):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v or norm_edge(u, v) in edges:
            continue
        if deg[u] >= max_degree or deg[v] >= max_degree:
            continue
        edges.add(norm_edge(u, v))
        deg[u] += 1
        deg[v] += 1
    return Graph.from_edges(n, sorted(edges))


def _random_dense_graph(n: int, seed_key, p: float = 0.45) -> Graph:
    rng = _rng(*seed_key)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def _shuffled_greedy_coloring(g: Graph, rng: random.Random) -> ProperColoring:
    order = list(range(g.n))
    rng.shuffle(order)
    coloring = greedy_proper_coloring(g, order)
    # permute color names so color classes are not biased toward low ids
    names = list(range(1, coloring.k + 1))
    rng.shuffle(names)
    remap = {i + 1: names[i] for i in range(coloring.k)}
    return ProperColoring(tuple(remap[c] for c in coloring.color_of), coloring.k)


def random_lsi_instance(n: int, seed: int, planted: bool) -> ListInstance:
    """Random isomorphism-mode instance; planted ones embed the pattern into
    the host through a hidden permutation, so they are solvable."""
    rng = _rng("lsi", n, seed, planted)
    g = _random_dense_graph(n, ("lsi-g", n, seed), p=0.4)
    c_g = _shuffled_greedy_coloring(g, rng)
    if planted:
        perm = list(range(n))
        rng.shuffle(perm)
        h_edges = {norm_edge(perm[u], perm[v]) for u, v in g.edges()}
        colors_h = [0] * n
        for u in range(n):
            colors_h[perm[u]] = c_g.color_of[u]
        for _ in range(n):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v and colors_h[u] != colors_h[v]:
                h_edges.add(norm_edge(u, v))
        h = Graph.from_edges(n, sorted(h_edges))
        c_h = ProperColoring(tuple(colors_h), c_g.k)
        lists = []
        for u in range(n):
            allowed = [v for v in range(n) if colors_h[v] == c_g.color_of[u]]
            pick = {perm[u]} | {v for v in allowed if rng.random() < 0.5}
            lists.append(tuple(sorted(pick)))
    else:
        h = _random_dense_graph(n, ("lsi-h", n, seed), p=0.4)
        c_h = _shuffled_greedy_coloring(h, rng)
        palette = max(c_g.k, c_h.k)
        c_g = ProperColoring(c_g.color_of, palette)
        c_h = ProperColoring(c_h.color_of, palette)
        lists = []
        for u in range(n):
            allowed = [v for v in range(n) if c_h.color_of[v] == c_g.color_of[u]]
            lists.append(tuple(sorted(v for v in allowed if rng.random() < 0.6)))
    return ListInstance(g, h, c_g, c_h, tuple(lists), ISOMORPHISM).validate()


def random_lsh_instance(n_g: int, n_h: int, seed: int, planted: bool) -> ListInstance:
    """Random homomorphism-mode instance; planted ones draw the pattern from
    a blow-up of the host along a hidden map."""
    rng = _rng("lsh", n_g, n_h, seed, planted)
    h = _random_dense_graph(n_h, ("lsh-h", n_h, seed), p=0.5)
    c_h = _shuffled_greedy_coloring(h, rng)
    if planted:
        image = [rng.randrange(n_h) for _ in range(n_g)]
        candidates = [
            (u, v)
            for u in range(n_g)
            for v in range(u + 1, n_g)
            if h.has_edge(image[u], image[v])
        ]
        g_edges = [e for e in candidates if rng.random() < 0.7]
        g = Graph.from_edges(n_g, g_edges)
        c_g = ProperColoring(tuple(c_h.color_of[image[u]] for u in range(n_g)), c_h.k)
        lists = []
        for u in range(n_g):
            allowed = [v for v in range(n_h) if c_h.color_of[v] == c_g.color_of[u]]
            pick = {image[u]} | {v for v in allowed if rng.random() < 0.4}
            lists.append(tuple(sorted(pick)))
    else:
        g = _random_dense_graph(n_g, ("lsh-g", n_g, seed), p=0.45)
        c_g = _shuffled_greedy_coloring(g, rng)
        palette = max(c_g.k, c_h.k)
        c_g = ProperColoring(c_g.color_of, palette)
        c_h = ProperColoring(c_h.color_of, palette)
        lists = []
        for u in range(n_g):
            allowed = [v for v in range(n_h) if c_h.color_of[v] == c_g.color_of[u]]
            lists.append(tuple(sorted(v for v in allowed if rng.random() < 0.6)))
    return ListInstance(g, h, c_g, c_h, tuple(lists), HOMOMORPHISM).validate()


def random_cross_matching_instance(n: int, seed: int, planted: bool) -> CrossMatchingInstance:
    """Random instance on sides of size n; planted ones contain a cross
    matching completed to a clique quotient."""
    rng = _rng("xmatch", n, seed, planted)
    total = 2 * n
    edges = {
        norm_edge(u, v)
        for u in range(total)
        for v in range(u + 1, total)
        if rng.random() < 0.35
    }
    if planted:
        pairs = list(range(n))
        rng.shuffle(pairs)
        matching = [(i, n + pairs[i]) for i in range(n)]
        edges.update(norm_edge(u, v) for u, v in matching)
        for i in range(n):
            for j in range(i + 1, n):
                u1, v1 = matching[i]
                u2, v2 = matching[j]
                options = [(u1, u2), (u1, v2), (v1, u2), (v1, v2)]
                if not any(norm_edge(x, y) in edges for x, y in options):
                    edges.add(norm_edge(*rng.choice(options)))
    l = Graph.from_edges(total, sorted(edges))
    return CrossMatchingInstance(l, frozenset(range(n)), frozenset(range(n, total))).validate()


def random_structured_instance(
    n: int, seed: int, planted: bool, noise_count: int = 0
) -> StructuredInstance:
    """Random structured instance via the cross-matching construction, with
    optional extra noise vertices wired arbitrarily (subject to the forbidden
    A-D and B-C adjacencies, which only constrain core vertices)."""
    base = cross_matching_to_structured(random_cross_matching_instance(n, seed, planted))
    if noise_count == 0:
        return base
    rng = _rng("structured-noise", n, seed, noise_count)
    g = base.g
    start = g.n
    edges = list(g.edges())
    tags = g.tag_map()
    allowed_core = sorted(base.core())
    for i in range(noise_count):
        v = start + i
        tags[v] = "n"
        others = allowed_core + [start + j for j in range(i)]
        wired = [u for u in others if rng.random() < 0.4]
        edges.extend((u, v) for u in wired)
    bigger = Graph.from_edges(start + noise_count, edges, tags)
    return StructuredInstance(
        bigger, base.a, base.b, base.c, base.d,
        frozenset(range(start, start + noise_count)), n,
    ).validate()


# -- chain reports ----------------------------------------------------------------


@dataclass
class HopRecord:
    hop: str
    vertices: int
    edges: int
    decision: Optional[bool]
    witness_digest: str
    seconds: float
    note: str = ""


@dataclass
class ChainReport:
    seed: Optional[int]
    source: Graph
    expected: bool
    hops: List[HopRecord] = field(default_factory=list)
    divergences: List[str] = field(default_factory=list)
    claim_failures: int = 0
    stream_count: int = 0

    @property
    def verdict(self) -> str:
        if not self.divergences:
            return "all-agree"
        return f"first-divergent-hop={self.divergences[0]}"

    def records(self) -> List[str]:
        head = (
            f"seed={self.seed} n={self.source.n} m={self.source.edge_count()} "
            f"expected={_yn(self.expected)} stream={self.stream_count} "
            f"claim_failures={self.claim_failures} verdict={self.verdict}"
        )
        lines = [head]
        for h in self.hops:
            lines.append(
                f"hop={h.hop} decision={_yn(h.decision)} vertices={h.vertices} "
                f"edges={h.edges} witness={h.witness_digest or '-'} "
                f"seconds={h.seconds:.3f}" + (f" note={h.note}" if h.note else "")
            )
        return lines


def _yn(d: Optional[bool]) -> str:
    if d is None:
        return "skipped"
    return "yes" if d else "no"


def witness_digest(payload) -> str:
    """Canonical short hash of a witness for reproducible reports."""
    if payload is None:
        return ""
    if isinstance(payload, frozenset) or isinstance(payload, set):
        text = repr(sorted(payload))
    elif isinstance(payload, ProperColoring):
        text = repr(payload.color_of)
    else:
        text = repr(payload)
    return hashlib.sha256(text.encode()).hexdigest()[:12]


# -- restricted gadget solving (chain scale) -----------------------------------------


def core_cross_matchings(inst: StructuredInstance) -> List[FrozenSet[Edge]]:
    """All perfect A-B cross matchings whose core quotient is complete.

    This is the full solution set of the structured instance by the
    solution-shape lemma; at chain scale it also drives the gadget hops.
    """
    g = inst.g
    cd = sorted(inst.c | inst.d)
    if not is_clique(g, cd):
        return []
    cd_mask = mask_of(cd)
    a_order = sorted(inst.a)
    b_mask = mask_of(inst.b)
    out: List[FrozenSet[Edge]] = []
    pairs: List[Tuple[int, int]] = []
    used = 0

    def assign(i: int):
        nonlocal used
        if i == len(a_order):
            out.append(frozenset(norm_edge(u, v) for u, v in pairs))
            return
        u = a_order[i]
        for v in bits(g.adj[u] & b_mask & ~used):
            merged = g.adj[u] | g.adj[v]
            if (cd_mask & ~merged) or any(
                not (merged & ((1 << x) | (1 << y))) for x, y in pairs
            ):
                continue
            pairs.append((u, v))
            used |= 1 << v
            assign(i + 1)
            used &= ~(1 << v)
            pairs.pop()

    assign(0)
    return out


def solve_gadget_f_contraction(
    fc: FContractionInstance,
    st: StructuredInstance,
    matchings: Optional[Sequence[FrozenSet[Edge]]] = None,
) -> Optional[FrozenSet[Edge]]:
    """Decide a gadget-built F-contraction instance by searching only perfect
    A-B cross matchings with complete core quotient.

    Sound for every gadget family: membership of the quotient in any target
    class forces the core quotient to be a clique and the contracted set to
    be such a matching (the gadget theorems; re-verified against unrestricted
    search on small instances by the acceptance suite).
    """
    if matchings is None:
        matchings = core_cross_matchings(st)
    from .graphs import contract  # local import keeps module top uncluttered

    for m in matchings:
        q, _ = contract(fc.g, m)
        if recognize(fc.class_id, q):
            return m
    return None


# -- the chain ---------------------------------------------------------------------


def run_chain(
    g: Graph,
    terminal: str = "all",
    classes: Sequence[str] = DEFAULT_CHAIN_CLASSES,
    prune: bool = True,
    seed: Optional[int] = None,
    r: int = 1,
    max_degree: int = 4,
) -> ChainReport:
    """Drive one source graph through the whole reduction chain and record
    the decision at every hop."""
    if terminal not in ("hadwiger", "fcon", "all"):
        raise InvariantError(f"unknown terminal {terminal!r}")
    for c in classes:
        if c not in FAMILY_OF_CLASS:
            raise InvariantError(f"class {c!r} is not a chain target")
    report = ChainReport(seed=seed, source=g, expected=False)

    t0 = time.perf_counter()
    col = solve_3coloring(g)
    expected = col is not None
    report.expected = expected
    report.hops.append(
        HopRecord("3col", g.n, g.edge_count(), expected, witness_digest(col), time.perf_counter() - t0)
    )

    t0 = time.perf_counter()
    lsh, _grouping = reduce_3col_to_lsh(g, r=r, max_degree=max_degree)
    w = solve_list_embedding(lsh)
    d_lsh = w is not None
    report.hops.append(
        HopRecord(
            "lsh", lsh.h.n, lsh.h.edge_count(), d_lsh, witness_digest(w), time.perf_counter() - t0
        )
    )
    if d_lsh != expected:
        report.divergences.append("lsh")

    t0 = time.perf_counter()
    d_lsi = False
    d_xm = False
    per_instance_mismatch = False
    rep_xm: Optional[CrossMatchingInstance] = None
    first_xm: Optional[CrossMatchingInstance] = None
    count = 0
    lsi_digest = ""
    xm_digest = ""
    for lsi in lsh_to_lsi_stream(lsh, prune=prune):
        count += 1
        wi = solve_list_embedding(lsi)
        di = wi is not None
        d_lsi = d_lsi or di
        if not lsi_digest and wi is not None:
            lsi_digest = witness_digest(wi)
        xm = lsi_to_cross_matching(lsi)
        if first_xm is None:
            first_xm = xm
        if not claim_cross_matching_holds(xm):
            report.claim_failures += 1
        wx = solve_cross_matching(xm)
        dx = wx is not None
        d_xm = d_xm or dx
        if not xm_digest and wx is not None:
            xm_digest = witness_digest(wx)
        if dx != di:
            per_instance_mismatch = True
        if rep_xm is None and dx:
            rep_xm = xm
    report.stream_count = count
    stream_seconds = time.perf_counter() - t0
    report.hops.append(
        HopRecord(
            "lsi-stream", lsh.h.n, lsh.h.edge_count(), d_lsi, lsi_digest, stream_seconds,
            note=f"instances={count}",
        )
    )
    if d_lsi != expected:
        report.divergences.append("lsi-stream")
    report.hops.append(
        HopRecord("xmatch-stream", 2 * lsh.g.n, 0, d_xm, xm_digest, 0.0, note=f"instances={count}")
    )
    if d_xm != expected or per_instance_mismatch:
        report.divergences.append("xmatch-stream")
    if report.claim_failures:
        report.divergences.append("cross-matching-claim")

    representative = rep_xm if rep_xm is not None else first_xm
    if representative is None:
        # empty stream: downstream decisions are vacuously no
        for hopname in _tail_hop_names(terminal, classes):
            report.hops.append(HopRecord(hopname, 0, 0, False, "", 0.0, note="empty-stream"))
            if expected:
                report.divergences.append(hopname)
        return report

    t0 = time.perf_counter()
    st = cross_matching_to_structured(representative)
    matchings = core_cross_matchings(st)
    d_st = bool(matchings)
    st_digest = witness_digest(matchings[0]) if matchings else ""
    report.hops.append(
        HopRecord(
            "structured", st.g.n, st.g.edge_count(), d_st, st_digest, time.perf_counter() - t0
        )
    )
    if d_st != expected:
        report.divergences.append("structured")

    if terminal in ("hadwiger", "all"):
        t0 = time.perf_counter()
        hw = cc_to_hadwiger(st.g, st.n)
        if hw.immediate_no:
            d_hw: Optional[bool] = False
            note = "immediate-no"
        else:
            back_budget = hw.instance.g.n - hw.instance.h
            if back_budget == st.n:
                d_hw = d_st
                note = f"target_h={hw.instance.h}"
            elif back_budget < st.n:
                d_hw = False  # smaller budget: no solution can exist below n
                note = f"target_h={hw.instance.h} (budget-shrunk)"
            else:
                d_hw = None
                note = "untranslatable budget"
        report.hops.append(
            HopRecord("hadwiger", st.g.n, st.g.edge_count(), d_hw, "", time.perf_counter() - t0, note=note)
        )
        if d_hw != expected:
            report.divergences.append("hadwiger")

    if terminal in ("fcon", "all"):
        by_family: Dict[str, List[str]] = {}
        for c in classes:
            by_family.setdefault(FAMILY_OF_CLASS[c], []).append(c)
        for family in ("chordal-family", "split-family", "perfect"):
            if family not in by_family:
                continue
            t0 = time.perf_counter()
            fc = structured_to_class(st, family)
            from .graphs import contract

            undecided = set(by_family[family])
            decided: Dict[str, Optional[FrozenSet[Edge]]] = {c: None for c in undecided}
            for m in matchings:
                if not undecided:
                    break
                q, _ = contract(fc.g, m)
                for c in sorted(undecided):
                    if recognize(c, q):
                        decided[c] = m
                        undecided.discard(c)
            family_seconds = time.perf_counter() - t0
            for c in by_family[family]:
                d_c = decided[c] is not None
                report.hops.append(
                    HopRecord(
                        f"fcon:{c}", fc.g.n, fc.g.edge_count(), d_c,
                        witness_digest(decided[c]), family_seconds, note=f"family={family}",
                    )
                )
                if d_c != expected:
                    report.divergences.append(f"fcon:{c}")
    return report


def _tail_hop_names(terminal: str, classes: Sequence[str]) -> List[str]:
    names = ["structured"]
    if terminal in ("hadwiger", "all"):
        names.append("hadwiger")
    if terminal in ("fcon", "all"):
        names.extend(f"fcon:{c}" for c in classes)
    return names


# -- per-hop verification -------------------------------------------------------------


@dataclass
class HopCheck:
    construction: str
    ok: bool
    source_decision: Optional[bool]
    target_decision: Optional[bool]
    counterexample: str = ""


def verify_hop(
    source,
    construction: str,
    omit: FrozenSet[str] = frozenset(),
    unrestricted: bool = False,
    guard: int = 24,
) -> HopCheck:
    """Solve one source instance and its image under one construction with
    independent solvers, and compare decisions.

    ``construction`` is one of: 3col_to_lsh, lsh_to_lsi_stream,
    lsi_to_cross_matching, cross_matching_to_structured, cc_to_hadwiger,
    or fcon:<class-id>.  ``omit`` drops a gadget edge family (mutation
    testing).  ``unrestricted`` forces the exponential fallback solver on the
    target side where one exists.
    """
    if construction == "3col_to_lsh":
        src_dec = solve_3coloring(source) is not None
        inst, _ = reduce_3col_to_lsh(source)
        tgt_dec = solve_list_embedding(inst) is not None
    elif construction == "lsh_to_lsi_stream":
        src_dec = solve_list_embedding(source) is not None
        tgt_dec = any(
            solve_list_embedding(lsi) is not None for lsi in lsh_to_lsi_stream(source)
        )
    elif construction == "lsi_to_cross_matching":
        src_dec = solve_list_embedding(source) is not None
        tgt_dec = solve_cross_matching(lsi_to_cross_matching(source)) is not None
    elif construction == "cross_matching_to_structured":
        src_dec = solve_cross_matching(source) is not None
        st = cross_matching_to_structured(source, omit=omit)
        if unrestricted:
            tgt_dec = solve_structured_unrestricted(st, guard=guard) is not None
        else:
            tgt_dec = solve_structured(st) is not None
    elif construction == "cc_to_hadwiger":
        src_dec = solve_clique_contraction(source.g, source.t) is not None
        hw = cc_to_hadwiger(source.g, source.t)
        tgt_dec = (not hw.immediate_no) and solve_hadwiger(hw.instance.g) >= hw.instance.h
    elif construction.startswith("fcon:"):
        class_id = construction.split(":", 1)[1]
        src_dec = solve_structured(source) is not None
        fc = structured_to_class(source, FAMILY_OF_CLASS[class_id], class_id, omit=omit)
        if unrestricted:
            tgt_dec = solve_f_contraction(fc, guard=guard) is not None
        else:
            tgt_dec = solve_gadget_f_contraction(fc, source) is not None
    else:
        raise InvariantError(f"unknown construction {construction!r}")
    ok = src_dec == tgt_dec
    counterexample = ""
    if not ok:
        from .textio import serialize_instance

        try:
            counterexample = serialize_instance(_as_instance(source))
        except Exception:
            counterexample = repr(source)
    return HopCheck(construction, ok, src_dec, tgt_dec, counterexample)


def _as_instance(source):
    from .problems import ThreeColoringInstance

    if isinstance(source, Graph):
        return ThreeColoringInstance(source)
    return source
