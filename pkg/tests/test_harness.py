import pytest

from contractionlab.errors import InvariantError
from contractionlab.graphs import complete_graph, cycle_graph
from contractionlab.harness import (
    DEFAULT_CHAIN_CLASSES,
    core_cross_matchings,
    random_cross_matching_instance,
    random_graph,
    random_lsh_instance,
    random_lsi_instance,
    random_structured_instance,
    run_chain,
    verify_hop,
)
from contractionlab.reductions import cross_matching_to_structured
from contractionlab.solvers import solve_structured

SOUND_CLASSES = tuple(c for c in DEFAULT_CHAIN_CLASSES if c != "threshold")


def test_random_graph_examples():
    assert random_graph(1, 4, 3).n == 1
    assert random_graph(2, 4, 5) == complete_graph(2)
    g1 = random_graph(6, 4, 11)
    g2 = random_graph(6, 4, 11)
    assert g1 == g2
    assert g1 != random_graph(6, 4, 12)


def test_random_graph_contracts():
    from contractionlab.graphs import connected_components

    for seed in range(30):
        n = 1 + seed % 8
        g = random_graph(n, 4, seed)
        assert g.max_degree() <= 4
        assert len(connected_components(g)) == 1
        if n >= 2:
            assert all(g.degree(v) >= 1 for v in range(n))


def test_random_graph_impossible_parameters():
    with pytest.raises(InvariantError):
        random_graph(0, 4, 1)
    with pytest.raises(InvariantError):
        random_graph(2, 0, 1)
    with pytest.raises(InvariantError):
        random_graph(3, 1, 1)


def test_random_instance_generators_validate():
    for t in range(10):
        random_lsi_instance(2 + t % 4, t, planted=(t % 2 == 0)).validate()
        random_lsh_instance(2 + t % 3, 2 + t % 2, t, planted=(t % 2 == 0)).validate()
        random_cross_matching_instance(1 + t % 4, t, planted=(t % 2 == 0)).validate()
        random_structured_instance(1 + t % 2, t, planted=(t % 2 == 0), noise_count=t % 3).validate()


def test_run_chain_k3_all_yes():
    report = run_chain(complete_graph(3), classes=SOUND_CLASSES)
    assert report.expected is True
    assert report.divergences == []
    assert all(h.decision for h in report.hops)
    assert report.claim_failures == 0


def test_run_chain_k4_all_no():
    # K4 is not 3-colorable; every hop must come back no, including threshold
    report = run_chain(complete_graph(4))
    assert report.expected is False
    assert report.divergences == []
    assert all(h.decision is False for h in report.hops)


def test_run_chain_c5_all_yes_on_sound_classes():
    report = run_chain(cycle_graph(5), classes=SOUND_CLASSES)
    assert report.expected is True
    assert report.divergences == []


def test_run_chain_threshold_diverges_on_yes_instance():
    report = run_chain(complete_graph(3), classes=("threshold",))
    assert report.expected is True
    assert report.divergences == ["fcon:threshold"]


def test_run_chain_reports_are_reproducible():
    g = random_graph(5, 4, 21)
    a = run_chain(g, classes=SOUND_CLASSES, seed=21)
    b = run_chain(g, classes=SOUND_CLASSES, seed=21)
    strip = lambda lines: [
        " ".join(tok for tok in line.split() if not tok.startswith("seconds="))
        for line in lines
    ]
    assert strip(a.records()) == strip(b.records())


def test_run_chain_rejects_unknown_settings():
    with pytest.raises(InvariantError):
        run_chain(complete_graph(3), terminal="sideways")
    with pytest.raises(InvariantError):
        run_chain(complete_graph(3), classes=("clique",))


def test_core_cross_matchings_matches_solver():
    for t in range(20):
        st = random_structured_instance(1 + t % 3, t, planted=(t % 3 != 2))
        ms = core_cross_matchings(st)
        w = solve_structured(st)
        assert (w is None) == (len(ms) == 0)
        if ms:
            assert w in ms or w is not None


def test_verify_hop_detects_mutations():
    xm = random_cross_matching_instance(1, 4, planted=True)
    assert solve_structured(cross_matching_to_structured(xm)) is not None
    check = verify_hop(
        xm, "cross_matching_to_structured", omit=frozenset({"ac-join"}), unrestricted=True
    )
    assert not check.ok
    assert check.counterexample  # dumps the source instance on failure
    clean = verify_hop(xm, "cross_matching_to_structured", unrestricted=True)
    assert clean.ok


def test_verify_hop_all_constructions_smoke():
    g = random_graph(4, 4, 2)
    assert verify_hop(g, "3col_to_lsh").ok
    lsh = random_lsh_instance(3, 2, 8, planted=True)
    assert verify_hop(lsh, "lsh_to_lsi_stream").ok
    lsi = random_lsi_instance(3, 8, planted=True)
    assert verify_hop(lsi, "lsi_to_cross_matching").ok
    st = random_structured_instance(1, 8, planted=True)
    assert verify_hop(st, "fcon:chordal", unrestricted=True, guard=12).ok
    with pytest.raises(InvariantError):
        verify_hop(g, "not-a-construction")
