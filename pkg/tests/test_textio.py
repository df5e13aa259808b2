import pytest

from contractionlab.errors import InvariantError, ParseError
from contractionlab.graphs import Graph, complete_graph, cycle_graph
from contractionlab.harness import (
    random_cross_matching_instance,
    random_graph,
    random_lsh_instance,
    random_lsi_instance,
    random_structured_instance,
)
from contractionlab.problems import (
    CliqueContractionInstance,
    FContractionInstance,
    HadwigerInstance,
    ThreeColoringInstance,
)
from contractionlab.reductions import reduce_3col_to_lsh, structured_to_class
from contractionlab.textio import (
    parse_graph_text,
    parse_instance,
    serialize_graph_text,
    serialize_instance,
)


def test_graph_text_round_trip_bit_exact():
    g = Graph.from_edges(4, [(0, 1), (2, 3), (0, 3)], tags={0: "a", 3: "d"})
    text = serialize_graph_text(g)
    assert parse_graph_text(text) == g
    assert serialize_graph_text(parse_graph_text(text)) == text
    assert text.splitlines()[0] == "p edge 4 3"


def test_graph_text_accepts_comments_and_one_based_ids():
    text = "c a comment\np edge 3 2\ne 1 2\ne 2 3\nc trailing\n"
    g = parse_graph_text(text)
    assert g == Graph.from_edges(3, [(0, 1), (1, 2)])


def test_graph_text_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_graph_text("p edge 2 1\ne 1 5\n")
    assert "line 2" in str(err.value)
    with pytest.raises(ParseError):
        parse_graph_text("p edge 2 2\ne 1 2\n")  # promised two edges
    with pytest.raises(ParseError):
        parse_graph_text("e 1 2\n")  # missing p line


def test_instance_round_trips():
    instances = [
        ThreeColoringInstance(random_graph(5, 4, 3)),
        random_lsi_instance(4, 7, planted=True),
        random_lsh_instance(3, 2, 7, planted=True),
        random_cross_matching_instance(3, 7, planted=True),
        random_structured_instance(2, 7, planted=True, noise_count=2),
        CliqueContractionInstance(cycle_graph(5), 2),
        HadwigerInstance(complete_graph(4), 3),
        FContractionInstance(cycle_graph(4), 1, "chordal"),
        reduce_3col_to_lsh(complete_graph(3))[0],
        structured_to_class(random_structured_instance(1, 7, planted=True), "perfect"),
    ]
    for inst in instances:
        text = serialize_instance(inst)
        back = parse_instance(text)
        assert back == inst, type(inst).__name__
        assert serialize_instance(back) == text


def test_bare_graph_parses_as_3col_instance():
    g = random_graph(4, 4, 5)
    inst = parse_instance(serialize_graph_text(g))
    assert isinstance(inst, ThreeColoringInstance) and inst.g == g


def test_parse_rejects_unbalanced_cross_matching():
    text = (
        "problem xmatch\n"
        "graph l\n"
        "p edge 3 1\n"
        "e 1 2\n"
        "part a 1 2\n"
        "part b 3\n"
        "end\n"
    )
    with pytest.raises(InvariantError) as err:
        parse_instance(text)
    assert "|A| = |B|" in str(err.value)


def test_parse_rejects_color_incompatible_lists():
    text = (
        "problem lsi\n"
        "graph g\n"
        "p edge 1 0\n"
        "col 1 1\n"
        "graph h\n"
        "p edge 1 0\n"
        "col 1 2\n"
        "list 1 1\n"
        "end\n"
    )
    with pytest.raises(InvariantError) as err:
        parse_instance(text)
    assert "color compatibility" in str(err.value)


def test_parse_rejects_syntax_errors_with_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_instance("problem xmatch\ngraph l\np edge 2 0\nwhat is this\n")
    assert "line 4" in str(err.value)
    with pytest.raises(ParseError):
        parse_instance("problem nonsense\n")
    with pytest.raises(ParseError):
        parse_instance("")


def test_parse_never_repairs():
    # an A-D edge violates the structured invariants and must be rejected
    text = (
        "problem structured\n"
        "budget 1\n"
        "graph g\n"
        "p edge 6 10\n"
        "e 1 2\ne 3 4\ne 3 5\ne 3 6\ne 4 5\ne 4 6\ne 5 6\ne 1 3\ne 2 5\ne 1 5\n"
        "part a 1\npart b 2\npart c 3 4\npart d 5 6\npart noise\n"
        "end\n"
    )
    with pytest.raises(InvariantError) as err:
        parse_instance(text)
    assert "A" in str(err.value) and "D" in str(err.value)
