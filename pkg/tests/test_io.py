import pytest
from hypothesis import given

from conftest import digraphs
from minforest.errors import DomainError, ParseError
from minforest.io import FIXTURES, fixture_text, load_fixture, load_graph, parse_graph, serialize_graph


def test_parse_example():
    V = parse_graph("# comment\nvertices a b\narc a b 3/2  # trailing\n")
    assert V.names == ("a", "b") and V.weight(0, 1) * 2 == 3


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("arc a b 1\n", 1, 1),
        ("vertices a b\narc a c 1\n", 2, 7),
        ("vertices a b\narc a b 1.5\n", 2, 9),
        ("vertices a b\narc a a 1\n", 2, 5),
        ("vertices a b\narc a b 1\narc a b 2\n", 3, 5),
        ("vertices a a\n", 1, 12),
        ("vertices a\nedge a a 1\n", 2, 1),
        ("", 1, 1),
    ],
)
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert f"line {line}, column {col}" in str(info.value)


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_round_trip(name):
    V = load_fixture(name)
    assert parse_graph(serialize_graph(V)) == V
    assert load_graph(f"fixture:{name}") == V
    assert fixture_text(name).startswith("#")


def test_unknown_fixture():
    with pytest.raises(DomainError):
        load_fixture("nope")


def test_load_from_file(tmp_path, ex1):
    p = tmp_path / "g.graph"
    p.write_text(serialize_graph(ex1))
    assert load_graph(p) == ex1


@given(digraphs(max_n=6))
def test_round_trip(V):
    text = serialize_graph(V)
    assert parse_graph(text) == V
    assert serialize_graph(parse_graph(text)) == text
