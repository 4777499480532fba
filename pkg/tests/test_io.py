from fractions import Fraction

import pytest

from lpembed.graph import WeightedGraph
from lpembed.io import (EdgeListError, format_edge_list, host_names, load_graph, load_host, parse_edge_list,
                        to_dot)


def test_parse_names_in_order_of_appearance():
    el = parse_edge_list("# header\nb a\na c 3/2\n\nd\n")
    assert el.names == ("b", "a", "c", "d")
    assert el.edges == ((0, 1, None), (1, 2, Fraction(3, 2)))
    assert el.line_numbers == (2, 3)


@pytest.mark.parametrize("text,msg", [
    ("", "empty graph"),
    ("a b c d\n", "line 1"),
    ("a b x\n", "bad weight"),
    ("a b -1\n", "negative"),
])
def test_parse_errors(text, msg):
    with pytest.raises(EdgeListError, match=msg):
        parse_edge_list(text)


@pytest.mark.parametrize("text,msg", [
    ("a b\nb b\n", "line 2: self-loop"),
    ("a b\nb a\n", "line 2: duplicate edge"),
    ("a b 2\n", "unweighted"),
    ("a b\nc d\n", "graph disconnected: c unreachable from a"),
])
def test_load_graph_diagnostics(text, msg):
    with pytest.raises(EdgeListError, match=msg):
        load_graph(text)


def test_load_graph_accepts_unit_weight():
    g, names = load_graph("x y 1\ny z\n")
    assert names == ["x", "y", "z"] and g.m == 2


def test_load_host_defaults_to_one():
    names, edges = load_host("a b\nb c 1/2\n")
    assert edges == [(0, 1, Fraction(1)), (1, 2, Fraction(1, 2))]


def test_round_trip():
    names = ["a", "b", "c"]
    text = format_edge_list(names, [(0, 1, Fraction(3, 2)), (1, 2, Fraction(2))], "hdr")
    assert text == "# hdr\na b 3/2\nb c 2\n"
    assert load_host(text) == (names, [(0, 1, Fraction(3, 2)), (1, 2, Fraction(2))])


def test_steiner_names_avoid_collisions():
    wg = WeightedGraph(4, ((0, 2, Fraction(0)), (1, 3, Fraction(0)), (2, 3, Fraction(1))), 2)
    assert host_names(["@p0", "x"], wg) == ["@p0", "x", "@@p0", "@p1"]


def test_dot():
    dot = to_dot(["a", "b"], [(0, 1, Fraction(35))])
    assert dot.splitlines() == ['graph host {', '  "a";', '  "b";', '  "a" -- "b" [label="35"];', '}']
