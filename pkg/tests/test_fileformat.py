from fractions import Fraction
from pathlib import Path

import pytest

from mg import (
    BadRational,
    Disconnected,
    GenusTooSmall,
    GraphPoint,
    NonpositiveLength,
    ParseError,
    PointOffGraph,
    UnknownComponent,
    UnknownVertex,
)
from mg.fileformat import (
    parse_fiber_file,
    parse_graph_file,
    parse_rational,
    serialize_fiber,
    serialize_graph,
)

GOLDEN = Path(__file__).parent / "golden"


class TestParseGraph:
    def test_segment_example(self):
        graph, names, divisor = parse_graph_file((GOLDEN / "segment.mg").read_text())
        assert len(graph.vertex_list) == 2
        assert len(graph.edges) == 1
        assert divisor.degree() == 2
        assert names["m"] == GraphPoint.on_edge("e", Fraction(1, 2))

    def test_loop_accepted(self):
        graph, _, _ = parse_graph_file("metrized_graph\nvertex v\nedge e v v 1\n")
        assert graph.edges[0].is_loop()

    def test_zero_length(self):
        with pytest.raises(NonpositiveLength):
            parse_graph_file((GOLDEN / "zero_length.mg").read_text())

    def test_bad_header(self):
        with pytest.raises(ParseError):
            parse_graph_file((GOLDEN / "bad_header.mg").read_text())

    def test_bad_rational(self):
        with pytest.raises(BadRational):
            parse_graph_file((GOLDEN / "bad_rational.mg").read_text())
        with pytest.raises(BadRational):
            parse_rational("abc")

    def test_disconnected(self):
        with pytest.raises(Disconnected):
            parse_graph_file((GOLDEN / "disconnected.mg").read_text())

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertex):
            parse_graph_file((GOLDEN / "unknown_vertex.mg").read_text())

    def test_unknown_divisor_name(self):
        text = "metrized_graph\nvertex v\nedge e v v 1\ndivisor w 1\n"
        with pytest.raises(UnknownVertex):
            parse_graph_file(text)

    def test_point_out_of_range(self):
        text = "metrized_graph\nvertex a\nvertex b\nedge e a b 1\npoint m on e at 2\n"
        with pytest.raises(PointOffGraph):
            parse_graph_file(text)

    def test_duplicate_name(self):
        text = "metrized_graph\nvertex a\nvertex a\n"
        with pytest.raises(ParseError):
            parse_graph_file(text)

    def test_parse_error_carries_line(self):
        try:
            parse_graph_file("metrized_graph\nvertex a\nwhatnow a b\n")
        except ParseError as exc:
            assert exc.line == 3
        else:
            pytest.fail("expected ParseError")

    def test_comments_and_blanks_ignored(self):
        text = "# leading\n\nmetrized_graph\nvertex v # inline\nedge e v v 1\n"
        graph, _, _ = parse_graph_file(text)
        assert len(graph.edges) == 1


class TestParseFiber:
    def test_chain_example(self):
        cfg = parse_fiber_file((GOLDEN / "chain.fib").read_text())
        assert len(cfg.components) == 2
        assert len(cfg.nodes) == 1

    def test_self_node(self):
        cfg = parse_fiber_file("fiber\ncomponent A genus 2\nnode n A A\n")
        assert cfg.nodes[0].is_self_node()

    def test_node_length(self):
        cfg = parse_fiber_file(
            "fiber\ncomponent A genus 2\nnode n A A length 2/3\n"
        )
        assert cfg.nodes[0].length == Fraction(2, 3)

    def test_unknown_component(self):
        with pytest.raises(UnknownComponent):
            parse_fiber_file((GOLDEN / "unknown_component.fib").read_text())

    def test_genus_too_small(self):
        with pytest.raises(GenusTooSmall):
            parse_fiber_file((GOLDEN / "genus_small.fib").read_text())

    def test_bad_genus(self):
        with pytest.raises(ParseError):
            parse_fiber_file("fiber\ncomponent A genus x\n")


class TestRoundTrip:
    @pytest.mark.parametrize("name", ["segment.mg", "circle.mg", "theta.mg"])
    def test_graph_serializer_idempotent(self, name):
        text = (GOLDEN / name).read_text()
        once = serialize_graph(*parse_graph_file(text))
        twice = serialize_graph(*parse_graph_file(once))
        assert once == twice

    @pytest.mark.parametrize("name", ["chain.fib", "selfnode.fib"])
    def test_fiber_serializer_idempotent(self, name):
        text = (GOLDEN / name).read_text()
        once = serialize_fiber(parse_fiber_file(text))
        twice = serialize_fiber(parse_fiber_file(once))
        assert once == twice

    def test_round_trip_preserves_content(self):
        text = (GOLDEN / "segment.mg").read_text()
        graph, names, divisor = parse_graph_file(text)
        graph2, names2, divisor2 = parse_graph_file(
            serialize_graph(graph, names, divisor)
        )
        assert sorted(graph2.vertex_list) == sorted(graph.vertex_list)
        assert len(graph2.edges) == len(graph.edges)
        assert divisor2 == divisor
        assert names2 == names
