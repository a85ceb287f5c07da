from fractions import Fraction
from random import Random

import pytest

from mg import (
    DegreeMinusTwo,
    FiberConfiguration,
    GraphPoint,
    RDivisor,
    circle_graph,
    configuration_graph,
    convergence_report,
    discretize,
    effective_resistance,
    green_system,
    numeric_green,
    numeric_resistance,
    observed_orders,
    omega_divisor,
    segment_graph,
    theta_graph,
)
from gen import random_divisor, random_graph


class TestDiscretize:
    def test_segment_node_count(self):
        dg = discretize(segment_graph(1), Fraction(1, 4))
        assert dg.n == 5
        assert len(dg.links) == 4

    def test_circle_two_nodes(self):
        dg = discretize(circle_graph(1), Fraction(1, 2))
        assert dg.n == 2
        assert len(dg.links) == 2

    def test_total_length_preserved(self):
        g = theta_graph((1, Fraction(3, 2), Fraction(5, 7)))
        dg = discretize(g, Fraction(1, 8))
        total = sum(r for _, _, r in dg.links)
        assert abs(total - float(g.total_length())) < 1e-12

    def test_locate_vertices_and_interior(self):
        g = segment_graph(1)
        dg = discretize(g, Fraction(1, 4))
        assert dg.locate(g, "P") != dg.locate(g, "Q")
        mid = dg.locate(g, GraphPoint.on_edge("e", Fraction(1, 2)))
        assert mid == dg.edge_chain["e"][2]


class TestNumericResistance:
    def test_segment_exact(self):
        for h in (Fraction(1, 2), Fraction(1, 8)):
            assert abs(numeric_resistance(segment_graph(1), "P", "Q", h) - 1.0) < 1e-12

    def test_circle_antipodal(self):
        g = circle_graph(2)
        p = GraphPoint.on_edge("c", 1)
        assert abs(numeric_resistance(g, "O", p, Fraction(1, 4)) - 0.5) < 1e-12

    def test_theta(self):
        got = numeric_resistance(theta_graph(), "P", "Q", Fraction(1, 4))
        assert abs(got - 1 / 3) < 1e-12

    def test_matches_exact_solver(self):
        rng = Random(107)
        for _ in range(5):
            g = random_graph(rng, max_vertices=5)
            g.validate()
            u, v = rng.choice(g.vertex_list), rng.choice(g.vertex_list)
            exact = float(effective_resistance(g, u, v))
            got = numeric_resistance(g, u, v, Fraction(1, 8))
            assert abs(got - exact) < 1e-9


class TestNumericGreen:
    def test_circle_value(self):
        g = circle_graph(1)
        got = numeric_green(g, RDivisor(), "O", "O", Fraction(1, 64))
        assert abs(got - 1 / 12) < 1e-3

    def test_segment_grid_exact(self):
        # atoms-only measure: piecewise linear Green function, exact on the
        # grid up to rounding
        g = segment_graph(1)
        d = RDivisor({"P": 1, "Q": 1})
        got = numeric_green(g, d, "P", "P", Fraction(1, 8))
        assert abs(got - 0.25) < 1e-12

    def test_degree_minus_two(self):
        g = segment_graph(1)
        with pytest.raises(DegreeMinusTwo):
            numeric_green(g, RDivisor({"P": -2}), "P", "Q", Fraction(1, 4))

    def test_error_at_least_halves(self):
        g = circle_graph(1)
        d = RDivisor()
        errors = []
        for h in (Fraction(1, 8), Fraction(1, 16), Fraction(1, 32)):
            got = numeric_green(g, d, "O", "O", h)
            errors.append(abs(got - 1 / 12))
        assert errors[1] <= errors[0] / 2 * 1.1
        assert errors[2] <= errors[1] / 2 * 1.1


def g3_chain_fiber_graph():
    cfg = FiberConfiguration(
        [("A", 1), ("B", 1)], [("n", "A", "B"), ("s", "B", "B")]
    )
    return configuration_graph(cfg), omega_divisor(cfg)


class TestConvergence:
    def test_circle_order(self):
        g = circle_graph(1)
        d = RDivisor()
        probes = [("O", "O"), ("O", GraphPoint.on_edge("c", Fraction(1, 4)))]
        rows = convergence_report(
            g, d, probes, [Fraction(1, 4), Fraction(1, 8), Fraction(1, 16)]
        )
        assert rows[0].max_error > rows[1].max_error > rows[2].max_error
        assert all(order >= 1 for order in observed_orders(rows))

    def test_theta_order(self):
        g = theta_graph()
        d = RDivisor({"P": 1, "Q": 1})
        probes = [("P", "Q"), ("P", "P")]
        rows = convergence_report(
            g, d, probes, [Fraction(1, 8), Fraction(1, 16), Fraction(1, 32)]
        )
        assert all(order >= 1 for order in observed_orders(rows))
        assert rows[-1].max_error < 1e-3

    def test_segment_near_machine_epsilon(self):
        g = segment_graph(1)
        d = RDivisor({"P": 1, "Q": 3})
        probes = [("P", "P"), ("P", "Q"), ("Q", "Q")]
        rows = convergence_report(
            g, d, probes, [Fraction(1, 8), Fraction(1, 16)]
        )
        assert all(row.max_error < 1e-12 for row in rows)

    def test_chain_fiber_graph(self):
        g, d = g3_chain_fiber_graph()
        probes = [("A", "A"), ("A", "B"), ("B", "B")]
        rows = convergence_report(
            g, d, probes, [Fraction(1, 16), Fraction(1, 32), Fraction(1, 64)]
        )
        assert rows[-1].max_error < 1e-3
        assert all(order >= 1 for order in observed_orders(rows))

    def test_random_graphs_match_exact(self):
        rng = Random(109)
        for _ in range(4):
            g = random_graph(rng, max_vertices=4)
            g.validate()
            d = random_divisor(rng, g)
            s = green_system(g, d)
            u, v = rng.choice(g.vertex_list), rng.choice(g.vertex_list)
            exact = float(s.eval(u, v))
            got = numeric_green(g, d, u, v, Fraction(1, 64))
            assert abs(got - exact) < 1e-2
