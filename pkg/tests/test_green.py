from fractions import Fraction
from random import Random

import pytest

from mg import (
    AdmissibleMeasure,
    ConstancyViolation,
    DegreeMinusTwo,
    GraphPoint,
    RDivisor,
    admissible_measure,
    canonical_measure,
    circle_graph,
    constant_c,
    e_invariant,
    e_of_system,
    e_via_basepoint,
    effective_resistance,
    green_system,
    measure_integral,
    one_point_sum,
    path_graph,
    scale_lengths,
    segment_graph,
    subdivide_at,
    theta_graph,
)
from mg.green import _green_columns
from gen import frac, random_divisor, random_graph, random_point


class TestCanonicalMeasure:
    def test_circle_is_uniform(self):
        mu = canonical_measure(circle_graph(Fraction(5, 2)))
        assert mu.atoms == {"O": 0}
        assert mu.densities == {"c": Fraction(2, 5)}
        assert mu.total_mass() == 1

    def test_segment_is_half_half(self):
        mu = canonical_measure(segment_graph(3))
        assert mu.atoms == {"P": Fraction(1, 2), "Q": Fraction(1, 2)}
        assert mu.densities == {"e": 0}

    def test_unit_theta(self):
        mu = canonical_measure(theta_graph())
        assert mu.atoms == {"P": Fraction(-1, 2), "Q": Fraction(-1, 2)}
        assert all(rho == Fraction(2, 3) for rho in mu.densities.values())
        assert mu.total_mass() == 1

    def test_mass_one_on_random_graphs(self):
        rng = Random(5)
        for _ in range(30):
            g = random_graph(rng)
            g.validate()
            assert canonical_measure(g).total_mass() == 1


class TestAdmissibleMeasure:
    def test_segment_lemma_values(self):
        # D = (2a-1)P + (2b-1)Q with a=1, b=2: atoms a/(a+b), b/(a+b)
        g = segment_graph(1)
        mu = admissible_measure(g, RDivisor({"P": 1, "Q": 3}))
        assert mu.atoms == {"P": Fraction(1, 3), "Q": Fraction(2, 3)}
        assert mu.densities == {"e": 0}

    def test_circle_divisor_zero(self):
        mu = admissible_measure(circle_graph(4), RDivisor())
        assert mu.atoms == {"O": 0}
        assert mu.densities == {"c": Fraction(1, 4)}

    def test_one_point_sum_composition(self):
        # mu measures compose with coefficients (d1+2)/(d1+d2+2),
        # (d2+2)/(d1+d2+2), -2/(d1+d2+2); at d1=d2=0 these are (1, 1, -1)
        rng = Random(23)
        for _ in range(10):
            g1 = random_graph(rng, max_vertices=4)
            g2 = random_graph(rng, max_vertices=4)
            g1.validate()
            g2.validate()
            x1 = GraphPoint.at_vertex(rng.choice(g1.vertex_list))
            x2 = GraphPoint.at_vertex(rng.choice(g2.vertex_list))
            joined, joint, r1, r2 = one_point_sum(g1, x1, g2, x2)
            mu = admissible_measure(joined, RDivisor())
            mu1 = canonical_measure(g1)
            mu2 = canonical_measure(g2)
            expected = mu1.atom(x1.vertex) + mu2.atom(x2.vertex) - 1
            assert mu.atom(joint) == expected
            for v in g1.vertex_list:
                if v != x1.vertex:
                    assert mu.atom(r1(GraphPoint.at_vertex(v)).vertex) == mu1.atom(v)
            for v in g2.vertex_list:
                if v != x2.vertex:
                    assert mu.atom(r2(GraphPoint.at_vertex(v)).vertex) == mu2.atom(v)

    def test_degree_minus_two_rejected(self):
        g = segment_graph(1)
        with pytest.raises(DegreeMinusTwo):
            admissible_measure(g, RDivisor({"P": -2}))

    def test_interior_support_subdivides(self):
        g = segment_graph(1)
        m = GraphPoint.on_edge("e", Fraction(1, 2))
        mu = admissible_measure(g, RDivisor({m: 2}))
        assert mu.graph is not g
        assert mu.total_mass() == 1
        cut = ("cut", "e", Fraction(1, 2))
        assert mu.atoms[cut] == Fraction(2, 4)  # (2 + 2*0)/(deg+2), deg=2

    def test_mass_one_with_divisors(self):
        rng = Random(29)
        for _ in range(25):
            g = random_graph(rng)
            g.validate()
            d = random_divisor(rng, g, interior=True)
            assert admissible_measure(g, d).total_mass() == 1


class TestGreenValues:
    def test_circle_formula(self):
        # regression pinning the Laplacian sign convention:
        # g(O, x) = t^2/(2l) - t/2 + l/12
        l = Fraction(7, 2)
        s = green_system(circle_graph(l), RDivisor())
        for num in range(8):
            t = l * Fraction(num, 8)
            x = GraphPoint.on_edge("c", t) if 0 < t < l else GraphPoint.at_vertex("O")
            assert s.eval("O", x) == t**2 / (2 * l) - t / 2 + l / 12

    def test_circle_l12_diagonal_is_one(self):
        s = green_system(circle_graph(12), RDivisor())
        assert s.eval("O", "O") == 1

    def test_segment_lemma_44(self):
        # a=1, b=2, l=3
        g = segment_graph(3)
        s = green_system(g, RDivisor({"P": 1, "Q": 3}))
        assert s.eval("P", "P") == Fraction(4, 3)
        assert s.eval("Q", "Q") == Fraction(1, 3)
        assert s.eval("P", "Q") == Fraction(-2, 3)
        assert s.eval("Q", "P") == Fraction(-2, 3)

    def test_interior_pair_on_same_edge(self):
        # on the circle g depends only on arc distance
        l = Fraction(1)
        s = green_system(circle_graph(l), RDivisor())
        x = GraphPoint.on_edge("c", Fraction(1, 4))
        y = GraphPoint.on_edge("c", Fraction(3, 4))
        t = Fraction(1, 2)  # arc distance
        assert s.eval(x, y) == t**2 / (2 * l) - t / 2 + l / 12

    def test_symmetry_everywhere(self):
        rng = Random(31)
        for _ in range(10):
            g = random_graph(rng, max_vertices=6)
            g.validate()
            d = random_divisor(rng, g)
            s = green_system(g, d)
            for _ in range(4):
                x, y = random_point(rng, g), random_point(rng, g)
                assert s.eval(x, y) == s.eval(y, x)

    def test_zero_mean_property(self):
        rng = Random(37)
        for _ in range(10):
            g = random_graph(rng, max_vertices=6)
            g.validate()
            d = random_divisor(rng, g)
            s = green_system(g, d)
            for _ in range(3):
                x = random_point(rng, g)
                x_solver = s._to_solver(x)
                if x_solver.is_vertex:
                    col = s._cols[x_solver.vertex]
                    assert measure_integral(s.measure, col) == 0

    def test_resistance_identity(self):
        # r(P,Q) = g(P,P) - 2g(P,Q) + g(Q,Q) for every divisor
        rng = Random(41)
        for _ in range(10):
            g = random_graph(rng, max_vertices=6)
            g.validate()
            d = random_divisor(rng, g)
            s = green_system(g, d)
            p, q = random_point(rng, g), random_point(rng, g)
            lhs = effective_resistance(g, p, q)
            rhs = s.eval(p, p) - 2 * s.eval(p, q) + s.eval(q, q)
            assert lhs == rhs


class TestConstant:
    def test_segment_unit(self):
        g = segment_graph(1)
        s = green_system(g, RDivisor({"P": 1, "Q": 1}))
        assert constant_c(s) == Fraction(1, 4)

    def test_circle(self):
        l = Fraction(9, 4)
        s = green_system(circle_graph(l), RDivisor())
        assert constant_c(s) == l / 12

    def test_constancy_on_random_graphs(self):
        rng = Random(43)
        for _ in range(25):
            g = random_graph(rng, max_vertices=6)
            g.validate()
            d = random_divisor(rng, g, interior=True)
            constant_c(green_system(g, d))  # raises on violation

    def test_violation_detected_for_wrong_measure(self):
        # corrupt the admissible measure: move atom mass between vertices;
        # the verifier must notice
        g = segment_graph(1)
        s = green_system(g, RDivisor({"P": 1, "Q": 1}))
        bad = AdmissibleMeasure(
            s.graph,
            {"P": Fraction(3, 4), "Q": Fraction(1, 4)},
            dict(s.measure.densities),
        )
        s._cols = _green_columns(s.graph, bad)
        s.measure = bad
        s._interior_cache.clear()
        with pytest.raises(ConstancyViolation):
            constant_c(s)


class TestEInvariant:
    def test_unit_segment(self):
        assert e_invariant(segment_graph(1), RDivisor({"P": 1, "Q": 1})) == 1

    def test_circle_divisor_zero(self):
        assert e_invariant(circle_graph(Fraction(22, 7)), RDivisor()) == 0

    def test_two_chain(self):
        g = path_graph([1, 1])
        d = RDivisor({"P0": 1, "P1": 2, "P2": 1})
        assert e_invariant(g, d) == Fraction(10, 3)

    def test_degree_minus_two(self):
        with pytest.raises(DegreeMinusTwo):
            e_invariant(segment_graph(1), RDivisor({"P": -1, "Q": -1}))

    def test_interior_divisor_support(self):
        # divisor at the midpoint of a segment of length 2: isometric to
        # the 2-chain with unit lengths
        g = segment_graph(2)
        m = GraphPoint.on_edge("e", 1)
        d = RDivisor({"P": 1, m: 2, "Q": 1})
        assert e_invariant(g, d) == Fraction(10, 3)

    def test_two_interior_points_on_one_edge(self):
        # segment of length 3 with divisor mass at offsets 1 and 2:
        # isometric to the 3-chain with unit lengths and a = (1, 1, 1, 1)
        g = segment_graph(3)
        d = RDivisor(
            {
                "P": 1,
                GraphPoint.on_edge("e", 1): 2,
                GraphPoint.on_edge("e", 2): 2,
                "Q": 1,
            }
        )
        from mg import chain_e, path_graph

        expected = chain_e([1, 1, 1], [1, 1, 1, 1])
        assert e_invariant(g, d) == expected
        assert e_invariant(
            path_graph([1, 1, 1]),
            RDivisor({"P0": 1, "P1": 2, "P2": 2, "P3": 1}),
        ) == expected


class TestBasepointFormula:
    def test_segment_basepoints(self):
        g = segment_graph(1)
        d = RDivisor({"P": 1, "Q": 1})
        assert e_via_basepoint(g, d, "P") == 1
        assert e_via_basepoint(g, d, "Q") == 1

    def test_circle_any_basepoint(self):
        g = circle_graph(3)
        d = RDivisor()
        assert e_via_basepoint(g, d, "O") == 0
        assert e_via_basepoint(g, d, GraphPoint.on_edge("c", Fraction(1, 3))) == 0

    def test_independence_on_random_graphs(self):
        rng = Random(47)
        for _ in range(8):
            g = random_graph(rng, max_vertices=5)
            g.validate()
            d = random_divisor(rng, g)
            e = e_invariant(g, d)
            for _ in range(3):
                o = random_point(rng, g)
                assert e_via_basepoint(g, d, o) == e


class TestInvariance:
    def test_subdivision_leaves_g_c_e_unchanged(self):
        rng = Random(53)
        for _ in range(8):
            g = random_graph(rng, max_vertices=5)
            g.validate()
            d = random_divisor(rng, g)
            s = green_system(g, d)
            e = e_of_system(s)
            c = constant_c(s)
            cut = random_point(rng, g)
            g2, _, rel = subdivide_at(g, cut)
            d2 = d.relocate(rel)
            s2 = green_system(g2, d2)
            assert e_of_system(s2) == e
            assert constant_c(s2) == c
            x, y = random_point(rng, g), random_point(rng, g)
            assert s2.eval(rel(x), rel(y)) == s.eval(x, y)

    def test_scaling_covariance(self):
        rng = Random(59)
        for _ in range(8):
            g = random_graph(rng, max_vertices=5)
            g.validate()
            d = random_divisor(rng, g)
            s = frac(rng)
            g2, rel = scale_lengths(g, s)
            d2 = d.relocate(rel)
            sys1 = green_system(g, d)
            sys2 = green_system(g2, d2)
            x, y = random_point(rng, g), random_point(rng, g)
            assert sys2.eval(rel(x), rel(y)) == s * sys1.eval(x, y)
            assert e_of_system(sys2) == s * e_of_system(sys1)
            # atoms invariant, densities divide by s
            mu1 = sys1.measure
            mu2 = sys2.measure
            for v in mu1.graph.vertex_list:
                assert mu2.atom(v) == mu1.atom(v)
            for eid, rho in mu1.densities.items():
                assert mu2.densities[eid] == rho / s
