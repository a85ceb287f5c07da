#!/usr/bin/env python3
"""Grid-refinement study of the floating-point solver against the exact one.

Prints, for each benchmark graph, the maximum |numeric - exact| over a few
probe pairs at h = 1/8 .. 1/128 and the observed convergence order.
"""

from fractions import Fraction

from mg import (
    FiberConfiguration,
    GraphPoint,
    RDivisor,
    circle_graph,
    configuration_graph,
    convergence_report,
    observed_orders,
    omega_divisor,
    segment_graph,
    theta_graph,
)


def benchmarks():
    yield "segment (atoms only)", segment_graph(1), RDivisor({"P": 1, "Q": 1}), [
        ("P", "P"),
        ("P", "Q"),
    ]
    yield "circle l=1", circle_graph(1), RDivisor(), [
        ("O", "O"),
        ("O", GraphPoint.on_edge("c", Fraction(1, 4))),
    ]
    yield "theta, D = P + 3Q", theta_graph(), RDivisor({"P": 1, "Q": 3}), [
        ("P", "Q"),
        ("P", "P"),
        ("Q", "Q"),
    ]
    cfg = FiberConfiguration([("A", 1), ("B", 1)], [("n", "A", "B"), ("s", "B", "B")])
    yield "g=3 chain fiber graph", configuration_graph(cfg), omega_divisor(cfg), [
        ("A", "A"),
        ("A", "B"),
        ("B", "B"),
    ]


def main():
    hs = [Fraction(1, 2**k) for k in range(3, 8)]
    for name, graph, divisor, probes in benchmarks():
        print(f"\n{name}")
        rows = convergence_report(graph, divisor, probes, hs)
        orders = [None] + observed_orders(rows)
        print(f"  {'h':>8}  {'max error':>12}  order")
        for row, order in zip(rows, orders):
            tag = "" if order is None else f"{order:5.2f}"
            print(f"  {str(row.h):>8}  {row.max_error:12.3e}  {tag}")


if __name__ == "__main__":
    main()
