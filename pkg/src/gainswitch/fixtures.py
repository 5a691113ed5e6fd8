"""Built-in demo instances.

t4-13: a 13-vertex graph over the complex-unit group of order 4 whose
partition is valid in the exact sense; switching it disconnects three
vertices.  s4-17: a 17-vertex graph over the symmetric group on 4 points
whose partition fails the exact conditions but passes under the permutation
representation.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .graphs import GainGraph, build_gain_graph
from .groups import cyclic_group, symmetric_group
from .switching import WQHPartition


def demo_t4_13() -> Tuple[GainGraph, WQHPartition]:
    group = cyclic_group(4)
    e, i, mi = "z^0", "z^1", "z^3"
    edges = [
        (0, 1, e), (0, 2, e), (0, 3, e),
        (0, 7, e), (0, 10, e),
        (4, 5, i), (4, 6, mi), (5, 6, i),
        (10, 11, i), (10, 12, mi), (11, 12, i),
    ]
    graph = build_gain_graph(group, 13, edges)
    part = WQHPartition.from_cells(
        [[0], [1, 2, 3], [4, 5, 6], [7, 8, 9], [10, 11, 12]]
    )
    return graph, part


def demo_s4_17() -> Tuple[GainGraph, WQHPartition]:
    group = symmetric_group(4)
    e, dd, t12, t34 = "e", "(12)(34)", "(12)", "(34)"
    edges = [
        # a 4-cycle with alternating gains e and (12)(34)
        (1, 2, e), (2, 3, dd), (3, 4, e), (4, 1, dd),
        # a 4-cycle with alternating gains (12) and (34)
        (5, 6, t12), (6, 7, t34), (7, 8, t12), (8, 5, t34),
        # the hub: all of the first cell, one vertex of each back cell
        (0, 1, e), (0, 2, e), (0, 3, e), (0, 4, e),
        (0, 9, e), (0, 13, e),
    ]
    graph = build_gain_graph(group, 17, edges)
    part = WQHPartition.from_cells(
        [[0], [1, 2, 3, 4], [5, 6, 7, 8], [9, 10, 11, 12], [13, 14, 15, 16]]
    )
    return graph, part


DEMOS: Dict[str, dict] = {
    "t4-13": {
        "build": demo_t4_13,
        "blurb": "13 vertices over the complex-unit group of order 4; exact-mode demo",
    },
    "s4-17": {
        "build": demo_s4_17,
        "blurb": "17 vertices over the symmetric group S4; permutation-representation demo",
    },
}
