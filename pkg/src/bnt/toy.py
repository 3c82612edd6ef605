"""A seven-node, four-path toy network used in tests and demos.

Node ``i`` here is node ``i + 1`` of the usual 1-based drawing.  The four
measurement paths are 1-2-3-5, 7-3-1-4, 4-3-5-6 and 4-5-7-2 (1-based).
"""

from __future__ import annotations

from .pathmatrix import PathMatrix, read_matrix

TOY_MATRIX_TEXT = "1,1,1,0,1,0,0\n1,0,1,1,0,0,1\n0,0,1,1,1,1,0\n0,1,0,1,1,0,1\n"

# 1-based edge list of the underlying topology.
TOY_GRAPH_TEXT = "7\n1 2\n2 3\n3 5\n7 3\n3 1\n1 4\n4 5\n5 7\n7 2\n4 3\n5 6\n"

TOY_WALKS_ONE_BASED = ((1, 2, 3, 5), (7, 3, 1, 4), (4, 3, 5, 6), (4, 5, 7, 2))

# Outcome vector observed on the four paths.
TOY_MEASUREMENT = (True, False, True, True)


def toy_matrix() -> PathMatrix:
    return read_matrix(TOY_MATRIX_TEXT)


def toy_graph():
    from .graphio import read_graph

    return read_graph(TOY_GRAPH_TEXT, one_based=True)
