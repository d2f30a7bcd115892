"""Random small graphs for the gluing tests."""

import random

from azcount.errors import ContractViolation
from azcount.oracle import MatchGraph, connected_sum


def random_graph(rng: random.Random, n_vertices: int, n_distinguished: int, p: float = 0.5) -> MatchGraph:
    edges = [(u, v) for u in range(n_vertices) for v in range(u + 1, n_vertices) if rng.random() < p]
    dist = rng.sample(range(n_vertices), n_distinguished)
    return MatchGraph(n_vertices, tuple(edges), tuple(dist))


def random_split(rng: random.Random, glue_all: bool):
    """Two random graphs and slot lists whose gluing yields a simple graph.

    With ``glue_all`` every distinguished vertex is glued, otherwise the
    layout is "last ``j`` of the first graph onto first ``j`` of the second".
    """
    while True:
        if glue_all:
            d = rng.randint(1, 4)
            g1 = random_graph(rng, rng.randint(d, d + 4), d)
            g2 = random_graph(rng, rng.randint(d, d + 4), d)
            I = J = list(range(d))
        else:
            i, j, k = rng.randint(0, 2), rng.randint(1, 3), rng.randint(0, 2)
            g1 = random_graph(rng, rng.randint(i + j, i + j + 3), i + j)
            g2 = random_graph(rng, rng.randint(j + k, j + k + 3), j + k)
            I, J = list(range(i, i + j)), list(range(j))
        try:
            glued = connected_sum(g1, g2, I, J)
        except ContractViolation:
            continue
        return g1, g2, I, J, glued
