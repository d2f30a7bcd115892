"""Brute-force ground truth: dual graphs of Aztec diamonds and their half and
quarter pieces, perfect-matching enumeration, symmetry filtering, and state
sums.

Unit squares are identified by their centres in doubled coordinates
``(A, B) = (2a, 2b)``, so every centre has odd integer coordinates. The
diamond of order ``n`` has the centres with ``|A| + |B| <= 2n``. Vertices are
numbered row by row, top row first, left to right within a row.

Nothing here uses the recursions; keep it that way.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ContractViolation, ResourceLimitError
from .formal import FormalSum

Point = tuple[int, int]


@dataclass(frozen=True)
class OracleLimits:
    max_matchings: int = 1 << 22
    max_distinguished: int = 24


DEFAULT_LIMITS = OracleLimits()


@dataclass(frozen=True)
class MatchGraph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    distinguished: tuple[int, ...] = ()
    coords: Optional[tuple[Point, ...]] = None
    adjacency: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        seen = set()
        adj = [0] * self.n_vertices
        for u, v in edges:
            if u == v:
                raise ContractViolation(f"loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ContractViolation(f"edge {(u, v)} references a missing vertex")
            if (u, v) in seen:
                raise ContractViolation(f"parallel edge {(u, v)}")
            seen.add((u, v))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if len(set(self.distinguished)) != len(self.distinguished):
            raise ContractViolation("distinguished vertices must be distinct")
        if any(not 0 <= d < self.n_vertices for d in self.distinguished):
            raise ContractViolation("distinguished vertex out of range")
        if self.coords is not None and len(self.coords) != self.n_vertices:
            raise ContractViolation("one coordinate pair per vertex is required")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "distinguished", tuple(self.distinguished))
        object.__setattr__(self, "adjacency", tuple(adj))

    @classmethod
    def from_points(cls, points: Iterable[Point], distinguished: Sequence[Point] = ()) -> MatchGraph:
        """Grid graph on doubled-coordinate centres; neighbours differ by 2 in one axis."""
        pts = sorted(set(points), key=lambda p: (-p[1], p[0]))
        index = {p: i for i, p in enumerate(pts)}
        edges = []
        for (a, b), i in index.items():
            for q in ((a + 2, b), (a, b - 2)):
                j = index.get(q)
                if j is not None:
                    edges.append((i, j))
        try:
            dist = tuple(index[p] for p in distinguished)
        except KeyError as exc:
            raise ContractViolation(f"distinguished point {exc.args[0]} is not a vertex") from None
        return cls(len(pts), tuple(edges), dist, tuple(pts))

    def neighbors(self, v: int) -> list[int]:
        m = self.adjacency[v]
        return [i for i in range(self.n_vertices) if (m >> i) & 1]

    def dump(self) -> str:
        """One line per vertex: ``index (a/2, b/2): neighbours``; distinguished marked ``*``."""
        marks = set(self.distinguished)
        lines = []
        for v in range(self.n_vertices):
            pos = f" ({self.coords[v][0]}/2, {self.coords[v][1]}/2)" if self.coords else ""
            star = "*" if v in marks else ""
            lines.append(f"{v}{star}{pos}: {' '.join(map(str, self.neighbors(v)))}")
        return "\n".join(lines)


def aztec_points(n: int) -> list[Point]:
    return [(a, b) for a in range(-2 * n + 1, 2 * n, 2) for b in range(-2 * n + 1, 2 * n, 2)
            if abs(a) + abs(b) <= 2 * n]


def aztec_dual(n: int) -> MatchGraph:
    if n < 1:
        raise ContractViolation(f"order must be >= 1, got {n}")
    return MatchGraph.from_points(aztec_points(n))


def mc_graph(n: int) -> MatchGraph:
    """Right half of the order-``n`` diamond; the cut column is distinguished, top to bottom."""
    if n < 1:
        raise ContractViolation(f"order must be >= 1, got {n}")
    pts = [p for p in aztec_points(n) if p[0] > 0]
    cut = sorted((p for p in pts if p[0] == 1), key=lambda p: -p[1])
    return MatchGraph.from_points(pts, cut)


def omc_graph(m: int) -> MatchGraph:
    """Upper-right quarter of the order-``m`` diamond.

    Distinguished: the left column top to bottom, then the bottom row left to
    right; the shared corner sits in the middle of the list.
    """
    if m < 1:
        raise ContractViolation(f"order must be >= 1, got {m}")
    pts = [p for p in aztec_points(m) if p[0] > 0 and p[1] > 0]
    left = sorted((p for p in pts if p[0] == 1), key=lambda p: -p[1])
    bottom = sorted((p for p in pts if p[1] == 1 and p[0] > 1), key=lambda p: p[0])
    return MatchGraph.from_points(pts, left + bottom)


def path_graph(k: int) -> MatchGraph:
    """The ``k``-vertex path with every vertex distinguished in order."""
    if k < 1:
        raise ContractViolation(f"k must be >= 1, got {k}")
    return MatchGraph(k, tuple((i, i + 1) for i in range(k - 1)), tuple(range(k)))


def one_factor_addition(g: MatchGraph) -> MatchGraph:
    """Hang a pendant edge on each distinguished vertex; the new leaves become distinguished."""
    k = g.n_vertices
    leaves = tuple(range(k, k + len(g.distinguished)))
    edges = g.edges + tuple((d, w) for d, w in zip(g.distinguished, leaves))
    return MatchGraph(k + len(leaves), edges, leaves)


def connected_sum(g1: MatchGraph, g2: MatchGraph, I: Sequence[int], J: Sequence[int]) -> MatchGraph:
    """Identify ``g1.distinguished[I[r]]`` with ``g2.distinguished[J[r]]``.

    The result keeps ``g1``'s distinguished list (glued vertices in place)
    followed by ``g2``'s unglued distinguished vertices.
    """
    if len(I) != len(J):
        raise ContractViolation("|I| != |J|")
    glue = {g2.distinguished[j]: g1.distinguished[i] for i, j in zip(I, J)}
    relabel = {}
    nxt = g1.n_vertices
    for v in range(g2.n_vertices):
        if v in glue:
            relabel[v] = glue[v]
        else:
            relabel[v] = nxt
            nxt += 1
    edges = g1.edges + tuple((relabel[u], relabel[v]) for u, v in g2.edges)
    glued_j = set(J)
    dist = g1.distinguished + tuple(relabel[d] for j, d in enumerate(g2.distinguished) if j not in glued_j)
    return MatchGraph(nxt, edges, dist)


# -- matchings ------------------------------------------------------------------

def _count(adj: Sequence[int], used: int, full: int) -> int:
    if used == full:
        return 1
    free = full & ~used
    low = free & -free
    v = low.bit_length() - 1
    total = 0
    cand = adj[v] & free
    while cand:
        w = cand & -cand
        total += _count(adj, used | low | w, full)
        cand ^= w
    return total


def count_matchings(g: MatchGraph, deleted: Iterable[int] = ()) -> int:
    """Perfect matchings of ``g`` with the ``deleted`` vertices removed."""
    used = 0
    for v in deleted:
        if not 0 <= v < g.n_vertices:
            raise ContractViolation(f"deleted vertex {v} not in graph")
        used |= 1 << v
    full = (1 << g.n_vertices) - 1
    if bin(full & ~used).count("1") % 2:
        return 0
    return _count(g.adjacency, used, full)


def iter_matchings(g: MatchGraph) -> Iterator[tuple[int, ...]]:
    """Yield each perfect matching as a partner array (``partner[v]``)."""
    full = (1 << g.n_vertices) - 1
    partner = [-1] * g.n_vertices
    adj = g.adjacency

    def rec(used):
        if used == full:
            yield tuple(partner)
            return
        free = full & ~used
        low = free & -free
        v = low.bit_length() - 1
        cand = adj[v] & free
        while cand:
            w = cand & -cand
            u = w.bit_length() - 1
            partner[v], partner[u] = u, v
            yield from rec(used | low | w)
            cand ^= w
        partner[v] = -1

    if g.n_vertices % 2 == 0:
        yield from rec(0)


def _state_sum_chunk(args) -> list[tuple[int, int]]:
    g, masks = args
    out = []
    for mask in masks:
        deleted = [d for i, d in enumerate(g.distinguished) if (mask >> i) & 1]
        c = count_matchings(g, deleted)
        if c:
            out.append((mask, c))
    return out


def state_sum(g: MatchGraph, limits: OracleLimits = DEFAULT_LIMITS, workers: int = 1) -> FormalSum:
    """Coefficient at pattern ε = matchings of ``g`` minus the distinguished vertices with ε_i = 1."""
    d = len(g.distinguished)
    if d == 0:
        raise ContractViolation("state sum needs at least one distinguished vertex")
    if d > limits.max_distinguished:
        raise ResourceLimitError(f"{d} distinguished vertices exceed the limit {limits.max_distinguished}")
    masks = range(1 << d)
    if workers <= 1 or d < 8:
        pairs = _state_sum_chunk((g, masks))
    else:
        chunks = [(g, masks[i::workers]) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pairs = [p for part in pool.map(_state_sum_chunk, chunks) for p in part]
    return FormalSum(d, dict(pairs))


# -- symmetry ---------------------------------------------------------------------

_TRANSFORMS = {
    "t": lambda a, b: (-a, b),
    "r": lambda a, b: (-b, a),
    "r2": lambda a, b: (-a, -b),
}


@dataclass(frozen=True)
class SymmetryAction:
    name: str
    permutation: tuple[int, ...]

    def maps_edges_to_edges(self, g: MatchGraph) -> bool:
        p = self.permutation
        edges = set(g.edges)
        return all((min(p[u], p[v]), max(p[u], p[v])) in edges for u, v in g.edges)


def symmetry_action(n: int, name: str) -> SymmetryAction:
    """Vertex permutation of ``aztec_dual(n)``: ``t`` mirrors ``x -> -x``, ``r`` turns by 90 degrees."""
    if name not in _TRANSFORMS:
        raise ContractViolation(f"unknown symmetry {name!r}; expected one of {sorted(_TRANSFORMS)}")
    g = aztec_dual(n)
    index = {p: i for i, p in enumerate(g.coords)}
    f = _TRANSFORMS[name]
    return SymmetryAction(name, tuple(index[f(*p)] for p in g.coords))


def _is_invariant(partner: Sequence[int], perm: Sequence[int]) -> bool:
    return all(partner[perm[v]] == perm[partner[v]] for v in range(len(perm)))


def invariant_counts(n: int, generator_sets: Sequence[Iterable[str]],
                     limits: OracleLimits = DEFAULT_LIMITS) -> list[int]:
    """One pass over all tilings of the order-``n`` diamond, counting those fixed
    by every generator of each set."""
    g = aztec_dual(n)
    perm_sets = [[symmetry_action(n, name).permutation for name in gens] for gens in generator_sets]
    counts = [0] * len(perm_sets)
    seen = 0
    for partner in iter_matchings(g):
        seen += 1
        if seen > limits.max_matchings:
            raise ResourceLimitError(f"more than {limits.max_matchings} tilings of order {n}")
        for k, perms in enumerate(perm_sets):
            if all(_is_invariant(partner, p) for p in perms):
                counts[k] += 1
    return counts


def count_invariant_matchings(n: int, generators: Iterable[str | SymmetryAction] = (),
                              limits: OracleLimits = DEFAULT_LIMITS) -> int:
    names = [gen.name if isinstance(gen, SymmetryAction) else gen for gen in generators]
    return invariant_counts(n, [names], limits)[0]


def within_matching_limit(n: int, limits: OracleLimits = DEFAULT_LIMITS) -> bool:
    """Whether full enumeration of order ``n`` fits the guard (uses the known tiling count)."""
    return 2 ** (n * (n + 1) // 2) <= limits.max_matchings
