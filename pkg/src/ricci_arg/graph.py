"""Simple undirected graphs: distances, spheres, amply regular parameters,
named families and a plain-text edge-list format."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

INF = math.inf


class GraphFormatError(ValueError):
    """Malformed graph text. ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NotAmplyRegular(ValueError):
    pass


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Neighbor lists are stored sorted. BFS distance rows are computed on
    demand and cached.
    """

    __slots__ = ("vertex_count", "adjacency", "edge_count", "_nbr_sets", "_dist")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for n={vertex_count}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.vertex_count = vertex_count
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._nbr_sets = tuple(frozenset(s) for s in nbrs)
        self.edge_count = sum(len(s) for s in nbrs) // 2
        self._dist: dict[int, tuple[float, ...]] = {}

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"

    def __len__(self) -> int:
        return self.vertex_count

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash(self.adjacency)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def regular_degree(self) -> int | None:
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def distances_from(self, source: int) -> tuple[float, ...]:
        row = self._dist.get(source)
        if row is None:
            row = tuple(bfs_distances(self, source))
            self._dist[source] = row
        return row

    def distance(self, u: int, v: int) -> float:
        return self.distances_from(u)[v]

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        return all(d < INF for d in self.distances_from(0))

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.vertex_count, self.vertex_count))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph, relabelled ``0..k-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [
            (index[u], index[w])
            for u in vertices
            for w in self.adjacency[u]
            if w in index and index[u] < index[w]
        ]
        return Graph(len(vertices), edges), tuple(vertices)


def bfs_distances(g: Graph, source: int) -> list[float]:
    if not 0 <= source < g.vertex_count:
        raise ValueError(f"source {source} out of range")
    dist = [INF] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] == INF:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def spheres(g: Graph, center: int) -> list[list[int]]:
    """``S_0(x), S_1(x), ...`` up to the eccentricity of the center."""
    dist = g.distances_from(center)
    ecc = max(int(d) for d in dist if d < INF)
    out: list[list[int]] = [[] for _ in range(ecc + 1)]
    for v, d in enumerate(dist):
        if d < INF:
            out[int(d)].append(v)
    return out


def diameter(g: Graph) -> int:
    if g.vertex_count == 0:
        return 0
    best = 0
    for s in range(g.vertex_count):
        row = g.distances_from(s)
        m = max(row)
        if m == INF:
            raise ValueError("graph is disconnected")
        best = max(best, int(m))
    return best


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.vertex_count
    for s in range(g.vertex_count):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


# --- amply regular graphs -------------------------------------------------


@dataclass(frozen=True)
class ArgParams:
    n: int
    d: int
    alpha: int
    beta: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.d, self.alpha, self.beta)


@dataclass(frozen=True)
class ArgViolation:
    """Why a graph failed amply-regular detection; ``pair`` is the first
    offending vertex pair (or vertex, for irregularity) in lexicographic order."""

    reason: str
    pair: tuple[int, ...]
    found: int
    expected: int


def detect_arg(g: Graph) -> ArgParams | ArgViolation:
    """Return ``(n, d, alpha, beta)`` or the first violating pair.

    Raises :class:`NotAmplyRegular` for disconnected or complete input,
    where the parameters are undefined.
    """
    n = g.vertex_count
    if n == 0 or not g.is_connected():
        raise NotAmplyRegular("graph is empty or disconnected")
    if g.edge_count == n * (n - 1) // 2:
        raise NotAmplyRegular("graph is complete; beta is undefined")
    d = g.degree(0)
    for v in range(n):
        if g.degree(v) != d:
            return ArgViolation("irregular", (v,), g.degree(v), d)
    alpha = beta = None
    for u in range(n):
        du = g.distances_from(u)
        nu = g.neighbor_set(u)
        for v in range(u + 1, n):
            if du[v] == 1:
                c = len(nu & g.neighbor_set(v))
                if alpha is None:
                    alpha = c
                elif c != alpha:
                    return ArgViolation("alpha", (u, v), c, alpha)
            elif du[v] == 2:
                c = len(nu & g.neighbor_set(v))
                if beta is None:
                    beta = c
                elif c != beta:
                    return ArgViolation("beta", (u, v), c, beta)
    assert alpha is not None and beta is not None
    return ArgParams(n, d, alpha, beta)


def require_arg(g: Graph) -> ArgParams:
    res = detect_arg(g)
    if isinstance(res, ArgViolation):
        raise NotAmplyRegular(f"not amply regular ({res.reason} at {res.pair}: {res.found} != {res.expected})")
    return res


@dataclass(frozen=True)
class LocalEdgeStructure:
    x: int
    y: int
    delta_xy: tuple[int, ...]
    n_x: tuple[int, ...]
    n_y: tuple[int, ...]


def local_edge_structure(g: Graph, x: int, y: int) -> LocalEdgeStructure:
    if not g.has_edge(x, y):
        raise ValueError(f"({x}, {y}) is not an edge")
    sx, sy = g.neighbor_set(x), g.neighbor_set(y)
    delta = sx & sy
    n_x = sx - delta - {y}
    n_y = sy - delta - {x}
    return LocalEdgeStructure(x, y, tuple(sorted(delta)), tuple(sorted(n_x)), tuple(sorted(n_y)))


def local_graph(g: Graph, x: int) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on ``S_1(x)`` plus the index map back into ``g``."""
    return g.induced(g.neighbors(x))


# --- named families ---------------------------------------------------------


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete needs n >= 1")
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """Left side ``0..a-1``, right side ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise ValueError("complete-bipartite needs both sides >= 1")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def hypercube(d: int) -> Graph:
    """Vertex ``v`` is the bit string of ``v``; neighbors differ in one bit."""
    if d < 1:
        raise ValueError("hypercube needs d >= 1")
    n = 1 << d
    return Graph(n, [(v, v ^ (1 << i)) for v in range(n) for i in range(d) if v < v ^ (1 << i)])


def hamming(n: int, q: int) -> Graph:
    """Words of length n over ``Z_q``, vertex index = base-q value (first
    coordinate most significant)."""
    if n < 1 or q < 2:
        raise ValueError("hamming needs n >= 1 and q >= 2")
    total = q**n
    edges = []
    for v in range(total):
        for pos in range(n):
            w = q ** (n - 1 - pos)
            digit = (v // w) % q
            for c in range(digit + 1, q):
                edges.append((v, v + (c - digit) * w))
    return Graph(total, edges)


def rook(m: int) -> Graph:
    """Cartesian square of ``K_m``; cell (i, j) is vertex ``i*m + j``."""
    if m < 2:
        raise ValueError("rook needs m >= 2")
    return hamming(2, m)


def johnson_vertices(n: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of ``range(n)`` in colex order."""
    return sorted(itertools.combinations(range(n), k), key=lambda s: tuple(reversed(s)))


def johnson(n: int, k: int) -> Graph:
    """k-subsets in colex order, adjacent when they share k-1 elements."""
    if not (k >= 1 and n >= 2 * k):
        raise ValueError("johnson needs n >= 2k >= 2")
    subsets = johnson_vertices(n, k)
    sets = [frozenset(s) for s in subsets]
    edges = [
        (i, j)
        for i in range(len(sets))
        for j in range(i + 1, len(sets))
        if len(sets[i] & sets[j]) == k - 1
    ]
    return Graph(len(sets), edges)


def petersen() -> Graph:
    """Outer 5-cycle 0..4, spokes i-(i+5), inner pentagram on 5..9."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def shrikhande() -> Graph:
    """Cayley graph on ``Z_4 x Z_4`` with connection set
    ``{±(1,0), ±(0,1), ±(1,1)}``; (a, b) is vertex ``4a + b``."""
    gens = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)]
    edges = set()
    for a in range(4):
        for b in range(4):
            u = 4 * a + b
            for da, db in gens:
                v = 4 * ((a + da) % 4) + (b + db) % 4
                edges.add((min(u, v), max(u, v)))
    return Graph(16, sorted(edges))


def icosahedron() -> Graph:
    """0 = top, 1..5 upper pentagon, 6..10 lower pentagon, 11 = bottom."""
    edges = []
    for i in range(5):
        up, up_next = 1 + i, 1 + (i + 1) % 5
        lo, lo_next = 6 + i, 6 + (i + 1) % 5
        edges += [(0, up), (up, up_next), (lo, lo_next), (lo, 11), (up, lo), (up_next, lo)]
    return Graph(12, edges)


FAMILIES = {
    "path": (path, 1),
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "complete-bipartite": (complete_bipartite, 2),
    "hypercube": (hypercube, 1),
    "hamming": (hamming, 2),
    "johnson": (johnson, 2),
    "rook": (rook, 1),
    "petersen": (petersen, 0),
    "shrikhande": (shrikhande, 0),
    "icosahedron": (icosahedron, 0),
}


def generate(family: str, *params: int) -> Graph:
    try:
        fn, arity = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    if len(params) != arity:
        raise ValueError(f"family {family!r} takes {arity} integer parameter(s), got {len(params)}")
    return fn(*(int(p) for p in params))


# --- text format -------------------------------------------------------------


def parse_graph(text: str):
    """Parse the edge-list format; returns ``(graph, signs)`` where ``signs``
    maps ``(u, v)`` to ±1 when a third column is present, else ``None``."""
    header = None
    edges: list[tuple[int, int]] = []
    signs: dict[tuple[int, int], int] = {}
    seen: set[tuple[int, int]] = set()
    signed_lines = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphFormatError(lineno, "header must be 'n m'")
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise GraphFormatError(lineno, "header must contain two integers") from None
            if header[0] < 0 or header[1] < 0:
                raise GraphFormatError(lineno, "n and m must be non-negative")
            continue
        if len(parts) not in (2, 3):
            raise GraphFormatError(lineno, "edge line must be 'u v' or 'u v sign'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(lineno, "edge endpoints must be integers") from None
        n = header[0]
        if u == v:
            raise GraphFormatError(lineno, f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(lineno, f"vertex index out of range [0, {n})")
        if u > v:
            raise GraphFormatError(lineno, "edge must be written with u < v")
        if (u, v) in seen:
            raise GraphFormatError(lineno, f"duplicate edge ({u}, {v})")
        seen.add((u, v))
        edges.append((u, v))
        if len(parts) == 3:
            if parts[2] not in ("+1", "-1"):
                raise GraphFormatError(lineno, "sign must be '+1' or '-1'")
            signs[(u, v)] = int(parts[2])
            signed_lines += 1
    if header is None:
        raise GraphFormatError(1, "missing header")
    if len(edges) != header[1]:
        raise GraphFormatError(lineno if text else 1, f"header declares {header[1]} edges, found {len(edges)}")
    if signed_lines and signed_lines != len(edges):
        raise GraphFormatError(lineno, "sign column must be given on every edge line or none")
    return Graph(header[0], edges), (signs if signed_lines else None)


def read_graph(text: str) -> Graph:
    return parse_graph(text)[0]


def write_graph(g: Graph, signs: dict[tuple[int, int], int] | None = None) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    for u, v in g.edges():
        if signs is None:
            lines.append(f"{u} {v}")
        else:
            lines.append(f"{u} {v} {signs[(u, v)]:+d}")
    return "\n".join(lines) + "\n"
