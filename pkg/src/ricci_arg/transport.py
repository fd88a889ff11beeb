"""Exact optimal transport between local random-walk measures and the
curvature quantities built on it.

All masses, costs and curvature values are :class:`fractions.Fraction`.
A transport problem is scaled by the LCM of its mass denominators and
solved as an integer min-cost flow, so results are exact.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import INF, ArgParams, Graph, local_edge_structure, require_arg

Measure = dict[int, Fraction]
Plan = dict[tuple[int, int], Fraction]


class ConsistencyError(AssertionError):
    """An internal cross-check between two routes disagreed."""


def fmt_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def local_measure(g: Graph, x: int, p) -> Measure:
    """``mu_x^p``: mass p at x and (1-p)/d_x on each neighbor."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    d = g.degree(x)
    if d == 0:
        return {x: Fraction(1)}
    mu = {x: p}
    share = (1 - p) / d
    for y in g.neighbors(x):
        mu[y] = share
    return mu


@dataclass
class TransportResult:
    cost: Fraction
    plan: Plan
    source: Measure
    target: Measure
    # Kantorovich potentials: u[a] + v[b] <= d(a, b), equality on the plan's support
    u: dict[int, Fraction] = field(default_factory=dict)
    v: dict[int, Fraction] = field(default_factory=dict)

    def dual_value(self) -> Fraction:
        return sum(self.source[a] * self.u[a] for a in self.source) + sum(
            self.target[b] * self.v[b] for b in self.target
        )


def _check_measure(mu: Measure, n: int, name: str) -> None:
    if any(m < 0 for m in mu.values()):
        raise ValueError(f"{name} has negative mass")
    if any(not 0 <= v < n for v in mu):
        raise ValueError(f"{name} is supported outside the graph")
    if sum(mu.values(), Fraction(0)) != 1:
        raise ValueError(f"{name} does not sum to 1")


def _min_cost_transport(supply: list[int], demand: list[int], cost: list[list[int]]):
    """Integer transportation problem by successive shortest paths.

    Dijkstra runs on reduced costs with node potentials; ties go to the
    lowest index. Returns the flow matrix.
    """
    m, k = len(supply), len(demand)
    flow = [[0] * k for _ in range(m)]
    left = supply[:]
    right = demand[:]
    pot = [0] * (m + k)  # left nodes 0..m-1, right nodes m..m+k-1
    big = math.inf
    while any(left):
        dist = [big] * (m + k)
        prev = [-1] * (m + k)
        done = [False] * (m + k)
        for i in range(m):
            if left[i] > 0:
                dist[i] = 0
        while True:
            best, node = big, -1
            for a in range(m + k):
                if not done[a] and dist[a] < best:
                    best, node = dist[a], a
            if node < 0:
                break
            done[node] = True
            if node < m:
                i = node
                for j in range(k):
                    nd = best + cost[i][j] + pot[i] - pot[m + j]
                    if nd < dist[m + j]:
                        dist[m + j] = nd
                        prev[m + j] = i
            else:
                j = node - m
                for i in range(m):
                    if flow[i][j] > 0:
                        nd = best - cost[i][j] + pot[m + j] - pot[i]
                        if nd < dist[i]:
                            dist[i] = nd
                            prev[i] = node
        sink, sd = -1, big
        for j in range(k):
            if right[j] > 0 and dist[m + j] < sd:
                sink, sd = j, dist[m + j]
        if sink < 0:
            raise RuntimeError("transport problem infeasible")
        finite_max = max(d for d in dist if d < big)
        for a in range(m + k):
            pot[a] += dist[a] if dist[a] < big else finite_max
        # walk back to the path start, collecting the bottleneck
        path = []
        node = m + sink
        amount = right[sink]
        while True:
            p = prev[node]
            if node >= m:
                path.append((p, node - m, +1))
            else:
                j = p - m
                path.append((node, j, -1))
                amount = min(amount, flow[node][j])
            node = p
            if node < m and prev[node] == -1:
                break
        start = node
        amount = min(amount, left[start])
        for i, j, sgn in path:
            flow[i][j] += sgn * amount
        left[start] -= amount
        right[sink] -= amount
    return flow


def _dual_potentials(flow, cost):
    """Shortest-path distances on the final residual graph (Bellman-Ford
    from a virtual root). These certify optimality: for every pair
    ``dist_right[j] - dist_left[i] <= cost[i][j]``, with equality wherever
    flow is positive."""
    m, k = len(cost), len(cost[0]) if cost else 0
    dist = [0] * (m + k)
    arcs = [(i, m + j, cost[i][j]) for i in range(m) for j in range(k)]
    arcs += [(m + j, i, -cost[i][j]) for i in range(m) for j in range(k) if flow[i][j] > 0]
    for _ in range(m + k):
        changed = False
        for a, b, c in arcs:
            if dist[a] + c < dist[b]:
                dist[b] = dist[a] + c
                changed = True
        if not changed:
            break
    else:
        raise RuntimeError("negative residual cycle; flow is not optimal")
    return dist[:m], dist[m:]


def wasserstein(g: Graph, mu1: Measure, mu2: Measure) -> TransportResult:
    """Exact ``W_1(mu1, mu2)`` with the graph's path metric as cost."""
    _check_measure(mu1, g.vertex_count, "mu1")
    _check_measure(mu2, g.vertex_count, "mu2")
    src = sorted(v for v, m in mu1.items() if m > 0)
    dst = sorted(v for v, m in mu2.items() if m > 0)
    cost = []
    for a in src:
        row = g.distances_from(a)
        r = [row[b] for b in dst]
        if any(c == INF for c in r):
            raise ValueError("measures have support in different components")
        cost.append([int(c) for c in r])
    scale = 1
    for q in [*mu1.values(), *mu2.values()]:
        scale = math.lcm(scale, q.denominator)
    supply = [int(mu1[a] * scale) for a in src]
    demand = [int(mu2[b] * scale) for b in dst]
    flow = _min_cost_transport(supply, demand, cost)
    plan: Plan = {}
    total = 0
    for i, a in enumerate(src):
        for j, b in enumerate(dst):
            if flow[i][j]:
                plan[(a, b)] = Fraction(flow[i][j], scale)
                total += flow[i][j] * cost[i][j]
    dl, dr = _dual_potentials(flow, cost)
    u = {a: Fraction(-dl[i]) for i, a in enumerate(src)}
    v = {b: Fraction(dr[j]) for j, b in enumerate(dst)}
    return TransportResult(Fraction(total, scale), plan, dict(mu1), dict(mu2), u, v)


def plan_cost(g: Graph, plan: Plan) -> Fraction:
    return sum((m * int(g.distance(a, b)) for (a, b), m in plan.items()), Fraction(0))


def plan_marginals(plan: Plan) -> tuple[Measure, Measure]:
    rows: Measure = {}
    cols: Measure = {}
    for (a, b), m in plan.items():
        rows[a] = rows.get(a, Fraction(0)) + m
        cols[b] = cols.get(b, Fraction(0)) + m
    return rows, cols


def is_transport_plan(plan: Plan, mu1: Measure, mu2: Measure) -> bool:
    if any(m < 0 for m in plan.values()):
        return False
    rows, cols = plan_marginals(plan)
    strip = lambda mu: {k: v for k, v in mu.items() if v != 0}  # noqa: E731
    return strip(rows) == strip(mu1) and strip(cols) == strip(mu2)


def format_plan(plan: Plan) -> str:
    """Plan dump: one ``u v num/den`` line per positive entry, sorted."""
    return "".join(f"{a} {b} {fmt_rational(m)}\n" for (a, b), m in sorted(plan.items()) if m > 0)


def ollivier_p(g: Graph, x: int, y: int, p) -> Fraction:
    """``kappa_p(x, y) = 1 - W_1(mu_x^p, mu_y^p) / d(x, y)``."""
    if x == y:
        raise ValueError("x and y must be distinct")
    dxy = g.distance(x, y)
    if dxy == INF:
        raise ValueError("x and y lie in different components")
    w = wasserstein(g, local_measure(g, x, p), local_measure(g, y, p)).cost
    return 1 - w / int(dxy)


def lly_curvature(g: Graph, x: int, y: int) -> Fraction:
    """Lin-Lu-Yau curvature of an edge of a regular graph.

    Computed as ``2 kappa_{1/2}`` and checked against
    ``(d+1)/d kappa_{1/(d+1)}``; the two must agree exactly.
    """
    d = g.regular_degree()
    if d is None:
        raise ValueError("Lin-Lu-Yau curvature is only offered on regular graphs")
    if not g.has_edge(x, y):
        raise ValueError(f"({x}, {y}) is not an edge")
    k_half = 2 * ollivier_p(g, x, y, Fraction(1, 2))
    k_lazy = Fraction(d + 1, d) * ollivier_p(g, x, y, Fraction(1, d + 1))
    if k_half != k_lazy:
        raise ConsistencyError(f"edge ({x},{y}): 2*kappa_1/2 = {k_half} but (d+1)/d*kappa_1/(d+1) = {k_lazy}")
    return k_half


def edge_curvatures(g: Graph, jobs: int = 1) -> dict[tuple[int, int], Fraction]:
    edges = g.edges()
    if jobs > 1 and len(edges) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            vals = list(ex.map(_lly_star, [(g, u, v) for u, v in edges], chunksize=16))
    else:
        vals = [lly_curvature(g, u, v) for u, v in edges]
    return dict(zip(edges, vals))


def _lly_star(args):
    return lly_curvature(*args)


# --- bipartite matchings -----------------------------------------------------


def hopcroft_karp(n_left: int, n_right: int, adj: list[list[int]]) -> list[int]:
    """Maximum matching; returns ``match_left[i]`` (right index or -1).
    Neighbor lists are scanned in the given order."""
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    while True:
        dist = [-1] * n_left
        queue = deque()
        for i in range(n_left):
            if match_l[i] < 0:
                dist[i] = 0
                queue.append(i)
        found = False
        while queue:
            i = queue.popleft()
            for j in adj[i]:
                k = match_r[j]
                if k < 0:
                    found = True
                elif dist[k] < 0:
                    dist[k] = dist[i] + 1
                    queue.append(k)
        if not found:
            return match_l

        def dfs(i: int) -> bool:
            for j in adj[i]:
                k = match_r[j]
                if k < 0 or (dist[k] == dist[i] + 1 and dfs(k)):
                    match_l[i] = j
                    match_r[j] = i
                    return True
            dist[i] = -1
            return False

        for i in range(n_left):
            if match_l[i] < 0:
                dfs(i)


def hall_violator(n_left: int, adj: list[list[int]], match_l: list[int]) -> list[int]:
    """Left vertices reachable from an unmatched left vertex by alternating
    paths; when the matching is maximum and not perfect this set S has
    ``|N(S)| < |S|``."""
    match_r: dict[int, int] = {j: i for i, j in enumerate(match_l) if j >= 0}
    start = next((i for i in range(n_left) if match_l[i] < 0), None)
    if start is None:
        return []
    seen = {start}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in adj[i]:
            k = match_r.get(j)
            if k is not None and k not in seen:
                seen.add(k)
                queue.append(k)
    return sorted(seen)


@dataclass
class MatchingVerdict:
    curvature: Fraction
    upper_bound: Fraction
    curvature_attains_max: bool
    has_perfect_matching: bool
    matching: list[tuple[int, int]]  # (v in N_x, w in N_y) when perfect
    hall_set: list[int]  # N_x vertices violating Hall's condition otherwise


def matching_characterization(g: Graph, x: int, y: int) -> MatchingVerdict:
    """Compare ``kappa_LLY(x,y) == (2 + |Delta_xy|)/d`` with the existence of
    a perfect matching between ``N_x`` and ``N_y``; both answers must agree."""
    d = g.regular_degree()
    if d is None:
        raise ValueError("graph must be regular")
    les = local_edge_structure(g, x, y)
    kappa = lly_curvature(g, x, y)
    upper = Fraction(2 + len(les.delta_xy), d)
    if kappa > upper:
        raise ConsistencyError(f"edge ({x},{y}): curvature {kappa} exceeds (2+|Delta|)/d = {upper}")
    idx = {w: j for j, w in enumerate(les.n_y)}
    adj = [[idx[w] for w in g.neighbors(v) if w in idx] for v in les.n_x]
    match = hopcroft_karp(len(les.n_x), len(les.n_y), adj)
    perfect = all(j >= 0 for j in match)
    attains = kappa == upper
    if attains != perfect:
        raise ConsistencyError(f"edge ({x},{y}): curvature-maximality {attains} but perfect matching {perfect}")
    pairs = [(les.n_x[i], les.n_y[j]) for i, j in enumerate(match)] if perfect else []
    hall = [] if perfect else [les.n_x[i] for i in hall_violator(len(les.n_x), adj, match)]
    return MatchingVerdict(kappa, upper, attains, perfect, pairs, hall)


# --- the auxiliary multigraph H_G and Koenig decomposition ---------------------


@dataclass
class BipartiteMultigraph:
    """Left side ``N_x + Delta_xy``; right side ``N_y + Delta'_xy`` where a
    right vertex ``(z, True)`` is the copy z' of ``z in Delta_xy``.

    ``units`` lists every unit of multiplicity as ``(left_idx, right_idx,
    edge_class)`` in construction order, edge classes numbered 1..5.
    """

    left: tuple[int, ...]
    right: tuple[tuple[int, bool], ...]
    units: list[tuple[int, int, int]]

    def multiplicity(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for i, j, _ in self.units:
            out[(i, j)] = out.get((i, j), 0) + 1
        return out

    def left_degrees(self) -> list[int]:
        deg = [0] * len(self.left)
        for i, _, _ in self.units:
            deg[i] += 1
        return deg

    def right_degrees(self) -> list[int]:
        deg = [0] * len(self.right)
        for _, j, _ in self.units:
            deg[j] += 1
        return deg

    def regularity(self) -> int | None:
        degs = set(self.left_degrees()) | set(self.right_degrees())
        if len(self.left) != len(self.right) or len(degs) > 1:
            return None
        return degs.pop() if degs else 0

    def class_count(self, cls: int) -> int:
        return sum(1 for *_, c in self.units if c == cls)


def _arg_edge_params(g: Graph, params: ArgParams | None) -> ArgParams:
    params = params or require_arg(g)
    if params.beta == 1 or params.beta < params.alpha:
        raise ValueError(f"requires 1 != beta >= alpha, got alpha={params.alpha}, beta={params.beta}")
    return params


def build_hg(g: Graph, x: int, y: int, params: ArgParams | None = None) -> BipartiteMultigraph:
    params = _arg_edge_params(g, params)
    les = local_edge_structure(g, x, y)
    zs = les.delta_xy
    left = les.n_x + zs
    right = tuple((w, False) for w in les.n_y) + tuple((z, True) for z in zs)
    li = {v: i for i, v in enumerate(left)}
    ri = {key: j for j, key in enumerate(right)}
    units: list[tuple[int, int, int]] = []
    for v in les.n_x:  # E1: N_x - N_y edges of G
        units += [(li[v], ri[(w, False)], 1) for w in les.n_y if g.has_edge(v, w)]
    for v in les.n_x:  # E2: v - z'_i when v ~ z_i
        units += [(li[v], ri[(z, True)], 2) for z in zs if g.has_edge(v, z)]
    for z in zs:  # E3: z_i - w when z_i ~ w
        units += [(li[z], ri[(w, False)], 3) for w in les.n_y if g.has_edge(z, w)]
    for z in zs:  # E4: z_i - z'_j when z_i ~ z_j
        units += [(li[z], ri[(z2, True)], 4) for z2 in zs if g.has_edge(z, z2)]
    for z in zs:  # E5: beta - alpha parallel copies of z_i - z'_i
        units += [(li[z], ri[(z, True)], 5)] * (params.beta - params.alpha)
    h = BipartiteMultigraph(left, right, units)
    if h.regularity() != params.beta - 1:
        raise ConsistencyError(f"H_G for edge ({x},{y}) is not (beta-1)-regular")
    return h


@dataclass
class Matching:
    units: list[int]  # indices into BipartiteMultigraph.units

    def pairs(self, h: BipartiteMultigraph) -> list[tuple[int, int, int]]:
        return [h.units[u] for u in self.units]

    def class_count(self, h: BipartiteMultigraph, cls: int) -> int:
        return sum(1 for u in self.units if h.units[u][2] == cls)


def _perfect_matching(n: int, adj: list[list[int]]) -> list[int] | None:
    """Augmenting-path (Kuhn) perfect matching, lowest index first."""
    match_r = [-1] * n

    def augment(i: int, seen: list[bool]) -> bool:
        for j in adj[i]:
            if not seen[j]:
                seen[j] = True
                if match_r[j] < 0 or augment(match_r[j], seen):
                    match_r[j] = i
                    return True
        return False

    for i in range(n):
        if not augment(i, [False] * n):
            return None
    match_l = [-1] * n
    for j, i in enumerate(match_r):
        match_l[i] = j
    return match_l


def konig_decompose(h: BipartiteMultigraph) -> list[Matching]:
    """Split a k-regular bipartite multigraph into k perfect matchings.

    Repeatedly finds a perfect matching on the pairs that still carry
    multiplicity and removes one unit from each matched pair.
    """
    k = h.regularity()
    if k is None:
        raise ValueError("multigraph is not regular")
    n = len(h.left)
    pool: dict[tuple[int, int], deque[int]] = {}
    for u, (i, j, _) in enumerate(h.units):
        pool.setdefault((i, j), deque()).append(u)
    out = []
    for _ in range(k):
        adj = [[j for j in range(n) if pool.get((i, j))] for i in range(n)]
        match = _perfect_matching(n, adj)
        if match is None:
            raise ConsistencyError("no perfect matching in a regular bipartite multigraph")
        out.append(Matching([pool[(i, j)].popleft() for i, j in enumerate(match)]))
    return out


@dataclass
class CertifiedBound:
    bound: Fraction  # curvature lower bound implied by the plan
    theorem_bound: Fraction  # (2 + ceil(alpha(beta-alpha)/(beta-1))) / d
    curvature: Fraction
    plan: Plan
    plan_cost: Fraction
    e5_used: int
    e5_required: int
    matching: list[tuple[int, int, int]]


def e5_share(alpha: int, beta: int) -> int:
    """``ceil(alpha (beta - alpha) / (beta - 1))``."""
    return -(-alpha * (beta - alpha) // (beta - 1))


def certified_lower_bound(g: Graph, x: int, y: int, params: ArgParams | None = None) -> CertifiedBound:
    """Build the explicit plan between ``mu_x^{1/(d+1)}`` and
    ``mu_y^{1/(d+1)}`` from a Koenig matching of ``H_G`` that keeps the most
    mass in place, and certify the resulting curvature lower bound."""
    params = _arg_edge_params(g, params)
    d, a, b = params.d, params.alpha, params.beta
    h = build_hg(g, x, y, params)
    matchings = konig_decompose(h)
    best = max(matchings, key=lambda m: m.class_count(h, 5))  # first maximum wins
    used = best.class_count(h, 5)
    need = e5_share(a, b)
    if used < need:
        raise ConsistencyError(f"best matching has {used} E5 units, pigeonhole requires {need}")
    share = Fraction(1, d + 1)
    plan: Plan = {(x, x): share, (y, y): share}
    for i, j, _ in best.pairs(h):
        key = (h.left[i], h.right[j][0])
        plan[key] = plan.get(key, Fraction(0)) + share
    mu_x, mu_y = local_measure(g, x, share), local_measure(g, y, share)
    if not is_transport_plan(plan, mu_x, mu_y):
        raise ConsistencyError(f"plan for edge ({x},{y}) does not reproduce the marginals")
    cost = plan_cost(g, plan)
    implied = Fraction(d + 1, d) * (1 - cost)
    theorem = Fraction(2 + need, d)
    if implied < theorem:
        raise ConsistencyError(f"plan bound {implied} below {theorem}")
    kappa = lly_curvature(g, x, y)
    if kappa < implied:
        raise ConsistencyError(f"edge ({x},{y}): curvature {kappa} below certified bound {implied}")
    return CertifiedBound(implied, theorem, kappa, plan, cost, used, need, best.pairs(h))
