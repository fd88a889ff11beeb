"""Bakry-Emery curvature of signed graphs with ±1 signatures.

The Gamma_2 form at a vertex is assembled exactly (integer matrices
scaled by 4), reduced to the (d+1)x(d+1) matrix Q(x) either through its
Schur complement or through the explicit entry formulas, and then to the
d x d curvature matrix whose smallest eigenvalue is K_BE(x).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .graph import ArgParams, Graph
from .spectra import Spectrum, eigensolve
from .transport import ConsistencyError

SOUNDNESS_SLACK = 1e-7


class Signature:
    """Edge signs ``sigma: E -> {+1, -1}``, keyed by ``(min, max)``."""

    __slots__ = ("graph", "_signs")

    def __init__(self, g: Graph, signs: Mapping[tuple[int, int], int]):
        table = {}
        for (u, v), s in signs.items():
            if s not in (1, -1):
                raise ValueError(f"sign of ({u}, {v}) must be +1 or -1, got {s}")
            table[(min(u, v), max(u, v))] = int(s)
        if set(table) != set(g.edges()):
            raise ValueError("signature must be defined on exactly the edge set")
        self.graph = g
        self._signs = table

    @classmethod
    def constant(cls, g: Graph, s: int) -> "Signature":
        return cls(g, {e: s for e in g.edges()})

    @classmethod
    def plus(cls, g: Graph) -> "Signature":
        return cls.constant(g, 1)

    @classmethod
    def minus(cls, g: Graph) -> "Signature":
        return cls.constant(g, -1)

    @classmethod
    def random(cls, g: Graph, rng: np.random.Generator) -> "Signature":
        return cls(g, {e: int(rng.choice((-1, 1))) for e in g.edges()})

    def __call__(self, u: int, v: int) -> int:
        return self._signs[(u, v) if u < v else (v, u)]

    def __eq__(self, other) -> bool:
        return isinstance(other, Signature) and self._signs == other._signs

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self._signs)


def switch(sigma: Signature, tau: Mapping[int, int] | list[int]) -> Signature:
    """``sigma'(xy) = tau(x) sigma(xy) tau(y)``."""
    g = sigma.graph
    if any(tau[v] not in (1, -1) for v in range(g.vertex_count)):
        raise ValueError("switching function must be ±1 on every vertex")
    return Signature(g, {(u, v): tau[u] * s * tau[v] for (u, v), s in sigma.as_dict().items()})


def balancing_switch(sigma: Signature) -> list[int] | None:
    """A switching function taking sigma to all +1, or None when sigma is
    unbalanced. Found by propagating signs along BFS trees."""
    g = sigma.graph
    tau = [0] * g.vertex_count
    for root in range(g.vertex_count):
        if tau[root]:
            continue
        tau[root] = 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                want = tau[u] * sigma(u, w)
                if not tau[w]:
                    tau[w] = want
                    queue.append(w)
                elif tau[w] != want:
                    return None
    return tau


def is_balanced(sigma: Signature) -> bool:
    return balancing_switch(sigma) is not None


def connection_laplacian_apply(g: Graph, sigma: Signature, f) -> list:
    """``(Delta^sigma f)(x) = sum_{y ~ x} (sigma_xy f(y) - f(x))``."""
    return [sum((sigma(x, y) * f[y] - f[x] for y in g.neighbors(x)), 0 * f[x]) for x in range(g.vertex_count)]


def gamma_fn(g: Graph, sigma: Signature, f, h) -> list:
    """``Gamma^sigma(f, h)`` as a function on V, straight from the definition
    ``2 Gamma = Delta(f h) - (Delta^sigma f) h - f (Delta^sigma h)``."""
    plus = Signature.plus(g)
    fh = [a * b for a, b in zip(f, h)]
    lfh = connection_laplacian_apply(g, plus, fh)
    lf = connection_laplacian_apply(g, sigma, f)
    lh = connection_laplacian_apply(g, sigma, h)
    return [Fraction(lfh[v] - lf[v] * h[v] - f[v] * lh[v]) / 2 for v in range(g.vertex_count)]


def gamma2_fn(g: Graph, sigma: Signature, f, h, x: int) -> Fraction:
    """``Gamma_2^sigma(f, h)(x)`` from the operator definitions, exact."""
    plus = Signature.plus(g)
    gam = gamma_fn(g, sigma, f, h)
    lf = connection_laplacian_apply(g, sigma, f)
    lh = connection_laplacian_apply(g, sigma, h)
    term = connection_laplacian_apply(g, plus, gam)[x]
    return (term - gamma_fn(g, sigma, lf, h)[x] - gamma_fn(g, sigma, f, lh)[x]) / 2


# --- matrix forms ----------------------------------------------------------------


@dataclass
class LocalFrame:
    """Index layout of ``B_2(x)``: x first, then ``S_1`` then ``S_2`` (both sorted)."""

    x: int
    s1: tuple[int, ...]
    s2: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.x, *self.s1, *self.s2)

    @property
    def b1_size(self) -> int:
        return 1 + len(self.s1)


def local_frame(g: Graph, x: int) -> LocalFrame:
    s1 = g.neighbors(x)
    s1set = g.neighbor_set(x)
    s2 = sorted({z for y in s1 for z in g.neighbors(y) if z != x and z not in s1set})
    return LocalFrame(x, tuple(s1), tuple(s2))


def _gamma_int(frame_idx: dict[int, int], size: int, g: Graph, sigma: Signature, v: int) -> np.ndarray:
    """``2 Gamma^sigma(.,.)(v)`` as an integer matrix: sum over w ~ v of
    c c^T with ``c = sigma_vw e_w - e_v``."""
    out = np.zeros((size, size), dtype=np.int64)
    iv = frame_idx[v]
    for w in g.neighbors(v):
        iw = frame_idx[w]
        s = sigma(v, w)
        out[iw, iw] += 1
        out[iv, iv] += 1
        out[iw, iv] -= s
        out[iv, iw] -= s
    return out


def gamma2_int(g: Graph, sigma: Signature, x: int) -> tuple[np.ndarray, np.ndarray, LocalFrame]:
    """Integer matrices ``(4 Gamma_2(x), 2 Gamma(x))`` over ``B_2(x)``.

    Uses ``2 Gamma_2 = sum_{y~x} (Gamma(y) - Gamma(x)) - L Gamma(x) - Gamma(x) L``
    where ``L`` is the signed Laplacian ``A^sigma - D``; this is the
    polarised form evaluated on all indicator pairs at once.
    """
    frame = local_frame(g, x)
    verts = frame.vertices
    idx = {v: i for i, v in enumerate(verts)}
    size = len(verts)
    gx = _gamma_int(idx, size, g, sigma, x)
    total = np.zeros_like(gx)
    for y in frame.s1:
        total += _gamma_int(idx, size, g, sigma, y) - gx
    lap = np.zeros((size, size), dtype=np.int64)
    # rows outside B_1 only ever meet the B_1 columns of Gamma(x), so
    # edges leaving B_2 can be dropped
    for u in verts:
        iu = idx[u]
        lap[iu, iu] = -g.degree(u)
        for w in g.neighbors(u):
            if w in idx:
                lap[iu, idx[w]] = sigma(u, w)
    four_g2 = total - lap @ gx - gx @ lap
    return four_g2, gx, frame


def gamma2_form(g: Graph, sigma: Signature, x: int) -> np.ndarray:
    """``Gamma_2^sigma(x)`` as an exact Fraction matrix over ``B_2(x)``."""
    four_g2, _, _ = gamma2_int(g, sigma, x)
    return np.vectorize(lambda v: Fraction(int(v), 4), otypes=[object])(four_g2)


def in_degrees(g: Graph, frame: LocalFrame) -> list[int]:
    s1 = set(frame.s1)
    return [sum(1 for y in g.neighbors(z) if y in s1) for z in frame.s2]


def _as_fractions(num: np.ndarray, den: int) -> np.ndarray:
    out = np.empty(num.shape, dtype=object)
    for i, j in np.ndindex(num.shape):
        out[i, j] = Fraction(int(num[i, j]), den)
    return out


def _q_schur_int(four_g2: np.ndarray, frame: LocalFrame) -> tuple[np.ndarray, int]:
    """Integer numerator and denominator of the Schur-complement Q(x)."""
    b = frame.b1_size
    p = four_g2.astype(object)
    p11, p12, p22 = p[:b, :b], p[:b, b:], p[b:, b:]
    if not frame.s2:
        return p11, 4
    diag = [int(p22[k, k]) for k in range(len(frame.s2))]
    lcm = math.lcm(*diag)
    # 4 Q = P11 - P12 diag(1/d^-) P21; scale through by lcm(d^-) to stay integral
    scaled = p12 * np.array([lcm // dk for dk in diag], dtype=object)
    return lcm * p11 - scaled @ p12.T, 4 * lcm


def q_matrix_schur(g: Graph, sigma: Signature, x: int) -> np.ndarray:
    """``Q(x)``: Schur complement of the (diagonal) ``S_2 x S_2`` block of
    ``Gamma_2(x)``. Exact Fractions, order ``1 + d_x``."""
    four_g2, _, frame = gamma2_int(g, sigma, x)
    return _as_fractions(*_q_schur_int(four_g2, frame))


def _common_denominator(q: np.ndarray) -> tuple[np.ndarray, int]:
    den = math.lcm(*(Fraction(v).denominator for v in q.flat))
    return np.array([[int(Fraction(v) * den) for v in row] for row in q], dtype=object), den


def q_matrix_formula(g: Graph, sigma: Signature, x: int) -> np.ndarray:
    """``Q(x)`` from the closed-form entry expressions (each quoted times 4)."""
    d = g.regular_degree()
    if d is None:
        raise ValueError("the Q(x) entry formulas assume a regular graph")
    frame = local_frame(g, x)
    ys, zs = frame.s1, frame.s2
    indeg = in_degrees(g, frame)
    lcm = math.lcm(*indeg) if indeg else 1
    w = [lcm // dk for dk in indeg]  # lcm / d_z^-
    # t[k] = sum_i a_{y_i z_k} sigma_{x y_i} sigma_{y_i z_k}
    t = [sum(sigma(x, y) * sigma(y, z) for y in ys if g.has_edge(y, z)) for z in zs]

    def a(u: int, v: int) -> int:
        return 1 if g.has_edge(u, v) else 0

    def s(u: int, v: int) -> int:
        return sigma(u, v) if g.has_edge(u, v) else 0

    # every entry below is 4 * lcm * Q
    size = 1 + d
    num = np.zeros((size, size), dtype=object)
    num[0, 0] = lcm * (3 * d + d * d) - sum(wk * tk * tk for wk, tk in zip(w, t))
    for i, yi in enumerate(ys, start=1):
        v = lcm * sum(s(x, yj) * s(yj, yi) for yj in ys if yj != yi)
        v -= lcm * 2 * (d + 1) * sigma(x, yi)
        v += 2 * sum(wk * tk * s(yi, z) for wk, tk, z in zip(w, t, zs))
        num[0, i] = num[i, 0] = v
    for i, yi in enumerate(ys, start=1):
        num[i, i] = lcm * (sum(a(yj, yi) for yj in ys if yj != yi) + 2 * (d + 1)) - 4 * sum(
            wk * a(yi, z) for wk, z in zip(w, zs)
        )
        for j in range(i + 1, size):
            yj = ys[j - 1]
            v = lcm * (-4 * s(yi, yj) + 2 * sigma(x, yi) * sigma(x, yj))
            v -= 4 * sum(wk * s(yi, z) * s(yj, z) for wk, z in zip(w, zs))
            num[i, j] = num[j, i] = v
    return _as_fractions(num, 4 * lcm)


# --- curvature matrix ------------------------------------------------------------


@dataclass
class CurvaturePipelineTrace:
    four_gamma2: np.ndarray  # integer, 4 Gamma_2(x) over B_2(x)
    two_gamma: np.ndarray  # integer, 2 Gamma(x) over B_2(x)
    q_numerator: np.ndarray  # integer; Q(x) over B_1(x) is q_numerator / q_denominator
    q_denominator: int
    a_scalar: Fraction
    omega: np.ndarray  # Fraction
    curvature_matrix: np.ndarray  # float, d_x x d_x
    numerator: np.ndarray  # integer; exact matrix is numerator / denominator
    denominator: int
    spectrum: Spectrum
    frame: LocalFrame

    @property
    def k_be(self) -> float:
        return self.spectrum.smallest

    @property
    def q(self) -> np.ndarray:
        return _as_fractions(self.q_numerator, self.q_denominator)

    @property
    def gamma2(self) -> np.ndarray:
        return _as_fractions(self.four_gamma2, 4)

    @property
    def gamma(self) -> np.ndarray:
        return _as_fractions(self.two_gamma, 2)

    @property
    def curvature_matrix_exact(self) -> np.ndarray:
        return _as_fractions(self.numerator, self.denominator)


def b_matrix(d: int) -> np.ndarray:
    """Identity of order d+1 with the first row replaced by ones."""
    b = np.eye(d + 1, dtype=np.int64)
    b[0, :] = 1
    return b


def curvature_matrix(g: Graph, sigma: Signature, x: int, q: np.ndarray | None = None) -> CurvaturePipelineTrace:
    """``A_inf = (2 B Q B^T) minus first row/col - omega a^+ omega^T``.

    B is the identity with a first row of ones, which presumes
    ``sigma(x, y_i) = +1``. Q is first conjugated by
    ``diag(1, sigma(x, y_1), ..., sigma(x, y_d))``, i.e. switched at the
    neighbors so that this holds; K_BE is switching invariant.

    Arithmetic is exact: everything is carried as an integer matrix over a
    single denominator.
    """
    if g.regular_degree() is None:
        raise ValueError("curvature matrix requires a regular graph")
    four_g2, two_gamma, frame = gamma2_int(g, sigma, x)
    if q is None:
        q_num, q_den = _q_schur_int(four_g2, frame)
    else:
        q_num, q_den = _common_denominator(q)
    d = len(frame.s1)
    b = b_matrix(d).astype(object)
    flip = np.array([1] + [sigma(x, y) for y in frame.s1], dtype=object)
    m = 2 * (b @ (q_num * np.outer(flip, flip)) @ b.T)  # 2 B Q B^T = m / q_den
    a, omega, inner = m[0, 0], m[1:, 0], m[1:, 1:]
    if a < 0:
        raise ConsistencyError(f"vertex {x}: a = {Fraction(a, q_den)} < 0")
    if a != 0:
        num, den = inner * a - np.outer(omega, omega), a * q_den
    else:
        num, den = inner, q_den
    g_ = math.gcd(den, *(int(v) for v in num.flat))
    num, den = num // g_, den // g_
    mat = np.array(num.tolist(), dtype=float) / den
    return CurvaturePipelineTrace(
        four_gamma2=four_g2,
        two_gamma=two_gamma,
        q_numerator=q_num,
        q_denominator=q_den,
        a_scalar=Fraction(int(a), q_den),
        omega=np.array([Fraction(int(v), q_den) for v in omega], dtype=object),
        curvature_matrix=mat,
        numerator=num,
        denominator=den,
        spectrum=eigensolve(mat),
        frame=frame,
    )


def soundness_gap(g: Graph, sigma: Signature, x: int, k: float, samples: int = 1000, seed: int = 0) -> float:
    """Smallest ``Gamma_2(f)(x) - k Gamma(f)(x)`` over random unit vectors f
    supported on ``B_2(x)``; non-negative (up to rounding) when CD(k, inf)
    holds at x."""
    four_g2, two_gamma, _ = gamma2_int(g, sigma, x)
    form = four_g2 / 4.0 - k * two_gamma / 2.0
    rng = np.random.default_rng(seed)
    f = rng.standard_normal((samples, form.shape[0]))
    f /= np.linalg.norm(f, axis=1, keepdims=True)
    return float(np.min(((f @ form) * f).sum(axis=1)))


def k_be(g: Graph, sigma: Signature, x: int, validate: bool = True, seed: int = 0) -> float:
    """``K_BE(G, sigma, x, inf)``: smallest eigenvalue of the curvature matrix."""
    k = curvature_matrix(g, sigma, x).k_be
    if validate:
        gap = soundness_gap(g, sigma, x, k, seed=seed + x)
        if gap < -SOUNDNESS_SLACK:
            raise ConsistencyError(f"vertex {x}: CD({k}, inf) fails on a sampled function (gap {gap})")
    return k


def vertex_curvatures(g: Graph, sigma: Signature, jobs: int = 1, validate: bool = True) -> list[float]:
    if jobs > 1 and g.vertex_count > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_k_be_star, [(g, sigma, x, validate) for x in range(g.vertex_count)]))
    return [k_be(g, sigma, x, validate) for x in range(g.vertex_count)]


def _k_be_star(args):
    return k_be(*args)


# --- closed forms on amply regular graphs ------------------------------------------


@dataclass
class ClosedFormInputs:
    params: ArgParams
    local_spectrum: Spectrum


def _neg_part(v: float) -> float:
    return min(0.0, v)


def closed_form_plus(inputs: ClosedFormInputs, d: int | None = None) -> float:
    """K_BE(+, x) on an amply regular graph from the local spectrum."""
    p = inputs.params
    d = p.d if d is None else d
    a, b = p.alpha, p.beta
    lam = inputs.local_spectrum.eigenvalues
    m = float(np.min((lam - a / 2) ** 2))
    return 2 + a / 2 + _neg_part((2 * d * (b - 2) - a * a) / (2 * b) + (2 / b) * m)


def closed_form_minus(inputs: ClosedFormInputs, d: int | None = None) -> float:
    """K_BE(-, x) (all -1 signature) on an amply regular graph."""
    p = inputs.params
    d = p.d if d is None else d
    a, b = p.alpha, p.beta
    lam = inputs.local_spectrum.eigenvalues
    m = float(np.min((lam + b - a / 2) ** 2))
    return 2 + _neg_part((2 * d * (b - 2) - a * a) / (2 * b) + 2.5 * a - 2 * b + (2 / b) * m)
