"""Edge colorings of K_{c x s}, the psi construction, and K_{2,m} checks.

Vertex (a, i) with part a in 1..c and slot i in 1..s has flat index
(a-1)*s + (i-1). Colors are 1..k; 0 marks intra-part pairs and the diagonal.
For psi-colorings color 1 encodes +1 and color 2 encodes -1.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import AsymmetricMatrix, BudgetExceeded, InvalidInput, NotStronglyRegular
from .hadamard import SignMatrix, alpha_of, pair_partition
from .srg import Graph, SrgParams, neighborhood_partition, srg_params, theta

DEFAULT_BUDGET = 2**26
BUDGET_ENV = "RAMSEY_FORGE_BUDGET"

PLUS, MINUS = 1, 2


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInput(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise InvalidInput(f"{BUDGET_ENV} must be positive")
    return value


class MultipartiteColoring:
    """Immutable k-coloring of the edges of K_{c x s}."""

    def __init__(self, c: int, s: int, num_colors: int, colors):
        if c < 1 or s < 1:
            raise InvalidInput("need c >= 1 and s >= 1")
        if num_colors < 1:
            raise InvalidInput("need at least one color")
        N = c * s
        a = np.array(colors, dtype=np.int8)
        if a.shape != (N, N):
            raise InvalidInput(f"color matrix must be {N}x{N}, got {a.shape}")
        part = np.arange(N) // s
        cross = part[:, None] != part[None, :]
        if np.any(a[~cross] != 0):
            raise InvalidInput("intra-part pairs must be uncolored")
        if np.any((a[cross] < 1) | (a[cross] > num_colors)):
            raise InvalidInput(f"cross-part colors must lie in 1..{num_colors}")
        if not np.array_equal(a, a.T):
            raise InvalidInput("color matrix must be symmetric")
        a.flags.writeable = False
        self.c, self.s, self.num_colors = c, s, num_colors
        self._colors = a
        self._nbrs = None

    @classmethod
    def from_edge_colors(cls, c: int, s: int, num_colors: int, edge_colors) -> MultipartiteColoring:
        edges = canonical_edges(c, s)
        edge_colors = list(edge_colors)
        if len(edge_colors) != len(edges):
            raise InvalidInput(f"expected {len(edges)} edge colors, got {len(edge_colors)}")
        a = np.zeros((c * s, c * s), dtype=np.int8)
        for (u, v), w in zip(edges, edge_colors):
            a[u, v] = a[v, u] = w
        return cls(c, s, num_colors, a)

    @property
    def num_vertices(self) -> int:
        return self.c * self.s

    @property
    def colors(self) -> np.ndarray:
        return self._colors

    def color(self, u, v) -> int:
        return int(self._colors[self.index(u), self.index(v)])

    def edge_colors(self) -> list[int]:
        return [int(self._colors[u, v]) for u, v in canonical_edges(self.c, self.s)]

    def index(self, v) -> int:
        """Flat index of a vertex given as (part, slot) or as an int."""
        if isinstance(v, (tuple, list)):
            a, i = v
            if not (1 <= a <= self.c and 1 <= i <= self.s):
                raise InvalidInput(f"vertex {v} outside K_{{{self.c}x{self.s}}}")
            return (a - 1) * self.s + (i - 1)
        v = int(v)
        if not 0 <= v < self.num_vertices:
            raise InvalidInput(f"vertex {v} out of range")
        return v

    def label(self, v: int) -> tuple[int, int]:
        return (v // self.s + 1, v % self.s + 1)

    def neighbor_sets(self) -> list[list[int]]:
        """nbrs[w-1][v] is the bitset of color-w neighbours of v."""
        if self._nbrs is None:
            weights = [1 << j for j in range(self.num_vertices)]
            self._nbrs = [
                [sum(weights[j] for j in np.flatnonzero(row == w)) for row in self._colors]
                for w in range(1, self.num_colors + 1)
            ]
        return self._nbrs

    def __eq__(self, other):
        if not isinstance(other, MultipartiteColoring):
            return NotImplemented
        return (self.c, self.s, self.num_colors) == (other.c, other.s, other.num_colors) and np.array_equal(
            self._colors, other._colors
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"MultipartiteColoring(c={self.c}, s={self.s}, num_colors={self.num_colors})"


def canonical_edges(c: int, s: int) -> list[tuple[int, int]]:
    """Cross-part pairs (u, v), u < v, in lexicographic order."""
    N = c * s
    return [(u, v) for u in range(N) for v in range(u + 1, N) if u // s != v // s]


# -- psi construction -------------------------------------------------------

def build_psi(G: Graph, H: SignMatrix) -> MultipartiteColoring:
    """psi((a,i),(b,j)) = h_ij if ab is an edge of G, else -h_ij."""
    if not H.symmetric:
        raise AsymmetricMatrix("psi needs a symmetric sign matrix")
    if H.order < 2:
        raise InvalidInput("psi needs a matrix of order >= 2")
    try:
        srg_params(G)
    except NotStronglyRegular as exc:
        raise InvalidInput(f"graph is not strongly regular: {exc}") from exc
    n = G.n
    sign = -np.ones((n, n), dtype=np.int64)
    for u, v in G.edges():
        sign[u, v] = sign[v, u] = 1
    np.fill_diagonal(sign, 0)
    psi = np.kron(sign, H.entries.astype(np.int64))
    colors = np.where(psi == 1, PLUS, np.where(psi == -1, MINUS, 0))
    return MultipartiteColoring(n, H.order, 2, colors)


# -- delta and certificates -------------------------------------------------

def delta(col: MultipartiteColoring, v1, v2, w: int) -> int:
    """Number of vertices joined to both v1 and v2 by color-w edges."""
    u, v = col.index(v1), col.index(v2)
    if u == v:
        raise InvalidInput("vertices must be distinct")
    if not 1 <= w <= col.num_colors:
        raise InvalidInput(f"color must lie in 1..{col.num_colors}")
    nb = col.neighbor_sets()[w - 1]
    return (nb[u] & nb[v]).bit_count()


def delta_matrix(col: MultipartiteColoring, w: int) -> np.ndarray:
    """All-pairs delta for one color (exact int64 matrix product)."""
    M = (col.colors == w).astype(np.int64)
    return M @ M


@dataclass(frozen=True)
class AvoidanceCertificate:
    target: tuple[int, int]
    max_delta: int
    witness: tuple[tuple[int, int], tuple[int, int], int]  # (v1, v2, color), 1-based labels
    verdict: str
    c: int = 0
    s: int = 0
    num_colors: int = 0

    @property
    def avoided(self) -> bool:
        return self.verdict == "avoided"


def max_delta(col: MultipartiteColoring) -> tuple[int, int, int, int]:
    """(value, u, v, color) maximising delta; ties go to the smallest (u, v, color)."""
    N = col.num_vertices
    if N < 2:
        raise InvalidInput("need at least two vertices")
    upper = np.triu(np.ones((N, N), dtype=bool), 1)
    best = None
    for w in range(1, col.num_colors + 1):
        D = np.where(upper, delta_matrix(col, w), -1)
        value = int(D.max())
        u, v = np.unravel_index(int(np.argmax(D)), D.shape)
        cand = (-value, int(u), int(v), w)
        if best is None or cand < best:
            best = cand
    value, u, v, w = best
    return -value, u, v, w


def certify_avoidance(col: MultipartiteColoring, m: int) -> AvoidanceCertificate:
    """Exact check for a monochromatic K_{2,m}: one exists iff some delta >= m."""
    if m < 1:
        raise InvalidInput("m must be >= 1")
    value, u, v, w = max_delta(col)
    verdict = "avoided" if value <= m - 1 else "violated"
    return AvoidanceCertificate(
        (2, m), value, (col.label(u), col.label(v), w), verdict, col.c, col.s, col.num_colors
    )


def psi_bound(params: SrgParams, H: SignMatrix) -> dict:
    """theta*zeta (intermediate claim) and theta*(zeta+alpha) (final bound)."""
    th = theta(params)
    zeta, alpha = H.order, alpha_of(H).alpha
    return {"theta": th, "zeta": zeta, "alpha": alpha, "theta_zeta": th * zeta, "theta_zeta_alpha": th * (zeta + alpha)}


def case_formula(G: Graph, H: SignMatrix, v1, v2, w: int) -> int:
    """delta of the psi-coloring of (G, H), from partition counts alone.

    v1 = (a, i), v2 = (b, j) are 1-based labels. Case 1 (a != b, i = j):
    |G1|#{h_il = w} + |G2|#{h_il = -w}. Case 2 (a = b): |I1|k + |I2|kbar for
    w = +1. Case 3: |G1||I1| + |G2||I2| + |G3||I4| + |G4||I3| for w = +1.
    For w = -1 the roles of I1/I2 and I3/I4 swap.
    """
    (a, i), (b, j) = v1, v2
    if (a, i) == (b, j):
        raise InvalidInput("vertices must be distinct")
    sign = 1 if w == PLUS else -1
    if a == b:
        k = G.degree(a - 1)
        kbar = G.n - k - 1
        P = pair_partition(H, i, j)
        same, opp = (P.i1, P.i2) if sign == 1 else (P.i2, P.i1)
        return same * k + opp * kbar
    part = neighborhood_partition(G, a - 1, b - 1)
    if i == j:
        plus = int(np.sum(H.entries[i - 1] == 1))
        same, opp = (plus, H.order - plus) if sign == 1 else (H.order - plus, plus)
        return part.g1 * same + part.g2 * opp
    P = pair_partition(H, i, j)
    if sign == 1:
        return part.g1 * P.i1 + part.g2 * P.i2 + part.g3 * P.i4 + part.g4 * P.i3
    return part.g1 * P.i2 + part.g2 * P.i1 + part.g3 * P.i3 + part.g4 * P.i4


# -- exhaustive searches ----------------------------------------------------

def find_mono_biclique(col: MultipartiteColoring, a: int, b: int, w: int, budget: int | None = None):
    """Search for disjoint A (|A| = a), B (|B| = b) with every A-B pair colored w.

    Returns (A, B) as tuples of 1-based labels, lexicographically smallest A
    first, or None. Raises BudgetExceeded once more than ``budget`` search
    nodes would be visited.
    """
    if a < 1 or b < 1:
        raise InvalidInput("biclique sides must be >= 1")
    if not 1 <= w <= col.num_colors:
        raise InvalidInput(f"color must lie in 1..{col.num_colors}")
    budget = default_budget() if budget is None else budget
    nb = col.neighbor_sets()[w - 1]
    N = col.num_vertices
    full = (1 << N) - 1
    nodes = 0
    chosen: list[int] = []

    def dfs(start: int, common: int):
        nonlocal nodes
        if len(chosen) == a:
            return common
        for x in range(start, N - (a - len(chosen)) + 1):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"biclique search exceeded {budget} nodes", budget=budget)
            nxt = common & nb[x]
            if nxt.bit_count() < b:
                continue
            chosen.append(x)
            found = dfs(x + 1, nxt)
            if found is not None:
                return found
            chosen.pop()
        return None

    common = dfs(0, full)
    if common is None:
        return None
    B = []
    while len(B) < b:
        low = common & -common
        B.append(low.bit_length() - 1)
        common ^= low
    return tuple(col.label(x) for x in chosen), tuple(col.label(y) for y in B)


@dataclass
class RamseySearchResult:
    c: int
    s: int
    m: int
    num_colors: int
    verdict: str  # "avoiding" or "forced"
    coloring: MultipartiteColoring | None
    nodes: int
    edges: int = field(default=0)


class _Search:
    """Backtracking over canonical edges with delta pruning."""

    def __init__(self, c: int, s: int, m: int, k: int, budget: int):
        self.edges = canonical_edges(c, s)
        self.N = c * s
        self.m, self.k, self.budget = m, k, budget
        self.nbrs = [[0] * self.N for _ in range(k)]
        self.assignment: list[int] = []
        self.nodes = 0

    def _bits(self, x: int):
        while x:
            low = x & -x
            yield low.bit_length() - 1
            x ^= low

    def place(self, idx: int, w: int) -> bool:
        """Color edge idx with w; return False (and undo) if some delta reaches m."""
        u, v = self.edges[idx]
        nb = self.nbrs[w - 1]
        nb[u] |= 1 << v
        nb[v] |= 1 << u
        m = self.m
        nu, nv = nb[u], nb[v]
        ok = True
        for x in self._bits(nv & ~(1 << u)):
            if (nu & nb[x]).bit_count() >= m:
                ok = False
                break
        if ok:
            for y in self._bits(nu & ~(1 << v)):
                if (nv & nb[y]).bit_count() >= m:
                    ok = False
                    break
        if not ok:
            nb[u] &= ~(1 << v)
            nb[v] &= ~(1 << u)
        return ok

    def unplace(self, idx: int, w: int) -> None:
        u, v = self.edges[idx]
        nb = self.nbrs[w - 1]
        nb[u] &= ~(1 << v)
        nb[v] &= ~(1 << u)

    def run(self, prefix: tuple[int, ...]) -> list[int] | None:
        for idx, w in enumerate(prefix):
            self.nodes += 1
            if not self.place(idx, w):
                return None
        self.assignment = list(prefix)
        return self._dfs(len(prefix))

    def _dfs(self, idx: int) -> list[int] | None:
        # explicit stack: next color to try at each depth
        E = len(self.edges)
        if idx == E:
            return list(self.assignment)
        base = idx
        trial = [1]
        while trial:
            depth = base + len(trial) - 1
            w = trial[-1]
            if w > self.k:
                trial.pop()
                if trial:
                    prev = depth - 1
                    self.unplace(prev, self.assignment.pop())
                    trial[-1] += 1
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(f"exhaustive search exceeded {self.budget} nodes", budget=self.budget)
            if self.place(depth, w):
                self.assignment.append(w)
                if depth + 1 == E:
                    return list(self.assignment)
                trial.append(1)
            else:
                trial[-1] += 1
        return None


def _search_prefix(args):
    c, s, m, k, budget, prefix = args
    search = _Search(c, s, m, k, budget)
    found = search.run(prefix)
    return found, search.nodes


def exhaustive_ramsey(
    c: int,
    s: int,
    m: int,
    k: int = 2,
    budget: int | None = None,
    workers: int = 1,
    split_depth: int = 4,
) -> RamseySearchResult:
    """Decide whether some k-coloring of K_{c x s} has no monochromatic K_{2,m}.

    The first edge is fixed to color 1 (color permutation symmetry). Search
    nodes are counted against ``budget``; running out raises BudgetExceeded.
    With ``workers > 1`` subtrees below fixed edge-color prefixes run in a
    process pool; the reported coloring is the lexicographically smallest
    avoiding one either way.
    """
    if c < 2 or s < 1:
        raise InvalidInput("need c >= 2 and s >= 1")
    if m < 1:
        raise InvalidInput("m must be >= 1")
    if k < 1:
        raise InvalidInput("need at least one color")
    budget = default_budget() if budget is None else budget
    edges = canonical_edges(c, s)
    E = len(edges)

    def result(found, nodes):
        col = MultipartiteColoring.from_edge_colors(c, s, k, found) if found is not None else None
        return RamseySearchResult(c, s, m, k, "avoiding" if col is not None else "forced", col, nodes, E)

    if workers <= 1 or E <= 1:
        found, nodes = _search_prefix((c, s, m, k, budget, (1,) if E else ()))
        return result(found, nodes)

    depth = min(split_depth, E)
    prefixes = [(1,) + rest for rest in product(range(1, k + 1), repeat=depth - 1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(_search_prefix, [(c, s, m, k, budget, p) for p in prefixes]))
    total = 0
    for found, nodes in outcomes:
        total += nodes
        if total > budget:
            raise BudgetExceeded(f"exhaustive search exceeded {budget} nodes", budget=budget)
        if found is not None:
            return result(found, total)
    return result(None, total)
