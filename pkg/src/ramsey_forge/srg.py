"""Strongly regular graphs: generators, exhaustive parameter checks, theta.

Graphs store one Python-int bitset per vertex; common-neighbour counts are
popcounts of ANDed rows. Vertices are 0-based internally and 1-based in the
text format.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DegenerateInput, InternalAssertionFailure, InvalidInput, NotStronglyRegular, WrongResidue
from .gf import FieldSpec, chi_table, difference_indices


class Graph:
    """Simple undirected graph on vertices 0..n-1, immutable."""

    __slots__ = ("_n", "_adj")

    def __init__(self, n: int, adjacency):
        adj = tuple(int(row) for row in adjacency)
        if len(adj) != n:
            raise InvalidInput(f"expected {n} adjacency rows, got {len(adj)}")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full or row >> v & 1:
                raise InvalidInput(f"row {v} has a loop or an out-of-range bit")
            for u in _bits(row):
                if not adj[u] >> v & 1:
                    raise InvalidInput(f"adjacency not symmetric at ({v}, {u})")
        self._n = n
        self._adj = adj

    @classmethod
    def from_edges(cls, n: int, edges) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise InvalidInput(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge ({u}, {v}) out of range")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @property
    def n(self) -> int:
        return self._n

    @property
    def adjacency(self) -> tuple[int, ...]:
        return self._adj

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def common(self, u: int, v: int) -> int:
        return (self._adj[u] & self._adj[v]).bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in _bits(self._adj[u]) if u < v]

    def complement(self) -> Graph:
        full = (1 << self._n) - 1
        return Graph(self._n, [full & ~row & ~(1 << v) for v, row in enumerate(self._adj)])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self):
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={len(self.edges())})"


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    lam: int
    mu: int

    def __post_init__(self):
        n, k, lam, mu = self.n, self.k, self.lam, self.mu
        if not (0 <= lam < k < n and 0 <= mu <= k):
            raise InvalidInput(f"parameters {self.as_tuple()} violate 0 <= lambda < k < n, 0 <= mu <= k")
        if (n - k - 1) * mu != k * (k - lam - 1):
            raise InvalidInput(f"parameters {self.as_tuple()} violate (n-k-1)mu = k(k-lambda-1)")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lam, self.mu)

    def __str__(self) -> str:
        return ",".join(map(str, self.as_tuple()))


@dataclass(frozen=True)
class NeighborhoodPartition:
    g1: int
    g2: int
    g3: int
    g4: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.g1, self.g2, self.g3, self.g4)


def srg_params(G: Graph) -> SrgParams:
    """Exhaustively verify strong regularity.

    Raises NotStronglyRegular with a witness (a vertex or a vertex pair) when
    some degree or common-neighbour count disagrees.
    """
    n = G.n
    if n < 4:
        raise InvalidInput("need at least 4 vertices")
    k = G.degree(0)
    if k == 0 or k == n - 1:
        raise DegenerateInput("graph is empty or complete" if k == 0 else "graph is complete")
    for v in range(n):
        if G.degree(v) != k:
            raise NotStronglyRegular(f"vertex {v} has degree {G.degree(v)} != {k}", witness=(0, v))
    lam = mu = None
    for u, v in combinations(range(n), 2):
        c = G.common(u, v)
        if G.adjacent(u, v):
            if lam is None:
                lam = c
            elif c != lam:
                raise NotStronglyRegular(f"adjacent pair ({u}, {v}) has {c} != {lam} common neighbours", witness=(u, v))
        else:
            if mu is None:
                mu = c
            elif c != mu:
                raise NotStronglyRegular(f"non-adjacent pair ({u}, {v}) has {c} != {mu} common neighbours", witness=(u, v))
    # k-regular, non-empty, non-complete: both pair kinds occur
    return SrgParams(n, k, lam, mu)


def is_strongly_regular(G: Graph) -> bool:
    try:
        srg_params(G)
    except (NotStronglyRegular, DegenerateInput, InvalidInput):
        return False
    return True


# -- generators -------------------------------------------------------------

def paley_graph(spec: FieldSpec) -> Graph:
    q = spec.q
    if q % 4 != 1:
        raise WrongResidue(f"q = {q} is not 1 mod 4")
    square = chi_table(spec)[difference_indices(spec)] == 1
    adj = [sum(1 << j for j in range(q) if square[i, j]) for i in range(q)]
    return Graph(q, adj)


def rook_graph(n: int) -> Graph:
    """Line graph of K_{n,n}: cells of an n x n grid, row-major."""
    if n < 2:
        raise InvalidInput("rook graph needs n >= 2")
    cells = [(r, c) for r in range(n) for c in range(n)]
    edges = [
        (a, b) for a, b in combinations(range(len(cells)), 2)
        if cells[a][0] == cells[b][0] or cells[a][1] == cells[b][1]
    ]
    return Graph.from_edges(len(cells), edges)


def triangular_graph(n: int) -> Graph:
    """Line graph of K_n: 2-subsets in lexicographic order."""
    if n < 4:
        raise InvalidInput("triangular graph needs n >= 4")
    pairs = list(combinations(range(n), 2))
    edges = [(a, b) for a, b in combinations(range(len(pairs)), 2) if set(pairs[a]) & set(pairs[b])]
    return Graph.from_edges(len(pairs), edges)


def named_graph(kind: str, n: int) -> Graph:
    if kind == "rook":
        return rook_graph(n)
    if kind == "triangular":
        return triangular_graph(n)
    raise InvalidInput(f"unknown graph kind {kind!r}")


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def rook_params(n: int) -> SrgParams:
    return SrgParams(n * n, 2 * n - 2, n - 2, 2)


def triangular_params(n: int) -> SrgParams:
    return SrgParams(n * (n - 1) // 2, 2 * (n - 2), n - 2, 4)


def paley_params(q: int) -> SrgParams:
    return SrgParams(q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4)


def conference_params(n: int) -> SrgParams:
    """(4n-3, 2n-2, n-2, n-1): the self-complementary parameter family."""
    return SrgParams(4 * n - 3, 2 * n - 2, n - 2, n - 1)


# -- parameter calculus -----------------------------------------------------

def complement_params(p: SrgParams) -> SrgParams:
    n, k, lam, mu = p.as_tuple()
    return SrgParams(n, n - k - 1, n - 2 - 2 * k + mu, n - 2 * k + lam)


def neighborhood_partition(G: Graph, a: int, b: int) -> NeighborhoodPartition:
    """Sizes of common neighbours, common non-neighbours, N(b) only, N(a) only,
    all taken over V minus {a, b}."""
    if a == b:
        raise InvalidInput("vertices must be distinct")
    rest = ((1 << G.n) - 1) & ~(1 << a) & ~(1 << b)
    na, nb = G.adjacency[a] & rest, G.adjacency[b] & rest
    g1 = (na & nb).bit_count()
    g3 = (nb & ~na).bit_count()
    g4 = (na & ~nb).bit_count()
    g2 = rest.bit_count() - g1 - g3 - g4
    return NeighborhoodPartition(g1, g2, g3, g4)


def predicted_partition(p: SrgParams, adjacent: bool) -> NeighborhoodPartition:
    n, k, lam, mu = p.as_tuple()
    if adjacent:
        return NeighborhoodPartition(lam, n - 2 * k + lam, k - lam - 1, k - lam - 1)
    return NeighborhoodPartition(mu, n - 2 - 2 * k + mu, k - mu, k - mu)


def theta_terms(p: SrgParams) -> tuple[Fraction, ...]:
    n, k, lam, mu = p.as_tuple()
    return (
        Fraction(k, 2), Fraction(lam), Fraction(mu), Fraction(n - k - 1, 2),
        Fraction(n - 2 - 2 * k + mu), Fraction(n - 2 * k + lam),
    )


def theta(p: SrgParams) -> int:
    """max{k/2, lambda, mu, (n-k-1)/2, n-2-2k+mu, n-2k+lambda}, always integral."""
    value = max(theta_terms(p))
    if value.denominator != 1:
        raise InternalAssertionFailure(f"theta{p.as_tuple()} = {value} is not an integer")
    return int(value)


def theta_ratio(p: SrgParams) -> Fraction:
    return Fraction(theta(p), p.n)


# per-family closed forms for theta, kept only to compare against the definition
def closed_form_theta(family: str, n: int) -> int | None:
    if family == "conference":
        return n - 1
    if family == "rook" and n >= 4:
        return (n - 2) * (n - 1)
    if family == "triangular" and n >= 6:
        return (n - 3) * (n - 2) // 2
    return None


@dataclass(frozen=True)
class ThetaCheck:
    family: str
    n: int
    computed: int
    closed_form: int | None

    @property
    def discrepancy(self) -> bool:
        return self.closed_form is not None and self.closed_form != self.computed


def theta_check(family: str, n: int) -> ThetaCheck:
    params = {"conference": conference_params, "rook": rook_params, "triangular": triangular_params}
    if family not in params:
        raise InvalidInput(f"unknown family {family!r}")
    return ThetaCheck(family, n, theta(params[family](n)), closed_form_theta(family, n))


# -- text format ------------------------------------------------------------

def dumps(G: Graph) -> str:
    lines = [str(G.n)] + [f"{u + 1} {v + 1}" for u, v in sorted(G.edges())]
    return "\n".join(lines) + "\n"


def loads(text: str) -> Graph:
    if not text.endswith("\n"):
        raise InvalidInput("graph text must end with a newline")
    lines = text[:-1].split("\n")
    try:
        n = int(lines[0])
        edges = []
        for line in lines[1:]:
            u, v = line.split(" ")
            edges.append((int(u) - 1, int(v) - 1))
    except ValueError:
        raise InvalidInput("malformed graph text") from None
    if n < 1:
        raise InvalidInput("vertex count must be positive")
    normalized = [tuple(sorted(e)) for e in edges]
    if normalized != sorted(set(normalized)) or normalized != edges:
        raise InvalidInput("edges must be 'u v' with u < v, unique and sorted")
    return Graph.from_edges(n, edges)


def read(path) -> Graph:
    with open(path, encoding="ascii", newline="") as fh:
        return loads(fh.read())


def write(G: Graph, path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(dumps(G))
