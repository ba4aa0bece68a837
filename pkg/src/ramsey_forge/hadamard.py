"""Sign matrices, their alpha profile, and the [alpha]-Hadamard constructions.

All public indices are 1-based. Gram matrices are computed in int64, which
is exact for any order this package can hold in memory.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import DeletionTooLarge, InvalidInput, WrongResidue
from .gf import FieldSpec, character_matrix

log = logging.getLogger(__name__)


class SignMatrix:
    """Immutable square matrix with entries in {+1, -1}."""

    __slots__ = ("_entries",)

    def __init__(self, entries):
        a = np.array(entries, dtype=np.int8)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InvalidInput(f"expected a non-empty square matrix, got shape {a.shape}")
        if not np.all((a == 1) | (a == -1)):
            raise InvalidInput("entries must be +1 or -1")
        a.flags.writeable = False
        self._entries = a

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def order(self) -> int:
        return self._entries.shape[0]

    @property
    def symmetric(self) -> bool:
        return bool(np.array_equal(self._entries, self._entries.T))

    def gram(self) -> np.ndarray:
        a = self._entries.astype(np.int64)
        return a @ a.T

    def __getitem__(self, ij):
        i, j = ij
        return int(self._entries[i - 1, j - 1])

    def __eq__(self, other):
        if not isinstance(other, SignMatrix):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    __hash__ = None

    def __neg__(self) -> SignMatrix:
        return SignMatrix(-self._entries)

    def __repr__(self) -> str:
        return f"SignMatrix(order={self.order}, symmetric={self.symmetric})"

    def tolist(self) -> list[list[int]]:
        return self._entries.astype(int).tolist()


@dataclass(frozen=True)
class AlphaProfile:
    alpha: int
    gram_diag: int


@dataclass(frozen=True)
class PairPartition:
    i1: int
    i2: int
    i3: int
    i4: int

    @property
    def agree(self) -> int:
        return self.i1 + self.i2

    @property
    def disagree(self) -> int:
        return self.i3 + self.i4

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.i1, self.i2, self.i3, self.i4)


def alpha_of(H: SignMatrix) -> AlphaProfile:
    g = H.gram()
    if H.order == 1:
        return AlphaProfile(0, int(g[0, 0]))
    off = np.abs(g[~np.eye(H.order, dtype=bool)])
    return AlphaProfile(int(off.max()), H.order)


def is_alpha_hadamard(H: SignMatrix, alpha: int, mode: str = "upper") -> bool:
    if not 0 <= alpha <= H.order:
        raise InvalidInput(f"alpha must lie in [0, {H.order}], got {alpha}")
    measured = alpha_of(H).alpha
    if mode == "upper":
        return measured <= alpha
    if mode == "exact":
        return measured == alpha
    raise InvalidInput(f"mode must be 'upper' or 'exact', got {mode!r}")


def is_hadamard(H: SignMatrix) -> bool:
    return alpha_of(H).alpha == 0 if H.order > 1 else True


# -- constructions ----------------------------------------------------------

def sylvester(k: int) -> SignMatrix:
    if k < 0:
        raise InvalidInput("k must be non-negative")
    m = np.ones((1, 1), dtype=np.int8)
    for _ in range(k):
        m = np.block([[m, m], [m, -m]])
    return SignMatrix(m)


def paley_one_hadamard(spec: FieldSpec) -> SignMatrix:
    """I + Q with Q[i, j] = chi(a_i - a_j); a 1-Hadamard matrix for q = 3 mod 4.

    The Gram identity HH^t = (q+1)I - J is checked before returning.
    """
    q = spec.q
    if q % 4 != 3:
        raise WrongResidue(f"q = {q} is not 3 mod 4")
    Q = character_matrix(spec)
    H = SignMatrix(np.eye(q, dtype=np.int64) + Q)
    expected = (q + 1) * np.eye(q, dtype=np.int64) - np.ones((q, q), dtype=np.int64)
    assert np.array_equal(H.gram(), expected), "1-Hadamard Gram identity failed"
    return H


@dataclass(frozen=True)
class KroneckerReport:
    """Measured properties of the order-2q Kronecker construction."""

    q: int
    alpha: int
    symmetric: bool
    matches_displayed_gram: bool
    gram_deviation: int  # max |measured - displayed| over all entries


_KRON_A = np.array([[1, 1], [1, -1]], dtype=np.int64)
_KRON_B = np.array([[1, -1], [-1, -1]], dtype=np.int64)
_KRON_GRAM = np.array([[-2, -4], [4, -2]], dtype=np.int64)


def paley_double(spec: FieldSpec) -> tuple[SignMatrix, KroneckerReport]:
    """Q (x) [[1,1],[1,-1]] + I (x) [[1,-1],[-1,-1]] for q = 1 mod 4.

    Returns the matrix with a report comparing the measured Gram matrix to
    2(q+1)I + (J+Q) (x) [[-2,-4],[4,-2]]; only alpha <= 4 is enforced.
    """
    q = spec.q
    if q % 4 != 1:
        raise WrongResidue(f"q = {q} is not 1 mod 4")
    Q = character_matrix(spec)
    I = np.eye(q, dtype=np.int64)
    H = SignMatrix(np.kron(Q, _KRON_A) + np.kron(I, _KRON_B))
    alpha = alpha_of(H).alpha
    if alpha > 4:
        raise AssertionError(f"Kronecker construction gave alpha = {alpha} > 4 at q = {q}")
    displayed = 2 * (q + 1) * np.eye(2 * q, dtype=np.int64) + np.kron(
        np.ones((q, q), dtype=np.int64) + Q, _KRON_GRAM
    )
    deviation = int(np.abs(H.gram() - displayed).max())
    report = KroneckerReport(q, alpha, H.symmetric, deviation == 0, deviation)
    if deviation:
        log.info(
            "q=%d: measured alpha=%d, symmetric=%s; Gram differs from the displayed "
            "formula by up to %d",
            q, alpha, report.symmetric, deviation,
        )
    return H, report


def _index_set(indices: Iterable[int], order: int) -> list[int]:
    out = sorted(set(int(i) for i in indices))
    if any(not 1 <= i <= order for i in out):
        raise InvalidInput(f"indices must lie in 1..{order}")
    return out


def delete_general(H: SignMatrix, rows: Iterable[int], cols: Iterable[int]) -> SignMatrix:
    """Delete the given rows and columns of a Hadamard matrix.

    With |rows| = |cols| = alpha, every remaining pair of rows loses at most
    alpha agreeing/disagreeing columns, so the result is [alpha]-Hadamard.
    """
    rows = _index_set(rows, H.order)
    cols = _index_set(cols, H.order)
    if len(rows) != len(cols):
        raise InvalidInput("row and column deletion sets must have equal size")
    alpha = len(rows)
    if 2 * alpha > H.order:
        raise DeletionTooLarge(f"cannot delete {alpha} > {H.order}/2 rows")
    if not is_hadamard(H):
        raise InvalidInput("delete_general requires a Hadamard matrix")
    if alpha == H.order:
        raise DeletionTooLarge("deletion would leave an empty matrix")
    keep_r = [i for i in range(H.order) if i + 1 not in rows]
    keep_c = [j for j in range(H.order) if j + 1 not in cols]
    out = SignMatrix(H.entries[np.ix_(keep_r, keep_c)])
    assert alpha_of(out).alpha <= alpha
    return out


def normalize_symmetric(H: SignMatrix) -> SignMatrix:
    """Make the first row all ones while keeping H symmetric.

    Uses D H D with D = diag(first row), after a global sign flip when
    H[1,1] = -1 (the diagonal entry is invariant under D H D).
    """
    a = H.entries.astype(np.int64)
    if a[0, 0] == -1:
        a = -a
    d = a[0].copy()
    a = d[:, None] * a * d[None, :]
    return SignMatrix(a)


def delete_symmetric(H: SignMatrix, alpha: int) -> SignMatrix:
    """Symmetric alpha-Hadamard matrix of order order(H) - alpha.

    After normalization, row and column j are deleted for each j in
    ``symmetric_deletion_set``; the two rows it protects keep inner product
    exactly alpha while every other pair drops to at most alpha.
    """
    if not H.symmetric:
        raise InvalidInput("delete_symmetric requires a symmetric matrix")
    if not is_hadamard(H):
        raise InvalidInput("delete_symmetric requires a Hadamard matrix")
    if alpha < 0 or 2 * alpha > H.order:
        raise DeletionTooLarge(f"alpha must lie in [0, {H.order // 2}], got {alpha}")
    N = normalize_symmetric(H)
    C = symmetric_deletion_set(N, alpha)
    keep = [i for i in range(N.order) if i + 1 not in C]
    out = SignMatrix(N.entries[np.ix_(keep, keep)])
    assert out.symmetric
    assert out.order < 2 or alpha_of(out).alpha == alpha
    return out


def symmetric_deletion_set(N: SignMatrix, alpha: int) -> list[int]:
    """Indices to delete from a normalized symmetric Hadamard matrix.

    The pivot row is row 2, whose -1 entries number exactly order/2. Indices
    are taken smallest first but skipping the pivot itself, so rows 1 and 2
    survive with inner product exactly alpha. If alpha = order/2 and
    N[2,2] = -1 the pivot would have to go; the pivot then moves to the
    smallest row r with N[r,r] = +1 (one always exists for order >= 4).
    """
    n = N.order
    if alpha == 0:
        return []
    if n < 2:
        raise DeletionTooLarge("nothing to delete from a 1x1 matrix")
    pivot = 2
    if 2 * alpha == n and N[2, 2] == -1:
        pivot = next((r for r in range(3, n + 1) if N[r, r] == 1), None)
        if pivot is None:
            # only reachable at order 2, where the result has order 1
            return [2]
    minus = [j for j in range(1, n + 1) if N[pivot, j] == -1 and j != pivot]
    if len(minus) < alpha:
        raise DeletionTooLarge(f"row {pivot} has only {len(minus)} usable -1 entries")
    return minus[:alpha]


def pair_partition(H: SignMatrix, i: int, j: int) -> PairPartition:
    if i == j:
        raise InvalidInput("rows must be distinct")
    if not (1 <= i <= H.order and 1 <= j <= H.order):
        raise InvalidInput(f"rows must lie in 1..{H.order}")
    ri, rj = H.entries[i - 1], H.entries[j - 1]
    return PairPartition(
        int(np.sum((ri == 1) & (rj == 1))),
        int(np.sum((ri == -1) & (rj == -1))),
        int(np.sum((ri == 1) & (rj == -1))),
        int(np.sum((ri == -1) & (rj == 1))),
    )


def equiv_transform(
    H: SignMatrix,
    row_perm: Sequence[int] | None = None,
    col_perm: Sequence[int] | None = None,
    row_signs: Sequence[int] | None = None,
    col_signs: Sequence[int] | None = None,
) -> SignMatrix:
    """Permute and negate rows/columns. Permutations are 1-based: new row r
    is old row ``row_perm[r-1]``."""
    n = H.order

    def perm(p):
        if p is None:
            return np.arange(n)
        p = np.asarray(p, dtype=np.int64) - 1
        if p.shape != (n,) or sorted(p.tolist()) != list(range(n)):
            raise InvalidInput(f"expected a permutation of 1..{n}")
        return p

    def signs(s):
        if s is None:
            return np.ones(n, dtype=np.int64)
        s = np.asarray(s, dtype=np.int64)
        if s.shape != (n,) or not np.all(np.abs(s) == 1):
            raise InvalidInput(f"expected {n} signs in {{+1, -1}}")
        return s

    rp, cp = perm(row_perm), perm(col_perm)
    a = H.entries.astype(np.int64)[np.ix_(rp, cp)]
    return SignMatrix(signs(row_signs)[:, None] * a * signs(col_signs)[None, :])


# -- text format ------------------------------------------------------------

def dumps(H: SignMatrix) -> str:
    lines = [str(H.order)]
    lines += ["".join("+" if x == 1 else "-" for x in row) for row in H.entries]
    return "\n".join(lines) + "\n"


def loads(text: str) -> SignMatrix:
    if not text.endswith("\n"):
        raise InvalidInput("sign-matrix text must end with a newline")
    lines = text[:-1].split("\n")
    try:
        order = int(lines[0])
    except ValueError:
        raise InvalidInput("first line must be the decimal order") from None
    if str(order) != lines[0] or order < 1:
        raise InvalidInput(f"bad order line {lines[0]!r}")
    body = lines[1:]
    if len(body) != order:
        raise InvalidInput(f"expected {order} rows, found {len(body)}")
    rows = []
    for r, line in enumerate(body, 1):
        if len(line) != order or set(line) - {"+", "-"}:
            raise InvalidInput(f"row {r} must be exactly {order} characters from '+-'")
        rows.append([1 if ch == "+" else -1 for ch in line])
    return SignMatrix(rows)


def read(path) -> SignMatrix:
    with open(path, encoding="ascii", newline="") as fh:
        return loads(fh.read())


def write(H: SignMatrix, path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(dumps(H))
