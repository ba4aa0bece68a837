import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramsey_forge.errors import DeletionTooLarge, InvalidInput, WrongResidue
from ramsey_forge.gf import field_from_order
from ramsey_forge import hadamard
from ramsey_forge.hadamard import (
    SignMatrix,
    alpha_of,
    delete_general,
    delete_symmetric,
    equiv_transform,
    is_alpha_hadamard,
    normalize_symmetric,
    pair_partition,
    paley_double,
    paley_one_hadamard,
    sylvester,
)


def brute_alpha(rows):
    n = len(rows)
    if n == 1:
        return 0
    return max(
        abs(sum(a * b for a, b in zip(rows[i], rows[j]))) for i in range(n) for j in range(n) if i != j
    )


sign_matrices = st.integers(2, 9).flatmap(
    lambda n: st.lists(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n), min_size=n, max_size=n)
)


# -- alpha profile ------------------------------------------------------------

def test_reference_alphas(H1, H2):
    assert alpha_of(H1).alpha == 0
    assert alpha_of(H2).alpha == 2
    assert alpha_of(H2).gram_diag == 6
    assert H1.symmetric and H2.symmetric


def test_all_ones_alpha():
    assert alpha_of(SignMatrix([[1, 1], [1, 1]])).alpha == 2


def test_order_one():
    assert alpha_of(SignMatrix([[-1]])) == hadamard.AlphaProfile(0, 1)


@given(sign_matrices)
@settings(max_examples=150)
def test_alpha_matches_brute_force_and_parity(rows):
    H = SignMatrix(rows)
    prof = alpha_of(H)
    assert prof.alpha == brute_alpha(rows)
    assert prof.alpha % 2 == H.order % 2
    g = H.gram()
    off = g[~np.eye(H.order, dtype=bool)]
    assert np.all((np.abs(off) - H.order) % 2 == 0)


def test_is_alpha_hadamard_modes(H1, H2):
    assert is_alpha_hadamard(H2, 2, "exact")
    assert is_alpha_hadamard(H2, 3, "upper")
    assert not is_alpha_hadamard(H2, 1, "upper")
    assert is_alpha_hadamard(H1, 1, "upper")
    assert not is_alpha_hadamard(H1, 1, "exact")
    with pytest.raises(InvalidInput):
        is_alpha_hadamard(H2, 7)
    with pytest.raises(InvalidInput):
        is_alpha_hadamard(H2, 2, "sideways")


def test_rejects_non_sign_entries():
    with pytest.raises(InvalidInput):
        SignMatrix([[1, 0], [1, 1]])
    with pytest.raises(InvalidInput):
        SignMatrix([[1, 1, 1]])


# -- constructions ------------------------------------------------------------

def test_sylvester_small():
    assert sylvester(0) == SignMatrix([[1]])
    S4 = sylvester(2)
    assert S4.order == 4 and S4.symmetric
    assert np.array_equal(S4.gram(), 4 * np.eye(4))


def test_sylvester_is_reference_h1(H1):
    assert sylvester(3) == H1


@pytest.mark.parametrize("q", [3, 7, 11, 19, 23, 27])
def test_paley_one_gram_identity(q):
    H = paley_one_hadamard(field_from_order(q))
    expected = (q + 1) * np.eye(q, dtype=np.int64) - np.ones((q, q), dtype=np.int64)
    assert np.array_equal(H.gram(), expected)
    assert alpha_of(H).alpha == 1
    assert not H.symmetric
    assert np.all(np.diag(H.entries) == 1)


def test_paley_one_wrong_residue():
    with pytest.raises(WrongResidue):
        paley_one_hadamard(field_from_order(5))


@pytest.mark.parametrize("q", [5, 9, 13, 17])
def test_paley_double_measured(q):
    H, rep = paley_double(field_from_order(q))
    assert H.order == 2 * q
    assert rep.alpha <= 4
    # measured directly: Q symmetric gives HH^t = (2q+2)I - 2 (J (x) I_2)
    Jq = np.ones((q, q), dtype=np.int64)
    expected = (2 * q + 2) * np.eye(2 * q, dtype=np.int64) - 2 * np.kron(Jq, np.eye(2, dtype=np.int64))
    assert np.array_equal(H.gram(), expected)
    assert rep.alpha == 2
    assert rep.symmetric
    assert not rep.matches_displayed_gram


def test_paley_double_wrong_residue():
    with pytest.raises(WrongResidue):
        paley_double(field_from_order(7))


# -- deletions ----------------------------------------------------------------

def test_delete_general_examples(H1, H2):
    assert delete_general(sylvester(2), [], []) == sylvester(2)
    assert delete_general(H1, {6, 8}, {6, 8}) == H2
    M = delete_general(sylvester(3), {1, 2}, {3, 4})
    assert M.order == 6 and alpha_of(M).alpha <= 2


def test_delete_general_errors(H2):
    with pytest.raises(DeletionTooLarge):
        delete_general(sylvester(2), {1, 2, 3}, {1, 2, 3})
    with pytest.raises(InvalidInput):
        delete_general(H2, {1}, {1})
    with pytest.raises(InvalidInput):
        delete_general(sylvester(2), {1}, {1, 2})


def test_delete_general_random_sets():
    rng = np.random.default_rng(7)
    count = 0
    for k in range(2, 6):
        H = sylvester(k)
        for _ in range(50):
            a = int(rng.integers(0, H.order // 2 + 1))
            rows = rng.choice(np.arange(1, H.order + 1), a, replace=False)
            cols = rng.choice(np.arange(1, H.order + 1), a, replace=False)
            M = delete_general(H, rows, cols)
            assert M.order == H.order - a
            assert brute_alpha(M.tolist()) <= a
            count += 1
    assert count == 200


def test_delete_symmetric_examples(H1):
    M = delete_symmetric(H1, 2)
    assert M.order == 6 and M.symmetric and alpha_of(M).alpha == 2
    assert delete_symmetric(H1, 0) == normalize_symmetric(H1) == H1
    M = delete_symmetric(sylvester(4), 3)
    assert M.order == 13 and M.symmetric and alpha_of(M).alpha == 3


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_delete_symmetric_exact_for_every_alpha(k):
    H = sylvester(k)
    for a in range(H.order // 2 + 1):
        M = delete_symmetric(H, a)
        assert M.symmetric
        assert brute_alpha(M.tolist()) == a


def test_delete_symmetric_after_sign_changes():
    # a symmetric Hadamard matrix with -1 in the corner still normalizes
    H = -sylvester(3)
    M = delete_symmetric(H, 3)
    assert M.symmetric and alpha_of(M).alpha == 3


def test_delete_symmetric_errors(H2):
    with pytest.raises(InvalidInput):
        delete_symmetric(H2, 1)
    with pytest.raises(InvalidInput):
        delete_symmetric(paley_one_hadamard(field_from_order(7)), 1)
    with pytest.raises(DeletionTooLarge):
        delete_symmetric(sylvester(2), 3)


def test_normalize_keeps_symmetry_and_gram():
    H = equiv_transform(sylvester(3), row_perm=[3, 1, 2, 4, 5, 6, 7, 8], col_perm=[3, 1, 2, 4, 5, 6, 7, 8])
    N = normalize_symmetric(H)
    assert N.symmetric
    assert np.all(N.entries[0] == 1)
    assert alpha_of(N).alpha == 0


# -- pair partition -----------------------------------------------------------

def test_pair_partition_examples(H1, H2):
    assert pair_partition(H1, 1, 2).as_tuple() == (4, 0, 4, 0)
    assert pair_partition(H2, 1, 2).as_tuple() == (4, 0, 2, 0)
    assert pair_partition(SignMatrix([[1, 1], [1, 1]]), 1, 2).as_tuple() == (2, 0, 0, 0)
    with pytest.raises(InvalidInput):
        pair_partition(H1, 3, 3)


@given(sign_matrices, st.data())
@settings(max_examples=150)
def test_pair_partition_properties(rows, data):
    H = SignMatrix(rows)
    n = H.order
    i = data.draw(st.integers(1, n))
    j = data.draw(st.integers(1, n).filter(lambda x: x != i))
    P = pair_partition(H, i, j)
    assert sum(P.as_tuple()) == n
    dot = sum(a * b for a, b in zip(rows[i - 1], rows[j - 1]))
    assert P.agree - P.disagree == dot
    a = alpha_of(H).alpha
    assert 2 * P.agree <= n + a and 2 * P.disagree <= n + a


# -- equivalence transforms -----------------------------------------------------

def test_equiv_identity_and_negation(H1, H2):
    assert equiv_transform(H1) == H1
    neg = equiv_transform(H1, row_signs=[-1] * 8, col_signs=[-1] * 8)
    assert neg == H1 and alpha_of(neg).alpha == 0
    swapped = equiv_transform(H2, row_perm=[2, 1, 3, 4, 5, 6])
    assert alpha_of(swapped).alpha == 2


def test_equiv_length_mismatch(H1):
    with pytest.raises(InvalidInput):
        equiv_transform(H1, row_signs=[1, -1])
    with pytest.raises(InvalidInput):
        equiv_transform(H1, row_perm=[1, 1, 2, 3, 4, 5, 6, 7])


@pytest.mark.parametrize("source", ["H1", "H2", "p7", "p11", "p19", "p27", "d5", "d13"])
def test_alpha_invariant_under_random_transforms(source, H1, H2):
    if source == "H1":
        H = H1
    elif source == "H2":
        H = H2
    elif source.startswith("p"):
        H = paley_one_hadamard(field_from_order(int(source[1:])))
    else:
        H = paley_double(field_from_order(int(source[1:])))[0]
    base = alpha_of(H).alpha
    rng = np.random.default_rng(len(source) * 31 + H.order)
    n = H.order
    for _ in range(25):
        M = equiv_transform(
            H,
            rng.permutation(n) + 1,
            rng.permutation(n) + 1,
            rng.choice([1, -1], n),
            rng.choice([1, -1], n),
        )
        assert alpha_of(M).alpha == base


# -- text format ----------------------------------------------------------------

def test_text_round_trip(H2, tmp_path):
    text = hadamard.dumps(H2)
    assert text.splitlines()[0] == "6"
    assert text.splitlines()[2] == "+-+-++"
    assert text.endswith("\n")
    assert hadamard.loads(text) == H2
    assert hadamard.dumps(hadamard.loads(text)) == text
    path = tmp_path / "h.pm"
    hadamard.write(H2, path)
    assert path.read_bytes() == text.encode()
    assert hadamard.read(path) == H2


@pytest.mark.parametrize(
    "text",
    ["2\n++\n+-", "2\n++\n", "2\n+ +\n+-\n", "x\n+\n", "2\n++\n+*\n", "02\n++\n+-\n", "1\n+\n\n"],
)
def test_text_rejects_malformed(text):
    with pytest.raises(InvalidInput):
        hadamard.loads(text)
