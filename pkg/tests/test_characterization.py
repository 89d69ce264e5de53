import itertools

import numpy as np
import pytest

import oracles
from catalog import DEGENERATE_T, E3_Q, E3_S, E3_S_PLUS, E3_T, SPACE2, SPACE3, SWAP_S
from kreinframes import (GeometryError, KreinSpace, NotSurjectiveError, OperatorError,
                         PreconditionError, SubspaceBasis,
                         construct_j_frame_from_operator, is_j_frame, is_j_frame_operator,
                         is_jframe_synthesis, j_frame_operator, j_orthogonal_companion,
                         kernel_splits,
                         positive_image_test, projection_in_Q, projection_split_test,
                         reordering_projection_test, search_j_frame_operator,
                         split_from_projection, unitary_reordering_test)
from kreinframes.sampling import (random_j_frame, random_krein_space, random_operator_split,
                                  random_unitary)

H_PLUS3 = SubspaceBasis(SPACE3, np.eye(3)[:, :2])


def _line(v):
    return SubspaceBasis.span(np.asarray(v, dtype=complex).reshape(-1, 1))


# -- projection split ---------------------------------------------------------

@pytest.mark.parametrize("T, S, expected", [
    (np.array([[2.0, 1.0], [0.0, 1.0]]), _line([1, 1]), True),
    (np.array([[1.0, 1.0]]), _line([1, 0]), False),
    (np.array([[1.0, 0, 0], [0, 1.0, 0]]), _line([1, 0, 0]), True),
])
def test_projection_split_examples(T, S, expected):
    assert projection_split_test(T, S) is expected
    assert kernel_splits(T, S) is expected
    assert oracles.kernel_splits(T, S.B) is expected


def test_projection_split_errors():
    with pytest.raises(NotSurjectiveError):
        projection_split_test(np.array([[1.0, 1.0], [1.0, 1.0]]), _line([1, 0]))
    with pytest.raises(PreconditionError):
        projection_split_test(np.array([[1.0, 1.0]]), _line([1, 0, 0]))


# -- synthesis operators ------------------------------------------------------

def test_synthesis_examples():
    c = is_jframe_synthesis(SPACE3, E3_T, [0, 1, 2])
    assert c.verdict
    np.testing.assert_allclose(c.witness_Q, E3_Q, atol=1e-12)
    assert not is_jframe_synthesis(SPACE3, DEGENERATE_T, [0, 1]).verdict
    assert not is_jframe_synthesis(SPACE3, E3_T, []).verdict
    with pytest.raises(NotSurjectiveError):
        is_jframe_synthesis(SPACE3, E3_T[:, :2], [0])


def test_only_sign_partition_certifies_small_frames():
    """Exhaustive search on small frames: any certifying I+ besides the sign
    partition would be recorded here.  None has turned up."""
    rng = np.random.default_rng(0)
    cases = [(SPACE3, E3_T), (SPACE2, np.eye(2))]
    for _ in range(10):
        sp = random_krein_space(1, 1, rng)
        cases.append((sp, random_j_frame(sp, rng, redundancy=2).T))
    for sp, T in cases:
        m = T.shape[1]
        found = [I for k in range(m + 1) for I in itertools.combinations(range(m), k)
                 if is_jframe_synthesis(sp, T, I).verdict]
        assert found == [is_j_frame(sp, T).partition.I_plus]


def test_synthesis_agrees_with_detection_on_random_frames():
    rng = np.random.default_rng(1)
    for k in range(20):
        sp = random_krein_space(int(rng.integers(1, 4)), int(rng.integers(1, 4)), rng, general=bool(k % 2))
        F = random_j_frame(sp, rng, shuffle=True)
        r = is_j_frame(sp, F)
        c = is_jframe_synthesis(sp, F.T, r.partition.I_plus)
        assert c.verdict
        np.testing.assert_allclose(c.witness_Q, r.Q, atol=1e-8)


# -- unitary reordering -----------------------------------------------------------

def test_reordering_already_split():
    T = E3_T.astype(complex)
    P = np.diag([1.0, 1.0, 1.0, 0.0])
    c = unitary_reordering_test(SPACE3, T, (T @ P, T @ (np.eye(4) - P)))
    assert c.verdict
    np.testing.assert_allclose(c.witness_U, np.eye(4))


def test_reordering_rotated_basis():
    th = 0.7
    # f+ = e1, f- = e2 in signature (1, 1); coefficients mixed by a rotation
    R = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    T = np.eye(2) @ R
    Q = SPACE2.P_plus
    assert reordering_projection_test(SPACE2, T, Q).verdict
    c = unitary_reordering_test(SPACE2, T, split_from_projection(T, Q))
    assert c.verdict
    V = T @ c.witness_U
    q = np.real(np.einsum("ij,ik,kj->j", V.conj(), SPACE2.J, V))
    assert np.all(np.abs(q) > 1e-6)
    assert is_j_frame(SPACE2, V).is_j_frame


def test_reordering_rejects_bad_splits():
    T = np.eye(2, dtype=complex)
    # T1 with indefinite range
    c = unitary_reordering_test(SPACE2, T, (T, np.zeros((2, 2))))
    assert not c.verdict and "indefinite" in c.notes[0]
    with pytest.raises(PreconditionError):
        unitary_reordering_test(SPACE2, T, (T, T))
    with pytest.raises(NotSurjectiveError):
        unitary_reordering_test(SPACE2, np.array([[1.0, 0], [0, 0]]), (np.zeros((2, 2)), np.zeros((2, 2))))


def test_reordering_on_mixed_random_frames():
    rng = np.random.default_rng(2)
    for k in range(25):
        sp = random_krein_space(int(rng.integers(1, 4)), int(rng.integers(1, 4)), rng, general=bool(k % 2))
        F = random_j_frame(sp, rng)
        Q = is_j_frame(sp, F).Q
        V = random_unitary(F.size, rng)
        TV = F.T @ V
        assert reordering_projection_test(sp, TV, Q).verdict
        c = unitary_reordering_test(sp, TV, split_from_projection(TV, Q))
        assert c.verdict, c.notes
        U = c.witness_U
        np.testing.assert_allclose(U.conj().T @ U, np.eye(F.size), atol=1e-10)
        W = TV @ U
        q = np.real(np.einsum("ij,ik,kj->j", W.conj(), sp.J, W))
        assert np.all(np.abs(q) > 1e-8 * np.linalg.norm(W, axis=0) ** 2)
        assert is_j_frame(sp, W).is_j_frame


def test_projection_in_Q():
    assert projection_in_Q(SPACE3, E3_Q)[0]
    assert not projection_in_Q(SPACE3, np.eye(3))[0]          # kernel {0} is fine, range indefinite
    assert not projection_in_Q(SPACE3, 2 * E3_Q)[0]           # not idempotent
    D = np.array([[1.0, 0, 0], [0, 1.0, 0], [1 / np.sqrt(2), 1 / np.sqrt(2), 0]])
    Q = D @ np.linalg.pinv(D)                                  # orthogonal projector onto a degenerate plane
    assert not projection_in_Q(SPACE3, Q)[0]


# -- J-frame operators ---------------------------------------------------------------

@pytest.mark.parametrize("p, q", [(1, 1), (2, 1), (1, 3), (2, 0)])
def test_identity_is_a_j_frame_operator(p, q):
    sp = KreinSpace.from_signature(p, q)
    assert is_j_frame_operator(sp, np.eye(p + q), sp.P_plus).verdict
    c = positive_image_test(sp, np.eye(p + q), SubspaceBasis(sp, sp.decomposition[0]))
    assert c.verdict and c.diagnostics["delegated_verdict"]


def test_e3_operator():
    c = is_j_frame_operator(SPACE3, E3_S, E3_Q)
    assert c.verdict
    np.testing.assert_allclose(E3_Q @ E3_S, E3_S_PLUS, atol=1e-12)
    c = positive_image_test(SPACE3, E3_S, H_PLUS3)
    assert c.verdict
    np.testing.assert_allclose(c.witness_Q, E3_Q, atol=1e-12)


def test_swap_operator_rejections():
    c = positive_image_test(SPACE2, SWAP_S, SubspaceBasis(SPACE2, np.array([[1.0], [0.0]])))
    assert not c.verdict
    assert c.diagnostics["S(T) maximal uniformly positive"] is False
    assert "negative" in c.notes[0]
    c = search_j_frame_operator(SPACE2, SWAP_S)
    assert not c.verdict
    assert any("ind=(1,1) but no admissible Q found among tried witnesses" in n for n in c.notes)


def test_operator_errors():
    with pytest.raises(OperatorError):
        is_j_frame_operator(SPACE2, np.diag([1.0, 0.0]), SPACE2.P_plus)
    with pytest.raises(OperatorError):
        is_j_frame_operator(SPACE2, np.array([[1.0, 1.0], [0.0, 1.0]]), SPACE2.P_plus)
    with pytest.raises(GeometryError):
        positive_image_test(SPACE3, np.eye(3), SubspaceBasis(SPACE3, np.eye(3)[:, :1]))


def test_positive_image_agrees_with_delegation_on_random_operators():
    rng = np.random.default_rng(3)
    for k in range(20):
        sp = random_krein_space(2, 2, rng, general=bool(k % 2))
        S1, S2 = random_operator_split(sp, rng)
        S = S1 - S2
        F = construct_j_frame_from_operator(sp, S1, S2)
        r = is_j_frame(sp, F)
        # T = M-^[perp] maps onto M+
        T = j_orthogonal_companion(sp, r.M_minus)
        c = positive_image_test(sp, S, T)
        assert c.verdict and c.diagnostics["delegated_verdict"]
        assert SubspaceBasis.span(c.witness_Q, sp).equals(r.M_plus, tol=1e-7)


def test_search_wrapper_is_best_effort():
    # block-diagonal operators are found through (I + J)/2
    sp = KreinSpace.from_signature(2, 1)
    S = np.diag([2.0, 3.0, 0.5])
    c = search_j_frame_operator(sp, S)
    assert c.verdict and "witness Q=(I+J)/2" in c.notes
    assert search_j_frame_operator(SPACE3, E3_S).verdict
    # a real spectrum with a definite eigenspace off the fundamental split
    rng = np.random.default_rng(6)
    hits = 0
    for _ in range(20):
        sp = random_krein_space(2, 2, rng)
        S = j_frame_operator(sp, random_j_frame(sp, rng))
        c = search_j_frame_operator(sp, S)
        if c.verdict:
            hits += 1
            assert projection_in_Q(sp, c.witness_Q)[0]
        else:
            assert "tried witnesses" in c.notes[-1]
    assert hits > 0


# -- construction ------------------------------------------------------------------

def test_construct_identity():
    F = construct_j_frame_from_operator(SPACE2, np.diag([1.0, 0.0]), np.diag([0.0, -1.0]))
    assert is_j_frame(SPACE2, F).is_j_frame
    np.testing.assert_allclose(j_frame_operator(SPACE2, F), np.eye(2), atol=1e-12)


def test_construct_e3():
    F = construct_j_frame_from_operator(SPACE3, E3_S_PLUS, np.diag([0.0, 0.0, -1.0]))
    np.testing.assert_allclose(j_frame_operator(SPACE3, F), E3_S, atol=1e-12)
    assert F.labels == ("+1", "+2", "-1")


def test_construct_with_redundancy():
    rng = np.random.default_rng(4)
    sp = random_krein_space(2, 3, rng, general=True)
    S1, S2 = random_operator_split(sp, rng)
    F = construct_j_frame_from_operator(sp, S1, S2, extra=3, rng=rng)
    assert F.size == 5 + 6
    np.testing.assert_allclose(j_frame_operator(sp, F), S1 - S2, atol=1e-9)


def test_construct_errors():
    # S2 = diag(0, 1) is not J-positive: J S2 = diag(0, -1)
    with pytest.raises(OperatorError):
        construct_j_frame_from_operator(SPACE2, np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
    # a range meeting the neutral cone
    S1 = np.array([[1.0, -1.0], [1.0, -1.0]])           # J S1 = [[1, -1], [-1, 1]] >= 0, range = span{(1, 1)}
    with pytest.raises(GeometryError):
        construct_j_frame_from_operator(SPACE2, S1, np.diag([0.0, -1.0]))
    # ranges too small: S1 - S2 singular
    with pytest.raises(OperatorError):
        construct_j_frame_from_operator(SPACE2, np.zeros((2, 2)), np.diag([0.0, -1.0]))


# -- kernel splitting ------------------------------------------------------------------

def test_kernel_splits_matches_oracle():
    rng = np.random.default_rng(5)
    for _ in range(50):
        m = int(rng.integers(2, 7))
        n = int(rng.integers(1, m + 1))
        T = oracles.random_complex(rng, n, m)
        if rng.random() < 0.5:
            T[:, int(rng.integers(0, m))] = 0           # a coordinate kernel direction
        S = SubspaceBasis(None, np.eye(m)[:, sorted(rng.choice(m, int(rng.integers(0, m + 1)), replace=False))])
        assert kernel_splits(T, S) == oracles.kernel_splits(T, S.B)
