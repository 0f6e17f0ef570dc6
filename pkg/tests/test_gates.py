import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qentropy.entropy import entropy_vector
from qentropy.gates import (
    Gate,
    H,
    X,
    Z,
    apply,
    controlled_phase,
    controlled_unitary_power,
    embed,
    multi_controlled_x,
    multi_controlled_z,
    standard_gate,
)
from qentropy.state import PureState, bell_state


def basis(bits):
    return PureState.from_bitstring(bits)


def test_standard_matrices():
    assert np.allclose(standard_gate("H").matrix, np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    assert np.allclose(standard_gate("X").matrix, [[0, 1], [1, 0]])
    assert np.allclose(standard_gate("Z").matrix, np.diag([1, -1]))
    with pytest.raises(ValueError):
        standard_gate("Y")


@pytest.mark.parametrize("k, corner", [(1, -1), (2, 1j), (3, np.exp(1j * np.pi / 4))])
def test_controlled_phase(k, corner):
    assert np.allclose(controlled_phase(k).matrix, np.diag([1, 1, 1, corner]))


def test_multi_controlled_x_examples():
    cx = multi_controlled_x("1")
    assert np.allclose(apply(cx, basis("10")).amplitudes, basis("11").amplitudes)
    g = multi_controlled_x("10")
    assert np.allclose(apply(g, basis("100")).amplitudes, basis("101").amplitudes)
    assert np.allclose(apply(g, basis("110")).amplitudes, basis("110").amplitudes)


def test_multi_controlled_x_1101_is_26_27_swap():
    m = multi_controlled_x("1101").matrix
    perm = np.arange(32)
    perm[[26, 27]] = [27, 26]
    assert np.array_equal(m, np.eye(32)[perm])


def test_multi_controlled_x_projector_sum():
    # |g><g| (x) X + sum_{j != g} |j><j| (x) I
    for goal in ("0", "01", "110"):
        m = len(goal)
        expected = np.zeros((2 << m, 2 << m), dtype=complex)
        for j in range(1 << m):
            proj = np.zeros((1 << m, 1 << m))
            proj[j, j] = 1
            expected += np.kron(proj, X if j == int(goal, 2) else np.eye(2))
        assert np.allclose(multi_controlled_x(goal).matrix, expected)


def test_multi_controlled_z_examples():
    g = multi_controlled_z(2)
    assert np.allclose(apply(g, basis("001")).amplitudes, -basis("001").amplitudes)
    assert np.allclose(apply(g, basis("011")).amplitudes, basis("011").amplitudes)
    assert np.allclose(apply(multi_controlled_z(1), basis("01")).amplitudes, -basis("01").amplitudes)


def test_controlled_unitary_power_examples():
    u = np.diag([1, np.exp(2j * np.pi * 0.5)])
    assert np.allclose(controlled_unitary_power(u, 1).matrix, np.diag([1, 1, 1, -1]))
    u = np.diag([1, np.exp(2j * np.pi / 8)])
    assert np.allclose(controlled_unitary_power(u, 4).matrix, np.diag([1, 1, 1, -1]))
    for p in (1, 2, 8):
        assert np.allclose(controlled_unitary_power(np.eye(2), p).matrix, np.eye(4))
    with pytest.raises(ValueError):
        controlled_unitary_power(u, 3)


def test_apply_examples():
    psi = apply(standard_gate("H", 0), PureState.zeros(2))
    assert np.allclose(psi.amplitudes, np.array([1, 0, 1, 0]) / np.sqrt(2))
    psi = apply(multi_controlled_x("1", [0, 1]), psi)
    assert np.allclose(psi.amplitudes, bell_state().amplitudes)


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("bad", np.array([[1, 1], [0, 1]]), (0,))
    with pytest.raises(ValueError):
        Gate("dup", np.eye(4), (1, 1))
    with pytest.raises(ValueError):
        Gate("shape", np.eye(4), (0,))
    with pytest.raises(ValueError):
        apply(standard_gate("X", 3), PureState.zeros(2))


def test_adjoint_labels():
    g = controlled_phase(2)
    assert g.adjoint().label == "CRk(2)^"
    assert g.adjoint().adjoint().label == "CRk(2)"
    assert np.allclose(g.adjoint().matrix @ g.matrix, np.eye(4))


def random_gate(rng, n):
    k = int(rng.integers(1, min(3, n) + 1))
    q, r = np.linalg.qr(rng.standard_normal((1 << k, 1 << k)) + 1j * rng.standard_normal((1 << k, 1 << k)))
    targets = rng.permutation(n)[:k]
    return Gate("U", q, tuple(int(t) for t in targets))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_apply_matches_dense_embedding(rng, n):
    # the Kronecker-and-permute embedding is the oracle for the index-sliced path
    for _ in range(10):
        g = random_gate(rng, n)
        psi = PureState.random(n, rng)
        assert np.allclose(apply(g, psi).amplitudes, embed(g, n) @ psi.amplitudes, atol=1e-12)


def test_embed_of_ordered_targets_is_kron():
    g = controlled_phase(2, 1, 2)
    assert np.allclose(embed(g, 3), np.kron(np.eye(2), g.matrix))
    assert np.allclose(embed(standard_gate("Z", 0), 2), np.kron(Z, np.eye(2)))
    assert np.allclose(embed(standard_gate("H", 1), 2), np.kron(np.eye(2), H))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 5))
def test_apply_preserves_norm(seed, n):
    rng = np.random.default_rng(seed)
    psi = apply(random_gate(rng, n), PureState.random(n, rng))
    assert abs(np.linalg.norm(psi.amplitudes) - 1) < 1e-12


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 5))
def test_single_qubit_gates_leave_entropies_unchanged(seed, n):
    rng = np.random.default_rng(seed)
    psi = PureState.random(n, rng)
    q, _ = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
    g = Gate("U", q, (int(rng.integers(n)),))
    before, after = entropy_vector(psi), entropy_vector(apply(g, psi))
    assert np.allclose(before.values, after.values, atol=1e-9)
