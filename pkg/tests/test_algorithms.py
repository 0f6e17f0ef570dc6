import numpy as np
import pytest

from qentropy.algorithms import (
    GroverSpec,
    QftSpec,
    QpeSpec,
    bit_reversal,
    build_grover,
    build_qft,
    build_qpe,
    dft_matrix,
    entangled_eigenvector,
    entangled_phase_unitary,
    goal_probability,
    grover_goal_probability,
    phase_unitary,
    qpe_input,
    qpe_readout,
    textbook_grover_probability,
)
from qentropy.circuits import Circuit, condense, final_state, run
from qentropy.entropy import entropy_vector, norm2
from qentropy.gates import embed, multi_controlled_x, multi_controlled_z, standard_gate
from qentropy.state import PureState


def circuit_matrix(c: Circuit) -> np.ndarray:
    u = np.eye(1 << c.num_qubits, dtype=complex)
    for g in c.gates:
        u = embed(g, c.num_qubits) @ u
    return u


# -- Grover -------------------------------------------------------------------

def test_grover_step_count():
    assert len(condense(build_grover(GroverSpec(4, "1101", 16)))) == 65


def test_smallest_grover_instance():
    steps = condense(build_grover(GroverSpec(1, "1", 1)))
    labels = [s.label for s in steps]
    assert labels == ["H@0 X@1", "CpsiX(1)@0-1", "H@0", "C0Z@0-1", "H@0"]


def test_grover_spec_validation():
    with pytest.raises(ValueError):
        GroverSpec(3, "1101")
    with pytest.raises(ValueError):
        GroverSpec(2, "12")
    with pytest.raises(ValueError):
        GroverSpec(2, "10", 0)


@pytest.mark.parametrize("m, goal", [(2, "10"), (3, "011"), (4, "1101"), (5, "11010")])
def test_exact_goal_probability_law(m, goal):
    traces = run(build_grover(GroverSpec(m, goal, 16)), PureState.zeros(m + 1))
    # every iteration is 4 condensed steps after the init layer
    sim = [goal_probability(traces[4 * k].state_after, goal) for k in range(17)]
    assert np.allclose(sim, grover_goal_probability(m, np.arange(17)), atol=1e-12)


def test_goal_probability_does_not_depend_on_goal():
    a = final_state(build_grover(GroverSpec(3, "011", 5)), PureState.zeros(4))
    b = final_state(build_grover(GroverSpec(3, "110", 5)), PureState.zeros(4))
    assert goal_probability(a, "011") == pytest.approx(goal_probability(b, "110"), abs=1e-12)


def phase_oracle_grover(m, goal, iterations):
    """Textbook variant: |-> ancilla, diffusion reflecting about the uniform state."""
    search, anc = list(range(m)), m
    c = Circuit(m + 1)
    c.extend(standard_gate("H", q) for q in search)
    c.append(standard_gate("X", anc))
    c.append(standard_gate("H", anc))
    for _ in range(iterations):
        c.append(multi_controlled_x(goal, search + [anc]))
        c.extend(standard_gate("H", q) for q in search)
        c.append(standard_gate("X", m - 1))
        c.append(multi_controlled_z(m - 1, search))
        c.append(standard_gate("X", m - 1))
        c.extend(standard_gate("H", q) for q in search)
    return c


@pytest.mark.parametrize("m, goal", [(2, "01"), (4, "1101"), (5, "11010")])
def test_textbook_law_holds_for_phase_oracle_variant(m, goal):
    psi = PureState.zeros(m + 1)
    probs = [goal_probability(final_state(phase_oracle_grover(m, goal, k), psi), goal) for k in range(8)]
    assert np.allclose(probs, textbook_grover_probability(m, np.arange(8)), atol=1e-12)


def test_textbook_law_does_not_describe_diagrammed_circuit():
    k = np.arange(17)
    exact = grover_goal_probability(4, k)
    assert np.max(np.abs(exact - textbook_grover_probability(4, k))) > 0.3


# -- QFT ----------------------------------------------------------------------

def test_qft_one_qubit_is_h():
    c = build_qft(QftSpec(1))
    assert [g.label for g in c.gates] == ["H"]


def test_qft_gate_patterns():
    c2 = build_qft(QftSpec(2))
    assert [g.describe() for g in c2.gates] == ["H@0", "CRk(2)@1-0", "H@1"]
    c3 = build_qft(QftSpec(3))
    assert [g.label for g in c3.gates] == ["H", "CRk(2)", "CRk(3)", "H", "CRk(2)", "H"]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_qft_is_dft_with_reversed_output(n):
    u = circuit_matrix(build_qft(QftSpec(n)))
    rev = bit_reversal(n)
    assert np.allclose(u[rev], dft_matrix(n), atol=1e-10)


def test_qft_of_zero_is_uniform():
    psi = final_state(build_qft(QftSpec(2)), PureState.zeros(2))
    assert np.allclose(np.abs(psi.amplitudes), 0.5)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_qft_then_inverse_is_identity(rng, n):
    both = Circuit(n, build_qft(QftSpec(n)).gates + build_qft(QftSpec(n, inverse=True)).gates)
    assert np.allclose(circuit_matrix(both), np.eye(1 << n), atol=1e-10)


def test_bit_reversal():
    assert list(bit_reversal(3)) == [0, 4, 2, 6, 1, 5, 3, 7]


# -- phase estimation ---------------------------------------------------------

@pytest.mark.parametrize("t", [1, 2, 3, 4, 5])
def test_qpe_reads_exact_phases(t):
    for k in range(1 << t):
        spec = QpeSpec(t, phase_unitary(k / 2**t), PureState.from_bitstring("1"))
        psi = final_state(build_qpe(spec), qpe_input(spec))
        got, prob = qpe_readout(psi, t)
        assert got == k
        assert prob == pytest.approx(1.0, abs=1e-10)


def test_qpe_inexact_phase_peaks_at_nearest():
    spec = QpeSpec(4, phase_unitary(0.3), PureState.from_bitstring("1"))
    k, prob = qpe_readout(final_state(build_qpe(spec), qpe_input(spec)), 4)
    assert k == round(0.3 * 16)
    assert 4 / np.pi**2 < prob < 1


def test_qpe_with_entangled_eigenvector():
    spec = QpeSpec(3, entangled_phase_unitary(0.25), entangled_eigenvector())
    assert spec.phase == pytest.approx(0.25)
    k, prob = qpe_readout(final_state(build_qpe(spec), qpe_input(spec)), 3)
    assert (k, round(prob, 10)) == (2, 1.0)


def test_qpe_rejects_non_eigenvector():
    with pytest.raises(ValueError):
        QpeSpec(2, phase_unitary(0.25), PureState.normalized([1, 1]))
    with pytest.raises(ValueError):
        QpeSpec(2, np.array([[1, 1], [0, 1]]), PureState.from_bitstring("1"))


def test_phase_kickback_creates_no_entanglement():
    # before the inverse QFT every precision qubit is a product factor
    for phase in (0.125, 0.3, 0.71):
        spec = QpeSpec(4, phase_unitary(phase), PureState.from_bitstring("1"))
        c = build_qpe(spec)
        head = Circuit(c.num_qubits, c.gates[:c.metadata["inverse_qft_start"]])
        psi = final_state(head, qpe_input(spec))
        assert norm2(entropy_vector(psi)) < 1e-9
