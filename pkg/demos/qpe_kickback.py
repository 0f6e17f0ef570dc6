"""
Phase estimation and phase kickback
===================================

With a product eigenvector the controlled powers only rotate phases, so the
entropy vector stays zero until the inverse QFT. With the entangled
eigenvector (|01> + |10>)/sqrt(2) the norm is flat over the same window and
grows with the number of precision qubits afterwards.
"""

from qentropy.algorithms import (
    QpeSpec,
    build_qpe,
    entangled_eigenvector,
    entangled_phase_unitary,
    phase_unitary,
)
from qentropy.runner import RunConfig, execute
from qentropy.state import PureState

for t in (3, 4, 5):
    for label, spec in (
        ("|1>, phase 1/8", QpeSpec(t, phase_unitary(1 / 8), PureState.from_bitstring("1"))),
        ("entangled, phase 0.3", QpeSpec(t, entangled_phase_unitary(0.3), entangled_eigenvector())),
    ):
        reports, manifest = execute(RunConfig("qpe", spec))
        start = build_qpe(spec).metadata["inverse_qft_start"]
        norms = " ".join(f"{r.entropy_norm:.2f}" for r in reports)
        mmi = min(r["mmi"].min_saturation for r in reports)
        print(f"t={t} {label:22s} inverse QFT from gate {start}; norms {norms}; min MMI {mmi:.3f}")
