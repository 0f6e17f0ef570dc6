"""
GHZ and monogamy of mutual information
======================================

Prepares GHZ on four qubits and lists every MMI check: the 3-qubit
subsystems fail at -1, tripartitions of the whole register sit at 0.
"""

from qentropy.circuits import Circuit
from qentropy.entropy import entropy_vector, norm2
from qentropy.gates import multi_controlled_x, standard_gate
from qentropy.inequalities import check_table, saturations
from qentropy.runner import RunConfig, emit_csv, execute
from qentropy.state import PureState, qubits_of

c = Circuit(4, [standard_gate("H", 0)])
c.extend(multi_controlled_x("1", [q, q + 1]) for q in range(3))

traces = []
reports, _ = execute(RunConfig("custom", c), traces)
print(emit_csv(reports))

ev = entropy_vector(traces[-1].state_after)
for blocks, s in zip(check_table(4, "mmi"), saturations(ev, "mmi")):
    parts = " | ".join(str(list(qubits_of(int(b)))) for b in blocks)
    print(f"{parts:24s} {s:+.3f}")
print("entropy vector norm", norm2(ev))
