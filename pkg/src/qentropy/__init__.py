"""Entropy-vector and entropy-inequality tracking for simulated quantum circuits."""

__version__ = "0.1.0"

from .algorithms import (  # noqa: E402
    GroverSpec,
    QftSpec,
    QpeSpec,
    build_grover,
    build_qft,
    build_qpe,
)
from .circuits import Circuit, Step, StepTrace, condense, run  # noqa: E402
from .entropy import EntropyVector, entropy_bits, entropy_vector, norm2  # noqa: E402
from .inequalities import StepReport, analyze_step, enumerate_partitions  # noqa: E402
from .state import DensityMatrix, PureState, density_of, partial_trace, reduced_density  # noqa: E402

__all__ = [
    "Circuit", "DensityMatrix", "EntropyVector", "GroverSpec", "PureState", "QftSpec",
    "QpeSpec", "Step", "StepReport", "StepTrace", "analyze_step", "build_grover",
    "build_qft", "build_qpe", "condense", "density_of", "entropy_bits", "entropy_vector",
    "enumerate_partitions", "norm2", "partial_trace", "reduced_density", "run",
]
