"""Saturation of SA, SSA, MMI and Ingleton over all partitions of all subsystems.

A saturation is LHS - RHS of an inequality written as ``LHS >= 0``. Every
term is the entropy of a union of partition blocks, so one
:class:`~qentropy.entropy.EntropyVector` per step feeds every check.

Two enumeration conventions are supported:

``proper``
    Every nonempty subsystem T and every set partition of T into exactly
    ``arity`` nonempty blocks.
``padded``
    Every subsystem T, the empty one included, and every partition of T
    into *at most* ``arity`` nonempty blocks, padded with empty blocks.
    A check with an empty block collapses to zero (SA, MMI) or to a mutual
    information (SSA, Ingleton), so it never fails and only grows the
    denominator; it is the counting that yields the Grover MMI failure
    ratios 40/187, 260/715 and 1400/2795.

Role assignments are expanded modulo each inequality's symmetry: SA and MMI
are fully symmetric, SSA distinguishes B (A <-> C symmetric), and Ingleton
is symmetric under A <-> B and C <-> D.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, NamedTuple

import numpy as np

from .entropy import EntropyVector, _disjoint, norm2

INEQUALITIES = ("sa", "ssa", "mmi", "ingleton")
ARITY = {"sa": 2, "ssa": 3, "mmi": 3, "ingleton": 4}
ROLE_SENSITIVE = {"sa": False, "ssa": True, "mmi": False, "ingleton": True}
CONVENTIONS = ("proper", "padded")
PROVEN = ("sa", "ssa")
TOL_FAIL = 1e-9


class IntegrityError(RuntimeError):
    """A proven inequality (SA or SSA) failed: the simulation is broken."""


class Partition(NamedTuple):
    blocks: tuple[int, ...]
    subsystem: int
    role_sensitive: bool = False


# -- enumeration --------------------------------------------------------------

def set_partitions(elements, k: int) -> Iterator[list[list]]:
    """Partitions of ``elements`` into exactly ``k`` nonempty blocks."""
    elements = list(elements)
    if k == 0:
        if not elements:
            yield []
        return
    if len(elements) < k:
        return
    first, rest = elements[0], elements[1:]
    for p in set_partitions(rest, k - 1):
        yield [[first]] + p
    for p in set_partitions(rest, k):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def _block_key(mask: int):
    # nonempty blocks by ascending lowest qubit, empty blocks last
    return (mask == 0, (mask & -mask) if mask else 0)


def _role_assignments(blocks: tuple[int, ...], arity: int) -> list[tuple[int, ...]]:
    if arity == 3:
        seen, out = set(), []
        for i in range(3):
            a, c = sorted(blocks[j] for j in range(3) if j != i)
            key = (a, blocks[i], c)
            if key not in seen:
                seen.add(key)
                out.append(key)
        return out
    if arity == 4:
        seen, out = set(), []
        for pair in combinations(range(4), 2):
            a, b = sorted(blocks[j] for j in pair)
            c, d = sorted(blocks[j] for j in range(4) if j not in pair)
            key = (a, b, c, d)
            if key not in seen:
                seen.add(key)
                out.append(key)
        return out
    return [blocks]


def enumerate_partitions(
    num_qubits: int, arity: int, role_sensitive: bool = False, allow_empty: bool = False
) -> Iterator[Partition]:
    """All partitions of all subsystems, subsystems by ascending bitmask.

    With ``allow_empty`` this is the ``padded`` convention (see module docs).
    """
    if arity not in (2, 3, 4):
        raise ValueError(f"arity must be 2, 3 or 4, got {arity}")
    for t in range(0 if allow_empty else 1, 1 << num_qubits):
        qubits = [q for q in range(num_qubits) if t >> q & 1]
        sizes = range(min(arity, len(qubits)), -1, -1) if allow_empty else (arity,)
        for j in sizes:
            if allow_empty and j == 0 and qubits:
                continue
            for p in set_partitions(qubits, j):
                masks = [sum(1 << q for q in block) for block in p]
                masks += [0] * (arity - j)
                blocks = tuple(sorted(masks, key=_block_key))
                if role_sensitive:
                    for roles in _role_assignments(blocks, arity):
                        yield Partition(roles, t, True)
                else:
                    yield Partition(blocks, t, False)


@lru_cache(maxsize=None)
def check_table(num_qubits: int, inequality: str, convention: str = "proper") -> np.ndarray:
    """Block masks of every check, shape (checks, arity), in enumeration order."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    arity = ARITY[inequality]
    rows = [p.blocks for p in enumerate_partitions(
        num_qubits, arity, ROLE_SENSITIVE[inequality], allow_empty=convention == "padded")]
    table = np.array(rows, dtype=np.int64).reshape(-1, arity)
    table.flags.writeable = False
    return table


def check_count(num_qubits: int, inequality: str, convention: str = "proper") -> int:
    return len(check_table(num_qubits, inequality, convention))


# -- saturations --------------------------------------------------------------
# the underscored kernels take a raw entropy array and broadcast over mask arrays

def _sa(s, a, b):
    return s[a] + s[b] - s[a | b]


def _ssa(s, a, b, c):
    return s[a | b] + s[b | c] - s[a | b | c] - s[b]


def _mmi(s, a, b, c):
    return s[a | b] + s[b | c] + s[a | c] - s[a] - s[b] - s[c] - s[a | b | c]


def _ingleton(s, a, b, c, d):
    # I(A:B|C) + I(A:B|D) + I(C:D) - I(A:B) with S(C), S(D) cancelled
    return (s[a | c] + s[b | c] + s[a | d] + s[b | d] + s[a | b]
            - s[a | b | c] - s[a | b | d] - s[c | d] - s[a] - s[b])


_KERNELS = {"sa": _sa, "ssa": _ssa, "mmi": _mmi, "ingleton": _ingleton}


def saturation_sa(ev: EntropyVector, a: int, b: int) -> float:
    _disjoint(a, b)
    return float(_sa(ev.values, a, b))


def saturation_ssa(ev: EntropyVector, a: int, b: int, c: int) -> float:
    _disjoint(a, b, c)
    return float(_ssa(ev.values, a, b, c))


def saturation_mmi(ev: EntropyVector, a: int, b: int, c: int) -> float:
    _disjoint(a, b, c)
    return float(_mmi(ev.values, a, b, c))


def saturation_ingleton(ev: EntropyVector, a: int, b: int, c: int, d: int) -> float:
    _disjoint(a, b, c, d)
    return float(_ingleton(ev.values, a, b, c, d))


def saturations(ev: EntropyVector, inequality: str, convention: str = "proper") -> np.ndarray:
    """Saturation of every check of one inequality, in enumeration order."""
    table = check_table(ev.num_qubits, inequality, convention)
    return _KERNELS[inequality](ev.values, *table.T)


# -- per-step statistics ------------------------------------------------------

@dataclass(frozen=True)
class InequalityStats:
    check_count: int
    min_saturation: float
    mean_saturation: float
    failure_count: int
    failure_ratio: float
    mean_failure_saturation: float

    @classmethod
    def from_saturations(cls, sat: np.ndarray, tol_fail: float = TOL_FAIL) -> "InequalityStats":
        n = int(sat.size)
        if n == 0:
            return cls(0, 0.0, 0.0, 0, 0.0, 0.0)
        failed = sat[sat < -tol_fail]
        return cls(
            check_count=n,
            min_saturation=float(sat.min()),
            mean_saturation=float(sat.mean()),
            failure_count=int(failed.size),
            failure_ratio=failed.size / n,
            mean_failure_saturation=float(failed.mean()) if failed.size else 0.0,
        )


@dataclass(frozen=True)
class StepReport:
    step_index: int
    stats: dict[str, InequalityStats]
    entropy_norm: float
    step_kind: str = ""
    gate_label: str = ""
    extras: dict = field(default_factory=dict)

    def __getitem__(self, inequality: str) -> InequalityStats:
        return self.stats[inequality]


def analyze_step(
    ev: EntropyVector,
    tol_fail: float = TOL_FAIL,
    convention: str = "proper",
    step_index: int = 0,
    step_kind: str = "",
    gate_label: str = "",
) -> StepReport:
    """Evaluate all four inequality families on one entropy vector.

    Raises :class:`IntegrityError` if SA or SSA fails beyond ``tol_fail``.
    """
    stats = {}
    for name in INEQUALITIES:
        sat = saturations(ev, name, convention)
        st = InequalityStats.from_saturations(sat, tol_fail)
        if name in PROVEN and st.failure_count:
            raise IntegrityError(
                f"step {step_index}: {name.upper()} violated "
                f"(min saturation {st.min_saturation:.3e}); the simulation is inconsistent"
            )
        stats[name] = st
    return StepReport(step_index, stats, norm2(ev), step_kind, gate_label)
