"""The abstract matrix-vector processor contract and its operation ledger.

A machine owns an n x n Boolean input array whose columns can be switched
on ("active") and off, an n-dimensional input vector, and an n-dimensional
output vector whose sections start at 1. One matrix-vector pass runs

    load_vector -> sync_columns -> set_output -> report_output -> reset_output

and leaves the reported vector equal to the Boolean product of the loaded
array and the vector: coordinate i is 1 exactly when row i holds a 1 in
some active column. Out-of-order calls raise MachineStateError instead of
silently doing nothing, so driver bugs surface early. Column activation
survives reset_output; it only changes when the next vector is synced.

Cost model. Every mechanical primitive charges exactly one category:

    load_matrix      n*n CellLoad, plus one ColumnDeactivate for each
                     column still active when loading starts
    load_vector      n VectorCoordLoad
    sync_columns     n ScanStep, plus one ColumnActivate/ColumnDeactivate
                     per column whose state differs from the vector
    set_output       axis backend: n LadderMove plus one OutputSwitch per
                     unblocked row; wall backend: n LightObserve plus one
                     OutputSwitch per row where the light is observed
    report_output    n OutputCoordReport
    reset_output     axis backend: n ResetStep (ladder returns) plus one
                     ResetStep per output section switched back to 1;
                     wall backend: one ResetStep per switch-back

Under these constants a full pass costs at most 8n operations and a fresh
machine's matrix product costs at most 9n^2; the test suite asserts those
bounds as exact arithmetic inequalities. Parallel drives (where a backend
offers one) group charges into phases: one phase is one machine-wide
motion, and the ledger records the operations charged inside each phase.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Iterator, Mapping

from .bits import BitMatrix, BitVector, DimensionError


class MachineStateError(RuntimeError):
    """An operation was invoked out of order or against its precondition."""


class OpCategory(Enum):
    """Kinds of counted mechanical operations. Each primitive a backend
    executes increments exactly one category."""

    COLUMN_ACTIVATE = "column_activate"
    COLUMN_DEACTIVATE = "column_deactivate"
    SCAN_STEP = "scan_step"
    LADDER_MOVE = "ladder_move"
    OUTPUT_SWITCH = "output_switch"
    LIGHT_OBSERVE = "light_observe"
    WALL_SHIFT = "wall_shift"
    CELL_LOAD = "cell_load"
    VECTOR_COORD_LOAD = "vector_coord_load"
    OUTPUT_COORD_REPORT = "output_coord_report"
    RESET_STEP = "reset_step"


@dataclass(frozen=True, eq=True)
class OpCounts:
    """Immutable snapshot of an OpLog.

    `phase_ops[k]` is the number of operations charged during the k-th
    completed parallel phase. Subtracting an earlier snapshot of the same
    machine yields the counts for the interval between the two.
    """

    counts: Mapping[OpCategory, int]
    phase_ops: tuple[int, ...] = ()

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def parallel_phases(self) -> int:
        return len(self.phase_ops)

    def count(self, category: OpCategory) -> int:
        return self.counts[category]

    def __sub__(self, earlier: "OpCounts") -> "OpCounts":
        if self.phase_ops[: len(earlier.phase_ops)] != earlier.phase_ops:
            raise ValueError("snapshots do not share a machine history")
        counts = {c: self.counts[c] - earlier.counts[c] for c in OpCategory}
        if any(v < 0 for v in counts.values()):
            raise ValueError("snapshots do not share a machine history")
        return OpCounts(counts, self.phase_ops[len(earlier.phase_ops):])


class OpLog:
    """Mutable tally of counted mechanical operations.

    Machines charge into it; harnesses read it between operations via
    `snapshot()`. `total` always equals the sum over categories. Counts
    only grow until `reset()` is called explicitly.
    """

    def __init__(self) -> None:
        self._counts: dict[OpCategory, int] = {c: 0 for c in OpCategory}
        self._phase_ops: list[int] = []
        self._in_phase = False

    def charge(self, category: OpCategory, amount: int = 1) -> None:
        self._counts[category] += amount

    @contextmanager
    def phase(self) -> Iterator[None]:
        """Account one parallel phase; charges inside are attributed to it."""
        if self._in_phase:
            raise MachineStateError("parallel phases cannot nest")
        self._in_phase = True
        start = self.total
        try:
            yield
            self._phase_ops.append(self.total - start)
        finally:
            self._in_phase = False

    @property
    def total(self) -> int:
        return sum(self._counts.values())

    @property
    def parallel_phases(self) -> int:
        return len(self._phase_ops)

    @property
    def phase_ops(self) -> tuple[int, ...]:
        return tuple(self._phase_ops)

    def count(self, category: OpCategory) -> int:
        return self._counts[category]

    def snapshot(self) -> OpCounts:
        return OpCounts(dict(self._counts), tuple(self._phase_ops))

    def reset(self) -> None:
        self._counts = {c: 0 for c in OpCategory}
        self._phase_ops = []


class MvpMachine(ABC):
    """Abstract matrix-vector processor.

    Subclasses supply the physical mechanism (how a column is switched,
    how a row's disjunction is sensed, how the output resets) through the
    underscore hooks; the six contract operations, the legal call order
    and the shared parts of the cost model live here.

    Inspection helpers (`loaded_matrix`, `loaded_vector`, `column_active`,
    `active_columns`) read machine state without charging operations; they
    model an observer looking at the machine, not the machine working.
    """

    backend: ClassVar[str]
    supports_parallel: ClassVar[bool] = False

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError(f"machine dimension must be >= 1, got {n}")
        self.n = n
        self._log = OpLog()
        self._vector: BitVector | None = None
        self._matrix_loaded = False
        self._synced = False
        self._output_set = False

    @property
    def oplog(self) -> OpLog:
        """The machine's operation ledger (read-only by convention)."""
        return self._log

    # -- inspection, uncounted ------------------------------------------------

    @abstractmethod
    def loaded_matrix(self) -> BitMatrix:
        """Current content of the input array."""

    def loaded_vector(self) -> BitVector | None:
        return self._vector

    @abstractmethod
    def column_active(self, j: int) -> bool:
        """Whether column j (0-based) is currently switched on."""

    def active_columns(self) -> frozenset[int]:
        return frozenset(j for j in range(self.n) if self.column_active(j))

    # -- physics hooks supplied by backends -----------------------------------

    @abstractmethod
    def _install_column(self, j: int, entries: tuple[int, ...]) -> None:
        """Write one column of array content; the column is inactive."""

    @abstractmethod
    def _activate(self, j: int) -> None:
        """Switch column j on, charging the backend's activation op."""

    @abstractmethod
    def _deactivate(self, j: int) -> None:
        """Switch column j off, charging the backend's deactivation op."""

    @abstractmethod
    def _set_output_sections(self) -> None:
        """Drive the output mechanism once for every row, with charges."""

    @abstractmethod
    def _output_bits(self) -> tuple[int, ...]:
        """Current output sections (1 = row has a 1 in an active column)."""

    @abstractmethod
    def _reset_output_mechanism(self) -> None:
        """Restore the output mechanism to its initial state, with charges."""

    # -- the six contract operations ------------------------------------------

    def load_matrix(self, a: BitMatrix) -> None:
        """Read a matrix into the input array (at most n^2 + n operations).

        Any still-active column is switched off first, so the machine ends
        with content equal to `a` and every column inactive.
        """
        if a.n != self.n:
            raise DimensionError(f"machine is {self.n}x{self.n}, matrix is {a.n}x{a.n}")
        for j in range(self.n):
            if self.column_active(j):
                self._deactivate(j)
        for j in range(self.n):
            self._install_column(j, tuple(a.rows[i][j] for i in range(self.n)))
            self._log.charge(OpCategory.CELL_LOAD, self.n)
        self._matrix_loaded = True
        self._synced = False

    def load_vector(self, v: BitVector) -> None:
        """Read a vector into the input vector (n operations). Does not
        touch column activation; call sync_columns afterwards."""
        if v.n != self.n:
            raise DimensionError(f"machine is {self.n}x{self.n}, vector has {v.n} coordinates")
        self._vector = v
        self._log.charge(OpCategory.VECTOR_COORD_LOAD, self.n)
        self._synced = False

    def sync_columns(self) -> None:
        """Scan the loaded vector and toggle columns so that column j is
        active exactly when coordinate j is 1 (at most 2n operations).

        Only columns whose state differs are toggled, so repeating the call
        with an unchanged vector performs zero activations/deactivations.
        """
        if not self._matrix_loaded:
            raise MachineStateError("sync_columns called before load_matrix")
        if self._vector is None:
            raise MachineStateError("sync_columns called before load_vector")
        if self._output_set:
            raise MachineStateError("sync_columns called before reset_output")
        for j in range(self.n):
            self._log.charge(OpCategory.SCAN_STEP)
            want = self._vector[j] == 1
            if want and not self.column_active(j):
                self._activate(j)
            elif not want and self.column_active(j):
                self._deactivate(j)
        self._synced = True

    def set_output(self) -> None:
        """Compute every output coordinate from the active columns
        (at most 2n operations)."""
        if not self._synced:
            raise MachineStateError("set_output called before sync_columns")
        if self._output_set:
            raise MachineStateError("set_output called before reset_output")
        self._set_output_sections()
        self._output_set = True

    def report_output(self) -> BitVector:
        """Read the output vector (n operations, non-destructive)."""
        if not self._output_set:
            raise MachineStateError("report_output called before set_output")
        self._log.charge(OpCategory.OUTPUT_COORD_REPORT, self.n)
        return BitVector(self._output_bits())

    def reset_output(self) -> None:
        """Restore the output mechanism to its initial state (at most 2n
        operations). Legal in any state; resetting an already-initial
        output changes nothing observable. Column activation is untouched,
        so a following set_output (no resync needed) recomputes the same
        output."""
        self._reset_output_mechanism()
        self._output_set = False
