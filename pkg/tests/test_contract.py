"""The shared machine protocol: call order, exact charges, state readback."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvpsim import (
    BitMatrix,
    BitVector,
    DimensionError,
    MachineStateError,
    OpCategory,
    OpLog,
    oracle_matvec,
)
from conftest import bit_matrices, bit_vectors, matrix_vector_pairs

A4 = BitMatrix(((1, 0, 1, 0), (1, 1, 0, 1), (0, 0, 0, 0), (1, 0, 1, 1)))


def run_pass(machine, v):
    machine.load_vector(v)
    machine.sync_columns()
    machine.set_output()
    out = machine.report_output()
    machine.reset_output()
    return out


class TestProtocol:
    def test_dimension_must_be_positive(self, machine_cls):
        with pytest.raises(ValueError):
            machine_cls(0)
        with pytest.raises(ValueError):
            machine_cls(-3)

    def test_sync_before_load_matrix(self, machine_cls):
        m = machine_cls(4)
        m.load_vector(BitVector.ones(4))
        with pytest.raises(MachineStateError):
            m.sync_columns()

    def test_sync_before_load_vector(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        with pytest.raises(MachineStateError):
            m.sync_columns()

    def test_set_before_sync(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        m.load_vector(BitVector.ones(4))
        with pytest.raises(MachineStateError):
            m.set_output()

    def test_loading_a_vector_invalidates_sync(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        m.load_vector(BitVector.ones(4))
        m.sync_columns()
        m.load_vector(BitVector.zeros(4))
        with pytest.raises(MachineStateError):
            m.set_output()

    def test_loading_a_matrix_invalidates_sync(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        m.load_vector(BitVector.ones(4))
        m.sync_columns()
        m.load_matrix(A4)
        with pytest.raises(MachineStateError):
            m.set_output()

    def test_report_before_set(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        m.load_vector(BitVector.ones(4))
        m.sync_columns()
        with pytest.raises(MachineStateError):
            m.report_output()

    def test_reset_is_legal_in_any_state(self, machine_cls):
        m = machine_cls(4)
        m.reset_output()  # fresh machine: nothing observable happens
        assert m.oplog.total <= 2 * 4
        m.load_matrix(A4)
        run_pass(m, BitVector((1, 0, 1, 0)))
        m.reset_output()  # extra reset after a completed pass is fine too
        assert all(not m.column_active(j) or j in (0, 2) for j in range(4))

    def test_set_output_reusable_after_reset_without_resync(self, machine_cls):
        # Activation persists across reset, so a second stroke recomputes
        # the same output without loading or syncing again.
        m = machine_cls(4)
        m.load_matrix(A4)
        m.load_vector(BitVector((1, 0, 1, 0)))
        m.sync_columns()
        m.set_output()
        first = m.report_output()
        m.reset_output()
        m.set_output()
        assert m.report_output() == first == BitVector((1, 1, 0, 1))

    def test_no_second_stroke_without_reset(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        m.load_vector(BitVector.ones(4))
        m.sync_columns()
        m.set_output()
        with pytest.raises(MachineStateError):
            m.set_output()
        with pytest.raises(MachineStateError):
            m.sync_columns()

    def test_report_is_repeatable(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        m.load_vector(BitVector((1, 0, 1, 0)))
        m.sync_columns()
        m.set_output()
        assert m.report_output() == m.report_output()

    def test_dimension_mismatches(self, machine_cls):
        m = machine_cls(3)
        with pytest.raises(DimensionError):
            m.load_matrix(A4)
        with pytest.raises(DimensionError):
            m.load_vector(BitVector.ones(4))


class TestCharges:
    def test_load_matrix_fresh(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        log = m.oplog
        assert log.count(OpCategory.CELL_LOAD) == 16
        assert log.count(OpCategory.COLUMN_DEACTIVATE) == 0
        assert log.total == 16

    def test_load_matrix_clears_active_columns(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        m.load_vector(BitVector((1, 1, 0, 1)))
        m.sync_columns()
        before = m.oplog.snapshot()
        m.load_matrix(BitMatrix.identity(4))
        delta = m.oplog.snapshot() - before
        assert delta.count(OpCategory.CELL_LOAD) == 16
        assert delta.count(OpCategory.COLUMN_DEACTIVATE) == 3
        assert m.active_columns() == frozenset()

    def test_load_vector_charge(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        before = m.oplog.snapshot()
        m.load_vector(BitVector.zeros(4))
        delta = m.oplog.snapshot() - before
        assert delta.count(OpCategory.VECTOR_COORD_LOAD) == 4
        assert delta.total == 4

    def test_sync_toggles_exactly_the_difference(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        m.load_vector(BitVector((1, 0, 1, 0)))
        m.sync_columns()
        assert m.active_columns() == {0, 2}
        before = m.oplog.snapshot()
        m.load_vector(BitVector((0, 1, 1, 0)))
        m.sync_columns()
        delta = m.oplog.snapshot() - before
        assert delta.count(OpCategory.SCAN_STEP) == 4
        assert delta.count(OpCategory.COLUMN_ACTIVATE) == 1
        assert delta.count(OpCategory.COLUMN_DEACTIVATE) == 1
        assert m.active_columns() == {1, 2}

    def test_resync_unchanged_vector_is_scan_only(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        m.load_vector(BitVector((1, 1, 0, 0)))
        m.sync_columns()
        before = m.oplog.snapshot()
        m.sync_columns()
        delta = m.oplog.snapshot() - before
        assert delta.count(OpCategory.SCAN_STEP) == 4
        assert delta.count(OpCategory.COLUMN_ACTIVATE) == 0
        assert delta.count(OpCategory.COLUMN_DEACTIVATE) == 0
        assert delta.total == 4

    def test_report_charge_and_value(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        m.load_vector(BitVector((1, 0, 1, 0)))
        m.sync_columns()
        m.set_output()
        before = m.oplog.snapshot()
        out = m.report_output()
        delta = m.oplog.snapshot() - before
        assert delta.count(OpCategory.OUTPUT_COORD_REPORT) == 4
        assert delta.total == 4
        assert out == BitVector((1, 1, 0, 1))

    def test_activation_survives_reset(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        v = BitVector((0, 1, 0, 1))
        run_pass(m, v)
        assert m.active_columns() == {1, 3}

    @given(matrix_vector_pairs())
    @settings(max_examples=60)
    def test_pass_budget_and_equivalence(self, machine_cls, pair):
        a, v = pair
        m = machine_cls(a.n)
        m.load_matrix(a)
        before = m.oplog.snapshot()
        out = run_pass(m, v)
        delta = m.oplog.snapshot() - before
        assert out == oracle_matvec(a, v)
        assert delta.total <= 8 * a.n

    @given(bit_vectors(5), st.sets(st.integers(0, 4)))
    @settings(max_examples=60)
    def test_sync_fixes_any_prior_activation(self, machine_cls, v, pre_active):
        m = machine_cls(5)
        m.load_matrix(BitMatrix.ones(5))
        raw = m.activate_column if machine_cls.backend == "axis" else m.shift_wall_down
        for j in sorted(pre_active):
            raw(j)
        m.load_vector(v)
        m.sync_columns()
        assert m.active_columns() == {j for j in range(5) if v[j] == 1}

    @given(st.lists(bit_vectors(5), min_size=1, max_size=8))
    @settings(max_examples=40)
    def test_column_state_tracks_last_synced_vector(self, machine_cls, vectors):
        a = BitMatrix.identity(5)
        m = machine_cls(5)
        m.load_matrix(a)
        for v in vectors:
            out = run_pass(m, v)
            assert out == oracle_matvec(a, v)
            assert m.active_columns() == {j for j in range(5) if v[j] == 1}


class TestReadback:
    def test_loaded_matrix_round_trip(self, machine_cls):
        m = machine_cls(4)
        m.load_matrix(A4)
        assert m.loaded_matrix() == A4

    def test_loaded_vector(self, machine_cls):
        m = machine_cls(4)
        assert m.loaded_vector() is None
        m.load_matrix(A4)
        m.load_vector(BitVector((1, 0, 0, 1)))
        assert m.loaded_vector() == BitVector((1, 0, 0, 1))

    @given(bit_matrices(3))
    def test_readback_any(self, machine_cls, a):
        m = machine_cls(3)
        m.load_matrix(a)
        assert m.loaded_matrix() == a
        m.load_matrix(BitMatrix.zeros(3))
        assert m.loaded_matrix() == BitMatrix.zeros(3)


class TestOpLog:
    def test_total_is_sum_of_categories(self, machine_cls):
        m = machine_cls(3)
        m.load_matrix(BitMatrix.ones(3))
        run_pass(m, BitVector.ones(3))
        snap = m.oplog.snapshot()
        assert snap.total == sum(snap.counts[c] for c in OpCategory)
        assert m.oplog.total == snap.total

    def test_counts_only_grow(self, machine_cls):
        m = machine_cls(3)
        m.load_matrix(BitMatrix.ones(3))
        totals = []
        for _ in range(3):
            run_pass(m, BitVector.ones(3))
            totals.append(m.oplog.total)
        assert totals == sorted(totals)
        assert totals[0] > 0

    def test_snapshot_subtraction_requires_shared_history(self):
        a, b = OpLog(), OpLog()
        with a.phase():
            a.charge(OpCategory.LADDER_MOVE, 2)
        with b.phase():
            b.charge(OpCategory.SCAN_STEP)
        with pytest.raises(ValueError):  # phase shapes disagree
            b.snapshot() - a.snapshot()
        c = OpLog()
        c.charge(OpCategory.SCAN_STEP, 3)
        with pytest.raises(ValueError):  # counts would go negative
            OpLog().snapshot() - c.snapshot()

    def test_subtraction_drops_shared_phases(self):
        log = OpLog()
        with log.phase():
            log.charge(OpCategory.SCAN_STEP, 2)
        first = log.snapshot()
        with log.phase():
            log.charge(OpCategory.LADDER_MOVE, 5)
        delta = log.snapshot() - first
        assert delta.phase_ops == (5,)
        assert delta.parallel_phases == 1
        assert delta.total == 5

    def test_phases_do_not_nest(self):
        log = OpLog()
        with pytest.raises(MachineStateError):
            with log.phase():
                with log.phase():
                    pass

    def test_reset_clears_everything(self):
        log = OpLog()
        log.charge(OpCategory.CELL_LOAD, 7)
        with log.phase():
            log.charge(OpCategory.SCAN_STEP)
        log.reset()
        assert log.total == 0
        assert log.parallel_phases == 0
        assert log.phase_ops == ()
