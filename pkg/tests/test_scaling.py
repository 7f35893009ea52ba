import math

import numpy as np
import pytest

from densewire.errors import PitchConditionViolated
from densewire.scaling import (
    LATERAL,
    QUBIT_SIZE,
    VERTICAL,
    WIRE_COUNT,
    BondWireGeometry,
    QubitArraySpec,
    WiringArchitecture,
    check_pitch_condition,
    lateral_crossover_length,
    lateral_scaling_report,
    logical_qubit_estimate,
    required_pitch_for_full_chip,
    vertical_scaling_report,
    wire_pitch_from_bonds,
)
from oracles import bisect


class TestWirePitch:
    def test_shared_grounds(self):
        g = BondWireGeometry(18e-6, 10e-6, 3, grounds_shared=True)
        assert wire_pitch_from_bonds(g) == pytest.approx(56e-6, rel=1e-12)

    def test_single_bare_wire(self):
        g = BondWireGeometry(18e-6, 0.0, 1, grounds_shared=False)
        assert wire_pitch_from_bonds(g) == pytest.approx(18e-6, rel=1e-12)

    def test_unshared_matches_direct_count(self):
        # Oracle: enumerate the wires of one repeating cell directly.
        g = BondWireGeometry(18e-6, 10e-6, 3, grounds_shared=False)
        cell = sum(g.wire_diameter + g.wire_gap for _ in range(g.wires_per_line))
        assert wire_pitch_from_bonds(g) == pytest.approx(cell, rel=1e-12)
        assert wire_pitch_from_bonds(g) == pytest.approx(84e-6, rel=1e-12)

    def test_shared_single_wire_rejected(self):
        with pytest.raises(ValueError):
            BondWireGeometry(18e-6, 10e-6, 1, grounds_shared=True)


class TestPitchCondition:
    def test_bond_wires_fit(self):
        assert check_pitch_condition(56e-6, 500e-6) is True

    def test_equality_boundary(self):
        assert check_pitch_condition(500e-6, 500e-6) is True

    def test_spring_pin_does_not_fit(self):
        assert check_pitch_condition(1e-3, 500e-6) is False


class TestCrossover:
    def test_published_design_point(self):
        assert lateral_crossover_length(500e-6, 56e-6) == pytest.approx(17.857e-3, abs=1e-6)

    def test_algebraic_identity(self):
        # wire pitch of 4x the qubit pitch collapses the crossover to one pitch
        p = 321e-6
        assert lateral_crossover_length(p, 4 * p) == pytest.approx(p, rel=1e-12)

    def test_halving_wire_pitch_doubles_crossover_and_matches_bisection(self):
        p_q, p_w = 500e-6, 28e-6
        ell = lateral_crossover_length(p_q, p_w)
        assert ell == pytest.approx(2 * lateral_crossover_length(p_q, 2 * p_w), rel=1e-12)
        # Oracle: intersect the qubit and wire curves numerically.
        root = bisect(lambda L: (L / p_q) ** 2 - 4 * L / p_w, 1e-6, 10.0)
        assert ell == pytest.approx(root, rel=1e-9)
        assert ell == pytest.approx(35.714e-3, abs=1e-6)


class TestLateralReport:
    def test_rounded_crossover_chip(self):
        rep = lateral_scaling_report(QubitArraySpec(500e-6, 18e-3),
                                     WiringArchitecture(LATERAL, 56e-6))
        assert rep.n_qubits == 1296

    def test_full_wafer_wire_count(self):
        rep = lateral_scaling_report(QubitArraySpec(500e-6, 200e-3),
                                     WiringArchitecture(LATERAL, 56e-6))
        assert rep.exact_n_wires == pytest.approx(14285.714285714286, rel=1e-12)
        assert rep.n_wires == 14285
        assert round(rep.exact_n_wires) == 14286  # the figure usually quoted

    def test_one_qubit_chip(self):
        rep = lateral_scaling_report(QubitArraySpec(500e-6, 500e-6),
                                     WiringArchitecture(LATERAL, 400e-6))
        assert rep.n_qubits == 1

    def test_limiting_factor_flips_at_crossover(self):
        p_q, p_w = 500e-6, 56e-6
        ell = lateral_crossover_length(p_q, p_w)
        arch = WiringArchitecture(LATERAL, p_w)
        below = lateral_scaling_report(QubitArraySpec(p_q, ell * 0.999), arch)
        above = lateral_scaling_report(QubitArraySpec(p_q, ell * 1.001), arch)
        assert below.limiting_factor == QUBIT_SIZE
        assert above.limiting_factor == WIRE_COUNT


class TestVerticalReport:
    def test_full_wafer(self):
        rep = vertical_scaling_report(QubitArraySpec(500e-6, 200e-3),
                                      WiringArchitecture(VERTICAL, 400e-6))
        assert rep.n_qubits == 160000
        assert rep.limiting_factor == QUBIT_SIZE
        assert rep.n_qubits <= rep.n_wires

    def test_resonator_spaced_array(self):
        rep = vertical_scaling_report(QubitArraySpec(3.5e-3, 200e-3),
                                      WiringArchitecture(VERTICAL, 400e-6))
        assert rep.n_qubits == 3265  # continuous estimate 3265.3, often quoted as 3270

    def test_pitch_condition_enforced(self):
        with pytest.raises(PitchConditionViolated):
            vertical_scaling_report(QubitArraySpec(500e-6, 200e-3),
                                    WiringArchitecture(VERTICAL, 600e-6))


class TestRequiredPitch:
    def test_full_wafer_value(self):
        assert required_pitch_for_full_chip(200e-3, 56e-6) == pytest.approx(1.673e-3, abs=1e-6)

    def test_inverse_of_crossover(self):
        p_q, p_w = 500e-6, 56e-6
        ell = lateral_crossover_length(p_q, p_w)
        assert required_pitch_for_full_chip(ell, p_w) == pytest.approx(p_q, rel=1e-12)

    def test_matches_numeric_solve(self):
        # Oracle: solve (l/p)^2 = 4 l / p_w for p by bisection.
        ell, p_w = 100e-3, 56e-6
        root = bisect(lambda p: (ell / p) ** 2 - 4 * ell / p_w, 1e-6, ell)
        got = required_pitch_for_full_chip(ell, p_w)
        assert got == pytest.approx(root, rel=1e-9)
        assert got == pytest.approx(1.183e-3, abs=1e-6)


class TestLogicalQubits:
    def test_published_overhead(self):
        assert logical_qubit_estimate(160000, 2000) == 80

    def test_unit_overhead(self):
        assert logical_qubit_estimate(12345, 1) == 12345

    def test_floor(self):
        assert logical_qubit_estimate(1999, 2000) == 0


class TestProperties:
    def test_crossover_consistency_randomized(self):
        # At the crossover side the exact qubit and wire counts coincide.
        rng = np.random.default_rng(1)
        for _ in range(1000):
            p_q = rng.uniform(50e-6, 5e-3)
            p_w = rng.uniform(5e-6, p_q)
            ell = lateral_crossover_length(p_q, p_w)
            nq = (ell / p_q) ** 2
            nw = 4 * ell / p_w
            assert abs(nq - nw) <= 1e-12 * nq

    def test_monotonicity(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            p_q = rng.uniform(100e-6, 2e-3)
            p_w = rng.uniform(10e-6, p_q)
            sides = np.sort(rng.uniform(p_q, 0.3, size=4))
            arch_l = WiringArchitecture(LATERAL, p_w)
            arch_v = WiringArchitecture(VERTICAL, p_w)
            reps_l = [lateral_scaling_report(QubitArraySpec(p_q, s), arch_l) for s in sides]
            reps_v = [vertical_scaling_report(QubitArraySpec(p_q, s), arch_v) for s in sides]
            for a, b in zip(reps_l, reps_l[1:]):
                assert a.n_qubits <= b.n_qubits
                assert a.exact_n_wires <= b.exact_n_wires
            for a, b in zip(reps_v, reps_v[1:]):
                assert a.n_qubits <= b.n_qubits
                assert a.n_wires <= b.n_wires

    def test_lateral_wires_linear_vertical_quadratic(self):
        p_q, p_w = 500e-6, 100e-6
        arch_l = WiringArchitecture(LATERAL, p_w)
        arch_v = WiringArchitecture(VERTICAL, p_w)
        a = lateral_scaling_report(QubitArraySpec(p_q, 50e-3), arch_l)
        b = lateral_scaling_report(QubitArraySpec(p_q, 100e-3), arch_l)
        assert b.exact_n_wires == pytest.approx(2 * a.exact_n_wires, rel=1e-12)
        va = vertical_scaling_report(QubitArraySpec(p_q, 50e-3), arch_v)
        vb = vertical_scaling_report(QubitArraySpec(p_q, 100e-3), arch_v)
        assert vb.exact_n_wires == pytest.approx(4 * va.exact_n_wires, rel=1e-12)

    def test_vertical_never_wire_limited(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            p_q = rng.uniform(100e-6, 2e-3)
            p_w = rng.uniform(10e-6, p_q)
            side = rng.uniform(p_q, 0.3)
            rep = vertical_scaling_report(QubitArraySpec(p_q, side),
                                          WiringArchitecture(VERTICAL, p_w))
            assert rep.limiting_factor == QUBIT_SIZE
            assert rep.n_qubits <= rep.n_wires

    def test_integers_are_floors_of_exact(self):
        rng = np.random.default_rng(4)
        for _ in range(500):
            p_q = rng.uniform(100e-6, 2e-3)
            p_w = rng.uniform(10e-6, p_q)
            side = rng.uniform(p_q, 0.3)
            for rep in (
                lateral_scaling_report(QubitArraySpec(p_q, side),
                                       WiringArchitecture(LATERAL, p_w)),
                vertical_scaling_report(QubitArraySpec(p_q, side),
                                        WiringArchitecture(VERTICAL, p_w)),
            ):
                assert rep.n_qubits == math.floor(rep.exact_n_qubits)
                assert rep.n_wires == math.floor(rep.exact_n_wires)

    def test_wires_per_qubit_scales_demand(self):
        p_q, p_w = 500e-6, 56e-6
        ell = lateral_crossover_length(p_q, p_w, wires_per_qubit=2.0)
        assert ell == pytest.approx(lateral_crossover_length(p_q, p_w) / 2.0, rel=1e-12)
        rep = lateral_scaling_report(QubitArraySpec(p_q, ell * 1.01),
                                     WiringArchitecture(LATERAL, p_w, wires_per_qubit=2.0))
        assert rep.limiting_factor == WIRE_COUNT
