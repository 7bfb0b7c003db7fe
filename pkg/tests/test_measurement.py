"""
Unit tests for Layer 4: Measurement
Tests ancilla circuits, syndrome extraction, recovery and Monte Carlo
round trips
"""
import sys
import os

import numpy as np
import pytest
from numpy.testing import assert_allclose

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from layer_1_algebra.pauli import enumerate_paulis, format_pauli, parse_pauli, to_matrix
from layer_2_codes.bosonic import binomial_code, fock_operator, fock_state, two_mode_code, two_mode_syndromes
from layer_2_codes.cws_code import cws_from_strings
from layer_2_codes.repetition import repetition_code
from layer_3_synthesis.synthesize import PaulianSynthesizer
from layer_4_measurement.circuits import chain_cnot, controlled_stabilizer, gcnot_build, hadamard_conjugate
from layer_4_measurement.monte_carlo import MonteCarloSimulator, validate_channel
from layer_4_measurement.syndrome_measurement import (
    SyndromeDecoder,
    direct_measurement,
    extract_syndrome,
    measure_stabilizer,
    recover,
)
from layer_5_reporting.code_file import load_code_file, materialize
from models.algebra import Subspace
from utils.errors import InvalidChannel, NotPaulian, StateOutsideDomain, UncorrectableSyndrome
from utils.logger import get_logger

logger = get_logger(__name__)

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def _pauli(text: str) -> np.ndarray:
    return to_matrix(parse_pauli(text))


@pytest.fixture(scope="module")
def repetition():
    code = repetition_code(3)
    return code, PaulianSynthesizer().synthesize(code)


@pytest.fixture(scope="module")
def binomial():
    code = binomial_code()
    return code, PaulianSynthesizer(mode='minimal').synthesize(code)


@pytest.fixture(scope="module")
def two_mode():
    code = two_mode_code()
    return code, PaulianSynthesizer(mode='minimal').synthesize(code, preferred=two_mode_syndromes())


class TestCircuits:
    """Test the generalized CNOT and its variants"""

    full8 = Subspace(8, np.eye(8, dtype=complex))

    def test_controlled_stabilizer_conjugates_to_gcnot(self, repetition):
        _, result = repetition
        z = result.group.z_gens[0]
        gcnot = gcnot_build(z, result.group.domain)
        controlled = controlled_stabilizer(z, result.group.domain)
        assert controlled.readout == 'X'
        assert_allclose(hadamard_conjugate(controlled), gcnot.coupling, atol=1e-10)

    def test_gcnot_on_partial_domain_is_identity_outside(self, binomial):
        code, result = binomial
        circuit = gcnot_build(result.group.z_gens[0], result.group.domain)
        outside = np.kron(fock_state(code.ambient, (6,)), np.array([1, 0], dtype=complex))
        assert_allclose(circuit.coupling @ outside, outside, atol=1e-12)

    def test_chain_of_cnots_is_gcnot_of_product(self):
        chain = chain_cnot(3, 2)
        direct = gcnot_build(_pauli("ZZI"), self.full8)
        assert_allclose(chain.coupling, direct.coupling, atol=1e-12)

    def test_random_conjugated_z_controlled_matches_gcnot(self):
        """V (Z x I x I) V^dagger for a random unitary V on C^8"""
        rng = np.random.default_rng(17)
        v, _ = np.linalg.qr(rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)))
        p = v @ _pauli("ZII") @ v.conj().T
        gcnot = gcnot_build(p, self.full8)
        controlled = controlled_stabilizer(p, self.full8)
        assert_allclose(hadamard_conjugate(controlled), gcnot.coupling, atol=1e-10)

    def test_rejects_unbalanced_operator(self):
        with pytest.raises(NotPaulian):
            gcnot_build(np.diag([1, 1, -1]).astype(complex), Subspace(3, np.eye(3, dtype=complex)))


class TestSyndromeExtraction:
    """Test measurement and recovery"""

    def test_code_state_is_deterministic(self, repetition):
        code, result = repetition
        psi = code.code_frame.frame[:, 0]
        outcome, post = measure_stabilizer(psi, result.group.z_gens[0], result.group.domain, rng=1)
        assert outcome == 1
        assert_allclose(post, psi, atol=1e-12)

    def test_syndrome_of_each_flip(self, repetition):
        code, result = repetition
        psi = (code.code_frame.frame[:, 0] + code.code_frame.frame[:, 1]) / np.sqrt(2)
        expected = {"XII": (1, -1), "IXI": (-1, 1), "IIX": (-1, -1)}
        for text, syndrome in expected.items():
            got, _ = extract_syndrome(_pauli(text) @ psi, result.group, rng=3)
            assert got == syndrome

    def test_ancilla_matches_born_rule(self, repetition):
        """An even superposition across syndrome spaces splits 50/50, same as direct projection"""
        code, result = repetition
        psi = (code.code_frame.frame[:, 0] + _pauli("XII") @ code.code_frame.frame[:, 0]) / np.sqrt(2)
        z = result.group.z_gens[1]
        for seed in range(5):
            outcome, post = measure_stabilizer(psi, z, result.group.domain, rng=seed)
            direct_outcome, direct_post, p_plus = direct_measurement(psi, z, result.group.domain, rng=seed)
            assert p_plus == pytest.approx(0.5)
            assert outcome == direct_outcome
            assert_allclose(post, direct_post, atol=1e-10)

    def test_ancilla_frequencies_follow_born_rule(self):
        """10^4 shots on each of 20 random states land within 4 sigma of ||Pi_+ psi||^2"""
        rng = np.random.default_rng(29)
        v, _ = np.linalg.qr(rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)))
        p = v @ _pauli("ZII") @ v.conj().T
        domain = Subspace(8, np.eye(8, dtype=complex))
        circuit = gcnot_build(p, domain)
        shots = 10_000
        for _ in range(20):
            psi = rng.normal(size=8) + 1j * rng.normal(size=8)
            psi /= np.linalg.norm(psi)
            expected = np.linalg.norm((psi + p @ psi) / 2) ** 2
            plus = sum(measure_stabilizer(psi, p, domain, rng, circuit)[0] == 1 for _ in range(shots))
            sigma = np.sqrt(expected * (1 - expected) / shots)
            assert abs(plus / shots - expected) <= 4 * sigma + 1e-12

    def test_recover_single_flip(self, repetition):
        code, result = repetition
        rng = np.random.default_rng(11)
        coeffs = rng.normal(size=2) + 1j * rng.normal(size=2)
        psi = code.code_frame.frame @ (coeffs / np.linalg.norm(coeffs))
        syndrome, collapsed = extract_syndrome(_pauli("IXI") @ psi, result.group, rng=rng)
        fixed = recover(collapsed, syndrome, result.table, result.family, code)
        assert abs(np.vdot(psi, fixed)) == pytest.approx(1.0)

    def test_photon_loss_recovered(self, binomial):
        code, result = binomial
        decoder = SyndromeDecoder(code, result.family, result.table, result.group)
        psi = code.code_frame.frame @ np.array([0.6, 0.8])
        lost = fock_operator('annihilation', code.ambient, 0) @ psi
        syndrome, collapsed = decoder.extract(lost / np.linalg.norm(lost), rng=0)
        assert syndrome == (-1,)
        assert abs(np.vdot(psi, decoder.recover(collapsed, syndrome))) == pytest.approx(1.0)

    def test_state_outside_domain(self, binomial):
        code, result = binomial
        with pytest.raises(StateOutsideDomain):
            extract_syndrome(fock_state(code.ambient, (6,)), result.group, rng=0)

    def test_excess_syndrome_is_uncorrectable(self, two_mode):
        code, result = two_mode
        decoder = SyndromeDecoder(code, result.family, result.table, result.group)
        state = result.table.entries[(-1, -1)].space.frame[:, 0]
        with pytest.raises(UncorrectableSyndrome):
            decoder.recover(state, (-1, -1))


class TestChannel:
    """Test channel validation"""

    def test_weights_must_sum_to_one(self):
        eye = np.eye(2, dtype=complex)
        with pytest.raises(InvalidChannel):
            validate_channel([("I", eye, 1.0), ("I", eye, 1.0)], 2)

    def test_negative_weight(self):
        eye = np.eye(2, dtype=complex)
        with pytest.raises(InvalidChannel):
            validate_channel([("I", eye, 1.5), ("I", eye, -0.5)], 2)

    def test_empty(self):
        with pytest.raises(InvalidChannel):
            validate_channel([], 2)


class TestMonteCarlo:
    """Test repeated error-correction round trips"""

    def _simulator(self, code, result, workers=1):
        return MonteCarloSimulator(code, result.family, result.table, result.group, workers=workers)

    def test_repetition_always_recovers(self, repetition):
        code, result = repetition
        channel = [(t, _pauli(t), 0.25) for t in ["III", "XII", "IXI", "IIX"]]
        stats, _ = self._simulator(code, result).run(channel, trials=200, seed=5)
        assert stats.success_rate == 1.0
        assert stats.mean_fidelity == pytest.approx(1.0)
        assert sum(stats.per_syndrome_counts.values()) == 200

    def test_binomial_always_recovers(self, binomial):
        code, result = binomial
        a = fock_operator('annihilation', code.ambient, 0)
        channel = [("I", np.eye(code.dim, dtype=complex), 0.5), ("a", a, 0.5)]
        stats, _ = self._simulator(code, result).run(channel, trials=200, seed=5)
        assert stats.success_rate == 1.0
        assert set(stats.per_syndrome_counts) == {"(1)", "(-1)"}

    def test_two_mode_always_recovers(self):
        loaded = materialize(load_code_file(os.path.join(FIXTURES, "two_mode.json")))
        result = PaulianSynthesizer(mode='minimal').synthesize(loaded.code, preferred=loaded.preferred)
        simulator = MonteCarloSimulator(loaded.code, result.family, result.table, result.group)
        stats, _ = simulator.run(loaded.channel, trials=150, seed=9)
        assert stats.success_rate == 1.0

    def test_zero_norm_branch_counted(self, binomial):
        code, result = binomial
        a = fock_operator('annihilation', code.ambient, 0)
        stats, records = self._simulator(code, result).run([("a", a, 1.0)], trials=10, seed=1,
                                                           state=fock_state(code.ambient, (0,)))
        assert stats.sampling_failures == 10
        assert all(r.sampling_failure for r in records)

    def test_same_seed_same_records(self, repetition):
        code, result = repetition
        channel = [(t, _pauli(t), 1 / 3) for t in ["XII", "IXI", "IIX"]]
        first, a = self._simulator(code, result).run(channel, trials=50, seed=21)
        second, b = self._simulator(code, result).run(channel, trials=50, seed=21)
        assert [r.to_dict() for r in a] == [r.to_dict() for r in b]
        assert first.to_dict() == second.to_dict()

    def test_workers_do_not_change_results(self, repetition):
        code, result = repetition
        channel = [(t, _pauli(t), 1 / 3) for t in ["XII", "IXI", "IIX"]]
        _, serial = self._simulator(code, result, workers=1).run(channel, trials=60, seed=4)
        _, threaded = self._simulator(code, result, workers=4).run(channel, trials=60, seed=4)
        assert [r.to_dict() for r in serial] == [r.to_dict() for r in threaded]

    def test_ring9_weight_one_channel(self):
        """Every weight-1 Pauli on the nine-qubit ring code has its own syndrome"""
        loaded = materialize(load_code_file(os.path.join(FIXTURES, "cws_9_ring.json")))
        result = PaulianSynthesizer(mode='extended_full').synthesize_cws(loaded.cws, 3)
        paulis = list(enumerate_paulis(9, 1, 1))
        channel = [(format_pauli(p), to_matrix(p), 1 / len(paulis)) for p in paulis]
        simulator = MonteCarloSimulator(loaded.code, result.family, result.table, result.group)
        stats, _ = simulator.run(channel, trials=60, seed=2)
        assert stats.success_rate == 1.0

    def test_two_mode_ten_thousand_trials(self, two_mode):
        code, result = two_mode
        channel = [
            ("I", np.eye(code.dim, dtype=complex), 1 / 3),
            ("a[1]", fock_operator('annihilation', code.ambient, 0), 1 / 3),
            ("a[2]", fock_operator('annihilation', code.ambient, 1), 1 / 3),
        ]
        stats, _ = self._simulator(code, result, workers=4).run(channel, trials=10_000, seed=7)
        assert stats.trials == 10_000
        assert stats.sampling_failures == 0
        assert stats.success_rate == 1.0

    def test_weight_two_flip_is_a_logical_error(self, repetition):
        """XXI shares the syndrome of IIX; recovery completes a logical X"""
        code, result = repetition
        stats, records = self._simulator(code, result).run([("XXI", _pauli("XXI"), 1.0)], trials=100, seed=8)
        assert stats.success_rate == 0.0
        assert stats.per_syndrome_counts == {"(-1,-1)": 100}
        assert all(r.recovered_fidelity < 1 - 1e-6 for r in records)

    def test_mixed_channel_records_partial_success(self, repetition):
        code, result = repetition
        channel = [("III", _pauli("III"), 0.5), ("XXI", _pauli("XXI"), 0.5)]
        stats, _ = self._simulator(code, result).run(channel, trials=400, seed=12)
        assert 0.3 < stats.success_rate < 0.7
        assert stats.successes == stats.per_error_counts["III"]


RING5 = ["ZXZII", "XZIIZ", "ZIIZX", "IIZXZ", "IZXZI"]
WORDS5 = ["IIIII", "ZZIZI", "IZZIZ", "ZIZZI", "IZIZZ", "ZIZIZ"]


def _synthesized(name: str):
    if name == "repetition3":
        code = repetition_code(3)
        return code, PaulianSynthesizer().synthesize(code)
    if name == "binomial":
        code = binomial_code()
        return code, PaulianSynthesizer(mode='minimal').synthesize(code)
    if name == "two_mode":
        code = two_mode_code()
        return code, PaulianSynthesizer(mode='minimal').synthesize(code, preferred=two_mode_syndromes())
    if name == "cws_5_6_2":
        cws = cws_from_strings(RING5, WORDS5, "cws_5_6_2", 2)
        return cws.code, PaulianSynthesizer(mode='extended_full').synthesize_cws(cws, 2, site=0)
    loaded = materialize(load_code_file(os.path.join(FIXTURES, "cws_9_ring.json")))
    return loaded.code, PaulianSynthesizer(mode='extended_full').synthesize_cws(loaded.cws, 3)


class TestSyndromeDeterminism:
    """Every assigned family member yields its own syndrome and is undone"""

    @pytest.fixture(scope="class", params=["repetition3", "binomial", "two_mode", "cws_5_6_2", "cws_9_ring"])
    def synthesized(self, request):
        return _synthesized(request.param)

    def test_each_member_gives_its_syndrome(self, synthesized):
        code, result = synthesized
        decoder = SyndromeDecoder(code, result.family, result.table, result.group)
        rng = np.random.default_rng(41)
        for idx, syndrome in result.table.syndrome_map.items():
            member = result.family.members[idx]
            for _ in range(50):
                coeffs = rng.normal(size=code.k) + 1j * rng.normal(size=code.k)
                psi = code.code_frame.frame @ (coeffs / np.linalg.norm(coeffs))
                corrupted = member @ psi
                got, collapsed = decoder.extract(corrupted / np.linalg.norm(corrupted), rng)
                assert got == syndrome, f"{result.family_names[idx]} gave {got}"
                recovered = decoder.recover(collapsed, got)
                assert abs(np.vdot(psi, recovered)) ** 2 >= 1 - 1e-9
