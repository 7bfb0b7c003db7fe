"""
Unit tests for Layer 3: Synthesis
Tests capacity planning, syndrome assignment, syndrome tables, the encoder
and the Paulian generators it produces
"""
import sys
import os

import numpy as np
import pytest
from numpy.testing import assert_allclose

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from layer_1_algebra.linalg import projector
from layer_1_algebra.pauli import parse_pauli, to_matrix
from layer_2_codes.bosonic import binomial_code, fock_operator, fock_state, two_mode_code, two_mode_syndromes
from layer_2_codes.knill_laflamme import orthonormalize_errors
from layer_2_codes.repetition import generalized_repetition, repetition_code
from layer_3_synthesis.capacity import capacity_plan, ceil_log2, floor_log2
from layer_3_synthesis.encoder import build_encoder, encode_state
from layer_3_synthesis.paulian import derive_generators, pauli_form, verify_paulian
from layer_3_synthesis.syndrome_table import (
    assign_syndromes,
    build_syndrome_table,
    domain_of,
    signed_projector,
    validate_table,
)
from layer_3_synthesis.synthesize import PaulianSynthesizer
from layer_5_reporting.code_file import load_code_file, materialize
from layer_5_reporting.run import CommandRunner
from models.algebra import Subspace
from models.code import OrthonormalFamily
from models.synthesis import PaulianReport, syndrome_index, syndrome_order
from utils.errors import (
    CapacityExceeded,
    InvalidInput,
    NotCertified,
    NotDivisible,
    NotInvariant,
    TooManyErrors,
)
from utils.logger import get_logger

logger = get_logger(__name__)

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def _placeholder_family(size: int) -> OrthonormalFamily:
    eye = np.eye(2, dtype=complex)
    return OrthonormalFamily(tuple([eye] * size), tuple(f"F{i}" for i in range(size)))


def _pauli(text: str) -> np.ndarray:
    return to_matrix(parse_pauli(text))


class TestSyndromeOrder:
    """Test binary-counting order of syndrome tuples"""

    def test_order_for_two_generators(self):
        assert syndrome_order(2) == [(1, 1), (1, -1), (-1, 1), (-1, -1)]

    def test_index_inverts_order(self):
        for m in (1, 2, 3):
            for i, t in enumerate(syndrome_order(m)):
                assert syndrome_index(t) == i


class TestCapacity:
    """Test the choice of generator count"""

    def test_logs(self):
        assert ceil_log2(28) == 5
        assert floor_log2(28) == 4
        assert ceil_log2(4) == 2
        assert ceil_log2(1) == 0

    def test_nine_qubit_ring_capacity(self):
        """28 weight-<=1 errors on a 12-dimensional code in 2^9: 384 <= 512"""
        plan = capacity_plan(28, 512, 12, n=9, d=3)
        assert plan.m == 5
        assert plan.mode == 'ceil'
        assert plan.feasible_full
        assert plan.excess_syndromes == 4
        assert plan.bound_fcos == 28

    def test_exact_fit(self):
        plan = capacity_plan(4, 8, 2)
        assert plan.m == 2
        assert plan.excess_syndromes == 0

    def test_single_member_still_gets_a_generator(self):
        plan = capacity_plan(1, 8, 2)
        assert plan.m == 1
        assert plan.excess_syndromes == 1

    def test_code_filling_the_ambient_has_no_room(self):
        """Even {I} needs one generator, so dim(H_C) = dim(H) cannot be split"""
        with pytest.raises(CapacityExceeded, match="dimension obstruction"):
            capacity_plan(1, 4, 4)

    def test_floor_mode(self):
        """2^3 x 2 > 12 but 2^2 x 2 fits: only the first four members are used"""
        plan = capacity_plan(5, 12, 2)
        assert plan.mode == 'floor'
        assert plan.m == 2
        assert plan.used_family_size == 4
        assert not plan.feasible_full

    def test_bosonic_is_always_ceil(self):
        plan = capacity_plan(3, None, 2, bosonic=True)
        assert plan.mode == 'ceil'
        assert plan.m == 2
        assert plan.excess_syndromes == 1

    def test_weight_one_detection_on_five_qubits_is_obstructed(self):
        """16 errors on a 6-dimensional code cannot fit in 32 dimensions"""
        with pytest.raises(CapacityExceeded, match="dimension obstruction"):
            capacity_plan(16, 32, 6, n=5, d=2)

    def test_rejects_empty_family(self):
        with pytest.raises(InvalidInput):
            capacity_plan(0, 8, 2)


class TestAssignSyndromes:
    """Test the injective member-to-syndrome map"""

    def test_default_binary_counting(self):
        mapping = assign_syndromes(_placeholder_family(4), 2)
        assert mapping == {0: (1, 1), 1: (1, -1), 2: (-1, 1), 3: (-1, -1)}

    def test_preferred_honored_first(self):
        mapping = assign_syndromes(_placeholder_family(4), 2, {1: (-1, 1)})
        assert mapping == {0: (1, 1), 1: (-1, 1), 2: (1, -1), 3: (-1, -1)}

    def test_two_mode_syndromes(self):
        mapping = assign_syndromes(_placeholder_family(3), 2, two_mode_syndromes())
        assert mapping == {0: (1, 1), 1: (-1, 1), 2: (1, -1)}

    def test_binomial_single_generator(self):
        assert assign_syndromes(_placeholder_family(2), 1) == {0: (1,), 1: (-1,)}

    def test_too_many_errors(self):
        with pytest.raises(TooManyErrors):
            assign_syndromes(_placeholder_family(3), 1)

    def test_identity_must_stay_trivial(self):
        with pytest.raises(InvalidInput):
            assign_syndromes(_placeholder_family(2), 1, {0: (-1,)})

    def test_duplicate_preferred(self):
        with pytest.raises(InvalidInput):
            assign_syndromes(_placeholder_family(3), 2, {1: (-1, 1), 2: (-1, 1)})

    def test_wrong_length(self):
        with pytest.raises(InvalidInput):
            assign_syndromes(_placeholder_family(2), 2, {1: (-1,)})


class TestSyndromeTable:
    """Test construction and validation of syndrome spaces"""

    def test_binomial_minimal_spaces(self):
        code = binomial_code()
        fam = orthonormalize_errors(code)
        table = build_syndrome_table(code, fam, assign_syndromes(fam, 1), 1, 'minimal')

        assert table.space_dim == 2
        odd = np.column_stack([fock_state(code.ambient, (1,)), fock_state(code.ambient, (3,))])
        assert_allclose(projector(table.entries[(-1,)].space), odd @ odd.conj().T, atol=1e-10)
        assert_allclose(projector(table.entries[(1,)].space), projector(code.code_frame), atol=1e-10)

    def test_repetition_spaces_are_error_images(self):
        code = repetition_code(3)
        fam = orthonormalize_errors(code)
        table = build_syndrome_table(code, fam, assign_syndromes(fam, 2), 2, 'minimal')
        c = code.code_frame.frame
        img = _pauli("XII") @ c
        assert_allclose(projector(table.entries[(1, -1)].space), img @ img.conj().T, atol=1e-10)
        assert table.excess == []

    def test_excess_syndrome_padded_from_complement(self):
        """A lone identity member still gets a second, orthogonal syndrome space"""
        code = repetition_code(3)
        fam = OrthonormalFamily((np.eye(8, dtype=complex),), ('I',))
        table = build_syndrome_table(code, fam, {0: (1,)}, 1, 'minimal')
        assert table.excess == [(-1,)]
        assert table.error_for((-1,)) is None
        overlap = table.entries[(1,)].space.frame.conj().T @ table.entries[(-1,)].space.frame
        assert np.max(np.abs(overlap)) < 1e-12

    def test_extended_full_covers_ambient(self):
        code = repetition_code(3)
        fam = OrthonormalFamily((np.eye(8, dtype=complex),), ('I',))
        table = build_syndrome_table(code, fam, {0: (1,)}, 1, 'extended_full')
        assert table.space_dim == 4
        assert domain_of(table).dim == 8

    def test_extended_full_needs_divisible_dimension(self):
        code = binomial_code()
        fam = orthonormalize_errors(code)
        with pytest.raises(NotDivisible):
            build_syndrome_table(code, fam, assign_syndromes(fam, 1), 1, 'extended_full')

    def test_table_validates(self):
        code = repetition_code(3)
        fam = orthonormalize_errors(code)
        table = build_syndrome_table(code, fam, assign_syndromes(fam, 2), 2, 'minimal')
        validate_table(table, code, fam)


class TestEncoder:
    """Test the encoder unitary"""

    @pytest.fixture
    def repetition_table(self):
        code = repetition_code(3)
        fam = orthonormalize_errors(code)
        table = build_syndrome_table(code, fam, assign_syndromes(fam, 2), 2, 'minimal')
        return code, fam, table

    def test_encoder_is_isometry(self, repetition_table):
        code, fam, table = repetition_table
        u = build_encoder(table, code, fam)
        assert u.shape == (2 * 4, 8)
        assert_allclose(u @ u.conj().T, np.eye(8), atol=1e-10)

    def test_code_lands_on_trivial_syndrome(self, repetition_table):
        """V_(I) is the identity on H_C"""
        code, fam, table = repetition_table
        u = build_encoder(table, code, fam)
        encoded = encode_state(u, code.code_frame.frame[:, 1], table.m)
        expected = np.zeros((2, 4), dtype=complex)
        expected[1, 0] = 1.0
        assert_allclose(encoded, expected, atol=1e-10)

    def test_error_lands_on_its_syndrome(self, repetition_table):
        code, fam, table = repetition_table
        u = build_encoder(table, code, fam)
        state = _pauli("IIX") @ code.code_frame.frame[:, 0]
        encoded = encode_state(u, state, table.m)
        assert abs(encoded[0, syndrome_index((-1, -1))]) == pytest.approx(1.0)


class TestVerifyPaulian:
    """Test the Paulian classification of operators on a domain"""

    full2 = Subspace(2, np.eye(2, dtype=complex))

    def test_pauli_z_is_paulian(self):
        report = verify_paulian(np.diag([1, -1]).astype(complex), self.full2)
        assert report.kind == 'involution'
        assert report.eig_dims == (1, 1)
        assert report.paulian

    def test_counterinvolution(self):
        report = verify_paulian(1j * np.diag([1, -1]), self.full2)
        assert report.kind == 'counterinvolution'
        assert report.paulian

    def test_identity_is_paulian_on_single_syndrome(self):
        report = verify_paulian(np.eye(2, dtype=complex), self.full2)
        assert report.eig_dims == (2, 0)
        assert report.paulian

    def test_unbalanced_involution_is_not_paulian(self):
        report = verify_paulian(np.diag([1, 1, -1]).astype(complex), Subspace(3, np.eye(3, dtype=complex)))
        assert report.kind == 'involution'
        assert not report.isomorphic
        assert not report.paulian

    def test_neither(self):
        report = verify_paulian(np.diag([1, 2]).astype(complex), self.full2)
        assert report.kind == 'neither'
        assert not report.paulian

    def test_domain_must_be_invariant(self):
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        with pytest.raises(NotInvariant):
            verify_paulian(x, Subspace(2, np.array([[1], [0]], dtype=complex)))


class TestPauliForm:
    """Test recognition of Pauli matrices"""

    def test_recovers_pauli(self):
        for text in ["XYZ", "IZZ", "YII"]:
            mat = _pauli(text)
            found = pauli_form(mat, 3)
            assert found is not None
            assert_allclose(to_matrix(found), mat, atol=1e-12)

    def test_recovers_phase(self):
        mat = -1j * _pauli("ZZ")
        found = pauli_form(mat, 2)
        assert found is not None
        assert_allclose(to_matrix(found), mat, atol=1e-12)

    def test_rejects_non_pauli(self):
        hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
        assert pauli_form(hadamard, 1) is None
        assert pauli_form(np.diag([1, 1, 1, -1]).astype(complex), 2) is None


class TestGenerators:
    """Test Z_i^S and X_i^S on the repetition code"""

    @pytest.fixture(scope="class")
    def repetition(self):
        code = repetition_code(3)
        result = PaulianSynthesizer().synthesize(code)
        return code, result

    def test_certified(self, repetition):
        _, result = repetition
        assert result.certified
        assert result.plan.m == 2
        assert result.group.relations['domain_dim'] == 8

    def test_generators_are_parity_checks(self, repetition):
        _, result = repetition
        assert result.group.pauli_forms == ('IZZ', 'ZIZ')

    def test_conjugation_matches_projector_sum(self, repetition):
        _, result = repetition
        for i in range(result.group.m):
            assert_allclose(result.group.z_gens[i], signed_projector(result.table, i), atol=1e-10)

    def test_x_generator_moves_between_syndromes(self, repetition):
        """X_1^S takes H_C to H_(-1,1), the image of the middle flip"""
        code, result = repetition
        c = code.code_frame.frame
        assert_allclose(result.group.x_gens[0] @ c, _pauli("IXI") @ c, atol=1e-10)

    def test_direct_derivation(self):
        code = repetition_code(3)
        fam = orthonormalize_errors(code)
        table = build_syndrome_table(code, fam, assign_syndromes(fam, 2), 2, 'minimal')
        group = derive_generators(build_encoder(table, code, fam), table, code)
        assert all(group.relations[k] for k in ('squares', 'anticommute', 'commute', 'stabilizes_code'))
        assert all(r.paulian for r in group.certification)


class TestSynthesizer:
    """Test the full pipeline on the code zoo"""

    def test_binomial_minimal(self):
        code = binomial_code()
        result = PaulianSynthesizer(mode='minimal').synthesize(code)
        assert result.certified
        assert result.family_names == ('I', 'a')
        z = result.group.z_gens[0]
        c = code.code_frame.frame
        lost = fock_operator('annihilation', code.ambient, 0) @ c / np.sqrt(2)
        assert_allclose(z @ c, c, atol=1e-10)
        assert_allclose(z @ lost, -lost, atol=1e-10)

    def test_binomial_extended_is_parity(self):
        """Parity padding stops at |7>; |8> has no partner and stays outside"""
        code = binomial_code()
        result = PaulianSynthesizer(mode='extended_full').synthesize(code)
        assert result.certified
        assert result.table.space_dim == 4
        assert result.table.truncation_proxy
        assert result.group.domain.dim == 8

        top = fock_state(code.ambient, (8,))
        assert_allclose(result.group.domain.frame.conj().T @ top, 0, atol=1e-10)
        parity = np.diag([(-1) ** n for n in range(8)]).astype(complex)
        assert_allclose(result.group.z_gens[0][:8, :8], parity, atol=1e-10)

    def test_two_mode_with_preferred_syndromes(self):
        code = two_mode_code()
        result = PaulianSynthesizer(mode='minimal').synthesize(code, preferred=two_mode_syndromes())
        assert result.certified
        assert result.plan.m == 2
        assert result.table.syndrome_map == {0: (1, 1), 1: (-1, 1), 2: (1, -1)}
        assert result.table.error_for((-1, -1)) is None

    def test_generalized_repetition_uses_given_stabilizers(self):
        y = np.array([[0, -1j], [1j, 0]])
        code, stabilizers = generalized_repetition(y, 3)
        result = PaulianSynthesizer().synthesize_with_stabilizers(code, stabilizers)
        assert result.certified
        assert result.table.mode == 'extended_full'
        for z, s in zip(result.group.z_gens, stabilizers):
            assert_allclose(z, s, atol=1e-10)

    def test_degenerate_family_reports_provenance(self):
        code = repetition_code(3).with_errors(
            [_pauli(s) for s in ["XII", "ZZI", "IZZ"]], ["X1", "Z1Z2", "Z2Z3"])
        result = PaulianSynthesizer().synthesize(code)
        assert result.degenerate
        assert result.family_names == ('I', 'X1')
        assert result.provenance[0] == (1, 2)

    def test_failed_certification_raises(self, monkeypatch):
        monkeypatch.setattr(PaulianReport, 'paulian', property(lambda self: False))
        with pytest.raises(NotCertified) as info:
            PaulianSynthesizer().synthesize(repetition_code(3))
        assert info.value.exit_code == 5
        assert info.value.details['non_paulian_generators'] == [1, 2]


def _random_normal(rng: np.random.Generator) -> np.ndarray:
    """W diag(c1, c2) W^dagger with a Haar-ish unitary W and distinct complex eigenvalues"""
    w, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    c1, c2 = rng.normal(size=2) + 1j * rng.normal(size=2)
    while abs(c1 - c2) < 0.2:
        c2 = c2 + 0.5
    return w @ np.diag([c1, c2]) @ w.conj().T


RELATIONS = ('squares', 'anticommute', 'commute', 'stabilizes_code')


def _assert_group_relations(result, tol=1e-9):
    relations = result.group.relations
    assert all(relations[k] for k in RELATIONS), relations
    assert relations['max_deviation'] <= tol
    for i, z in enumerate(result.group.z_gens):
        assert_allclose(z, signed_projector(result.table, i), atol=tol)


class TestGeneralizedRepetition:
    """Test repetition codes built for random normal single-qubit errors"""

    @pytest.mark.parametrize("seed", range(8))
    def test_random_normal_error(self, seed):
        e = _random_normal(np.random.default_rng(seed))
        code, stabilizers = generalized_repetition(e, 3)
        result = PaulianSynthesizer().synthesize_with_stabilizers(code, stabilizers)
        assert result.certified
        assert result.plan.m == 2
        _assert_group_relations(result)
        for z, s in zip(result.group.z_gens, stabilizers):
            assert_allclose(z, s, atol=1e-9)


class TestGroupRelations:
    """Test the full relation suite on every bundled code file"""

    @pytest.mark.parametrize("name, site", [
        ("repetition3.json", None),
        ("generalized_repetition_y.json", None),
        ("binomial.json", None),
        ("binomial_codewords.json", None),
        ("two_mode.json", None),
        ("cws_5_6_2.json", 1),
        ("cws_5_6_2_allocated.json", None),
        ("cws_9_ring.json", None),
    ])
    def test_relations_hold(self, name, site):
        loaded = materialize(load_code_file(os.path.join(FIXTURES, name)))
        result = CommandRunner().synthesis(loaded, site=site)
        assert result.certified
        _assert_group_relations(result)
