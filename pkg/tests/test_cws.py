"""
Unit tests for the codeword stabilized pipeline
Tests Pauli family selection, signature bookkeeping, spare allocation and
the resulting Paulian stabilizers on the ((5,6,2)) and nine-qubit ring codes
"""
import sys
import os

import numpy as np
import pytest
from numpy.testing import assert_allclose

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from layer_1_algebra.linalg import projector
from layer_1_algebra.pauli import comm_signature, parse_pauli, signature_product, to_matrix
from layer_2_codes.cws_code import cws_from_strings, word_signatures
from layer_3_synthesis.capacity import capacity_plan
from layer_3_synthesis.cws_pipeline import (
    candidate_paulis,
    fill_syndrome_spaces,
    select_orthonormal_paulis,
    signature_decompose,
    signature_vector,
)
from layer_3_synthesis.syndrome_table import assign_syndromes
from layer_3_synthesis.synthesize import PaulianSynthesizer
from layer_5_reporting.code_file import load_code_file, materialize
from utils.errors import CapacityExceeded, InsufficientSpares, InvalidInput
from utils.logger import get_logger

logger = get_logger(__name__)

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")

RING5 = ["ZXZII", "XZIIZ", "ZIIZX", "IIZXZ", "IZXZI"]
WORDS5 = ["IIIII", "ZZIZI", "IZZIZ", "ZIZZI", "IZIZZ", "ZIZIZ"]

# The eight signatures no member of {I, X1, Y1, Z1} owns, sorted with -1 first
SPARES5 = [
    (-1, -1, 1, -1, -1),
    (-1, -1, 1, 1, 1),
    (-1, 1, 1, -1, -1),
    (-1, 1, 1, 1, 1),
    (1, -1, -1, -1, -1),
    (1, -1, -1, 1, 1),
    (1, 1, -1, -1, -1),
    (1, 1, -1, 1, 1),
]


@pytest.fixture(scope="module")
def cws562():
    return cws_from_strings(RING5, WORDS5, "cws_5_6_2", 2)


@pytest.fixture(scope="module")
def site_family(cws562):
    return select_orthonormal_paulis(cws562, 2, site=0)


@pytest.fixture(scope="module")
def ring9():
    return materialize(load_code_file(os.path.join(FIXTURES, "cws_9_ring.json")))


def _proj(m: np.ndarray) -> np.ndarray:
    return m @ m.conj().T


class TestFamilySelection:
    """Test low-weight Pauli families"""

    def test_site_family(self, site_family):
        assert site_family.names == ('IIIII', 'XIIII', 'YIIII', 'ZIIII')
        assert len(site_family.paulis) == 4

    def test_candidates_by_target(self):
        assert len(candidate_paulis(5, 3, None, 'correct')) == 16
        assert len(candidate_paulis(5, 2, None, 'correct')) == 1
        assert len(candidate_paulis(5, 2, None, 'detect')) == 16

    def test_unknown_target(self):
        with pytest.raises(InvalidInput):
            candidate_paulis(5, 3, None, 'repair')

    def test_weight_one_detection_exceeds_capacity(self, cws562):
        with pytest.raises(CapacityExceeded):
            select_orthonormal_paulis(cws562, 2, target='detect')

    def test_ring9_family(self, ring9):
        fam = select_orthonormal_paulis(ring9.cws, 3)
        assert len(fam) == 28
        assert not any(len(v) > 1 for v in fam.provenance.values())


class TestSignatures:
    """Test signature ownership and spares"""

    def test_member_signature_example(self, cws562, site_family):
        """X1 applied to ZZIZI|s> carries (1,-1,-1,-1,1)"""
        plan = signature_decompose(cws562, site_family)
        assert (1, -1, -1, -1, 1) in plan.member_signatures[1]

    def test_owned_are_word_signatures_times_member(self, cws562, site_family):
        plan = signature_decompose(cws562, site_family)
        words = word_signatures(cws562)
        for idx, p in enumerate(site_family.paulis):
            sig = comm_signature(p, cws562.word_stabilizer)
            assert plan.member_signatures[idx] == [signature_product(w, sig) for w in words]

    def test_spares(self, cws562, site_family):
        plan = signature_decompose(cws562, site_family)
        assert len(plan.spares) == 32 - 6 * 4
        assert plan.spares == SPARES5

    def test_signature_vectors_are_orthonormal(self, cws562):
        frame = np.column_stack([signature_vector(cws562, s) for s in SPARES5])
        assert_allclose(frame.conj().T @ frame, np.eye(8), atol=1e-10)

    def test_signature_vector_is_eigenvector(self, cws562):
        v = signature_vector(cws562, SPARES5[0])
        for g, s in zip(cws562.word_stabilizer, SPARES5[0]):
            assert_allclose(to_matrix(g) @ v, s * v, atol=1e-10)


class TestFillSyndromeSpaces:
    """Test spare allocation over the syndromes"""

    @pytest.fixture
    def pieces(self, cws562, site_family):
        plan = signature_decompose(cws562, site_family)
        syndrome_map = assign_syndromes(site_family, 2)
        return plan, syndrome_map

    def test_minimal_uses_no_spares(self, cws562, site_family, pieces):
        plan, syndrome_map = pieces
        plan, table = fill_syndrome_spaces(cws562, site_family, plan, syndrome_map, 2, 'minimal')
        assert table.space_dim == 6
        assert all(not v for v in plan.spare_allotment.values())

    def test_extended_default_order(self, cws562, site_family, pieces):
        plan, syndrome_map = pieces
        plan, table = fill_syndrome_spaces(cws562, site_family, plan, syndrome_map, 2, 'extended_full')
        assert table.space_dim == 8
        assert plan.spare_allotment[(1, 1)] == SPARES5[0:2]
        assert plan.spare_allotment[(1, -1)] == SPARES5[2:4]
        assert plan.spare_allotment[(-1, 1)] == SPARES5[4:6]
        assert plan.spare_allotment[(-1, -1)] == SPARES5[6:8]
        assert table.labels[(1, 1)][0] == 'IIIII'
        assert len(table.labels[(1, 1)]) == 3

    def test_explicit_allocation(self, cws562, site_family, pieces):
        plan, syndrome_map = pieces
        allocation = {(1, -1): [SPARES5[2], SPARES5[4]], (-1, 1): [SPARES5[3], SPARES5[5]]}
        plan, _ = fill_syndrome_spaces(cws562, site_family, plan, syndrome_map, 2, 'extended_full', allocation)
        assert plan.spare_allotment[(1, 1)] == SPARES5[0:2]
        assert plan.spare_allotment[(1, -1)] == [SPARES5[2], SPARES5[4]]
        assert plan.spare_allotment[(-1, 1)] == [SPARES5[3], SPARES5[5]]
        assert plan.spare_allotment[(-1, -1)] == SPARES5[6:8]

    def test_allocation_must_use_spares(self, cws562, site_family, pieces):
        plan, syndrome_map = pieces
        owned = plan.member_signatures[0][0]
        with pytest.raises(InvalidInput):
            fill_syndrome_spaces(cws562, site_family, plan, syndrome_map, 2, 'extended_full', {(1, 1): [owned]})

    def test_pool_runs_out(self, cws562):
        """Three generators leave 4-dimensional spaces, too small for 6 codewords"""
        fam = select_orthonormal_paulis(cws562, 2)
        plan = signature_decompose(cws562, fam)
        with pytest.raises(InsufficientSpares):
            fill_syndrome_spaces(cws562, fam, plan, {0: (1, 1, 1)}, 3, 'extended_full')


class TestCwsSynthesis:
    """Test Paulian stabilizers built from signatures"""

    def test_minimal_reproduces_projector_pair(self, cws562):
        result = PaulianSynthesizer(mode='minimal').synthesize_cws(cws562, 2, site=0)
        assert result.certified
        c = cws562.code.code_frame.frame
        i_c, x_c, y_c, z_c = (_proj(to_matrix(parse_pauli(p)) @ c) for p in ["IIIII", "XIIII", "YIIII", "ZIIII"])
        assert_allclose(result.group.z_gens[0], i_c + x_c - y_c - z_c, atol=1e-9)
        assert_allclose(result.group.z_gens[1], i_c + y_c - x_c - z_c, atol=1e-9)
        assert result.group.domain.dim == 24

    def test_extended_covers_whole_space(self, cws562):
        result = PaulianSynthesizer(mode='extended_full').synthesize_cws(cws562, 2, site=0)
        assert result.certified
        assert result.group.domain.dim == 32
        for report in result.group.certification:
            assert report.eig_dims == (16, 16)

    def test_pauli_forms_agree_with_generators(self, cws562):
        result = PaulianSynthesizer(mode='extended_full').synthesize_cws(cws562, 2, site=0)
        for form, z in zip(result.group.pauli_forms, result.group.z_gens):
            if form is not None:
                assert_allclose(to_matrix(parse_pauli(form)), z, atol=1e-9)

    def test_detectable_report_matches_signatures(self, cws562):
        """A weight-1 Pauli leaves in H_(1,1) exactly the images whose signatures were put there"""
        result = PaulianSynthesizer(mode='extended_full').synthesize_cws(cws562, 2, site=0)
        trivial = set(result.signature_plan.fills[(1, 1)])
        words = word_signatures(cws562)
        assert len(result.detectable) == 15
        for row in result.detectable:
            sig = comm_signature(parse_pauli(row['pauli']), cws562.word_stabilizer)
            inside = sum(signature_product(w, sig) in trivial for w in words) / len(words)
            assert row['weight_in_trivial_space'] == pytest.approx(inside, abs=1e-9)
        by_name = {row['pauli']: row['status'] for row in result.detectable}
        for name in ['XIIII', 'YIIII', 'ZIIII']:
            assert by_name[name] == 'detected'

    def test_allocated_fixture(self):
        loaded = materialize(load_code_file(os.path.join(FIXTURES, "cws_5_6_2_allocated.json")))
        result = PaulianSynthesizer(mode='extended_full').synthesize_cws(
            loaded.cws, 2, site=0, allocation=loaded.allocation)
        assert result.certified
        assert result.signature_plan.spare_allotment[(1, -1)] == [SPARES5[2], SPARES5[4]]
        space = result.table.entries[(1, -1)].space
        for s in (SPARES5[2], SPARES5[4]):
            v = signature_vector(loaded.cws, s)
            assert_allclose(projector(space) @ v, v, atol=1e-9)

    def test_ring9_extended(self, ring9):
        plan = capacity_plan(28, 512, 8, n=9, d=3)
        assert plan.m == 5
        result = PaulianSynthesizer(mode='extended_full').synthesize_cws(ring9.cws, 3)
        assert result.certified
        assert result.table.space_dim == 16
        allotted = result.signature_plan.spare_allotment
        assigned = set(result.table.syndrome_map.values())
        for t, sigs in allotted.items():
            assert len(sigs) == (8 if t in assigned else 16)
        assert len(result.table.excess) == 4
        assert result.group.domain.dim == 512

    def test_site_must_be_a_qubit(self, cws562):
        with pytest.raises(InvalidInput):
            select_orthonormal_paulis(cws562, 2, site=7)
