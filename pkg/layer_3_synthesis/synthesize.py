"""
Paulian synthesizer - orchestrates the synthesis workflow
1. Build the orthonormal family F from the declared errors
2. Plan the generator count m
3. Assign syndromes
4. Build the syndrome spaces
5. Build the encoder U and derive Z_i^S, X_i^S
6. Certify the generators
"""
from typing import Optional, Sequence

import numpy as np

from config.settings import settings
from layer_1_algebra.pauli import enumerate_paulis
from layer_2_codes.bosonic import parity_observables
from layer_2_codes.knill_laflamme import orthonormalize_errors
from models.algebra import SignatureTuple
from models.code import CwsCode, OrthonormalFamily, QuantumCode
from models.synthesis import SynthesisResult
from utils.errors import NotCertified
from utils.logger import get_logger

from .capacity import capacity_plan
from .cws_pipeline import cws_stabilizers, fill_syndrome_spaces, select_orthonormal_paulis, signature_decompose
from .encoder import build_encoder
from .paulian import derive_generators, detectable_report
from .syndrome_table import (
    assign_syndromes,
    build_syndrome_table,
    syndromes_from_observables,
    table_from_stabilizers,
)

logger = get_logger(__name__)


def _banner(title: str):
    logger.info("=" * 60)
    logger.info(title)
    logger.info("=" * 60)


class PaulianSynthesizer:
    """Synthesize Paulian stabilizer groups for quantum codes"""

    def __init__(self, tol: float = settings.TOLERANCE, mode: str = settings.DEFAULT_MODE):
        """
        Initialize the synthesizer

        Args:
            tol: Equality tolerance for every numerical check
            mode: Syndrome-table mode, "minimal" or "extended_full"
        """
        self.tol = tol
        self.mode = mode

    def synthesize(self, code: QuantumCode, fam: Optional[OrthonormalFamily] = None,
                   preferred: Optional[dict[int, SignatureTuple]] = None,
                   padding_observables: Optional[Sequence[np.ndarray]] = None) -> SynthesisResult:
        """
        Run the full pipeline on a code with declared errors

        Args:
            code: Code with its declared errors
            fam: Orthonormal family supplied directly (skips step 1)
            preferred: Member index -> syndrome assignments honored first
            padding_observables: Commuting involutions sorting padding by eigenvalue;
                defaults to the per-mode parities for extended Fock tables when
                their count matches m

        Returns:
            SynthesisResult

        Raises:
            NotCertified: a generator is not Paulian on H' or a group relation fails
        """
        _banner(f"Synthesizing Paulian stabilizers for '{code.name}'")

        logger.info("Step 1: Orthonormal error family")
        if fam is None:
            fam = orthonormalize_errors(code, self.tol)
        logger.info(f"Family: {', '.join(fam.names)}")

        logger.info("Step 2: Capacity")
        bosonic = code.ambient.truncated
        plan = capacity_plan(len(fam), None if bosonic else code.dim, code.k, bosonic=bosonic)
        if plan.mode == 'floor':
            fam = fam.truncated(plan.used_family_size)

        if padding_observables is None and bosonic and self.mode == 'extended_full':
            parities = parity_observables(code.ambient)
            if len(parities) == plan.m:
                padding_observables = parities

        logger.info("Step 3: Syndrome assignment")
        if preferred is None and padding_observables is not None:
            preferred = syndromes_from_observables(code, fam, padding_observables, self.tol)
        syndrome_map = assign_syndromes(fam, plan.m, preferred)

        logger.info("Step 4: Syndrome spaces")
        table = build_syndrome_table(code, fam, syndrome_map, plan.m, self.mode, padding_observables, self.tol)

        logger.info("Step 5: Encoder and generators")
        u = build_encoder(table, code, fam, self.tol)
        group = derive_generators(u, table, code, self.tol)

        return self._finish(code.name, fam, plan, table, group)

    def synthesize_with_stabilizers(self, code: QuantumCode, stabilizers: Sequence[np.ndarray],
                                    fam: Optional[OrthonormalFamily] = None) -> SynthesisResult:
        """Pipeline whose syndrome spaces are the joint eigenspaces of known stabilizers"""
        _banner(f"Synthesizing from given stabilizers for '{code.name}'")
        if fam is None:
            fam = orthonormalize_errors(code, self.tol)
        plan = capacity_plan(len(fam), None if code.ambient.truncated else code.dim, code.k,
                             bosonic=code.ambient.truncated)
        table = table_from_stabilizers(code, fam, stabilizers, self.tol)
        u = build_encoder(table, code, fam, self.tol)
        group = derive_generators(u, table, code, self.tol)
        return self._finish(code.name, fam, plan, table, group)

    def synthesize_cws(self, cws: CwsCode, d: int, site: Optional[int] = None, target: str = 'correct',
                       allocation: Optional[dict] = None,
                       preferred: Optional[dict[int, SignatureTuple]] = None) -> SynthesisResult:
        """
        Signature pipeline for codeword stabilized codes

        Args:
            cws: The code
            d: Declared distance
            site: Restrict the family to {I, X, Y, Z} on this qubit (0-based)
            target: "correct" or "detect"
            allocation: Syndrome -> spare signatures honored before the default order
            preferred: Member index -> syndrome assignments honored first
        """
        _banner(f"Synthesizing CWS Paulian stabilizers for '{cws.code.name}'")

        logger.info("Step 1: Orthonormal Pauli family")
        fam = select_orthonormal_paulis(cws, d, site, target)

        logger.info("Step 2: Capacity")
        plan = capacity_plan(len(fam), 2 ** cws.n, len(cws.word_operators), cws.n, d)

        logger.info("Step 3: Syndrome assignment")
        syndrome_map = assign_syndromes(fam, plan.m, preferred)

        logger.info("Step 4: Signatures and syndrome spaces")
        signatures = signature_decompose(cws, fam)
        signatures, table = fill_syndrome_spaces(cws, fam, signatures, syndrome_map, plan.m,
                                                 self.mode, allocation, self.tol)

        logger.info("Step 5: Encoder and generators")
        group = cws_stabilizers(cws, fam, table, signatures, self.tol)

        detectable = []
        if site is not None:
            detectable = detectable_report(group, table, cws.code,
                                           list(enumerate_paulis(cws.n, d - 1, 1)), self.tol)
        degenerate = any(len(v) > 1 for v in fam.provenance.values())
        return self._finish(cws.code.name, fam, plan, table, group, signatures, degenerate, detectable)

    def _finish(self, name, fam, plan, table, group, signatures=None, degenerate=None, detectable=None):
        logger.info("Step 6: Certification")
        if degenerate is None:
            degenerate = any(len(v) > 1 for v in fam.provenance.values())
        result = SynthesisResult(
            code_name=name,
            family=fam,
            plan=plan,
            table=table,
            group=group,
            signature_plan=signatures,
            degenerate=degenerate,
            detectable=detectable or [],
        )
        if not result.certified:
            failing = [i + 1 for i, r in enumerate(group.certification) if not r.paulian]
            logger.error(f"Synthesis for '{name}' did not certify: {group.relations}")
            raise NotCertified(
                f"synthesized group for '{name}' failed certification",
                {'relations': dict(group.relations),
                 'non_paulian_generators': failing},
            )
        logger.info(f"Certified {group.m} Paulian generators on a domain of dimension {group.domain.dim}")
        return result
