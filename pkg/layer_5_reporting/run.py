"""
Command orchestration

CommandRunner turns a loaded code file into a report for one of the
commands check, synthesize, measure, simulate and concat. Reports are plain
dicts; identical inputs and seeds give identical reports.
"""
from typing import Optional, Sequence

import numpy as np

from config.settings import settings
from layer_1_algebra.linalg import is_unitary
from layer_1_algebra.pauli import format_pauli, to_matrix
from layer_2_codes.concatenation import concat
from layer_2_codes.knill_laflamme import detect_classify, kl_matrix, normalize_errors
from layer_3_synthesis.cws_pipeline import candidate_paulis, select_orthonormal_paulis
from layer_3_synthesis.synthesize import PaulianSynthesizer
from layer_4_measurement.monte_carlo import MonteCarloSimulator
from layer_4_measurement.syndrome_measurement import SyndromeDecoder
from models.complex_json import decode_complex, encode_vector
from models.synthesis import SynthesisResult, format_signature
from utils.errors import DimensionMismatch, InvalidChannel, InvalidInput
from utils.logger import get_logger

from .code_file import LoadedCode, binary_code_to_file, resolve_operator
from .report import kl_section, synthesis_sections

logger = get_logger(__name__)

COMMANDS = ('check', 'synthesize', 'measure', 'simulate', 'concat')


def code_section(loaded: LoadedCode) -> dict:
    code = loaded.code
    section = {
        'name': code.name,
        'type': loaded.source.code.type,
        'ambient': code.ambient.to_dict(),
        'dim': code.dim,
        'k': code.k,
        'distance': code.distance,
        'errors': list(code.error_names),
    }
    if loaded.cws is not None:
        section['word_stabilizer'] = [format_pauli(p) for p in loaded.cws.word_stabilizer]
        section['word_operators'] = [format_pauli(p) for p in loaded.cws.word_operators]
    return section


def parse_state(amplitudes: Sequence, dim: int) -> np.ndarray:
    """A state from a JSON amplitude list of numbers or [re, im] pairs"""
    v = np.array([decode_complex(a) if isinstance(a, list) else complex(a) for a in amplitudes], dtype=complex)
    if v.size != dim:
        raise DimensionMismatch(f"state has {v.size} amplitudes, the ambient dimension is {dim}")
    norm = np.linalg.norm(v)
    if norm == 0:
        raise InvalidInput("state has zero norm")
    return v / norm


class CommandRunner:
    """Runs one CLI command against loaded code files"""

    def __init__(self, tol: Optional[float] = None, mode: Optional[str] = None,
                 workers: int = settings.MC_WORKERS):
        """
        Args:
            tol: Tolerance; the code file's option, then settings.TOLERANCE, when None
            mode: Table mode; the code file's option, then settings.DEFAULT_MODE, when None
            workers: Monte Carlo thread count
        """
        self.tol = tol
        self.mode = mode
        self.workers = workers

    def _tol(self, loaded: LoadedCode) -> float:
        return self.tol or loaded.options.tolerance or settings.TOLERANCE

    def _mode(self, loaded: LoadedCode) -> str:
        return self.mode or loaded.options.mode or settings.DEFAULT_MODE

    def _distance(self, loaded: LoadedCode) -> int:
        d = loaded.options.distance or loaded.code.distance
        if d is None:
            raise InvalidInput(f"'{loaded.code.name}' needs a declared distance (options.distance)")
        return d

    @staticmethod
    def _site(loaded: LoadedCode, site: Optional[int]) -> Optional[int]:
        site = site if site is not None else loaded.options.site
        if site is None:
            return None
        if loaded.cws is None or not 1 <= site <= loaded.cws.n:
            raise InvalidInput(f"site {site} is not a qubit of this code")
        return site - 1

    def run(self, command: str, loaded: LoadedCode, **flags) -> dict:
        if command not in COMMANDS:
            raise InvalidInput(f"unknown command '{command}'")
        logger.info(f"Running '{command}' on '{loaded.code.name}'")
        return getattr(self, command)(loaded, **flags)

    # ============================================================
    # check
    # ============================================================

    def check(self, loaded: LoadedCode, target: Optional[str] = None, site: Optional[int] = None) -> dict:
        """Knill-Laflamme matrix of the declared errors and detection categories of the unitary ones"""
        tol = self._tol(loaded)
        code = loaded.code
        report = {'code': code_section(loaded)}

        if loaded.cws is not None:
            d = self._distance(loaded)
            target = target or loaded.options.target
            site = self._site(loaded, site)
            fam = select_orthonormal_paulis(loaded.cws, d, site, target)
            report['family'] = {'members': list(fam.names), 'degenerate': any(len(v) > 1 for v in fam.provenance.values())}
            if code.declared_errors:
                errors, names = list(code.declared_errors), list(code.error_names)
            else:
                paulis = candidate_paulis(loaded.cws.n, d, site, target)
                errors, names = [to_matrix(p) for p in paulis], [format_pauli(p) for p in paulis]
        else:
            errors, names = list(code.declared_errors), list(code.error_names)

        if not errors:
            raise InvalidInput(f"'{code.name}' declares no errors to check")
        errors = normalize_errors(errors, names)
        alpha, correctable = kl_matrix(code, errors, tol)
        report['kl'] = kl_section(alpha, correctable, names)

        rows = []
        for name, e in zip(names, errors):
            if is_unitary(e, tol):
                rows.append({'error': name, **detect_classify(code, e, tol)})
            else:
                rows.append({'error': name, 'category': 'non_unitary', 'a': None, 'theta': None})
        report['classification'] = rows
        logger.info(f"'{code.name}': declared errors {'are' if correctable else 'are not'} correctable")
        return report

    # ============================================================
    # synthesize
    # ============================================================

    def synthesis(self, loaded: LoadedCode, target: Optional[str] = None,
                  site: Optional[int] = None) -> SynthesisResult:
        """Pick the pipeline that fits the code file"""
        synthesizer = PaulianSynthesizer(self._tol(loaded), self._mode(loaded))
        preferred = loaded.preferred or None
        if loaded.cws is not None:
            return synthesizer.synthesize_cws(loaded.cws, self._distance(loaded), self._site(loaded, site),
                                              target or loaded.options.target, loaded.allocation or None,
                                              preferred)
        if loaded.stabilizers is not None:
            return synthesizer.synthesize_with_stabilizers(loaded.code, loaded.stabilizers, loaded.family)
        return synthesizer.synthesize(loaded.code, loaded.family, preferred)

    def synthesize(self, loaded: LoadedCode, target: Optional[str] = None, site: Optional[int] = None) -> dict:
        result = self.synthesis(loaded, target, site)
        return {'code': code_section(loaded), **synthesis_sections(result)}

    # ============================================================
    # measure
    # ============================================================

    def measure(self, loaded: LoadedCode, state: Optional[Sequence] = None, error: Optional[str] = None,
                seed: int = settings.MC_SEED, target: Optional[str] = None, site: Optional[int] = None) -> dict:
        """
        One syndrome extraction and recovery

        The state defaults to the first codeword; ``error`` names an operator
        applied before extraction.
        """
        tol = self._tol(loaded)
        result = self.synthesis(loaded, target, site)
        code = loaded.code
        psi = code.code_frame.frame[:, 0] if state is None else parse_state(state, code.dim)

        corrupted = psi
        if error is not None:
            corrupted = resolve_operator(error, code.ambient) @ psi
            norm = np.linalg.norm(corrupted)
            if norm < tol:
                raise InvalidInput(f"'{error}' annihilates the state")
            corrupted = corrupted / norm

        decoder = SyndromeDecoder(code, result.family, result.table, result.group, tol)
        rng = np.random.default_rng(seed)
        syndrome, collapsed = decoder.extract(corrupted, rng)
        recovered = decoder.recover(collapsed, syndrome)
        index = result.table.error_for(syndrome)
        fidelity = float(min(abs(np.vdot(psi, recovered)) ** 2, 1.0))

        report = {'code': code_section(loaded), **synthesis_sections(result)}
        report['measurement'] = {
            'error': error,
            'seed': seed,
            'syndrome': list(syndrome),
            'syndrome_label': format_signature(syndrome),
            'diagnosed': result.family_names[index] if index is not None else None,
            'recovered_fidelity': fidelity,
            'recovered_state': encode_vector(recovered),
        }
        return report

    # ============================================================
    # simulate
    # ============================================================

    def simulate(self, loaded: LoadedCode, trials: int = settings.MC_TRIALS, seed: int = settings.MC_SEED,
                 state: Optional[Sequence] = None, target: Optional[str] = None,
                 site: Optional[int] = None) -> dict:
        """Monte Carlo round trips over the code file's channel"""
        if not loaded.channel:
            raise InvalidChannel(f"'{loaded.code.name}' has no channel (options.channel)")
        tol = self._tol(loaded)
        result = self.synthesis(loaded, target, site)
        simulator = MonteCarloSimulator(loaded.code, result.family, result.table, result.group, tol, self.workers)
        fixed = None if state is None else parse_state(state, loaded.code.dim)
        stats, _ = simulator.run(loaded.channel, trials, seed, fixed)

        report = {'code': code_section(loaded), **synthesis_sections(result)}
        report['simulation'] = stats.to_dict()
        return report

    # ============================================================
    # concat
    # ============================================================

    def concat(self, outer: LoadedCode, inner: LoadedCode) -> dict:
        """Concatenate two stabilizer code files; the result is itself a code file"""
        for loaded in (outer, inner):
            if loaded.binary is None:
                raise InvalidInput(f"'{loaded.code.name}' is not a stabilizer code file")
        combined = concat(outer.binary, inner.binary)
        return {
            'concat': {
                'outer': outer.binary.name,
                'inner': inner.binary.name,
                'n': combined.n,
                'k': combined.k,
                'generators': len(combined.stabilizers),
                'distance_bound': combined.distance_bound,
            },
            'code_file': binary_code_to_file(combined),
        }
