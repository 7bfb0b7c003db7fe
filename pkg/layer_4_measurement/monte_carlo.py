"""
Monte Carlo round trips: encode, corrupt, measure, recover

Trial i draws from its own generator seeded with (seed, i), so the
statistics depend only on the seed and the trial count, never on how
trials are scheduled across workers.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from config.settings import settings
from models.code import OrthonormalFamily, QuantumCode
from models.measurement import MonteCarloStats, TrialRecord
from models.synthesis import PaulianGroup, SyndromeTable, format_signature
from utils.errors import DimensionMismatch, InvalidChannel, StateOutsideDomain, UncorrectableSyndrome
from utils.logger import get_logger

from .syndrome_measurement import SyndromeDecoder

logger = get_logger(__name__)


def validate_channel(channel: Sequence[tuple[str, np.ndarray, float]], dim: int,
                     tol: float = settings.TOLERANCE) -> np.ndarray:
    """
    Check a weighted error list and return its weights

    Raises:
        InvalidChannel: empty, negative weights, or weights not summing to 1
    """
    if not channel:
        raise InvalidChannel("channel has no errors")
    weights = np.array([w for _, _, w in channel], dtype=float)
    if np.any(weights < 0) or not np.all(np.isfinite(weights)):
        raise InvalidChannel("channel weights must be finite and nonnegative")
    if abs(weights.sum() - 1) > max(tol, 1e-9):
        raise InvalidChannel(f"channel weights sum to {weights.sum():.12g}, not 1")
    for name, e, _ in channel:
        if np.asarray(e).shape != (dim, dim):
            raise DimensionMismatch(f"channel error '{name}' does not act on dimension {dim}")
    return weights / weights.sum()


class MonteCarloSimulator:
    """Repeated error-correction round trips on one synthesized code"""

    def __init__(self, code: QuantumCode, fam: OrthonormalFamily, table: SyndromeTable,
                 group: PaulianGroup, tol: float = settings.TOLERANCE,
                 workers: int = settings.MC_WORKERS):
        """
        Initialize the simulator

        Args:
            code: The code whose logical states are encoded
            fam: Orthonormal family the table was built from
            table: Syndrome table
            group: Paulian generators measured in every trial
            workers: Thread count; results do not depend on it
        """
        self.code = code
        self.tol = tol
        self.workers = max(1, workers)
        self.decoder = SyndromeDecoder(code, fam, table, group, tol)

    def random_logical_state(self, rng: np.random.Generator) -> np.ndarray:
        coeffs = rng.normal(size=self.code.k) + 1j * rng.normal(size=self.code.k)
        state = self.code.code_frame.frame @ coeffs
        return state / np.linalg.norm(state)

    def run_trial(self, index: int, channel, weights: np.ndarray, seed: int,
                  state: Optional[np.ndarray] = None) -> TrialRecord:
        rng = np.random.default_rng([seed, index])
        psi = self.random_logical_state(rng) if state is None else state
        which = int(rng.choice(len(channel), p=weights))
        corrupted = channel[which][1] @ psi
        norm = np.linalg.norm(corrupted)
        if norm < self.tol:
            return TrialRecord(index, which, None, 0.0, False, sampling_failure=True)
        corrupted = corrupted / norm

        try:
            syndrome, collapsed = self.decoder.extract(corrupted, rng)
        except StateOutsideDomain:
            return TrialRecord(index, which, None, 0.0, False)
        try:
            recovered = self.decoder.recover(collapsed, syndrome)
        except UncorrectableSyndrome:
            return TrialRecord(index, which, syndrome, 0.0, False)

        fidelity = float(min(abs(np.vdot(psi, recovered)) ** 2, 1.0))
        return TrialRecord(index, which, syndrome, fidelity, fidelity > settings.SUCCESS_FIDELITY)

    def run(self, channel: Sequence[tuple[str, np.ndarray, float]], trials: int = settings.MC_TRIALS,
            seed: int = settings.MC_SEED, state: Optional[np.ndarray] = None) -> tuple[MonteCarloStats, list[TrialRecord]]:
        """
        Run ``trials`` round trips

        Args:
            channel: (name, operator, weight) triples
            trials: Number of trials
            seed: Base seed
            state: Fixed logical state; a random one per trial when None

        Returns:
            Aggregated statistics and the per-trial records in trial order
        """
        if trials < 1:
            raise InvalidChannel("trial count must be positive")
        weights = validate_channel(channel, self.code.dim, self.tol)
        if state is not None:
            state = np.asarray(state, dtype=complex).ravel()
            state = state / np.linalg.norm(state)

        logger.info(f"Running {trials} trials on '{self.code.name}' with seed {seed} ({self.workers} workers)")
        if self.workers == 1:
            records = [self.run_trial(i, channel, weights, seed, state) for i in range(trials)]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                records = list(pool.map(lambda i: self.run_trial(i, channel, weights, seed, state), range(trials)))

        stats = MonteCarloStats(trials=trials, seed=seed)
        for record in records:
            name = channel[record.injected_error_index][0]
            stats.per_error_counts[name] = stats.per_error_counts.get(name, 0) + 1
            if record.sampling_failure:
                stats.sampling_failures += 1
                continue
            key = format_signature(record.syndrome) if record.syndrome is not None else 'none'
            stats.per_syndrome_counts[key] = stats.per_syndrome_counts.get(key, 0) + 1
            stats.fidelity_sum += record.recovered_fidelity
            stats.successes += int(record.success)

        if stats.sampling_failures:
            logger.warning(f"{stats.sampling_failures} trials hit zero-norm error branches")
        logger.info(f"Success rate {stats.success_rate:.6f}, mean fidelity {stats.mean_fidelity:.9f}")
        return stats, records
