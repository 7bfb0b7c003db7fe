"""
Measurement circuit and Monte Carlo record types
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from models.algebra import SignatureTuple


@dataclass(frozen=True, eq=False)
class AncillaCircuit:
    """
    Coupling between a system of dimension ``system_dim`` and one ancilla qubit

    The ancilla is the last (least significant) tensor factor and starts in
    |1> (index 0, the +1 eigenstate of Z_A). ``readout`` is "Z" after a GCNOT
    and "X" after a controlled stabilizer.
    """

    system_dim: int
    coupling: np.ndarray
    readout: str
    ancilla_init: int = 0

    @property
    def dim(self) -> int:
        return 2 * self.system_dim


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    injected_error_index: int
    syndrome: Optional[SignatureTuple]
    recovered_fidelity: float
    success: bool
    sampling_failure: bool = False

    def to_dict(self) -> dict:
        return {
            'trial_index': self.trial_index,
            'injected_error_index': self.injected_error_index,
            'syndrome': list(self.syndrome) if self.syndrome is not None else None,
            'recovered_fidelity': self.recovered_fidelity,
            'success': self.success,
            'sampling_failure': self.sampling_failure,
        }


@dataclass
class MonteCarloStats:
    trials: int
    seed: int
    successes: int = 0
    sampling_failures: int = 0
    fidelity_sum: float = 0.0
    per_syndrome_counts: dict[str, int] = field(default_factory=dict)
    per_error_counts: dict[str, int] = field(default_factory=dict)

    @property
    def completed(self) -> int:
        return self.trials - self.sampling_failures

    @property
    def success_rate(self) -> float:
        return self.successes / self.completed if self.completed else 0.0

    @property
    def mean_fidelity(self) -> float:
        return self.fidelity_sum / self.completed if self.completed else 0.0

    def to_dict(self) -> dict:
        return {
            'trials': self.trials,
            'seed': self.seed,
            'successes': self.successes,
            'sampling_failures': self.sampling_failures,
            'success_rate': self.success_rate,
            'mean_fidelity': self.mean_fidelity,
            'per_syndrome_counts': dict(sorted(self.per_syndrome_counts.items())),
            'per_error_counts': dict(sorted(self.per_error_counts.items())),
        }
