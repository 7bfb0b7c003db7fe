"""
Layer 4: Measurement (ancilla circuits, syndrome extraction, recovery, Monte Carlo).
"""
from .circuits import chain_cnot, controlled_stabilizer, gcnot_build
from .syndrome_measurement import direct_measurement, extract_syndrome, measure_stabilizer, recover, SyndromeDecoder
from .monte_carlo import MonteCarloSimulator

__all__ = [
    'chain_cnot',
    'controlled_stabilizer',
    'gcnot_build',
    'direct_measurement',
    'extract_syndrome',
    'measure_stabilizer',
    'recover',
    'SyndromeDecoder',
    'MonteCarloSimulator',
]
