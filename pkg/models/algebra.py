"""
Algebraic value types: subspaces, Pauli operators and signature tuples
"""
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from models.complex_json import encode_matrix, decode_matrix

# A tuple of +1/-1 entries: a syndrome (t), a commutation signature, or an
# element of the simultaneous-eigenvalue set of a word stabilizer
SignatureTuple = tuple[int, ...]


def make_signature(components: Iterable[int]) -> SignatureTuple:
    """Validate and freeze a list of +1/-1 values"""
    sig = tuple(int(c) for c in components)
    for c in sig:
        if c not in (1, -1):
            raise ValueError(f"signature components must be +1 or -1, got {c}")
    return sig


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of C^ambient_dim stored as an orthonormal column frame"""

    ambient_dim: int
    frame: np.ndarray

    def __post_init__(self):
        frame = np.asarray(self.frame, dtype=complex)
        if frame.ndim == 1:
            frame = frame.reshape(-1, 1)
        if frame.size == 0:
            frame = np.zeros((self.ambient_dim, 0), dtype=complex)
        if frame.shape[0] != self.ambient_dim:
            raise ValueError(
                f"frame has {frame.shape[0]} rows, ambient dimension is {self.ambient_dim}"
            )
        if not np.all(np.isfinite(frame)):
            raise ValueError("frame contains NaN or Inf entries")
        object.__setattr__(self, 'frame', _frozen(frame))

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    def to_dict(self) -> dict:
        return {'ambient_dim': self.ambient_dim, 'frame': encode_matrix(self.frame)}

    @classmethod
    def from_dict(cls, data: dict) -> 'Subspace':
        frame = decode_matrix(data['frame'])
        if frame.size == 0:
            frame = np.zeros((data['ambient_dim'], 0), dtype=complex)
        return cls(ambient_dim=data['ambient_dim'], frame=frame)


@dataclass(frozen=True)
class PauliOp:
    """
    n-qubit Pauli operator i^phase * X^xbits Z^zbits (tensor product, qubit 1 leftmost)

    Y carries an intrinsic phase: Y = i X Z, so the letter Y is stored as
    x=1, z=1 and contributes 1 to ``phase``.
    """

    n: int
    phase: int
    xbits: tuple[int, ...]
    zbits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'phase', int(self.phase) % 4)
        object.__setattr__(self, 'xbits', tuple(int(b) & 1 for b in self.xbits))
        object.__setattr__(self, 'zbits', tuple(int(b) & 1 for b in self.zbits))
        if len(self.xbits) != self.n or len(self.zbits) != self.n:
            raise ValueError("xbits and zbits must have length n")

    @property
    def weight(self) -> int:
        return sum(1 for x, z in zip(self.xbits, self.zbits) if x or z)

    @property
    def symplectic(self) -> np.ndarray:
        """Concatenated (x | z) bit vector"""
        return np.array(self.xbits + self.zbits, dtype=np.uint8)

    def phaseless(self) -> 'PauliOp':
        """Coset representative in the phaseless group: Hermitian letter form"""
        y_count = sum(x & z for x, z in zip(self.xbits, self.zbits))
        return PauliOp(self.n, y_count, self.xbits, self.zbits)

    def to_dict(self) -> dict:
        return {'n': self.n, 'phase': self.phase, 'xbits': list(self.xbits), 'zbits': list(self.zbits)}

    @classmethod
    def from_dict(cls, data: dict) -> 'PauliOp':
        return cls(n=data['n'], phase=data['phase'], xbits=tuple(data['xbits']), zbits=tuple(data['zbits']))


@dataclass(frozen=True)
class PauliGroup:
    """Subgroup of the n-qubit Pauli group given by generators"""

    n: int
    generators: tuple[PauliOp, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, 'generators', tuple(self.generators))
        for g in self.generators:
            if g.n != self.n:
                raise ValueError("all generators must act on n qubits")
