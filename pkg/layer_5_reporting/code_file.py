"""
Code file schema and loader

A code file is JSON with a mandatory ``format_version``. Blocks:

    ambient   {"kind": "qubits", "qubits": n} or {"kind": "fock", "modes": M, "cutoff": N}
    code      one of
              {"type": "codewords", "codewords": [...]}
              {"type": "cws", "word_stabilizer": [...], "word_operators": [...]}
              {"type": "zoo", "constructor": "binomial" | "two_mode" | "repetition"
                              | "generalized_repetition", "params": {...}}
              {"type": "stabilizer", "stabilizers": [...], "logical_x": [...], "logical_z": [...]}
    errors    {"kind": "pauli" | "named" | "matrix", "items": [...], "names": [...]}
    family    {"names": [...], "members": [matrix, ...]}   (optional, skips orthonormalization)
    options   tolerance, mode, distance, site, target, preferred, allocation, channel

Each codeword is either a dense amplitude list or a map from basis label
("010" for qubits, "4,0" for Fock occupations) to amplitude. Amplitudes are
numbers or [re, im] pairs. Unknown keys are rejected everywhere.
"""
import json
from dataclasses import dataclass, field
from typing import Annotated, Any, Literal, Optional, Union

import numpy as np
from pydantic import AfterValidator, BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from config.settings import settings
from layer_1_algebra.pauli import format_pauli, parse_pauli, to_matrix
from layer_2_codes.bosonic import binomial_code, named_operator, two_mode_code
from layer_2_codes.concatenation import binary_code_from_strings
from layer_2_codes.cws_code import cws_from_strings
from layer_2_codes.repetition import generalized_repetition, repetition_code, stabilizer_code
from models.algebra import PauliOp, SignatureTuple, Subspace, make_signature
from models.code import AmbientSpace, BinaryCode, CwsCode, OrthonormalFamily, QuantumCode
from models.complex_json import decode_complex, decode_matrix
from utils.errors import (
    CodeFileValidationError,
    DimensionMismatch,
    InvalidInput,
    IoError,
    LengthMismatch,
    NonOrthogonalCodewords,
    ParseError,
)
from utils.logger import get_logger

logger = get_logger(__name__)

Amplitude = Union[float, tuple[float, float]]
Codeword = Union[list[Amplitude], dict[str, Amplitude]]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra='forbid')


def _check_paulis(values: list[str]) -> list[str]:
    for text in values:
        try:
            parse_pauli(text)
        except ParseError as e:
            raise ValueError(e.message)
    return values


PauliList = Annotated[list[str], AfterValidator(_check_paulis)]


class AmbientBlock(StrictModel):
    kind: Literal['qubits', 'fock']
    qubits: Optional[int] = Field(default=None, ge=1)
    modes: Optional[int] = Field(default=None, ge=1)
    cutoff: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode='after')
    def check_complete(self):
        if self.kind == 'qubits' and self.qubits is None:
            raise ValueError("qubit ambient needs 'qubits'")
        if self.kind == 'fock' and (self.modes is None or self.cutoff is None):
            raise ValueError("fock ambient needs 'modes' and 'cutoff'")
        if self.kind == 'qubits' and self.qubits > settings.MAX_DENSE_QUBITS:
            raise ValueError(f"{self.qubits} qubits exceeds the dense limit {settings.MAX_DENSE_QUBITS}")
        return self


class CodewordsBlock(StrictModel):
    type: Literal['codewords']
    codewords: list[Codeword] = Field(min_length=1)


class CwsBlock(StrictModel):
    type: Literal['cws']
    word_stabilizer: PauliList = Field(min_length=1)
    word_operators: PauliList = Field(min_length=1)


class ZooBlock(StrictModel):
    type: Literal['zoo']
    constructor: Literal['binomial', 'two_mode', 'repetition', 'generalized_repetition']
    params: dict[str, Any] = Field(default_factory=dict)


class StabilizerBlock(StrictModel):
    type: Literal['stabilizer']
    stabilizers: PauliList = Field(min_length=1)
    logical_x: PauliList = Field(default_factory=list)
    logical_z: PauliList = Field(default_factory=list)

    @model_validator(mode='after')
    def check_logical_pairs(self):
        if len(self.logical_x) != len(self.logical_z):
            raise ValueError("need one logical_z per logical_x")
        return self


CodeBlock = Annotated[Union[CodewordsBlock, CwsBlock, ZooBlock, StabilizerBlock], Field(discriminator='type')]


class ErrorsBlock(StrictModel):
    kind: Literal['pauli', 'named', 'matrix']
    items: list[Any] = Field(min_length=1)
    names: Optional[list[str]] = None

    @model_validator(mode='after')
    def check_items(self):
        if self.kind in ('pauli', 'named') and not all(isinstance(i, str) for i in self.items):
            raise ValueError(f"{self.kind} errors must be strings")
        if self.kind == 'pauli':
            _check_paulis(self.items)
        if self.names is not None and len(self.names) != len(self.items):
            raise ValueError("names must match items")
        return self


class FamilyBlock(StrictModel):
    names: list[str] = Field(min_length=1)
    members: list[list[list[Amplitude]]] = Field(min_length=1)

    @model_validator(mode='after')
    def check_lengths(self):
        if len(self.names) != len(self.members):
            raise ValueError("names must match members")
        return self


class ChannelEntry(StrictModel):
    error: str
    weight: float = Field(ge=0)


class AllocationEntry(StrictModel):
    syndrome: list[int]
    signatures: list[list[int]]


class OptionsBlock(StrictModel):
    tolerance: Optional[float] = Field(default=None, gt=0)
    mode: Optional[Literal['minimal', 'extended_full']] = None
    distance: Optional[int] = Field(default=None, ge=1)
    site: Optional[int] = Field(default=None, ge=1)
    target: Literal['correct', 'detect'] = 'correct'
    preferred: dict[str, list[int]] = Field(default_factory=dict)
    allocation: list[AllocationEntry] = Field(default_factory=list)
    channel: list[ChannelEntry] = Field(default_factory=list)


class CodeFile(StrictModel):
    format_version: int
    name: str
    ambient: AmbientBlock
    code: CodeBlock
    errors: Optional[ErrorsBlock] = None
    family: Optional[FamilyBlock] = None
    options: OptionsBlock = Field(default_factory=OptionsBlock)

    @field_validator('format_version')
    @classmethod
    def check_version(cls, v: int) -> int:
        if v != settings.CODE_FILE_VERSION:
            raise ValueError(f"unsupported format_version {v}, expected {settings.CODE_FILE_VERSION}")
        return v


@dataclass(eq=False)
class LoadedCode:
    """A code file turned into domain objects"""

    source: CodeFile
    code: QuantumCode
    cws: Optional[CwsCode] = None
    binary: Optional[BinaryCode] = None
    family: Optional[OrthonormalFamily] = None
    stabilizers: Optional[list[np.ndarray]] = None
    preferred: dict[int, SignatureTuple] = field(default_factory=dict)
    allocation: dict[SignatureTuple, list[SignatureTuple]] = field(default_factory=dict)
    channel: list[tuple[str, np.ndarray, float]] = field(default_factory=list)

    @property
    def options(self) -> OptionsBlock:
        return self.source.options


def _violations(exc: ValidationError) -> list[str]:
    return [f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in exc.errors()]


def parse_code_file(text: str, origin: str = "<string>") -> CodeFile:
    """
    Validate code-file JSON text

    Raises:
        ParseError: malformed JSON, with line and column
        CodeFileValidationError: every schema violation, by field path
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{origin}: line {e.lineno}, column {e.colno}: {e.msg}",
                         {'line': e.lineno, 'column': e.colno})
    try:
        return CodeFile.model_validate(data)
    except ValidationError as e:
        violations = _violations(e)
        raise CodeFileValidationError(f"{origin}: {len(violations)} invalid field(s): " + "; ".join(violations),
                                      violations)


def load_code_file(path: str) -> CodeFile:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise IoError(f"cannot read code file '{path}': {e}")
    cf = parse_code_file(text, path)
    logger.info(f"Loaded code file '{path}' ({cf.code.type} code '{cf.name}')")
    return cf


def _ambient(block: AmbientBlock) -> AmbientSpace:
    if block.kind == 'qubits':
        return AmbientSpace.for_qubits(block.qubits)
    return AmbientSpace.for_fock(block.modes, block.cutoff)


def _basis_index(label: str, ambient: AmbientSpace) -> int:
    if ambient.kind == 'qubits':
        if len(label) != ambient.qubits or set(label) - {'0', '1'}:
            raise InvalidInput(f"basis label '{label}' is not a {ambient.qubits}-bit string")
        return int(label, 2)
    parts = [int(p) for p in label.split(',')]
    if len(parts) != ambient.modes or any(not 0 <= p <= ambient.cutoff for p in parts):
        raise InvalidInput(f"basis label '{label}' is not {ambient.modes} occupations within the cutoff")
    index = 0
    for p in parts:
        index = index * (ambient.cutoff + 1) + p
    return index


def decode_codeword(word: Codeword, ambient: AmbientSpace) -> np.ndarray:
    """Amplitude vector of a codeword, normalized; renormalizations above the threshold are logged"""
    if isinstance(word, dict):
        v = np.zeros(ambient.dim, dtype=complex)
        for label, amp in word.items():
            v[_basis_index(label, ambient)] += decode_complex(amp)
    else:
        if len(word) != ambient.dim:
            raise DimensionMismatch(f"codeword has {len(word)} amplitudes, ambient dimension is {ambient.dim}")
        v = np.array([decode_complex(a) for a in word], dtype=complex)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise InvalidInput("codeword has zero norm")
    if abs(norm - 1) > settings.RENORMALIZE_WARNING:
        logger.warning(f"Codeword renormalized by a factor {1 / norm:.6g}")
    return v / norm


def resolve_operator(text: str, ambient: AmbientSpace) -> np.ndarray:
    """A Pauli string on qubit ambients, a bosonic operator name on Fock ambients"""
    if ambient.kind == 'qubits':
        p = parse_pauli(text)
        if p.n != ambient.qubits:
            raise LengthMismatch(f"'{text}' acts on {p.n} qubits, the ambient has {ambient.qubits}")
        return to_matrix(p)
    return named_operator(text, ambient)


def _errors(block: Optional[ErrorsBlock], ambient: AmbientSpace) -> Optional[tuple[list[np.ndarray], list[str]]]:
    if block is None:
        return None
    if block.kind == 'matrix':
        mats = [decode_matrix(m) for m in block.items]
        names = block.names or [f"E{j}" for j in range(len(mats))]
    elif block.kind == 'pauli':
        if ambient.kind != 'qubits':
            raise InvalidInput("Pauli errors need a qubit ambient")
        mats = [resolve_operator(t, ambient) for t in block.items]
        names = block.names or list(block.items)
    else:
        if ambient.kind != 'fock':
            raise InvalidInput("named bosonic errors need a Fock ambient")
        mats = [named_operator(t, ambient) for t in block.items]
        names = block.names or list(block.items)
    for name, m in zip(names, mats):
        if m.shape != (ambient.dim, ambient.dim):
            raise DimensionMismatch(f"error '{name}' does not act on dimension {ambient.dim}")
    return mats, names


def _check_n(paulis: list[PauliOp], ambient: AmbientSpace):
    if ambient.kind != 'qubits':
        raise InvalidInput("Pauli code blocks need a qubit ambient")
    for p in paulis:
        if p.n != ambient.qubits:
            raise LengthMismatch(f"'{format_pauli(p)}' does not act on {ambient.qubits} qubits")


def materialize(cf: CodeFile) -> LoadedCode:
    """
    Build the domain objects a code file describes

    Declared errors from the errors block replace a constructor's defaults.
    """
    ambient = _ambient(cf.ambient)
    block = cf.code
    errors = _errors(cf.errors, ambient)
    distance = cf.options.distance
    cws = binary = stabilizers = None

    if isinstance(block, CodewordsBlock):
        columns = np.column_stack([decode_codeword(w, ambient) for w in block.codewords])
        gram = columns.conj().T @ columns
        if np.max(np.abs(gram - np.eye(columns.shape[1]))) > settings.RENORMALIZE_WARNING:
            raise NonOrthogonalCodewords("codewords are not orthonormal")
        code = QuantumCode(ambient, Subspace(ambient.dim, columns), (), (), cf.name, distance)
    elif isinstance(block, CwsBlock):
        _check_n([parse_pauli(t) for t in block.word_stabilizer + block.word_operators], ambient)
        cws = cws_from_strings(block.word_stabilizer, block.word_operators, cf.name, distance)
        code = cws.code
    elif isinstance(block, StabilizerBlock):
        gens = [parse_pauli(t) for t in block.stabilizers]
        _check_n(gens, ambient)
        binary = binary_code_from_strings(block.stabilizers, block.logical_x, block.logical_z, cf.name, distance)
        code = stabilizer_code(gens, (), cf.name, distance)
    else:
        code, stabilizers = _zoo(block, ambient, cf.name)

    if errors is not None:
        code = code.with_errors(*errors)
    if cws is not None:
        cws = CwsCode(cws.n, cws.word_stabilizer, cws.word_operators, cws.base_state, code)

    family = None
    if cf.family is not None:
        members = [decode_matrix(m) for m in cf.family.members]
        family = OrthonormalFamily(tuple(members), tuple(cf.family.names), {i: (i,) for i in range(len(members))})

    preferred = {int(k): make_signature(v) for k, v in cf.options.preferred.items()}
    allocation = {make_signature(a.syndrome): [make_signature(s) for s in a.signatures]
                  for a in cf.options.allocation}
    channel = [(c.error, resolve_operator(c.error, ambient), c.weight) for c in cf.options.channel]

    return LoadedCode(cf, code, cws, binary, family, stabilizers, preferred, allocation, channel)


def _zoo(block: ZooBlock, ambient: AmbientSpace, name: str):
    params = block.params
    if block.constructor == 'binomial':
        return binomial_code(ambient), None
    if block.constructor == 'two_mode':
        return two_mode_code(ambient), None
    if ambient.kind != 'qubits':
        raise InvalidInput(f"'{block.constructor}' needs a qubit ambient")
    n = ambient.qubits
    if block.constructor == 'repetition':
        return repetition_code(n), None

    error = params.get('error')
    if error is None:
        raise InvalidInput("generalized_repetition needs params.error (Pauli letter or 2x2 matrix)")
    e = to_matrix(parse_pauli(error)) if isinstance(error, str) else decode_matrix(error)
    return generalized_repetition(e, n)


def binary_code_to_file(code: BinaryCode) -> dict:
    """Code-file dict for a Pauli binary code (concatenation output)"""
    if not code.all_pauli:
        raise InvalidInput("only binary codes with Pauli operators can be written as code files")
    data = {
        'format_version': settings.CODE_FILE_VERSION,
        'name': code.name,
        'ambient': {'kind': 'qubits', 'qubits': code.n},
        'code': {
            'type': 'stabilizer',
            'stabilizers': [format_pauli(s) for s in code.stabilizers],
            'logical_x': [format_pauli(x) for x in code.logical_x],
            'logical_z': [format_pauli(z) for z in code.logical_z],
        },
    }
    if code.distance_bound is not None:
        data['options'] = {'distance': code.distance_bound}
    return data
