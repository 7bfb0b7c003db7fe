"""
Report assembly and output

A report is a plain dict of sections. Machine output is sorted, indented
JSON with repr-precision floats; human output renders each section as an
aligned pandas table. Sections that are absent or empty are omitted from
the human rendering.
"""
import json
import os
from typing import Any, Optional

import numpy as np
import pandas as pd

from models.complex_json import encode_matrix
from models.synthesis import SynthesisResult
from utils.errors import InvalidInput, IoError
from utils.logger import get_logger

logger = get_logger(__name__)

SECTION_ORDER = [
    'code', 'kl', 'classification', 'capacity', 'family', 'syndrome_table', 'signatures',
    'certification', 'relations', 'detectable', 'measurement', 'simulation', 'concat', 'error',
]


def kl_section(alpha: np.ndarray, correctable: bool, names: list[str]) -> dict:
    return {
        'alpha': encode_matrix(alpha),
        'correctable': bool(correctable),
        'errors': list(names),
    }


def synthesis_sections(result: SynthesisResult) -> dict:
    """Split a synthesis result into the report's sections"""
    data = result.to_dict()
    group = data['group']
    certification = []
    forms = group['pauli_forms'] or [None] * group['m']
    for i, (cert, form) in enumerate(zip(group['certification'], forms)):
        certification.append({'generator': f"Z{i + 1}", **cert, 'pauli_form': form})
    sections = {
        'capacity': data['capacity'],
        'family': {
            'members': data['family'],
            'provenance': data['provenance'],
            'degenerate': data['degenerate'],
        },
        'syndrome_table': data['syndrome_table'],
        'certification': {
            'certified': data['certified'],
            'domain_dim': group['domain_dim'],
            'generators': certification,
        },
        'relations': group['relations'],
    }
    if 'signatures' in data:
        sections['signatures'] = data['signatures']
    if 'detectable' in data:
        sections['detectable'] = data['detectable']
    return sections


def render_machine(report: dict) -> str:
    try:
        return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"
    except ValueError as e:
        raise InvalidInput(f"report contains a non-finite number: {e}")


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _table(value: Any) -> Optional[str]:
    if value is None or value == {} or value == []:
        return None
    if isinstance(value, list) and all(isinstance(v, dict) for v in value):
        frame = pd.DataFrame([{k: _cell(v) for k, v in row.items()} for row in value])
        return frame.to_string(index=False)
    if isinstance(value, dict):
        nested = [(k, v) for k, v in value.items() if isinstance(v, list) and v and all(isinstance(r, dict) for r in v)]
        flat = [(k, _cell(v)) for k, v in value.items() if (k, v) not in nested]
        parts = []
        if flat:
            parts.append(pd.DataFrame(flat, columns=['field', 'value']).to_string(index=False))
        for k, rows in nested:
            parts.append(f"{k}:\n" + _table(rows))
        return "\n\n".join(parts)
    return _cell(value)


def render_human(report: dict) -> str:
    blocks = []
    keys = [k for k in SECTION_ORDER if k in report] + sorted(k for k in report if k not in SECTION_ORDER)
    for key in keys:
        text = _table(report[key])
        if text is None:
            continue
        title = key.replace('_', ' ').upper()
        blocks.append(f"{title}\n{'-' * len(title)}\n{text}")
    return "\n\n".join(blocks) + "\n"


def write_report(report: dict, fmt: str = 'human', path: Optional[str] = None) -> str:
    """
    Render a report and optionally write it to ``path``

    Raises:
        InvalidInput: unknown format
        IoError: the file cannot be written
    """
    if fmt == 'machine':
        text = render_machine(report)
    elif fmt == 'human':
        text = render_human(report)
    else:
        raise InvalidInput(f"unknown report format '{fmt}'")

    if path:
        try:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(path, 'w', encoding='utf-8') as f:
                f.write(text)
        except OSError as e:
            raise IoError(f"cannot write report '{path}': {e}")
        logger.info(f"Report written to {path}")
    return text
