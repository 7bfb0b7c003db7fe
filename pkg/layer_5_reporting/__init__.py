"""
Layer 5: Reporting (code files, command orchestration, report output).
"""
from .code_file import load_code_file, materialize, parse_code_file
from .report import render_human, render_machine, write_report
from .run import CommandRunner

__all__ = [
    'load_code_file',
    'materialize',
    'parse_code_file',
    'render_human',
    'render_machine',
    'write_report',
    'CommandRunner',
]
