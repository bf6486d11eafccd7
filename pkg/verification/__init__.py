"""
Verificación de formas cerradas contra el oráculo de series
"""

from .verifier import (
    GridSpec,
    Check,
    EntryStatus,
    EntryReport,
    VerificationReport,
    CorpusVerifier,
    sample_grid,
    verify_entry,
    verify_corpus
)
from .builtin_suite import verify_builtins, family_corpus

__all__ = [
    'GridSpec',
    'Check',
    'EntryStatus',
    'EntryReport',
    'VerificationReport',
    'CorpusVerifier',
    'sample_grid',
    'verify_entry',
    'verify_corpus',
    'verify_builtins',
    'family_corpus'
]

__version__ = '1.0.0'
