"""
Lenguaje de fórmulas del corpus de valores especiales
Árbol de expresiones, analizador y carga del corpus
"""

from .expr import Expr, eval_expr, render_expr, count_constants, mutate_constant
from .parser import parse_expr
from .corpus import Corpus, CorpusEntry, Domain, load_corpus, parse_corpus_text

__all__ = [
    'Expr',
    'eval_expr',
    'render_expr',
    'count_constants',
    'mutate_constant',
    'parse_expr',
    'Corpus',
    'CorpusEntry',
    'Domain',
    'load_corpus',
    'parse_corpus_text'
]

__version__ = '1.0.0'
