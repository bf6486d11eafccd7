"""
Jerarquía de errores del toolkit
"""

from typing import Iterable, Optional


class AppellError(Exception):
    """Error base de todas las operaciones del toolkit"""


class DomainError(AppellError):
    """Argumento fuera del dominio de convergencia o de validez"""


class PoleError(AppellError):
    """Parámetro inferior sobre un entero no positivo"""


class ParamError(AppellError):
    """Parámetro excluido explícitamente por la fórmula"""


class DomainEmpty(AppellError):
    """Ningún punto de la malla sobrevive a las restricciones"""


class ParseError(AppellError):
    """
    Error de sintaxis en una expresión del corpus.
    offset es el desplazamiento en bytes UTF-8 dentro del texto.
    """

    def __init__(self, message: str, offset: int, expected: Optional[Iterable[str]] = None):
        self.offset = offset
        self.expected = tuple(sorted(set(expected or ())))
        detalle = f" (se esperaba: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} en byte {offset}{detalle}")


class EvalError(AppellError):
    """Evaluación fuera del dominio real de un nodo de la expresión"""

    def __init__(self, message: str, node: str):
        self.node = node
        super().__init__(f"{message}: {node}")


class CorpusFormatError(AppellError):
    """Registro del corpus con estructura inválida"""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"línea {line}: {message}")
