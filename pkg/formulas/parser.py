"""
Analizador descendente recursivo del lenguaje de fórmulas

Gramática:

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := '-' factor | power
    power    := atom ['^' exponent]
    exponent := atom ['^' exponent]          (sin menos unario)
    atom     := number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
    func     := sqrt | ln | arcsin | arctan | arctanh

El menos unario liga más fuerte que '*' y '/' (-x*y es (-x)*y, -1/2 es (-1)/2)
y más débil que '^' (-x^2 es -(x^2)). Como la negación conmuta con el
producto y el cociente, el valor es el de la lectura matemática habitual.
"""

import math
import re
from dataclasses import dataclass
from typing import List

from formulas.expr import (
    FUNCTIONS,
    VARIABLES,
    Add,
    Constant,
    Div,
    Expr,
    Func,
    Mul,
    Neg,
    Pow,
    Sub,
    Var,
)
from models.errors import ParseError

_NUMERO = re.compile(r'\d+(\.\d*)?([eE][+-]?\d+)?')
_IDENT = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')
_OPERADORES = set('+-*/^()')

_INICIO_ATOMO = ('número', 'x', 'y', 'función', '(')


@dataclass(frozen=True)
class Token:
    kind: str       # NUMBER, IDENT, OP, EOF
    text: str
    offset: int     # bytes UTF-8 desde el inicio


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    byte = 0
    while i < len(text):
        caracter = text[i]
        if caracter.isspace():
            byte += len(caracter.encode('utf-8'))
            i += 1
            continue

        numero = _NUMERO.match(text, i)
        if numero:
            tokens.append(Token('NUMBER', numero.group(), byte))
        else:
            ident = _IDENT.match(text, i)
            if ident:
                tokens.append(Token('IDENT', ident.group(), byte))
            elif caracter in _OPERADORES:
                tokens.append(Token('OP', caracter, byte))
            else:
                raise ParseError(f"carácter inesperado {caracter!r}", byte,
                                 _INICIO_ATOMO + ('+', '-', '*', '/', '^', ')'))

        lexema = tokens[-1].text
        byte += len(lexema.encode('utf-8'))
        i += len(lexema)

    tokens.append(Token('EOF', '', byte))
    return tokens


class ExprParser:
    """
    Convierte el texto de una fórmula en un árbol Expr
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _avanzar(self) -> Token:
        token = self.current
        if token.kind != 'EOF':
            self.pos += 1
        return token

    def _es_op(self, *simbolos: str) -> bool:
        return self.current.kind == 'OP' and self.current.text in simbolos

    def _consumir(self, simbolo: str):
        if not self._es_op(simbolo):
            raise ParseError(f"se encontró {self._describir()}", self.current.offset, (simbolo,))
        self._avanzar()

    def _describir(self) -> str:
        if self.current.kind == 'EOF':
            return "fin de entrada"
        return repr(self.current.text)

    def parse(self) -> Expr:
        arbol = self._expr()
        if self.current.kind != 'EOF':
            raise ParseError(f"símbolo sobrante {self._describir()}", self.current.offset,
                             ('+', '-', '*', '/', '^', 'fin de entrada'))
        return arbol

    def _expr(self) -> Expr:
        resultado = self._term()
        while self._es_op('+', '-'):
            operador = self._avanzar().text
            derecha = self._term()
            resultado = Add(resultado, derecha) if operador == '+' else Sub(resultado, derecha)
        return resultado

    def _term(self) -> Expr:
        resultado = self._factor()
        while self._es_op('*', '/'):
            operador = self._avanzar().text
            derecha = self._factor()
            resultado = Mul(resultado, derecha) if operador == '*' else Div(resultado, derecha)
        return resultado

    def _factor(self) -> Expr:
        if self._es_op('-'):
            self._avanzar()
            return Neg(self._factor())
        return self._power()

    def _power(self) -> Expr:
        base = self._atom()
        if self._es_op('^'):
            self._avanzar()
            return Pow(base, self._exponent())
        return base

    def _exponent(self) -> Expr:
        # el menos unario en un exponente exige paréntesis
        base = self._atom()
        if self._es_op('^'):
            self._avanzar()
            return Pow(base, self._exponent())
        return base

    def _atom(self) -> Expr:
        token = self.current

        if token.kind == 'NUMBER':
            valor = float(token.text)
            if not math.isfinite(valor):
                raise ParseError(f"literal fuera de rango {token.text!r}", token.offset)
            self._avanzar()
            return Constant(valor)

        if token.kind == 'IDENT':
            if token.text in VARIABLES:
                self._avanzar()
                return Var(token.text)
            if token.text in FUNCTIONS:
                self._avanzar()
                self._consumir('(')
                argumento = self._expr()
                self._consumir(')')
                return Func(token.text, argumento)
            raise ParseError(f"identificador desconocido {token.text!r}", token.offset,
                             FUNCTIONS + VARIABLES)

        if self._es_op('('):
            self._avanzar()
            interior = self._expr()
            self._consumir(')')
            return interior

        raise ParseError(f"se encontró {self._describir()}", token.offset, _INICIO_ATOMO)


def parse_expr(text: str) -> Expr:
    """Analiza una fórmula; lanza ParseError con desplazamiento en bytes"""
    if isinstance(text, bytes):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError as e:
            raise ParseError("texto no es UTF-8 válido", e.start)
    parser = ExprParser(text)
    try:
        return parser.parse()
    except RecursionError:
        raise ParseError("anidamiento demasiado profundo", parser.current.offset)
