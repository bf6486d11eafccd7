"""
Árbol de expresiones de las fórmulas del corpus y su evaluador real
"""

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple, Union

from models.errors import EvalError

FUNCTIONS: Tuple[str, ...] = ('sqrt', 'ln', 'arcsin', 'arctan', 'arctanh')
VARIABLES: Tuple[str, ...] = ('x', 'y')


@dataclass(frozen=True)
class Constant:
    """Literal no negativo; el signo va siempre en un nodo Neg"""
    value: float

    def __post_init__(self):
        if math.copysign(1.0, self.value) < 0:
            raise ValueError(f"constante negativa {self.value!r}: use Neg(Constant(...))")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: 'Expr'


@dataclass(frozen=True)
class Add:
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class Sub:
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class Mul:
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class Div:
    left: 'Expr'
    right: 'Expr'


@dataclass(frozen=True)
class Pow:
    base: 'Expr'
    exponent: 'Expr'

    @property
    def requires_positive_base(self) -> bool:
        """True si el exponente es constante y no entero"""
        valor = constant_value(self.exponent)
        return valor is not None and not float(valor).is_integer()


@dataclass(frozen=True)
class Func:
    name: str
    arg: 'Expr'


Expr = Union[Constant, Var, Neg, Add, Sub, Mul, Div, Pow, Func]

_BINARIOS = (Add, Sub, Mul, Div)
_SIMBOLOS = {Add: '+', Sub: '-', Mul: '*', Div: '/'}


def has_variables(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Constant):
        return False
    if isinstance(e, (Neg,)):
        return has_variables(e.operand)
    if isinstance(e, Func):
        return has_variables(e.arg)
    if isinstance(e, Pow):
        return has_variables(e.base) or has_variables(e.exponent)
    return has_variables(e.left) or has_variables(e.right)


def constant_value(e: Expr) -> Optional[float]:
    """Valor de un subárbol sin variables, o None si depende de x, y o no es evaluable"""
    if has_variables(e):
        return None
    try:
        return eval_expr(e, 0.0, 0.0)
    except EvalError:
        return None


def _comprobar(valor: float, nodo: Expr) -> float:
    if not math.isfinite(valor):
        raise EvalError("desbordamiento", render_expr(nodo))
    return valor


def _potencia(base: float, exponente: float, nodo: Pow) -> float:
    entero = float(exponente).is_integer()
    if base <= 0 and not entero:
        raise EvalError(f"base no positiva ({base}) con exponente no entero ({exponente})",
                        render_expr(nodo))
    if base == 0 and exponente < 0:
        raise EvalError("división entre cero en potencia negativa", render_expr(nodo))
    try:
        return _comprobar(math.pow(base, exponente), nodo)
    except OverflowError:
        raise EvalError("desbordamiento", render_expr(nodo))


def _funcion(nombre: str, t: float, nodo: Func) -> float:
    if nombre == 'sqrt':
        if t <= 0:
            raise EvalError(f"sqrt de argumento no positivo ({t})", render_expr(nodo))
        return math.sqrt(t)
    if nombre == 'ln':
        if t <= 0:
            raise EvalError(f"ln de argumento no positivo ({t})", render_expr(nodo))
        return math.log(t)
    if nombre == 'arcsin':
        if not -1.0 <= t <= 1.0:
            raise EvalError(f"arcsin fuera de [-1, 1] ({t})", render_expr(nodo))
        return math.asin(t)
    if nombre == 'arctan':
        return math.atan(t)
    if nombre == 'arctanh':
        if not -1.0 < t < 1.0:
            raise EvalError(f"arctanh fuera de (-1, 1) ({t})", render_expr(nodo))
        return 0.5 * math.log((1.0 + t) / (1.0 - t))
    raise EvalError(f"función desconocida {nombre}", render_expr(nodo))


def eval_expr(e: Expr, x: float, y: float) -> float:
    """
    Evaluación recursiva sin plegado de constantes ni simplificación.
    Lanza EvalError con el nodo culpable al salir del dominio real.
    """
    if isinstance(e, Constant):
        return e.value
    if isinstance(e, Var):
        return x if e.name == 'x' else y
    if isinstance(e, Neg):
        return -eval_expr(e.operand, x, y)
    if isinstance(e, Add):
        return _comprobar(eval_expr(e.left, x, y) + eval_expr(e.right, x, y), e)
    if isinstance(e, Sub):
        return _comprobar(eval_expr(e.left, x, y) - eval_expr(e.right, x, y), e)
    if isinstance(e, Mul):
        return _comprobar(eval_expr(e.left, x, y) * eval_expr(e.right, x, y), e)
    if isinstance(e, Div):
        numerador = eval_expr(e.left, x, y)
        denominador = eval_expr(e.right, x, y)
        if denominador == 0:
            raise EvalError("división entre cero", render_expr(e))
        return _comprobar(numerador / denominador, e)
    if isinstance(e, Pow):
        return _potencia(eval_expr(e.base, x, y), eval_expr(e.exponent, x, y), e)
    if isinstance(e, Func):
        return _comprobar(_funcion(e.name, eval_expr(e.arg, x, y), e), e)
    raise TypeError(f"nodo desconocido: {e!r}")


def render_expr(e: Expr) -> str:
    """Forma canónica totalmente parentizada; vuelve a analizarse al mismo árbol"""
    if isinstance(e, Constant):
        return repr(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{render_expr(e.operand)})"
    if isinstance(e, _BINARIOS):
        return f"({render_expr(e.left)} {_SIMBOLOS[type(e)]} {render_expr(e.right)})"
    if isinstance(e, Pow):
        return f"({render_expr(e.base)}^({render_expr(e.exponent)}))"
    if isinstance(e, Func):
        return f"{e.name}({render_expr(e.arg)})"
    raise TypeError(f"nodo desconocido: {e!r}")


def count_constants(e: Expr) -> int:
    if isinstance(e, Constant):
        return 1
    if isinstance(e, Var):
        return 0
    if isinstance(e, Neg):
        return count_constants(e.operand)
    if isinstance(e, Func):
        return count_constants(e.arg)
    if isinstance(e, Pow):
        return count_constants(e.base) + count_constants(e.exponent)
    return count_constants(e.left) + count_constants(e.right)


def mutate_constant(e: Expr, index: int, factor: float) -> Expr:
    """
    Multiplica por factor la constante número index (recorrido en preorden).
    Un resultado negativo queda como Neg(Constant(|v|)).
    """
    total = count_constants(e)
    if not 0 <= index < total:
        raise IndexError(f"índice de constante {index} fuera de rango (hay {total})")

    def _mutar(nodo: Expr, restante: int) -> Tuple[Expr, int]:
        if isinstance(nodo, Constant):
            if restante == 0:
                valor = nodo.value * factor
                if math.copysign(1.0, valor) < 0:
                    return Neg(Constant(-valor)), -1
                return Constant(valor), -1
            return nodo, restante - 1
        if isinstance(nodo, Var) or restante < 0:
            return nodo, restante
        if isinstance(nodo, Neg):
            hijo, restante = _mutar(nodo.operand, restante)
            return Neg(hijo), restante
        if isinstance(nodo, Func):
            hijo, restante = _mutar(nodo.arg, restante)
            return replace(nodo, arg=hijo), restante
        if isinstance(nodo, Pow):
            base, restante = _mutar(nodo.base, restante)
            exponente, restante = _mutar(nodo.exponent, restante)
            return Pow(base, exponente), restante
        izquierda, restante = _mutar(nodo.left, restante)
        derecha, restante = _mutar(nodo.right, restante)
        return type(nodo)(izquierda, derecha), restante

    return _mutar(e, index)[0]
