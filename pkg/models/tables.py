"""
Formas cerradas corregidas de 2F1 y 3F2 (tabla I de seis filas y tabla II)

Cada forma se evalúa tal como está impresa; las filas con erratas conocidas
quedan marcadas en el catálogo para que el verificador las clasifique.
Con corrected=True esas filas usan su forma corregida (r3 con c = 17/6,
r4 con el polinomio 15 + 5z + 3z^2).
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from config import Config
from models.errors import DomainError, ParamError
from models.special import (
    HypParams2F1,
    HypParams3F2,
    clausen3f2_series,
    gauss2f1_series,
    is_nonpositive_integer,
    pochhammer,
)
from utils.helpers import get_logger

logger = get_logger(__name__)

TABLE2_PARAMS = HypParams3F2(0.25, 1.0, 1.0, 1.25, 2.0)

_SQRT5 = math.sqrt(5.0)
_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class Table1Row:
    """Una fila del catálogo de la tabla I"""
    row_id: str
    label: str
    z_min: float
    z_max: float
    zero_inclusive: bool
    registered_misprint: bool = False
    note: str = ""
    corrected_label: str = ""

    def display_label(self, corrected: bool = False) -> str:
        return self.corrected_label if corrected and self.corrected_label else self.label


_TABLE1: Dict[str, Table1Row] = {
    'r1': Table1Row('r1', '2F1(5/2, 4; 1; z)', -1.0, 1.0, False),
    'r2': Table1Row('r2', '2F1(4/5, 1; 14/5; z)', 0.0, 1.0, True),
    'r3': Table1Row('r3', '2F1(5/6, 1; 17/5; z)', 0.0, 1.0, True, True,
                    'registered: suspected misprint; la estructura corresponde a c = 17/6',
                    '2F1(5/6, 1; 17/6; z)'),
    'r4': Table1Row('r4', '2F1(1, 7/2; 9/2; z)', 0.0, 1.0, True, True,
                    'registered: suspected misprint; la serie exige 15 + 5z + 3z^2',
                    '2F1(1, 7/2; 9/2; z) [15 + 5z + 3z^2]'),
    'r5': Table1Row('r5', '2F1(1, b; b - m; z)', -1.0, 1.0, False),
    'r6': Table1Row('r6', '2F1(-n/2, (1-n)/2; 1-n; z)', -1.0, 1.0, False),
}


def table1_rows() -> List[Table1Row]:
    """Catálogo de las seis filas en orden"""
    return list(_TABLE1.values())


def _fila(row_id: str) -> Table1Row:
    if row_id not in _TABLE1:
        raise ParamError(f"fila desconocida de la tabla I: {row_id}")
    return _TABLE1[row_id]


def _validar_r5(b: Optional[float], m: Optional[int]):
    if b is None or m is None:
        raise ParamError("la fila r5 requiere b y m")
    if int(m) != m or m < 1:
        raise ParamError(f"r5 requiere m entero >= 1 (m={m})")
    m = int(m)
    if abs(b - 1.0) <= Config.SERIES['pole_tol']:
        raise ParamError("r5 excluye b = 1")
    if is_nonpositive_integer(b - m):
        raise ParamError(f"r5 requiere b - m fuera de los enteros no positivos (b={b}, m={m})")
    if pochhammer(1.0 - b, m) == 0.0 or any(pochhammer(2.0 - b, k) == 0.0 for k in range(m)):
        raise ParamError(f"r5 con b={b}, m={m} anula un denominador de la forma cerrada")


def _validar_r6(n: Optional[float]):
    if n is None:
        raise ParamError("la fila r6 requiere n")
    tol = Config.SERIES['pole_tol']
    if abs(n - 1.0) <= tol or abs(n - 2.0) <= tol:
        raise ParamError(f"r6 excluye n = 1, 2 (n={n})")


def table1_parameters(row_id: str, b: Optional[float] = None, m: Optional[int] = None,
                      n: Optional[float] = None, corrected: bool = False) -> HypParams2F1:
    """Parámetros (a, b; c) de la fila, resolviendo las filas parametrizadas"""
    _fila(row_id)
    if row_id == 'r1':
        return HypParams2F1(2.5, 4.0, 1.0)
    if row_id == 'r2':
        return HypParams2F1(0.8, 1.0, 14.0 / 5.0)
    if row_id == 'r3':
        return HypParams2F1(5.0 / 6.0, 1.0, 17.0 / 6.0 if corrected else 17.0 / 5.0)
    if row_id == 'r4':
        return HypParams2F1(1.0, 3.5, 4.5)
    if row_id == 'r5':
        _validar_r5(b, m)
        return HypParams2F1(1.0, b, b - int(m))
    _validar_r6(n)
    return HypParams2F1(-0.5 * n, 0.5 * (1.0 - n), 1.0 - n)


def _r1(z: float) -> float:
    return (16.0 + 72.0 * z + 18.0 * z ** 2 - z ** 3) / 16.0 * (1.0 - z) ** (-5.5)


def _r2(z: float) -> float:
    x = z ** 0.2
    x5 = x ** 5
    raiz_mas = math.sqrt(10.0 + 2.0 * _SQRT5)
    raiz_menos = math.sqrt(10.0 - 2.0 * _SQRT5)
    corchete = (
        math.log(1.0 - x5)
        - 5.0 * math.log(1.0 - x)
        - _SQRT5 * math.log((1.0 - 0.5 * (_SQRT5 - 1.0) * x + x * x)
                            / (1.0 + 0.5 * (_SQRT5 + 1.0) * x + x * x))
        - 2.0 * raiz_mas * math.atan(raiz_mas * x / (4.0 - (_SQRT5 - 1.0) * x))
        - 2.0 * raiz_menos * math.atan(raiz_menos * x / (4.0 + (_SQRT5 + 1.0) * x))
    )
    return 9.0 / (5.0 * x5) - 9.0 / (25.0 * x ** 9) * (1.0 - x5) * corchete


def _r3(z: float) -> float:
    x = z ** (1.0 / 6.0)
    corchete = (
        math.log((1.0 - x) / (1.0 + x))
        + 0.5 * math.log((1.0 - x + x * x) / (1.0 + x + x * x))
        + _SQRT3 * math.atan(_SQRT3 * x / (1.0 - x * x))
    )
    return 11.0 / (6.0 * x ** 6) + 55.0 / (36.0 * x ** 11) * (1.0 - x ** 6) * corchete


def _r4(z: float, lineal: float = 15.0) -> float:
    # impresa con 15z; la serie exige 5z
    t = math.sqrt(z)
    return -(7.0 / (15.0 * z ** 3)) * (15.0 + lineal * z + 3.0 * z * z - 15.0 * math.atanh(t) / t)


def _r5(z: float, b: float, m: int) -> float:
    suma = math.fsum(
        pochhammer(-m, k) / pochhammer(2.0 - b, k) * (1.0 - z) ** (-k - 1)
        for k in range(m)
    )
    return ((b - m - 1.0) / (b - 1.0)) * suma \
        - (math.factorial(m) / pochhammer(1.0 - b, m)) * (z - 1.0) ** (-m - 1)


def _r6(z: float, n: float) -> float:
    return 2.0 ** (-n) * (1.0 + math.sqrt(1.0 - z)) ** n


def table1_closed_forms(row_id: str, z: float, b: Optional[float] = None,
                        m: Optional[int] = None, n: Optional[float] = None,
                        corrected: bool = False) -> float:
    """
    Evalúa la forma cerrada impresa de la fila indicada, o la corregida
    con corrected=True.

    Las filas r2 a r4 tienen estructura 0/0 en z = 0 y delegan a la serie
    por debajo del umbral SERIES['small_z'].
    """
    fila = _fila(row_id)
    params = table1_parameters(row_id, b=b, m=m, n=n, corrected=corrected)

    fuera = z >= fila.z_max or (z < fila.z_min if fila.zero_inclusive else z <= fila.z_min)
    if not math.isfinite(z) or fuera:
        raise DomainError(f"z={z} fuera del dominio de la fila {row_id} ({fila.z_min}, {fila.z_max})")

    if row_id == 'r1':
        return _r1(z)
    if row_id == 'r5':
        return _r5(z, b, int(m))
    if row_id == 'r6':
        return _r6(z, n)

    if z < Config.SERIES['small_z']:
        return gauss2f1_series(params, z).value
    if row_id == 'r4' and corrected:
        return _r4(z, lineal=5.0)
    return {'r2': _r2, 'r3': _r3, 'r4': _r4}[row_id](z)


def table2_closed_form(z: float) -> float:
    """
    3F2(1/4, 1, 1; 5/4, 2; z) =
        (1/3z)[ln(1-z) + z^(3/4)(ln((1+z^(1/4))/(1-z^(1/4))) + 2 arctan z^(1/4))]
    """
    if not (0.0 < z < 1.0):
        raise DomainError(f"la forma de la tabla II requiere 0 < z < 1 (z={z})")
    if z < Config.SERIES['small_z']:
        return clausen3f2_series(TABLE2_PARAMS, z).value

    w = z ** 0.25
    return (math.log(1.0 - z)
            + z ** 0.75 * (math.log((1.0 + w) / (1.0 - w)) + 2.0 * math.atan(w))) / (3.0 * z)


def gauss2f1_path_limit(path: Callable[[float], HypParams2F1], nu0: float, z: float,
                        tol: Optional[float] = None, delta: float = 1e-4) -> float:
    """
    Límite de 2F1(path(ν); z) cuando ν → nu0, para parámetros que caen en un
    polo removible en nu0.

    Promedia ν = nu0 ± d (elimina términos impares) y extrapola con d y 2d:
    L = (4 f(d) - f(2d)) / 3.
    """
    def simetrico(d: float) -> float:
        return 0.5 * (gauss2f1_series(path(nu0 + d), z, tol).value
                      + gauss2f1_series(path(nu0 - d), z, tol).value)

    return (4.0 * simetrico(delta) - simetrico(2.0 * delta)) / 3.0


def table1_oracle(row_id: str, z: float, tol: Optional[float] = None,
                  b: Optional[float] = None, m: Optional[int] = None,
                  n: Optional[float] = None, corrected: bool = False) -> float:
    """Valor de referencia de la fila por serie (o límite de la serie en r6)"""
    params = table1_parameters(row_id, b=b, m=m, n=n, corrected=corrected)
    if row_id == 'r6' and is_nonpositive_integer(params.c):
        def trayectoria(nu: float) -> HypParams2F1:
            return HypParams2F1(-0.5 * nu, 0.5 * (1.0 - nu), 1.0 - nu)
        return gauss2f1_path_limit(trayectoria, float(n), z, tol)
    return gauss2f1_series(params, z, tol).value
