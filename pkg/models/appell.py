"""
Función de Appell F2: serie doble, representaciones integrales, formas
cerradas del teorema de desplazamiento, transformaciones y familias
paramétricas con forma cerrada
"""

import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import Config
from models.errors import DomainError, ParamError, PoleError
from models.quadrature import beta_kernel_integral
from models.special import (
    HypParams2F1,
    HypParams3F2,
    clausen3f2_series,
    gauss2f1_series,
    is_nonpositive_integer,
)
from utils.helpers import get_logger

logger = get_logger(__name__)

_IGUALDAD_TOL = 1e-12


@dataclass(frozen=True)
class F2Params:
    """Los cinco parámetros reales (σ; α1, α2; β1, β2) de F2"""
    sigma: float
    alpha1: float
    alpha2: float
    beta1: float
    beta2: float

    @property
    def is_valid(self) -> bool:
        return not (is_nonpositive_integer(self.beta1) or is_nonpositive_integer(self.beta2))

    def validate(self):
        for nombre, valor in (('beta1', self.beta1), ('beta2', self.beta2)):
            if is_nonpositive_integer(valor):
                raise PoleError(f"{nombre}={valor} es un entero no positivo")

    def as_tuple(self) -> Tuple[float, float, float, float, float]:
        return (self.sigma, self.alpha1, self.alpha2, self.beta1, self.beta2)


@dataclass(frozen=True)
class EvalPoint:
    """Punto real (x, y)"""
    x: float
    y: float

    @property
    def norm(self) -> float:
        return abs(self.x) + abs(self.y)

    @property
    def in_convergence_domain(self) -> bool:
        return self.norm < 1.0


class F2Method(Enum):
    SERIES = 'series'
    SINGLE_INTEGRAL = 'single-integral'
    DOUBLE_INTEGRAL = 'double-integral'
    CLOSED_FORM = 'closed'


@dataclass
class F2Result:
    """Valor de F2 con el método que lo produjo"""
    value: float
    method: F2Method
    est_error: float
    diagnostics: Dict[str, Any] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Serie doble por antidiagonales
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _DoubleSeriesRatios:
    """
    Cocientes de la recurrencia de una serie doble con factor acoplado.
    Cada función devuelve (numerador, denominador) sin mezclar x ni y.
    """
    coupled: Callable[[int], Tuple[float, float]]
    along_x: Callable[[Any], Tuple[Any, Any]]
    along_y: Callable[[Any], Tuple[Any, Any]]


def _sum_antidiagonals(ratios: _DoubleSeriesRatios, x: float, y: float,
                       tol: float) -> Tuple[float, int, float, bool]:
    """
    Suma por diagonales N = m + n. D_N[m] es el término (m, N - m).

    Paso a la diagonal N+1:
      D_{N+1}[m]   = D_N[m] · c(N) · ry(n) · y / (n + 1)     (n = N - m)
      D_{N+1}[N+1] = D_N[N] · c(N) · rx(N) · x / (N + 1)

    El borde se calcula con el mismo orden de operaciones que la serie de
    una variable, así con y = 0 el resultado coincide bit a bit con 2F1.
    El error devuelto usa la escala max(1, |S|) del criterio de parada.
    """
    max_diagonales = Config.SERIES['max_diagonals']
    racha_objetivo = Config.SERIES['consecutive_small']

    diagonal = np.array([1.0])
    total = 1.0
    racha = 0
    recientes = deque([0.0], maxlen=racha_objetivo)

    for N in range(max_diagonales - 1):
        c_num, c_den = ratios.coupled(N)

        m = np.arange(N + 1)
        n = N - m
        y_num, y_den = ratios.along_y(n)
        interior = diagonal * (c_num * y_num) * y / (c_den * y_den * (n + 1))

        x_num, x_den = ratios.along_x(N)
        borde = diagonal[N] * (c_num * x_num) * x / (c_den * x_den * (N + 1))

        diagonal = np.append(interior, borde)
        suma = float(np.sum(diagonal))
        suma_abs = float(np.sum(np.abs(diagonal)))
        total += suma
        escalado = suma_abs / max(1.0, abs(total))
        recientes.append(escalado)

        if not math.isfinite(total):
            logger.warning(f"Serie doble no finita en la diagonal {N + 1}")
            return total, N + 2, math.inf, False

        if escalado < tol:
            racha += 1
            if racha >= racha_objetivo:
                return total, N + 2, max(recientes), True
        else:
            racha = 0

    logger.warning(f"Serie doble sin converger en {max_diagonales} diagonales (x={x}, y={y})")
    return total, max_diagonales, max(recientes), False


def _resolver_tol(tol: Optional[float]) -> float:
    tol = Config.SERIES['tol_default'] if tol is None else tol
    if not tol > 0:
        raise ParamError(f"la tolerancia debe ser positiva (tol={tol})")
    return tol


def _exigir_convergencia(pt: EvalPoint):
    if not (math.isfinite(pt.x) and math.isfinite(pt.y)) or not pt.in_convergence_domain:
        raise DomainError(f"F2 requiere |x| + |y| < 1 (x={pt.x}, y={pt.y})")


def f2_series(p: F2Params, pt: EvalPoint, tol: Optional[float] = None) -> F2Result:
    """
    Serie doble de F2 sumada por antidiagonales; es el oráculo de todo lo demás
    """
    tol = _resolver_tol(tol)
    _exigir_convergencia(pt)
    p.validate()

    ratios = _DoubleSeriesRatios(
        coupled=lambda N: (p.sigma + N, 1.0),
        along_x=lambda m: (p.alpha1 + m, 1.0 * (p.beta1 + m)),
        along_y=lambda n: (p.alpha2 + n, 1.0 * (p.beta2 + n)),
    )
    valor, diagonales, error, convergio = _sum_antidiagonals(ratios, pt.x, pt.y, tol)
    logger.debug(f"F2{p.as_tuple()} en ({pt.x}, {pt.y}): {diagonales} diagonales")

    return F2Result(
        value=valor,
        method=F2Method.SERIES,
        est_error=error,
        diagnostics={'diagonals': diagonales, 'converged': convergio}
    )


def f1_series(alpha: float, beta: float, beta_prime: float, gamma: float,
              pt: EvalPoint, tol: Optional[float] = None) -> float:
    """
    Serie doble de Appell F1 para |x| < 1, |y| < 1
    """
    tol = _resolver_tol(tol)
    if not (abs(pt.x) < 1.0 and abs(pt.y) < 1.0):
        raise DomainError(f"F1 requiere |x| < 1 y |y| < 1 (x={pt.x}, y={pt.y})")
    if is_nonpositive_integer(gamma):
        raise PoleError(f"gamma={gamma} es un entero no positivo")

    ratios = _DoubleSeriesRatios(
        coupled=lambda N: (alpha + N, gamma + N),
        along_x=lambda m: (beta + m, 1.0),
        along_y=lambda n: (beta_prime + n, 1.0),
    )
    valor, _, _, convergio = _sum_antidiagonals(ratios, pt.x, pt.y, tol)
    if not convergio:
        logger.warning(f"F1 sin converger en ({pt.x}, {pt.y})")
    return valor


# ---------------------------------------------------------------------------
# Representaciones integrales
# ---------------------------------------------------------------------------

def f2_single_integral(p: F2Params, pt: EvalPoint, tol: Optional[float] = None) -> F2Result:
    """
    F2 como integral simple con núcleo 2F1:

        Γ(β1)/(Γ(α1)Γ(β1-α1)) ∫_0^1 u^(α1-1) (1-u)^(β1-α1-1) (1-xu)^(-σ)
            · 2F1(σ, α2; β2; y/(1-xu)) du

    Requiere β1 > α1 > 0.
    """
    tol = Config.QUADRATURE['tol_default'] if tol is None else tol
    if not tol > 0:
        raise ParamError(f"la tolerancia debe ser positiva (tol={tol})")
    if not (p.beta1 > p.alpha1 > 0):
        raise DomainError(f"la integral simple requiere beta1 > alpha1 > 0 "
                          f"(alpha1={p.alpha1}, beta1={p.beta1})")
    _exigir_convergencia(pt)
    p.validate()

    interior = HypParams2F1(p.sigma, p.alpha2, p.beta2)
    tol_serie = min(Config.VERIFICATION['oracle_tol'], 0.1 * tol)

    def nucleo(u: float) -> float:
        base = 1.0 - pt.x * u
        return base ** (-p.sigma) * gauss2f1_series(interior, pt.y / base, tol_serie).value

    resultado = beta_kernel_integral(p.alpha1, p.beta1 - p.alpha1, nucleo, tol=tol)
    return F2Result(
        value=resultado.value,
        method=F2Method.SINGLE_INTEGRAL,
        est_error=resultado.est_error,
        diagnostics={'panels': resultado.panels, 'converged': resultado.converged}
    )


def f2_double_integral(p: F2Params, pt: EvalPoint) -> F2Result:
    """
    F2 por la representación doble con peso Beta en cada variable,
    integrada de forma iterada a precisión moderada (objetivo 1e-6)
    """
    if not (p.beta1 > p.alpha1 > 0 and p.beta2 > p.alpha2 > 0):
        raise DomainError(f"la integral doble requiere beta_j > alpha_j > 0 "
                          f"(alpha={p.alpha1, p.alpha2}, beta={p.beta1, p.beta2})")
    _exigir_convergencia(pt)

    cfg = Config.QUADRATURE
    paneles_internos = [0]

    def interna(u: float) -> float:
        resultado = beta_kernel_integral(
            p.alpha2, p.beta2 - p.alpha2,
            lambda v: (1.0 - pt.x * u - pt.y * v) ** (-p.sigma),
            tol=cfg['double_inner_tol']
        )
        paneles_internos[0] += resultado.panels
        return resultado.value

    externa = beta_kernel_integral(p.alpha1, p.beta1 - p.alpha1, interna,
                                   tol=cfg['double_outer_tol'])
    return F2Result(
        value=externa.value,
        method=F2Method.DOUBLE_INTEGRAL,
        est_error=externa.est_error + cfg['double_inner_tol'],
        diagnostics={
            'outer_panels': externa.panels,
            'inner_panels': paneles_internos[0],
            'target': cfg['double_target'],
            'converged': externa.converged
        }
    )


# ---------------------------------------------------------------------------
# Teorema de desplazamiento (α2, β2) = (1, 2)
# ---------------------------------------------------------------------------

def _y_pequeno(y: float) -> bool:
    return abs(y) < Config.SERIES['small_y']


def f2_theorem1_shift(a: float, alpha1: float, beta1: float, pt: EvalPoint,
                      tol: Optional[float] = None) -> float:
    """
    F2(a+1; α1, 1; β1, 2; x, y) =
        (1/(a y)) [(1-y)^(-a) 2F1(a, α1; β1; x/(1-y)) - 2F1(a, α1; β1; x)]
    """
    tol = _resolver_tol(tol)
    if a == 0:
        raise ParamError("la forma de desplazamiento excluye a = 0")
    _exigir_convergencia(pt)
    if is_nonpositive_integer(beta1):
        raise PoleError(f"beta1={beta1} es un entero no positivo")

    if _y_pequeno(pt.y):
        logger.debug(f"|y|={abs(pt.y)} bajo el umbral; se usa la serie doble")
        return f2_series(F2Params(a + 1.0, alpha1, 1.0, beta1, 2.0), pt, tol).value

    x, y = pt.x, pt.y
    gauss = HypParams2F1(a, alpha1, beta1)
    desplazada = gauss2f1_series(gauss, x / (1.0 - y), tol).value
    directa = gauss2f1_series(gauss, x, tol).value
    return ((1.0 - y) ** (-a) * desplazada - directa) / (a * y)


def f2_theorem1_log(alpha1: float, beta1: float, pt: EvalPoint,
                    tol: Optional[float] = None) -> float:
    """
    F2(1; α1, 1; β1, 2; x, y) =
        (α1/(β1 y)) [z' 3F2(α1+1, 1, 1; β1+1, 2; z') - x 3F2(α1+1, 1, 1; β1+1, 2; x)]
        - ln(1-y)/y,   con z' = x/(1-y)
    """
    tol = _resolver_tol(tol)
    _exigir_convergencia(pt)
    if is_nonpositive_integer(beta1):
        raise PoleError(f"beta1={beta1} es un entero no positivo")

    if _y_pequeno(pt.y):
        logger.debug(f"|y|={abs(pt.y)} bajo el umbral; se usa la serie doble")
        return f2_series(F2Params(1.0, alpha1, 1.0, beta1, 2.0), pt, tol).value

    x, y = pt.x, pt.y
    clausen = HypParams3F2(alpha1 + 1.0, 1.0, 1.0, beta1 + 1.0, 2.0)
    z_prima = x / (1.0 - y)
    corchete = (z_prima * clausen3f2_series(clausen, z_prima, tol).value
                - x * clausen3f2_series(clausen, x, tol).value)
    return alpha1 / (beta1 * y) * corchete - math.log1p(-y) / y


# ---------------------------------------------------------------------------
# Propiedades de simetría y transformación
# ---------------------------------------------------------------------------

def swap_args(p: F2Params, pt: EvalPoint) -> Tuple[F2Params, EvalPoint]:
    """Intercambia los papeles de (α1, β1, x) y (α2, β2, y)"""
    return (F2Params(p.sigma, p.alpha2, p.alpha1, p.beta2, p.beta1),
            EvalPoint(pt.y, pt.x))


def transform_x(p: F2Params, pt: EvalPoint) -> Tuple[float, F2Params, EvalPoint]:
    """
    F2(σ; α1, α2; β1, β2; x, y) =
        (1-x)^(-σ) F2(σ; β1-α1, α2; β1, β2; x/(x-1), y/(1-x))
    """
    if pt.x == 1.0:
        raise DomainError("transform_x no está definida en x = 1")
    if pt.x > 1.0:
        raise DomainError(f"(1-x)^(-σ) no es real para x={pt.x} > 1")
    escala = (1.0 - pt.x) ** (-p.sigma)
    nuevos = F2Params(p.sigma, p.beta1 - p.alpha1, p.alpha2, p.beta1, p.beta2)
    return escala, nuevos, EvalPoint(pt.x / (pt.x - 1.0), pt.y / (1.0 - pt.x))


def transform_xy(p: F2Params, pt: EvalPoint) -> Tuple[float, F2Params, EvalPoint]:
    """
    F2(σ; α1, α2; β1, β2; x, y) =
        (1-x-y)^(-σ) F2(σ; β1-α1, β2-α2; β1, β2; x/(x+y-1), y/(x+y-1))
    """
    s = pt.x + pt.y
    if s == 1.0:
        raise DomainError("transform_xy no está definida en x + y = 1")
    if s > 1.0:
        raise DomainError(f"(1-x-y)^(-σ) no es real para x + y = {s} > 1")
    escala = (1.0 - s) ** (-p.sigma)
    nuevos = F2Params(p.sigma, p.beta1 - p.alpha1, p.beta2 - p.alpha2, p.beta1, p.beta2)
    return escala, nuevos, EvalPoint(pt.x / (s - 1.0), pt.y / (s - 1.0))


def f1_via_f2(alpha: float, beta: float, beta_prime: float, gamma: float,
              pt: EvalPoint, tol: Optional[float] = None) -> float:
    """
    F1(α; β, β'; γ; x, y) por cualquiera de las dos formas con F2:

        (x/y)^β' F2(β+β'; α, β'; γ, β+β'; x, 1 - x/y)
        (y/x)^β  F2(β+β'; α, β;  γ, β+β'; y, 1 - y/x)

    Se usa la forma cuyo punto tiene menor |·| + |·|.
    """
    x, y = pt.x, pt.y
    if not (x * y > 0):
        raise DomainError(f"f1_via_f2 requiere x/y > 0 (x={x}, y={y})")

    suma = beta + beta_prime
    punto_a = EvalPoint(x, 1.0 - x / y)
    punto_b = EvalPoint(y, 1.0 - y / x)

    if min(punto_a.norm, punto_b.norm) >= 1.0:
        raise DomainError(f"ninguna forma de F1 vía F2 converge en ({x}, {y})")

    if punto_a.norm <= punto_b.norm:
        escala = (x / y) ** beta_prime
        valor = f2_series(F2Params(suma, alpha, beta_prime, gamma, suma), punto_a, tol).value
    else:
        escala = (y / x) ** beta
        valor = f2_series(F2Params(suma, alpha, beta, gamma, suma), punto_b, tol).value
    return escala * valor


# ---------------------------------------------------------------------------
# Familias paramétricas con forma cerrada
# ---------------------------------------------------------------------------

class FamilyId(Enum):
    F1 = 'F1'   # F2(a+1; α, 1; α, 2),   parámetros [a, α]
    F2 = 'F2'   # F2(a+1; α, 1; a, 2),   parámetros [a, α]
    F3 = 'F3'   # F2(a+1; 1, 1; 2, 2),   parámetros [a]
    F4 = 'F4'   # F2(1; α1, 1; α1, 2),   parámetros [α1]
    F5 = 'F5'   # F2(1; 0, 1; β, 2),     parámetros [β]
    F6 = 'F6'   # F2(2; b, 1; 2, 2),     parámetros [b]


_FAMILY_ARITY = {
    FamilyId.F1: 2, FamilyId.F2: 2, FamilyId.F3: 1,
    FamilyId.F4: 1, FamilyId.F5: 1, FamilyId.F6: 1,
}


def _como_familia(family_id) -> FamilyId:
    if isinstance(family_id, FamilyId):
        return family_id
    try:
        return FamilyId(str(family_id).upper())
    except ValueError:
        raise ParamError(f"familia desconocida: {family_id}")


def _validar_familia(fid: FamilyId, fp: Sequence[float]) -> List[float]:
    valores = [float(v) for v in fp]
    if len(valores) != _FAMILY_ARITY[fid]:
        raise ParamError(f"la familia {fid.value} requiere {_FAMILY_ARITY[fid]} parámetros "
                         f"(recibidos {len(valores)})")

    def _cerca(v: float, objetivo: float) -> bool:
        return abs(v - objetivo) <= _IGUALDAD_TOL

    if fid in (FamilyId.F1, FamilyId.F2) and _cerca(valores[0], 0.0):
        raise ParamError(f"la familia {fid.value} excluye a = 0")
    if fid == FamilyId.F3 and (_cerca(valores[0], 0.0) or _cerca(valores[0], 1.0)):
        raise ParamError("la familia F3 excluye a = 0 y a = 1")
    if fid == FamilyId.F6 and _cerca(valores[0], 1.0):
        raise ParamError("la familia F6 excluye b = 1")
    return valores


def family_params_to_f2(family_id, family_params: Sequence[float]) -> F2Params:
    """Parámetros F2 que representa la familia"""
    fid = _como_familia(family_id)
    v = _validar_familia(fid, family_params)
    if fid == FamilyId.F1:
        return F2Params(v[0] + 1.0, v[1], 1.0, v[1], 2.0)
    if fid == FamilyId.F2:
        return F2Params(v[0] + 1.0, v[1], 1.0, v[0], 2.0)
    if fid == FamilyId.F3:
        return F2Params(v[0] + 1.0, 1.0, 1.0, 2.0, 2.0)
    if fid == FamilyId.F4:
        return F2Params(1.0, v[0], 1.0, v[0], 2.0)
    if fid == FamilyId.F5:
        return F2Params(1.0, 0.0, 1.0, v[0], 2.0)
    return F2Params(2.0, v[0], 1.0, 2.0, 2.0)


def _evaluar_familia(fid: FamilyId, v: List[float], x: float, y: float) -> float:
    if fid == FamilyId.F1:
        a = v[0]
        return ((1.0 - x - y) ** (-a) - (1.0 - x) ** (-a)) / (a * y)
    if fid == FamilyId.F2:
        a, alfa = v
        return ((1.0 - y) ** (alfa - a) * (1.0 - x - y) ** (-alfa)
                - (1.0 - x) ** (-alfa)) / (a * y)
    if fid == FamilyId.F3:
        a = v[0]
        return ((1.0 - x - y) ** (1.0 - a) - (1.0 - y) ** (1.0 - a)
                - (1.0 - x) ** (1.0 - a) + 1.0) / (a * (a - 1.0) * x * y)
    if fid == FamilyId.F4:
        return math.log((1.0 - x) / (1.0 - x - y)) / y
    if fid == FamilyId.F5:
        return -math.log1p(-y) / y
    b = v[0]
    return (((1.0 - x - y) / (1.0 - y)) ** (1.0 - b)
            - (1.0 - x) ** (1.0 - b)) / ((b - 1.0) * x * y)


def f2_family_result(family_id, family_params: Sequence[float], pt: EvalPoint,
                     tol: Optional[float] = None) -> F2Result:
    """Forma cerrada de una familia con diagnóstico del camino usado"""
    fid = _como_familia(family_id)
    valores = _validar_familia(fid, family_params)
    params = family_params_to_f2(fid, valores)
    params.validate()

    if not (pt.x > 0 and pt.y > 0 and pt.x + pt.y < 1.0):
        raise DomainError(f"la familia {fid.value} requiere x > 0, y > 0, x + y < 1 "
                          f"(x={pt.x}, y={pt.y})")

    diagnostico: Dict[str, Any] = {'route': f"family {fid.value}",
                                   'family_params': valores}
    if _y_pequeno(pt.y):
        diagnostico['fallback'] = 'series'
        serie = f2_series(params, pt, tol)
        return F2Result(serie.value, F2Method.CLOSED_FORM, serie.est_error, diagnostico)

    valor = _evaluar_familia(fid, valores, pt.x, pt.y)
    return F2Result(valor, F2Method.CLOSED_FORM, 0.0, diagnostico)


def f2_family_closed(family_id, family_params: Sequence[float], pt: EvalPoint) -> float:
    """Evalúa una de las seis familias F1 a F6"""
    return f2_family_result(family_id, family_params, pt).value


def match_family(p: F2Params) -> Optional[Tuple[FamilyId, List[float]]]:
    """
    Reconoce una familia a partir de los parámetros (con α2 = 1, β2 = 2).
    Orden de prueba: F5, F4, F1, F2, F3, F6.
    """
    def igual(a: float, b: float) -> bool:
        return abs(a - b) <= _IGUALDAD_TOL

    if not (igual(p.alpha2, 1.0) and igual(p.beta2, 2.0)):
        return None

    candidatos: List[Tuple[FamilyId, List[float]]] = []
    if igual(p.sigma, 1.0) and igual(p.alpha1, 0.0):
        candidatos.append((FamilyId.F5, [p.beta1]))
    if igual(p.sigma, 1.0) and igual(p.alpha1, p.beta1):
        candidatos.append((FamilyId.F4, [p.alpha1]))
    if igual(p.alpha1, p.beta1):
        candidatos.append((FamilyId.F1, [p.sigma - 1.0, p.alpha1]))
    if igual(p.beta1, p.sigma - 1.0):
        candidatos.append((FamilyId.F2, [p.sigma - 1.0, p.alpha1]))
    if igual(p.alpha1, 1.0) and igual(p.beta1, 2.0):
        candidatos.append((FamilyId.F3, [p.sigma - 1.0]))
    if igual(p.sigma, 2.0) and igual(p.beta1, 2.0):
        candidatos.append((FamilyId.F6, [p.alpha1]))

    for fid, valores in candidatos:
        try:
            _validar_familia(fid, valores)
        except ParamError:
            continue
        return fid, valores
    return None


def _literal(valor: float) -> str:
    texto = repr(abs(float(valor)))
    return f"(-{texto})" if valor < 0 else texto


def family_expression(family_id, family_params: Sequence[float]) -> str:
    """Texto DSL de la forma cerrada de la familia"""
    fid = _como_familia(family_id)
    v = [_literal(p) for p in _validar_familia(fid, family_params)]
    if fid == FamilyId.F1:
        a = v[0]
        return f"1/({a}*y)*((1-x-y)^(-{a}) - (1-x)^(-{a}))"
    if fid == FamilyId.F2:
        a, alfa = v
        return f"1/({a}*y)*((1-y)^({alfa}-{a})*(1-x-y)^(-{alfa}) - (1-x)^(-{alfa}))"
    if fid == FamilyId.F3:
        a = v[0]
        return (f"((1-x-y)^(1-{a}) - (1-y)^(1-{a}) - (1-x)^(1-{a}) + 1)"
                f"/({a}*({a}-1)*x*y)")
    if fid == FamilyId.F4:
        return "ln((1-x)/(1-x-y))/y"
    if fid == FamilyId.F5:
        return "-ln(1-y)/y"
    b = v[0]
    return f"1/(({b}-1)*x*y)*(((1-x-y)/(1-y))^(1-{b}) - (1-x)^(1-{b}))"


# ---------------------------------------------------------------------------
# Selección de método
# ---------------------------------------------------------------------------

def f2_closed_form(p: F2Params, pt: EvalPoint, tol: Optional[float] = None) -> F2Result:
    """
    Forma cerrada disponible para p: familia nativa o teorema de
    desplazamiento cuando (α2, β2) = (1, 2)
    """
    familia = match_family(p)
    if familia is not None:
        return f2_family_result(familia[0], familia[1], pt, tol)

    if not (abs(p.alpha2 - 1.0) <= _IGUALDAD_TOL and abs(p.beta2 - 2.0) <= _IGUALDAD_TOL):
        raise DomainError(f"no hay forma cerrada para F2{p.as_tuple()}")

    diagnostico: Dict[str, Any] = {}
    if _y_pequeno(pt.y):
        diagnostico['fallback'] = 'series'
    if abs(p.sigma - 1.0) <= _IGUALDAD_TOL:
        diagnostico['route'] = 'theorem1-log'
        valor = f2_theorem1_log(p.alpha1, p.beta1, pt, tol)
    else:
        diagnostico['route'] = 'theorem1-shift'
        valor = f2_theorem1_shift(p.sigma - 1.0, p.alpha1, p.beta1, pt, tol)
    return F2Result(valor, F2Method.CLOSED_FORM, 0.0, diagnostico)


def f2_evaluate(p: F2Params, pt: EvalPoint, method: str = 'auto',
                tol: Optional[float] = None) -> F2Result:
    """
    Evalúa F2 con el método pedido. 'auto' prefiere una familia, luego el
    teorema de desplazamiento y por último la serie.
    """
    if method == 'auto':
        try:
            return f2_closed_form(p, pt, tol)
        except DomainError:
            if not pt.in_convergence_domain:
                raise
            return f2_series(p, pt, tol)

    metodo = F2Method(method)
    if metodo == F2Method.SERIES:
        return f2_series(p, pt, tol)
    if metodo == F2Method.SINGLE_INTEGRAL:
        return f2_single_integral(p, pt, tol)
    if metodo == F2Method.DOUBLE_INTEGRAL:
        return f2_double_integral(p, pt)
    return f2_closed_form(p, pt, tol)
