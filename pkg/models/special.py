"""
Funciones especiales escalares: símbolo de Pochhammer, series 2F1 y 3F2
y la representación integral de Euler para 2F1
"""

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from scipy.special import gammaln, gammasgn

from config import Config
from models.errors import DomainError, ParamError, PoleError
from models.quadrature import beta_kernel_integral
from utils.helpers import get_logger

logger = get_logger(__name__)

# Por debajo de este k el logaritmo se acumula factor a factor
_K_DIRECTO = 64


def is_nonpositive_integer(value: float, tol: Optional[float] = None) -> bool:
    """True si value está a menos de tol de un entero 0, -1, -2, ..."""
    tol = Config.SERIES['pole_tol'] if tol is None else tol
    if value > tol:
        return False
    return abs(value - round(value)) <= tol


@dataclass(frozen=True)
class HypParams2F1:
    """Parámetros (a, b; c) de la función de Gauss"""
    a: float
    b: float
    c: float

    @property
    def is_valid(self) -> bool:
        return not is_nonpositive_integer(self.c)


@dataclass(frozen=True)
class HypParams3F2:
    """Parámetros (a1, a2, a3; b1, b2) de la función de Clausen"""
    a1: float
    a2: float
    a3: float
    b1: float
    b2: float

    @property
    def is_valid(self) -> bool:
        return not (is_nonpositive_integer(self.b1) or is_nonpositive_integer(self.b2))


@dataclass(frozen=True)
class SeriesResult:
    """
    Resultado de una suma de serie.
    est_error es el mayor de los últimos términos sumados dividido por
    max(1, |S|), la misma escala del criterio de parada: con converged=True
    queda por debajo de tol.
    """
    value: float
    terms_used: int
    est_error: float
    converged: bool


def pochhammer(lam: float, k: int) -> float:
    """
    Símbolo de Pochhammer (λ)_k = λ(λ+1)...(λ+k-1) como producto secuencial
    """
    if k < 0:
        raise ParamError(f"pochhammer requiere k >= 0 (k={k})")
    resultado = 1.0
    for j in range(k):
        resultado *= lam + j
    return resultado


def ln_pochhammer_ratio(lam: float, k: int) -> Tuple[float, int]:
    """
    Devuelve (ln|(λ)_k|, signo). Para k < 0 usa (λ)_k = 1 / ∏_{j=1}^{|k|} (λ - j).
    """
    if k < 0:
        factores = [lam - j for j in range(1, -k + 1)]
        if any(f == 0.0 for f in factores):
            raise DomainError(f"factor nulo en (λ)_k con λ={lam}, k={k}")
        log_abs = -math.fsum(math.log(abs(f)) for f in factores)
        signo = -1 if sum(1 for f in factores if f < 0) % 2 else 1
        return log_abs, signo

    entero_no_positivo = is_nonpositive_integer(lam, 0.0)
    if entero_no_positivo and -lam < k:
        raise DomainError(f"factor nulo en (λ)_k con λ={lam}, k={k}")

    if k <= _K_DIRECTO or entero_no_positivo:
        factores = [lam + j for j in range(k)]
        log_abs = math.fsum(math.log(abs(f)) for f in factores)
        signo = -1 if sum(1 for f in factores if f < 0) % 2 else 1
        return log_abs, signo

    log_abs = float(gammaln(lam + k) - gammaln(lam))
    signo = int(gammasgn(lam + k) * gammasgn(lam))
    return log_abs, signo


def _validar_tolerancia(tol: float):
    if not (isinstance(tol, (int, float)) and tol > 0):
        raise ParamError(f"la tolerancia debe ser positiva (tol={tol})")


def hypergeometric_pfq_series(upper: Sequence[float], lower: Sequence[float],
                              z: float, tol: Optional[float] = None) -> SeriesResult:
    """
    Suma Σ ∏(a_i)_n / (∏(b_j)_n n!) z^n con la recurrencia de términos

        t_{n+1} = t_n · ∏(a_i + n) · z / (∏(b_j + n) · (n + 1))

    Se detiene tras tres términos consecutivos menores que tol·max(1, |S|).
    Al alcanzar el tope de términos devuelve converged=False.
    """
    tol = Config.SERIES['tol_default'] if tol is None else tol
    _validar_tolerancia(tol)

    if not math.isfinite(z) or abs(z) >= 1:
        raise DomainError(f"la serie requiere |z| < 1 (z={z})")
    for b in lower:
        if is_nonpositive_integer(b):
            raise PoleError(f"parámetro inferior en un entero no positivo (b={b})")

    max_terms = Config.SERIES['max_terms']
    racha_objetivo = Config.SERIES['consecutive_small']

    term = 1.0
    total = 1.0
    racha = 0
    recientes = deque([0.0], maxlen=racha_objetivo)

    for n in range(max_terms - 1):
        num = 1.0
        for a in upper:
            num *= a + n
        den = 1.0
        for b in lower:
            den *= b + n
        term = term * num * z / (den * (n + 1))
        total += term
        escalado = abs(term) / max(1.0, abs(total))
        recientes.append(escalado)

        if escalado < tol:
            racha += 1
            if racha >= racha_objetivo:
                return SeriesResult(total, n + 2, max(recientes), True)
        else:
            racha = 0

    logger.warning(f"Serie {len(upper)}F{len(lower)} sin converger en {max_terms} términos (z={z})")
    return SeriesResult(total, max_terms, max(recientes), False)


def gauss2f1_series(p: HypParams2F1, z: float, tol: Optional[float] = None) -> SeriesResult:
    """Serie de Gauss 2F1(a, b; c; z) para |z| < 1"""
    return hypergeometric_pfq_series((p.a, p.b), (p.c,), z, tol)


def clausen3f2_series(p: HypParams3F2, z: float, tol: Optional[float] = None) -> SeriesResult:
    """Serie de Clausen 3F2(a1, a2, a3; b1, b2; z) para |z| < 1"""
    return hypergeometric_pfq_series((p.a1, p.a2, p.a3), (p.b1, p.b2), z, tol)


def gauss2f1_euler(p: HypParams2F1, z: float, tol: Optional[float] = None) -> float:
    """
    2F1 por la integral de Euler

        Γ(c) / (Γ(b) Γ(c-b)) ∫_0^1 τ^(b-1) (1-τ)^(c-b-1) (1-zτ)^(-a) dτ

    válida para c > b > 0 y z < 1.
    """
    if not (p.c > p.b > 0):
        raise DomainError(f"la integral de Euler requiere c > b > 0 (b={p.b}, c={p.c})")
    if not z < 1:
        raise DomainError(f"la integral de Euler requiere z < 1 (z={z})")

    tol = Config.QUADRATURE['tol_default'] if tol is None else tol
    _validar_tolerancia(tol)

    resultado = beta_kernel_integral(
        p.b, p.c - p.b,
        lambda tau: (1.0 - z * tau) ** (-p.a),
        tol=tol,
        normalized=True
    )
    logger.debug(f"Euler 2F1{(p.a, p.b, p.c)} z={z}: {resultado.panels} paneles")
    return resultado.value
