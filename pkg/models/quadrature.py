"""
Cuadratura adaptativa de Gauss-Legendre e integrales con peso Beta
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.special import gammaln

from config import Config
from models.errors import DomainError, ParamError
from utils.helpers import get_logger

logger = get_logger(__name__)

_PISO_REDONDEO = 64 * np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureResult:
    """Resultado de una integración numérica"""
    value: float
    est_error: float
    panels: int
    converged: bool


@lru_cache(maxsize=8)
def _nodos_gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    nodos, pesos = np.polynomial.legendre.leggauss(n)
    return nodos, pesos


def _panel(f: Callable[[float], float], a: float, b: float,
           nodos: np.ndarray, pesos: np.ndarray) -> float:
    centro = 0.5 * (a + b)
    mitad = 0.5 * (b - a)
    valores = np.array([f(float(t)) for t in centro + mitad * nodos])
    return float(mitad * np.dot(pesos, valores))


def adaptive_gauss_legendre(f: Callable[[float], float], a: float, b: float,
                            tol: Optional[float] = None) -> QuadratureResult:
    """
    Integra f en [a, b] por bisección adaptativa con paneles de Gauss-Legendre.

    Un panel se acepta cuando |izq + der - entero| no supera su parte de la
    tolerancia; al dividir, cada mitad recibe la mitad de la tolerancia.
    La pila se recorre de forma iterativa, el orden de suma es determinista.
    """
    cfg = Config.QUADRATURE
    tol = cfg['tol_default'] if tol is None else tol
    if not tol > 0:
        raise ParamError(f"la tolerancia debe ser positiva (tol={tol})")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0, True)

    nodos, pesos = _nodos_gauss_legendre(cfg['gl_nodes'])
    max_depth = cfg['max_depth']
    max_panels = cfg['max_panels']

    aceptados: List[float] = []
    error_total = 0.0
    convergio = True
    panels = 1

    pila = [(a, b, _panel(f, a, b, nodos, pesos), tol, 0)]
    while pila:
        izq, der, entero, tol_local, nivel = pila.pop()
        medio = 0.5 * (izq + der)
        parte_izq = _panel(f, izq, medio, nodos, pesos)
        parte_der = _panel(f, medio, der, nodos, pesos)
        panels += 2
        error = abs(parte_izq + parte_der - entero)

        if not math.isfinite(error):
            raise DomainError(f"integrando no finito en [{izq}, {der}]")

        # piso de redondeo: la tolerancia local no puede bajar de la precisión de la suma
        umbral = max(tol_local, _PISO_REDONDEO * abs(parte_izq + parte_der))
        if error <= umbral or nivel >= max_depth or panels >= max_panels:
            if error > umbral:
                convergio = False
            aceptados.append(parte_izq + parte_der)
            error_total += error
        else:
            pila.append((medio, der, parte_der, 0.5 * tol_local, nivel + 1))
            pila.append((izq, medio, parte_izq, 0.5 * tol_local, nivel + 1))

    if not convergio:
        logger.warning(f"Cuadratura sin converger en [{a}, {b}] tras {panels} paneles")

    return QuadratureResult(math.fsum(aceptados), error_total, panels, convergio)


def ln_beta(p: float, q: float) -> float:
    return float(gammaln(p) + gammaln(q) - gammaln(p + q))


def beta_kernel_integral(p: float, q: float, g: Callable[[float], float],
                         tol: Optional[float] = None,
                         normalized: bool = True) -> QuadratureResult:
    """
    Calcula ∫_0^1 τ^(p-1) (1-τ)^(q-1) g(τ) dτ, opcionalmente dividido por B(p, q).

    El intervalo se parte en 1/2. La mitad derecha se escribe en s = 1 - τ.
    Con p < 1 se sustituye u = τ^p y con q < 1 se sustituye v = s^q, lo que
    elimina las singularidades algebraicas de los extremos.
    """
    if not (p > 0 and q > 0):
        raise DomainError(f"el peso Beta requiere p > 0 y q > 0 (p={p}, q={q})")

    tol = Config.QUADRATURE['tol_default'] if tol is None else tol
    escala = math.exp(ln_beta(p, q)) if normalized else 1.0
    tol_mitad = 0.5 * tol * escala

    if p < 1:
        def izquierda(u: float) -> float:
            tau = u ** (1.0 / p)
            return (1.0 - tau) ** (q - 1.0) * g(tau) / p
        limite_izq = 0.5 ** p
    else:
        def izquierda(tau: float) -> float:
            return tau ** (p - 1.0) * (1.0 - tau) ** (q - 1.0) * g(tau)
        limite_izq = 0.5

    if q < 1:
        def derecha(v: float) -> float:
            s = v ** (1.0 / q)
            return (1.0 - s) ** (p - 1.0) * g(1.0 - s) / q
        limite_der = 0.5 ** q
    else:
        def derecha(s: float) -> float:
            return (1.0 - s) ** (p - 1.0) * s ** (q - 1.0) * g(1.0 - s)
        limite_der = 0.5

    res_izq = adaptive_gauss_legendre(izquierda, 0.0, limite_izq, tol_mitad)
    res_der = adaptive_gauss_legendre(derecha, 0.0, limite_der, tol_mitad)

    valor = (res_izq.value + res_der.value) / escala
    error = (res_izq.est_error + res_der.est_error) / escala
    return QuadratureResult(
        value=valor,
        est_error=error,
        panels=res_izq.panels + res_der.panels,
        converged=res_izq.converged and res_der.converged
    )
