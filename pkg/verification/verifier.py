"""
Arnés de verificación: compara formas cerradas contra el oráculo de series
sobre una malla de puntos y clasifica cada entrada
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from config import Config
from formulas.corpus import CorpusEntry
from formulas.expr import eval_expr
from models.appell import EvalPoint, f2_series
from models.errors import AppellError, DomainEmpty, ParamError
from utils.helpers import ReportExporter, clean_for_json, utc_timestamp

# closed(pt) -> valor ; oracle(pt, oracle_tol) -> (valor, convergió)
ClosedForm = Callable[[EvalPoint], float]
Oracle = Callable[[EvalPoint, float], Tuple[float, bool]]


@dataclass(frozen=True)
class GridSpec:
    """Malla tensorial recortada por x + y <= s_max"""
    nx: int = 8
    ny: int = 8
    x_range: Tuple[float, float] = (0.05, 0.65)
    y_range: Tuple[float, float] = (0.05, 0.65)
    s_max: float = 0.7

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ParamError(f"la malla requiere nx, ny >= 1 (nx={self.nx}, ny={self.ny})")
        for nombre, (low, high) in (('x_range', self.x_range), ('y_range', self.y_range)):
            if low > high:
                raise ParamError(f"{nombre} invertido: ({low}, {high})")

    @classmethod
    def default(cls) -> 'GridSpec':
        cfg = Config.VERIFICATION
        return cls(cfg['grid_n'], cfg['grid_n'], cfg['grid_range'], cfg['grid_range'], cfg['s_max'])

    @classmethod
    def z_line(cls) -> 'GridSpec':
        """Puntos (z, 0) para las tablas de una variable"""
        cfg = Config.VERIFICATION
        return cls(cfg['z_points'], 1, cfg['z_range'], (0.0, 0.0), 1.0)


# holgura para x + y calculado en coma flotante sobre el borde
_HOLGURA = 1e-12


def sample_grid(g: GridSpec) -> List[EvalPoint]:
    """
    Puntos de la malla en orden por filas (x exterior, y interior)
    """
    xs = np.linspace(g.x_range[0], g.x_range[1], g.nx)
    ys = np.linspace(g.y_range[0], g.y_range[1], g.ny)
    puntos = [EvalPoint(float(x), float(y))
              for x in xs for y in ys
              if x + y <= g.s_max + _HOLGURA]
    if not puntos:
        raise DomainEmpty(f"ningún punto de la malla {g} cumple x + y <= {g.s_max}")
    return puntos


class EntryStatus(Enum):
    PASS = 'Pass'
    FAIL = 'Fail'
    SUSPECTED_MISPRINT = 'SuspectedMisprint'
    ORACLE_UNAVAILABLE = 'OracleUnavailable'
    DOMAIN_EMPTY = 'DomainEmpty'


@dataclass(frozen=True)
class Check:
    """Una forma cerrada y su oráculo sobre un conjunto de puntos"""
    name: str
    closed: ClosedForm
    oracle: Oracle
    points: Tuple[EvalPoint, ...]
    kind: str = 'builtin'
    registered_misprint: bool = False
    note: str = ""


@dataclass
class EntryReport:
    entry: str
    kind: str
    status: EntryStatus
    points_tested: int
    max_rel_error: Optional[float]
    max_abs_error: Optional[float]
    worst_point: Optional[Tuple[float, float]]
    registered_misprint: bool = False
    eval_errors: int = 0
    eval_error_messages: List[str] = field(default_factory=list)
    oracle_failures: int = 0
    note: str = ""
    points: Optional[List[Dict[str, Any]]] = None

    def to_dict(self) -> Dict[str, Any]:
        datos = {
            'entry': self.entry,
            'kind': self.kind,
            'status': self.status.value,
            'points_tested': self.points_tested,
            'max_rel_error': self.max_rel_error,
            'max_abs_error': self.max_abs_error,
            'worst_point': list(self.worst_point) if self.worst_point else None,
            'registered_misprint': self.registered_misprint,
            'eval_errors': self.eval_errors,
            'eval_error_messages': list(self.eval_error_messages),
            'oracle_failures': self.oracle_failures,
            'note': self.note
        }
        if self.points is not None:
            datos['points'] = self.points
        return datos


@dataclass
class VerificationReport:
    entries: List[EntryReport]
    tolerances: Dict[str, float]
    oracle: Dict[str, Any]
    grid: Dict[str, Any]
    timestamp: Optional[str] = None

    @property
    def summary(self) -> Dict[str, int]:
        conteo = {status.value: 0 for status in EntryStatus}
        for entrada in self.entries:
            conteo[entrada.status.value] += 1
        return conteo

    def exit_code(self) -> int:
        """2 si hay erratas sospechadas, 1 si algo no pasa, 0 en otro caso"""
        codigos = Config.EXIT_CODES
        estados = {e.status for e in self.entries}
        if EntryStatus.SUSPECTED_MISPRINT in estados:
            return codigos['misprint']
        if estados - {EntryStatus.PASS}:
            return codigos['fail']
        return codigos['ok']

    def to_dict(self) -> Dict[str, Any]:
        return clean_for_json({
            'timestamp': self.timestamp,
            'tolerances': dict(self.tolerances),
            'oracle': dict(self.oracle),
            'grid': dict(self.grid),
            'summary': self.summary,
            'entries': [e.to_dict() for e in self.entries]
        })

    def to_json(self) -> str:
        return ReportExporter.export_to_json(self.to_dict())

    def to_csv(self) -> str:
        return ReportExporter.export_to_csv(self.to_dict())

    def to_text(self) -> str:
        return ReportExporter.export_to_text(self.to_dict())


def _clasificar(points_tested: int, max_rel: Optional[float], eval_errors: int,
                oracle_failures: int, pass_tol: float) -> EntryStatus:
    if points_tested == 0:
        if oracle_failures > 0 and eval_errors == 0:
            return EntryStatus.ORACLE_UNAVAILABLE
        return EntryStatus.FAIL
    if max_rel <= pass_tol:
        return EntryStatus.PASS
    if max_rel > Config.VERIFICATION['misprint_threshold'] and eval_errors == 0:
        return EntryStatus.SUSPECTED_MISPRINT
    return EntryStatus.FAIL


def verify_check(check: Check, pass_tol: Optional[float] = None,
                 oracle_tol: Optional[float] = None,
                 verbose_points: bool = False) -> EntryReport:
    """
    Evalúa la forma cerrada y el oráculo en cada punto del check.
    Los EvalError reducen el conjunto probado y quedan registrados.
    """
    cfg = Config.VERIFICATION
    pass_tol = cfg['pass_tol'] if pass_tol is None else pass_tol
    oracle_tol = cfg['oracle_tol'] if oracle_tol is None else oracle_tol

    if not check.points:
        return EntryReport(check.name, check.kind, EntryStatus.DOMAIN_EMPTY, 0, None, None, None,
                           registered_misprint=check.registered_misprint, note=check.note)

    max_rel: Optional[float] = None
    max_abs: Optional[float] = None
    peor: Optional[Tuple[float, float]] = None
    probados = 0
    eval_errors = 0
    mensajes: List[str] = []
    fallas_oraculo = 0
    detalle: Optional[List[Dict[str, Any]]] = [] if verbose_points else None

    for pt in check.points:
        try:
            cerrado = float(check.closed(pt))
            if not math.isfinite(cerrado):
                raise ArithmeticError(f"valor no finito {cerrado}")
        except (AppellError, ArithmeticError, ValueError) as e:
            eval_errors += 1
            if len(mensajes) < cfg['max_error_messages']:
                mensajes.append(f"({pt.x!r}, {pt.y!r}): {e}")
            continue

        try:
            referencia, convergio = check.oracle(pt, oracle_tol)
        except AppellError:
            convergio = False
        if not convergio:
            fallas_oraculo += 1
            continue

        error_abs = abs(cerrado - referencia)
        error_rel = error_abs / max(1.0, abs(referencia))
        probados += 1
        if max_rel is None or error_rel > max_rel:
            max_rel = error_rel
            peor = (pt.x, pt.y)
        if max_abs is None or error_abs > max_abs:
            max_abs = error_abs
        if detalle is not None:
            detalle.append({'x': pt.x, 'y': pt.y, 'closed': cerrado,
                            'oracle': referencia, 'rel_error': error_rel})

    estado = _clasificar(probados, max_rel, eval_errors, fallas_oraculo, pass_tol)
    return EntryReport(
        entry=check.name,
        kind=check.kind,
        status=estado,
        points_tested=probados,
        max_rel_error=max_rel,
        max_abs_error=max_abs,
        worst_point=peor,
        registered_misprint=check.registered_misprint,
        eval_errors=eval_errors,
        eval_error_messages=mensajes,
        oracle_failures=fallas_oraculo,
        note=check.note,
        points=detalle
    )


def entry_check(entry: CorpusEntry, g: GridSpec) -> Check:
    """Convierte una entrada del corpus en un check contra f2_series"""
    try:
        puntos = tuple(pt for pt in sample_grid(g) if entry.domain.contains(pt.x, pt.y))
    except DomainEmpty:
        puntos = ()

    def oraculo(pt: EvalPoint, tol: float) -> Tuple[float, bool]:
        resultado = f2_series(entry.params, pt, tol)
        return resultado.value, resultado.diagnostics['converged']

    return Check(
        name=entry.locator,
        closed=lambda pt: eval_expr(entry.expr, pt.x, pt.y),
        oracle=oraculo,
        points=puntos,
        kind='corpus',
        registered_misprint=entry.registered_misprint,
        note=entry.source_note
    )


def verify_entry(entry: CorpusEntry, g: Optional[GridSpec] = None,
                 pass_tol: Optional[float] = None, oracle_tol: Optional[float] = None,
                 verbose_points: bool = False) -> EntryReport:
    """Verifica una fila del corpus sobre la malla g"""
    return verify_check(entry_check(entry, g or GridSpec.default()), pass_tol, oracle_tol,
                        verbose_points)


class CorpusVerifier:
    """
    Ejecuta checks en paralelo y arma un reporte en el orden de entrada
    """

    def __init__(self, pass_tol: Optional[float] = None, oracle_tol: Optional[float] = None,
                 workers: Optional[int] = None, verbose_points: bool = False,
                 include_timestamp: bool = True):
        cfg = Config.VERIFICATION
        self.pass_tol = cfg['pass_tol'] if pass_tol is None else pass_tol
        self.oracle_tol = cfg['oracle_tol'] if oracle_tol is None else oracle_tol
        self.workers = cfg['workers'] if workers is None else max(1, workers)
        self.verbose_points = verbose_points
        self.include_timestamp = include_timestamp
        self._setup_logging()

    def _setup_logging(self):
        """Configura logging para el verificador"""
        self.logger = logging.getLogger(self.__class__.__name__)
        self.logger.setLevel(Config.LOGGING['level'])

        if not self.logger.handlers:
            handler = logging.StreamHandler()
            formatter = logging.Formatter(Config.LOGGING['format'])
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)

    def _verificar(self, check: Check) -> EntryReport:
        reporte = verify_check(check, self.pass_tol, self.oracle_tol, self.verbose_points)
        if reporte.status == EntryStatus.ORACLE_UNAVAILABLE:
            self.logger.warning(f"{check.name}: el oráculo no convergió en ningún punto")
        elif reporte.status != EntryStatus.PASS:
            self.logger.info(f"{check.name}: {reporte.status.value} "
                             f"(max_rel={reporte.max_rel_error})")
        return reporte

    def run(self, checks: Sequence[Check], grid: Optional[GridSpec] = None) -> VerificationReport:
        checks = list(checks)
        self.logger.debug(f"Verificando {len(checks)} entradas con {self.workers} hilos")

        if self.workers > 1 and len(checks) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                reportes = list(pool.map(self._verificar, checks))
        else:
            reportes = [self._verificar(c) for c in checks]

        return VerificationReport(
            entries=reportes,
            tolerances={
                'pass_tol': self.pass_tol,
                'oracle_tol': self.oracle_tol,
                'misprint_threshold': Config.VERIFICATION['misprint_threshold']
            },
            oracle={
                'method': 'series',
                'max_terms': Config.SERIES['max_terms'],
                'max_diagonals': Config.SERIES['max_diagonals']
            },
            grid=_grid_dict(grid),
            timestamp=utc_timestamp() if self.include_timestamp else None
        )

    def verify_corpus(self, entries: Iterable[CorpusEntry], g: Optional[GridSpec] = None,
                      skip_registered: bool = False) -> VerificationReport:
        g = g or GridSpec.default()
        seleccion = [e for e in entries if not (skip_registered and e.registered_misprint)]
        return self.run([entry_check(e, g) for e in seleccion], g)


def _grid_dict(g: Optional[GridSpec]) -> Dict[str, Any]:
    if g is None:
        return {}
    return {'nx': g.nx, 'ny': g.ny, 'x_range': list(g.x_range),
            'y_range': list(g.y_range), 's_max': g.s_max}


def verify_corpus(entries: Iterable[CorpusEntry], g: Optional[GridSpec] = None,
                  pass_tol: Optional[float] = None, oracle_tol: Optional[float] = None,
                  workers: Optional[int] = None, skip_registered: bool = False,
                  include_timestamp: bool = True,
                  verbose_points: bool = False) -> VerificationReport:
    """Verifica todas las entradas; el orden del reporte sigue al de entrada"""
    verificador = CorpusVerifier(pass_tol, oracle_tol, workers, verbose_points, include_timestamp)
    return verificador.verify_corpus(entries, g, skip_registered)
