"""
Carga del corpus de valores especiales de F2

Formato (UTF-8, orientado a líneas):

    sigma | alpha1 | alpha2 | beta1 | beta2 | x_min,x_max | y_min,y_max | expr_text | source_note

Las líneas que empiezan con '#' son comentarios; una línea terminada en '\\'
continúa en la siguiente. Un dominio '-' toma el rango por defecto.
"""

import io
from dataclasses import dataclass, field
from typing import IO, Iterator, List, Optional, Tuple, Union

from config import Config
from formulas.expr import Expr
from formulas.parser import parse_expr
from models.appell import F2Params
from models.errors import CorpusFormatError, ParseError
from utils.helpers import get_logger, parse_number, parse_range

logger = get_logger(__name__)

REGISTERED_MISPRINT_TAG = 'registered: suspected misprint'
_CAMPOS = 9


@dataclass(frozen=True)
class Domain:
    """Rectángulo de validez de una fila"""
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    require_sum_lt_1: bool = True

    def contains(self, x: float, y: float) -> bool:
        dentro = self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max
        if self.require_sum_lt_1:
            dentro = dentro and abs(x) + abs(y) < 1.0
        return dentro


def default_domain() -> Domain:
    low, high = Config.VERIFICATION['grid_range']
    return Domain(low, high, low, high, True)


@dataclass(frozen=True)
class CorpusEntry:
    """Una fila del corpus: parámetros, fórmula y dominio"""
    params: F2Params
    expr_text: str
    expr: Expr
    domain: Domain
    source_note: str = ""
    line: int = 0
    param_text: Tuple[str, ...] = ()

    @property
    def registered_misprint(self) -> bool:
        return REGISTERED_MISPRINT_TAG in self.source_note

    @property
    def locator(self) -> str:
        textos = self.param_text or tuple(repr(v) for v in self.params.as_tuple())
        sigma, a1, a2, b1, b2 = textos
        prefijo = f"línea {self.line}: " if self.line else ""
        return f"{prefijo}F2({sigma}; {a1}, {a2}; {b1}, {b2})"


@dataclass
class Corpus:
    """Entradas en orden de archivo más los errores de análisis por entrada"""
    entries: List[CorpusEntry] = field(default_factory=list)
    errors: List[Tuple[int, ParseError]] = field(default_factory=list)
    source: str = '<memoria>'

    def __iter__(self) -> Iterator[CorpusEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> CorpusEntry:
        return self.entries[index]


def _rango(texto: str, por_defecto: Tuple[float, float], linea: int) -> Tuple[float, float]:
    texto = texto.strip()
    if texto == '-':
        return por_defecto
    try:
        return parse_range(texto)
    except ValueError as e:
        raise CorpusFormatError(str(e), linea)


def _registros(lineas: List[str]) -> Iterator[Tuple[int, str]]:
    """Agrupa líneas de continuación; devuelve (línea inicial, texto)"""
    acumulado: List[str] = []
    inicio = 0
    for numero, cruda in enumerate(lineas, start=1):
        linea = cruda.rstrip('\r\n')
        if not acumulado:
            if not linea.strip() or linea.lstrip().startswith('#'):
                continue
            inicio = numero
        if linea.rstrip().endswith('\\'):
            acumulado.append(linea.rstrip()[:-1])
            continue
        acumulado.append(linea)
        yield inicio, ' '.join(parte.strip() for parte in acumulado)
        acumulado = []
    if acumulado:
        raise CorpusFormatError("continuación sin terminar al final del archivo", inicio)


def make_entry(params: F2Params, expr_text: str, domain: Optional[Domain] = None,
               source_note: str = "", line: int = 0,
               param_text: Tuple[str, ...] = ()) -> CorpusEntry:
    """Construye una entrada analizando la expresión (lanza ParseError)"""
    return CorpusEntry(
        params=params,
        expr_text=expr_text,
        expr=parse_expr(expr_text),
        domain=domain or default_domain(),
        source_note=source_note,
        line=line,
        param_text=param_text
    )


def parse_corpus_text(text: str, source: str = '<memoria>') -> Corpus:
    """
    Analiza el contenido completo de un corpus.
    Errores estructurales lanzan CorpusFormatError; los de la fórmula se acumulan.
    """
    corpus = Corpus(source=source)
    low, high = Config.VERIFICATION['grid_range']

    for linea, registro in _registros(text.splitlines()):
        campos = registro.split('|', _CAMPOS - 1)
        if len(campos) != _CAMPOS:
            raise CorpusFormatError(f"se esperaban {_CAMPOS} campos separados por '|', "
                                    f"hay {len(campos)}", linea)
        campos = [c.strip() for c in campos]

        try:
            valores = [parse_number(c) for c in campos[:5]]
        except ValueError as e:
            raise CorpusFormatError(str(e), linea)
        params = F2Params(*valores)
        if not params.is_valid:
            raise CorpusFormatError(f"beta en un entero no positivo: {params.as_tuple()}", linea)

        x_min, x_max = _rango(campos[5], (low, high), linea)
        y_min, y_max = _rango(campos[6], (low, high), linea)
        dominio = Domain(x_min, x_max, y_min, y_max, True)
        if x_min + y_min >= 1.0:
            raise CorpusFormatError("el dominio no intersecta |x| + |y| < 1", linea)

        if not campos[7]:
            raise CorpusFormatError("expresión vacía", linea)

        try:
            entrada = make_entry(params, campos[7], dominio, campos[8], linea, tuple(campos[:5]))
        except ParseError as e:
            logger.warning(f"{source} línea {linea}: {e}")
            corpus.errors.append((linea, e))
            continue
        corpus.entries.append(entrada)

    logger.debug(f"{source}: {len(corpus)} entradas, {len(corpus.errors)} errores")
    return corpus


def load_corpus(source: Union[str, IO[str], None] = None) -> Corpus:
    """
    Carga un corpus desde una ruta o un flujo de texto; sin argumento usa
    el corpus incluido en data/tables.f2
    """
    if source is None:
        source = Config.PATHS['corpus']

    if hasattr(source, 'read'):
        contenido = source.read()
        if isinstance(contenido, bytes):
            contenido = contenido.decode('utf-8')
        return parse_corpus_text(contenido, getattr(source, 'name', '<flujo>'))

    with io.open(source, 'r', encoding='utf-8') as f:
        return parse_corpus_text(f.read(), str(source))
