import csv
import dataclasses
import io
import json
import logging
import math
from datetime import datetime
from enum import Enum
from fractions import Fraction
from typing import List, Dict, Any, Optional, Tuple

import numpy as np
import pandas as pd
import pytz

from config import Config


def get_logger(name: str, level: Optional[str] = None) -> logging.Logger:
    """
    Configura logging con un único StreamHandler por logger
    """
    logger = logging.getLogger(name)
    logger.setLevel(level or Config.LOGGING['level'])

    if not logger.handlers:
        handler = logging.StreamHandler()
        formatter = logging.Formatter(Config.LOGGING['format'])
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    return logger


def set_global_level(level: str):
    """Ajusta el nivel de todos los loggers ya creados por el toolkit"""
    for name in list(logging.root.manager.loggerDict):
        logger = logging.getLogger(name)
        if logger.handlers:
            logger.setLevel(level)


def parse_number(text: str) -> float:
    """
    Convierte enteros, decimales o racionales p/q a float.
    Lanza ValueError si el texto no es numérico.
    """
    limpio = str(text).strip()
    if not limpio:
        raise ValueError("valor numérico vacío")

    try:
        if '/' in limpio:
            numerador, denominador = limpio.split('/', 1)
            fraccion = Fraction(numerador.strip()) / Fraction(denominador.strip())
            return float(fraccion)
        return float(Fraction(limpio))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"valor numérico inválido '{text}': {e}")


def parse_range(text: str) -> Tuple[float, float]:
    """Convierte 'a,b' en una tupla ordenada (a, b)"""
    partes = str(text).split(',')
    if len(partes) != 2:
        raise ValueError(f"rango inválido '{text}' (formato esperado a,b)")
    low, high = parse_number(partes[0]), parse_number(partes[1])
    if low > high:
        raise ValueError(f"rango invertido '{text}'")
    return low, high


def format_float(value: Optional[float]) -> str:
    """17 dígitos significativos, suficiente para ida y vuelta exacta"""
    if value is None:
        return 'null'
    return format(float(value), '.17g')


def utc_timestamp() -> str:
    """Marca de tiempo ISO-8601 en UTC"""
    return datetime.now(pytz.utc).isoformat()


def clean_for_json(obj):
    """
    Limpia objetos para serialización JSON, convirtiendo tipos numpy a tipos nativos de Python
    """
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return clean_for_json(dataclasses.asdict(obj))
    elif isinstance(obj, Enum):
        return obj.value
    elif isinstance(obj, dict):
        return {k: clean_for_json(v) for k, v in obj.items()}
    elif isinstance(obj, list):
        return [clean_for_json(item) for item in obj]
    elif isinstance(obj, tuple):
        return [clean_for_json(item) for item in obj]
    elif isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    elif isinstance(obj, np.integer):
        return int(obj)
    elif isinstance(obj, (float, np.floating)):
        valor = float(obj)
        return valor if math.isfinite(valor) else None
    elif isinstance(obj, np.ndarray):
        return clean_for_json(obj.tolist())
    elif isinstance(obj, pd.Series):
        return clean_for_json(obj.tolist())
    elif isinstance(obj, pd.DataFrame):
        return clean_for_json(obj.to_dict('records'))
    else:
        return obj


def safe_json_dumps(obj, **kwargs):
    """
    JSON dumps seguro que limpia automáticamente los tipos numpy
    """
    cleaned_obj = clean_for_json(obj)
    kwargs.setdefault('ensure_ascii', False)
    kwargs.setdefault('allow_nan', False)
    return json.dumps(cleaned_obj, **kwargs)


class ReportExporter:
    """
    Exporta reportes de verificación en diferentes formatos
    """

    SUMMARY_COLUMNS = ['entry', 'status', 'max_rel_error', 'points_tested']

    @staticmethod
    def export_to_json(report: Dict[str, Any]) -> str:
        """
        Exporta el reporte completo a JSON estructurado
        """
        return safe_json_dumps(report, indent=2) + '\n'

    @staticmethod
    def export_to_csv(report: Dict[str, Any]) -> str:
        """
        Exporta el resumen por entrada a CSV
        """
        filas = [
            {
                'entry': entrada['entry'],
                'status': entrada['status'],
                'max_rel_error': format_float(entrada['max_rel_error'])
                if entrada['max_rel_error'] is not None else '',
                'points_tested': entrada['points_tested']
            }
            for entrada in report.get('entries', [])
        ]
        df = pd.DataFrame(filas, columns=ReportExporter.SUMMARY_COLUMNS)
        output = io.StringIO()
        df.to_csv(output, index=False, quoting=csv.QUOTE_MINIMAL, lineterminator='\n')
        return output.getvalue()

    @staticmethod
    def export_to_text(report: Dict[str, Any]) -> str:
        """
        Exporta en texto plano legible
        """
        lines = []
        lines.append("VERIFICACIÓN DE FORMAS CERRADAS F2")
        lines.append("=" * 50)
        if report.get('timestamp'):
            lines.append(f"Generado: {report['timestamp']}")
        tol = report.get('tolerances', {})
        lines.append(f"pass_tol: {format_float(tol.get('pass_tol'))}   "
                     f"oracle_tol: {format_float(tol.get('oracle_tol'))}")
        lines.append("")

        entradas = report.get('entries', [])
        if entradas:
            df = pd.DataFrame([
                {
                    'entry': e['entry'],
                    'status': e['status'],
                    'points': e['points_tested'],
                    'max_rel_error': format_float(e['max_rel_error'])
                    if e['max_rel_error'] is not None else '-',
                    'registered': 'yes' if e.get('registered_misprint') else ''
                }
                for e in entradas
            ])
            lines.append(df.to_string(index=False))
            lines.append("")

        lines.append("RESUMEN:")
        for status, count in report.get('summary', {}).items():
            lines.append(f"  {status}: {count}")

        return '\n'.join(lines) + '\n'


def export_report(report: Dict[str, Any], formato: str = 'text') -> str:
    """
    Función de conveniencia para exportar un reporte
    """
    formato = formato.lower()
    if formato == 'json':
        return ReportExporter.export_to_json(report)
    elif formato == 'csv':
        return ReportExporter.export_to_csv(report)
    elif formato == 'text':
        return ReportExporter.export_to_text(report)
    else:
        raise ValueError(f"Formato no soportado: {formato}")


def records_to_csv(records: List[Dict[str, Any]]) -> str:
    """CSV genérico (una fila por registro) usado por eval --format csv"""
    df = pd.DataFrame([clean_for_json(r) for r in records])
    output = io.StringIO()
    df.to_csv(output, index=False, lineterminator='\n', float_format='%.17g')
    return output.getvalue()
