"""
Utilidades del toolkit Appell F2
Logging, lectura de números racionales y exportación de reportes
"""

from .helpers import (
    get_logger,
    parse_number,
    parse_range,
    clean_for_json,
    safe_json_dumps,
    utc_timestamp,
    ReportExporter,
    export_report
)

__all__ = [
    'get_logger',
    'parse_number',
    'parse_range',
    'clean_for_json',
    'safe_json_dumps',
    'utc_timestamp',
    'ReportExporter',
    'export_report'
]

__version__ = '1.0.0'
