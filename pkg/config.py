"""
Configuración principal para Appell F2 Toolkit
Parámetros centralizados de series, cuadratura y verificación
"""

import os
from typing import Dict, Any


class AppellConfig:
    """
    Configuración principal del toolkit de funciones hipergeométricas.
    Todas las tolerancias numéricas viven aquí; los módulos las leen al
    momento de la llamada para que los subclases de entorno surtan efecto.
    """

    # Información de la aplicación
    APP_NAME = "Appell F2 Toolkit"
    APP_VERSION = "1.0.0"
    APP_DESCRIPTION = "Evaluación y verificación de F2, 2F1 y 3F2"

    # Sumación de series
    SERIES = {
        'tol_default': 1e-12,
        'max_terms': 100_000,          # series de una variable
        'max_diagonals': 10_000,       # series dobles (diagonales m+n=N)
        'pole_tol': 1e-12,             # distancia a enteros no positivos
        'small_y': 1e-4,               # |y| bajo el cual las formas 1/y delegan a la serie
        'small_z': 1e-3,               # z bajo el cual las formas 0/0 delegan a la serie
        'consecutive_small': 3         # términos pequeños consecutivos para parar
    }

    # Cuadratura adaptativa
    QUADRATURE = {
        'gl_nodes': 15,
        'tol_default': 1e-11,
        'max_depth': 48,
        'max_panels': 20_000,
        'double_inner_tol': 1e-9,
        'double_outer_tol': 1e-8,
        'double_target': 1e-6
    }

    # Verificación de tablas
    VERIFICATION = {
        'pass_tol': 1e-8,
        'oracle_tol': 1e-12,
        'misprint_threshold': 1e-3,
        'grid_n': 8,
        'grid_range': (0.05, 0.65),
        's_max': 0.7,
        'z_points': 20,
        'z_range': (0.05, 0.9),
        'min_points': 10,
        'workers': 4,
        'max_error_messages': 3
    }

    # Códigos de salida de la línea de comandos
    EXIT_CODES = {
        'ok': 0,
        'fail': 1,
        'misprint': 2,
        'error': 3
    }

    # Logging
    LOGGING = {
        'level': 'INFO',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    }

    # Paths y archivos
    PATHS = {
        'data_dir': 'data',
        'corpus': os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data', 'tables.f2')
    }

    @classmethod
    def validate_config(cls) -> bool:
        """
        Valida que la configuración sea coherente
        """
        try:
            serie = cls.SERIES
            if serie['tol_default'] <= 0 or serie['pole_tol'] <= 0:
                return False
            if serie['max_terms'] < 1 or serie['max_diagonals'] < 1:
                return False

            verif = cls.VERIFICATION
            if not (0 < verif['oracle_tol'] < verif['pass_tol'] < verif['misprint_threshold']):
                return False

            for clave in ('grid_range', 'z_range'):
                low, high = verif[clave]
                if low >= high:
                    return False

            if verif['grid_n'] < 1 or verif['z_points'] < 1 or verif['workers'] < 1:
                return False

            cuad = cls.QUADRATURE
            if cuad['gl_nodes'] < 2 or cuad['tol_default'] <= 0:
                return False

            return True
        except Exception:
            return False

    @classmethod
    def get_summary(cls) -> Dict[str, Any]:
        """
        Obtiene resumen de la configuración
        """
        return {
            'app_info': {
                'name': cls.APP_NAME,
                'version': cls.APP_VERSION,
                'description': cls.APP_DESCRIPTION
            },
            'series': dict(cls.SERIES),
            'verificacion': {
                'pass_tol': cls.VERIFICATION['pass_tol'],
                'oracle_tol': cls.VERIFICATION['oracle_tol'],
                'malla': f"{cls.VERIFICATION['grid_n']}x{cls.VERIFICATION['grid_n']}",
                's_max': cls.VERIFICATION['s_max']
            },
            'validacion_ok': cls.validate_config()
        }


# Configuración para desarrollo/producción
class DevelopmentConfig(AppellConfig):
    """Configuración para desarrollo"""
    DEBUG = True
    LOGGING = {**AppellConfig.LOGGING, 'level': 'INFO'}


class ProductionConfig(AppellConfig):
    """Configuración para producción"""
    DEBUG = False
    LOGGING = {**AppellConfig.LOGGING, 'level': 'WARNING'}
    VERIFICATION = {**AppellConfig.VERIFICATION, 'workers': 8}


# Selección automática de configuración
def get_config():
    """
    Selecciona configuración según variable de entorno
    """
    env = os.getenv('APPELL_ENV', 'development').lower()

    if env == 'production':
        return ProductionConfig
    else:
        return DevelopmentConfig


# Configuración actual
Config = get_config()
