"""
Tests de la línea de comandos
Ejecuta app.main en proceso y revisa salida y códigos de retorno
"""

import contextlib
import io
import json
import math
import os
import sys
import tempfile

import pandas as pd

# Agregar el directorio raíz al path para importar módulos
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

try:
    import app
    from config import Config
    from formulas.corpus import load_corpus
    from models.appell import EvalPoint, F2Params, f2_series, family_params_to_f2
    from models.special import HypParams2F1, clausen3f2_series, gauss2f1_series
    from models.tables import TABLE2_PARAMS
    print("✅ Todos los módulos importados correctamente")
except ImportError as e:
    print(f"❌ Error importando módulos: {e}")
    sys.exit(1)

PUNTO = ['-x', '0.2', '-y', '0.3']
MALLA_CHICA = ['--nx', '4', '--ny', '4']
CORPUS_MINI = (
    "# corpus de prueba\n"
    "2 | 1 | 1 | 2 | 2 | - | - | ln((1-x)*(1-y)/(1-x-y))/(x*y) | fila logarítmica\n"
    "3/2 | 1/2 | 1 | 1/2 | 2 | - | - | 2/y*((1-x-y)^(-1/2) - (1-x)^(-1/2)) | fila algebraica\n"
)


def _ejecutar(*argv):
    """Corre main capturando stdout y stderr"""
    salida, errores = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(salida), contextlib.redirect_stderr(errores):
        codigo = app.main(list(argv))
    return codigo, salida.getvalue(), errores.getvalue()


def _archivo_temporal(contenido: str) -> str:
    fd, ruta = tempfile.mkstemp(suffix='.f2')
    with os.fdopen(fd, 'w', encoding='utf-8') as f:
        f.write(contenido)
    return ruta


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(b))


def test_config():
    """Test configuración"""
    print("\n🧪 Testing configuración...")
    assert Config.validate_config()
    assert Config.EXIT_CODES == {'ok': 0, 'fail': 1, 'misprint': 2, 'error': 3}
    resumen = Config.get_summary()
    assert resumen['validacion_ok']
    assert resumen['verificacion']['malla'] == '8x8'
    print("✅ Configuración válida")


def test_eval_f2():
    """Test eval f2 en sus tres formatos"""
    print("\n🧪 Testing eval f2...")
    codigo, salida, _ = _ejecutar('eval', 'f2', '--sigma', '2', '--a1', '1', '--a2', '1',
                                  '--b1', '1', '--b2', '2', *PUNTO, '--method', 'series',
                                  '--format', 'json')
    assert codigo == 0
    datos = json.loads(salida)
    assert datos['target'] == 'f2'
    assert datos['method'] == 'series'
    assert _rel(datos['value'], 2.5) < 1e-12
    assert datos['diagnostics']['converged']

    codigo, salida, _ = _ejecutar('eval', 'f2', '--sigma', '2', '--a1', '1', '--a2', '1',
                                  '--b1', '2', '--b2', '2', *PUNTO)
    assert codigo == 0
    lineas = dict(linea.split(': ', 1) for linea in salida.strip().splitlines())
    assert set(lineas) == {'value', 'method', 'est_error', 'diagnostics'}
    assert lineas['method'] == 'closed'
    assert _rel(float(lineas['value']), math.log(1.12) / 0.06) < 1e-10
    assert json.loads(lineas['diagnostics'])['route'] == 'theorem1-shift'

    codigo, salida, _ = _ejecutar('eval', 'f2', '--sigma', '2', '--a1', '1', '--a2', '1',
                                  '--b1', '2', '--b2', '2', *PUNTO, '--method', 'series',
                                  '--format', 'csv')
    assert codigo == 0
    df = pd.read_csv(io.StringIO(salida))
    assert len(df) == 1
    assert {'target', 'method', 'value', 'est_error', 'diagnostics'} <= set(df.columns)
    assert df['method'][0] == 'series'
    print("✅ eval f2 correcto")


def test_eval_rational_and_negative_parameters():
    codigo, salida, _ = _ejecutar('eval', 'f2', '--sigma', '2', '--a1', '1', '--a2', '1',
                                  '--b1', '3/2', '--b2', '2', *PUNTO, '--method', 'series',
                                  '--format', 'json')
    assert codigo == 0
    esperado = f2_series(F2Params(2.0, 1.0, 1.0, 1.5, 2.0), EvalPoint(0.2, 0.3)).value
    assert json.loads(salida)['value'] == esperado

    # los negativos van pegados al flag
    codigo, salida, _ = _ejecutar('eval', 'f2', '--sigma', '1/2', '--a1=-1/2', '--a2', '1',
                                  '--b1=-1/2', '--b2', '2', *PUNTO, '--method', 'series',
                                  '--format', 'json')
    assert codigo == 0
    cerrada = 2.0 / 0.3 * (0.8 ** 0.5 - 0.5 ** 0.5)
    assert _rel(json.loads(salida)['value'], cerrada) < 1e-10


def test_eval_one_variable_targets():
    """Test 2f1, 3f2, table1 y table2"""
    print("\n🧪 Testing funciones de una variable...")
    codigo, salida, _ = _ejecutar('eval', '2f1', '--a', '1', '--b', '1', '--c', '2',
                                  '-z', '0.5', '--format', 'json')
    assert codigo == 0
    datos = json.loads(salida)
    assert datos['method'] == 'series'
    assert abs(datos['value'] - 2.0 * math.log(2.0)) < 1e-10

    codigo, salida, _ = _ejecutar('eval', '2f1', '--a', '1', '--b', '1', '--c', '2',
                                  '-z=-3', '--format', 'json')
    assert codigo == 0
    datos = json.loads(salida)
    assert datos['method'] == 'single-integral'
    assert abs(datos['value'] - math.log(4.0) / 3.0) < 1e-9

    codigo, salida, _ = _ejecutar('eval', '3f2', '--a1', '1', '--a2', '1', '--a3', '1',
                                  '--b1', '2', '--b2', '2', '-z', '0.5', '--format', 'json')
    assert codigo == 0
    # 3F2(1,1,1;2,2;z) = Li2(z)/z y Li2(1/2) = π²/12 - ln²2/2
    li2 = math.pi ** 2 / 12.0 - math.log(2.0) ** 2 / 2.0
    assert abs(json.loads(salida)['value'] - li2 / 0.5) < 1e-10

    codigo, salida, _ = _ejecutar('eval', 'table1', '--row', 'r1', '-z', '0.3',
                                  '--format', 'json')
    assert codigo == 0
    datos = json.loads(salida)
    assert datos['diagnostics']['a'] == 2.5 and datos['diagnostics']['b'] == 4.0
    serie = gauss2f1_series(HypParams2F1(2.5, 4.0, 1.0), 0.3).value
    assert _rel(datos['value'], serie) < 1e-9

    impresa = json.loads(_ejecutar('eval', 'table1', '--row', 'r3', '-z', '0.5',
                                   '--format', 'json')[1])
    corregida = json.loads(_ejecutar('eval', 'table1', '--row', 'r3', '-z', '0.5',
                                     '--corrected', '--format', 'json')[1])
    assert impresa['diagnostics']['c'] == 17.0 / 5.0
    assert corregida['diagnostics']['c'] == 17.0 / 6.0
    assert corregida['diagnostics']['corrected']
    assert impresa['value'] == corregida['value']
    serie = gauss2f1_series(HypParams2F1(5.0 / 6.0, 1.0, 17.0 / 6.0), 0.5).value
    assert _rel(corregida['value'], serie) < 1e-9

    codigo, salida, _ = _ejecutar('eval', 'table2', '-z', '0.4', '--format', 'json')
    assert codigo == 0
    assert _rel(json.loads(salida)['value'], clausen3f2_series(TABLE2_PARAMS, 0.4).value) < 1e-8
    print("✅ Funciones de una variable correctas")


def test_eval_family_and_f1():
    codigo, salida, _ = _ejecutar('eval', 'family', '--family', 'F1', *PUNTO,
                                  '--format', 'json', '--fp', '1', '1')
    assert codigo == 0
    datos = json.loads(salida)
    assert datos['diagnostics']['route'] == 'family F1'
    esperado = f2_series(family_params_to_f2('F1', (1.0, 1.0)), EvalPoint(0.2, 0.3)).value
    assert _rel(datos['value'], esperado) < 1e-10

    serie = _ejecutar('eval', 'f1', '--a', '1', '--b1', '1', '--b2', '1', '--gamma', '3',
                      '-x', '0.3', '-y', '0.3', '--format', 'json')
    cerrada = _ejecutar('eval', 'f1', '--a', '1', '--b1', '1', '--b2', '1', '--gamma', '3',
                        '-x', '0.3', '-y', '0.3', '--method', 'closed', '--format', 'json')
    assert serie[0] == 0 and cerrada[0] == 0
    assert _rel(json.loads(serie[1])['value'], json.loads(cerrada[1])['value']) < 1e-8


def test_usage_and_domain_errors():
    """Test errores de uso y de dominio con código 3"""
    print("\n🧪 Testing errores de uso...")
    # fuera del dominio de convergencia
    codigo, salida, errores = _ejecutar('eval', 'f2', '--sigma', '2', '--a1', '1', '--a2', '1',
                                        '--b1', '1', '--b2', '2', '-x', '0.6', '-y', '0.6')
    assert codigo == 3
    assert salida == ''
    assert errores.startswith('error:')

    casos = [
        ('eval', 'f2', '--sigma', '2', *PUNTO),
        ('eval', 'f9', *PUNTO),
        ('eval', 'f2', '--sigma', 'abc', '--a1', '1', '--a2', '1', '--b1', '1', '--b2', '2',
         *PUNTO),
        ('eval', '2f1', '--a', '1', '--b', '1', '--c', '2', '-z', '0.5',
         '--method', 'double-integral'),
        ('eval', 'f2', '--sigma', '2', '--a1', '1', '--a2', '1', '--b1', '0', '--b2', '2',
         *PUNTO),
        ('verify', '--nx', '0'),
        ('verify', '--corpus', '/no/existe/tablas.f2'),
        ('frobnicate',),
        (),
    ]
    for argv in casos:
        codigo, _, _ = _ejecutar(*argv)
        assert codigo == 3, argv

    assert _ejecutar('--help')[0] == 0
    print("✅ Errores de uso correctos")


def test_verify_small_corpus():
    """Test verify sobre un corpus temporal"""
    print("\n🧪 Testing verify con corpus...")
    ruta = _archivo_temporal(CORPUS_MINI)
    try:
        codigo, salida, _ = _ejecutar('verify', '--corpus', ruta, '--format', 'csv')
        assert codigo == 0
        df = pd.read_csv(io.StringIO(salida))
        assert len(df) == 2
        assert list(df['status']) == ['Pass', 'Pass']
        assert df['entry'][0] == 'línea 2: F2(2; 1, 1; 2, 2)'

        codigo, salida, _ = _ejecutar('verify', '--corpus', ruta, '--format', 'json',
                                      '--no-timestamp', '--verbose-points', *MALLA_CHICA)
        assert codigo == 0
        datos = json.loads(salida)
        assert datos['timestamp'] is None
        assert datos['grid']['nx'] == 4
        assert all(len(e['points']) == e['points_tested'] == 10 for e in datos['entries'])
    finally:
        os.unlink(ruta)

    roto = CORPUS_MINI + "2 | 1 | 1 | 2 | 2 | - | - | ln((1-x) | paréntesis abierto\n"
    ruta = _archivo_temporal(roto)
    try:
        codigo, salida, _ = _ejecutar('verify', '--corpus', ruta, '--format', 'json',
                                      '--no-timestamp')
        assert codigo == 1
        entradas = json.loads(salida)['entries']
        assert len(entradas) == 3
        assert entradas[-1]['entry'] == 'línea 4'
        assert entradas[-1]['status'] == 'Fail'
    finally:
        os.unlink(ruta)
    print("✅ verify con corpus correcto")


def test_verify_out_file():
    ruta = _archivo_temporal(CORPUS_MINI)
    fd, destino = tempfile.mkstemp(suffix='.json')
    os.close(fd)
    try:
        codigo, salida, _ = _ejecutar('verify', '--corpus', ruta, '--format', 'json',
                                      '--out', destino, *MALLA_CHICA)
        assert codigo == 0
        assert salida == ''
        with open(destino, encoding='utf-8') as f:
            datos = json.load(f)
        assert datos['summary']['Pass'] == 2
        assert datos['timestamp']
    finally:
        os.unlink(ruta)
        os.unlink(destino)


def test_verify_builtins():
    """Test verify de la suite integrada"""
    print("\n🧪 Testing verify --builtins...")
    assert _ejecutar('verify', '--builtins')[0] == 0

    codigo, salida, _ = _ejecutar('verify', '--builtins', *MALLA_CHICA)
    assert codigo == 0
    assert "RESUMEN:" in salida
    assert "  SuspectedMisprint: 0" in salida

    codigo, salida, _ = _ejecutar('verify', '--builtins', *MALLA_CHICA, '--format', 'json')
    assert codigo == 0
    datos = json.loads(salida)
    assert datos['summary']['SuspectedMisprint'] == 0
    nombres = [e['entry'] for e in datos['entries']]
    assert 'table1-r3 2F1(5/6, 1; 17/6; z)' in nombres
    assert not any('17/5' in nombre for nombre in nombres)
    print("✅ verify --builtins correcto")


def test_verify_shipped_corpus_is_deterministic():
    argv = ('verify', '--corpus', Config.PATHS['corpus'], '--format', 'json',
            '--no-timestamp', *MALLA_CHICA)
    primero = _ejecutar(*argv)
    segundo = _ejecutar(*argv)
    assert primero[0] == segundo[0] == 2
    assert primero[1] == segundo[1]
    assert _ejecutar(*argv, '--skip-registered')[0] == 0


def test_corpus_lint():
    """Test corpus-lint"""
    print("\n🧪 Testing corpus-lint...")
    codigo, salida, _ = _ejecutar('corpus-lint', Config.PATHS['corpus'])
    assert codigo == 0
    lineas = salida.strip().splitlines()
    assert lineas[-1] == f"{len(load_corpus())} entries"
    assert all(linea.startswith('OK    línea ') for linea in lineas[:-1])

    ruta = _archivo_temporal("")
    try:
        codigo, salida, _ = _ejecutar('corpus-lint', ruta)
        assert codigo == 0
        assert salida == "0 entries\n"
    finally:
        os.unlink(ruta)

    ruta = _archivo_temporal(CORPUS_MINI + "1 | 1 | 1 | 2 | 2 | - | - | 2*/x | operador doble\n")
    try:
        codigo, salida, _ = _ejecutar('corpus-lint', ruta)
        assert codigo == 1
        lineas = salida.strip().splitlines()
        assert lineas[-1] == "2 entries"
        assert lineas[2].startswith("ERROR línea 4: ")
        assert "byte 2" in lineas[2]
    finally:
        os.unlink(ruta)

    ruta = _archivo_temporal("2 | 1 | 1 | 2 | 2 | - | - | x\n")
    try:
        codigo, salida, _ = _ejecutar('corpus-lint', ruta)
        assert codigo == 1
        assert salida.startswith("ERROR línea 1: ")
    finally:
        os.unlink(ruta)
    print("✅ corpus-lint correcto")


def run_all_tests():
    """Ejecuta todos los tests"""
    print("🚀 INICIANDO TESTS DE LA LÍNEA DE COMANDOS")
    print("=" * 50)

    try:
        test_config()
        test_eval_f2()
        test_eval_rational_and_negative_parameters()
        test_eval_one_variable_targets()
        test_eval_family_and_f1()
        test_usage_and_domain_errors()
        test_verify_small_corpus()
        test_verify_out_file()
        test_verify_builtins()
        test_verify_shipped_corpus_is_deterministic()
        test_corpus_lint()

        print("\n" + "=" * 50)
        print("🎉 TODOS LOS TESTS PASARON EXITOSAMENTE")

    except Exception as e:
        print(f"\n❌ ERROR EN TESTS: {str(e)}")
        import traceback
        traceback.print_exc()
        return False

    return True


if __name__ == "__main__":
    success = run_all_tests()
    sys.exit(0 if success else 1)
