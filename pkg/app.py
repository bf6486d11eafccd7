"""
Línea de comandos del toolkit Appell F2

    python app.py eval f2 --sigma 2 --a1 1 --a2 1 --b1 1 --b2 2 -x 0.2 -y 0.3
    python app.py verify --builtins --format json --no-timestamp
    python app.py corpus-lint data/tables.f2

Códigos de salida: 0 todo pasa, 1 algún fallo, 2 errata sospechada,
3 error de uso, de dominio o de E/S.
"""

import argparse
import sys
from typing import Any, Dict, List, Optional

from config import Config
from formulas.corpus import load_corpus
from models.appell import (
    EvalPoint,
    F2Params,
    f1_series,
    f1_via_f2,
    f2_evaluate,
    f2_family_result,
)
from models.errors import AppellError, CorpusFormatError
from models.special import (
    HypParams2F1,
    HypParams3F2,
    clausen3f2_series,
    gauss2f1_euler,
    gauss2f1_series,
)
from models.tables import table1_closed_forms, table1_parameters, table2_closed_form
from utils.helpers import (
    format_float,
    get_logger,
    parse_number,
    parse_range,
    records_to_csv,
    safe_json_dumps,
    set_global_level,
)
from verification.builtin_suite import builtin_checks
from verification.verifier import (
    CorpusVerifier,
    EntryReport,
    EntryStatus,
    GridSpec,
    entry_check,
)

logger = get_logger('appell.cli')

EXIT = Config.EXIT_CODES


class UsageError(Exception):
    """Error de argumentos; se traduce al código 3"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _numero(texto: str) -> float:
    try:
        return parse_number(texto)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _rango(texto: str):
    try:
        return parse_range(texto)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _entero(texto: str) -> int:
    valor = _numero(texto)
    if not float(valor).is_integer():
        raise argparse.ArgumentTypeError(f"se esperaba un entero: {texto}")
    return int(valor)


# ---------------------------------------------------------------------------
# Construcción del parser
# ---------------------------------------------------------------------------

def _opciones_comunes(p: argparse.ArgumentParser):
    p.add_argument('-v', '--verbose', action='store_true', help="logging DEBUG")
    p.add_argument('-q', '--quiet', action='store_true', help="solo errores en stderr")


def _parser_eval(sub):
    p = sub.add_parser('eval', help="evalúa una función")
    p.add_argument('target', choices=['f2', '2f1', '3f2', 'f1', 'table1', 'table2', 'family'])
    # valores negativos con la forma --a1=-1/2
    for flag in ('--sigma', '--a1', '--a2', '--b1', '--b2', '--a', '--b', '--c',
                 '--a3', '--gamma'):
        p.add_argument(flag, type=_numero)
    p.add_argument('-x', type=_numero)
    p.add_argument('-y', type=_numero)
    p.add_argument('-z', type=_numero)
    p.add_argument('--method', default='auto',
                   choices=['auto', 'series', 'single-integral', 'double-integral', 'closed'])
    p.add_argument('--tol', type=_numero)
    p.add_argument('--row', choices=['r1', 'r2', 'r3', 'r4', 'r5', 'r6'])
    p.add_argument('--corrected', action='store_true',
                   help="forma corregida de las filas con errata registrada")
    p.add_argument('--m', type=_entero)
    p.add_argument('--n', type=_numero)
    p.add_argument('--family', choices=['F1', 'F2', 'F3', 'F4', 'F5', 'F6'])
    p.add_argument('--fp', type=_numero, nargs='+', default=[])
    p.add_argument('--format', default='text', choices=['text', 'json', 'csv'])
    _opciones_comunes(p)


def _parser_verify(sub):
    cfg = Config.VERIFICATION
    p = sub.add_parser('verify', help="verifica formas cerradas contra la serie")
    p.add_argument('--builtins', action='store_true')
    p.add_argument('--corpus')
    p.add_argument('--format', default='text', choices=['text', 'json', 'csv'])
    p.add_argument('--out')
    p.add_argument('--no-timestamp', action='store_true')
    p.add_argument('--pass-tol', type=_numero)
    p.add_argument('--oracle-tol', type=_numero)
    p.add_argument('--nx', type=_entero, default=cfg['grid_n'])
    p.add_argument('--ny', type=_entero, default=cfg['grid_n'])
    p.add_argument('--x-range', type=_rango, default=cfg['grid_range'])
    p.add_argument('--y-range', type=_rango, default=cfg['grid_range'])
    p.add_argument('--s-max', type=_numero, default=cfg['s_max'])
    p.add_argument('--workers', type=_entero)
    p.add_argument('--skip-registered', action='store_true')
    p.add_argument('--verbose-points', action='store_true')
    _opciones_comunes(p)


def _parser_lint(sub):
    p = sub.add_parser('corpus-lint', help="analiza un corpus sin evaluar")
    p.add_argument('path')
    _opciones_comunes(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='app.py', description=Config.APP_DESCRIPTION)
    sub = parser.add_subparsers(dest='command', required=True)
    _parser_eval(sub)
    _parser_verify(sub)
    _parser_lint(sub)
    return parser


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def _requeridos(args, *nombres: str):
    faltan = [n for n in nombres if getattr(args, n) is None]
    if faltan:
        raise UsageError(f"eval {args.target} requiere --{', --'.join(faltan)}")


def _punto(args) -> EvalPoint:
    _requeridos(args, 'x', 'y')
    return EvalPoint(args.x, args.y)


def _registro(args, valor: float, metodo: str, est_error: Optional[float],
              diagnostico: Dict[str, Any]) -> Dict[str, Any]:
    return {'target': args.target, 'method': metodo, 'value': valor,
            'est_error': est_error, 'diagnostics': diagnostico}


def _eval_f2(args) -> Dict[str, Any]:
    _requeridos(args, 'sigma', 'a1', 'a2', 'b1', 'b2')
    params = F2Params(args.sigma, args.a1, args.a2, args.b1, args.b2)
    resultado = f2_evaluate(params, _punto(args), args.method, args.tol)
    return _registro(args, resultado.value, resultado.method.value, resultado.est_error,
                     resultado.diagnostics)


def _eval_2f1(args) -> Dict[str, Any]:
    _requeridos(args, 'a', 'b', 'c', 'z')
    params = HypParams2F1(args.a, args.b, args.c)
    metodo = args.method
    if metodo == 'auto':
        metodo = 'series' if abs(args.z) < 1.0 else 'single-integral'
    if metodo == 'series':
        serie = gauss2f1_series(params, args.z, args.tol)
        return _registro(args, serie.value, 'series', serie.est_error,
                         {'terms_used': serie.terms_used, 'converged': serie.converged})
    if metodo == 'single-integral':
        valor = gauss2f1_euler(params, args.z, args.tol)
        return _registro(args, valor, 'single-integral', None, {'route': 'euler'})
    raise UsageError(f"eval 2f1 no admite --method {metodo}")


def _eval_3f2(args) -> Dict[str, Any]:
    _requeridos(args, 'a1', 'a2', 'a3', 'b1', 'b2', 'z')
    if args.method not in ('auto', 'series'):
        raise UsageError(f"eval 3f2 no admite --method {args.method}")
    params = HypParams3F2(args.a1, args.a2, args.a3, args.b1, args.b2)
    serie = clausen3f2_series(params, args.z, args.tol)
    return _registro(args, serie.value, 'series', serie.est_error,
                     {'terms_used': serie.terms_used, 'converged': serie.converged})


def _eval_f1(args) -> Dict[str, Any]:
    # F1(α; β, β'; γ) con --a, --b1, --b2, --gamma
    _requeridos(args, 'a', 'b1', 'b2', 'gamma')
    pt = _punto(args)
    if args.method in ('auto', 'series'):
        valor = f1_series(args.a, args.b1, args.b2, args.gamma, pt, args.tol)
        return _registro(args, valor, 'series', None, {})
    if args.method == 'closed':
        valor = f1_via_f2(args.a, args.b1, args.b2, args.gamma, pt, args.tol)
        return _registro(args, valor, 'closed', None, {'route': 'f2'})
    raise UsageError(f"eval f1 no admite --method {args.method}")


def _eval_table1(args) -> Dict[str, Any]:
    _requeridos(args, 'row', 'z')
    params = table1_parameters(args.row, b=args.b, m=args.m, n=args.n, corrected=args.corrected)
    valor = table1_closed_forms(args.row, args.z, b=args.b, m=args.m, n=args.n,
                                corrected=args.corrected)
    return _registro(args, valor, 'closed', None,
                     {'row': args.row, 'a': params.a, 'b': params.b, 'c': params.c,
                      'corrected': args.corrected})


def _eval_table2(args) -> Dict[str, Any]:
    _requeridos(args, 'z')
    return _registro(args, table2_closed_form(args.z), 'closed', None, {'row': 'table2'})


def _eval_family(args) -> Dict[str, Any]:
    _requeridos(args, 'family')
    resultado = f2_family_result(args.family, args.fp, _punto(args), args.tol)
    return _registro(args, resultado.value, resultado.method.value, resultado.est_error,
                     resultado.diagnostics)


_EVALUADORES = {
    'f2': _eval_f2,
    '2f1': _eval_2f1,
    '3f2': _eval_3f2,
    'f1': _eval_f1,
    'table1': _eval_table1,
    'table2': _eval_table2,
    'family': _eval_family,
}


def _formatear_registro(registro: Dict[str, Any], formato: str) -> str:
    if formato == 'json':
        return safe_json_dumps(registro, indent=2) + '\n'
    if formato == 'csv':
        plano = dict(registro)
        plano['diagnostics'] = safe_json_dumps(registro['diagnostics'], sort_keys=True)
        return records_to_csv([plano])
    return (f"value: {format_float(registro['value'])}\n"
            f"method: {registro['method']}\n"
            f"est_error: {format_float(registro['est_error'])}\n"
            f"diagnostics: {safe_json_dumps(registro['diagnostics'], sort_keys=True)}\n")


def cmd_eval(args) -> int:
    registro = _EVALUADORES[args.target](args)
    sys.stdout.write(_formatear_registro(registro, args.format))
    return EXIT['ok']


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _reporte_error_corpus(linea: int, error: Exception) -> EntryReport:
    return EntryReport(
        entry=f"línea {linea}",
        kind='corpus',
        status=EntryStatus.FAIL,
        points_tested=0,
        max_rel_error=None,
        max_abs_error=None,
        worst_point=None,
        eval_error_messages=[str(error)],
        note="no se pudo analizar la expresión"
    )


def cmd_verify(args) -> int:
    malla = GridSpec(args.nx, args.ny, tuple(args.x_range), tuple(args.y_range), args.s_max)
    usar_builtins = args.builtins or not args.corpus

    checks = []
    errores_corpus = []
    if usar_builtins:
        checks.extend(c for c in builtin_checks(malla)
                      if not (args.skip_registered and c.registered_misprint))
    if args.corpus:
        corpus = load_corpus(args.corpus)
        checks.extend(entry_check(e, malla) for e in corpus
                      if not (args.skip_registered and e.registered_misprint))
        errores_corpus = corpus.errors

    verificador = CorpusVerifier(args.pass_tol, args.oracle_tol, args.workers,
                                 args.verbose_points, not args.no_timestamp)
    reporte = verificador.run(checks, malla)
    reporte.entries.extend(_reporte_error_corpus(linea, e) for linea, e in errores_corpus)

    salida = {'json': reporte.to_json, 'csv': reporte.to_csv, 'text': reporte.to_text}[args.format]()
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(salida)
        logger.info(f"Reporte escrito en {args.out}")
    else:
        sys.stdout.write(salida)
    return reporte.exit_code()


# ---------------------------------------------------------------------------
# corpus-lint
# ---------------------------------------------------------------------------

def cmd_corpus_lint(args) -> int:
    try:
        corpus = load_corpus(args.path)
    except CorpusFormatError as e:
        sys.stdout.write(f"ERROR {e}\n")
        return EXIT['fail']

    lineas: List[tuple] = [(e.line, f"OK    {e.locator}") for e in corpus]
    lineas.extend((linea, f"ERROR línea {linea}: {error}")
                  for linea, error in corpus.errors)
    for _, texto in sorted(lineas, key=lambda t: t[0]):
        sys.stdout.write(texto + '\n')
    sys.stdout.write(f"{len(corpus)} entries\n")
    return EXIT['fail'] if corpus.errors else EXIT['ok']


_COMANDOS = {
    'eval': cmd_eval,
    'verify': cmd_verify,
    'corpus-lint': cmd_corpus_lint,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Punto de entrada; devuelve el código de salida"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT['error']
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    if args.verbose or args.quiet:
        nivel = 'DEBUG' if args.verbose else 'ERROR'
        # los loggers creados después también lo leen
        Config.LOGGING['level'] = nivel
        set_global_level(nivel)

    try:
        return _COMANDOS[args.command](args)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
    except AppellError as e:
        sys.stderr.write(f"error: {e}\n")
    except OSError as e:
        sys.stderr.write(f"error de E/S: {e}\n")
    return EXIT['error']


if __name__ == "__main__":
    sys.exit(main())
