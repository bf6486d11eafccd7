"""
Tests del lenguaje de fórmulas: analizador, evaluador, renderizado y corpus
"""

import io
import math
import os
import re
import sys
import tempfile

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

try:
    from config import Config
    from formulas.corpus import (
        REGISTERED_MISPRINT_TAG,
        Domain,
        load_corpus,
        make_entry,
        parse_corpus_text,
    )
    from formulas.expr import (
        Add,
        Constant,
        Div,
        Func,
        Mul,
        Neg,
        Pow,
        Sub,
        Var,
        count_constants,
        eval_expr,
        mutate_constant,
        render_expr,
    )
    from formulas.parser import parse_expr, tokenize
    from models.appell import F2Params
    from models.errors import CorpusFormatError, EvalError, ParseError
    from utils.helpers import parse_number
    print("✅ Módulos del lenguaje de fórmulas importados")
except ImportError as e:
    print(f"❌ Error importando módulos: {e}")
    sys.exit(1)

FILA_LN = "2 | 1 | 1 | 2 | 2 | - | - | ln((1-x)*(1-y)/(1-x-y))/(x*y) | fila logarítmica"


def test_parse_structure():
    """Test precedencia y asociatividad"""
    print("\n🧪 Testing analizador...")
    assert parse_expr("x + y * 2") == Add(Var('x'), Mul(Var('y'), Constant(2.0)))
    assert parse_expr("x - y - 1") == Sub(Sub(Var('x'), Var('y')), Constant(1.0))
    assert parse_expr("x / y / 2") == Div(Div(Var('x'), Var('y')), Constant(2.0))
    assert parse_expr("-x^2") == Neg(Pow(Var('x'), Constant(2.0)))
    assert parse_expr("-x*y") == Mul(Neg(Var('x')), Var('y'))
    assert parse_expr("x*-y") == Mul(Var('x'), Neg(Var('y')))
    assert parse_expr("-x/y") == Div(Neg(Var('x')), Var('y'))
    assert parse_expr("-x + y") == Add(Neg(Var('x')), Var('y'))
    assert parse_expr("x^y^2") == Pow(Var('x'), Pow(Var('y'), Constant(2.0)))
    assert parse_expr("(1-x)^(-1/2)") == Pow(
        Sub(Constant(1.0), Var('x')),
        Div(Neg(Constant(1.0)), Constant(2.0))
    )
    assert parse_expr("sqrt(x)") == Func('sqrt', Var('x'))
    assert parse_expr("  2.5e-1 ") == Constant(0.25)
    print("✅ Estructura correcta")


def test_parse_and_evaluate_table_rows():
    e = parse_expr("2/y * ((1-x-y)^(-1/2) - (1-x)^(-1/2))")
    esperado = 2.0 / 0.3 * (0.5 ** -0.5 - 0.8 ** -0.5)
    assert abs(eval_expr(e, 0.2, 0.3) - esperado) < 1e-14

    assert abs(eval_expr(parse_expr("ln((1-x)*(1-y)/(1-x-y))/(x*y)"), 0.2, 0.3)
               - math.log(1.12) / 0.06) < 1e-14
    assert abs(eval_expr(parse_expr("arctanh(0.5)"), 0.0, 0.0) - 0.5 * math.log(3.0)) < 1e-15
    assert abs(eval_expr(parse_expr("arcsin(1)"), 0.0, 0.0) - math.pi / 2.0) < 1e-15
    assert eval_expr(parse_expr("(x-1)^2"), 0.5, 0.0) == 0.25


def test_parse_errors_report_offsets():
    """Test desplazamientos en bytes y símbolos esperados"""
    print("\n🧪 Testing errores de análisis...")
    casos = {
        "2*/x": 2,
        "sqrt(x": 6,
        "foo(x)": 0,
        "x^-1": 2,
        "x + ñ": 4,
        "(x))": 3,
        "": 0,
        "1e5000": 0,
    }
    for texto, offset in casos.items():
        with pytest.raises(ParseError) as info:
            parse_expr(texto)
        assert info.value.offset == offset, texto

    with pytest.raises(ParseError) as info:
        parse_expr("sqrt(x")
    assert ')' in info.value.expected

    # el desplazamiento cuenta bytes, no caracteres
    with pytest.raises(ParseError) as info:
        parse_expr("é")
    assert info.value.offset == 0
    tokens = tokenize("x  +\ty")
    assert [t.offset for t in tokens] == [0, 3, 5, 6]
    print("✅ Errores con desplazamiento correcto")


def test_deep_nesting_is_parse_error():
    with pytest.raises(ParseError):
        parse_expr("(" * 5000 + "x" + ")" * 5000)


def test_eval_errors_name_node():
    """Test errores de evaluación fuera del dominio real"""
    print("\n🧪 Testing errores de evaluación...")
    with pytest.raises(EvalError) as info:
        eval_expr(parse_expr("sqrt(x-1)"), 0.5, 0.0)
    assert info.value.node == "sqrt((x - 1.0))"

    for texto in ("ln(0)", "sqrt(0)", "ln(x-1)", "(x-1)^(1/2)", "1/(x-x)",
                  "arcsin(2)", "arctanh(1)", "0^(-1)"):
        with pytest.raises(EvalError):
            eval_expr(parse_expr(texto), 0.5, 0.5)
    print("✅ Errores de evaluación correctos")


def test_requires_positive_base():
    assert parse_expr("(1-x)^(1/2)").requires_positive_base
    assert not parse_expr("(1-x)^2").requires_positive_base
    assert not parse_expr("(1-x)^(4/2)").requires_positive_base
    assert not parse_expr("2^x").requires_positive_base


def test_render_examples():
    assert render_expr(parse_expr("x+1")) == "(x + 1.0)"
    assert render_expr(Neg(Constant(2.0))) == "(-2.0)"
    with pytest.raises(ValueError):
        Constant(-2.0)
    with pytest.raises(ValueError):
        Constant(-0.0)
    texto = render_expr(parse_expr("2/y*((1-x-y)^(-1/2) - (1-x)^(-1/2))"))
    assert parse_expr(texto) == parse_expr("2/y*((1-x-y)^(-1/2) - (1-x)^(-1/2))")


_hojas = st.one_of(
    st.floats(min_value=0.0, max_value=1e6, allow_nan=False, allow_infinity=False)
    .map(abs).map(Constant),
    st.sampled_from([Var('x'), Var('y')]),
)

_arboles = st.recursive(
    _hojas,
    lambda hijos: st.one_of(
        hijos.map(Neg),
        st.builds(Add, hijos, hijos),
        st.builds(Sub, hijos, hijos),
        st.builds(Mul, hijos, hijos),
        st.builds(Div, hijos, hijos),
        st.builds(Pow, hijos, hijos),
        st.builds(Func, st.sampled_from(['sqrt', 'ln', 'arcsin', 'arctan', 'arctanh']), hijos),
    ),
    max_leaves=20,
)


@settings(max_examples=200, deadline=None)
@given(_arboles)
def test_render_round_trip(arbol):
    assert parse_expr(render_expr(arbol)) == arbol


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet='xy0123456789.e+-*/^() sqrtlnaci_ñ', max_size=40))
def test_parser_totality(texto):
    try:
        parse_expr(texto)
    except ParseError as e:
        assert 0 <= e.offset <= len(texto.encode('utf-8'))


def test_mutate_constant():
    """Test direccionamiento en preorden de constantes"""
    e = parse_expr("2*x + 3")
    assert count_constants(e) == 2
    assert eval_expr(mutate_constant(e, 1, 2.0), 1.0, 0.0) == 8.0
    assert eval_expr(mutate_constant(e, 0, 1.5), 1.0, 0.0) == 6.0
    assert eval_expr(e, 1.0, 0.0) == 5.0

    potencia = parse_expr("2^3")
    assert mutate_constant(potencia, 1, 2.0) == Pow(Constant(2.0), Constant(6.0))

    # un factor negativo deja el signo en Neg y el texto vuelve al mismo árbol
    negada = mutate_constant(e, 0, -1.5)
    assert negada == Add(Mul(Neg(Constant(3.0)), Var('x')), Constant(3.0))
    assert parse_expr(render_expr(negada)) == negada
    assert eval_expr(negada, 1.0, 0.0) == 0.0
    exponente = mutate_constant(parse_expr("(1-x)^(-1/2)"), 2, -1.0)
    assert parse_expr(render_expr(exponente)) == exponente
    assert mutate_constant(parse_expr("x*0"), 0, -1.0) == Mul(Var('x'), Neg(Constant(0.0)))
    with pytest.raises(IndexError):
        mutate_constant(e, 2, 2.0)


def test_corpus_empty_and_errors():
    """Test contrato de carga: vacío, entradas válidas y errores por entrada"""
    print("\n🧪 Testing carga del corpus...")
    vacio = parse_corpus_text("")
    assert len(vacio) == 0
    assert vacio.errors == []

    texto = "\n".join([
        "# comentario",
        FILA_LN,
        "2 | 1 | 1 | 1 | 2 | - | - | 1/y*((1-x-y)^(-1) - | fila rota",
        "2 | 1 | 1 | 1 | 2 | 0.1,0.3 | 0.1,0.3 | 1/y*((1-x-y)^(-1) - (1-x)^(-1)) | familia",
    ])
    corpus = parse_corpus_text(texto, 'prueba')
    assert len(corpus) == 2
    assert len(corpus.errors) == 1
    assert corpus.errors[0][0] == 3
    assert [e.line for e in corpus] == [2, 4]
    assert corpus[0].params == F2Params(2.0, 1.0, 1.0, 2.0, 2.0)
    assert corpus[1].domain == Domain(0.1, 0.3, 0.1, 0.3, True)
    assert corpus[0].domain.x_min == Config.VERIFICATION['grid_range'][0]
    assert corpus[0].locator == "línea 2: F2(2; 1, 1; 2, 2)"
    print("✅ Contrato de carga correcto")


def test_corpus_structural_errors():
    for texto in ("2 | 1 | 1 | 2 | 2 | - | - | x",
                  "2 | uno | 1 | 2 | 2 | - | - | x | nota",
                  "2 | 1 | 1 | -1 | 2 | - | - | x | nota",
                  "2 | 1 | 1 | 2 | 2 | 0.6,0.3 | - | x | nota",
                  "2 | 1 | 1 | 2 | 2 | 0.6,0.7 | 0.5,0.6 | x | nota",
                  "2 | 1 | 1 | 2 | 2 | - | - |  | nota",
                  "2 | 1 | 1 | 2 | 2 | - | - | x \\"):
        with pytest.raises(CorpusFormatError) as info:
            parse_corpus_text("# cabecera\n" + texto)
        assert info.value.line == 2


def test_corpus_rationals_and_continuation():
    texto = ("1/2 | -1/2 | 1 | -1/2 | 2 | - | - | 2/y*((1-x)^(1/2) \\\n"
             "    - (1-x-y)^(1/2)) | continuación\n")
    corpus = parse_corpus_text(texto)
    assert len(corpus) == 1
    entrada = corpus[0]
    assert entrada.line == 1
    assert entrada.params == F2Params(0.5, -0.5, 1.0, -0.5, 2.0)
    assert entrada.param_text == ('1/2', '-1/2', '1', '-1/2', '2')
    assert abs(eval_expr(entrada.expr, 0.2, 0.3)
               - 2.0 / 0.3 * (0.8 ** 0.5 - 0.5 ** 0.5)) < 1e-14


def test_load_corpus_sources():
    corpus = load_corpus(io.StringIO(FILA_LN + "\n"))
    assert len(corpus) == 1

    with tempfile.TemporaryDirectory() as tmp:
        ruta = os.path.join(tmp, 'mini.f2')
        with open(ruta, 'w', encoding='utf-8') as f:
            f.write(FILA_LN + "\n")
        assert len(load_corpus(ruta)) == 1
        with pytest.raises(OSError):
            load_corpus(os.path.join(tmp, 'no_existe.f2'))


def test_shipped_corpus():
    """Test corpus incluido: cobertura de σ, funciones y erratas registradas"""
    print("\n🧪 Testing corpus incluido...")
    corpus = load_corpus()
    assert len(corpus) >= 40
    assert corpus.errors == []

    sigmas = {e.params.sigma for e in corpus}
    for sigma in (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 1.25, 4 / 3, 5 / 3):
        assert any(abs(s - sigma) < 1e-12 for s in sigmas), sigma

    textos = " ".join(e.expr_text for e in corpus)
    for funcion in ('sqrt(', 'ln(', 'arcsin(', 'arctan(', 'arctanh('):
        assert funcion in textos

    registradas = [e for e in corpus if e.registered_misprint]
    assert len(registradas) == 4
    assert all(REGISTERED_MISPRINT_TAG in e.source_note for e in registradas)
    claves = {(e.params.sigma, e.params.alpha1, e.params.beta1) for e in registradas}
    assert claves == {(3.5, 2.0, 1.0), (1.5, 1.0, 1.5), (1.0, 1.0, 3.0), (1.4, 1.0, 1.4)}

    with open(Config.PATHS['corpus'], encoding='utf-8') as f:
        crudas = f.read().splitlines()
    inicios = [i + 1 for i, linea in enumerate(crudas)
               if linea.rstrip().endswith('\\') and not (i and crudas[i - 1].rstrip().endswith('\\'))]
    assert len(inicios) >= 3
    lineas = {e.line for e in corpus}
    assert all(inicio in lineas for inicio in inicios)

    for entrada in corpus:
        valor = eval_expr(entrada.expr, 0.2, 0.3)
        assert math.isfinite(valor)
    print(f"✅ Corpus incluido con {len(corpus)} entradas")


def test_shipped_corpus_row_locators():
    """Test cada fila del corpus incluido lleva bloque y posición"""
    print("\n🧪 Testing localizadores de filas...")
    patron = re.compile(r'^bloque sigma=(\S+), fila (\d+)\b')
    filas_por_bloque = {}
    for entrada in load_corpus():
        coincidencia = patron.match(entrada.source_note)
        assert coincidencia, entrada.locator
        bloque, fila = coincidencia.group(1), int(coincidencia.group(2))
        assert parse_number(bloque) == entrada.params.sigma, entrada.locator
        filas_por_bloque.setdefault(bloque, []).append(fila)

    for bloque, filas in filas_por_bloque.items():
        assert filas == list(range(1, len(filas) + 1)), bloque
    print(f"✅ {len(filas_por_bloque)} bloques con filas numeradas")


def test_make_entry():
    entrada = make_entry(F2Params(2.0, 1.0, 1.0, 1.0, 2.0),
                         "1/y*((1-x-y)^(-1) - (1-x)^(-1))",
                         source_note=f"prueba; {REGISTERED_MISPRINT_TAG}")
    assert entrada.registered_misprint
    assert entrada.locator == "F2(2.0; 1.0, 1.0; 1.0, 2.0)"
    with pytest.raises(ParseError):
        make_entry(F2Params(2.0, 1.0, 1.0, 1.0, 2.0), "1/y*(")


def run_all_tests():
    """Ejecuta todos los tests"""
    print("🚀 INICIANDO TESTS DEL LENGUAJE DE FÓRMULAS")
    print("=" * 50)

    try:
        test_parse_structure()
        test_parse_and_evaluate_table_rows()
        test_parse_errors_report_offsets()
        test_deep_nesting_is_parse_error()
        test_eval_errors_name_node()
        test_requires_positive_base()
        test_render_examples()
        test_render_round_trip()
        test_parser_totality()
        test_mutate_constant()
        test_corpus_empty_and_errors()
        test_corpus_structural_errors()
        test_corpus_rationals_and_continuation()
        test_load_corpus_sources()
        test_shipped_corpus()
        test_shipped_corpus_row_locators()
        test_make_entry()

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
