"""
Suite integrada: cada identidad de la biblioteca como un check contra su oráculo
"""

from typing import List, Optional, Sequence, Tuple

from formulas.corpus import CorpusEntry, make_entry
from models.appell import (
    EvalPoint,
    F2Params,
    FamilyId,
    f1_series,
    f1_via_f2,
    f2_family_closed,
    f2_series,
    f2_single_integral,
    f2_theorem1_log,
    f2_theorem1_shift,
    family_expression,
    family_params_to_f2,
    swap_args,
    transform_x,
    transform_xy,
)
from models.special import (
    HypParams2F1,
    clausen3f2_series,
    gauss2f1_euler,
    gauss2f1_series,
)
from models.tables import (
    TABLE2_PARAMS,
    table1_closed_forms,
    table1_oracle,
    table1_rows,
    table2_closed_form,
)
from verification.verifier import (
    Check,
    CorpusVerifier,
    GridSpec,
    VerificationReport,
    entry_check,
    sample_grid,
)

THEOREM1_SHIFTS = (-0.5, 0.5, 1.0, 1.5, 2.0)
THEOREM1_PAIRS = ((1.0, 2.0), (0.5, 1.5), (2.0, 3.0))

SYMMETRY_PARAMS = (
    F2Params(2.0, 1.0, 3.0, 2.0, 4.0),
    F2Params(0.5, 0.5, 1.0, 1.5, 2.0),
    F2Params(1.5, -0.5, 2.0, 2.5, 3.0),
)
TRANSFORM_PARAMS = (
    F2Params(1.0, 1.0, 1.0, 2.0, 2.0),
    F2Params(0.5, 0.5, 1.0, 1.5, 2.0),
    F2Params(2.0, 0.5, 1.5, 3.0, 2.5),
)
F1_PARAMS = (
    (1.0, 1.0, 1.0, 3.0),
    (0.5, 1.0, 2.0, 4.0),
    (1.5, 0.5, 0.5, 2.5),
)
COLLAPSE_PARAMS = (
    F2Params(1.0, 1.0, 7.0, 2.0, 5.0),
    F2Params(2.5, -1.5, 0.5, 3.5, 1.5),
    F2Params(-0.5, 2.0, 1.0, 0.5, 2.0),
)
SINGLE_INTEGRAL_PARAMS = (
    F2Params(2.0, 1.0, 1.0, 2.0, 2.0),
    F2Params(0.5, 0.5, 1.0, 1.5, 2.0),
)
EULER_PARAMS = (
    HypParams2F1(1.0, 1.0, 2.0),
    HypParams2F1(1.0, 2.0, 4.0),
    HypParams2F1(-1.5, 0.5, 1.25),
)
FAMILY_SAMPLES: Tuple[Tuple[FamilyId, Tuple[float, ...]], ...] = (
    (FamilyId.F1, (1.0, 1.0)),
    (FamilyId.F2, (0.5, 1.5)),
    (FamilyId.F3, (2.5,)),
    (FamilyId.F4, (0.5,)),
    (FamilyId.F5, (1.5,)),
    (FamilyId.F6, (0.5,)),
)

TABLE1_R5 = (3.5, (1, 2, 3))
TABLE1_R6 = (3, 4, 5)

TRANSFORM_X_GRID = GridSpec(6, 6, (0.05, 0.3), (0.05, 0.35), 0.65)
TRANSFORM_XY_GRID = GridSpec(6, 6, (0.05, 0.4), (0.05, 0.4), 0.45)
F1_GRID = GridSpec(5, 5, (0.25, 0.45), (0.25, 0.45), 0.9)
COLLAPSE_GRID = GridSpec(6, 1, (0.1, 0.6), (0.0, 0.0), 1.0)


def _g(v: float) -> str:
    return format(v, 'g')


def _serie_f2(p: F2Params):
    def oraculo(pt: EvalPoint, tol: float) -> Tuple[float, bool]:
        resultado = f2_series(p, pt, tol)
        return resultado.value, resultado.diagnostics['converged']
    return oraculo


def _serie_1d(funcion, params):
    def oraculo(pt: EvalPoint, tol: float) -> Tuple[float, bool]:
        resultado = funcion(params, pt.x, tol)
        return resultado.value, resultado.converged
    return oraculo


def _puntos(g: GridSpec) -> Tuple[EvalPoint, ...]:
    return tuple(sample_grid(g))


def theorem1_checks(g: GridSpec) -> List[Check]:
    puntos = _puntos(g)
    checks = []
    for a in THEOREM1_SHIFTS:
        for alfa1, beta1 in THEOREM1_PAIRS:
            checks.append(Check(
                name=f"theorem1-shift(a={_g(a)}, alpha1={_g(alfa1)}, beta1={_g(beta1)})",
                closed=lambda pt, a=a, al=alfa1, be=beta1: f2_theorem1_shift(a, al, be, pt),
                oracle=_serie_f2(F2Params(a + 1.0, alfa1, 1.0, beta1, 2.0)),
                points=puntos
            ))
    for alfa1, beta1 in THEOREM1_PAIRS:
        checks.append(Check(
            name=f"theorem1-log(alpha1={_g(alfa1)}, beta1={_g(beta1)})",
            closed=lambda pt, al=alfa1, be=beta1: f2_theorem1_log(al, be, pt),
            oracle=_serie_f2(F2Params(1.0, alfa1, 1.0, beta1, 2.0)),
            points=puntos
        ))
    return checks


def table_checks(printed: bool = False) -> List[Check]:
    """
    Checks de las tablas de una variable. Las filas con errata registrada se
    verifican en su forma corregida salvo con printed=True, que usa la impresa
    y deja la fila registrada.
    """
    puntos = _puntos(GridSpec.z_line())
    checks = []

    def _fila(row, nombre, **kwargs):
        corregida = row.registered_misprint and not printed
        return Check(
            name=nombre,
            closed=lambda pt: table1_closed_forms(row.row_id, pt.x, corrected=corregida, **kwargs),
            oracle=lambda pt, tol: (table1_oracle(row.row_id, pt.x, tol, corrected=corregida,
                                                  **kwargs), True),
            points=puntos,
            registered_misprint=row.registered_misprint and printed,
            note="" if corregida else row.note
        )

    for row in table1_rows():
        if row.row_id == 'r5':
            b, ms = TABLE1_R5
            for m in ms:
                checks.append(_fila(row, f"table1-r5(b={_g(b)}, m={m})", b=b, m=m))
        elif row.row_id == 'r6':
            for n in TABLE1_R6:
                checks.append(_fila(row, f"table1-r6(n={n})", n=n))
        else:
            etiqueta = row.display_label(corrected=not printed)
            checks.append(_fila(row, f"table1-{row.row_id} {etiqueta}"))

    checks.append(Check(
        name="table2 3F2(1/4, 1, 1; 5/4, 2; z)",
        closed=lambda pt: table2_closed_form(pt.x),
        oracle=_serie_1d(clausen3f2_series, TABLE2_PARAMS),
        points=puntos
    ))
    return checks


def euler_checks() -> List[Check]:
    puntos = _puntos(GridSpec.z_line())
    return [
        Check(
            name=f"2f1-euler(a={_g(p.a)}, b={_g(p.b)}, c={_g(p.c)})",
            closed=lambda pt, p=p: gauss2f1_euler(p, pt.x),
            oracle=_serie_1d(gauss2f1_series, p),
            points=puntos
        )
        for p in EULER_PARAMS
    ]


def property_checks(g: GridSpec) -> List[Check]:
    checks = []
    puntos = _puntos(g)

    for p in SYMMETRY_PARAMS:
        checks.append(Check(
            name=f"symmetry F2{tuple(_g(v) for v in p.as_tuple())}",
            closed=lambda pt, p=p: f2_series(*swap_args(p, pt)).value,
            oracle=_serie_f2(p),
            points=puntos
        ))

    for nombre, transformacion, malla in (('transform-x', transform_x, TRANSFORM_X_GRID),
                                          ('transform-xy', transform_xy, TRANSFORM_XY_GRID)):
        for p in TRANSFORM_PARAMS:
            def cerrada(pt: EvalPoint, p=p, t=transformacion) -> float:
                escala, nuevos, punto = t(p, pt)
                return escala * f2_series(nuevos, punto).value
            checks.append(Check(
                name=f"{nombre} F2{tuple(_g(v) for v in p.as_tuple())}",
                closed=cerrada,
                oracle=_serie_f2(p),
                points=_puntos(malla)
            ))

    for alfa, beta, beta_p, gamma in F1_PARAMS:
        checks.append(Check(
            name=f"f1-via-f2(alpha={_g(alfa)}, beta={_g(beta)}, "
                 f"beta'={_g(beta_p)}, gamma={_g(gamma)})",
            closed=lambda pt, a=alfa, b=beta, bp=beta_p, c=gamma: f1_via_f2(a, b, bp, c, pt),
            oracle=lambda pt, tol, a=alfa, b=beta, bp=beta_p, c=gamma:
                (f1_series(a, b, bp, c, pt, tol), True),
            points=_puntos(F1_GRID)
        ))

    for p in COLLAPSE_PARAMS:
        checks.append(Check(
            name=f"collapse-y0 F2{tuple(_g(v) for v in p.as_tuple())}",
            closed=lambda pt, p=p: f2_series(p, pt).value,
            oracle=_serie_1d(gauss2f1_series, HypParams2F1(p.sigma, p.alpha1, p.beta1)),
            points=_puntos(COLLAPSE_GRID)
        ))

    for p in SINGLE_INTEGRAL_PARAMS:
        checks.append(Check(
            name=f"single-integral F2{tuple(_g(v) for v in p.as_tuple())}",
            closed=lambda pt, p=p: f2_single_integral(p, pt).value,
            oracle=_serie_f2(p),
            points=puntos
        ))
    return checks


def family_checks(g: GridSpec) -> List[Check]:
    puntos = _puntos(g)
    return [
        Check(
            name=f"family-{fid.value}{tuple(_g(v) for v in fp)}",
            closed=lambda pt, fid=fid, fp=fp: f2_family_closed(fid, fp, pt),
            oracle=_serie_f2(family_params_to_f2(fid, fp)),
            points=puntos
        )
        for fid, fp in FAMILY_SAMPLES
    ]


def family_corpus(samples: Sequence[Tuple[FamilyId, Sequence[float]]] = FAMILY_SAMPLES
                  ) -> List[CorpusEntry]:
    """Las familias nativas escritas como entradas del lenguaje de fórmulas"""
    return [
        make_entry(family_params_to_f2(fid, fp), family_expression(fid, fp),
                   source_note=f"familia {fid.value}")
        for fid, fp in samples
    ]


def builtin_checks(g: Optional[GridSpec] = None) -> List[Check]:
    g = g or GridSpec.default()
    return (theorem1_checks(g) + table_checks() + euler_checks()
            + property_checks(g) + family_checks(g))


def verify_builtins(g: Optional[GridSpec] = None, pass_tol: Optional[float] = None,
                    oracle_tol: Optional[float] = None, workers: Optional[int] = None,
                    skip_registered: bool = False, include_timestamp: bool = True,
                    verbose_points: bool = False) -> VerificationReport:
    """
    Ejecuta la suite integrada. Las filas de tabla con errata registrada
    entran en su forma corregida.
    """
    g = g or GridSpec.default()
    checks = [c for c in builtin_checks(g) if not (skip_registered and c.registered_misprint)]
    verificador = CorpusVerifier(pass_tol, oracle_tol, workers, verbose_points, include_timestamp)
    return verificador.run(checks, g)


def family_corpus_checks(g: Optional[GridSpec] = None) -> List[Check]:
    g = g or GridSpec.default()
    return [entry_check(e, g) for e in family_corpus()]
