"""JSON formats for series matrices, Kisin modules and Hodge inputs.

Series matrix::

    {"field": {"p": 5, "m": 2, "poly": [2, 0, 1]}, "var": "u", "precision": 10,
     "entries": [[[[0, [1, 0]]], []], [[], [[1, [1]]]]]}

``entries[i][k]`` is a sparse list of ``[exponent, coefficients]`` pairs, the
coefficient vector being the element's coordinates in the basis 1, x, ...,
x^(m-1) (a bare integer is read as an element of the prime field).

Kisin module::

    {"p": 5, "f": 2, "n": 2, "e_K": 1, "height": 1, "field": {...},
     "precision": 18, "exponents": [7, 11], "orientation": [[2, 1], [1, 2]],
     "frobenius": [<entries of C^(0)>, <entries of C^(1)>]}

``precision`` is in powers of u = v^(p^f-1); the Frobenius matrices are in v
and default to v-precision ``precision * (p^f - 1)``. Each item of
``frobenius`` may also be a full series-matrix object. An optional
``characters`` key gives the per-component eigen-characters.

Hodge input::

    {"p": 5, "f": 1, "n": 2, "mu": [[1, 0]],
     "matrices": [[[[-5, 1], [0]], [[0], [1]]]]}

``matrices[j][r][c]`` lists ascending coefficients in u; each is an integer
or a string "a/b". ``mu[j]`` is a cocharacter (or a list of them, one per psi).
"""
from __future__ import annotations

import json
from fractions import Fraction

from .errors import KisinError, MalformedInput
from .fields import FieldSpec
from .hodge import HodgeInput
from .kisin import KisinModuleDD
from .matrix import SeriesMatrix
from .series import TruncSeries
from .tame import TameType


def _get(d, key, path):
    if not isinstance(d, dict):
        raise MalformedInput(path, "expected an object")
    if key not in d:
        raise MalformedInput(f"{path}.{key}", "missing")
    return d[key]


def _int(x, path) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise MalformedInput(path, f"expected an integer, got {x!r}")
    return x


def _list(x, path) -> list:
    if not isinstance(x, list):
        raise MalformedInput(path, f"expected a list, got {type(x).__name__}")
    return x


def field_from_json(d, path="$.field") -> FieldSpec:
    try:
        return FieldSpec(_int(_get(d, "p", path), f"{path}.p"), _int(_get(d, "m", path), f"{path}.m"),
                         tuple(_int(c, f"{path}.poly[{i}]")
                               for i, c in enumerate(_list(_get(d, "poly", path), f"{path}.poly"))))
    except MalformedInput:
        raise
    except ValueError as exc:
        raise MalformedInput(path, str(exc)) from None


def series_to_json(x: TruncSeries) -> list:
    return x.to_sparse()


def series_from_json(data, field: FieldSpec, prec: int, var: str, path: str) -> TruncSeries:
    terms = {}
    for t, item in enumerate(_list(data, path)):
        p = f"{path}[{t}]"
        if not isinstance(item, list) or len(item) != 2:
            raise MalformedInput(p, "expected [exponent, coefficients]")
        e = _int(item[0], p + "[0]")
        c = item[1]
        if isinstance(c, list):
            if len(c) > field.m:
                raise MalformedInput(p + "[1]", f"more than m = {field.m} coordinates")
            code = field.encode([_int(v, f"{p}[1][{i}]") for i, v in enumerate(c)])
        else:
            code = field.from_int(_int(c, p + "[1]"))
        if e in terms:
            raise MalformedInput(p, f"exponent {e} listed twice")
        terms[e] = code
    return TruncSeries(field, terms, prec, var)


def entries_from_json(data, field, prec, var, n, path) -> SeriesMatrix:
    rows = _list(data, path)
    if len(rows) != n:
        raise MalformedInput(path, f"expected {n} rows, got {len(rows)}")
    out = []
    for i, row in enumerate(rows):
        row = _list(row, f"{path}[{i}]")
        if len(row) != n:
            raise MalformedInput(f"{path}[{i}]", f"expected {n} entries, got {len(row)}")
        out.append([series_from_json(x, field, prec, var, f"{path}[{i}][{k}]") for k, x in enumerate(row)])
    return SeriesMatrix(out)


def matrix_to_json(M: SeriesMatrix) -> dict:
    return {"field": M.field.to_json(), "var": M.var, "precision": M.prec,
            "entries": [[series_to_json(x) for x in row] for row in M.rows]}


def matrix_from_json(d, path="$", field: FieldSpec | None = None) -> SeriesMatrix:
    if field is None or "field" in (d if isinstance(d, dict) else {}):
        field = field_from_json(_get(d, "field", path), f"{path}.field")
    var = _get(d, "var", path) if "var" in d else "u"
    if var not in ("u", "v", "t"):
        raise MalformedInput(f"{path}.var", f"unknown variable {var!r}")
    prec = _int(_get(d, "precision", path), f"{path}.precision")
    if prec < 1:
        raise MalformedInput(f"{path}.precision", "must be positive")
    entries = _list(_get(d, "entries", path), f"{path}.entries")
    return entries_from_json(entries, field, prec, var, len(entries), f"{path}.entries")


def module_to_json(M: KisinModuleDD) -> dict:
    out = {"p": M.tau.p, "f": M.f, "n": M.n, "e_K": M.e_K, "height": M.height,
           "field": M.field.to_json(), "precision": M.precision,
           "exponents": list(M.tau.exponents),
           "orientation": [list(s) for s in M.orientation],
           "frobenius": [{"precision": C.prec, "entries": [[series_to_json(x) for x in r] for r in C.rows]}
                         for C in M.frobenius]}
    if M.characters is not None:
        out["characters"] = [list(c) for c in M.characters]
    return out


def module_from_json(d, path="$") -> KisinModuleDD:
    p = _int(_get(d, "p", path), f"{path}.p")
    f = _int(_get(d, "f", path), f"{path}.f")
    n = _int(_get(d, "n", path), f"{path}.n")
    e_K = _int(d.get("e_K", 1), f"{path}.e_K")
    height = _int(d.get("height", 1), f"{path}.height")
    field = field_from_json(_get(d, "field", path), f"{path}.field")
    exps = [_int(a, f"{path}.exponents[{i}]") for i, a in enumerate(_list(_get(d, "exponents", path), f"{path}.exponents"))]
    if len(exps) != n:
        raise MalformedInput(f"{path}.exponents", f"expected n = {n} exponents")
    try:
        tau = TameType(p, f, exps)
    except ValueError as exc:
        raise MalformedInput(path, str(exc)) from None
    prec = _int(d["precision"], f"{path}.precision") if "precision" in d else None
    orient = _list(_get(d, "orientation", path), f"{path}.orientation")
    orient = [[_int(x, f"{path}.orientation[{j}][{i}]") for i, x in enumerate(_list(s, f"{path}.orientation[{j}]"))]
              for j, s in enumerate(orient)]
    frob_data = _list(_get(d, "frobenius", path), f"{path}.frobenius")
    if len(frob_data) != f:
        raise MalformedInput(f"{path}.frobenius", f"expected f = {f} matrices")
    from .kisin import default_precision
    u_prec = prec if prec is not None else default_precision(f, e_K, height)
    frob = []
    for j, item in enumerate(frob_data):
        pj = f"{path}.frobenius[{j}]"
        if isinstance(item, dict):
            vprec = _int(item.get("precision", u_prec * tau.order), f"{pj}.precision")
            frob.append(entries_from_json(_get(item, "entries", pj), field, vprec, "v", n, f"{pj}.entries"))
        else:
            frob.append(entries_from_json(item, field, u_prec * tau.order, "v", n, pj))
    chars = d.get("characters")
    try:
        return KisinModuleDD(tau, field, frob, orient, e_K, height, prec, chars)
    except KisinError:
        raise
    except ValueError as exc:
        raise MalformedInput(path, str(exc)) from None


def _rational(x, path) -> Fraction:
    if isinstance(x, bool):
        raise MalformedInput(path, "expected a rational number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            pass
    raise MalformedInput(path, f"expected an integer or 'a/b' string, got {x!r}")


def hodge_from_json(d, path="$") -> HodgeInput:
    p = _int(_get(d, "p", path), f"{path}.p")
    f = _int(_get(d, "f", path), f"{path}.f")
    n = _int(_get(d, "n", path), f"{path}.n")
    e_K = _int(d.get("e_K", 1), f"{path}.e_K")
    mu = _list(_get(d, "mu", path), f"{path}.mu")
    mats = []
    for j, M in enumerate(_list(_get(d, "matrices", path), f"{path}.matrices")):
        pj = f"{path}.matrices[{j}]"
        rows = []
        for r, row in enumerate(_list(M, pj)):
            entries = []
            for k, e in enumerate(_list(row, f"{pj}[{r}]")):
                pe = f"{pj}[{r}][{k}]"
                entries.append([_rational(c, f"{pe}[{t}]") for t, c in enumerate(_list(e, pe))])
            rows.append(entries)
        mats.append(rows)
    return HodgeInput(p, f, n, mu, mats, e_K)


def hodge_to_json(H: HodgeInput) -> dict:
    fmt = lambda c: c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    mu = [[list(v) for v in m] for m in H.mu]
    return {"p": H.p, "f": H.f, "n": H.n, "e_K": H.e_K, "mu": mu,
            "matrices": [[[[fmt(c) for c in e] for e in row] for row in M] for M in H.matrices]}


def load_json(path: str):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedInput("$", f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
