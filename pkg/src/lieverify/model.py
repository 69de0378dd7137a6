"""The built-in 9-dimensional example and the JSON algebra file format.

File format (UTF-8 JSON)::

    {
      "name": "g",
      "dim": 9,
      "basis": ["z", "b", ...],
      "brackets": [{"i": 1, "j": 0, "coeffs": {"0": "2"}}, ...],
      "subalgebra": [["0", "0", "1", ...], ...],      # optional
      "complement": [[...], ...],                      # optional
      "acs": [[...], ...]                              # optional, matrix on the complement
      "metric": [[...], ...]                           # optional, Gram matrix on the complement
    }

Rationals are strings ``"p/q"`` (plain integers are also accepted); floats
are rejected. Unlisted brackets are zero and ``[e_j, e_i]`` is filled in by
antisymmetry.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .lie import LieAlgebra, Subalgebra
from .linalg import Matrix, as_fraction, vec

__all__ = [
    "AlgebraFile",
    "AlgebraFileError",
    "BASIS",
    "M_LABELS",
    "ErratumModel",
    "builtin_erratum_model",
    "dump_algebra_file",
    "load_algebra_file",
    "parse_algebra_file",
    "to_algebra_file",
]

BASIS = ("z", "b", "x1", "x2", "x3", "x4", "h", "e", "f")
M_LABELS = ("z", "b", "e", "x2", "x3", "x4")

# (left, right, {result: coefficient}), written exactly as the structure
# equations list them
_BRACKETS = [
    ("b", "x1", {"x1": 1}), ("b", "x2", {"x2": 1}), ("b", "x3", {"x3": 1}), ("b", "x4", {"x4": 1}),
    ("b", "z", {"z": 2}),
    ("h", "x1", {"x1": -3}), ("h", "x2", {"x2": -1}), ("h", "x3", {"x3": 1}), ("h", "x4", {"x4": 3}),
    ("f", "x2", {"x1": -3}), ("f", "x3", {"x2": -2}), ("f", "x4", {"x3": -1}),
    ("e", "x1", {"x2": 1}), ("e", "x2", {"x3": 2}), ("e", "x3", {"x4": 3}),
    ("x1", "x4", {"z": 1}), ("x2", "x3", {"z": -3}),
    ("h", "f", {"f": -2}), ("h", "e", {"e": 2}), ("f", "e", {"h": 1}),
]


class AlgebraFileError(ValueError):
    """Malformed algebra file; ``where`` names the offending field."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


@dataclass(frozen=True)
class ErratumModel:
    g: LieAlgebra
    l1: Subalgebra
    m_basis: tuple
    J0: Matrix
    metric: Matrix


def _idx(name: str) -> int:
    return BASIS.index(name)


def builtin_brackets() -> dict:
    return {(_idx(a), _idx(b)): {_idx(k): v for k, v in res.items()} for a, b, res in _BRACKETS}


def builtin_algebra() -> LieAlgebra:
    return LieAlgebra.from_brackets(9, builtin_brackets(), BASIS, "g")


def builtin_erratum_model() -> ErratumModel:
    g = builtin_algebra()
    l1 = Subalgebra(g, (g.vector(x1=1), g.vector(h=1, b=-1), g.vector(f=1, z=-1)),
                    ("x1", "h-b", "f-z"))
    m_basis = tuple(g.vector(**{name: 1}) for name in M_LABELS)
    # columns: J z = x2, J b = -x3, J e = x4, J x2 = -z, J x3 = b, J x4 = -e
    images = {"z": ("x2", 1), "b": ("x3", -1), "e": ("x4", 1),
              "x2": ("z", -1), "x3": ("b", 1), "x4": ("e", -1)}
    cols = []
    for name in M_LABELS:
        target, sign = images[name]
        col = [Fraction(0)] * 6
        col[M_LABELS.index(target)] = Fraction(sign)
        cols.append(col)
    J0 = Matrix.from_columns(cols)
    G = [[Fraction(0)] * 6 for _ in range(6)]
    half = Fraction(1, 2)
    for a, b, v in (("e", "z", half), ("x2", "x4", half), ("b", "b", -1), ("x3", "x3", -1)):
        i, j = M_LABELS.index(a), M_LABELS.index(b)
        G[i][j] = G[j][i] = Fraction(v)
    return ErratumModel(g, l1, m_basis, J0, Matrix(G))


def abelian_model(n: int = 6) -> dict:
    """Abelian algebra with trivial isotropy and a standard complex structure."""
    g = LieAlgebra.abelian(n)
    cols = []
    for k in range(n):
        col = [Fraction(0)] * n
        if k % 2 == 0:
            col[k + 1] = Fraction(1)
        else:
            col[k - 1] = Fraction(-1)
        cols.append(col)
    return {"g": g, "subalgebra": (), "complement": tuple(g.basis_vector(i) for i in range(n)),
            "acs": Matrix.from_columns(cols)}


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraFile:
    name: str
    algebra: LieAlgebra
    subalgebra: tuple | None = None
    complement: tuple | None = None
    acs: Matrix | None = None
    metric: Matrix | None = None


def _rational(x, where: str) -> Fraction:
    if not isinstance(x, (str, int)) or isinstance(x, bool):
        raise AlgebraFileError(where, f"expected a rational string 'p/q', got {x!r}")
    try:
        return as_fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise AlgebraFileError(where, f"malformed rational {x!r}") from exc


def _vectors(data, n: int, where: str) -> tuple:
    if not isinstance(data, list):
        raise AlgebraFileError(where, "expected a list of coordinate vectors")
    out = []
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n:
            raise AlgebraFileError(f"{where}[{r}]", f"expected {n} coordinates")
        out.append(tuple(_rational(x, f"{where}[{r}][{c}]") for c, x in enumerate(row)))
    return tuple(out)


def parse_algebra_file(data: dict) -> AlgebraFile:
    if not isinstance(data, dict):
        raise AlgebraFileError("<root>", "expected a JSON object")
    try:
        n = data["dim"]
    except KeyError:
        raise AlgebraFileError("dim", "missing") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise AlgebraFileError("dim", f"expected a non-negative integer, got {n!r}")
    labels = data.get("basis")
    if labels is None:
        labels = [f"e{i}" for i in range(n)]
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels):
        raise AlgebraFileError("basis", f"expected {n} label strings")
    brackets = {}
    seen = set()
    for pos, entry in enumerate(data.get("brackets", [])):
        where = f"brackets[{pos}]"
        if not isinstance(entry, dict):
            raise AlgebraFileError(where, "expected an object")
        i, j = entry.get("i"), entry.get("j")
        for key, v in (("i", i), ("j", j)):
            if not isinstance(v, int) or isinstance(v, bool):
                raise AlgebraFileError(f"{where}.{key}", f"expected an integer index, got {v!r}")
            if not 0 <= v < n:
                raise AlgebraFileError(f"{where}.{key}", f"index {v} out of range")
        if i == j:
            raise AlgebraFileError(where, f"bracket of e{i} with itself must not be listed")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise AlgebraFileError(where, f"duplicate bracket ({i},{j})")
        seen.add(key)
        coeffs = entry.get("coeffs", {})
        if not isinstance(coeffs, dict):
            raise AlgebraFileError(f"{where}.coeffs", "expected an object")
        parsed = {}
        for k, v in coeffs.items():
            try:
                kk = int(k)
            except ValueError:
                raise AlgebraFileError(f"{where}.coeffs", f"bad index {k!r}") from None
            if not 0 <= kk < n:
                raise AlgebraFileError(f"{where}.coeffs", f"index {kk} out of range")
            parsed[kk] = _rational(v, f"{where}.coeffs[{k}]")
        brackets[(i, j)] = parsed
    name = data.get("name", "")
    algebra = LieAlgebra.from_brackets(n, brackets, labels, name)
    sub = _vectors(data["subalgebra"], n, "subalgebra") if "subalgebra" in data else None
    comp = _vectors(data["complement"], n, "complement") if "complement" in data else None
    acs = metric = None
    for key in ("acs", "metric"):
        if key in data:
            if comp is None:
                raise AlgebraFileError(key, "requires a complement block")
            k = len(comp)
            rows = _vectors(data[key], k, key)
            if len(rows) != k:
                raise AlgebraFileError(key, f"expected a {k}x{k} matrix")
            if key == "acs":
                acs = Matrix(rows, ncols=k)
            else:
                metric = Matrix(rows, ncols=k)
    return AlgebraFile(name, algebra, sub, comp, acs, metric)


def load_algebra_file(path) -> AlgebraFile:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text, parse_float=lambda s: float(s))
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"line {exc.lineno}", exc.msg) from exc
    return parse_algebra_file(data)


def _s(x: Fraction) -> str:
    return str(Fraction(x))


def to_algebra_file(af: AlgebraFile) -> dict:
    L = af.algebra
    n = L.dim
    brackets = []
    for i in range(n):
        for j in range(i + 1, n):
            coeffs = {str(k): _s(x) for k, x in enumerate(L.c[i][j]) if x}
            if coeffs:
                brackets.append({"i": i, "j": j, "coeffs": coeffs})
    out = {"name": af.name, "dim": n, "basis": list(L.labels), "brackets": brackets}
    if af.subalgebra is not None:
        out["subalgebra"] = [[_s(x) for x in v] for v in af.subalgebra]
    if af.complement is not None:
        out["complement"] = [[_s(x) for x in v] for v in af.complement]
    if af.acs is not None:
        out["acs"] = [[_s(x) for x in r] for r in af.acs.rows]
    if af.metric is not None:
        out["metric"] = [[_s(x) for x in r] for r in af.metric.rows]
    return out


def dump_algebra_file(af: AlgebraFile, path) -> None:
    Path(path).write_text(json.dumps(to_algebra_file(af), indent=2) + "\n", encoding="utf-8")


def builtin_algebra_file() -> AlgebraFile:
    m = builtin_erratum_model()
    return AlgebraFile("g", m.g, m.l1.generators, m.m_basis, m.J0, m.metric)


def vectors_from_labels(L: LieAlgebra, specs) -> tuple:
    return tuple(vec(L.vector(**s)) for s in specs)
