"""Bit-exact JSON file formats and the bundled catalog of known designs.

Four schemas, all canonical JSON (sorted keys, compact separators, LF,
trailing newline, shortest round-trip rendering of binary64):

* ``classical-design/1``: v, b, and the integer incidence matrix.
* ``quantum-design/1``: dim and the projector list; every complex entry is a
  two-element ``[re, im]`` array.
* ``cp-map/1``: input/output algebra descriptors plus the superoperator
  matrix in the same ``[re, im]`` encoding.
* ``design-report/1``: emitted by the CLI; input digest, detected
  parameters, per-check verdicts, tool version.

Parsing is strict: wrong schema, ragged rows, unexpected types and
non-finite numbers all raise :class:`FormatError` with a position.
"""

from __future__ import annotations

import json
import math
from importlib import resources

import numpy as np

from .classical import ClassicalDesign
from .cpmaps import COMMUTATIVE, MATRIX, Algebra, CpMap
from .linalg import ComplexMatrix, NatMatrix
from .quantum import QuantumDesign

__all__ = [
    "SCHEMA_CLASSICAL",
    "SCHEMA_QUANTUM",
    "SCHEMA_CPMAP",
    "SCHEMA_REPORT",
    "FormatError",
    "canonical_json",
    "classical_to_doc",
    "classical_from_doc",
    "quantum_to_doc",
    "quantum_from_doc",
    "cpmap_to_doc",
    "cpmap_from_doc",
    "dumps",
    "loads",
    "catalog_names",
    "catalog_expected",
    "catalog_get",
]

SCHEMA_CLASSICAL = "classical-design/1"
SCHEMA_QUANTUM = "quantum-design/1"
SCHEMA_CPMAP = "cp-map/1"
SCHEMA_REPORT = "design-report/1"


class FormatError(ValueError):
    """Malformed document: wrong schema, shape, type, or non-finite number."""


def canonical_json(doc) -> str:
    """Render a JSON-compatible value canonically (deterministic bytes)."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise FormatError(msg)


def _get(doc: dict, key: str, where: str):
    _require(isinstance(doc, dict), f"{where}: expected an object")
    _require(key in doc, f"{where}: missing key {key!r}")
    return doc[key]


def _nat(x, where: str) -> int:
    _require(isinstance(x, int) and not isinstance(x, bool) and x >= 0,
             f"{where}: expected a nonnegative integer, got {x!r}")
    return x


def _real(x, where: str) -> float:
    _require(isinstance(x, (int, float)) and not isinstance(x, bool),
             f"{where}: expected a number, got {x!r}")
    val = float(x)
    _require(math.isfinite(val), f"{where}: non-finite number")
    return val


def _complex_entry(x, where: str) -> complex:
    _require(isinstance(x, list) and len(x) == 2, f"{where}: expected [re, im]")
    return complex(_real(x[0], where + "[0]"), _real(x[1], where + "[1]"))


def _complex_rows(rows, nrows: int, ncols: int, where: str) -> np.ndarray:
    _require(isinstance(rows, list) and len(rows) == nrows,
             f"{where}: expected {nrows} rows, got {len(rows) if isinstance(rows, list) else type(rows).__name__}")
    out = np.zeros((nrows, ncols), dtype=np.complex128)
    for i, row in enumerate(rows):
        _require(isinstance(row, list) and len(row) == ncols,
                 f"{where} row {i} has {len(row) if isinstance(row, list) else '?'} entries, expected {ncols}")
        for j, entry in enumerate(row):
            out[i, j] = _complex_entry(entry, f"{where}[{i}][{j}]")
    return out


def _complex_matrix_doc(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def classical_to_doc(design: ClassicalDesign) -> dict:
    return {
        "schema": SCHEMA_CLASSICAL,
        "v": design.v,
        "b": design.b,
        "incidence": design.chi.tolist(),
    }


def classical_from_doc(doc: dict) -> ClassicalDesign:
    _require(_get(doc, "schema", "document") == SCHEMA_CLASSICAL,
             f"schema mismatch: expected {SCHEMA_CLASSICAL!r}")
    v = _nat(_get(doc, "v", "document"), "v")
    b = _nat(_get(doc, "b", "document"), "b")
    _require(v >= 1 and b >= 1, "v and b must be >= 1")
    rows = _get(doc, "incidence", "document")
    _require(isinstance(rows, list) and len(rows) == v,
             f"incidence: expected {v} rows, got {len(rows) if isinstance(rows, list) else type(rows).__name__}")
    data = []
    for i, row in enumerate(rows):
        _require(isinstance(row, list) and len(row) == b,
                 f"incidence row {i} has {len(row) if isinstance(row, list) else '?'} entries, expected {b}")
        data.append([_nat(x, f"incidence[{i}][{j}]") for j, x in enumerate(row)])
    return ClassicalDesign(NatMatrix(data))


def quantum_to_doc(design: QuantumDesign) -> dict:
    return {
        "schema": SCHEMA_QUANTUM,
        "dim": design.b,
        "projectors": [_complex_matrix_doc(p.a) for p in design.projectors],
    }


def quantum_from_doc(doc: dict) -> QuantumDesign:
    _require(_get(doc, "schema", "document") == SCHEMA_QUANTUM,
             f"schema mismatch: expected {SCHEMA_QUANTUM!r}")
    dim = _nat(_get(doc, "dim", "document"), "dim")
    _require(dim >= 1, "dim must be >= 1")
    raw = _get(doc, "projectors", "document")
    _require(isinstance(raw, list) and len(raw) >= 1, "projectors: expected a nonempty list")
    projectors = tuple(
        ComplexMatrix(_complex_rows(p, dim, dim, f"projectors[{i}]"))
        for i, p in enumerate(raw)
    )
    return QuantumDesign(projectors=projectors)


def _algebra_to_doc(alg: Algebra) -> dict:
    return {"kind": alg.kind, "n": alg.n}


def _algebra_from_doc(doc, where: str) -> Algebra:
    kind = _get(doc, "kind", where)
    _require(kind in (COMMUTATIVE, MATRIX), f"{where}: unknown algebra kind {kind!r}")
    n = _nat(_get(doc, "n", where), where + ".n")
    _require(n >= 1, f"{where}: algebra dimension must be >= 1")
    return Algebra(kind=kind, n=n)


def cpmap_to_doc(f: CpMap) -> dict:
    return {
        "schema": SCHEMA_CPMAP,
        "convention": f.convention,
        "in": _algebra_to_doc(f.in_alg),
        "out": _algebra_to_doc(f.out_alg),
        "matrix": _complex_matrix_doc(f.m.a),
    }


def cpmap_from_doc(doc: dict) -> CpMap:
    _require(_get(doc, "schema", "document") == SCHEMA_CPMAP,
             f"schema mismatch: expected {SCHEMA_CPMAP!r}")
    convention = _get(doc, "convention", "document")
    _require(convention == "superoperator", f"unsupported convention {convention!r}")
    in_alg = _algebra_from_doc(_get(doc, "in", "document"), "in")
    out_alg = _algebra_from_doc(_get(doc, "out", "document"), "out")
    m = _complex_rows(
        _get(doc, "matrix", "document"), out_alg.coord_dim, in_alg.coord_dim, "matrix"
    )
    return CpMap(in_alg=in_alg, out_alg=out_alg, m=ComplexMatrix(m))


def dumps(obj) -> str:
    """Canonical document text for a design or map object."""
    if isinstance(obj, ClassicalDesign):
        return canonical_json(classical_to_doc(obj))
    if isinstance(obj, QuantumDesign):
        return canonical_json(quantum_to_doc(obj))
    if isinstance(obj, CpMap):
        return canonical_json(cpmap_to_doc(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def loads(text: str):
    """Parse a document, dispatching on its schema field."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    _require(isinstance(doc, dict), "document: expected an object")
    schema = _get(doc, "schema", "document")
    if schema == SCHEMA_CLASSICAL:
        return classical_from_doc(doc)
    if schema == SCHEMA_QUANTUM:
        return quantum_from_doc(doc)
    if schema == SCHEMA_CPMAP:
        return cpmap_from_doc(doc)
    raise FormatError(f"unknown schema {schema!r}")


# name -> (data file, expected parameters confirmed by classification)
_CATALOG: dict[str, tuple[str, dict]] = {
    "fano": ("fano.json", {"v": 7, "b": 7, "k": 3, "r": 3, "lam": 1}),
    "pg2-3": ("pg2-3.json", {"v": 13, "b": 13, "k": 4, "r": 4, "lam": 1}),
    "pg2-5": ("pg2-5.json", {"v": 31, "b": 31, "k": 6, "r": 6, "lam": 1}),
    "complete-3-2": ("complete-3-2.json", {"v": 3, "b": 3, "k": 2, "r": 2, "lam": 1}),
    "mub-2-2": (
        "mub-2-2.json",
        {"v": 4, "b": 2, "r": 1, "k": 2.0, "degree": 2, "lam_set": (0.0, 0.5)},
    ),
    "mub-3-4": (
        "mub-3-4.json",
        {"v": 12, "b": 3, "r": 1, "k": 4.0, "degree": 2, "lam_set": (0.0, 1.0 / 3.0)},
    ),
    "cp-k2r2": ("cp-k2r2.json", {"k": 2.0, "r": 2.0}),
}


def catalog_names() -> list[str]:
    return sorted(_CATALOG)


def catalog_expected(name: str) -> dict:
    """Parameters recorded for a catalog entry (copy)."""
    if name not in _CATALOG:
        raise KeyError(f"unknown catalog entry {name!r}")
    return dict(_CATALOG[name][1])


def catalog_text(name: str) -> str:
    """Raw canonical document text of a catalog entry."""
    if name not in _CATALOG:
        raise KeyError(f"unknown catalog entry {name!r}")
    fname = _CATALOG[name][0]
    return resources.files(__package__).joinpath("data", fname).read_text(encoding="utf-8")


def catalog_get(name: str):
    """Load a bundled catalog entry by name."""
    return loads(catalog_text(name))
