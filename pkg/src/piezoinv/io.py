"""Tensor documents (JSON), CSV batches and report documents.

JSON documents carry either ``"compact"`` (3 rows of 6, columns
11, 22, 33, 23, 13, 12) or ``"full"`` (3x3x3 nested lists), plus optional
``"name"`` and ``"metadata"``. A batch file is a JSON list of documents, a
JSON object ``{"tensors": [...]}``, or a CSV file with one tensor per row
(18 values, row-major compact order, optional leading name column).

Floats are written with Python's shortest round-trip repr, so
``parse(serialize(doc))`` reproduces every finite value bit for bit.
"""

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .tensor_core import PiezoTensor, as_full3

FORMATS = ("auto", "full", "compact")
SYM_TOL = 1e-12


class TensorFormatError(ValueError):
    """Malformed tensor input; the message names the offending location."""


@dataclass(frozen=True, eq=False)
class TensorDocument:
    tensor: PiezoTensor
    name: str = None
    metadata: dict = field(default_factory=dict)

    def to_obj(self, form: str = "compact") -> dict:
        out = {}
        if self.name is not None:
            out["name"] = self.name
        if form == "full":
            out["full"] = self.tensor.full.tolist()
        else:
            out["compact"] = self.tensor.compact.tolist()
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorDocument):
            return NotImplemented
        return (np.array_equal(self.tensor.compact, other.tensor.compact)
                and self.name == other.name and self.metadata == other.metadata)


def _number(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        try:
            x = float(str(x).strip())
        except ValueError:
            raise TensorFormatError(f"{where}: not a number: {x!r}") from None
    x = float(x)
    if not math.isfinite(x):
        raise TensorFormatError(f"{where}: non-finite value {x!r}")
    return x


def _matrix(rows, shape, where):
    """Nested lists -> float array of ``shape`` with 1-based locations in errors."""
    def rec(obj, dims, idx):
        if not dims:
            return _number(obj, f"{where} entry [{']['.join(str(i + 1) for i in idx)}]")
        if not isinstance(obj, (list, tuple)) or len(obj) != dims[0]:
            loc = "".join(f"[{i + 1}]" for i in idx) or " top level"
            n = len(obj) if isinstance(obj, (list, tuple)) else type(obj).__name__
            raise TensorFormatError(f"{where}{loc}: expected {dims[0]} items, got {n}")
        return [rec(o, dims[1:], idx + (i,)) for i, o in enumerate(obj)]
    return np.array(rec(rows, shape, ()), dtype=float)


def _symmetric_full(P, where):
    diff = np.abs(P - P.transpose(0, 2, 1))
    if diff.max() > SYM_TOL * max(np.abs(P).max(), 1.0):
        i, j, k = np.unravel_index(np.argmax(diff), diff.shape)
        raise TensorFormatError(
            f"{where}: symmetry violation P[{i + 1}][{j + 1}][{k + 1}] = {P[i, j, k]!r} "
            f"vs P[{i + 1}][{k + 1}][{j + 1}] = {P[i, k, j]!r}")
    return PiezoTensor.from_full(P, tol=SYM_TOL)


def document_from_obj(obj, fmt: str = "auto", where: str = "document") -> TensorDocument:
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if not isinstance(obj, dict):
        raise TensorFormatError(f"{where}: expected an object with 'compact' or 'full'")
    has_c, has_f = "compact" in obj, "full" in obj
    if fmt == "auto":
        if has_c == has_f:
            raise TensorFormatError(f"{where}: need exactly one of 'compact' or 'full'")
        fmt = "compact" if has_c else "full"
    if fmt not in obj:
        raise TensorFormatError(f"{where}: missing '{fmt}'")
    if fmt == "compact":
        T = PiezoTensor(_matrix(obj["compact"], (3, 6), f"{where} compact"))
    else:
        T = _symmetric_full(_matrix(obj["full"], (3, 3, 3), f"{where} full"), where)
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise TensorFormatError(f"{where}: 'name' must be a string")
    meta = obj.get("metadata", {})
    if not isinstance(meta, dict):
        raise TensorFormatError(f"{where}: 'metadata' must be an object")
    return TensorDocument(T, name, meta)


def _csv_rows(text, fmt, where):
    docs = []
    for r, row in enumerate(csv.reader(text.splitlines()), start=1):
        cells = [c.strip() for c in row]
        if not cells or all(not c for c in cells) or cells[0].startswith("#"):
            continue
        name = None
        if len(cells) in (19, 28):
            name, cells = cells[0], cells[1:]
        vals = []
        for col, c in enumerate(cells, start=1 + (name is not None)):
            vals.append(_number(c, f"{where} row {r} column {col}"))
        n = len(vals)
        kind = fmt if fmt != "auto" else {18: "compact", 27: "full"}.get(n)
        expect = {"compact": 18, "full": 27}.get(kind)
        if expect is None or n != expect:
            raise TensorFormatError(f"{where} row {r}: expected 18 (compact) or 27 (full) values, got {n}")
        arr = np.array(vals)
        if kind == "compact":
            T = PiezoTensor(arr.reshape(3, 6))
        else:
            T = _symmetric_full(arr.reshape(3, 3, 3), f"{where} row {r}")
        docs.append(TensorDocument(T, name, {}))
    return docs


def _json_load(text, where):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise TensorFormatError(f"{where} line {e.lineno} column {e.colno}: {e.msg}") from None


def _is_csv(path, text):
    return Path(path).suffix.lower() in (".csv", ".txt") or not text.lstrip().startswith(("{", "["))


def parse_batch(path, fmt: str = "auto") -> list:
    """All tensors in a JSON or CSV file, in file order."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    where = str(path)
    text = Path(path).read_text()
    if _is_csv(path, text):
        return _csv_rows(text, fmt, where)
    obj = _json_load(text, where)
    if isinstance(obj, dict) and "tensors" in obj:
        obj = obj["tensors"]
    if isinstance(obj, dict):
        return [document_from_obj(obj, fmt, where)]
    if not isinstance(obj, list):
        raise TensorFormatError(f"{where}: expected an object or a list of objects")
    return [document_from_obj(o, fmt, f"{where} item {i + 1}") for i, o in enumerate(obj)]


def parse_tensor(path, fmt: str = "auto") -> TensorDocument:
    """Exactly one tensor from ``path``.

    Raises
    ------
    TensorFormatError
        Malformed numbers, wrong shape, symmetry violation, or a file that
        holds more or fewer than one tensor.
    """
    docs = parse_batch(path, fmt)
    if len(docs) != 1:
        raise TensorFormatError(f"{path}: expected one tensor, found {len(docs)}")
    return docs[0]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def serialize(doc, form: str = "compact") -> str:
    """JSON text of one document or a list of documents."""
    if isinstance(doc, TensorDocument):
        return dumps(doc.to_obj(form))
    return dumps([d.to_obj(form) for d in doc])


def to_csv(docs) -> str:
    lines = []
    for d in docs:
        vals = [repr(float(x)) for x in d.tensor.compact.ravel()]
        lines.append(",".join(([d.name] if d.name is not None else []) + vals))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# reports


def parts_obj(h) -> dict:
    return {
        "A": dict(zip(("A111", "A122", "A112", "A222", "A113", "A223", "A123"), h.A.comps.tolist())),
        "u": h.u.tolist(),
        "D": h.D.full.tolist(),
        "v": h.v.tolist(),
    }


def invariants_obj(P) -> dict:
    from .invariants import DEGREES, IDS, degree_table, evaluate_basis

    vals = evaluate_basis(P).values
    return {
        "values": {k: float(x) for k, x in zip(IDS, vals)},
        "degrees": {k: int(d) for k, d in zip(IDS, DEGREES)},
        "degree_table": {str(k): v for k, v in degree_table().items()},
    }


def canonical_obj(cf) -> dict:
    return {
        "case_tag": cf.tag.value,
        "pair": list(cf.pair) if cf.pair else None,
        "rotation": cf.rotation.tolist(),
        "parts": parts_obj(cf.parts),
        "recovered_A": parts_obj(cf.recovered_parts())["A"],
        "residuals": {"reconstruction": cf.error, "group": cf.residual},
    }


def report_obj(doc: TensorDocument, tol: float) -> dict:
    """Full per-tensor report: invariants, degree table, canonical form."""
    from .canonical import InconsistentGroupError, canonicalize

    out = {"name": doc.name}
    out.update(invariants_obj(doc.tensor))
    try:
        out["canonical"] = canonical_obj(canonicalize(doc.tensor, tol=tol))
    except InconsistentGroupError as e:
        out["canonical"] = {"error": str(e), "equation": e.equation}
    return out


def full_of(doc) -> np.ndarray:
    return as_full3(doc.tensor)
