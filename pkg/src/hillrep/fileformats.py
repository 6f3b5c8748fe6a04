"""JSON file formats for maps, Hill representations and plain matrices.

Complex scalars are ``[re, im]`` pairs and matrices are row-major nested
lists.  Floats are written with ``repr`` so every value round-trips bit for
bit.  Block indices in files are 1-based.

Map file::

    {"n": 2, "q": 2, "representation": "matricization" | "choi",
     "field": "real" | "complex", "data": [[[re, im], ...], ...]}

Hill file::

    {"n": .., "q": .., "m": .., "tol": .., "H": <m x m>, "A": [<n x q>, ...],
     "provenance": null | {"strategy": "blocks" | "qr" | "user",
                           "picks": null | [[i, j], ...],
                           "Ls": [<n x q>, ...], "Bs": [<n x q>, ...]}}
"""

import json

import numpy as np

from .hill import BasisSelection, HillRepresentation
from .linmap import from_choi, from_matricization

__all__ = [
    "SchemaError",
    "encode_matrix",
    "decode_matrix",
    "dumps",
    "map_to_dict",
    "map_from_dict",
    "hill_to_dict",
    "hill_from_dict",
    "matrix_to_dict",
    "matrix_from_dict",
    "read_json",
    "write_json",
]


class SchemaError(ValueError):
    """A file does not follow the expected layout."""


def encode_matrix(M):
    M = np.asarray(M, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def decode_matrix(data, shape=None, what="matrix"):
    try:
        arr = np.array(data, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{what}: entries must be [re, im] number pairs") from exc
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise SchemaError(f"{what}: expected a nested array of [re, im] pairs, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise SchemaError(f"{what}: non-finite entry")
    M = arr[..., 0] + 1j * arr[..., 1]
    if shape is not None and M.shape != tuple(shape):
        raise SchemaError(f"{what}: shape {M.shape}, expected {tuple(shape)}")
    return M


def dumps(obj):
    return json.dumps(obj) + "\n"


def _int_field(d, key, minimum=1):
    v = d.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise SchemaError(f"'{key}' must be an integer >= {minimum}")
    return v


def _require_dict(d, what):
    if not isinstance(d, dict):
        raise SchemaError(f"{what} must be a JSON object")


def map_to_dict(lmap, representation="matricization"):
    if representation == "matricization":
        data = lmap.L
    elif representation == "choi":
        data = lmap.choi().M
    else:
        raise ValueError(f"unknown representation {representation!r}")
    return {
        "n": lmap.n,
        "q": lmap.q,
        "representation": representation,
        "field": "real" if lmap.is_real() else "complex",
        "data": encode_matrix(data),
    }


def map_from_dict(d):
    _require_dict(d, "map file")
    n, q = _int_field(d, "n"), _int_field(d, "q")
    rep = d.get("representation")
    field = d.get("field", "complex")
    if field not in ("real", "complex"):
        raise SchemaError("'field' must be 'real' or 'complex'")
    if rep == "matricization":
        M = decode_matrix(d.get("data"), (n * n, q * q), "data")
    elif rep == "choi":
        M = decode_matrix(d.get("data"), (n * q, n * q), "data")
    else:
        raise SchemaError("'representation' must be 'matricization' or 'choi'")
    if field == "real" and np.any(M.imag):
        raise SchemaError("field is 'real' but some imaginary parts are nonzero")
    return from_matricization(M, n, q) if rep == "matricization" else from_choi(M, n, q)


def hill_to_dict(rep, tol):
    out = {
        "n": rep.n,
        "q": rep.q,
        "m": rep.m,
        "tol": tol,
        "H": encode_matrix(rep.H) if rep.m else [],
        "A": [encode_matrix(A) for A in rep.As],
        "provenance": None,
    }
    b = rep.basis
    if b is not None:
        out["provenance"] = {
            "strategy": b.source,
            "picks": None if b.picks is None else [[i + 1, j + 1] for i, j in b.picks],
            "Ls": [encode_matrix(L) for L in b.Ls],
            "Bs": [encode_matrix(B) for B in b.Bs],
        }
    return out


def _matrix_list(items, n, q, m, what):
    if not isinstance(items, list) or len(items) != m:
        raise SchemaError(f"'{what}' must be a list of {m} matrices")
    if m == 0:
        return np.zeros((0, n, q), dtype=np.complex128)
    return np.stack([decode_matrix(x, (n, q), f"{what}[{k}]") for k, x in enumerate(items)])


def hill_from_dict(d):
    _require_dict(d, "Hill file")
    n, q = _int_field(d, "n"), _int_field(d, "q")
    m = _int_field(d, "m", minimum=0)
    tol = d.get("tol", 1e-10)
    if not isinstance(tol, (int, float)) or isinstance(tol, bool) or not tol > 0:
        raise SchemaError("'tol' must be a positive number")
    H = decode_matrix(d.get("H"), (m, m), "H") if m else np.zeros((0, 0))
    As = _matrix_list(d.get("A"), n, q, m, "A")
    if m and np.max(np.abs(H - H.conj().T)) > tol * max(1.0, np.max(np.abs(H))):
        raise SchemaError("H is not Hermitian within the declared tol")
    basis = None
    prov = d.get("provenance")
    if prov is not None:
        _require_dict(prov, "provenance")
        source = prov.get("strategy")
        if source not in ("blocks", "qr", "user"):
            raise SchemaError("provenance 'strategy' must be 'blocks', 'qr' or 'user'")
        picks = prov.get("picks")
        if picks is not None:
            try:
                picks = [(int(i) - 1, int(j) - 1) for i, j in picks]
            except (TypeError, ValueError) as exc:
                raise SchemaError("provenance 'picks' must be a list of [i, j] pairs") from exc
            if len(picks) != m or any(not (0 <= i < n and 0 <= j < q) for i, j in picks):
                raise SchemaError("provenance 'picks' out of range")
        Ls = _matrix_list(prov.get("Ls"), n, q, m, "Ls")
        Bs = _matrix_list(prov.get("Bs"), n, q, m, "Bs")
        basis = BasisSelection(Ls, As.conj(), Bs, source, picks)
    return HillRepresentation(n, q, H, As, basis), float(tol)


def matrix_to_dict(M):
    M = np.asarray(M)
    return {"rows": M.shape[0], "cols": M.shape[1], "data": encode_matrix(M)}


def matrix_from_dict(d):
    _require_dict(d, "matrix file")
    rows, cols = _int_field(d, "rows"), _int_field(d, "cols")
    return decode_matrix(d.get("data"), (rows, cols), "data")


def read_json(path):
    """Parse a JSON file; decoding errors surface as :class:`SchemaError`,
    I/O errors propagate as ``OSError``."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def write_json(obj, path=None):
    text = dumps(obj)
    if path is None:
        return text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
