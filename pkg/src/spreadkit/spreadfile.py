"""
JSON spread files.

Schema (format_version 1)::

    {
      "format_version": 1,
      "field": {"p": 2, "e": 1, "modulus": [0, 1]},
      "n": 10,
      "k": 4,
      "codewords": [[[1, 0, ...], ...], ...],   # k x n RREF bases
      "metadata": {"method": "multi-component", "declared_min_subspace_distance": 8}
    }

``modulus`` lists coefficients lowest degree first and must match the field
that ``make_field(p, e)`` would pick. Matrix entries use the packed integer
encoding of field elements.
"""

from __future__ import annotations

import json
from pathlib import Path

from .constructions import SubspaceCode
from .errors import ParameterError, SpreadFileError
from .finite_field import field_from_json
from .subspace import Subspace, rref_rows

FORMAT_VERSION = 1


def code_to_json(code: SubspaceCode, metadata: dict | None = None) -> dict:
    meta = {}
    if code.method:
        meta["method"] = code.method
    if code.declared_min_subspace_distance is not None:
        meta["declared_min_subspace_distance"] = code.declared_min_subspace_distance
    meta.update(metadata or {})
    return {
        "format_version": FORMAT_VERSION,
        "field": code.ctx.to_json(),
        "n": code.n,
        "k": code.k,
        "codewords": [[list(row) for row in U.basis] for U in code.codewords],
        "metadata": meta,
    }


def code_from_json(data: dict, strict: bool = False) -> SubspaceCode:
    try:
        if data.get("format_version") != FORMAT_VERSION:
            raise SpreadFileError(f"unsupported format_version {data.get('format_version')!r}")
        ctx = field_from_json(data["field"])
        n, k = int(data["n"]), int(data["k"])
        raw = data["codewords"]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SpreadFileError):
            raise
        raise SpreadFileError(f"malformed spread file: {exc}") from exc
    words = []
    for idx, mat in enumerate(raw):
        if len(mat) != k or any(len(row) != n for row in mat):
            raise SpreadFileError(f"codeword {idx} is not a {k}x{n} matrix")
        rows = tuple(tuple(int(x) for x in row) for row in mat)
        if any(not 0 <= x < ctx.q for row in rows for x in row):
            raise SpreadFileError(f"codeword {idx} has entries outside GF({ctx.q})")
        basis, _ = rref_rows(ctx, rows)
        if len(basis) != k:
            raise SpreadFileError(f"codeword {idx} has rank {len(basis)}, expected {k}")
        if strict and basis != rows:
            raise SpreadFileError(f"codeword {idx} is not stored in reduced row echelon form")
        words.append(Subspace(ctx, n, basis))
    meta = data.get("metadata") or {}
    try:
        return SubspaceCode(
            ctx, n, k, tuple(words),
            meta.get("declared_min_subspace_distance"), meta.get("method"),
        )
    except ParameterError as exc:
        raise SpreadFileError(str(exc)) from exc


def write_spread_file(path: str | Path, code: SubspaceCode, metadata: dict | None = None) -> None:
    text = json.dumps(code_to_json(code, metadata), separators=(",", ":"))
    Path(path).write_text(text + "\n", encoding="utf-8")


def read_spread_file(path: str | Path, strict: bool = False) -> SubspaceCode:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SpreadFileError(f"{path}: not valid JSON ({exc})") from exc
    return code_from_json(data, strict=strict)
