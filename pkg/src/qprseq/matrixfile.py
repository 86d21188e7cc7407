"""Plain-text matrix files.

::

    # optional comment lines
    Q 3
    1 1/2 0
    1/2 0 0
    0 0 1

The header is a field tag (``Q`` or ``F<p>``) and the order.  Each of the
``n`` body lines holds ``n`` whitespace-separated scalars.
"""

from __future__ import annotations

from .exactfield import FieldError, FieldSpec, scalar_format, scalar_parse
from .matrix import MatrixError, SymMatrix

__all__ = ["MatrixFileError", "read_matrix", "write_matrix", "load", "dump"]


class MatrixFileError(ValueError):
    pass


def read_matrix(text: str) -> SymMatrix:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise MatrixFileError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise MatrixFileError(f"header must be '<field> <n>', got {lines[0]!r}")
    try:
        field = FieldSpec.from_tag(head[0])
        n = int(head[1])
    except (FieldError, ValueError) as e:
        raise MatrixFileError(f"bad header {lines[0]!r}: {e}") from None
    if n < 0:
        raise MatrixFileError("negative order")
    body = lines[1:]
    if len(body) != n:
        raise MatrixFileError(f"expected {n} rows, found {len(body)}")
    rows = []
    for i, line in enumerate(body, 1):
        toks = line.split()
        if len(toks) != n:
            raise MatrixFileError(f"row {i}: expected {n} entries, found {len(toks)}")
        try:
            rows.append([scalar_parse(t, field) for t in toks])
        except FieldError as e:
            raise MatrixFileError(f"row {i}: {e}") from None
    try:
        return SymMatrix.from_rows(rows, field)
    except MatrixError as e:
        raise MatrixFileError(str(e)) from None


def write_matrix(B: SymMatrix, comments: list[str] | None = None) -> str:
    out = [f"# {c}" if c else "#" for c in (comments or [])]
    out.append(f"{B.field.tag} {B.n}")
    for r in B.entries:
        out.append(" ".join(scalar_format(x) for x in r))
    return "\n".join(out) + "\n"


def load(path: str) -> SymMatrix:
    with open(path, encoding="utf-8") as f:
        return read_matrix(f.read())


def dump(B: SymMatrix, path: str, comments: list[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(write_matrix(B, comments))
