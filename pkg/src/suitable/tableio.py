"""Reading and writing the plain-text table format.

The first line is ``N v t role``; it is followed by N lines of v
space-separated symbols.  A ``*`` marks a free entry; tables containing
free entries are read as :class:`PatternTable`, and every ``*`` must come
after all fixed symbols of its row::

    3 4 3 array
    2 4 1 3
    3 4 2 1
    1 4 2 3
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import TableFormatError
from .model import PatternTable, PermTable, Role


@dataclass(frozen=True)
class TableFile:
    table: PermTable | PatternTable
    role: Role
    strength: int

    @property
    def is_pattern(self) -> bool:
        return isinstance(self.table, PatternTable)


def parse_table(text: str) -> TableFile:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise TableFormatError("empty input")
    head = lines[0].split()
    if len(head) != 4:
        raise TableFormatError(f"header must be 'N v t role', got {lines[0]!r}")
    try:
        N, v, t = (int(x) for x in head[:3])
        role = Role(head[3])
    except ValueError as exc:
        raise TableFormatError(f"bad header {lines[0]!r}: {exc}") from None
    if N < 0 or v < 0 or t < 1:
        raise TableFormatError(f"bad header values {lines[0]!r}")
    body = lines[1:]
    if v == 0 and not body:
        # zero-width rows are blank lines, which the comment filter drops
        return TableFile(PermTable(((),) * N, role, 0), role, t)
    if len(body) != N:
        raise TableFormatError(f"header announces {N} rows, found {len(body)}")

    rows = []
    wildcards = False
    for ln in body:
        toks = ln.split()
        if len(toks) != v:
            raise TableFormatError(f"row {ln!r} does not have {v} entries")
        prefix = []
        wild = 0
        for tok in toks:
            if tok == "*":
                wild += 1
                continue
            if wild:
                raise TableFormatError(f"fixed entry after '*' in row {ln!r}")
            try:
                prefix.append(int(tok))
            except ValueError:
                raise TableFormatError(f"bad entry {tok!r} in row {ln!r}") from None
        wildcards = wildcards or wild > 0
        rows.append((tuple(prefix), wild))

    if wildcards:
        table = PatternTable(tuple(rows), v)
    else:
        table = PermTable(tuple(p for p, _ in rows), role, v)
    return TableFile(table, role, t)


def read_table(path) -> TableFile:
    return parse_table(Path(path).read_text())


def format_table(table: PermTable | PatternTable, t: int, role: Role | str | None = None) -> str:
    if isinstance(table, PatternTable):
        role = Role(role or Role.CORE)
        body = [" ".join([*map(str, p), *["*"] * w]) for p, w in table.rows]
    else:
        role = Role(role or table.role)
        body = [" ".join(map(str, r)) for r in table.rows]
    return "\n".join([f"{table.n_rows} {table.v} {t} {role}", *body]) + "\n"


def write_table(path, table, t: int, role=None) -> Path:
    path = Path(path)
    path.write_text(format_table(table, t, role))
    return path
