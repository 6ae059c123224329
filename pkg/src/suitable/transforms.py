"""Moves between suitable arrays and suitable cores, and simple reductions.

An (N, v, t)-suitable array with v >= N can be rewritten, by repeatedly moving
a symbol that leads some row to the end of another row, into a normal form
whose first column holds N distinct *first symbols*, whose last N-1 columns
hold only first symbols, and whose middle block is an (N, v-N, t)-suitable
core.  :func:`expand_to_array` goes the other way.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NormalizationError, NotSuitableError, PreconditionError, SymbolError, TableFormatError
from .model import PermTable, Role, check_permutation, is_suitable_array


@dataclass(frozen=True)
class NormalizationTrace:
    moves: tuple[tuple[int, int], ...]
    first_symbols: tuple[int, ...]
    # core symbol -> symbol of the original array
    labels: dict[int, int] = field(default_factory=dict)
    array: PermTable | None = None


def push_symbol(array: PermTable, alpha: int, row: int) -> PermTable:
    """Move ``alpha`` to the end of ``row``.

    Allowed only when ``alpha`` leads some row other than ``row``; this keeps
    the array suitable at every strength.
    """
    rows = [list(r) for r in array.rows]
    if not 0 <= row < len(rows):
        raise PreconditionError(f"row index {row} out of range")
    if alpha not in rows[row]:
        raise SymbolError(f"symbol {alpha} does not occur in row {row}")
    if not any(r[0] == alpha for i, r in enumerate(rows) if i != row):
        raise PreconditionError(f"symbol {alpha} is not leftmost in any row other than {row}")
    rows[row].remove(alpha)
    rows[row].append(alpha)
    return PermTable(tuple(map(tuple, rows)), array.role, array.v)


def normalize(array: PermTable) -> tuple[PermTable, NormalizationTrace]:
    """Bring ``array`` into normal form using only :func:`push_symbol` moves.

    Rows are repaired in index order.  First, while a row's leader already
    leads an earlier row it is pushed to the end; since the earlier rows have
    at most N-1 distinct leaders and v >= N, this stops.  Then, in each row,
    the other first symbols that still precede some non-first symbol are
    pushed in ascending order.
    """
    N, v = array.n_rows, array.v
    if v < N:
        raise NormalizationError(f"cannot normalize: v={v} < N={N}")
    moves = []
    cur = array
    for r in range(N):
        for _ in range(v):
            lead = cur.rows[r][0]
            if not any(cur.rows[i][0] == lead for i in range(r)):
                break
            cur = push_symbol(cur, lead, r)
            moves.append((lead, r))
        else:
            raise NormalizationError(f"row {r} leader could not be made distinct")

    firsts = tuple(row[0] for row in cur.rows)
    first_set = set(firsts)
    for r in range(N):
        row = cur.rows[r]
        last_free = max((i for i, s in enumerate(row) if s not in first_set), default=-1)
        late = sorted(s for s in row[1:last_free + 1] if s in first_set)
        for alpha in late:
            cur = push_symbol(cur, alpha, r)
            moves.append((alpha, r))

    return cur, NormalizationTrace(tuple(moves), firsts, array=cur)


def normalize_to_core(array: PermTable, t: int) -> tuple[PermTable, NormalizationTrace]:
    """Extract the (N, v-N, t)-suitable core of an (N, v, t)-suitable array.

    The core's symbols are the non-first symbols relabeled 1..v-N in
    increasing order; ``trace.labels`` maps them back.
    """
    if not is_suitable_array(array, t):
        raise NotSuitableError(f"array is not ({array.n_rows},{array.v},{t})-suitable")
    B, trace = normalize(array)
    N, v = B.n_rows, B.v
    free = sorted(set(range(1, v + 1)) - set(trace.first_symbols))
    new_label = {s: i + 1 for i, s in enumerate(free)}
    middle = []
    for row in B.rows:
        block = row[1:v - N + 1]
        if any(s not in new_label for s in block):
            raise NormalizationError(f"normal form check failed on row {list(row)}")
        middle.append(tuple(new_label[s] for s in block))
    core = PermTable(tuple(middle), Role.CORE, v - N)
    labels = {i + 1: s for i, s in enumerate(free)}
    return core, NormalizationTrace(trace.moves, trace.first_symbols, labels, B)


def expand_to_array(core: PermTable) -> PermTable:
    """Row i becomes ``v+i``, the core row, then the other new symbols ascending."""
    N, v = core.n_rows, core.v
    rows = []
    for i, row in enumerate(core.rows, start=1):
        tail = [v + j for j in range(1, N + 1) if j != i]
        rows.append((v + i, *row, *tail))
    return PermTable(tuple(rows), Role.ARRAY, v + N)


def remove_symbol(table: PermTable, sigma: int, return_map: bool = False):
    """Delete ``sigma`` from every row and close the gap in the labels.

    Symbols above ``sigma`` move down by one.  With ``return_map`` the old ->
    new label mapping is returned as well.
    """
    v = table.v
    if not 1 <= sigma <= v:
        raise SymbolError(f"symbol {sigma} outside 1..{v}")
    mapping = {s: (s if s < sigma else s - 1) for s in range(1, v + 1) if s != sigma}
    rows = tuple(tuple(mapping[s] for s in row if s != sigma) for row in table.rows)
    out = PermTable(rows, table.role, v - 1)
    return (out, mapping) if return_map else out


def add_row(table: PermTable, row) -> PermTable:
    try:
        row = check_permutation(row, table.v)
    except TableFormatError as exc:
        raise PreconditionError(str(exc)) from None
    return PermTable(table.rows + (row,), table.role, table.v)


def delete_row(table: PermTable, index: int) -> PermTable:
    rows = list(table.rows)
    del rows[index]
    return PermTable(tuple(rows), table.role, table.v)
