"""Explicit constructions of suitable arrays and cores, plus a catalog of examples."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .errors import NotSuitableError, PreconditionError, TableFormatError
from .model import Params, PatternTable, PermTable, Role, is_core


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: Params
    pattern: PatternTable

    def table(self, rng: random.Random | None = None) -> PermTable:
        return complete_pattern(self.pattern, rng)


def _fixed(*rows: str) -> tuple:
    return tuple((tuple(int(x) for x in r.split()), 0) for r in rows)


def _starred(v: int, *rows: str) -> tuple:
    out = []
    for r in rows:
        prefix = tuple(int(x) for x in r.split())
        out.append((prefix, v - len(prefix)))
    return tuple(out)


_CATALOG = {
    "fig1-483": (Params(4, 8, 3), _fixed(
        "2 1 4 3 6 5 8 7",
        "3 4 1 2 7 8 5 6",
        "5 6 7 8 1 2 3 4",
        "8 7 6 5 4 3 2 1",
    )),
    "fig2-955": (Params(9, 5, 5), _fixed(
        "1 2 3 5 4",
        "2 1 4 5 3",
        "3 1 4 5 2",
        "3 2 4 5 1",
        "4 1 3 5 2",
        "4 2 3 5 1",
        "5 1 4 2 3",
        "5 2 4 1 3",
        "5 3 4 1 2",
    )),
    "fig3-1767": (Params(17, 6, 7), _starred(
        6,
        "1 4", "1 2 5", "1 6 5",
        "2 4", "2 3", "2 6 5",
        "3 5", "3 2 1", "3 6 1",
        "4 1 3", "4 5 3", "4 6",
        "5 1 3", "5 4 2", "5 6",
        "6 2 1", "6 3 4",
    )),
    "fig4-2679": (Params(26, 7, 9), _starred(
        7,
        "1 6 5", "1 7 5", "1 3 5", "1 4 2",
        "2 6 1", "2 7 1", "2 5 3", "2 4 1",
        "3 6 5", "3 7 5", "3 1", "3 2",
        "4 6 1", "4 7 1", "4 5 2", "4 3",
        "5 6", "5 7 3", "5 1 2", "5 4",
        "6 7 5", "6 2", "6 3 4",
        "7 6 1", "7 4", "7 2 3",
    )),
}

CATALOG_NAMES = tuple(_CATALOG)


def catalog(name: str) -> CatalogEntry:
    try:
        params, rows = _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; choose from {', '.join(CATALOG_NAMES)}") from None
    return CatalogEntry(name, params, PatternTable(rows, params.n_symbols))


def complete_pattern(pattern: PatternTable, rng: random.Random | None = None) -> PermTable:
    """Fill each row's free positions with its missing symbols.

    Ascending order by default; a shuffled order when ``rng`` is given.
    """
    v = pattern.v
    rows = []
    for prefix, wild in pattern.rows:
        missing = sorted(set(range(1, v + 1)) - set(prefix))
        if len(missing) != wild:
            raise TableFormatError(f"prefix {list(prefix)} cannot be completed with {wild} entries")
        if rng is not None:
            rng.shuffle(missing)
        rows.append((*prefix, *missing))
    return PermTable(tuple(rows), Role.CORE, v)


def trivial_array(v: int) -> PermTable:
    """The v x v array whose row i starts with i, the rest ascending."""
    if v < 1:
        raise PreconditionError("v must be >= 1")
    rows = tuple((i, *(s for s in range(1, v + 1) if s != i)) for i in range(1, v + 1))
    return PermTable(rows, Role.ARRAY, v)


def _completed(prefix, v):
    return (*prefix, *(s for s in range(1, v + 1) if s not in prefix))


def small_core(v: int, t: int, N: int) -> PermTable:
    """An (N, v, t)-suitable core for v <= (t+2)/2 and N >= v(t+1-v).

    Each symbol leads t+1-v rows, and the other v-1 symbols take the second
    position of those rows round-robin, so each appears directly after the
    leader at least once.  Extra rows are the identity.
    """
    if v < 1 or t < 1:
        raise PreconditionError("v and t must be >= 1")
    if 2 * v > t + 2:
        raise PreconditionError(f"small_core needs v <= (t+2)/2; got v={v}, t={t}")
    per = t + 1 - v
    if N < v * per:
        raise PreconditionError(f"small_core needs N >= v(t+1-v) = {v * per}; got N={N}")
    rows = []
    for lead in range(1, v + 1):
        others = [s for s in range(1, v + 1) if s != lead]
        for j in range(per):
            prefix = (lead, others[j % len(others)]) if others else (lead,)
            rows.append(_completed(prefix, v))
    rows.extend(tuple(range(1, v + 1)) for _ in range(N - len(rows)))
    return PermTable(tuple(rows), Role.CORE, v)


def start_counts(table: PermTable) -> Counter:
    return Counter(row[0] for row in table.rows)


def extend_t_plus_1(core: PermTable, t: int, check: bool = True) -> PermTable:
    """Turn an (N, v, t)-core with N > v(t+1-v) into an (N+v-1, v, t+1)-core.

    The most frequent leading symbol (smallest on ties) is swapped with v,
    then rows starting ``c v`` are added for c = 1..v-1, completed ascending.
    """
    N, v = core.n_rows, core.v
    if v < 1:
        raise PreconditionError("core must have at least one symbol")
    if N <= v * (t + 1 - v):
        raise PreconditionError(f"need N > v(t+1-v) = {v * (t + 1 - v)}; got N={N}")
    if check and not is_core(core, t):
        raise NotSuitableError(f"input is not a ({N},{v},{t})-suitable core")
    counts = start_counts(core)
    top = min(counts, key=lambda s: (-counts[s], s))
    swap = {s: s for s in range(1, v + 1)}
    swap[top], swap[v] = v, top
    relabeled = core.relabel(swap)
    extra = tuple(_completed((c, v), v) for c in range(1, v))
    return PermTable(relabeled.rows + extra, Role.CORE, v)
