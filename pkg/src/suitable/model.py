"""Tables of permutations and the verifiers for suitable arrays and cores.

Symbols are the integers 1..v.  A table is an ordered list of rows, each a
permutation of 1..v, tagged with the role it plays (``array`` or ``core``).
Internally sets of symbols are handled as bitmasks where symbol s is bit s-1.

Three verifiers are provided:

* :func:`verify_array` checks the definition directly: every symbol precedes
  every (t-1)-subset of the other symbols in some row.
* :func:`verify_core` checks that ``|pre_set(C, s, T)| >= t + 1 - v + |T|``
  for every symbol s and every set T of other symbols.
* :func:`verify_core_by_subsets` checks that each symbol precedes each
  k-subset of the others in at least t - k rows, for k = 0..t-1.

The last two are equivalent and are used as oracles for one another.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import StrengthTooLarge, SymbolError, TableFormatError

Permutation = tuple[int, ...]


class Role(str, enum.Enum):
    ARRAY = "array"
    CORE = "core"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Params:
    """The triple (N, v, t)."""

    n_rows: int
    n_symbols: int
    strength: int

    def __post_init__(self):
        for name in ("n_rows", "n_symbols", "strength"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")

    def __iter__(self):
        return iter((self.n_rows, self.n_symbols, self.strength))


def check_permutation(row: Sequence[int], v: int) -> Permutation:
    """Return ``row`` as a tuple, raising if it is not a permutation of 1..v."""
    row = tuple(int(x) for x in row)
    if len(row) != v or set(row) != set(range(1, v + 1)):
        raise TableFormatError(f"not a permutation of 1..{v}: {list(row)}")
    return row


@dataclass(frozen=True)
class PermTable:
    """An N x v table of permutations of 1..v.

    ``v`` may be omitted when there is at least one row.  Rows are stored as
    tuples; results of every verifier are invariant under reordering them.
    """

    rows: tuple[Permutation, ...]
    role: Role = Role.CORE
    v: int | None = None

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        v = self.v
        if v is None:
            if not rows:
                raise TableFormatError("cannot infer v for a table with no rows")
            v = len(rows[0])
        rows = tuple(check_permutation(r, v) for r in rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "role", Role(self.role))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_symbols(self) -> int:
        return self.v

    def __len__(self):
        return len(self.rows)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.rows)

    def with_role(self, role: Role | str) -> "PermTable":
        return PermTable(self.rows, Role(role), self.v)

    def sorted(self) -> "PermTable":
        return PermTable(tuple(sorted(self.rows)), self.role, self.v)

    def relabel(self, mapping) -> "PermTable":
        """Apply the symbol bijection ``mapping`` (dict or 1-indexed sequence) to every row."""
        if not isinstance(mapping, dict):
            mapping = {i + 1: s for i, s in enumerate(mapping)}
        return PermTable(tuple(tuple(mapping[x] for x in r) for r in self.rows), self.role, self.v)

    def __str__(self):
        return "\n".join(" ".join(map(str, r)) for r in self.rows)


@dataclass(frozen=True)
class PatternTable:
    """Rows given as a fixed prefix followed by a number of free positions.

    Any completion of the free positions by the missing symbols is allowed.
    """

    rows: tuple[tuple[Permutation, int], ...]
    v: int = field(default=0)

    def __post_init__(self):
        rows = tuple((tuple(int(x) for x in p), int(w)) for p, w in self.rows)
        v = self.v
        if not v and rows:
            v = len(rows[0][0]) + rows[0][1]
        for prefix, wild in rows:
            if wild < 0 or len(prefix) + wild != v:
                raise TableFormatError(f"row {list(prefix)} + {wild} wildcards does not have length {v}")
            if len(set(prefix)) != len(prefix) or not all(1 <= x <= v for x in prefix):
                raise TableFormatError(f"prefix {list(prefix)} is not a partial permutation of 1..{v}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "v", v)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_wildcards(self) -> int:
        return sum(w for _, w in self.rows)


class Violation(NamedTuple):
    symbol: int
    witness: frozenset[int]
    required: int
    actual: int
    condition: str  # "definition", "core-ii" or "core-iii"


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def summary(self, limit: int = 20) -> str:
        if self.ok:
            return "ok"
        lines = [f"{len(self.violations)} violation(s)"]
        for viol in self.violations[:limit]:
            w = " ".join(map(str, sorted(viol.witness))) or "-"
            lines.append(f"  [{viol.condition}] symbol {viol.symbol} set {{{w}}}: "
                         f"required {viol.required}, actual {viol.actual}")
        if len(self.violations) > limit:
            lines.append(f"  ... {len(self.violations) - limit} more")
        return "\n".join(lines)


# -- bitmask helpers ---------------------------------------------------------

def mask_of(symbols: Iterable[int]) -> int:
    m = 0
    for s in symbols:
        m |= 1 << (s - 1)
    return m


def symbols_of(mask: int) -> frozenset[int]:
    out = []
    s = 1
    while mask:
        if mask & 1:
            out.append(s)
        mask >>= 1
        s += 1
    return frozenset(out)


def prefix_masks(row: Sequence[int]) -> list[int]:
    """``out[s]`` is the bitmask of symbols strictly left of s in row (index 0 unused)."""
    out = [0] * (len(row) + 1)
    seen = 0
    for s in row:
        out[s] = seen
        seen |= 1 << (s - 1)
    return out


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _check_symbol(sigma: int, v: int):
    if not 1 <= sigma <= v:
        raise SymbolError(f"symbol {sigma} outside 1..{v}")


# -- primitive queries -------------------------------------------------------

def prefix_before(row: Sequence[int], sigma: int) -> frozenset[int]:
    """The set of symbols strictly left of ``sigma`` in ``row``."""
    try:
        i = list(row).index(sigma)
    except ValueError:
        raise SymbolError(f"symbol {sigma} does not occur in row {list(row)}") from None
    return frozenset(row[:i])


def pre_set(table: PermTable, sigma: int, T: Iterable[int]) -> frozenset[int]:
    """Indices of the rows in which ``sigma`` is preceded only by elements of T.

    Rows starting with ``sigma`` are always included.
    """
    v = table.v
    _check_symbol(sigma, v)
    T = frozenset(T)
    for s in T:
        _check_symbol(s, v)
    if sigma in T:
        raise SymbolError(f"T must not contain the symbol {sigma} itself")
    return frozenset(i for i, row in enumerate(table.rows) if prefix_before(row, sigma) <= T)


# -- verifiers ---------------------------------------------------------------

def _array_violations(table: PermTable, t: int) -> list[Violation]:
    N, v = table.n_rows, table.v
    if t < 1:
        raise ValueError("strength must be >= 1")
    if t > min(N, v):
        raise StrengthTooLarge(f"t={t} exceeds min(N, v)={min(N, v)}")
    found = []
    full = (1 << v) - 1
    for sigma in range(1, v + 1):
        bit = 1 << (sigma - 1)
        # symbols to the right of sigma in each row
        afters = set()
        for row in table.rows:
            pm = prefix_masks(row)
            afters.add(full & ~pm[sigma] & ~bit)
        others = [s for s in range(1, v + 1) if s != sigma]
        for S in combinations(others, t - 1):
            m = mask_of(S)
            if not any(m & ~a == 0 for a in afters):
                found.append(Violation(sigma, frozenset(S), 1, 0, "definition"))
    return found


def verify_array(table: PermTable, t: int) -> VerificationReport:
    """Check the definition of an (N, v, t)-suitable array directly."""
    return VerificationReport(tuple(_array_violations(table, t)))


def _has_small_transversal(sets: list[int], k: int) -> bool:
    """Is there a set of at most k symbols meeting every mask in ``sets``?"""
    if not sets:
        return True
    if k == 0:
        return False
    pivot = min(sets, key=int.bit_count)
    m = pivot
    while m:
        bit = m & -m
        m ^= bit
        if _has_small_transversal([x for x in sets if not x & bit], k - 1):
            return True
    return False


def is_suitable_array(table: PermTable, t: int) -> bool:
    """Boolean form of :func:`verify_array`.

    A (t-1)-set S of other symbols is missed by sigma exactly when S meets
    the set of symbols before sigma in every row, so the array is suitable
    iff no such prefix family has a transversal of size t-1.  This avoids
    enumerating all (t-1)-subsets.
    """
    N, v = table.n_rows, table.v
    if t < 1:
        raise ValueError("strength must be >= 1")
    if t > min(N, v):
        raise StrengthTooLarge(f"t={t} exceeds min(N, v)={min(N, v)}")
    masks = [prefix_masks(row) for row in table.rows]
    for sigma in range(1, v + 1):
        family = {pm[sigma] for pm in masks}
        if 0 in family:
            continue
        # supersets of another member are met automatically
        family = sorted(family, key=int.bit_count)
        minimal = [a for i, a in enumerate(family) if not any(b & a == b for b in family[:i])]
        if _has_small_transversal(minimal, t - 1):
            return False
    return True


def _core_violations(table: PermTable, t: int, first_only: bool) -> list[Violation]:
    N, v = table.n_rows, table.v
    found = []
    full = (1 << v) - 1
    masks = [prefix_masks(row) for row in table.rows]
    for sigma in range(1, v + 1):
        others = full & ~(1 << (sigma - 1))
        pms = [pm[sigma] for pm in masks]
        for T in submasks(others):
            required = t + 1 - v + T.bit_count()
            if required <= 0:
                continue
            actual = sum(1 for p in pms if p & ~T == 0)
            if actual < required:
                found.append(Violation(sigma, symbols_of(T), required, actual, "core-iii"))
                if first_only:
                    return found
    return found


def verify_core(table: PermTable, t: int) -> VerificationReport:
    """Check every (symbol, T) condition of an (N, v, t)-suitable core.

    Violations whose required count exceeds N cannot be repaired by any
    choice of rows; they are still reported with the uncapped requirement.
    """
    return VerificationReport(tuple(_core_violations(table, t, first_only=False)))


def is_core(table: PermTable, t: int) -> bool:
    """Boolean form of :func:`verify_core` that stops at the first violation."""
    return not _core_violations(table, t, first_only=True)


def verify_core_by_subsets(table: PermTable, t: int) -> VerificationReport:
    """Check that each symbol precedes each k-subset of others in >= t-k rows.

    Independent of :func:`verify_core`: it counts rows by the set of symbols
    following each symbol rather than by prefix containment.
    """
    v = table.v
    found = []
    for sigma in range(1, v + 1):
        afters = []
        for row in table.rows:
            i = row.index(sigma)
            afters.append(frozenset(row[i + 1:]))
        others = [s for s in range(1, v + 1) if s != sigma]
        for k in range(0, min(t - 1, v - 1) + 1):
            for S in combinations(others, k):
                S = frozenset(S)
                actual = sum(1 for a in afters if S <= a)
                if actual < t - k:
                    found.append(Violation(sigma, S, t - k, actual, "core-ii"))
    return VerificationReport(tuple(found))


def verify(table: PermTable, t: int) -> VerificationReport:
    """Dispatch on the table's role."""
    if table.role is Role.ARRAY:
        return verify_array(table, t)
    return verify_core(table, t)
